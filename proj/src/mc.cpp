#include "mmshare/mc.hpp"

#include <algorithm>
#include <cmath>

#include "mmshare/rng.hpp"

namespace mmshare::mc {

namespace {

// Substream tags; every (entity, tag) pair is an independent stream.
enum Tag : std::uint32_t {
  kTagRadius = 2,
  kTagLos = 3,
  kTagFading = 4,
  kTagAngle = 5,
  kTagShadow = 6,
  kTagActive = 7,
  kTagOffset = 8,
};

// Entity layout: top nibble is the domain, then an owner byte, then a
// 20-bit index. Keeps operator-level, BS-level and site-level streams
// disjoint.
constexpr std::uint32_t kMaxIndex = 1u << 20;

inline std::uint32_t entity_op(int op) { return static_cast<std::uint32_t>(op); }

inline std::uint32_t entity_bs(int op, std::uint32_t idx) {
  return (1u << 28) | (static_cast<std::uint32_t>(op) << 20) | idx;
}

inline std::uint32_t entity_site(std::uint32_t idx) { return (2u << 28) | idx; }

// Reserved per-operator index for co-channel BSs pinned on the serving site
// in the Laplace oracle.
constexpr std::uint32_t kPinnedIdx = kMaxIndex - 1;

struct Bs {
  double dist;
  double avg_power;  // P * intercept * dist^-alpha * shadow; no beam gain
  std::uint32_t entity;
  int op;
  bool los;
};

double fading_power(rng::Stream& st, const FadingSpec& f) {
  if (f.kind == FadingSpec::Kind::Rayleigh) return st.exponential();
  return st.gamma(f.nakagami_m, 1.0 / f.nakagami_m);
}

struct DropContext {
  const Scenario& sc;
  const McConfig& cfg;
  std::uint32_t drop;
  double region_radius;

  rng::Stream stream(std::uint32_t entity, std::uint32_t tag) const {
    return rng::Stream(cfg.seed, drop, entity, tag);
  }

  double shadow_factor(std::uint32_t entity, bool los) const {
    if (!cfg.shadowing.enabled) return 1.0;
    double sigma =
        los ? cfg.shadowing.sigma_los_db : cfg.shadowing.sigma_nlos_db;
    rng::Stream st = stream(entity, kTagShadow);
    return std::pow(10.0, sigma * st.normal() / 10.0);
  }

  void finish_bs(Bs& b) const {
    const auto& ch = sc.channel;
    double alpha = b.los ? ch.alpha_los : ch.alpha_nlos;
    double c = b.los ? ch.gain_los : ch.gain_nlos;
    b.avg_power = sc.operators[b.op].tx_power * c * std::pow(b.dist, -alpha) *
                  shadow_factor(b.entity, b.los);
  }
};

// Positions matter only through distances (the user sits at the origin and
// beam orientations are independent), so PPP sites are drawn as radii
// directly; the grid needs 2D points.
struct SiteList {
  std::vector<double> dist;
  std::vector<bool> los;
};

SiteList draw_sites_ppp(const DropContext& dc, double lambda,
                        bool site_level, int op /*ignored when site_level*/) {
  const double R = dc.region_radius;
  // The i-th nearest point of a PPP sits at sqrt(a_i / (lambda pi)), where
  // a_i are unit-rate arrivals in area measure. Drawing each gap from the
  // stream keyed by the point index makes the site set inside any radius a
  // prefix of the set inside a larger one, so enlarging the region only
  // appends sites and leaves every existing draw untouched.
  const double max_area = lambda * M_PI * R * R;
  SiteList s;
  double area = 0.0;
  for (std::uint32_t i = 0;; ++i) {
    if (i + 1 >= kPinnedIdx) {
      throw quad::NumericError(
          "deployment exceeds the per-operator stream index space; shrink "
          "the region");
    }
    std::uint32_t e = site_level ? entity_site(i) : entity_bs(op, i);
    area += dc.stream(e, kTagRadius).exponential();
    if (area > max_area) break;
    double dist = std::sqrt(area / (lambda * M_PI));
    double plos = std::exp(-dc.sc.blockage.beta * dist);
    s.dist.push_back(dist);
    s.los.push_back(dc.stream(e, kTagLos).next_double() < plos);
  }
  return s;
}

SiteList draw_sites_grid(const DropContext& dc, double lambda,
                         std::uint32_t offset_entity, bool site_level,
                         int op) {
  const double R = dc.region_radius;
  const double d = 1.0 / std::sqrt(lambda);
  rng::Stream off = dc.stream(offset_entity, kTagOffset);
  double ox = off.next_double() * d;
  double oy = off.next_double() * d;

  SiteList s;
  long i_lo = static_cast<long>(std::ceil((-R - ox) / d));
  long i_hi = static_cast<long>(std::floor((R - ox) / d));
  for (long i = i_lo; i <= i_hi; ++i) {
    double x = i * d + ox;
    double span = R * R - x * x;
    if (span < 0.0) continue;
    double half = std::sqrt(span);
    long j_lo = static_cast<long>(std::ceil((-half - oy) / d));
    long j_hi = static_cast<long>(std::floor((half - oy) / d));
    for (long j = j_lo; j <= j_hi; ++j) {
      double y = j * d + oy;
      double dist = std::hypot(x, y);
      if (dist > R || dist == 0.0) continue;
      std::uint32_t idx = static_cast<std::uint32_t>(s.dist.size());
      if (idx >= kMaxIndex) {
        throw quad::NumericError("grid deployment exceeds stream index space");
      }
      std::uint32_t e = site_level ? entity_site(idx) : entity_bs(op, idx);
      double plos = std::exp(-dc.sc.blockage.beta * dist);
      s.dist.push_back(dist);
      s.los.push_back(dc.stream(e, kTagLos).next_double() < plos);
    }
  }
  return s;
}

std::vector<Bs> build_deployment(const DropContext& dc) {
  const Scenario& sc = dc.sc;
  const int M = sc.num_operators();
  const bool shared =
      sc.colocated || dc.cfg.deployment == Deployment::Colocated;
  const bool grid = dc.cfg.deployment == Deployment::ShiftedGrid;

  std::vector<Bs> out;
  if (shared) {
    // One site layout; every operator mounts a BS per site. The LOS state
    // is a property of the site.
    SiteList sites = grid ? draw_sites_grid(dc, sc.operators[0].bs_density,
                                            entity_op(0), true, 0)
                          : draw_sites_ppp(dc, sc.operators[0].bs_density,
                                           true, 0);
    out.reserve(sites.dist.size() * M);
    for (std::uint32_t i = 0; i < sites.dist.size(); ++i) {
      for (int m = 0; m < M; ++m) {
        Bs b{sites.dist[i], 0.0, entity_bs(m, i), m, sites.los[i]};
        dc.finish_bs(b);
        out.push_back(b);
      }
    }
    return out;
  }
  for (int m = 0; m < M; ++m) {
    SiteList sites = grid ? draw_sites_grid(dc, sc.operators[m].bs_density,
                                            entity_op(m), false, m)
                          : draw_sites_ppp(dc, sc.operators[m].bs_density,
                                           false, m);
    for (std::uint32_t i = 0; i < sites.dist.size(); ++i) {
      Bs b{sites.dist[i], 0.0, entity_bs(m, i), m, sites.los[i]};
      dc.finish_bs(b);
      out.push_back(b);
    }
  }
  return out;
}

DropSample simulate_drop(const DropContext& dc, int n,
                         const std::vector<double>* active_prob) {
  const Scenario& sc = dc.sc;
  std::vector<Bs> bss = build_deployment(dc);

  const Bs* serving = nullptr;
  for (const Bs& b : bss) {
    if (!sc.can_access(n, b.op)) continue;
    if (!serving || b.avg_power > serving->avg_power ||
        (b.avg_power == serving->avg_power &&
         (b.op < serving->op ||
          (b.op == serving->op && b.dist < serving->dist)))) {
      serving = &b;
    }
  }
  if (!serving) return {0.0, -1};

  const int k = serving->op;
  rng::Stream hs = dc.stream(serving->entity, kTagFading);
  double signal =
      serving->avg_power * sc.antenna.g_main * fading_power(hs, dc.cfg.fading);

  const auto& group = sc.sharing_group_of(k);
  double interference = 0.0;
  for (const Bs& b : bss) {
    if (&b == serving) continue;
    if (std::find(group.begin(), group.end(), b.op) == group.end()) continue;
    if (active_prob) {
      rng::Stream st = dc.stream(b.entity, kTagActive);
      if (st.next_double() >= (*active_prob)[b.op]) continue;
    }
    rng::Stream sa = dc.stream(b.entity, kTagAngle);
    double gain = antenna_gain(sc.antenna, sa.uniform(-M_PI, M_PI));
    rng::Stream sf = dc.stream(b.entity, kTagFading);
    interference += b.avg_power * gain * fading_power(sf, dc.cfg.fading);
  }
  double noise = sc.channel.noise_density * sc.pooled_bandwidth(k);
  return {signal / (noise + interference), k};
}

}  // namespace

double resolve_region_radius(const Scenario& sc, const McConfig& cfg, int n) {
  if (cfg.region_radius > 0.0) return cfg.region_radius;
  double acc = 0.0;
  for (int m : sc.access_set(n)) acc += sc.operators[m].bs_density;
  double nearest_scale = 0.5 / std::sqrt(acc);
  return std::max(10.0 / sc.blockage.beta, 5.0 * nearest_scale);
}

std::vector<DropSample> sample_drops(const Scenario& sc, const McConfig& cfg,
                                     int n, const assoc::LoadModel* lm) {
  const double R = resolve_region_radius(sc, cfg, n);
  std::vector<double> active;
  const std::vector<double>* active_ptr = nullptr;
  assoc::LoadModel local;
  if (sc.partial_loading) {
    if (!lm) {
      local = assoc::compute_load_model(sc);
      lm = &local;
    }
    active.resize(sc.num_operators());
    for (int m = 0; m < sc.num_operators(); ++m) {
      active[m] = 1.0 - lm->idle_prob[m];
    }
    active_ptr = &active;
  }
  std::vector<DropSample> out(cfg.drops);
  parallel_for(cfg.drops, cfg.exec, [&](std::size_t d) {
    DropContext dc{sc, cfg, static_cast<std::uint32_t>(d), R};
    out[d] = simulate_drop(dc, n, active_ptr);
  });
  return out;
}

namespace {

DistributionCurve tally_ccdf(const std::vector<double>& samples,
                             const std::vector<double>& thresholds) {
  DistributionCurve curve;
  curve.thresholds = thresholds;
  curve.probabilities.assign(thresholds.size(), 0.0);
  curve.stderrs.assign(thresholds.size(), 0.0);
  const double n = static_cast<double>(samples.size());
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    std::uint64_t count = 0;
    for (double s : samples) {
      if (s > thresholds[i]) ++count;
    }
    double p = count / n;
    curve.probabilities[i] = p;
    curve.stderrs[i] = std::sqrt(p * (1.0 - p) / n);
  }
  return curve;
}

}  // namespace

DistributionCurve estimate_sinr_ccdf(const Scenario& sc, const McConfig& cfg,
                                     int n,
                                     const std::vector<double>& thresholds,
                                     const assoc::LoadModel* lm) {
  auto drops = sample_drops(sc, cfg, n, lm);
  std::vector<double> sinr(drops.size());
  for (std::size_t i = 0; i < drops.size(); ++i) sinr[i] = drops[i].sinr;
  return tally_ccdf(sinr, thresholds);
}

DistributionCurve estimate_rate_ccdf(const Scenario& sc, const McConfig& cfg,
                                     int n, const std::vector<double>& rates,
                                     const assoc::LoadModel& lm) {
  auto drops = sample_drops(sc, cfg, n, &lm);
  std::vector<double> rate(drops.size(), 0.0);
  for (std::size_t i = 0; i < drops.size(); ++i) {
    int k = drops[i].serving_op;
    if (k < 0) continue;
    double share = sc.pooled_bandwidth(k) / lm.mean_load[k];
    rate[i] = share * std::log2(1.0 + drops[i].sinr);
  }
  return tally_ccdf(rate, rates);
}

std::vector<double> estimate_association(const Scenario& sc,
                                         const McConfig& cfg, int n) {
  auto drops = sample_drops(sc, cfg, n, nullptr);
  std::vector<double> freq(sc.num_operators(), 0.0);
  for (const auto& d : drops) {
    if (d.serving_op >= 0) freq[d.serving_op] += 1.0;
  }
  for (double& f : freq) f /= static_cast<double>(drops.size());
  return freq;
}

LaplaceEstimate estimate_laplace(const Scenario& sc, const McConfig& cfg,
                                 const interference::ServingContext& ctx,
                                 double t) {
  const double R = std::max(resolve_region_radius(sc, cfg, ctx.user_op),
                            2.0 * ctx.serving_distance);
  const auto& group = sc.sharing_group_of(ctx.serving_op);
  const bool coloc = sc.colocated;

  std::vector<double> vals(cfg.drops);
  parallel_for(cfg.drops, cfg.exec, [&](std::size_t d) {
    DropContext dc{sc, cfg, static_cast<std::uint32_t>(d), R};
    std::vector<Bs> bss = build_deployment(dc);
    double interference = 0.0;
    auto add = [&](const Bs& b) {
      rng::Stream sa = dc.stream(b.entity, kTagAngle);
      double gain = antenna_gain(sc.antenna, sa.uniform(-M_PI, M_PI));
      rng::Stream sf = dc.stream(b.entity, kTagFading);
      interference += b.avg_power * gain * fading_power(sf, dc.cfg.fading);
    };
    for (const Bs& b : bss) {
      if (std::find(group.begin(), group.end(), b.op) == group.end()) continue;
      double D =
          coloc ? assoc::exclusion_radius_colocated(
                      sc, ctx.serving_link, b.los ? LinkType::Los : LinkType::Nlos,
                      ctx.serving_distance)
                : assoc::exclusion_radius(sc, ctx.user_op, ctx.serving_op,
                                          ctx.serving_link, b.op,
                                          b.los ? LinkType::Los : LinkType::Nlos,
                                          ctx.serving_distance);
      if (b.dist < D) continue;
      add(b);
    }
    if (coloc) {
      // The serving site also carries one co-channel BS per other group
      // member, at the serving distance with the serving link state.
      for (int m : group) {
        if (m == ctx.serving_op) continue;
        Bs b{ctx.serving_distance, 0.0, entity_bs(m, kPinnedIdx), m,
             ctx.serving_link == LinkType::Los};
        dc.finish_bs(b);
        add(b);
      }
    }
    vals[d] = std::exp(-t * interference);
  });

  double mean = 0.0;
  for (double v : vals) mean += v;
  mean /= static_cast<double>(vals.size());
  double var = 0.0;
  for (double v : vals) var += (v - mean) * (v - mean);
  var /= static_cast<double>(vals.size()) * (vals.size() - 1.0);
  return {mean, std::sqrt(var)};
}

}  // namespace mmshare::mc
