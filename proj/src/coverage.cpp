#include "mmshare/coverage.hpp"

#include <cmath>
#include <stdexcept>

#include "mmshare/interference.hpp"

namespace mmshare::coverage {

namespace {

// One serving hypothesis (k, s): integrate the conditional coverage against
// the serving-distance density.
double component_tier(const Scenario& sc, int n, int k, LinkType s, double T,
                      const std::vector<double>* density_override,
                      const quad::QuadSpec& spec) {
  const auto& ch = sc.channel;
  const double noise_power = ch.noise_density * sc.pooled_bandwidth(k);
  auto integrand = [&, T](double x) {
    double fx = assoc::serving_distance_density(sc, n, k, s, x);
    if (fx == 0.0) return 0.0;
    double t = T * std::pow(x, ch.alpha(s)) /
               (ch.gain(s) * sc.antenna.g_main * sc.operators[k].tx_power);
    interference::ServingContext ctx{n, k, s, x};
    double lap = interference::laplace_total(sc, ctx, t, density_override, spec);
    if (noise_power > 0.0) lap *= std::exp(-noise_power * t);
    return lap * fx;
  };
  return quad::integrate(integrand, 0.0, quad::kInf, spec).value;
}

double component_tier_colocated(const Scenario& sc, int n, LinkType s,
                                double T, double idle_prob,
                                const quad::QuadSpec& spec) {
  const auto& ch = sc.channel;
  const double noise_power = ch.noise_density * sc.pooled_bandwidth(n);
  auto integrand = [&, T](double x) {
    double fx = assoc::serving_distance_density_colocated(sc, s, x);
    if (fx == 0.0) return 0.0;
    double t = T * std::pow(x, ch.alpha(s)) /
               (ch.gain(s) * sc.antenna.g_main * sc.operators[n].tx_power);
    interference::ServingContext ctx{n, n, s, x};
    double lap = interference::laplace_colocated(sc, ctx, t, idle_prob, spec);
    if (noise_power > 0.0) lap *= std::exp(-noise_power * t);
    return lap * fx;
  };
  return quad::integrate(integrand, 0.0, quad::kInf, spec).value;
}

}  // namespace

double sinr_coverage_component(const Scenario& sc, int n, int k,
                               double threshold,
                               const std::vector<double>* density_override,
                               const quad::QuadSpec& spec) {
  if (sc.colocated) {
    if (k != n) return 0.0;
    double idle = 0.0;
    if (sc.partial_loading && density_override) {
      // The override encodes per-operator active densities; recover the idle
      // probability of the serving operator's co-located partners.
      idle = 1.0 - (*density_override)[n] / sc.operators[n].bs_density;
    }
    return component_tier_colocated(sc, n, LinkType::Los, threshold, idle, spec) +
           component_tier_colocated(sc, n, LinkType::Nlos, threshold, idle, spec);
  }
  if (!sc.can_access(n, k)) return 0.0;
  return component_tier(sc, n, k, LinkType::Los, threshold, density_override, spec) +
         component_tier(sc, n, k, LinkType::Nlos, threshold, density_override, spec);
}

double sinr_coverage_point(const Scenario& sc, int n, double threshold,
                           const std::vector<double>* density_override,
                           const quad::QuadSpec& spec) {
  double p = 0.0;
  for (int k : sc.access_set(n)) {
    p += sinr_coverage_component(sc, n, k, threshold, density_override, spec);
  }
  return p;
}

DistributionCurve sinr_coverage(const Scenario& sc, int n,
                                const std::vector<double>& thresholds,
                                const CoverageOptions& opts) {
  std::vector<double> density;
  const std::vector<double>* override_ptr = nullptr;
  if (sc.partial_loading) {
    auto lm = assoc::compute_load_model(sc, opts.quad);
    density = assoc::active_densities(sc, lm);
    override_ptr = &density;
  }
  DistributionCurve curve;
  curve.thresholds = thresholds;
  curve.probabilities.assign(thresholds.size(), 0.0);
  parallel_for(thresholds.size(), opts.exec, [&](std::size_t i) {
    curve.probabilities[i] =
        sinr_coverage_point(sc, n, thresholds[i], override_ptr, opts.quad);
  });
  return curve;
}

double rate_coverage_point(const Scenario& sc, int n, double rate,
                           const assoc::LoadModel& lm,
                           const quad::QuadSpec& spec) {
  std::vector<double> density;
  const std::vector<double>* override_ptr = nullptr;
  if (sc.partial_loading) {
    density = assoc::active_densities(sc, lm);
    override_ptr = &density;
  }
  double p = 0.0;
  for (int k : sc.access_set(n)) {
    double se = rate * lm.mean_load[k] / sc.pooled_bandwidth(k);
    double T = std::exp2(se) - 1.0;
    if (se > 1020.0) return 0.0;  // 2^se overflows; coverage is zero anyway
    p += sinr_coverage_component(sc, n, k, T, override_ptr, spec);
  }
  return p;
}

DistributionCurve rate_coverage(const Scenario& sc, int n,
                                const std::vector<double>& rates,
                                const assoc::LoadModel& lm,
                                const CoverageOptions& opts) {
  DistributionCurve curve;
  curve.thresholds = rates;
  curve.probabilities.assign(rates.size(), 0.0);
  parallel_for(rates.size(), opts.exec, [&](std::size_t i) {
    curve.probabilities[i] = rate_coverage_point(sc, n, rates[i], lm, opts.quad);
  });
  return curve;
}

double coverage_closed_form_alpha4(int n_ops, double theta_b,
                                   double threshold) {
  if (n_ops < 1) throw std::invalid_argument("need at least one operator");
  if (threshold <= 0.0) return 1.0;
  double rt = std::sqrt(threshold);
  return 1.0 / (1.0 + (theta_b / M_PI) * rt *
                          (n_ops * M_PI / 2.0 - std::atan(1.0 / rt)));
}

double rate_ccdf_closed_form_alpha4(int n_ops, double theta_b,
                                    double rho_norm) {
  double T = std::exp2(rho_norm / n_ops) - 1.0;
  return coverage_closed_form_alpha4(n_ops, theta_b, T);
}

double solve_ccdf_level(const std::function<double(double)>& ccdf,
                        double level, double rel_tol, double hint) {
  if (!(level > 0.0 && level < 1.0)) {
    throw std::invalid_argument("solve_ccdf_level: level must be in (0,1)");
  }
  double hi = hint > 0.0 ? hint : 1.0;
  int guard = 0;
  while (ccdf(hi) > level) {
    hi *= 2.0;
    if (++guard > 80) {
      throw quad::NoBracket("solve_ccdf_level: ccdf stays above " +
                            std::to_string(level) + " up to " +
                            std::to_string(hi));
    }
  }
  double lo = hi / 2.0;
  guard = 0;
  while (lo > 0.0 && ccdf(lo) <= level) {
    lo /= 2.0;
    if (++guard > 200) break;
  }
  // lo may have underflowed to a region where the ccdf is flat at 1; the
  // bisection below still converges onto the crossing.
  while ((hi - lo) > rel_tol * hi) {
    double mid = 0.5 * (lo + hi);
    if (ccdf(mid) > level) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double median_rate(const Scenario& sc, int n, const assoc::LoadModel& lm,
                   const quad::QuadSpec& spec) {
  auto ccdf = [&](double rho) { return rate_coverage_point(sc, n, rho, lm, spec); };
  return solve_ccdf_level(ccdf, 0.5, 1e-4, 5e7);
}

double rate_percentile(const Scenario& sc, int n, const assoc::LoadModel& lm,
                       double pct, const quad::QuadSpec& spec) {
  auto ccdf = [&](double rho) { return rate_coverage_point(sc, n, rho, lm, spec); };
  return solve_ccdf_level(ccdf, 1.0 - pct, 1e-4, 5e7);
}

double required_bandwidth(const Scenario& sc, int n, double target_median,
                          double lo_hz, double hi_hz,
                          const quad::QuadSpec& spec) {
  auto median_at = [&](double bw) {
    Scenario scaled = sc;
    for (auto& op : scaled.operators) op.bandwidth = bw;
    auto lm = assoc::compute_load_model(scaled, spec);
    return median_rate(scaled, n, lm, spec);
  };
  double f_lo = median_at(lo_hz) - target_median;
  double f_hi = median_at(hi_hz) - target_median;
  if (f_lo > 0.0 || f_hi < 0.0) {
    throw quad::NoBracket(
        "required_bandwidth: target median " + std::to_string(target_median) +
        " not bracketed by [" + std::to_string(lo_hz) + ", " +
        std::to_string(hi_hz) + "] Hz (medians " +
        std::to_string(f_lo + target_median) + ", " +
        std::to_string(f_hi + target_median) + ")");
  }
  double lo = lo_hz, hi = hi_hz;
  while ((hi - lo) > 1e-4 * hi) {
    double mid = 0.5 * (lo + hi);
    if (median_at(mid) < target_median) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace mmshare::coverage
