#include "mmshare/assoc.hpp"

#include <cmath>
#include <stdexcept>

#include "mmshare/geom.hpp"

namespace mmshare::assoc {

double exclusion_radius(const Scenario& sc, int n, int k, LinkType s, int m,
                        LinkType p, double x) {
  if (!sc.can_access(n, m)) return 0.0;
  const auto& ch = sc.channel;
  double ratio = (sc.operators[m].tx_power * ch.gain(p)) /
                 (sc.operators[k].tx_power * ch.gain(s));
  return std::pow(ratio, 1.0 / ch.alpha(p)) *
         std::pow(x, ch.alpha(s) / ch.alpha(p));
}

double exclusion_radius_colocated(const Scenario& sc, LinkType s, LinkType p,
                                  double x) {
  const auto& ch = sc.channel;
  return std::pow(ch.gain(p) / ch.gain(s), 1.0 / ch.alpha(p)) *
         std::pow(x, ch.alpha(s) / ch.alpha(p));
}

double serving_distance_density(const Scenario& sc, int n, int k, LinkType s,
                                double x) {
  if (!sc.can_access(n, k)) return 0.0;
  if (x <= 0.0) return 0.0;
  double p_s = geom::los_probability(x, sc.blockage);
  if (s == LinkType::Nlos) p_s = 1.0 - p_s;
  double lam_ks = sc.operators[k].bs_density * p_s;

  const LinkType sp = other_link(s);
  double log_void = 0.0;
  log_void -= geom::tier_ball_mean(sc, {k, s}, x);
  log_void -= geom::tier_ball_mean(sc, {k, sp},
                                   exclusion_radius(sc, n, k, s, k, sp, x));
  for (int m : sc.access_set(n)) {
    if (m == k) continue;
    log_void -= geom::tier_ball_mean(sc, {m, LinkType::Los},
                                     exclusion_radius(sc, n, k, s, m, LinkType::Los, x));
    log_void -= geom::tier_ball_mean(sc, {m, LinkType::Nlos},
                                     exclusion_radius(sc, n, k, s, m, LinkType::Nlos, x));
  }
  return 2.0 * M_PI * lam_ks * x * std::exp(log_void);
}

double serving_distance_density_colocated(const Scenario& sc, LinkType s,
                                          double x) {
  if (x <= 0.0) return 0.0;
  double p_s = geom::los_probability(x, sc.blockage);
  if (s == LinkType::Nlos) p_s = 1.0 - p_s;
  double lam = sc.operators[0].bs_density;  // densities equal by validation
  const LinkType sp = other_link(s);

  double log_void = -geom::tier_ball_mean(lam, sc.blockage.beta, s, x);
  log_void -= geom::tier_ball_mean(lam, sc.blockage.beta, sp,
                                   exclusion_radius_colocated(sc, s, sp, x));
  return 2.0 * M_PI * lam * p_s * x * std::exp(log_void);
}

namespace {

double association_probability_tier(const Scenario& sc, int n, int k,
                                    LinkType s, const quad::QuadSpec& spec) {
  auto f = [&sc, n, k, s](double x) {
    return serving_distance_density(sc, n, k, s, x);
  };
  return quad::integrate(f, 0.0, quad::kInf, spec).value;
}

}  // namespace

double association_probability(const Scenario& sc, int n, int k,
                               const quad::QuadSpec& spec) {
  if (!sc.can_access(n, k)) return 0.0;
  return association_probability_tier(sc, n, k, LinkType::Los, spec) +
         association_probability_tier(sc, n, k, LinkType::Nlos, spec);
}

std::vector<std::vector<double>> association_matrix(const Scenario& sc,
                                                    const quad::QuadSpec& spec) {
  const int M = sc.num_operators();
  std::vector<std::vector<double>> a(M, std::vector<double>(M, 0.0));
  for (int n = 0; n < M; ++n) {
    for (int k : sc.access_set(n)) {
      a[n][k] = association_probability(sc, n, k, spec);
    }
  }
  return a;
}

double mean_load(const Scenario& sc, int k,
                 const std::vector<std::vector<double>>& assoc) {
  double users = 0.0;
  for (int m = 0; m < sc.num_operators(); ++m) {
    if (!sc.can_access(m, k)) continue;
    users += sc.operators[m].user_density * assoc[m][k];
  }
  return 1.0 + 1.28 * users / sc.operators[k].bs_density;
}

double load_pmf(int z, double eta) {
  if (z < 0) throw std::domain_error("load_pmf: z must be non-negative");
  if (eta < 0.0) throw std::domain_error("load_pmf: eta must be non-negative");
  constexpr double c = 3.5;
  // Gamma-mixed Poisson cell population: (c^c eta^z / z!) *
  // Gamma(z+c)/Gamma(c) * (eta+c)^{-z-c}. Computed in logs for stability.
  if (eta == 0.0) return z == 0 ? 1.0 : 0.0;
  double lg = c * std::log(c) + z * std::log(eta) - std::lgamma(z + 1.0) +
              std::lgamma(z + c) - std::lgamma(c) -
              (z + c) * std::log(eta + c);
  return std::exp(lg);
}

LoadModel compute_load_model(const Scenario& sc, const quad::QuadSpec& spec) {
  const int M = sc.num_operators();
  auto a = association_matrix(sc, spec);
  LoadModel lm;
  lm.eta.resize(M);
  lm.mean_load.resize(M);
  lm.idle_prob.resize(M);
  for (int m = 0; m < M; ++m) {
    double users = 0.0;
    for (int q = 0; q < M; ++q) {
      if (!sc.can_access(q, m)) continue;
      users += sc.operators[q].user_density * a[q][m];
    }
    lm.eta[m] = users / sc.operators[m].bs_density;
    lm.mean_load[m] = mean_load(sc, m, a);
    lm.idle_prob[m] = load_pmf(0, lm.eta[m]);
  }
  return lm;
}

std::vector<double> active_densities(const Scenario& sc, const LoadModel& lm) {
  std::vector<double> d(sc.num_operators());
  for (int m = 0; m < sc.num_operators(); ++m) {
    d[m] = sc.operators[m].bs_density * (1.0 - lm.idle_prob[m]);
  }
  return d;
}

}  // namespace mmshare::assoc
