#include "mmshare/geom.hpp"

#include <cmath>

namespace mmshare::geom {

double los_probability(double x, const BlockageModel& b) {
  return std::exp(-b.beta * x);
}

double gamma2(double x) {
  // 1 - e^{-x}(1+x) = -expm1(-x) - x e^{-x}; stays accurate as x -> 0 where
  // the direct form cancels to O(x^2).
  return -std::expm1(-x) - x * std::exp(-x);
}

double tier_ball_mean(double lambda, double beta, LinkType link, double r) {
  if (r <= 0.0) return 0.0;
  double g = gamma2(beta * r) / (beta * beta);
  if (link == LinkType::Los) return 2.0 * M_PI * lambda * g;
  return M_PI * lambda * (r * r - 2.0 * g);
}

double tier_ball_mean(const Scenario& s, TierRef tier, double r) {
  return tier_ball_mean(s.operators[tier.op].bs_density, s.blockage.beta,
                        tier.link, r);
}

double void_probability(double lambda, double beta, LinkType link, double r) {
  return std::exp(-tier_ball_mean(lambda, beta, link, r));
}

double void_probability(const Scenario& s, TierRef tier, double r) {
  return std::exp(-tier_ball_mean(s, tier, r));
}

}  // namespace mmshare::geom
