#include "mmshare/interference.hpp"

#include <cmath>

#include "mmshare/assoc.hpp"
#include "mmshare/geom.hpp"

namespace mmshare::interference {

namespace {

// A/(y^a + A): the Rayleigh MGF factor 1/(1 + y^a/A) written so that y -> 0
// and A -> 0 stay finite. y^a overflowing to inf is fine (result 0).
inline double mgf_ratio(double A, double y, double a) {
  return A / (std::pow(y, a) + A);
}

}  // namespace

double los_tail_kernel(double b, double a, double A, double x,
                       const quad::QuadSpec& spec) {
  if (A == 0.0) return 0.0;
  auto f = [b, a, A](double y) {
    return std::exp(-b * y) * mgf_ratio(A, y, a) * y;
  };
  return quad::integrate(f, x, quad::kInf, spec).value;
}

namespace {

// Integral over [x, inf) of A/(y^a + A) * y dy for a > 2. The integrand
// only decays polynomially, so the far tail (where A y^-a <= 1e-9) is
// summed in closed form from the expansion A y^{1-a} - A^2 y^{1-2a} + ...
// instead of being pushed through the rational substitution, whose
// truncated corner would dominate the error estimate for a < 3.
double power_tail_integral(double a, double A, double x,
                           const quad::QuadSpec& spec) {
  double Y = std::max(std::pow(A * 1e9, 1.0 / a), x);
  double finite = 0.0;
  if (Y > x) {
    auto f = [a, A](double y) { return mgf_ratio(A, y, a) * y; };
    finite = quad::integrate(f, x, Y, spec).value;
  }
  double tail = A * std::pow(Y, 2.0 - a) / (a - 2.0) -
                A * A * std::pow(Y, 2.0 - 2.0 * a) / (2.0 * a - 2.0);
  return finite + tail;
}

}  // namespace

double nlos_tail_kernel(double b, double a, double A, double x,
                        const quad::QuadSpec& spec) {
  if (A == 0.0) return 0.0;
  if (a <= 2.0) {
    throw DivergentTail(
        "nlos tail kernel diverges for pathloss exponent a=" +
        std::to_string(a) + " (needs a > 2)");
  }
  // (1 - e^{-by}) splits the integral into a pure power tail minus the
  // exponentially damped part; the subtraction loses relative precision
  // only when the result is negligible next to the LOS term.
  return power_tail_integral(a, A, x, spec) -
         los_tail_kernel(b, a, A, x, spec);
}

double laplace_tier(const Scenario& sc, TierRef tier, const ServingContext& ctx,
                    double t, const std::vector<double>* density_override,
                    const quad::QuadSpec& spec) {
  const auto& ch = sc.channel;
  const double lam = density_override ? (*density_override)[tier.op]
                                      : sc.operators[tier.op].bs_density;
  const double D = assoc::exclusion_radius(sc, ctx.user_op, ctx.serving_op,
                                           ctx.serving_link, tier.op, tier.link,
                                           ctx.serving_distance);
  const double a = ch.alpha(tier.link);
  const double pc = sc.operators[tier.op].tx_power * ch.gain(tier.link);
  const double A_main = t * sc.antenna.g_main * pc;
  const double A_side = t * sc.antenna.g_side * pc;
  const double th = sc.antenna.half_beamwidth;

  double sum;
  if (tier.link == LinkType::Los) {
    sum = th * los_tail_kernel(sc.blockage.beta, a, A_main, D, spec) +
          (M_PI - th) * los_tail_kernel(sc.blockage.beta, a, A_side, D, spec);
  } else {
    sum = th * nlos_tail_kernel(sc.blockage.beta, a, A_main, D, spec) +
          (M_PI - th) * nlos_tail_kernel(sc.blockage.beta, a, A_side, D, spec);
  }
  return std::exp(-2.0 * lam * sum);
}

double laplace_total(const Scenario& sc, const ServingContext& ctx, double t,
                     const std::vector<double>* density_override,
                     const quad::QuadSpec& spec) {
  double lap = 1.0;
  for (int m : sc.sharing_group_of(ctx.serving_op)) {
    lap *= laplace_tier(sc, {m, LinkType::Los}, ctx, t, density_override, spec);
    lap *= laplace_tier(sc, {m, LinkType::Nlos}, ctx, t, density_override, spec);
  }
  return lap;
}

double laplace_colocated(const Scenario& sc, const ServingContext& ctx,
                         double t, double idle_prob,
                         const quad::QuadSpec& spec) {
  const auto& ch = sc.channel;
  const double th_frac = sc.antenna.half_beamwidth / M_PI;
  const double g1 = sc.antenna.g_main;
  const double g2 = sc.antenna.g_side;
  const auto& group = sc.sharing_group_of(ctx.serving_op);

  // One minus the orientation-averaged Rayleigh MGF of one co-channel BS of
  // operator m at pathloss py (already includes the intercept), optionally
  // idle. Written as a sum of positive ratios so the deficit keeps full
  // precision even when it is 1e-10 small; forming the MGF first and
  // subtracting would leave cancellation noise that stalls the adaptive
  // integrator's error estimate on the far tail.
  auto member_deficit = [&](int m, double py) {
    double pm = sc.operators[m].tx_power;
    double u1 = t * g1 * pm * py;
    double u2 = t * g2 * pm * py;
    double d = th_frac * (u1 / (1.0 + u1)) +
               (1.0 - th_frac) * (u2 / (1.0 + u2));
    return (1.0 - idle_prob) * d;
  };

  const double x = ctx.serving_distance;
  const LinkType s = ctx.serving_link;
  double lap = 1.0;

  // Co-channel BSs mounted on the serving site, one per other group member.
  double py_serving = ch.gain(s) * std::pow(x, -ch.alpha(s));
  for (int m : group) {
    if (m == ctx.serving_op) continue;
    lap *= 1.0 - member_deficit(m, py_serving);
  }

  // All other sites, split by their own LOS state, empty inside the serving
  // exclusion radius for that state.
  const double lam = sc.operators[0].bs_density;
  for (LinkType p : kLinkTypes) {
    double Dp = assoc::exclusion_radius_colocated(sc, s, p, x);
    double a_p = ch.alpha(p);
    double c_p = ch.gain(p);
    auto integrand = [&](double y) {
      double prob = geom::los_probability(y, sc.blockage);
      if (p == LinkType::Nlos) prob = 1.0 - prob;
      if (prob == 0.0) return 0.0;
      double py = c_p * std::pow(y, -a_p);
      // complement = 1 - prod_m (1 - d_m), accumulated without forming the
      // near-one product.
      double complement = 0.0;
      double prod = 1.0;
      for (int m : group) {
        double d = member_deficit(m, py);
        complement += prod * d;
        prod *= 1.0 - d;
      }
      return prob * complement * y;
    };
    double val = quad::integrate(integrand, Dp, quad::kInf, spec).value;
    lap *= std::exp(-2.0 * M_PI * lam * val);
  }
  return lap;
}

}  // namespace mmshare::interference
