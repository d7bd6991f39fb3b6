#pragma once

#include <vector>

#include "mmshare/model.hpp"
#include "mmshare/quad.hpp"

namespace mmshare::interference {

// Raised when the NLOS tail integral is requested with pathloss exponent
// a <= 2; the integrand decays like y^{1-a} and the tail diverges.
class DivergentTail : public quad::NumericError {
 public:
  using quad::NumericError::NumericError;
};

// Tail integrals behind the Rayleigh interference functionals:
//   los kernel:  integral over [x, inf) of e^{-b y} A/(y^a + A) * y dy
//   nlos kernel: integral over [x, inf) of (1 - e^{-b y}) A/(y^a + A) * y dy
// The ratio form A/(y^a + A) equals 1/(1 + y^a/A) but stays finite for
// y -> 0 and A -> 0 (returns 0 when A == 0).
double los_tail_kernel(double b, double a, double A, double x,
                       const quad::QuadSpec& spec = {});
double nlos_tail_kernel(double b, double a, double A, double x,
                        const quad::QuadSpec& spec = {});

// Identifies the typical user's link for one Laplace transform evaluation.
struct ServingContext {
  int user_op = 0;          // n: whose access set applies
  int serving_op = 0;       // k
  LinkType serving_link = LinkType::Los;
  double serving_distance = 0.0;  // x
};

// Laplace transform at t of the interference from tier (m,p), averaged over
// the beam orientation mix, for a user in the given serving context. The
// tier is empty inside the association exclusion radius when m is
// accessible, and unconstrained (radius 0) otherwise. density_override
// substitutes thinned densities (partial loading); pass nullptr for the
// full density.
double laplace_tier(const Scenario& sc, TierRef tier, const ServingContext& ctx,
                    double t, const std::vector<double>* density_override,
                    const quad::QuadSpec& spec = {});

// Product over every tier of every operator in the serving operator's
// sharing group, serving tier handled by its exclusion radius.
double laplace_total(const Scenario& sc, const ServingContext& ctx, double t,
                     const std::vector<double>* density_override = nullptr,
                     const quad::QuadSpec& spec = {});

// Co-located variant: the serving site hosts one co-channel BS per other
// group member (discrete mixture over their beam orientations), and every
// other site contributes its whole group bundle, thinned outside the
// same-site exclusion radii. idle_prob mixes each bundle with an idle site
// under partial loading; pass 0 for full loading.
double laplace_colocated(const Scenario& sc, const ServingContext& ctx,
                         double t, double idle_prob = 0.0,
                         const quad::QuadSpec& spec = {});

}  // namespace mmshare::interference
