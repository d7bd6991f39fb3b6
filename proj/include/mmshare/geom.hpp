#pragma once

#include "mmshare/model.hpp"

namespace mmshare::geom {

// Probability that a link of length x is unblocked.
double los_probability(double x, const BlockageModel& b);

// Lower incomplete gamma at s=2 via expm1, accurate for small arguments:
// gamma(2,x) = 1 - e^{-x}(1+x).
double gamma2(double x);

// Mean number of tier points inside a ball of radius r around the origin,
// for a PPP of density lambda thinned by the blockage map. Closed form via
// gamma(2, beta r).
double tier_ball_mean(double lambda, double beta, LinkType link, double r);

double tier_ball_mean(const Scenario& s, TierRef tier, double r);

// Probability the ball of radius r holds no tier point: exp(-mean).
double void_probability(double lambda, double beta, LinkType link, double r);

double void_probability(const Scenario& s, TierRef tier, double r);

}  // namespace mmshare::geom
