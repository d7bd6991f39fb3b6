#pragma once

#include <vector>

#include "mmshare/model.hpp"
#include "mmshare/quad.hpp"

namespace mmshare::assoc {

// Radius inside which tier (m,p) must be empty when the user of operator n
// associates with tier (k,s) at range x: the distance where an (m,p) BS
// would deliver the same average power as the serving one. Zero when m is
// outside n's access set (its BSs never win association no matter how
// close).
double exclusion_radius(const Scenario& sc, int n, int k, LinkType s, int m,
                        LinkType p, double x);

// Co-located variant: sites are common, so the comparison is across the
// serving site's own tiers only and power/operator factors cancel.
double exclusion_radius_colocated(const Scenario& sc, LinkType s, LinkType p,
                                  double x);

// Density of the serving distance restricted to the event "user of operator
// n is served by tier (k,s)". Integrates to the association probability.
double serving_distance_density(const Scenario& sc, int n, int k, LinkType s,
                                double x);

// Single shared process; k is irrelevant beyond access membership.
double serving_distance_density_colocated(const Scenario& sc, LinkType s,
                                          double x);

// P(user of operator n is served by operator k), both tiers summed.
double association_probability(const Scenario& sc, int n, int k,
                               const quad::QuadSpec& spec = {});

// Full matrix A[n][k]; rows sum to 1 over k in the access set.
std::vector<std::vector<double>> association_matrix(
    const Scenario& sc, const quad::QuadSpec& spec = {});

// Mean number of users sharing the serving BS of a typical user of operator
// k, under the 1.28 cell-size bias correction.
double mean_load(const Scenario& sc, int k,
                 const std::vector<std::vector<double>>& assoc);

// P(a BS of operator m serves exactly z users), from the 3.5-Gamma cell
// size approximation with per-BS mean eta.
double load_pmf(int z, double eta);

struct LoadModel {
  std::vector<double> eta;        // mean users per BS, per operator
  std::vector<double> mean_load;  // users sharing the typical user's BS
  std::vector<double> idle_prob;  // load_pmf(0, eta)
};

LoadModel compute_load_model(const Scenario& sc,
                             const quad::QuadSpec& spec = {});

// Interference densities after removing idle BSs; association keeps the
// full density (an idle BS still attracts users, it just was not radiating
// before ours arrived).
std::vector<double> active_densities(const Scenario& sc, const LoadModel& lm);

}  // namespace mmshare::assoc
