#pragma once

#include <functional>
#include <vector>

#include "mmshare/assoc.hpp"
#include "mmshare/model.hpp"
#include "mmshare/parallel.hpp"
#include "mmshare/quad.hpp"

namespace mmshare::coverage {

struct CoverageOptions {
  quad::QuadSpec quad;
  ExecPolicy exec = ExecPolicy::Parallel;
};

// P(SINR > T, served by operator k) for the typical user of operator n, at
// linear threshold T. Summing over k in the access set gives the coverage
// probability. density_override thins the interfering processes only.
double sinr_coverage_component(
    const Scenario& sc, int n, int k, double threshold,
    const std::vector<double>* density_override = nullptr,
    const quad::QuadSpec& spec = {});

double sinr_coverage_point(const Scenario& sc, int n, double threshold,
                           const std::vector<double>* density_override = nullptr,
                           const quad::QuadSpec& spec = {});

// CCDF of SINR on an ascending grid of linear thresholds. Grid points are
// independent, so they are farmed out per index; results do not depend on
// the execution policy.
DistributionCurve sinr_coverage(const Scenario& sc, int n,
                                const std::vector<double>& thresholds,
                                const CoverageOptions& opts = {});

// Rate CCDF under the mean-load approximation: a user served by operator k
// gets bandwidth W_k / N_k, so rate rho maps to a per-component SINR
// threshold 2^{rho N_k / W_k} - 1. Partial loading (scenario flag) thins
// interference by the idle probability; association densities are kept.
double rate_coverage_point(const Scenario& sc, int n, double rate,
                           const assoc::LoadModel& lm,
                           const quad::QuadSpec& spec = {});

DistributionCurve rate_coverage(const Scenario& sc, int n,
                                const std::vector<double>& rates,
                                const assoc::LoadModel& lm,
                                const CoverageOptions& opts = {});

// Closed-form SINR coverage for the symmetric interference-limited pool:
// n_ops identical operators, full pooling, closed access, both pathloss
// exponents 4, equal intercepts, zero side gain. Blockage drops out.
double coverage_closed_form_alpha4(int n_ops, double theta_b, double threshold);

// Same special case mapped to rate: rho_norm is the rate target multiplied
// by mean load and divided by the per-operator bandwidth.
double rate_ccdf_closed_form_alpha4(int n_ops, double theta_b,
                                    double rho_norm);

// Smallest rho with ccdf(rho) <= level, via bracket growth plus bisection
// to relative width rel_tol. ccdf must be non-increasing.
double solve_ccdf_level(const std::function<double(double)>& ccdf,
                        double level, double rel_tol = 1e-4,
                        double hint = 1.0);

double median_rate(const Scenario& sc, int n, const assoc::LoadModel& lm,
                   const quad::QuadSpec& spec = {});

// Rate r with P(rate > r) = 1 - pct; pct = 0.5 is the median.
double rate_percentile(const Scenario& sc, int n, const assoc::LoadModel& lm,
                       double pct, const quad::QuadSpec& spec = {});

// Per-operator licensed bandwidth (applied to every operator of the given
// scenario) at which operator n's median rate reaches target. Monotone
// bisection on [lo_hz, hi_hz].
double required_bandwidth(const Scenario& sc, int n, double target_median,
                          double lo_hz, double hi_hz,
                          const quad::QuadSpec& spec = {});

}  // namespace mmshare::coverage
