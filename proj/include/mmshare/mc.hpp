#pragma once

#include <cstdint>
#include <vector>

#include "mmshare/assoc.hpp"
#include "mmshare/interference.hpp"
#include "mmshare/model.hpp"
#include "mmshare/parallel.hpp"

namespace mmshare::mc {

enum class Deployment { IndependentPpp, Colocated, ShiftedGrid };

struct FadingSpec {
  enum class Kind { Rayleigh, Nakagami };
  Kind kind = Kind::Rayleigh;
  double nakagami_m = 10.0;  // power is Gamma(m, 1/m); m = 1 is Rayleigh
};

struct ShadowingSpec {
  bool enabled = false;
  double sigma_los_db = 5.2;
  double sigma_nlos_db = 7.6;
};

struct McConfig {
  std::uint64_t drops = 100000;
  std::uint64_t seed = 1;
  // Deployment disc radius around the user, meters. 0 selects
  // max(10/beta, 5 * nearest-BS distance scale); BSs beyond that are
  // blocked with overwhelming probability and contribute nothing.
  double region_radius = 0.0;
  Deployment deployment = Deployment::IndependentPpp;
  FadingSpec fading;
  ShadowingSpec shadowing;
  ExecPolicy exec = ExecPolicy::Parallel;
};

double resolve_region_radius(const Scenario& sc, const McConfig& cfg, int n);

// Empirical P(SINR > T) for the typical user of operator n. Colocated
// scenarios share one site process across operators; partial loading draws
// per-BS activity with the idle probabilities from the load model (computed
// internally when not supplied). Results are a pure function of (scenario,
// config, n) regardless of thread count.
DistributionCurve estimate_sinr_ccdf(const Scenario& sc, const McConfig& cfg,
                                     int n,
                                     const std::vector<double>& thresholds,
                                     const assoc::LoadModel* lm = nullptr);

// Empirical rate CCDF with the deterministic mean-load bandwidth split:
// rate = pooled_bandwidth(k) / mean_load[k] * log2(1 + SINR).
DistributionCurve estimate_rate_ccdf(const Scenario& sc, const McConfig& cfg,
                                     int n, const std::vector<double>& rates,
                                     const assoc::LoadModel& lm);

// Fraction of drops in which each operator serves the user.
std::vector<double> estimate_association(const Scenario& sc,
                                         const McConfig& cfg, int n);

struct LaplaceEstimate {
  double value = 0.0;
  double stderr_ = 0.0;
};

// Empirical E[exp(-t I)] for the interference seen from a pinned serving
// context, with the same exclusion-radius geometry the analytical transform
// integrates over. Oracle for laplace_total / laplace_colocated.
LaplaceEstimate estimate_laplace(const Scenario& sc, const McConfig& cfg,
                                 const interference::ServingContext& ctx,
                                 double t);

// Per-drop SINR samples (and serving operator), exposed for percentile
// extraction in sweeps. sinr is 0 when no accessible BS landed in the
// region.
struct DropSample {
  double sinr;
  int serving_op;
};

std::vector<DropSample> sample_drops(const Scenario& sc, const McConfig& cfg,
                                     int n, const assoc::LoadModel* lm = nullptr);

}  // namespace mmshare::mc
