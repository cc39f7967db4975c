#pragma once

// Brute-force engines that re-derive the closed-form statements numerically:
// rotation-group minimization (Grioli), discrete geodesic path optimization
// on GL+(n), and sampled logarithm minimization over SO(n).

#include <cstdint>
#include <optional>
#include <string>

#include "geolog/matcore.hpp"

namespace geolog {

struct OracleConfig {
  std::uint64_t seed = 42;
  std::size_t samples = 100;
  std::size_t nodes = 16;     // path segments
  double tol = 0.02;          // claim-specific: relative for paths, absolute otherwise
  std::size_t max_iters = 400;  // Gauss-Seidel sweeps per refinement level
  unsigned threads = 1;

  void validate() const;
};

struct OracleVerdict {
  std::string claim;
  double closed_form_value = 0.0;
  double oracle_value = 0.0;
  double relative_gap = 0.0;
  bool passed = false;
  std::optional<Mat> witness;
  std::size_t evaluations = 0;
};

/// Minimizes ||Q^T F - id|| over SO(n) (n = 2: sweep plus golden section on
/// the angle; n = 3: multi-start Nelder-Mead on axis-angle coordinates).
/// cfg.tol is the absolute value tolerance; the argmin must match R to 1e-4.
OracleVerdict grioli_oracle(const Mat& f, const OracleConfig& cfg);

struct PathResult {
  double length = 0.0;         // sum of segment lengths at cfg.nodes segments
  double coarse_length = 0.0;  // same at half the segments
  double discretization_bound = 0.0;
  Mat endpoint;
  std::size_t segments = 0;
};

/// Minimizes the discrete path energy from F to a free endpoint in SO(n)
/// (or to `pinned` when given) and reports the discrete length.
PathResult discrete_geodesic_path(const Mat& f, const MetricParams& p, const OracleConfig& cfg,
                                  const std::optional<Mat>& pinned = std::nullopt);

/// Compares the discrete-path minimum with the closed-form distance to SO(n).
/// Passes when the relative gap is within cfg.tol and the oracle does not
/// undershoot by more than its discretization bound.
OracleVerdict geodesic_distance_oracle(const Mat& f, const MetricParams& p, const OracleConfig& cfg);

/// Sampled check that ||sym log(Q^T F)|| >= ||log U|| over Haar rotations Q.
OracleVerdict logmin_oracle(const Mat& f, const OracleConfig& cfg);

/// Weighted version: ||sym log(Q^T F)||_{mu,mu_c,kappa} >= ||log U||_{mu,mu_c,kappa}.
OracleVerdict weighted_logmin_oracle(const Mat& f, const MetricParams& p, const OracleConfig& cfg);

/// Pinned-endpoint path distances to sampled rotations Q with ||Q - R|| > 0.1
/// must strictly exceed the closed-form distance to SO(n).
OracleVerdict best_approx_uniqueness_probe(const Mat& f, const MetricParams& p,
                                           const OracleConfig& cfg);

}  // namespace geolog
