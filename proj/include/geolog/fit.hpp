#pragma once

// Least-squares fit of material parameters to (control, stress) data along
// one deformation mode. Multi-start Nelder-Mead in log-parameter space.

#include <cstdint>
#include <string_view>
#include <vector>

#include "geolog/deformation.hpp"

namespace geolog {

struct FitPoint {
  double control = 0.0;
  double stress = 0.0;
};

/// Which parameters the fit may move; frozen ones keep the template value.
struct FreeMask {
  bool mu = true;
  bool kappa = true;
  bool k = false;
  bool khat = false;
};

struct FitProblem {
  std::vector<FitPoint> data;
  DeformationKind mode = DeformationKind::uniaxial_free;
  StressKind stress_kind = StressKind::biot;
  MaterialModel model;
  FreeMask free;

  void validate() const;
};

struct FitOptions {
  std::uint64_t seed = 42;
  std::size_t starts = 8;
  std::size_t max_iters = 4000;  // objective evaluations per start
};

struct FitResult {
  MaterialModel model;
  double rms = 0.0;
  std::vector<double> residuals;  // model minus data, per point
  bool converged = false;
  std::size_t evaluations = 0;
};

/// Throws InsufficientData for fewer than 4 points or non-increasing
/// controls. A run whose best start did not converge returns
/// converged = false with the best parameters found.
FitResult fit_model(const FitProblem& problem, const FitOptions& opts = {});

/// Parses `control,stress` CSV (header required). Throws ParseError.
std::vector<FitPoint> parse_fit_csv(std::string_view text);

}  // namespace geolog
