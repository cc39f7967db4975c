#pragma once

// Derivative-free minimizers used by the oracles and the parameter fit.

#include <cstddef>
#include <functional>

#include <Eigen/Dense>

namespace geolog {

using Objective = std::function<double(const Eigen::VectorXd&)>;

struct NelderMeadOptions {
  double initial_step = 0.1;
  double ftol_rel = 1e-14;
  double ftol_abs = 1e-300;
  double xtol = 1e-12;
  std::size_t max_evals = 20000;
};

struct NelderMeadResult {
  Eigen::VectorXd x;
  double value = 0.0;
  std::size_t evals = 0;
  bool converged = false;
};

/// Nelder-Mead with dimension-adaptive coefficients. Non-finite objective
/// values are treated as +inf, which lets callers reject infeasible points.
NelderMeadResult nelder_mead(const Objective& f, const Eigen::VectorXd& x0,
                             const NelderMeadOptions& opts = {});

struct ScalarMinimum {
  double x = 0.0;
  double value = 0.0;
};

ScalarMinimum golden_section(const std::function<double(double)>& f, double lo, double hi,
                             double tol = 1e-12);

}  // namespace geolog
