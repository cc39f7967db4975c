#pragma once

// Shared helpers for the unit tests: independent reference computations
// that do not route through the library's own kernels.

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "geolog/matcore.hpp"
#include "geolog/random.hpp"

namespace geolog::test {

using LMat = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;

inline const double kPhi = std::numbers::phi;

/// exp(X) by a long-double Taylor series after scaling by 2^-s.
inline Mat taylor_exp(const Mat& x) {
  LMat a = x.cast<long double>();
  int s = 0;
  long double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  while (norm > 0.125L) {
    norm /= 2;
    a /= 2;
    ++s;
  }
  const auto n = a.rows();
  LMat term = LMat::Identity(n, n);
  LMat sum = term;
  for (int k = 1; k < 40; ++k) {
    term = term * a / static_cast<long double>(k);
    sum += term;
  }
  for (int i = 0; i < s; ++i) sum = sum * sum;
  return sum.cast<double>();
}

/// Eigenvalues of a symmetric 2x2 matrix, ascending, by the quadratic formula.
inline std::pair<double, double> sym2_eigenvalues(const Mat& s) {
  const double m = 0.5 * (s(0, 0) + s(1, 1));
  const double r = std::hypot(0.5 * (s(0, 0) - s(1, 1)), s(0, 1));
  return {m - r, m + r};
}

inline Mat mat2(double a, double b, double c, double d) {
  Mat m(2, 2);
  m << a, b, c, d;
  return m;
}

inline Mat diag(std::initializer_list<double> values) {
  Mat m = Mat::Zero(static_cast<Eigen::Index>(values.size()), static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double v : values) m(i, i) = v, ++i;
  return m;
}

inline Mat planar_rotation(double theta) {
  return mat2(std::cos(theta), std::sin(theta), -std::sin(theta), std::cos(theta));
}

inline double max_diff(const Mat& a, const Mat& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace geolog::test

#define EXPECT_MAT_NEAR(a, b, tol) EXPECT_LE(::geolog::test::max_diff((a), (b)), (tol))
