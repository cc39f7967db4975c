#pragma once

// Dense matrix kernel: orthogonal splitting, weighted inner products,
// polar decomposition and the matrix exponential / principal logarithms.
//
// Every function here is pure. Matrices are square Eigen dynamic matrices;
// the dimension travels with the value.

#include <Eigen/Dense>

#include "geolog/error.hpp"

namespace geolog {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

/// Weights of the isotropic inner product: shear modulus mu, spin modulus
/// mu_c and bulk modulus kappa. All three must be strictly positive.
struct MetricParams {
  double mu = 1.0;
  double mu_c = 1.0;
  double kappa = 1.0;

  MetricParams() = default;
  MetricParams(double mu_, double mu_c_, double kappa_);

  /// Weights for which the weighted norm is the Frobenius norm in dimension n.
  static MetricParams frobenius(int n);
};

/// X = dev_sym + skew + spherical_coeff * id.
struct OrthogonalSplit {
  Mat dev_sym;
  Mat skew;
  double spherical_coeff = 0.0;
};

/// F = rotation * right_stretch = left_stretch * rotation.
struct PolarDecomposition {
  Mat rotation;
  Mat right_stretch;
  Mat left_stretch;
};

inline constexpr double kPredicateTol = 1e-10;
inline constexpr double kAbsoluteFloor = 1e-14;

// Tolerance scaled by n * max|entry| with an absolute floor.
double scaled_tol(const Mat& x, double tol);

Mat identity(int n);
double max_abs(const Mat& x);
double frobenius(const Mat& x);

Mat sym(const Mat& x);
Mat skew(const Mat& x);
Mat dev(const Mat& x);
Mat cofactor(const Mat& f);

bool is_square(const Mat& x);
bool is_symmetric(const Mat& x, double tol = kPredicateTol);
bool is_skew(const Mat& x, double tol = kPredicateTol);
bool is_spd(const Mat& x, double tol = kPredicateTol);
bool is_rotation(const Mat& x, double tol = kPredicateTol);
bool is_invertible_positive_det(const Mat& x, double tol = kPredicateTol);

void require_square(const Mat& x, const char* what);
void require_same_dim(const Mat& x, const Mat& y, const char* what);
void require_positive_det(const Mat& f, const char* what);
void require_spd(const Mat& p, const char* what);

OrthogonalSplit split_orthogonal(const Mat& x);

double weighted_inner(const Mat& x, const Mat& y, const MetricParams& p);
double weighted_norm(const Mat& x, const MetricParams& p);

struct SymmetricEigen {
  Vec values;   // ascending
  Mat vectors;  // columns
};

/// Symmetric eigendecomposition of sym(P). Diagonal inputs are returned as is.
SymmetricEigen eigen_symmetric(const Mat& p);

/// Q * diag(f(values)) * Q^T for the symmetric eigendecomposition of P.
template <class Fn>
Mat spectral_map(const SymmetricEigen& e, Fn&& fn) {
  Vec mapped(e.values.size());
  for (Eigen::Index i = 0; i < e.values.size(); ++i) mapped[i] = fn(e.values[i]);
  return e.vectors * mapped.asDiagonal() * e.vectors.transpose();
}

Mat sqrt_spd(const Mat& p);
Mat inv_sqrt_spd(const Mat& p);
Mat pow_spd(const Mat& p, double exponent);
Mat principal_log_spd(const Mat& p);
Mat exp_symmetric(const Mat& s);

PolarDecomposition polar_decompose(const Mat& f);

/// Matrix exponential. Symmetric input goes through the spectral route,
/// everything else through Pade(8) scaling and squaring.
Mat mat_exp(const Mat& x);

/// Pade(8) scaling-and-squaring exponential without the symmetric shortcut.
Mat mat_exp_pade(const Mat& x);
Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic> mat_exp_pade(
    const Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>& x);

/// Principal logarithm of a rotation; rejects rotation angles at pi.
Mat principal_log_rotation(const Mat& q);

/// Principal real logarithm of a general real matrix without eigenvalues on
/// the closed negative real axis (inverse scaling and squaring).
Mat principal_log(const Mat& x);

/// 3-vector to 3x3 skew matrix: hat(w) v = w x v.
Mat hat3(const Eigen::Vector3d& w);
/// Inverse of hat3 applied to skew(x).
Eigen::Vector3d vee3(const Mat& x);

}  // namespace geolog
