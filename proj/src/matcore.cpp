#include "geolog/matcore.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <string>

namespace geolog {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::dimension_mismatch: return "DimensionMismatch";
    case ErrorCode::non_positive_determinant: return "NonPositiveDeterminant";
    case ErrorCode::singular_matrix: return "SingularMatrix";
    case ErrorCode::not_spd: return "NotSPD";
    case ErrorCode::overflow: return "Overflow";
    case ErrorCode::angle_at_pi: return "AngleAtPi";
    case ErrorCode::no_principal_log: return "NoPrincipalLog";
    case ErrorCode::parameter_out_of_range: return "ParameterOutOfRange";
    case ErrorCode::unsupported_model: return "UnsupportedModel";
    case ErrorCode::zero_distortion: return "ZeroDistortion";
    case ErrorCode::insufficient_data: return "InsufficientData";
    case ErrorCode::non_convergence: return "NonConvergence";
    case ErrorCode::parse_error: return "ParseError";
  }
  return "Unknown";
}

MetricParams::MetricParams(double mu_, double mu_c_, double kappa_)
    : mu(mu_), mu_c(mu_c_), kappa(kappa_) {
  if (!(mu > 0.0) || !(mu_c > 0.0) || !(kappa > 0.0) || !std::isfinite(mu) ||
      !std::isfinite(mu_c) || !std::isfinite(kappa)) {
    throw Error(ErrorCode::parameter_out_of_range,
                "metric weights mu, mu_c, kappa must be positive and finite");
  }
}

MetricParams MetricParams::frobenius(int n) { return MetricParams(1.0, 1.0, 2.0 / n); }

double max_abs(const Mat& x) { return x.size() == 0 ? 0.0 : x.cwiseAbs().maxCoeff(); }

double frobenius(const Mat& x) { return x.norm(); }

double scaled_tol(const Mat& x, double tol) {
  return std::max(tol * std::max(1.0, static_cast<double>(x.rows()) * max_abs(x)),
                  kAbsoluteFloor);
}

Mat identity(int n) { return Mat::Identity(n, n); }

Mat sym(const Mat& x) { return 0.5 * (x + x.transpose()); }

Mat skew(const Mat& x) { return 0.5 * (x - x.transpose()); }

Mat dev(const Mat& x) {
  const auto n = x.rows();
  return x - (x.trace() / static_cast<double>(n)) * Mat::Identity(n, n);
}

Mat cofactor(const Mat& f) {
  require_square(f, "cofactor");
  return f.determinant() * f.inverse().transpose();
}

bool is_square(const Mat& x) { return x.rows() == x.cols() && x.rows() > 0; }

bool is_symmetric(const Mat& x, double tol) {
  return is_square(x) && max_abs(x - x.transpose()) <= scaled_tol(x, tol);
}

bool is_skew(const Mat& x, double tol) {
  return is_square(x) && max_abs(x + x.transpose()) <= scaled_tol(x, tol);
}

bool is_spd(const Mat& x, double tol) {
  if (!is_symmetric(x, tol)) return false;
  Eigen::SelfAdjointEigenSolver<Mat> es(sym(x), Eigen::EigenvaluesOnly);
  const Vec& ev = es.eigenvalues();
  return ev.minCoeff() > kAbsoluteFloor * std::max(1.0, ev.cwiseAbs().maxCoeff());
}

bool is_rotation(const Mat& x, double tol) {
  if (!is_square(x)) return false;
  const auto n = x.rows();
  const Mat gram = x.transpose() * x;
  return max_abs(gram - Mat::Identity(n, n)) <= scaled_tol(gram, tol) &&
         std::abs(x.determinant() - 1.0) <= scaled_tol(gram, tol);
}

bool is_invertible_positive_det(const Mat& x, double tol) {
  if (!is_square(x)) return false;
  const double d = x.determinant();
  const double scale = std::pow(std::max(max_abs(x), kAbsoluteFloor), static_cast<double>(x.rows()));
  return d > tol * scale;
}

void require_square(const Mat& x, const char* what) {
  if (!is_square(x)) {
    throw Error(ErrorCode::dimension_mismatch,
                std::string(what) + ": expected a non-empty square matrix, got " +
                    std::to_string(x.rows()) + "x" + std::to_string(x.cols()));
  }
  if (!x.allFinite()) {
    throw Error(ErrorCode::parameter_out_of_range, std::string(what) + ": non-finite entries");
  }
}

void require_same_dim(const Mat& x, const Mat& y, const char* what) {
  require_square(x, what);
  require_square(y, what);
  if (x.rows() != y.rows()) {
    throw Error(ErrorCode::dimension_mismatch,
                std::string(what) + ": dimensions " + std::to_string(x.rows()) + " and " +
                    std::to_string(y.rows()) + " differ");
  }
}

void require_positive_det(const Mat& f, const char* what) {
  require_square(f, what);
  const double d = f.determinant();
  if (!(d > 0.0)) {
    throw Error(ErrorCode::non_positive_determinant,
                std::string(what) + ": det F = " + std::to_string(d));
  }
}

void require_spd(const Mat& p, const char* what) {
  require_square(p, what);
  if (!is_spd(p)) throw Error(ErrorCode::not_spd, std::string(what) + ": matrix is not SPD");
}

OrthogonalSplit split_orthogonal(const Mat& x) {
  require_square(x, "split_orthogonal");
  const auto n = static_cast<double>(x.rows());
  OrthogonalSplit out;
  out.spherical_coeff = x.trace() / n;
  out.skew = skew(x);
  out.dev_sym = dev(sym(x));
  return out;
}

double weighted_inner(const Mat& x, const Mat& y, const MetricParams& p) {
  require_same_dim(x, y, "weighted_inner");
  const Mat dx = dev(sym(x));
  const Mat dy = dev(sym(y));
  const Mat sx = skew(x);
  const Mat sy = skew(y);
  return p.mu * (dx.cwiseProduct(dy)).sum() + p.mu_c * (sx.cwiseProduct(sy)).sum() +
         0.5 * p.kappa * x.trace() * y.trace();
}

double weighted_norm(const Mat& x, const MetricParams& p) {
  return std::sqrt(std::max(0.0, weighted_inner(x, x, p)));
}

SymmetricEigen eigen_symmetric(const Mat& p) {
  require_square(p, "eigen_symmetric");
  const auto n = p.rows();
  const bool diagonal = (p - Mat(p.diagonal().asDiagonal())).cwiseAbs().maxCoeff() == 0.0;
  SymmetricEigen out;
  if (diagonal) {
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index a, Eigen::Index b) { return p(a, a) < p(b, b); });
    out.values.resize(n);
    out.vectors = Mat::Zero(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
      out.values[k] = p(order[k], order[k]);
      out.vectors(order[k], k) = 1.0;
    }
    return out;
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(sym(p));
  if (es.info() != Eigen::Success) {
    throw Error(ErrorCode::non_convergence, "symmetric eigensolver failed");
  }
  out.values = es.eigenvalues();
  out.vectors = es.eigenvectors();
  return out;
}

namespace {

SymmetricEigen spd_eigen(const Mat& p, const char* what) {
  require_square(p, what);
  if (!is_symmetric(p)) throw Error(ErrorCode::not_spd, std::string(what) + ": not symmetric");
  SymmetricEigen e = eigen_symmetric(p);
  const double top = e.values.cwiseAbs().maxCoeff();
  if (!(e.values.minCoeff() > kAbsoluteFloor * std::max(1.0, top))) {
    throw Error(ErrorCode::not_spd, std::string(what) + ": smallest eigenvalue " +
                                        std::to_string(e.values.minCoeff()) + " is not positive");
  }
  return e;
}

template <class Scalar>
using DynMat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

// Pade(8) coefficients b_j = (16-j)! 8! / (16! j! (8-j)!).
template <class Scalar>
std::array<Scalar, 9> pade8_coefficients() {
  std::array<Scalar, 9> c{};
  c[0] = 1;
  for (int j = 1; j <= 8; ++j) {
    c[j] = c[j - 1] * Scalar(8 - j + 1) / (Scalar(j) * Scalar(16 - j + 1));
  }
  return c;
}

template <class Scalar>
DynMat<Scalar> pade_exp(const DynMat<Scalar>& x) {
  const auto n = x.rows();
  const Scalar norm1 = x.cwiseAbs().colwise().sum().maxCoeff();
  if (!std::isfinite(static_cast<double>(norm1))) {
    throw Error(ErrorCode::overflow, "mat_exp: non-finite input");
  }
  int squarings = 0;
  if (norm1 > Scalar(1)) {
    squarings = static_cast<int>(std::ceil(std::log2(static_cast<double>(norm1))));
  }
  const DynMat<Scalar> a = x / std::ldexp(Scalar(1), squarings);
  const auto c = pade8_coefficients<Scalar>();
  const DynMat<Scalar> id = DynMat<Scalar>::Identity(n, n);
  const DynMat<Scalar> a2 = a * a;
  const DynMat<Scalar> a4 = a2 * a2;
  const DynMat<Scalar> a6 = a4 * a2;
  const DynMat<Scalar> a8 = a4 * a4;
  const DynMat<Scalar> even = c[0] * id + c[2] * a2 + c[4] * a4 + c[6] * a6 + c[8] * a8;
  const DynMat<Scalar> odd = a * (c[1] * id + c[3] * a2 + c[5] * a4 + c[7] * a6);
  DynMat<Scalar> r = (even - odd).partialPivLu().solve(even + odd);
  for (int k = 0; k < squarings; ++k) r = r * r;
  if (!r.allFinite()) throw Error(ErrorCode::overflow, "mat_exp: result exceeds double range");
  return r;
}

constexpr double kLogDoubleMax = 709.78;

}  // namespace

Mat sqrt_spd(const Mat& p) {
  return spectral_map(spd_eigen(p, "sqrt_spd"), [](double v) { return std::sqrt(v); });
}

Mat inv_sqrt_spd(const Mat& p) {
  return spectral_map(spd_eigen(p, "inv_sqrt_spd"), [](double v) { return 1.0 / std::sqrt(v); });
}

Mat pow_spd(const Mat& p, double exponent) {
  return spectral_map(spd_eigen(p, "pow_spd"),
                      [exponent](double v) { return std::pow(v, exponent); });
}

Mat principal_log_spd(const Mat& p) {
  return spectral_map(spd_eigen(p, "principal_log_spd"), [](double v) { return std::log(v); });
}

Mat exp_symmetric(const Mat& s) {
  require_square(s, "exp_symmetric");
  const SymmetricEigen e = eigen_symmetric(sym(s));
  if (e.values.maxCoeff() > kLogDoubleMax) {
    throw Error(ErrorCode::overflow, "mat_exp: eigenvalue exceeds exponent range");
  }
  return spectral_map(e, [](double v) { return std::exp(v); });
}

PolarDecomposition polar_decompose(const Mat& f) {
  require_positive_det(f, "polar_decompose");
  Eigen::JacobiSVD<Mat> svd(f, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vec& sigma = svd.singularValues();
  const double smallest = sigma[sigma.size() - 1];
  if (!(smallest > 0.0) || sigma[0] / smallest > 1e14) {
    throw Error(ErrorCode::singular_matrix, "polar_decompose: condition number exceeds 1e14");
  }
  Mat left = svd.matrixU();
  Mat right = svd.matrixV();
  // det F > 0 means det(left) and det(right) agree; make both +1 by flipping
  // the singular pair belonging to the smallest singular value.
  if (left.determinant() < 0.0) {
    left.col(left.cols() - 1) *= -1.0;
    right.col(right.cols() - 1) *= -1.0;
  }
  PolarDecomposition out;
  out.rotation = left * right.transpose();
  out.right_stretch = sym(right * sigma.asDiagonal() * right.transpose());
  out.left_stretch = sym(left * sigma.asDiagonal() * left.transpose());
  return out;
}

Mat mat_exp(const Mat& x) {
  require_square(x, "mat_exp");
  if (max_abs(x - x.transpose()) <= kAbsoluteFloor * std::max(1.0, max_abs(x))) {
    return exp_symmetric(x);
  }
  return pade_exp<double>(x);
}

Mat mat_exp_pade(const Mat& x) {
  require_square(x, "mat_exp_pade");
  return pade_exp<double>(x);
}

Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic> mat_exp_pade(
    const Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>& x) {
  if (x.rows() != x.cols() || x.rows() == 0) {
    throw Error(ErrorCode::dimension_mismatch, "mat_exp_pade: expected square matrix");
  }
  return pade_exp<long double>(x);
}

Mat hat3(const Eigen::Vector3d& w) {
  Mat h(3, 3);
  h << 0.0, -w[2], w[1],  //
      w[2], 0.0, -w[0],   //
      -w[1], w[0], 0.0;
  return h;
}

Eigen::Vector3d vee3(const Mat& x) {
  const Mat s = skew(x);
  return {s(2, 1), s(0, 2), s(1, 0)};
}

namespace {

constexpr double kPiTol = 1e-10;

Mat log_rotation_2d(const Mat& q) {
  // q = [[cos t, sin t], [-sin t, cos t]] = exp([[0, t], [-t, 0]])
  const double t = std::atan2(0.5 * (q(0, 1) - q(1, 0)), 0.5 * (q(0, 0) + q(1, 1)));
  if (std::numbers::pi - std::abs(t) < kPiTol) {
    throw Error(ErrorCode::angle_at_pi, "principal_log_rotation: rotation angle is pi");
  }
  Mat w(2, 2);
  w << 0.0, t, -t, 0.0;
  return w;
}

Mat log_rotation_3d(const Mat& q) {
  const Eigen::Vector3d v = vee3(q);  // sin(theta) * axis
  const double s = v.norm();
  const double c = 0.5 * (q.trace() - 1.0);
  const double theta = std::atan2(s, c);
  if (std::numbers::pi - theta < kPiTol) {
    throw Error(ErrorCode::angle_at_pi, "principal_log_rotation: rotation angle is pi");
  }
  if (theta < 1e-8) {
    // theta / sin(theta) = 1 + theta^2 / 6 + O(theta^4)
    return hat3((1.0 + theta * theta / 6.0) * v);
  }
  Eigen::Vector3d axis;
  if (theta < 3.0) {
    axis = v / s;
  } else {
    // sin(theta) is small; recover the axis from (Q + Q^T)/2 - cos(theta) id
    // = (1 - cos(theta)) a a^T and fix its sign with the skew part.
    const Mat b = sym(q) - c * Mat::Identity(3, 3);
    Eigen::Index k = 0;
    b.diagonal().maxCoeff(&k);
    axis = b.col(k) / std::sqrt(b(k, k) * (1.0 - c));
    axis.normalize();
    if (axis.dot(v) < 0.0) axis = -axis;
  }
  return hat3(theta * axis);
}

Mat log_rotation_schur(const Mat& q) {
  const auto n = q.rows();
  Eigen::RealSchur<Mat> schur(q);
  const Mat& t = schur.matrixT();
  const Mat& z = schur.matrixU();
  Mat logt = Mat::Zero(n, n);
  for (Eigen::Index i = 0; i < n;) {
    const bool block2 = i + 1 < n && std::abs(t(i + 1, i)) > 1e-14;
    if (block2) {
      const double a = 0.5 * (t(i, i) + t(i + 1, i + 1));
      const double b = 0.5 * (t(i, i + 1) - t(i + 1, i));
      const double angle = std::atan2(b, a);
      if (std::numbers::pi - std::abs(angle) < kPiTol) {
        throw Error(ErrorCode::angle_at_pi, "principal_log_rotation: rotation angle is pi");
      }
      logt(i, i + 1) = angle;
      logt(i + 1, i) = -angle;
      i += 2;
    } else {
      if (t(i, i) < 0.0) {
        throw Error(ErrorCode::angle_at_pi, "principal_log_rotation: eigenvalue -1");
      }
      i += 1;
    }
  }
  return skew(z * logt * z.transpose());
}

// Denman-Beavers square root with determinant scaling.
Mat sqrt_db(const Mat& a) {
  const auto n = a.rows();
  Mat y = a;
  Mat z = Mat::Identity(n, n);
  for (int it = 0; it < 100; ++it) {
    const double g = std::pow(std::abs(y.determinant() * z.determinant()), -0.5 / n);
    const Mat yi = (g * y).inverse();
    const Mat zi = (g * z).inverse();
    const Mat ynext = 0.5 * (g * y + zi);
    z = 0.5 * (g * z + yi);
    const double change = max_abs(ynext - y);
    y = ynext;
    if (change <= 1e-15 * std::max(1.0, max_abs(y))) break;
  }
  return y;
}

}  // namespace

Mat principal_log_rotation(const Mat& q) {
  require_square(q, "principal_log_rotation");
  if (!is_rotation(q, 1e-8)) {
    throw Error(ErrorCode::parameter_out_of_range, "principal_log_rotation: input is not a rotation");
  }
  switch (q.rows()) {
    case 1: return Mat::Zero(1, 1);
    case 2: return log_rotation_2d(q);
    case 3: return log_rotation_3d(q);
    default: return log_rotation_schur(q);
  }
}

Mat principal_log(const Mat& x) {
  require_square(x, "principal_log");
  const auto n = x.rows();
  Eigen::EigenSolver<Mat> es(x, false);
  const double scale = std::max(1.0, max_abs(x));
  for (Eigen::Index i = 0; i < n; ++i) {
    const std::complex<double> ev = es.eigenvalues()[i];
    if (std::abs(ev.imag()) <= 1e-12 * scale && ev.real() <= 1e-14 * scale) {
      throw Error(ErrorCode::no_principal_log,
                  "principal_log: eigenvalue on the closed negative real axis");
    }
  }
  const Mat id = Mat::Identity(n, n);
  Mat y = x;
  int roots = 0;
  while (max_abs(y - id) > 0.25 && roots < 60) {
    y = sqrt_db(y);
    ++roots;
  }
  // log(y) = 2 atanh(z), z = (y - id)(y + id)^{-1}
  const Mat zmat = (y + id).transpose().partialPivLu().solve((y - id).transpose()).transpose();
  const Mat z2 = zmat * zmat;
  Mat term = zmat;
  Mat sum = Mat::Zero(n, n);
  for (int k = 0; k < 200; ++k) {
    const Mat contrib = term / (2.0 * k + 1.0);
    sum += contrib;
    if (max_abs(contrib) < 1e-18) break;
    term = term * z2;
  }
  return std::ldexp(2.0, roots) * sum;
}

}  // namespace geolog
