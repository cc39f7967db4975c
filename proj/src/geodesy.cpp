#include "geolog/geodesy.hpp"

#include <cmath>

namespace geolog {

namespace {

using MatL = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;

double closed_form_from_log(const Mat& log_stretch, const MetricParams& p) {
  const double tr = log_stretch.trace();
  return p.mu * dev(log_stretch).squaredNorm() + 0.5 * p.kappa * tr * tr;
}

MatL geodesic_point_ld(const MatL& base, const MatL& first_gen, const MatL& second_gen,
                       long double t) {
  return base * mat_exp_pade(MatL(t * first_gen)) * mat_exp_pade(MatL(t * second_gen));
}

}  // namespace

GeodesicSegment::GeodesicSegment(Mat base_, Mat tangent_param_, MetricParams params_)
    : base(std::move(base_)), tangent_param(std::move(tangent_param_)), params(params_) {
  require_same_dim(base, tangent_param, "GeodesicSegment");
  require_positive_det(base, "GeodesicSegment");
}

double DistanceReport::distance() const { return std::sqrt(std::max(0.0, squared_distance)); }

Mat geodesic_point(const GeodesicSegment& seg, double t) {
  const double ratio = seg.params.mu_c / seg.params.mu;
  const Mat& xi = seg.tangent_param;
  return seg.base * mat_exp(t * (sym(xi) - ratio * skew(xi))) * mat_exp(t * (1.0 + ratio) * skew(xi));
}

double geodesic_residual(const GeodesicSegment& seg, std::span<const double> t_grid, double h) {
  if (!(h >= 1e-6 && h <= 1e-3)) {
    throw Error(ErrorCode::parameter_out_of_range, "geodesic_residual: h must lie in [1e-6, 1e-3]");
  }
  const long double ratio = static_cast<long double>(seg.params.mu_c) / seg.params.mu;
  const long double coeff =
      (static_cast<long double>(seg.params.mu) + seg.params.mu_c) / (2.0L * seg.params.mu);
  const MatL xi = seg.tangent_param.cast<long double>();
  const MatL xi_sym = 0.5L * (xi + xi.transpose());
  const MatL xi_skew = 0.5L * (xi - xi.transpose());
  const MatL first = xi_sym - ratio * xi_skew;
  const MatL second = (1.0L + ratio) * xi_skew;
  const MatL base = seg.base.cast<long double>();
  const long double hl = h;

  auto gamma = [&](long double t) { return geodesic_point_ld(base, first, second, t); };
  auto zeta = [&](long double t) -> MatL {
    const MatL g = gamma(t);
    const MatL gdot = (gamma(t + hl) - gamma(t - hl)) / (2.0L * hl);
    return g.partialPivLu().solve(gdot);
  };

  double worst = 0.0;
  for (double t : t_grid) {
    const long double tl = t;
    const MatL z = zeta(tl);
    const MatL zdot = (zeta(tl + hl) - zeta(tl - hl)) / (2.0L * hl);
    const MatL rhs = coeff * (z.transpose() * z - z * z.transpose());
    worst = std::max(worst, static_cast<double>((zdot - rhs).norm()));
  }
  return worst;
}

double geodesic_length(const GeodesicSegment& seg) {
  return weighted_norm(seg.tangent_param, seg.params);
}

DistanceReport dist_squared_to_so(const Mat& f, const MetricParams& p) {
  const PolarDecomposition pd = polar_decompose(f);
  DistanceReport rep;
  rep.squared_distance = closed_form_from_log(principal_log_spd(pd.right_stretch), p);
  rep.minimizer = pd.rotation;
  rep.method = DistanceMethod::closed_form;
  return rep;
}

double dist_squared_to_so_spatial(const Mat& f, const MetricParams& p) {
  const PolarDecomposition pd = polar_decompose(f);
  return closed_form_from_log(principal_log_spd(pd.left_stretch), p);
}

double omega_iso(const Mat& f) {
  const PolarDecomposition pd = polar_decompose(f);
  return dev(principal_log_spd(pd.right_stretch)).norm();
}

double omega_vol(const Mat& f) {
  const PolarDecomposition pd = polar_decompose(f);
  return std::abs(principal_log_spd(pd.right_stretch).trace());
}

double dist_cof_squared_to_so(const Mat& f, const MetricParams& p) {
  const PolarDecomposition pd = polar_decompose(f);
  const Mat log_u = principal_log_spd(pd.right_stretch);
  const double n = static_cast<double>(f.rows());
  const double tr = log_u.trace();
  return p.mu * dev(log_u).squaredNorm() + 0.5 * p.kappa * (n - 1.0) * (n - 1.0) * tr * tr;
}

DistanceReport euclid_dist_to_so(const Mat& f) {
  const PolarDecomposition pd = polar_decompose(f);
  const auto n = f.rows();
  DistanceReport rep;
  rep.squared_distance = (pd.right_stretch - Mat::Identity(n, n)).squaredNorm();
  rep.minimizer = pd.rotation;
  rep.method = DistanceMethod::closed_form;
  return rep;
}

double dist_so(const Mat& q, const Mat& r) {
  require_same_dim(q, r, "dist_so");
  return principal_log_rotation(q.transpose() * r).norm();
}

double dist_cso(double c, const Mat& q, double d, const Mat& r) {
  if (!(c > 0.0) || !(d > 0.0)) {
    throw Error(ErrorCode::parameter_out_of_range, "dist_cso: scale factors must be positive");
  }
  const double rot = dist_so(q, r);
  const double lr = std::log(c / d);
  return std::sqrt(rot * rot + lr * lr / static_cast<double>(q.rows()));
}

double dist_psym_trace_metric(const Mat& c1, const Mat& c2) {
  require_same_dim(c1, c2, "dist_psym_trace_metric");
  require_spd(c1, "dist_psym_trace_metric");
  const Mat w = inv_sqrt_spd(c2);
  return principal_log_spd(sym(w * c1 * w)).norm();
}

double dist_log_euclidean(const Mat& c1, const Mat& c2) {
  require_same_dim(c1, c2, "dist_log_euclidean");
  return (principal_log_spd(c1) - principal_log_spd(c2)).norm();
}

Mat psym_geodesic_point(const Mat& c1, const Mat& m, double t) {
  require_same_dim(c1, m, "psym_geodesic_point");
  if (!is_symmetric(m)) {
    throw Error(ErrorCode::parameter_out_of_range, "psym_geodesic_point: direction must be symmetric");
  }
  const Mat root = sqrt_spd(c1);
  const Mat inv_root = inv_sqrt_spd(c1);
  return sym(root * exp_symmetric(sym(t * inv_root * m * inv_root)) * root);
}

DistanceReport linear_dist_to_so(const Mat& grad_u, const MetricParams& p) {
  require_square(grad_u, "linear_dist_to_so");
  const double tr = grad_u.trace();
  DistanceReport rep;
  rep.squared_distance = p.mu * dev(sym(grad_u)).squaredNorm() + 0.5 * p.kappa * tr * tr;
  rep.minimizer = skew(grad_u);
  rep.method = DistanceMethod::closed_form;
  return rep;
}

}  // namespace geolog
