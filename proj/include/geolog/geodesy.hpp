#pragma once

// Geodesics of the left-GL(n)-invariant, right-O(n)-invariant metric on
// GL+(n), closed-form distances to SO(n), and the competing distances on
// SO(n), CSO(n) and the SPD cone.

#include <optional>
#include <span>

#include "geolog/matcore.hpp"

namespace geolog {

/// The curve t -> F exp(t(sym xi - (mu_c/mu) skew xi)) exp(t(1 + mu_c/mu) skew xi).
struct GeodesicSegment {
  Mat base;
  Mat tangent_param;
  MetricParams params;

  GeodesicSegment(Mat base_, Mat tangent_param_, MetricParams params_);
};

enum class DistanceMethod { closed_form, numeric };

struct DistanceReport {
  double squared_distance = 0.0;
  std::optional<Mat> minimizer;
  DistanceMethod method = DistanceMethod::closed_form;

  double distance() const;
};

Mat geodesic_point(const GeodesicSegment& seg, double t);

/// Max over t_grid of || zeta' - (mu + mu_c)/(2 mu) (zeta^T zeta - zeta zeta^T) ||
/// with zeta = gamma^{-1} gamma' and both derivatives taken by central
/// differences of step h.
double geodesic_residual(const GeodesicSegment& seg, std::span<const double> t_grid, double h);

double geodesic_length(const GeodesicSegment& seg);

/// mu ||dev log U||^2 + (kappa/2) tr^2(log U); minimizer is the polar factor.
DistanceReport dist_squared_to_so(const Mat& f, const MetricParams& p);

/// Same closed form evaluated on the left stretch V.
double dist_squared_to_so_spatial(const Mat& f, const MetricParams& p);

double omega_iso(const Mat& f);
double omega_vol(const Mat& f);

double dist_cof_squared_to_so(const Mat& f, const MetricParams& p);

/// Frobenius distance ||U - id|| (Grioli); squared_distance holds its square.
DistanceReport euclid_dist_to_so(const Mat& f);

double dist_so(const Mat& q, const Mat& r);
double dist_cso(double c, const Mat& q, double d, const Mat& r);

double dist_psym_trace_metric(const Mat& c1, const Mat& c2);
double dist_log_euclidean(const Mat& c1, const Mat& c2);
Mat psym_geodesic_point(const Mat& c1, const Mat& m, double t);

/// mu ||dev sym grad_u||^2 + (kappa/2) tr^2(grad_u); minimizer skew grad_u.
DistanceReport linear_dist_to_so(const Mat& grad_u, const MetricParams& p);

}  // namespace geolog
