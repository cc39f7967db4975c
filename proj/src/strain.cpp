#include "geolog/strain.hpp"

#include <cmath>

namespace geolog {

double scale_function(SethHillOrder r, double lambda) {
  if (r.r == 0.0) return std::log(lambda);
  // expm1 keeps the r -> 0 limit continuous
  return std::expm1(2.0 * r.r * std::log(lambda)) / (2.0 * r.r);
}

StrainTensor seth_hill(const Mat& u, SethHillOrder r, StrainFrame frame) {
  require_spd(u, "seth_hill");
  if (!std::isfinite(r.r)) {
    throw Error(ErrorCode::parameter_out_of_range, "seth_hill: order must be finite");
  }
  StrainTensor out;
  out.frame = frame;
  out.family = r.r == 0.0 ? StrainFamily::hencky : StrainFamily::seth_hill;
  out.order = r.r;
  out.value = sym(spectral_map(eigen_symmetric(u), [r](double v) { return scale_function(r, v); }));
  return out;
}

StrainTensor bazant_approx(const Mat& u, StrainFrame frame) {
  require_spd(u, "bazant_approx");
  StrainTensor out;
  out.frame = frame;
  out.family = StrainFamily::bazant;
  out.order = 0.0;
  out.value = sym(0.5 * (u - u.inverse()));
  return out;
}

StrainTensor hencky_tensor(const Mat& u, StrainFrame frame) {
  StrainTensor out;
  out.value = principal_log_spd(u);
  out.frame = frame;
  out.family = StrainFamily::hencky;
  out.order = 0.0;
  return out;
}

StrainTensor linear_strain(const Mat& grad_u) {
  require_square(grad_u, "linear_strain");
  StrainTensor out;
  out.value = sym(grad_u);
  out.frame = StrainFrame::material;
  out.family = StrainFamily::linear;
  out.order = 1.0;
  return out;
}

VolIsoSplit vol_iso_split(const StrainTensor& hencky) {
  require_square(hencky.value, "vol_iso_split");
  if (!is_symmetric(hencky.value)) {
    throw Error(ErrorCode::parameter_out_of_range, "vol_iso_split: Hencky tensor must be symmetric");
  }
  const auto n = hencky.value.rows();
  VolIsoSplit out;
  out.vol = (hencky.value.trace() / static_cast<double>(n)) * Mat::Identity(n, n);
  out.iso = hencky.value - out.vol;
  return out;
}

ScaleFunctionReport scale_function_check(SethHillOrder r, std::size_t grid_points) {
  ScaleFunctionReport rep;
  rep.grid_points = grid_points;
  const double h = 1e-5;
  rep.value_at_one = scale_function(r, 1.0);
  rep.derivative_at_one = (scale_function(r, 1.0 + h) - scale_function(r, 1.0 - h)) / (2.0 * h);
  rep.strictly_monotone = true;
  double prev = scale_function(r, 0.2);
  for (std::size_t i = 1; i < grid_points; ++i) {
    const double lambda = 0.2 + (5.0 - 0.2) * static_cast<double>(i) / static_cast<double>(grid_points - 1);
    const double v = scale_function(r, lambda);
    if (!(v > prev)) rep.strictly_monotone = false;
    prev = v;
  }
  rep.passed = std::abs(rep.value_at_one) < 1e-6 && std::abs(rep.derivative_at_one - 1.0) < 1e-6 &&
               rep.strictly_monotone;
  return rep;
}

}  // namespace geolog
