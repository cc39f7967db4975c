#pragma once

// Strain tensors built from stretch tensors: the Seth-Hill family and its
// logarithmic member, the Bazant approximation, linear strain and the
// volumetric-isochoric split of the logarithmic strain.

#include <vector>

#include "geolog/matcore.hpp"

namespace geolog {

/// Seth-Hill family parameter; r == 0 selects the logarithm.
struct SethHillOrder {
  double r = 0.0;
};

enum class StrainFrame { material, spatial };
enum class StrainFamily { seth_hill, hencky, bazant, linear };

struct StrainTensor {
  Mat value;
  StrainFrame frame = StrainFrame::material;
  StrainFamily family = StrainFamily::seth_hill;
  double order = 0.0;  // Seth-Hill r; 0 for hencky, 1/2 for bazant, 1 for linear
};

/// (U^{2r} - id) / (2r), or log U for r == 0. Pass the left stretch V with
/// StrainFrame::spatial for the spatial family.
StrainTensor seth_hill(const Mat& u, SethHillOrder r, StrainFrame frame = StrainFrame::material);

/// (U - U^{-1}) / 2
StrainTensor bazant_approx(const Mat& u, StrainFrame frame = StrainFrame::material);

StrainTensor hencky_tensor(const Mat& u, StrainFrame frame = StrainFrame::material);

StrainTensor linear_strain(const Mat& grad_u);

struct VolIsoSplit {
  Mat iso;
  Mat vol;
};

VolIsoSplit vol_iso_split(const StrainTensor& hencky);

/// Scalar Seth-Hill scale function e_r(lambda).
double scale_function(SethHillOrder r, double lambda);

struct ScaleFunctionReport {
  bool passed = false;
  double value_at_one = 0.0;
  double derivative_at_one = 0.0;
  bool strictly_monotone = false;
  std::size_t grid_points = 0;
};

/// Checks e_r(1) = 0, e_r'(1) = 1 (central difference) and strict monotonicity
/// on a grid over [0.2, 5].
ScaleFunctionReport scale_function_check(SethHillOrder r, std::size_t grid_points = 481);

}  // namespace geolog
