#pragma once

// One-parameter deformation families and the scalar stress each one reports,
// shared by the `path` table generator and the parameter fit.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "geolog/constitutive.hpp"

namespace geolog {

enum class DeformationKind {
  uniaxial_incompressible,
  uniaxial_free,
  simple_shear,
  equibiaxial_incompressible,
  volumetric,
};

enum class StressKind { biot, cauchy, kirchhoff };

std::string_view to_string(DeformationKind kind);
std::string_view to_string(StressKind kind);
std::optional<DeformationKind> deformation_kind_from_string(std::string_view name);
std::optional<StressKind> stress_kind_from_string(std::string_view name);

/// Stress reported when none is requested: mean Cauchy stress for
/// volumetric, Cauchy shear stress for simple shear, axial Biot stress
/// otherwise.
StressKind default_stress(DeformationKind kind);

struct DeformationMode {
  DeformationKind kind = DeformationKind::uniaxial_incompressible;
  double from = 1.0;
  double to = 2.0;
  std::size_t steps = 11;

  void validate() const;
  double control(std::size_t i) const;
};

/// Deformation gradient (n = 3) at a control value: stretch for the uniaxial
/// and biaxial modes, shear amount for simple shear, det F for volumetric.
/// uniaxial_free solves the lateral traction-free condition by bisection.
Mat mode_deformation(const MaterialModel& model, DeformationKind kind, double control);

/// Kirchhoff stress for every hyperelastic kind (analytic).
Mat model_kirchhoff(const MaterialModel& model, const Mat& f);

double mode_stress(const MaterialModel& model, DeformationKind kind, double control,
                   StressKind stress);

struct PathRow {
  double control = 0.0;
  double det_f = 0.0;
  double omega_iso = 0.0;
  double omega_vol = 0.0;
  double energy = 0.0;
  double stress = 0.0;
};

std::vector<PathRow> deformation_path(const DeformationMode& mode, const MaterialModel& model,
                                      StressKind stress);

/// Locale-independent shortest round-trip decimal.
std::string format_double(double v);

inline constexpr std::string_view kPathCsvHeader = "control,detF,omega_iso,omega_vol,energy,stress";

std::string path_csv(const std::vector<PathRow>& rows);

}  // namespace geolog
