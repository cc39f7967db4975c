#include "geolog/deformation.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "geolog/geodesy.hpp"

namespace geolog {

std::string_view to_string(DeformationKind kind) {
  switch (kind) {
    case DeformationKind::uniaxial_incompressible: return "uniaxial_incompressible";
    case DeformationKind::uniaxial_free: return "uniaxial_free";
    case DeformationKind::simple_shear: return "simple_shear";
    case DeformationKind::equibiaxial_incompressible: return "equibiaxial_incompressible";
    case DeformationKind::volumetric: return "volumetric";
  }
  return "unknown";
}

std::string_view to_string(StressKind kind) {
  switch (kind) {
    case StressKind::biot: return "biot";
    case StressKind::cauchy: return "cauchy";
    case StressKind::kirchhoff: return "kirchhoff";
  }
  return "unknown";
}

std::optional<DeformationKind> deformation_kind_from_string(std::string_view name) {
  for (auto k : {DeformationKind::uniaxial_incompressible, DeformationKind::uniaxial_free,
                 DeformationKind::simple_shear, DeformationKind::equibiaxial_incompressible,
                 DeformationKind::volumetric}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

std::optional<StressKind> stress_kind_from_string(std::string_view name) {
  for (auto k : {StressKind::biot, StressKind::cauchy, StressKind::kirchhoff}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

StressKind default_stress(DeformationKind kind) {
  switch (kind) {
    case DeformationKind::volumetric:
    case DeformationKind::simple_shear: return StressKind::cauchy;
    default: return StressKind::biot;
  }
}

void DeformationMode::validate() const {
  if (!(from < to) || !std::isfinite(from) || !std::isfinite(to)) {
    throw Error(ErrorCode::parameter_out_of_range, "deformation range requires from < to");
  }
  if (steps < 2) throw Error(ErrorCode::parameter_out_of_range, "deformation path needs steps >= 2");
  if (kind != DeformationKind::simple_shear && !(from > 0.0)) {
    throw Error(ErrorCode::parameter_out_of_range,
                std::string(to_string(kind)) + " requires a positive control parameter");
  }
}

double DeformationMode::control(std::size_t i) const {
  if (i + 1 == steps) return to;
  return from + (to - from) * static_cast<double>(i) / static_cast<double>(steps - 1);
}

Mat model_kirchhoff(const MaterialModel& model, const Mat& f) {
  switch (model.kind) {
    case ModelKind::hencky:
    case ModelKind::exp_hencky: return kirchhoff_stress(model, f);
    case ModelKind::svk: return svk_first_piola(model, f) * f.transpose();
    case ModelKind::biot_linear: {
      model.validate();
      const int n = static_cast<int>(f.rows());
      const PolarDecomposition pd = polar_decompose(f);
      const Mat id = Mat::Identity(n, n);
      const Mat e = pd.right_stretch - id;
      const Mat biot = 2.0 * model.mu * e + model.lame_lambda(n) * e.trace() * id;
      return pd.rotation * biot * f.transpose();
    }
    default:
      throw Error(ErrorCode::unsupported_model,
                  std::string(to_string(model.kind)) + " has no hyperelastic stress");
  }
}

namespace {

Mat diag3(double a, double b, double c) {
  Mat f = Mat::Zero(3, 3);
  f(0, 0) = a;
  f(1, 1) = b;
  f(2, 2) = c;
  return f;
}

double lateral_stress(const MaterialModel& model, double stretch, double log_lateral) {
  const double s = std::exp(log_lateral);
  return model_kirchhoff(model, diag3(stretch, s, s))(1, 1);
}

// Lateral stretch with zero lateral Kirchhoff (hence Cauchy) stress.
double solve_lateral_stretch(const MaterialModel& model, double stretch) {
  const double a = std::abs(std::log(stretch));
  double lo = -a - 0.5;
  double hi = a + 0.5;
  double flo = lateral_stress(model, stretch, lo);
  double fhi = lateral_stress(model, stretch, hi);
  for (int expand = 0; expand < 40 && flo * fhi > 0.0; ++expand) {
    lo -= 1.0;
    hi += 1.0;
    flo = lateral_stress(model, stretch, lo);
    fhi = lateral_stress(model, stretch, hi);
  }
  if (flo * fhi > 0.0) {
    throw Error(ErrorCode::non_convergence, "uniaxial_free: lateral stress does not change sign");
  }
  // Run to full precision so the solution is a smooth function of the
  // material parameters; the fit differentiates through it numerically.
  for (int it = 0; it < 200 && hi - lo > 1e-15 * (1.0 + std::abs(lo)); ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = lateral_stress(model, stretch, mid);
    if (fm == 0.0) return std::exp(mid);
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  const double mid = 0.5 * (lo + hi);
  const double s = std::exp(mid);
  const Mat tau = model_kirchhoff(model, diag3(stretch, s, s));
  if (std::abs(tau(1, 1)) > 1e-10 * std::max(1.0, max_abs(tau))) {
    throw Error(ErrorCode::non_convergence, "uniaxial_free: lateral stress above 1e-10");
  }
  return s;
}

}  // namespace

Mat mode_deformation(const MaterialModel& model, DeformationKind kind, double control) {
  switch (kind) {
    case DeformationKind::uniaxial_incompressible:
      return diag3(control, 1.0 / std::sqrt(control), 1.0 / std::sqrt(control));
    case DeformationKind::uniaxial_free: {
      const double s = solve_lateral_stretch(model, control);
      return diag3(control, s, s);
    }
    case DeformationKind::simple_shear: {
      Mat f = Mat::Identity(3, 3);
      f(0, 1) = control;
      return f;
    }
    case DeformationKind::equibiaxial_incompressible:
      return diag3(control, control, 1.0 / (control * control));
    case DeformationKind::volumetric: {
      const double a = std::cbrt(control);
      return diag3(a, a, a);
    }
  }
  throw Error(ErrorCode::parameter_out_of_range, "unknown deformation mode");
}

double mode_stress(const MaterialModel& model, DeformationKind kind, double control,
                   StressKind stress) {
  const Mat f = mode_deformation(model, kind, control);
  const Mat tau = model_kirchhoff(model, f);
  const double det = f.determinant();
  switch (kind) {
    case DeformationKind::volumetric: {
      const double mean_tau = tau.trace() / 3.0;
      switch (stress) {
        case StressKind::kirchhoff: return mean_tau;
        case StressKind::cauchy: return mean_tau / det;
        case StressKind::biot: return mean_tau / f(0, 0);
      }
      break;
    }
    case DeformationKind::uniaxial_incompressible: {
      const double axial = tau(0, 0) - tau(1, 1);
      return stress == StressKind::biot ? axial / control : axial;
    }
    case DeformationKind::equibiaxial_incompressible: {
      const double axial = tau(0, 0) - tau(2, 2);
      return stress == StressKind::biot ? axial / control : axial;
    }
    case DeformationKind::uniaxial_free: {
      switch (stress) {
        case StressKind::kirchhoff: return tau(0, 0);
        case StressKind::cauchy: return tau(0, 0) / det;
        case StressKind::biot: return tau(0, 0) / control;
      }
      break;
    }
    case DeformationKind::simple_shear: {
      if (stress != StressKind::biot) return tau(0, 1);  // det F = 1
      const PolarDecomposition pd = polar_decompose(f);
      const Mat first_piola = tau * f.inverse().transpose();
      return sym(pd.rotation.transpose() * first_piola)(0, 1);
    }
  }
  throw Error(ErrorCode::parameter_out_of_range, "unknown stress selection");
}

std::vector<PathRow> deformation_path(const DeformationMode& mode, const MaterialModel& model,
                                      StressKind stress) {
  mode.validate();
  model.validate();
  if (!model.is_hyperelastic()) {
    throw Error(ErrorCode::unsupported_model,
                std::string(to_string(model.kind)) + " cannot generate a deformation path");
  }
  std::vector<PathRow> rows;
  rows.reserve(mode.steps);
  for (std::size_t i = 0; i < mode.steps; ++i) {
    PathRow row;
    row.control = mode.control(i);
    const Mat f = mode_deformation(model, mode.kind, row.control);
    row.det_f = f.determinant();
    row.omega_iso = omega_iso(f);
    row.omega_vol = omega_vol(f);
    row.energy = energy(model, f);
    row.stress = mode_stress(model, mode.kind, row.control, stress);
    rows.push_back(row);
  }
  return rows;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string path_csv(const std::vector<PathRow>& rows) {
  std::string out(kPathCsvHeader);
  out += '\n';
  for (const auto& r : rows) {
    for (double v : {r.control, r.det_f, r.omega_iso, r.omega_vol, r.energy}) {
      out += format_double(v);
      out += ',';
    }
    out += format_double(r.stress);
    out += '\n';
  }
  return out;
}

}  // namespace geolog
