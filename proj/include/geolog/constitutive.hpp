#pragma once

// Hyperelastic energies and stresses on top of the logarithmic strain
// measures, Hill's linear stress-strain laws, objective rates and the
// tension-compression / Shield / Criscione tools.

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "geolog/matcore.hpp"
#include "geolog/strain.hpp"

namespace geolog {

enum class ModelKind {
  hencky,
  exp_hencky,
  svk,
  biot_linear,
  hill_family,
  neo_hooke_linear,
  almansi_signorini,
  becker_biot,
};

std::string_view to_string(ModelKind kind);
std::optional<ModelKind> model_kind_from_string(std::string_view name);

struct MaterialModel {
  ModelKind kind = ModelKind::hencky;
  double mu = 1.0;
  double kappa = 1.0;
  // First Lame parameter; derived as kappa - 2 mu / n when absent.
  std::optional<double> lambda;
  double k = 1.0;
  double khat = 1.0;
  double r = 0.0;  // Seth-Hill order, hill_family only
  // exp_hencky only: subtract mu/k + kappa/(2 khat) so the energy vanishes on SO(n).
  bool normalized = false;

  static MaterialModel hencky(double mu, double kappa);
  static MaterialModel exp_hencky(double mu, double kappa, double k, double khat,
                                  bool normalized = false);
  static MaterialModel svk(double mu, double kappa);
  static MaterialModel biot_linear(double mu, double kappa);
  static MaterialModel hill(ModelKind kind, double mu, double kappa, double r = 0.0);

  double lame_lambda(int n) const;
  bool is_hyperelastic() const;
  /// Throws ParameterOutOfRange on invalid moduli or exponents.
  void validate() const;
};

double energy(const MaterialModel& model, const Mat& f);

/// tau = D_{log V} W for the logarithmic models (hencky, exp_hencky).
Mat kirchhoff_stress(const MaterialModel& model, const Mat& f);

Mat cauchy_stress(const Mat& tau, const Mat& f);

/// Central-difference gradient of the energy in every entry of F.
/// h <= 0 selects the default 1e-5 (1 + ||F||).
Mat first_piola_fd(const MaterialModel& model, const Mat& f, double h = 0.0);

/// Analytic first Piola-Kirchhoff stress for svk: F (2 mu E_1 + lambda tr(E_1) id).
Mat svk_first_piola(const MaterialModel& model, const Mat& f);

/// T_r = 2 mu E_r + lambda tr(E_r) id
Mat hill_law(SethHillOrder r, const StrainTensor& e, double mu, double lambda);

/// The named linear laws: svk (S_2), neo_hooke_linear (sigma, r = 1 spatial),
/// almansi_signorini (sigma, r = -1 spatial), becker_biot (T^Biot, r = 0
/// material), hill_family (T_r, material).
Mat linear_law_stress(const MaterialModel& model, const Mat& f);

struct MotionSample {
  Mat f;
  Mat f_dot;
};

struct VelocitySplit {
  Mat l;
  Mat d;
  Mat spin;
};

VelocitySplit velocity_split(const MotionSample& s);

Mat zaremba_jaumann_rate(const Mat& x_dot, const Mat& x, const Mat& spin);

struct OldroydRates {
  Mat lower;
  Mat upper;
};

OldroydRates oldroyd_rates(const Mat& x_dot, const Mat& x, const Mat& l);

struct MotionPath {
  std::vector<double> times;
  std::vector<MotionSample> samples;
};

/// Uniform samples of t -> (F(t), F'(t)) on [t0, t1] with `steps` intervals.
template <class FFn, class DFn>
MotionPath sample_motion(FFn&& f, DFn&& f_dot, double t0, double t1, std::size_t steps) {
  MotionPath path;
  path.times.reserve(steps + 1);
  path.samples.reserve(steps + 1);
  for (std::size_t i = 0; i <= steps; ++i) {
    const double t = t0 + (t1 - t0) * static_cast<double>(i) / static_cast<double>(steps);
    path.times.push_back(t);
    path.samples.push_back({f(t), f_dot(t)});
  }
  return path;
}

/// Max over interior samples of || A' + L^T A + A L - D || with
/// A = (id - B^{-1}) / 2 and A' by central differences in time.
double almansi_rate_check(const MotionPath& path);

/// Max over interior samples of || d/dt log V - D || for diagonal motions.
double coaxial_lograte_check(const MotionPath& path);

/// W*(F) = det F * W(F^{-1})
double shield_transform(const MaterialModel& model, const Mat& f);

struct CriscioneInvariants {
  double k1 = 0.0;
  double k2 = 0.0;
  std::optional<double> k3;  // absent when k2 < 1e-12

  /// Throws ZeroDistortion when k3 is undefined.
  double k3_value() const;
};

CriscioneInvariants criscione_invariants(const Mat& u);

struct TensionCompressionReport {
  bool symmetric = true;
  double max_gap = 0.0;
  std::optional<Mat> witness;
  std::size_t samples = 0;
};

/// Compares W(F) and W(F^{-1}) on seeded random F in GL+(dim). `symmetric`
/// holds when every gap is below 1e-10 relative to max(1, |W|).
TensionCompressionReport tension_compression_check(const MaterialModel& model, std::size_t samples,
                                                   std::uint64_t seed, int dim = 3);

}  // namespace geolog
