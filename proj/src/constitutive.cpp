#include "geolog/constitutive.hpp"

#include <cmath>
#include <string>

#include "geolog/random.hpp"

namespace geolog {

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::hencky: return "hencky";
    case ModelKind::exp_hencky: return "exp_hencky";
    case ModelKind::svk: return "svk";
    case ModelKind::biot_linear: return "biot_linear";
    case ModelKind::hill_family: return "hill_family";
    case ModelKind::neo_hooke_linear: return "neo_hooke_linear";
    case ModelKind::almansi_signorini: return "almansi_signorini";
    case ModelKind::becker_biot: return "becker_biot";
  }
  return "unknown";
}

std::optional<ModelKind> model_kind_from_string(std::string_view name) {
  for (ModelKind k : {ModelKind::hencky, ModelKind::exp_hencky, ModelKind::svk,
                      ModelKind::biot_linear, ModelKind::hill_family, ModelKind::neo_hooke_linear,
                      ModelKind::almansi_signorini, ModelKind::becker_biot}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

MaterialModel MaterialModel::hencky(double mu, double kappa) {
  MaterialModel m;
  m.kind = ModelKind::hencky;
  m.mu = mu;
  m.kappa = kappa;
  m.validate();
  return m;
}

MaterialModel MaterialModel::exp_hencky(double mu, double kappa, double k, double khat,
                                        bool normalized) {
  MaterialModel m;
  m.kind = ModelKind::exp_hencky;
  m.mu = mu;
  m.kappa = kappa;
  m.k = k;
  m.khat = khat;
  m.normalized = normalized;
  m.validate();
  return m;
}

MaterialModel MaterialModel::svk(double mu, double kappa) {
  MaterialModel m = hencky(mu, kappa);
  m.kind = ModelKind::svk;
  return m;
}

MaterialModel MaterialModel::biot_linear(double mu, double kappa) {
  MaterialModel m = hencky(mu, kappa);
  m.kind = ModelKind::biot_linear;
  return m;
}

MaterialModel MaterialModel::hill(ModelKind kind, double mu, double kappa, double r) {
  MaterialModel m = hencky(mu, kappa);
  m.kind = kind;
  m.r = r;
  return m;
}

double MaterialModel::lame_lambda(int n) const {
  return lambda ? *lambda : kappa - 2.0 * mu / static_cast<double>(n);
}

bool MaterialModel::is_hyperelastic() const {
  return kind == ModelKind::hencky || kind == ModelKind::exp_hencky || kind == ModelKind::svk ||
         kind == ModelKind::biot_linear;
}

void MaterialModel::validate() const {
  if (!(mu > 0.0) || !(kappa > 0.0) || !std::isfinite(mu) || !std::isfinite(kappa)) {
    throw Error(ErrorCode::parameter_out_of_range, "material moduli mu, kappa must be positive");
  }
  if (kind == ModelKind::exp_hencky && (!(k >= 0.25) || !(khat >= 0.125) || !std::isfinite(k) ||
                                        !std::isfinite(khat))) {
    throw Error(ErrorCode::parameter_out_of_range,
                "exp_hencky requires k >= 1/4 and khat >= 1/8");
  }
  if (lambda && !std::isfinite(*lambda)) {
    throw Error(ErrorCode::parameter_out_of_range, "lambda must be finite");
  }
}

namespace {

constexpr double kMaxExponent = 709.0;

double checked_exp(double x) {
  if (x > kMaxExponent) throw Error(ErrorCode::overflow, "exp_hencky: exponent out of range");
  return std::exp(x);
}

struct LogMeasures {
  double iso_sq;
  double trace;
};

LogMeasures log_measures(const Mat& log_stretch) {
  return {dev(log_stretch).squaredNorm(), log_stretch.trace()};
}


// log U (left = false) or log V. Diagonal F skips the polar decomposition;
// U = V = |F| there, the signs going into R.
Mat log_stretch(const Mat& f, bool left) {
  const Mat off = f - Mat(f.diagonal().asDiagonal());
  if (off.cwiseAbs().maxCoeff() == 0.0) {
    return Mat(f.diagonal().cwiseAbs().array().log().matrix().asDiagonal());
  }
  const PolarDecomposition pd = polar_decompose(f);
  return principal_log_spd(left ? pd.left_stretch : pd.right_stretch);
}

}  // namespace

double energy(const MaterialModel& model, const Mat& f) {
  model.validate();
  require_positive_det(f, "energy");
  const int n = static_cast<int>(f.rows());
  const Mat id = Mat::Identity(n, n);
  switch (model.kind) {
    case ModelKind::hencky: {
      const auto m = log_measures(log_stretch(f, false));
      return model.mu * m.iso_sq + 0.5 * model.kappa * m.trace * m.trace;
    }
    case ModelKind::exp_hencky: {
      const auto m = log_measures(log_stretch(f, false));
      double w = model.mu / model.k * checked_exp(model.k * m.iso_sq) +
                 model.kappa / (2.0 * model.khat) * checked_exp(model.khat * m.trace * m.trace);
      if (model.normalized) w -= model.mu / model.k + model.kappa / (2.0 * model.khat);
      return w;
    }
    case ModelKind::svk: {
      const Mat e1 = 0.5 * (f.transpose() * f - id);
      const double tr = e1.trace();
      return model.mu * e1.squaredNorm() + 0.5 * model.lame_lambda(n) * tr * tr;
    }
    case ModelKind::biot_linear: {
      const Mat e = polar_decompose(f).right_stretch - id;
      const double tr = e.trace();
      return model.mu * e.squaredNorm() + 0.5 * model.lame_lambda(n) * tr * tr;
    }
    default:
      throw Error(ErrorCode::unsupported_model,
                  std::string(to_string(model.kind)) + " is a stress law without an energy");
  }
}

Mat kirchhoff_stress(const MaterialModel& model, const Mat& f) {
  model.validate();
  require_positive_det(f, "kirchhoff_stress");
  const auto n = f.rows();
  const Mat id = Mat::Identity(n, n);
  const Mat log_v = log_stretch(f, true);
  const Mat dev_log = dev(log_v);
  const double tr = log_v.trace();
  switch (model.kind) {
    case ModelKind::hencky:
      return 2.0 * model.mu * dev_log + model.kappa * tr * id;
    case ModelKind::exp_hencky:
      return 2.0 * model.mu * checked_exp(model.k * dev_log.squaredNorm()) * dev_log +
             model.kappa * checked_exp(model.khat * tr * tr) * tr * id;
    default:
      throw Error(ErrorCode::unsupported_model,
                  "kirchhoff_stress is defined for hencky and exp_hencky only");
  }
}

Mat cauchy_stress(const Mat& tau, const Mat& f) {
  require_same_dim(tau, f, "cauchy_stress");
  require_positive_det(f, "cauchy_stress");
  return tau / f.determinant();
}

Mat first_piola_fd(const MaterialModel& model, const Mat& f, double h) {
  require_positive_det(f, "first_piola_fd");
  if (h <= 0.0) h = 1e-5 * (1.0 + f.norm());
  const auto n = f.rows();
  Mat grad(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      Mat fp = f;
      Mat fm = f;
      fp(i, j) += h;
      fm(i, j) -= h;
      grad(i, j) = (energy(model, fp) - energy(model, fm)) / (2.0 * h);
    }
  }
  return grad;
}

Mat svk_first_piola(const MaterialModel& model, const Mat& f) {
  require_positive_det(f, "svk_first_piola");
  const int n = static_cast<int>(f.rows());
  const Mat id = Mat::Identity(n, n);
  const Mat e1 = 0.5 * (f.transpose() * f - id);
  return f * (2.0 * model.mu * e1 + model.lame_lambda(n) * e1.trace() * id);
}

Mat hill_law(SethHillOrder /*r*/, const StrainTensor& e, double mu, double lambda) {
  require_square(e.value, "hill_law");
  const auto n = e.value.rows();
  return 2.0 * mu * e.value + lambda * e.value.trace() * Mat::Identity(n, n);
}

Mat linear_law_stress(const MaterialModel& model, const Mat& f) {
  model.validate();
  const PolarDecomposition pd = polar_decompose(f);
  const int n = static_cast<int>(f.rows());
  const double lambda = model.lame_lambda(n);
  auto law = [&](double r, const Mat& stretch, StrainFrame frame) {
    const SethHillOrder order{r};
    return hill_law(order, seth_hill(stretch, order, frame), model.mu, lambda);
  };
  switch (model.kind) {
    case ModelKind::svk: return law(1.0, pd.right_stretch, StrainFrame::material);
    case ModelKind::hill_family: return law(model.r, pd.right_stretch, StrainFrame::material);
    case ModelKind::neo_hooke_linear: return law(1.0, pd.left_stretch, StrainFrame::spatial);
    case ModelKind::almansi_signorini: return law(-1.0, pd.left_stretch, StrainFrame::spatial);
    case ModelKind::becker_biot: return law(0.0, pd.right_stretch, StrainFrame::material);
    case ModelKind::hencky: return law(0.0, pd.left_stretch, StrainFrame::spatial);
    default:
      throw Error(ErrorCode::unsupported_model,
                  std::string(to_string(model.kind)) + " is not a linear stress-strain law");
  }
}

VelocitySplit velocity_split(const MotionSample& s) {
  require_same_dim(s.f, s.f_dot, "velocity_split");
  require_positive_det(s.f, "velocity_split");
  VelocitySplit out;
  // L = F' F^{-1}  <=>  F^T L^T = F'^T
  out.l = s.f.transpose().partialPivLu().solve(s.f_dot.transpose()).transpose();
  out.d = sym(out.l);
  out.spin = skew(out.l);
  return out;
}

Mat zaremba_jaumann_rate(const Mat& x_dot, const Mat& x, const Mat& spin) {
  require_same_dim(x_dot, x, "zaremba_jaumann_rate");
  require_same_dim(x, spin, "zaremba_jaumann_rate");
  return x_dot - spin * x + x * spin;
}

OldroydRates oldroyd_rates(const Mat& x_dot, const Mat& x, const Mat& l) {
  require_same_dim(x_dot, x, "oldroyd_rates");
  require_same_dim(x, l, "oldroyd_rates");
  return {x_dot + l.transpose() * x + x * l, x_dot - l * x - x * l.transpose()};
}

namespace {

void require_path(const MotionPath& path, const char* what) {
  if (path.times.size() != path.samples.size() || path.samples.size() < 3) {
    throw Error(ErrorCode::insufficient_data,
                std::string(what) + ": need at least three timestamped samples");
  }
}

}  // namespace

double almansi_rate_check(const MotionPath& path) {
  require_path(path, "almansi_rate_check");
  const std::size_t count = path.samples.size();
  std::vector<Mat> almansi(count);
  for (std::size_t i = 0; i < count; ++i) {
    const Mat& f = path.samples[i].f;
    require_positive_det(f, "almansi_rate_check");
    const auto n = f.rows();
    const Mat b_inv = (f * f.transpose()).inverse();
    almansi[i] = 0.5 * (Mat::Identity(n, n) - b_inv);
  }
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < count; ++i) {
    const Mat a_dot = (almansi[i + 1] - almansi[i - 1]) / (path.times[i + 1] - path.times[i - 1]);
    const VelocitySplit v = velocity_split(path.samples[i]);
    const Mat lower = oldroyd_rates(a_dot, almansi[i], v.l).lower;
    worst = std::max(worst, (lower - v.d).norm());
  }
  return worst;
}

double coaxial_lograte_check(const MotionPath& path) {
  require_path(path, "coaxial_lograte_check");
  const std::size_t count = path.samples.size();
  std::vector<Mat> log_v(count);
  for (std::size_t i = 0; i < count; ++i) {
    const Mat& f = path.samples[i].f;
    const Mat off = f - Mat(f.diagonal().asDiagonal());
    if (max_abs(off) > scaled_tol(f, kPredicateTol)) {
      throw Error(ErrorCode::parameter_out_of_range,
                  "coaxial_lograte_check: motion must be diagonal at every sample");
    }
    log_v[i] = principal_log_spd(polar_decompose(f).left_stretch);
  }
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < count; ++i) {
    const Mat rate = (log_v[i + 1] - log_v[i - 1]) / (path.times[i + 1] - path.times[i - 1]);
    worst = std::max(worst, (rate - velocity_split(path.samples[i]).d).norm());
  }
  return worst;
}

double shield_transform(const MaterialModel& model, const Mat& f) {
  require_positive_det(f, "shield_transform");
  return f.determinant() * energy(model, f.inverse());
}

double CriscioneInvariants::k3_value() const {
  if (!k3) throw Error(ErrorCode::zero_distortion, "K3 is undefined for K2 = 0");
  return *k3;
}

CriscioneInvariants criscione_invariants(const Mat& u) {
  require_spd(u, "criscione_invariants");
  if (u.rows() != 3) {
    throw Error(ErrorCode::dimension_mismatch, "criscione_invariants: requires n = 3");
  }
  const Mat log_u = principal_log_spd(u);
  const Mat d = dev(log_u);
  CriscioneInvariants out;
  out.k1 = log_u.trace();
  out.k2 = d.norm();
  if (out.k2 >= 1e-12) out.k3 = (d / out.k2).determinant();
  return out;
}

TensionCompressionReport tension_compression_check(const MaterialModel& model, std::size_t samples,
                                                   std::uint64_t seed, int dim) {
  TensionCompressionReport rep;
  rep.samples = samples;
  for (std::size_t i = 0; i < samples; ++i) {
    SampleStream rng(seed, i);
    const Mat f = random_gl_plus(rng, dim);
    const double w = energy(model, f);
    const double w_inv = energy(model, f.inverse());
    const double gap = std::abs(w - w_inv);
    const double rel = gap / std::max(1.0, std::abs(w));
    if (rel > 1e-10) rep.symmetric = false;
    if (gap > rep.max_gap) {
      rep.max_gap = gap;
      rep.witness = f;
    }
  }
  return rep;
}

}  // namespace geolog
