#include "geolog/fit.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <string>

#include "geolog/optimize.hpp"
#include "geolog/random.hpp"

namespace geolog {

// Offsets keep k > 1/4 and khat > 1/8, the ranges where the exponentiated
// energy stays well behaved.
namespace {
constexpr double kOffsetK = 0.25;
constexpr double kOffsetKhat = 0.125;

struct Packing {
  const FitProblem& problem;

  Eigen::VectorXd pack(const MaterialModel& m) const {
    std::vector<double> v;
    if (problem.free.mu) v.push_back(std::log(m.mu));
    if (problem.free.kappa) v.push_back(std::log(m.kappa));
    if (problem.free.k) v.push_back(std::log(std::max(m.k - kOffsetK, 1e-12)));
    if (problem.free.khat) v.push_back(std::log(std::max(m.khat - kOffsetKhat, 1e-12)));
    return Eigen::Map<Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
  }

  MaterialModel unpack(const Eigen::VectorXd& x) const {
    MaterialModel m = problem.model;
    Eigen::Index i = 0;
    if (problem.free.mu) m.mu = std::exp(x(i++));
    if (problem.free.kappa) m.kappa = std::exp(x(i++));
    if (problem.free.k) m.k = kOffsetK + std::exp(x(i++));
    if (problem.free.khat) m.khat = kOffsetKhat + std::exp(x(i++));
    return m;
  }
};

std::vector<double> residuals_for(const FitProblem& problem, const MaterialModel& m) {
  std::vector<double> r;
  r.reserve(problem.data.size());
  for (const auto& pt : problem.data) {
    r.push_back(mode_stress(m, problem.mode, pt.control, problem.stress_kind) - pt.stress);
  }
  return r;
}

}  // namespace

void FitProblem::validate() const {
  if (data.size() < 4) {
    throw Error(ErrorCode::insufficient_data,
                "fit needs at least 4 data points, got " + std::to_string(data.size()));
  }
  for (std::size_t i = 1; i < data.size(); ++i) {
    if (!(data[i].control > data[i - 1].control)) {
      throw Error(ErrorCode::insufficient_data, "fit controls must be strictly increasing");
    }
  }
  for (const auto& pt : data) {
    if (!std::isfinite(pt.control) || !std::isfinite(pt.stress)) {
      throw Error(ErrorCode::insufficient_data, "fit data must be finite");
    }
  }
  model.validate();
  if (!model.is_hyperelastic()) {
    throw Error(ErrorCode::unsupported_model,
                std::string(to_string(model.kind)) + " cannot be fitted");
  }
  if (model.kind != ModelKind::exp_hencky && (free.k || free.khat)) {
    throw Error(ErrorCode::unsupported_model, "k and khat are exp_hencky parameters");
  }
  if (!(free.mu || free.kappa || free.k || free.khat)) {
    throw Error(ErrorCode::parameter_out_of_range, "fit has no free parameters");
  }
}

FitResult fit_model(const FitProblem& problem, const FitOptions& opts) {
  problem.validate();
  const Packing packing{problem};

  double scale = 0.0;
  for (const auto& pt : problem.data) scale += pt.stress * pt.stress;
  scale = std::max(scale / static_cast<double>(problem.data.size()), 1e-300);

  std::size_t evals = 0;
  const Objective objective = [&](const Eigen::VectorXd& x) {
    ++evals;
    if (x.cwiseAbs().maxCoeff() > 30.0) return std::numeric_limits<double>::infinity();
    try {
      double s = 0.0;
      for (double r : residuals_for(problem, packing.unpack(x))) s += r * r;
      return s / scale;
    } catch (const Error&) {
      return std::numeric_limits<double>::infinity();
    }
  };

  NelderMeadOptions nm;
  nm.initial_step = 0.5;
  nm.max_evals = opts.max_iters;
  // The objective is a relative squared residual, so 1e-26 means the fit
  // reproduces the data to about 1e-13.
  nm.ftol_rel = 1e-12;
  nm.ftol_abs = 1e-26;
  nm.xtol = 1e-9;

  const Eigen::VectorXd x_template = packing.pack(problem.model);
  NelderMeadResult best;
  best.value = std::numeric_limits<double>::infinity();
  best.x = x_template;
  const std::size_t starts = std::max<std::size_t>(opts.starts, 1);
  for (std::size_t s = 0; s < starts; ++s) {
    Eigen::VectorXd x0 = x_template;
    if (s > 0) {
      SampleStream rng(opts.seed, s);
      for (Eigen::Index i = 0; i < x0.size(); ++i) x0(i) += rng.uniform(-2.0, 2.0);
    }
    NelderMeadResult r = nelder_mead(objective, x0, nm);
    // A restart from the end point removes most simplex stagnation.
    NelderMeadOptions polish = nm;
    polish.initial_step = 0.05;
    NelderMeadResult p = nelder_mead(objective, r.x, polish);
    if (p.value <= r.value) r = p;
    if (r.value < best.value) best = r;
  }

  FitResult out;
  out.evaluations = evals;
  out.converged = best.converged && std::isfinite(best.value);
  out.model = packing.unpack(best.x);
  if (std::isfinite(best.value)) {
    out.residuals = residuals_for(problem, out.model);
    double ss = 0.0;
    for (double r : out.residuals) ss += r * r;
    out.rms = std::sqrt(ss / static_cast<double>(out.residuals.size()));
  } else {
    out.rms = std::numeric_limits<double>::infinity();
  }
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

double parse_field(std::string_view s, std::size_t line) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw Error(ErrorCode::parse_error,
                "line " + std::to_string(line) + ": not a number: '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

std::vector<FitPoint> parse_fit_csv(std::string_view text) {
  std::vector<FitPoint> pts;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != "control,stress") {
        throw Error(ErrorCode::parse_error,
                    "line " + std::to_string(line_no) + ": expected header 'control,stress'");
      }
      header_seen = true;
      continue;
    }
    const std::size_t comma = line.find(',');
    if (comma == std::string_view::npos || line.find(',', comma + 1) != std::string_view::npos) {
      throw Error(ErrorCode::parse_error,
                  "line " + std::to_string(line_no) + ": expected two comma-separated values");
    }
    pts.push_back({parse_field(line.substr(0, comma), line_no),
                   parse_field(line.substr(comma + 1), line_no)});
  }
  if (!header_seen) throw Error(ErrorCode::parse_error, "empty data file");
  return pts;
}

}  // namespace geolog
