#include "geolog/cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "geolog/geodesy.hpp"
#include "geolog/matrix_io.hpp"

namespace geolog {

int exit_status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::parse_error:
    case ErrorCode::dimension_mismatch:
    case ErrorCode::non_positive_determinant:
    case ErrorCode::singular_matrix:
    case ErrorCode::not_spd:
      return kExitInvalidMatrix;
    case ErrorCode::unsupported_model: return kExitUnsupported;
    case ErrorCode::non_convergence: return kExitNonConvergence;
    default: return kExitUsage;
  }
}

namespace {

nlohmann::json matrix_json(const Mat& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

std::string matrix_inline(const Mat& m) { return matrix_json(m).dump(); }

int report(const Error& e, std::ostream& err) {
  err << "geolog: " << e.what() << '\n';
  return exit_status_for(e.code());
}

}  // namespace

int cmd_measure(const MeasureCommand& cmd, std::ostream& out, std::ostream& err) {
  try {
    const MetricParams p(cmd.mu, cmd.mu_c, cmd.kappa);
    const Mat f = load_matrix_arg(cmd.matrix);
    require_positive_det(f, "measure");
    const PolarDecomposition pd = polar_decompose(f);
    const Mat log_u = principal_log_spd(pd.right_stretch);
    const DistanceReport geod = dist_squared_to_so(f, p);
    const double euclid = euclid_dist_to_so(f).distance();

    nlohmann::json j;
    j["n"] = f.rows();
    j["omega_iso"] = omega_iso(f);
    j["omega_vol"] = omega_vol(f);
    j["dist2_geod"] = geod.squared_distance;
    j["dist_geod"] = geod.distance();
    j["euclid_dist"] = euclid;
    j["R"] = matrix_json(pd.rotation);
    j["U"] = matrix_json(pd.right_stretch);
    j["V"] = matrix_json(pd.left_stretch);
    j["log_U"] = matrix_json(log_u);
    j["params"] = {{"mu", p.mu}, {"mu_c", p.mu_c}, {"kappa", p.kappa}};

    if (cmd.format == OutputFormat::json) {
      out << j.dump(2) << '\n';
      return kExitOk;
    }
    const auto scalar = [&](const char* key, double v) {
      out << std::left << std::setw(12) << key << format_double(v) << '\n';
    };
    const auto matrix = [&](const char* key, const Mat& m) {
      for (Eigen::Index i = 0; i < m.rows(); ++i) {
        out << std::left << std::setw(12) << (i == 0 ? key : "");
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
          out << std::right << std::setw(26) << format_double(m(i, c));
        }
        out << '\n';
      }
    };
    scalar("omega_iso", omega_iso(f));
    scalar("omega_vol", omega_vol(f));
    scalar("dist2_geod", geod.squared_distance);
    scalar("dist_geod", geod.distance());
    scalar("euclid_dist", euclid);
    matrix("R", pd.rotation);
    matrix("U", pd.right_stretch);
    matrix("V", pd.left_stretch);
    matrix("log_U", log_u);
    return kExitOk;
  } catch (const Error& e) {
    return report(e, err);
  }
}

int cmd_verify(const VerifyCommand& cmd, std::ostream& out, std::ostream& err) {
  try {
    const std::vector<OracleVerdict> verdicts = run_suite(cmd.suite, cmd.options);
    std::size_t passed = 0;
    for (const auto& v : verdicts) {
      if (v.passed) ++passed;
      out << (v.passed ? "PASS  " : "FAIL  ") << v.claim << "\n      closed=" << format_double(v.closed_form_value)
          << " oracle=" << format_double(v.oracle_value) << " gap=" << format_double(v.relative_gap)
          << " evals=" << v.evaluations << '\n';
      if (v.witness) out << "      witness=" << matrix_inline(*v.witness) << '\n';
    }
    out << "suite " << cmd.suite << " (dim " << cmd.options.dim << "): " << passed << "/" << verdicts.size()
        << " claims passed\n";
    return passed == verdicts.size() ? kExitOk : kExitUsage;
  } catch (const Error& e) {
    return report(e, err);
  }
}

int cmd_path(const PathCommand& cmd, std::ostream& out, std::ostream& err) {
  try {
    const StressKind stress = cmd.stress.value_or(default_stress(cmd.mode.kind));
    const std::string csv = path_csv(deformation_path(cmd.mode, cmd.model, stress));
    if (!cmd.out) {
      out << csv;
      return kExitOk;
    }
    std::ofstream file(*cmd.out, std::ios::binary);
    if (!file) {
      err << "geolog: cannot write '" << *cmd.out << "'\n";
      return kExitUsage;
    }
    file << csv;
    return kExitOk;
  } catch (const Error& e) {
    return report(e, err);
  }
}

int cmd_fit(const FitCommand& cmd, std::ostream& out, std::ostream& err) {
  try {
    FitProblem problem = cmd.problem;
    problem.data = parse_fit_csv(read_text_file(cmd.data));
    const FitResult r = fit_model(problem, cmd.options);
    nlohmann::json j;
    j["model"] = std::string(to_string(r.model.kind));
    j["mu"] = r.model.mu;
    j["kappa"] = r.model.kappa;
    if (r.model.kind == ModelKind::exp_hencky) {
      j["k"] = r.model.k;
      j["khat"] = r.model.khat;
    }
    j["mode"] = std::string(to_string(problem.mode));
    j["stress"] = std::string(to_string(problem.stress_kind));
    j["rms"] = r.rms;
    j["residuals"] = r.residuals;
    j["converged"] = r.converged;
    j["evaluations"] = r.evaluations;
    out << j.dump(2) << '\n';
    if (!r.converged) {
      err << "geolog: fit did not converge; best parameters so far reported\n";
      return kExitNonConvergence;
    }
    return kExitOk;
  } catch (const Error& e) {
    return report(e, err);
  }
}

namespace {

template <class T, class Parse>
CLI::Validator enum_validator(const char* what, Parse parse) {
  return CLI::Validator(
      [what, parse](std::string& s) -> std::string {
        if (parse(s)) return {};
        return std::string("unknown ") + what + " '" + s + "'";
      },
      what);
}

bool parse_free_mask(const std::string& list, FreeMask& mask) {
  mask = FreeMask{false, false, false, false};
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "mu") mask.mu = true;
    else if (item == "kappa") mask.kappa = true;
    else if (item == "k") mask.k = true;
    else if (item == "khat") mask.khat = true;
    else return false;
  }
  return true;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Logarithmic strain measures, geodesic distances and Hencky-type models"};
  app.require_subcommand(1);

  MeasureCommand measure;
  std::string measure_format = "json";
  auto* m = app.add_subcommand("measure", "Strain measures and distances of a deformation gradient");
  m->add_option("--matrix", measure.matrix, "JSON array of rows, or @file")->required();
  m->add_option("--mu", measure.mu, "shear weight")->capture_default_str();
  m->add_option("--muc", measure.mu_c, "rotational weight")->capture_default_str();
  m->add_option("--kappa", measure.kappa, "volumetric weight")->capture_default_str();
  m->add_option("--format", measure_format, "json or table")
      ->check(CLI::IsMember({"json", "table"}))
      ->capture_default_str();

  VerifyCommand verify;
  std::size_t verify_samples = 0;
  double verify_tol = 0.0;
  auto* v = app.add_subcommand("verify", "Run a verification suite");
  std::vector<std::string> suites(suite_names().begin(), suite_names().end());
  v->add_option("--suite", verify.suite, "suite name")->required()->check(CLI::IsMember(suites));
  v->add_option("--dim", verify.options.dim, "2 or 3")->check(CLI::IsMember({2, 3}))->capture_default_str();
  auto* samples_opt = v->add_option("--samples", verify_samples, "sample count (suite default if omitted)");
  v->add_option("--seed", verify.options.cfg.seed, "RNG seed")->capture_default_str();
  auto* tol_opt = v->add_option("--tol", verify_tol, "claim tolerance (suite default if omitted)");
  v->add_option("--nodes", verify.options.cfg.nodes, "discrete path segments")->capture_default_str();
  v->add_option("--threads", verify.options.cfg.threads, "worker threads")->capture_default_str();

  PathCommand path;
  std::string path_mode;
  std::string path_model;
  std::string path_stress;
  std::string path_out;
  std::optional<double> path_lambda;
  auto* p = app.add_subcommand("path", "Tabulate a deformation path as CSV");
  p->add_option("--mode", path_mode, "deformation mode")
      ->required()
      ->check(enum_validator<DeformationKind>("mode", deformation_kind_from_string));
  p->add_option("--model", path_model, "material model")
      ->required()
      ->check(enum_validator<ModelKind>("model", model_kind_from_string));
  p->add_option("--from", path.mode.from, "first control value")->required();
  p->add_option("--to", path.mode.to, "last control value")->required();
  p->add_option("--steps", path.mode.steps, "number of rows")->required();
  p->add_option("--mu", path.model.mu, "shear modulus")->capture_default_str();
  p->add_option("--kappa", path.model.kappa, "bulk modulus")->capture_default_str();
  p->add_option("--lambda", path_lambda, "Lame lambda (overrides kappa - 2 mu / n)");
  p->add_option("--k", path.model.k, "exp-Hencky shear exponent")->capture_default_str();
  p->add_option("--khat", path.model.khat, "exp-Hencky volumetric exponent")->capture_default_str();
  p->add_option("--r", path.model.r, "Seth-Hill order (hill_family)")->capture_default_str();
  p->add_flag("--normalized", path.model.normalized, "exp-Hencky energy shifted to vanish at id");
  p->add_option("--stress", path_stress, "biot, cauchy or kirchhoff")
      ->check(enum_validator<StressKind>("stress", stress_kind_from_string));
  p->add_option("--out", path_out, "output CSV (stdout if omitted)");

  FitCommand fit;
  std::string fit_model_name;
  std::string fit_mode;
  std::string fit_stress;
  std::string fit_free;
  auto* f = app.add_subcommand("fit", "Fit material parameters to control,stress data");
  f->add_option("--data", fit.data, "CSV with header control,stress")->required();
  f->add_option("--model", fit_model_name, "material model")
      ->required()
      ->check(enum_validator<ModelKind>("model", model_kind_from_string));
  f->add_option("--mode", fit_mode, "deformation mode")
      ->required()
      ->check(enum_validator<DeformationKind>("mode", deformation_kind_from_string));
  f->add_option("--stress", fit_stress, "biot, cauchy or kirchhoff")
      ->check(enum_validator<StressKind>("stress", stress_kind_from_string));
  f->add_option("--seed", fit.options.seed, "multi-start seed")->capture_default_str();
  f->add_option("--starts", fit.options.starts, "number of starts")->capture_default_str();
  f->add_option("--max-iters", fit.options.max_iters, "objective evaluations per start")->capture_default_str();
  f->add_option("--mu", fit.problem.model.mu, "initial shear modulus")->capture_default_str();
  f->add_option("--kappa", fit.problem.model.kappa, "initial bulk modulus")->capture_default_str();
  f->add_option("--k", fit.problem.model.k, "initial exp-Hencky k")->capture_default_str();
  f->add_option("--khat", fit.problem.model.khat, "initial exp-Hencky khat")->capture_default_str();
  f->add_option("--free", fit_free, "comma list of free parameters (default: all of the model)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (m->parsed()) {
    measure.format = measure_format == "table" ? OutputFormat::table : OutputFormat::json;
    return cmd_measure(measure, out, err);
  }
  if (v->parsed()) {
    if (samples_opt->count() > 0) verify.options.samples = verify_samples;
    if (tol_opt->count() > 0) verify.options.tol = verify_tol;
    return cmd_verify(verify, out, err);
  }
  if (p->parsed()) {
    path.mode.kind = *deformation_kind_from_string(path_mode);
    path.model.kind = *model_kind_from_string(path_model);
    path.model.lambda = path_lambda;
    if (!path_stress.empty()) path.stress = stress_kind_from_string(path_stress);
    if (!path_out.empty()) path.out = path_out;
    return cmd_path(path, out, err);
  }
  if (f->parsed()) {
    fit.problem.model.kind = *model_kind_from_string(fit_model_name);
    fit.problem.mode = *deformation_kind_from_string(fit_mode);
    fit.problem.stress_kind =
        fit_stress.empty() ? default_stress(fit.problem.mode) : *stress_kind_from_string(fit_stress);
    const bool exp_model = fit.problem.model.kind == ModelKind::exp_hencky;
    fit.problem.free = FreeMask{true, true, exp_model, exp_model};
    if (!fit_free.empty() && !parse_free_mask(fit_free, fit.problem.free)) {
      err << "geolog: --free takes a comma list of mu, kappa, k, khat\n";
      return kExitUsage;
    }
    return cmd_fit(fit, out, err);
  }
  return kExitUsage;
}

}  // namespace geolog
