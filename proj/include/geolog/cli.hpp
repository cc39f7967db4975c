#pragma once

// `geolog` command-line front end. Commands write to the given streams and
// return the process exit status.

#include <iosfwd>
#include <optional>
#include <string>

#include "geolog/deformation.hpp"
#include "geolog/error.hpp"
#include "geolog/fit.hpp"
#include "geolog/verify.hpp"

namespace geolog {

enum ExitStatus : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitInvalidMatrix = 2,
  kExitUnsupported = 3,
  kExitNonConvergence = 4,
};

/// Exit status a library error maps to.
int exit_status_for(ErrorCode code);

enum class OutputFormat { json, table };

struct MeasureCommand {
  std::string matrix;  // inline JSON or @path
  double mu = 1.0;
  double mu_c = 1.0;
  double kappa = 1.0;
  OutputFormat format = OutputFormat::json;
};

struct VerifyCommand {
  std::string suite;
  SuiteOptions options;
};

struct PathCommand {
  DeformationMode mode;
  MaterialModel model;
  std::optional<StressKind> stress;
  std::optional<std::string> out;  // stdout when absent
};

struct FitCommand {
  std::string data;  // CSV path
  FitProblem problem;
  FitOptions options;
};

int cmd_measure(const MeasureCommand& cmd, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyCommand& cmd, std::ostream& out, std::ostream& err);
int cmd_path(const PathCommand& cmd, std::ostream& out, std::ostream& err);
int cmd_fit(const FitCommand& cmd, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches. argv[0] is the program name.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace geolog
