#pragma once

// Named verification suites behind `geolog verify`. Each suite reports one
// verdict per claim; sampled claims report their worst sample.

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "geolog/constitutive.hpp"
#include "geolog/oracle.hpp"

namespace geolog {

struct SuiteOptions {
  int dim = 2;
  OracleConfig cfg;
  std::optional<std::size_t> samples;  // suite default when absent
  std::optional<double> tol;           // suite default when absent
};

std::span<const std::string_view> suite_names();

/// Throws ParameterOutOfRange for an unknown suite or an unsupported dim.
std::vector<OracleVerdict> run_suite(std::string_view name, const SuiteOptions& opts);

struct NamedMotion {
  std::string_view name;
  MotionPath path;
};

/// Three closed-form motions with general (non-coaxial) velocity gradients.
std::vector<NamedMotion> general_motions(std::size_t steps);
/// Three diagonal motions, for which log V and D are coaxial.
std::vector<NamedMotion> coaxial_motions(std::size_t steps);

}  // namespace geolog
