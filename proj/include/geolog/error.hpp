#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace geolog {

enum class ErrorCode {
  dimension_mismatch,
  non_positive_determinant,
  singular_matrix,
  not_spd,
  overflow,
  angle_at_pi,
  no_principal_log,
  parameter_out_of_range,
  unsupported_model,
  zero_distortion,
  insufficient_data,
  non_convergence,
  parse_error,
};

std::string_view to_string(ErrorCode code);

// Single exception type for every library failure; the code selects the
// category, the message carries the specifics.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace geolog
