#pragma once

// Named cross-checks of the truncated master-equation integrator against
// closed forms, the reduced phonon model and the Gaussian solver. Parameters
// are rescaled (small drives, large damping) so the number-state basis stays small.

#include <string>
#include <string_view>
#include <vector>

namespace magnomech {

struct OracleCheck {
  std::string suite;
  std::string name;
  bool pass = false;
  double error = 0.0;      ///< worst deviation observed
  double tolerance = 0.0;  ///< threshold it was compared against
  std::string detail;
  double seconds = 0.0;
};

/// Suites: "decay", "parametric", "gaussian-check", "working-point", "all".
/// Throws InvalidParameter for an unknown suite name.
std::vector<OracleCheck> run_oracle_suite(std::string_view suite);

std::vector<std::string_view> oracle_suite_names();

}  // namespace magnomech
