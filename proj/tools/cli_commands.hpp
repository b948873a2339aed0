#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "ordgne/report.hpp"

namespace ordgne::cli {

/// Runs one command line (without the program name). Reports go to --out or
/// `out`; diagnostics go to `err`. Returns the process exit code:
/// 0 pass, 1 error, 2 checked-and-failed.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Canonical checks of a named corpus example, as run by `examples --run`.
/// Certificates that fail by design carry expected_failure.
[[nodiscard]] std::vector<NamedCertificate> example_checks(const std::string& name);

}  // namespace ordgne::cli
