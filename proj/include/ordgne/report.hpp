#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ordgne/game.hpp"
#include "ordgne/qvi_solver.hpp"
#include "ordgne/verifier.hpp"

namespace ordgne {

/// Labelled certificate, e.g. "grid" or "svip:direction-3".
struct NamedCertificate {
  std::string label;
  Certificate certificate;
};

struct Report {
  std::vector<std::string> command;
  std::optional<std::string> spec_digest;
  std::optional<SvipSolution> solution;
  std::vector<NamedCertificate> certificates;
  std::vector<std::string> warnings;
  std::vector<std::string> errors;
  std::optional<std::uint64_t> seed;
  double wall_time_seconds = 0.0;
  std::string tool_version = ORDGNE_VERSION;
};

/// Two-space indented JSON with fixed key order and a trailing newline.
[[nodiscard]] std::string report_to_json(const Report& report);

/// Same document with the wall-time field removed, for comparing runs.
[[nodiscard]] std::string report_to_json_without_time(const Report& report);

}  // namespace ordgne
