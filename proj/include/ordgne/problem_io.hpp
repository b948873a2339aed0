#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "ordgne/game.hpp"

namespace ordgne {

/// Parses a problem file. Malformed text throws Error{parse} whose message
/// starts with "line L, column C:"; structurally wrong documents throw
/// Error{parse} naming the offending path. Expressions are kept verbatim, so
/// semantic problems surface through validate_spec instead.
[[nodiscard]] GameSpec parse_problem(std::string_view text);

/// Canonical text: two-space indentation, fixed key order, trailing newline.
/// dump_problem(parse_problem(dump_problem(g))) == dump_problem(g).
[[nodiscard]] std::string dump_problem(const GameSpec& game);

[[nodiscard]] GameSpec load_problem(const std::string& path);
void save_problem(const GameSpec& game, const std::string& path);

/// FNV-1a 64 of dump_problem, as 16 hex digits.
[[nodiscard]] std::string spec_digest(const GameSpec& game);

/// Writes via a temporary file in the same directory and a rename.
void write_file_atomic(const std::string& path, std::string_view contents);
[[nodiscard]] std::string read_file(const std::string& path);

}  // namespace ordgne
