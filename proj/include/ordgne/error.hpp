#pragma once

#include <stdexcept>
#include <string>

namespace ordgne {

enum class ErrorKind {
  parse,
  evaluation,
  missing_player,
  duplicate_player,
  dimension_mismatch,
  invalid_argument,
  infeasible,
  interior_point,
  no_separator,
  grid_budget,
  io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace ordgne
