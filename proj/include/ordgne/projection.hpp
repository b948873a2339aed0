#pragma once

#include <span>
#include <vector>

#include "ordgne/game.hpp"

namespace ordgne {

struct DykstraOptions {
  int max_cycles = 200;
  double move_tol = 1e-12;
};

/// Euclidean projection onto box ∩ halfspaces by Dykstra's alternating
/// projections. `box` may be empty (no box constraint). The box itself is one
/// set; each halfspace is one set. Exact clamp when there are no halfspaces.
/// The (made feasible) Dykstra iterate then seeds an exact primal active-set
/// solve; the iterate itself is returned if that solve does not finish.
[[nodiscard]] std::vector<double> dykstra_project(std::span<const double> point,
                                                  std::span<const Interval> box,
                                                  std::span<const Halfspace> halfspaces,
                                                  const DykstraOptions& options = {});

/// Euclidean projection onto a nonempty FeasibleRegion, feasible within 1e-9.
/// Throws Error{infeasible} on an empty region.
[[nodiscard]] std::vector<double> project_feasible(const FeasibleRegion& region,
                                                   std::span<const double> point);

}  // namespace ordgne
