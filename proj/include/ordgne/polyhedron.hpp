#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace ordgne {

struct Interval;
struct FeasibleRegion;

/// a·y ≤ b, or a·y < b when `strict`.
struct LinearRow {
  std::vector<double> a;
  double b = 0.0;
  bool strict = false;
};

/// Exact feasibility of a small system by Fourier–Motzkin elimination.
/// Strict rows stay strict through combination; a final row 0 < b needs b > tol.
[[nodiscard]] bool linear_system_feasible(std::vector<LinearRow> rows, std::size_t dim,
                                          double tol = 1e-12);

/// Box rows followed by the region's halfspaces, all non-strict.
[[nodiscard]] std::vector<LinearRow> region_rows(const FeasibleRegion& region);

/// Vertices of the bounded polytope {a_i·y ≤ b_i}, by solving every
/// dim-subset of rows. Returns nullopt when the subset count exceeds `budget`.
[[nodiscard]] std::optional<std::vector<std::vector<double>>> enumerate_vertices(
    std::span<const LinearRow> rows, std::size_t dim, std::size_t budget = 200000,
    double tol = 1e-9);

}  // namespace ordgne
