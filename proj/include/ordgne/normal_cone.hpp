#pragma once

#include <optional>
#include <span>
#include <vector>

#include "ordgne/game.hpp"

namespace ordgne {

/// Element of N_ν(x) ∩ S(0,1): unit norm, or exactly zero when the player's
/// strict upper-contour set is empty.
struct Direction {
  PlayerId player;
  std::vector<double> vector;

  [[nodiscard]] double norm() const;
  [[nodiscard]] bool is_zero() const { return norm() == 0.0; }
};

enum class ConeProvenance { gradient, polyhedral, sampled, full_space };

[[nodiscard]] const char* to_string(ConeProvenance p);

/// Finite sample of N_ν(x) ∩ S(0,1). `full_space` marks U^s_ν(x) = ∅, where the
/// cone is all of R^{n_ν} and `directions` is empty.
struct ConeGenerators {
  PlayerId player;
  std::vector<Direction> directions;
  ConeProvenance provenance = ConeProvenance::polyhedral;
};

inline constexpr double kGradientTol = 1e-10;
inline constexpr double kFiniteDifferenceStep = 1e-6;
inline constexpr double kMembershipTol = 1e-7;
inline constexpr double kActivityTol = 1e-9;
inline constexpr double kZeroNormTol = 1e-9;

/// -∇_{x^ν}θ_ν(x) normalized, by central differences. Absent when the player
/// does not have a Utility preference or the gradient norm is at most 1e-10.
[[nodiscard]] std::optional<Direction> gradient_normal_direction(const GameSpec& game, PlayerId player,
                                                                 const Profile& x);

/// Normal cone of the open polyhedron {y : a_i·y < b_i} at `xblock`.
///
/// * empty polyhedron: provenance full_space, no directions;
/// * `xblock` on the boundary of the closure: the normalized active rows
///   (|a_i·x - b_i| ≤ 1e-9), in row order;
/// * `xblock` outside the closure: the single direction x - P(x), normalized,
///   where P is the projection onto the closure.
///
/// Throws Error{interior_point} when `xblock` is strictly inside.
[[nodiscard]] ConeGenerators polyhedral_normal_generators(PlayerId player,
                                                          std::span<const ContourRow> rows,
                                                          std::span<const double> xblock);

/// Minimum-norm point of conv(points), by Wolfe's method.
struct MinNormPoint {
  std::vector<double> point;
  std::vector<double> weights;  // convex weights, one per input point
  double norm = 0.0;
  int iterations = 0;
};
[[nodiscard]] MinNormPoint min_norm_point(std::span<const std::vector<double>> points,
                                          double tol = 1e-12);

/// Separator of x^ν from conv(samples): the negated, normalized minimum-norm
/// point of conv{y - x^ν}. Absent for no samples; throws Error{no_separator}
/// when that minimum norm is below 1e-9.
[[nodiscard]] std::optional<Direction> sampled_separating_direction(std::span<const Block> samples,
                                                                    std::span<const double> xblock);

/// ⟨d, y - x^ν⟩ ≤ tol for every sample (vacuously true for none).
[[nodiscard]] bool cone_membership(const Direction& d, std::span<const Block> samples,
                                   std::span<const double> xblock, double tol = kMembershipTol);

/// 0 ∈ conv(generators). A full_space cone contains the whole unit sphere, so
/// its hull is the unit ball and this returns true.
[[nodiscard]] bool zero_in_hull(const ConeGenerators& generators);

}  // namespace ordgne
