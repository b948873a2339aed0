#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ordgne/game.hpp"

namespace ordgne {

/// Parametric set map x ↦ U(x) ⊂ R^k whose values are boxes (intervals may be
/// unbounded); nullopt is the empty set.
using SetMap = std::function<std::optional<std::vector<Interval>>(std::span<const double>)>;

/// Two scalar players, empty strict preferences, K_ν = X_ν = [-1, 1].
[[nodiscard]] GameSpec example_trivial_pref();

/// Two scalar players, x ⪰_ν y iff x^ν ≥ y^ν, K_ν = X_ν = [-1, 1].
[[nodiscard]] GameSpec example_coordinate_pref();

/// U(x, y) = [0, ∞) for x < 0 and ∅ otherwise, its boundary-closed variant V
/// (x ≤ 0), and a two-player threshold-band game realizing U as U^s.
struct LhcRemark {
  SetMap contour;
  SetMap closed_variant;
  GameSpec game;
};
[[nodiscard]] LhcRemark example_lhc_remark();

/// θ_ν(x) = -‖x^ν - M_ν x^{-ν} - c_ν‖² on [-1, 1]^{n_ν}, BoxOnly.
/// `coupling[ν]` is n_ν × (n - n_ν), row-major; `offsets[ν]` has n_ν entries.
struct QuadraticParams {
  std::vector<std::size_t> dims;
  std::vector<std::vector<std::vector<double>>> coupling;
  std::vector<std::vector<double>> offsets;
};
[[nodiscard]] GameSpec quadratic_game(const QuadraticParams& params);

/// Seeded concave quadratic family: coupling entries are nonnegative with
/// Frobenius norm (hence spectral norm) at most 0.5, offsets in [-1.5, 1.5].
/// Seed 1 with two scalar players is the canonical instance M = 0.5, c = 0.
[[nodiscard]] QuadraticParams random_quadratic_params(std::uint64_t seed, std::size_t players,
                                                      std::size_t dims);
[[nodiscard]] GameSpec random_concave_quadratic(std::uint64_t seed, std::size_t players,
                                                std::size_t dims);

/// Unique equilibrium x = clamp(M x + c) of a quadratic game, by iterating the
/// contraction to machine precision.
[[nodiscard]] std::vector<double> quadratic_equilibrium(const QuadraticParams& params);

/// Strictly increasing, concave utilities θ_ν = -exp(-(a_ν·x^ν + b_ν·x^{-ν}))
/// on [-1, 1] boxes; some seeds add the shared constraint x¹ + x² ≤ 0.5.
[[nodiscard]] GameSpec random_monotone_concave(std::uint64_t seed);

/// Two scalar players, θ_ν = -(x^ν - t_ν)², x¹ + x² ≤ 1 on [0, 1]².
/// Seed 1 uses t = (1, 1); other seeds draw t_ν from [0.6, 1.6].
[[nodiscard]] GameSpec arrow_debreu_instance(std::uint64_t seed);

enum class Suite { theorem1, theorem2, existence };

/// Seeded batch of `count` instances satisfying the suite's hypotheses.
[[nodiscard]] std::vector<GameSpec> suite_instances(Suite suite, std::size_t count, std::uint64_t seed);

/// Names accepted by example_by_name.
[[nodiscard]] const std::vector<std::string>& example_names();
/// trivial-pref, coordinate-pref, lhc-remark, quadratic, arrow-debreu.
[[nodiscard]] std::optional<GameSpec> example_by_name(const std::string& name);

/// Shortest decimal text that parses back to `v`.
[[nodiscard]] std::string format_number(double v);

}  // namespace ordgne
