#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ordgne/corpus.hpp"
#include "ordgne/game.hpp"
#include "ordgne/qvi_solver.hpp"

namespace ordgne {

enum class CertificateKind { gne_grid, svip, theorem1, theorem2, lhc, existence };

[[nodiscard]] const char* to_string(CertificateKind k);

struct Witness {
  std::optional<std::size_t> player;
  std::optional<std::size_t> game_index;
  std::vector<double> point;
};

/// Outcome of one verification. Equilibrium claims hold "at resolution h" only.
struct Certificate {
  CertificateKind kind = CertificateKind::gne_grid;
  bool passed = false;
  /// Failure predicted by a violated hypothesis (e.g. the empty-preference counterexample).
  bool expected_failure = false;
  std::optional<double> resolution;
  std::optional<Witness> witness;
  /// check_svip: min over K(x̂) of ⟨x̂*, y - x̂⟩ with x̂* at unit stacked norm.
  std::optional<double> margin;
  std::string detail;
  std::vector<std::pair<std::string, std::int64_t>> counts;

  [[nodiscard]] std::int64_t count(const std::string& key) const;
};

inline constexpr std::size_t kGridBudget = 10'000'000;

/// Grid points lower + k·h of one interval, with `upper` appended (or snapped
/// to when within 1e-9·h). Grids for h and h/m are nested.
[[nodiscard]] std::vector<double> grid_axis(Interval iv, double h);

/// No grid point of any K_ν(x̂^{-ν}) is strictly preferred to x̂^ν. Grid
/// points within 1e-9 of x̂^ν in every coordinate count as x̂^ν itself.
/// Throws Error{infeasible} unless x̂ ∈ K(x̂) within 1e-9.
[[nodiscard]] Certificate check_gne_grid(const GameSpec& game, const Profile& x, double h);

/// min over y ∈ K(x̂) of ⟨x̂*, y - x̂⟩, per player: exact by box corner when
/// there are no halfspaces, by vertex enumeration otherwise, and by projected
/// descent when enumeration exceeds its budget. `witness` receives a minimizer.
[[nodiscard]] double svip_margin(const GameSpec& game, const Profile& x, std::span<const double> xstar,
                                 std::vector<double>* witness = nullptr);

/// Passes iff svip_margin(x̂, x̂*/‖x̂*‖) ≥ -tol. x̂* = 0 passes vacuously.
[[nodiscard]] Certificate check_svip(const GameSpec& game, const Profile& x, std::span<const double> xstar,
                                     double tol);

/// Solve each game; every converged solution whose selection is nonzero in
/// every component must pass check_gne_grid at h.
[[nodiscard]] Certificate theorem1_property(std::span<const GameSpec> games, const SolverConfig& cfg,
                                            double h);

struct Theorem2Options {
  std::size_t samples = 1000;
  std::uint64_t seed = 0x7e02ULL;
};

/// Every grid equilibrium at h must admit per-player separators passing
/// check_svip at `tol`. Separators are sampled from U^s near x̂, with the
/// exact polyhedral cone as confirmation.
[[nodiscard]] Certificate theorem2_property(std::span<const GameSpec> games, double h, double tol,
                                            const Theorem2Options& options = {});

/// Every game has at least one grid equilibrium at h.
[[nodiscard]] Certificate existence_property(std::span<const GameSpec> games, double h);

/// All grid profiles x̂ ∈ K(x̂) without a strictly preferred feasible grid
/// deviation, in grid order. Throws Error{grid_budget} above 10^7 profiles.
[[nodiscard]] std::vector<std::pair<Profile, Certificate>> brute_force_gne(const GameSpec& game, double h);

/// Numeric necessary condition for lower hemicontinuity of `map`: for each
/// base x, each probe y ∈ U(x) and each approach x_k = x + s_k·dir, the sets
/// U(x_k) must be nonempty at the tail and dist(y, U(x_k)) must shrink to ≤ tol.
[[nodiscard]] Certificate lhc_probe(const SetMap& map, std::span<const std::vector<double>> base_points,
                                    std::span<const std::vector<double>> directions,
                                    std::span<const double> steps, double tol);

}  // namespace ordgne
