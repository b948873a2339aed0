#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ordgne/game.hpp"
#include "ordgne/normal_cone.hpp"
#include "ordgne/projection.hpp"

namespace ordgne {

struct SolverConfig {
  double step = 0.1;
  double tol = 1e-8;
  int max_iters = 10000;
  int restarts = 16;
  std::uint64_t seed = 42;
  bool record_trace = false;
  /// Restart runs spread over this many threads; results do not depend on it.
  int threads = 1;

  /// Throws Error{invalid_argument} unless step > 0, tol > 0, max_iters ≥ 1, restarts ≥ 1.
  void validate() const;
};

/// How one player's component of the selection was produced.
enum class SelectionSource { gradient, polyhedral, sampled, full_space, no_generator };

[[nodiscard]] const char* to_string(SelectionSource s);

/// Single-valued selection g(x) from T(x), stacked in player order.
struct Selection {
  std::vector<double> stacked;
  std::vector<SelectionSource> sources;

  /// Every component nonzero, i.e. the selection lies in N_0(x).
  [[nodiscard]] bool all_nonzero() const;
  /// Every player's U^s is empty.
  [[nodiscard]] bool all_full_space() const;
};

struct SelectionOptions {
  std::size_t sample_count = 1000;
  std::uint64_t seed = 0x5e1ec7ULL;
};

/// One element of N_ν(x) ∩ S(0,1) per player, by precedence gradient →
/// polyhedral → sampled; zero where U^s_ν(x) is empty or no generator exists.
[[nodiscard]] Selection selection_T(const GameSpec& game, const Profile& x,
                                    const SelectionOptions& options = {});

/// ‖x - Proj_{K(x)}(x - α g)‖₂. Throws Error{infeasible} unless x ∈ K(x).
[[nodiscard]] double natural_residual(const GameSpec& game, const Profile& x,
                                      std::span<const double> g, double step);

/// x⁺ = Proj(x - α·g(x)) with g = selection_T(x). Players are projected in
/// order, each onto K_ν of the partially updated profile, so x⁺ ∈ K(x⁺).
[[nodiscard]] Profile fixed_point_step(const GameSpec& game, const Profile& x, const SolverConfig& cfg);

/// Projection of an arbitrary stacked point onto {x : x ∈ K(x)}.
[[nodiscard]] Profile project_joint(const GameSpec& game, std::span<const double> point);

struct TracePoint {
  int iteration = 0;
  double residual = 0.0;
};

struct SvipSolution {
  Profile point;
  Selection operator_value;
  double residual = 0.0;
  int iters = 0;
  bool converged = false;
  int restart = 0;
  std::vector<TracePoint> trace;
};

/// Projected fixed-point iteration with multistart. Each run keeps a per-player
/// step that halves when that player's direction reverses and grows back (up
/// to cfg.step) while it does not; the residual is always measured with cfg.step.
/// Returns the run with the smallest final residual (ties to the lowest restart).
[[nodiscard]] SvipSolution solve_svip(const GameSpec& game, const SolverConfig& cfg);

/// The seeded interior starting point of restart `index`, before projection.
[[nodiscard]] std::vector<double> start_point(const GameSpec& game, std::uint64_t seed, int index);

}  // namespace ordgne
