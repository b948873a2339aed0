#include "ordgne/qvi_solver.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "ordgne/error.hpp"
#include "ordgne/random.hpp"

namespace ordgne {

namespace {

constexpr double kFeasibilityTol = 1e-9;
constexpr double kStepShrink = 0.5;
constexpr double kStepGrow = 1.2;

double radical_inverse(std::uint64_t index, unsigned base) {
  double inv = 1.0 / base;
  double f = inv;
  double r = 0.0;
  while (index > 0) {
    r += f * static_cast<double>(index % base);
    index /= base;
    f *= inv;
  }
  return r;
}

constexpr unsigned kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53,
                                59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113};

Direction pick_sampled(const GameSpec& game, PlayerId id, const Profile& x,
                       const SelectionOptions& options, SelectionSource& source) {
  const std::size_t n = game.dim(id);
  auto samples = upper_contour_sample(game, id, x, options.sample_count, mix_seed(options.seed, id.index));
  if (samples.empty()) {
    source = SelectionSource::full_space;
    return {id, std::vector<double>(n, 0.0)};
  }
  try {
    auto d = sampled_separating_direction(samples, x.block(id));
    source = SelectionSource::sampled;
    return *d;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::no_separator) throw;
  }
  source = SelectionSource::no_generator;
  return {id, std::vector<double>(n, 0.0)};
}

Direction select_player(const GameSpec& game, PlayerId id, const Profile& x,
                        const SelectionOptions& options, SelectionSource& source) {
  const std::size_t n = game.dim(id);
  if (auto d = gradient_normal_direction(game, id, x)) {
    source = SelectionSource::gradient;
    return *d;
  }
  if (auto rows = contour_rows(game, id, x)) {
    try {
      auto gens = polyhedral_normal_generators(id, *rows, x.block(id));
      if (gens.provenance == ConeProvenance::full_space) {
        source = SelectionSource::full_space;
        return {id, std::vector<double>(n, 0.0)};
      }
      if (!gens.directions.empty()) {
        source = SelectionSource::polyhedral;
        return gens.directions.front();
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::interior_point) throw;
    }
  }
  return pick_sampled(game, id, x, options, source);
}

// One Gauss–Seidel projected sweep with per-player steps.
Profile sweep(const GameSpec& game, const Profile& x, const Selection& g,
              std::span<const double> steps) {
  Profile y = x;
  for (std::size_t i = 0; i < game.player_count(); ++i) {
    PlayerId id{i};
    const std::size_t off = game.offset(id);
    auto own = x.block(id);
    std::vector<double> target(own.size());
    for (std::size_t k = 0; k < own.size(); ++k) target[k] = own[k] - steps[i] * g.stacked[off + k];
    auto region = feasible_region(game, id, y);
    y = y.with_block(id, project_feasible(region, target));
  }
  return y;
}

struct RunResult {
  SvipSolution solution;
  bool feasible = false;
};

RunResult run_once(const GameSpec& game, const SolverConfig& cfg, int restart) {
  RunResult out;
  Profile x;
  try {
    x = project_joint(game, start_point(game, cfg.seed, restart));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::infeasible) throw;
    return out;
  }
  if (!in_own_feasible_set(game, x, kFeasibilityTol)) return out;
  out.feasible = true;

  const std::size_t players = game.player_count();
  std::vector<double> steps(players, cfg.step);
  std::optional<Selection> previous;
  auto& sol = out.solution;
  sol.restart = restart;
  for (int it = 0;; ++it) {
    Selection g = selection_T(game, x);
    const double r = natural_residual(game, x, g.stacked, cfg.step);
    if (cfg.record_trace) sol.trace.push_back({it, r});
    if (r <= cfg.tol || it >= cfg.max_iters) {
      sol.point = x;
      sol.operator_value = std::move(g);
      sol.residual = r;
      sol.iters = it;
      sol.converged = r <= cfg.tol;
      return out;
    }
    if (previous) {
      for (std::size_t i = 0; i < players; ++i) {
        const std::size_t off = game.offset(PlayerId{i});
        double agreement = 0.0;
        for (std::size_t k = 0; k < game.dim(PlayerId{i}); ++k) {
          agreement += g.stacked[off + k] * previous->stacked[off + k];
        }
        if (agreement < 0.0) {
          steps[i] *= kStepShrink;
        } else if (agreement > 0.0) {
          steps[i] = std::min(cfg.step, steps[i] * kStepGrow);
        }
      }
    }
    x = sweep(game, x, g, steps);
    previous = std::move(g);
  }
}

}  // namespace

void SolverConfig::validate() const {
  if (!(step > 0.0)) throw Error(ErrorKind::invalid_argument, "step must be positive");
  if (!(tol > 0.0)) throw Error(ErrorKind::invalid_argument, "tol must be positive");
  if (max_iters < 1) throw Error(ErrorKind::invalid_argument, "max_iters must be at least 1");
  if (restarts < 1) throw Error(ErrorKind::invalid_argument, "restarts must be at least 1");
}

const char* to_string(SelectionSource s) {
  switch (s) {
    case SelectionSource::gradient:
      return "gradient";
    case SelectionSource::polyhedral:
      return "polyhedral";
    case SelectionSource::sampled:
      return "sampled";
    case SelectionSource::full_space:
      return "full-space";
    case SelectionSource::no_generator:
      return "no-generator";
  }
  return "unknown";
}

bool Selection::all_nonzero() const {
  return std::all_of(sources.begin(), sources.end(), [](SelectionSource s) {
    return s != SelectionSource::full_space && s != SelectionSource::no_generator;
  });
}

bool Selection::all_full_space() const {
  return std::all_of(sources.begin(), sources.end(),
                     [](SelectionSource s) { return s == SelectionSource::full_space; });
}

Selection selection_T(const GameSpec& game, const Profile& x, const SelectionOptions& options) {
  Selection sel;
  sel.stacked.reserve(game.total_dim());
  for (std::size_t i = 0; i < game.player_count(); ++i) {
    SelectionSource source = SelectionSource::no_generator;
    Direction d = select_player(game, PlayerId{i}, x, options, source);
    sel.stacked.insert(sel.stacked.end(), d.vector.begin(), d.vector.end());
    sel.sources.push_back(source);
  }
  return sel;
}

double natural_residual(const GameSpec& game, const Profile& x, std::span<const double> g,
                        double step) {
  if (g.size() != game.total_dim()) throw Error(ErrorKind::dimension_mismatch, "selection has wrong dimension");
  double sum = 0.0;
  for (std::size_t i = 0; i < game.player_count(); ++i) {
    PlayerId id{i};
    auto region = feasible_region(game, id, x);
    auto own = x.block(id);
    if (region.empty || !region.contains(own, kFeasibilityTol)) {
      throw Error(ErrorKind::infeasible, "profile is not in K(x)");
    }
    const std::size_t off = game.offset(id);
    std::vector<double> target(own.size());
    for (std::size_t k = 0; k < own.size(); ++k) target[k] = own[k] - step * g[off + k];
    auto p = project_feasible(region, target);
    for (std::size_t k = 0; k < own.size(); ++k) sum += (own[k] - p[k]) * (own[k] - p[k]);
  }
  return std::sqrt(sum);
}

Profile fixed_point_step(const GameSpec& game, const Profile& x, const SolverConfig& cfg) {
  cfg.validate();
  if (!in_own_feasible_set(game, x, kFeasibilityTol)) throw Error(ErrorKind::infeasible, "profile is not in K(x)");
  Selection g = selection_T(game, x);
  std::vector<double> steps(game.player_count(), cfg.step);
  return sweep(game, x, g, steps);
}

Profile project_joint(const GameSpec& game, std::span<const double> point) {
  auto box = game.stacked_box();
  std::vector<Halfspace> rows;
  if (const auto* shared = std::get_if<SharedLinear>(&game.constraints())) {
    for (std::size_t r = 0; r < shared->matrix.size(); ++r) rows.push_back({shared->matrix[r], shared->rhs[r]});
  }
  DykstraOptions opts;
  opts.max_cycles = 2000;
  auto y = dykstra_project(point, box, rows, opts);
  Profile p = Profile::from_stacked(game, std::move(y));
  if (!in_own_feasible_set(game, p, kFeasibilityTol)) throw Error(ErrorKind::infeasible, "infeasible constraint set");
  return p;
}

std::vector<double> start_point(const GameSpec& game, std::uint64_t seed, int index) {
  auto box = game.stacked_box();
  Rng rng(mix_seed(seed, 0x57a27ULL));
  std::vector<double> p(box.size());
  for (std::size_t j = 0; j < box.size(); ++j) {
    const double shift = rng.uniform();
    const unsigned base = kPrimes[j % std::size(kPrimes)];
    double u = radical_inverse(static_cast<std::uint64_t>(index) + 1, base) + shift;
    u -= std::floor(u);
    p[j] = box[j].lower + (0.01 + 0.98 * u) * box[j].width();
  }
  return p;
}

SvipSolution solve_svip(const GameSpec& game, const SolverConfig& cfg) {
  cfg.validate();
  std::vector<RunResult> runs(static_cast<std::size_t>(cfg.restarts));
  const int threads = std::clamp(cfg.threads, 1, cfg.restarts);
  if (threads == 1) {
    for (int r = 0; r < cfg.restarts; ++r) runs[static_cast<std::size_t>(r)] = run_once(game, cfg, r);
  } else {
    std::atomic<int> next{0};
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (int r = next++; r < cfg.restarts; r = next++) runs[static_cast<std::size_t>(r)] = run_once(game, cfg, r);
        } catch (...) {
          errors[static_cast<std::size_t>(t)] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  const RunResult* best = nullptr;
  for (const auto& run : runs) {
    if (!run.feasible) continue;
    if (best == nullptr || run.solution.residual < best->solution.residual) best = &run;
  }
  if (best == nullptr) throw Error(ErrorKind::infeasible, "no restart produced a feasible point");
  return best->solution;
}

}  // namespace ordgne
