#include "ordgne/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

#include "ordgne/error.hpp"
#include "ordgne/random.hpp"

namespace ordgne {

namespace {

PlayerSpec scalar_player(double lo, double hi, Preference pref) {
  return PlayerSpec{1, {Interval{lo, hi}}, std::move(pref)};
}

std::string var(std::size_t zero_based) { return "x" + std::to_string(zero_based + 1); }

// Appends " + c*xk" / " - c*xk" for every nonzero coefficient.
void append_linear(std::string& out, const std::vector<double>& coeffs,
                   const std::vector<std::size_t>& vars) {
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    double c = coeffs[k];
    if (c == 0.0) continue;
    out += c < 0 ? " + " : " - ";
    out += format_number(std::abs(c)) + "*" + var(vars[k]);
  }
}

std::vector<std::size_t> rival_indices(const std::vector<std::size_t>& dims, std::size_t player) {
  std::vector<std::size_t> out;
  std::size_t off = 0;
  for (std::size_t p = 0; p < dims.size(); ++p) {
    for (std::size_t k = 0; k < dims[p]; ++k) {
      if (p != player) out.push_back(off + k);
    }
    off += dims[p];
  }
  return out;
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

GameSpec example_trivial_pref() {
  std::vector<PlayerSpec> players;
  for (int i = 0; i < 2; ++i) players.push_back(scalar_player(-1.0, 1.0, TrivialZeroPreference{}));
  return GameSpec(std::move(players), BoxOnly{});
}

GameSpec example_coordinate_pref() {
  std::vector<PlayerSpec> players;
  for (int i = 0; i < 2; ++i) players.push_back(scalar_player(-1.0, 1.0, CoordinateOrderPreference{}));
  return GameSpec(std::move(players), BoxOnly{});
}

LhcRemark example_lhc_remark() {
  constexpr double inf = std::numeric_limits<double>::infinity();
  LhcRemark out;
  out.contour = [](std::span<const double> x) -> std::optional<std::vector<Interval>> {
    if (x[0] < 0.0) return std::vector<Interval>{{0.0, inf}};
    return std::nullopt;
  };
  out.closed_variant = [](std::span<const double> x) -> std::optional<std::vector<Interval>> {
    if (x[0] <= 0.0) return std::vector<Interval>{{0.0, inf}};
    return std::nullopt;
  };
  std::vector<PlayerSpec> players;
  for (int i = 0; i < 2; ++i) players.push_back(scalar_player(-1.0, 1.0, ThresholdBandPreference{}));
  out.game = GameSpec(std::move(players), BoxOnly{});
  return out;
}

GameSpec quadratic_game(const QuadraticParams& params) {
  const std::size_t count = params.dims.size();
  if (params.coupling.size() != count || params.offsets.size() != count) {
    throw Error(ErrorKind::invalid_argument, "quadratic parameters do not match the player count");
  }
  std::vector<PlayerSpec> players;
  std::size_t off = 0;
  for (std::size_t p = 0; p < count; ++p) {
    const auto rivals = rival_indices(params.dims, p);
    std::string expr = "-(";
    for (std::size_t k = 0; k < params.dims[p]; ++k) {
      if (k > 0) expr += " + ";
      std::string inner = var(off + k);
      append_linear(inner, params.coupling[p][k], rivals);
      double c = params.offsets[p][k];
      if (c != 0.0) inner += (c < 0 ? " + " : " - ") + format_number(std::abs(c));
      expr += "(" + inner + ")^2";
    }
    expr += ")";
    if (params.dims[p] == 1) {
      // -((inner)^2) reads better as -(inner)^2
      expr = "-" + expr.substr(2, expr.size() - 3);
    }
    players.push_back(PlayerSpec{params.dims[p], std::vector<Interval>(params.dims[p], Interval{-1.0, 1.0}),
                                 UtilityPreference{CompiledExpression(expr)}});
    off += params.dims[p];
  }
  return GameSpec(std::move(players), BoxOnly{});
}

QuadraticParams random_quadratic_params(std::uint64_t seed, std::size_t players, std::size_t dims) {
  if (players < 2 || players > 3 || dims < 1 || dims > 2) {
    throw Error(ErrorKind::invalid_argument, "random_concave_quadratic supports 2-3 players of dimension 1-2");
  }
  QuadraticParams p;
  p.dims.assign(players, dims);
  const std::size_t n = players * dims;
  if (seed == 1 && players == 2 && dims == 1) {
    p.coupling = {{{0.5}}, {{0.5}}};
    p.offsets = {{0.0}, {0.0}};
    return p;
  }
  Rng rng(mix_seed(seed, 0xc0ffeeULL));
  for (std::size_t v = 0; v < players; ++v) {
    std::vector<std::vector<double>> m(dims, std::vector<double>(n - dims));
    double frob = 0.0;
    for (auto& row : m) {
      for (double& e : row) {
        e = rng.uniform();
        frob += e * e;
      }
    }
    const double target = rng.uniform(0.1, 0.5);
    const double scale = frob > 0 ? target / std::sqrt(frob) : 0.0;
    for (auto& row : m) {
      for (double& e : row) e *= scale;
    }
    std::vector<double> c(dims);
    for (double& e : c) e = rng.uniform(-1.5, 1.5);
    p.coupling.push_back(std::move(m));
    p.offsets.push_back(std::move(c));
  }
  return p;
}

GameSpec random_concave_quadratic(std::uint64_t seed, std::size_t players, std::size_t dims) {
  return quadratic_game(random_quadratic_params(seed, players, dims));
}

std::vector<double> quadratic_equilibrium(const QuadraticParams& params) {
  std::size_t n = 0;
  for (auto d : params.dims) n += d;
  std::vector<double> x(n, 0.0);
  for (int it = 0; it < 10000; ++it) {
    std::vector<double> next(n);
    std::size_t off = 0;
    double moved = 0.0;
    for (std::size_t p = 0; p < params.dims.size(); ++p) {
      const auto rivals = rival_indices(params.dims, p);
      for (std::size_t k = 0; k < params.dims[p]; ++k) {
        double t = params.offsets[p][k];
        for (std::size_t j = 0; j < rivals.size(); ++j) t += params.coupling[p][k][j] * x[rivals[j]];
        next[off + k] = std::clamp(t, -1.0, 1.0);
        moved = std::max(moved, std::abs(next[off + k] - x[off + k]));
      }
      off += params.dims[p];
    }
    x = std::move(next);
    if (moved == 0.0) break;
  }
  return x;
}

GameSpec random_monotone_concave(std::uint64_t seed) {
  Rng rng(mix_seed(seed, 0x303070ULL));
  const std::size_t players = rng.uniform() < 0.75 ? 2 : 3;
  std::vector<std::size_t> dims(players, 1);
  if (players == 2 && rng.uniform() < 0.3) dims[rng.next() % 2] = 2;
  std::size_t n = 0;
  for (auto d : dims) n += d;

  std::vector<PlayerSpec> specs;
  std::size_t off = 0;
  bool all_increasing = true;
  for (std::size_t p = 0; p < players; ++p) {
    std::vector<double> own(dims[p]);
    for (double& a : own) {
      a = rng.uniform(0.3, 1.0) * (rng.uniform() < 0.7 ? 1.0 : -1.0);
      all_increasing = all_increasing && a > 0;
    }
    const auto rivals = rival_indices(dims, p);
    std::vector<double> cross(rivals.size());
    for (double& b : cross) b = rng.uniform(-0.5, 0.5);
    std::string inner;
    for (std::size_t k = 0; k < own.size(); ++k) {
      if (k > 0) inner += own[k] < 0 ? " - " : " + ";
      else if (own[k] < 0) inner += "-";
      inner += format_number(std::abs(own[k])) + "*" + var(off + k);
    }
    std::vector<double> negated(cross.size());
    for (std::size_t k = 0; k < cross.size(); ++k) negated[k] = -cross[k];
    append_linear(inner, negated, rivals);
    specs.push_back(PlayerSpec{dims[p], std::vector<Interval>(dims[p], Interval{-1.0, 1.0}),
                               UtilityPreference{CompiledExpression("-exp(-(" + inner + "))")}});
    off += dims[p];
  }
  ConstraintMap constraints = BoxOnly{};
  if (players == 2 && n == 2 && all_increasing && rng.uniform() < 0.6) {
    constraints = SharedLinear{{{1.0, 1.0}}, {0.5}};
  }
  return GameSpec(std::move(specs), std::move(constraints));
}

GameSpec arrow_debreu_instance(std::uint64_t seed) {
  double t[2] = {1.0, 1.0};
  if (seed != 1) {
    Rng rng(mix_seed(seed, 0xad0ULL));
    t[0] = rng.uniform(0.6, 1.6);
    t[1] = rng.uniform(0.6, 1.6);
  }
  std::vector<PlayerSpec> players;
  for (int i = 0; i < 2; ++i) {
    std::string expr = "-(" + var(static_cast<std::size_t>(i)) + " - " + format_number(t[i]) + ")^2";
    players.push_back(scalar_player(0.0, 1.0, UtilityPreference{CompiledExpression(expr)}));
  }
  return GameSpec(std::move(players), SharedLinear{{{1.0, 1.0}}, {1.0}});
}

std::vector<GameSpec> suite_instances(Suite suite, std::size_t count, std::uint64_t seed) {
  std::vector<GameSpec> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint64_t s = seed + i;
    switch (suite) {
      case Suite::theorem1:
        out.push_back(random_concave_quadratic(s, 2, 1));
        break;
      case Suite::theorem2:
        out.push_back(random_monotone_concave(s));
        break;
      case Suite::existence:
        switch (i % 4) {
          case 0:
            out.push_back(random_concave_quadratic(s, 2, 1));
            break;
          case 1:
            out.push_back(random_concave_quadratic(s, (s % 2) ? 3 : 2, (s % 2) ? 1 : 2));
            break;
          case 2:
            out.push_back(random_monotone_concave(s));
            break;
          default:
            out.push_back(arrow_debreu_instance(s));
            break;
        }
        break;
    }
  }
  return out;
}

const std::vector<std::string>& example_names() {
  static const std::vector<std::string> names{"trivial-pref", "coordinate-pref", "lhc-remark", "quadratic",
                                              "arrow-debreu"};
  return names;
}

std::optional<GameSpec> example_by_name(const std::string& name) {
  if (name == "trivial-pref") return example_trivial_pref();
  if (name == "coordinate-pref") return example_coordinate_pref();
  if (name == "lhc-remark") return example_lhc_remark().game;
  if (name == "quadratic") return random_concave_quadratic(1, 2, 1);
  if (name == "arrow-debreu") return arrow_debreu_instance(1);
  return std::nullopt;
}

}  // namespace ordgne
