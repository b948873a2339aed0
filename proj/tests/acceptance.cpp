// Acceptance checks, one line per criterion. Exits 1 if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "cli_commands.hpp"
#include "ordgne/corpus.hpp"
#include "ordgne/normal_cone.hpp"
#include "ordgne/problem_io.hpp"
#include "ordgne/qvi_solver.hpp"
#include "ordgne/random.hpp"
#include "ordgne/verifier.hpp"
#include "oracles.hpp"

using namespace ordgne;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

int failures = 0;

void report(int id, const std::string& title, double limit_seconds, const std::function<Outcome()>& body) {
  const auto start = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  if (limit_seconds > 0 && secs > limit_seconds) {
    o.passed = false;
    o.detail += "; runtime over " + format_number(limit_seconds) + " s";
  }
  if (!o.passed) ++failures;
  std::printf("%s criterion %2d  %-34s %8.2fs  %s\n", o.passed ? "PASS" : "FAIL", id, title.c_str(), secs,
              o.detail.c_str());
  std::fflush(stdout);
}

std::vector<double> random_unit(Rng& rng, std::size_t n) {
  std::vector<double> v(n);
  double norm = 0.0;
  while (norm < 1e-6) {
    norm = 0.0;
    for (double& e : v) {
      e = rng.normal();
      norm += e * e;
    }
    norm = std::sqrt(norm);
  }
  for (double& e : v) e /= norm;
  return v;
}

double distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

Outcome counterexample() {
  GameSpec g = example_trivial_pref();
  Profile origin = Profile::from_stacked(g, {0.0, 0.0});
  Certificate grid = check_gne_grid(g, origin, 0.05);
  Rng rng(64);
  int svip_failures = 0;
  double worst = -INFINITY;
  for (int k = 0; k < 64; ++k) {
    auto d = random_unit(rng, 2);
    Certificate c = check_svip(g, origin, d, 1e-6);
    if (!c.passed && *c.margin <= -0.01) ++svip_failures;
    worst = std::max(worst, *c.margin);
  }
  return {grid.passed && svip_failures == 64,
          "grid " + std::string(grid.passed ? "passes" : "fails") + ", svip fails " +
              std::to_string(svip_failures) + "/64, largest margin " + format_number(worst)};
}

Outcome coordinate_example() {
  GameSpec g = example_coordinate_pref();
  SvipSolution sol = solve_svip(g, SolverConfig{});
  const std::vector<double> one{1.0, 1.0};
  const double err = distance(sol.point.stacked(), one);
  auto eqs = brute_force_gne(g, 0.1);
  const bool bf = eqs.size() == 1 && eqs[0].first.stacked()[0] == 1.0 && eqs[0].first.stacked()[1] == 1.0;
  Rng rng(100);
  int selections = 0;
  for (int k = 0; k < 100; ++k) {
    Profile x = Profile::from_stacked(g, {rng.uniform(-0.999, 0.999), rng.uniform(-0.999, 0.999)});
    auto s = selection_T(g, x);
    selections += s.stacked == std::vector<double>{-1.0, -1.0};
  }
  return {sol.converged && err <= 1e-6 && bf && selections == 100,
          "solver error " + format_number(err) + ", brute force " + std::to_string(eqs.size()) +
              " point(s), selection (-1,-1) at " + std::to_string(selections) + "/100"};
}

Outcome theorem1_suite() {
  auto games = suite_instances(Suite::theorem1, 50, 7);
  Certificate c = theorem1_property(games, SolverConfig{}, 0.02);
  const auto converged = c.count("converged");
  return {c.passed && c.count("failures") == 0 && converged >= 45,
          std::to_string(converged) + "/50 converged, " + std::to_string(c.count("checked")) +
              " with nonzero selection checked, " + std::to_string(c.count("failures")) + " failures"};
}

Outcome theorem2_suite() {
  auto games = suite_instances(Suite::theorem2, 20, 42);
  Certificate c = theorem2_property(games, 0.05, 1e-6);
  return {c.passed && c.count("violations") == 0 && c.count("inconclusive") == 0,
          std::to_string(c.count("certified")) + "/" + std::to_string(c.count("equilibria")) +
              " grid equilibria certified, " + std::to_string(c.count("violations")) + " violations, " +
              std::to_string(c.count("inconclusive")) + " inconclusive"};
}

Outcome existence_suite() {
  auto games = suite_instances(Suite::existence, 100, 42);
  Certificate c = existence_property(games, 0.05);
  return {c.passed && c.count("with_equilibrium") == 100,
          std::to_string(c.count("with_equilibrium")) + "/100 instances have a grid equilibrium"};
}

Outcome oracle_equivalence() {
  const double h = 0.05;
  // Grid nodes such as -1 + 21·0.05 carry representation error, so a node
  // exactly h√2 away can measure a few ulps over.
  const double limit = h * std::sqrt(2.0) * (1.0 + 1e-9);
  double worst = 0.0;
  int agree = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto params = random_quadratic_params(seed, 2, 1);
    auto analytic = oracle::quadratic_two_player_equilibrium(params);
    GameSpec g = quadratic_game(params);
    SvipSolution sol = solve_svip(g, SolverConfig{});
    auto eqs = brute_force_gne(g, h);
    bool ok = sol.converged && analytic.size() == 2 && !eqs.empty();
    double d = distance(sol.point.stacked(), analytic);
    worst = std::max(worst, d);
    ok = ok && d <= limit;
    for (const auto& [x, cert] : eqs) {
      const double da = distance(x.stacked(), analytic);
      const double ds = distance(x.stacked(), sol.point.stacked());
      worst = std::max({worst, da, ds});
      ok = ok && da <= limit && ds <= limit;
    }
    agree += ok;
  }
  return {agree == 20, std::to_string(agree) + "/20 agree, largest distance " + format_number(worst) +
                           " (limit " + format_number(limit) + ")"};
}

Outcome cone_validity() {
  constexpr int kTrials = 10000;
  Rng rng(7007);
  int directions = 0;
  int violations = 0;
  for (int t = 0; t < kTrials; ++t) {
    GameSpec g;
    const auto s = static_cast<std::uint64_t>(t / 5 + 1);
    switch (t % 5) {
      case 0:
        g = random_concave_quadratic(s, 2 + s % 2, 1 + (s / 2) % 2);
        break;
      case 1:
        g = example_coordinate_pref();
        break;
      case 2:
        g = oracle::halfspace_game(s);
        break;
      case 3:
        g = example_lhc_remark().game;
        break;
      default:
        g = random_monotone_concave(s);
        break;
    }
    std::vector<double> p;
    for (const auto& iv : g.stacked_box()) p.push_back(rng.uniform(iv.lower, iv.upper));
    Profile x = project_joint(g, p);
    SelectionOptions opts;
    opts.seed = mix_seed(0x5e1, static_cast<std::uint64_t>(t));
    Selection sel = selection_T(g, x, opts);
    for (std::size_t i = 0; i < g.player_count(); ++i) {
      PlayerId id{i};
      const std::size_t off = g.offset(id);
      Direction d{id, std::vector<double>(sel.stacked.begin() + static_cast<long>(off),
                                          sel.stacked.begin() + static_cast<long>(off + g.dim(id)))};
      if (d.is_zero()) continue;
      ++directions;
      auto fresh = upper_contour_sample(g, id, x, 1000, mix_seed(0xf7e54, static_cast<std::uint64_t>(t)));
      if (!cone_membership(d, fresh, x.block(id), 1e-7)) ++violations;
    }
  }
  return {violations == 0, std::to_string(kTrials) + " trials, " + std::to_string(directions) +
                               " directions, " + std::to_string(violations) + " violations"};
}

Outcome zero_in_hull_oracle() {
  Rng rng(8080);
  int agree = 0;
  int inside = 0;
  for (int t = 0; t < 1000; ++t) {
    const std::size_t dim = 1 + t % 2;
    const std::size_t count = 1 + rng.next() % 4;
    ConeGenerators gens{PlayerId{0}, {}, ConeProvenance::polyhedral};
    std::vector<std::vector<double>> raw;
    for (std::size_t k = 0; k < count; ++k) {
      const int step = static_cast<int>(rng.next() % 24);
      if (dim == 1) {
        raw.push_back({step % 2 ? 1.0 : -1.0});
      } else {
        const double a = step * std::numbers::pi / 12.0;
        raw.push_back({std::cos(a), std::sin(a)});
      }
      gens.directions.push_back({PlayerId{0}, raw.back()});
    }
    const bool expected = oracle::simplex_grid_min_norm(raw, 48) <= 0.065;
    inside += expected;
    agree += zero_in_hull(gens) == expected;
  }
  return {agree == 1000, std::to_string(agree) + "/1000 agree (" + std::to_string(inside) + " contain 0)"};
}

Outcome lhc_remark() {
  std::ostringstream out, err;
  int code = cli::run({"examples", "--name", "lhc-remark", "--run"}, out, err);
  auto checks = cli::example_checks("lhc-remark");
  const bool u = checks.at(0).certificate.passed;
  const bool v = !checks.at(1).certificate.passed;
  return {code == 0 && u && v, std::string("U ") + (u ? "passes" : "fails") + ", V " + (v ? "fails" : "passes")};
}

Outcome determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "ordgne_acceptance";
  fs::create_directories(dir);
  const std::vector<std::vector<std::string>> commands{
      {"examples", "--name", "trivial-pref", "--run"},
      {"examples", "--name", "coordinate-pref", "--run"},
      {"theorems", "--suite", "t1", "--instances", "50", "--seed", "7", "--grid", "0.02"},
      {"theorems", "--suite", "t2", "--instances", "20", "--seed", "42", "--grid", "0.05"},
      {"theorems", "--suite", "existence", "--instances", "100", "--seed", "42", "--grid", "0.05"},
  };
  auto strip_time = [](const std::string& text) {
    std::string out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
      if (line.find("\"wall_time_seconds\"") == std::string::npos) out += line + "\n";
    }
    return out;
  };
  int identical = 0;
  for (std::size_t i = 0; i < commands.size(); ++i) {
    std::string texts[2];
    for (int rep = 0; rep < 2; ++rep) {
      // Same path both times: the report echoes its command line.
      const std::string path = (dir / ("report_" + std::to_string(i) + ".json")).string();
      auto args = commands[i];
      args.insert(args.end(), {"--out", path});
      std::ostringstream out, err;
      (void)cli::run(args, out, err);
      texts[rep] = strip_time(read_file(path));
    }
    identical += !texts[0].empty() && texts[0] == texts[1];
  }
  fs::remove_all(dir);
  return {identical == static_cast<int>(commands.size()),
          std::to_string(identical) + "/" + std::to_string(commands.size()) + " report pairs byte-identical"};
}

}  // namespace

int main() {
  report(1, "counterexample (0,0)", 1.0, counterexample);
  report(2, "coordinate example", 5.0, coordinate_example);
  report(3, "theorem 1 suite", 60.0, theorem1_suite);
  report(4, "theorem 2 suite", 120.0, theorem2_suite);
  report(5, "existence suite", 600.0, existence_suite);
  report(6, "oracle equivalence", 0.0, oracle_equivalence);
  report(7, "cone validity", 0.0, cone_validity);
  report(8, "zero_in_hull vs simplex grid", 0.0, zero_in_hull_oracle);
  report(9, "lhc probe", 0.0, lhc_remark);
  report(10, "determinism", 0.0, determinism);
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
