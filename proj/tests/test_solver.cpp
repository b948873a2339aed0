#include <doctest.h>

#include <cmath>

#include "ordgne/corpus.hpp"
#include "ordgne/error.hpp"
#include "ordgne/qvi_solver.hpp"
#include "oracles.hpp"

using namespace ordgne;

TEST_CASE("solver config validation") {
  SolverConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.step = 0.0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = {};
  cfg.restarts = 0;
  CHECK_THROWS_AS(cfg.validate(), Error);
}

TEST_CASE("selection sources by variant") {
  GameSpec coord = example_coordinate_pref();
  auto s = selection_T(coord, Profile::from_stacked(coord, {0.2, -0.3}));
  CHECK(s.stacked == std::vector<double>{-1.0, -1.0});
  CHECK(s.sources[0] == SelectionSource::polyhedral);
  CHECK(s.all_nonzero());

  GameSpec trivial = example_trivial_pref();
  auto z = selection_T(trivial, Profile::from_stacked(trivial, {0.2, -0.3}));
  CHECK(z.stacked == std::vector<double>{0.0, 0.0});
  CHECK(z.all_full_space());
  CHECK_FALSE(z.all_nonzero());

  GameSpec quad = random_concave_quadratic(1, 2, 1);
  auto q = selection_T(quad, Profile::from_stacked(quad, {0.5, 0.0}));
  CHECK(q.sources[0] == SelectionSource::gradient);
  CHECK(q.stacked[0] == doctest::Approx(1.0));
}

TEST_CASE("natural residual") {
  GameSpec coord = example_coordinate_pref();
  Profile x = Profile::from_stacked(coord, {0.0, 0.95});
  std::vector<double> g{-1.0, -1.0};
  CHECK(natural_residual(coord, x, g, 0.1) == doctest::Approx(std::hypot(0.1, 0.05)));
  Profile bad = Profile::from_stacked(coord, {2.0, 0.0});
  CHECK_THROWS_AS((void)natural_residual(coord, bad, g, 0.1), Error);
}

TEST_CASE("a fixed-point step stays in K(x)") {
  GameSpec ad = arrow_debreu_instance(1);
  SolverConfig cfg;
  Profile x = Profile::from_stacked(ad, {0.3, 0.4});
  for (int k = 0; k < 20; ++k) {
    x = fixed_point_step(ad, x, cfg);
    CHECK(in_own_feasible_set(ad, x));
  }
}

TEST_CASE("coordinate example converges to (1, 1)") {
  auto sol = solve_svip(example_coordinate_pref(), SolverConfig{});
  CHECK(sol.converged);
  CHECK(sol.point.stacked()[0] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(sol.point.stacked()[1] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("quadratic games converge to the analytic equilibrium") {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    auto params = random_quadratic_params(seed, 2, 1);
    auto expected = oracle::quadratic_two_player_equilibrium(params);
    REQUIRE(expected.size() == 2);
    auto sol = solve_svip(quadratic_game(params), SolverConfig{});
    CAPTURE(seed);
    CHECK(sol.converged);
    CHECK(std::hypot(sol.point.stacked()[0] - expected[0], sol.point.stacked()[1] - expected[1]) <= 1e-6);
  }
}

TEST_CASE("solver results are deterministic and thread independent") {
  GameSpec g = random_concave_quadratic(12, 3, 1);
  SolverConfig cfg;
  cfg.record_trace = true;
  auto a = solve_svip(g, cfg);
  auto b = solve_svip(g, cfg);
  cfg.threads = 4;
  auto c = solve_svip(g, cfg);
  CHECK(a.point == b.point);
  CHECK(a.point == c.point);
  CHECK(a.restart == c.restart);
  REQUIRE(a.trace.size() == c.trace.size());
  CHECK(a.trace.back().residual == c.trace.back().residual);
}

TEST_CASE("start points are interior and seeded") {
  GameSpec g = random_concave_quadratic(2, 2, 2);
  auto p = start_point(g, 42, 3);
  for (double v : p) {
    CHECK(v > -1.0);
    CHECK(v < 1.0);
  }
  CHECK(p == start_point(g, 42, 3));
  CHECK(p != start_point(g, 42, 4));
}
