#include <doctest.h>

#include <cmath>

#include "ordgne/corpus.hpp"
#include "ordgne/error.hpp"
#include "ordgne/verifier.hpp"
#include "oracles.hpp"

using namespace ordgne;

TEST_CASE("grid axes") {
  auto a = grid_axis({-1.0, 1.0}, 0.5);
  CHECK(a == std::vector<double>{-1.0, -0.5, 0.0, 0.5, 1.0});
  auto b = grid_axis({0.0, 1.0}, 0.3);
  CHECK(b.size() == 5);
  CHECK(b.back() == 1.0);
  auto fine = grid_axis({-1.0, 1.0}, 0.05);
  CHECK(fine.size() == 41);
  CHECK(fine.back() == 1.0);
  // Nested: every coarse node is a fine node.
  auto f2 = grid_axis({-1.0, 1.0}, 0.025);
  for (double v : fine) {
    CHECK(std::any_of(f2.begin(), f2.end(), [&](double w) { return std::abs(v - w) < 1e-12; }));
  }
  CHECK_THROWS_AS((void)grid_axis({0.0, 1.0}, 0.0), Error);
}

TEST_CASE("grid check on the coordinate example") {
  GameSpec g = example_coordinate_pref();
  auto ok = check_gne_grid(g, Profile::from_stacked(g, {1.0, 1.0}), 0.05);
  CHECK(ok.passed);
  CHECK(ok.resolution == 0.05);
  auto bad = check_gne_grid(g, Profile::from_stacked(g, {0.0, 1.0}), 0.05);
  CHECK_FALSE(bad.passed);
  REQUIRE(bad.witness);
  CHECK(bad.witness->player == 0u);
  CHECK(bad.witness->point[0] > 0.0);
  CHECK_THROWS_AS((void)check_gne_grid(g, Profile::from_stacked(g, {1.5, 0.0}), 0.05), Error);
}

TEST_CASE("svip margin is exact on boxes and polytopes") {
  GameSpec coord = example_coordinate_pref();
  Profile x = Profile::from_stacked(coord, {1.0, 1.0});
  std::vector<double> inward{-1.0, -1.0};
  auto c = check_svip(coord, x, inward, 1e-9);
  CHECK(c.passed);
  CHECK(*c.margin == doctest::Approx(0.0));
  std::vector<double> outward{1.0, 0.0};
  auto f = check_svip(coord, x, outward, 1e-9);
  CHECK_FALSE(f.passed);
  CHECK(*f.margin == doctest::Approx(-2.0));

  GameSpec ad = arrow_debreu_instance(1);
  Profile y = Profile::from_stacked(ad, {0.5, 0.5});
  // K_1(0.5) = [0, 0.5]: min of -y1 is at 0.5, margin 0.
  std::vector<double> up{-1.0, -1.0};
  CHECK(svip_margin(ad, y, up) == doctest::Approx(0.0).epsilon(1e-12));
  std::vector<double> down{1.0, 1.0};
  CHECK(svip_margin(ad, y, down) == doctest::Approx(-1.0));
  std::vector<double> zero{0.0, 0.0};
  CHECK(check_svip(ad, y, zero, 1e-9).passed);
}

TEST_CASE("brute force finds the coordinate equilibrium only") {
  auto eqs = brute_force_gne(example_coordinate_pref(), 0.1);
  REQUIRE(eqs.size() == 1);
  CHECK(eqs[0].first.stacked()[0] == 1.0);
  CHECK(eqs[0].first.stacked()[1] == 1.0);
  CHECK(eqs[0].second.passed);
}

TEST_CASE("brute force agrees with pointwise grid checks") {
  for (std::uint64_t seed : {3u, 4u}) {
    GameSpec g = random_monotone_concave(seed);
    const double h = 0.25;
    auto eqs = brute_force_gne(g, h);
    std::size_t pointwise = 0;
    std::vector<std::vector<double>> axes;
    for (const auto& iv : g.stacked_box()) axes.push_back(grid_axis(iv, h));
    std::vector<std::size_t> idx(axes.size(), 0);
    while (true) {
      std::vector<double> p(axes.size());
      for (std::size_t k = 0; k < p.size(); ++k) p[k] = axes[k][idx[k]];
      Profile x = Profile::from_stacked(g, p);
      if (in_own_feasible_set(g, x) && check_gne_grid(g, x, h).passed) ++pointwise;
      std::size_t k = axes.size();
      while (k-- > 0 && ++idx[k] == axes[k].size()) idx[k] = 0;
      if (k == static_cast<std::size_t>(-1)) break;
    }
    CHECK(eqs.size() == pointwise);
  }
}

TEST_CASE("grid budget") {
  std::vector<PlayerSpec> p;
  for (int i = 0; i < 3; ++i) p.push_back({2, {{0.0, 1.0}, {0.0, 1.0}}, CoordinateOrderPreference{}});
  GameSpec g(std::move(p), BoxOnly{});
  CHECK_THROWS_AS((void)brute_force_gne(g, 0.01), Error);
}

TEST_CASE("theorem properties on small batches") {
  auto t1 = suite_instances(Suite::theorem1, 5, 7);
  auto c1 = theorem1_property(t1, SolverConfig{}, 0.05);
  CHECK(c1.passed);
  CHECK(c1.count("converged") == 5);

  auto t2 = suite_instances(Suite::theorem2, 4, 1);
  auto c2 = theorem2_property(t2, 0.1, 1e-6);
  CHECK(c2.passed);
  CHECK(c2.count("equilibria") >= 4);

  GameSpec trivial = example_trivial_pref();
  auto cx = theorem2_property(std::span(&trivial, 1), 0.1, 1e-6);
  CHECK_FALSE(cx.passed);
  CHECK(cx.expected_failure);
  REQUIRE(cx.witness);
  CHECK(cx.witness->point == std::vector<double>{0.0, 0.0});

  auto ex = suite_instances(Suite::existence, 8, 3);
  CHECK(existence_property(ex, 0.1).passed);
}

TEST_CASE("lhc probe on the remark maps") {
  LhcRemark r = example_lhc_remark();
  std::vector<std::vector<double>> bases{{-0.5, 0.0}, {0.0, 0.0}, {0.5, 0.0}};
  std::vector<std::vector<double>> dirs{{1.0, 0.0}, {-1.0, 0.0}};
  std::vector<double> steps;
  for (int k = 0; k < 20; ++k) steps.push_back(std::ldexp(0.1, -k));
  CHECK(lhc_probe(r.contour, bases, dirs, steps, 1e-9).passed);
  auto v = lhc_probe(r.closed_variant, bases, dirs, steps, 1e-9);
  CHECK_FALSE(v.passed);
  REQUIRE(v.witness);
  CHECK(v.witness->point[0] > 0.0);
}
