#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "ordgne/corpus.hpp"
#include "ordgne/error.hpp"
#include "ordgne/game.hpp"
#include "ordgne/random.hpp"
#include "oracles.hpp"

using namespace ordgne;

namespace {

GameSpec utility_pair(const std::string& e1, const std::string& e2) {
  std::vector<PlayerSpec> p;
  p.push_back({1, {{-1.0, 1.0}}, UtilityPreference{CompiledExpression(e1)}});
  p.push_back({1, {{-1.0, 1.0}}, UtilityPreference{CompiledExpression(e2)}});
  return GameSpec(std::move(p), BoxOnly{});
}

bool has_issue(const std::vector<Issue>& issues, const std::string& code) {
  return std::any_of(issues.begin(), issues.end(), [&](const Issue& i) { return i.code == code; });
}

std::vector<GameSpec> variant_games() {
  return {example_trivial_pref(), example_coordinate_pref(), example_lhc_remark().game,
          random_concave_quadratic(3, 2, 2), random_monotone_concave(5), oracle::halfspace_game(9),
          arrow_debreu_instance(4)};
}

}  // namespace

TEST_CASE("profile blocks and assembly") {
  GameSpec g = random_concave_quadratic(2, 3, 2);
  Profile x = Profile::from_stacked(g, {0.1, 0.2, 0.3, 0.4, 0.5, 0.6});
  CHECK(x.player_count() == 3);
  CHECK(x.block(PlayerId{1})[1] == 0.4);
  CHECK(x.rivals(PlayerId{1}) == std::vector<double>{0.1, 0.2, 0.5, 0.6});

  auto blocks = x.blocks();
  std::reverse(blocks.begin(), blocks.end());
  CHECK(assemble_profile(g, blocks) == x);

  auto missing = x.blocks();
  missing.pop_back();
  CHECK_THROWS_AS((void)assemble_profile(g, missing), Error);
  auto dup = x.blocks();
  dup[2].player = PlayerId{0};
  try {
    (void)assemble_profile(g, dup);
    FAIL("expected duplicate_player");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::duplicate_player);
  }
  auto wrong = x.blocks();
  wrong[0].values.push_back(1.0);
  try {
    (void)assemble_profile(g, wrong);
    FAIL("expected dimension_mismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::dimension_mismatch);
  }
}

TEST_CASE("assembling the blocks of a profile gives it back") {
  Rng rng(11);
  for (int t = 0; t < 50; ++t) {
    GameSpec g = random_concave_quadratic(100 + t, 2 + t % 2, 1 + t % 2);
    std::vector<double> v(g.total_dim());
    for (double& e : v) e = rng.uniform(-1, 1);
    Profile x = Profile::from_stacked(g, v);
    CHECK(assemble_profile(g, x.blocks()) == x);
  }
}

TEST_CASE("coordinate order strict part") {
  GameSpec g = example_coordinate_pref();
  Profile x = Profile::from_stacked(g, {0.0, 0.5});
  CHECK(strictly_prefers(g, PlayerId{0}, std::vector<double>{0.1}, x));
  CHECK_FALSE(strictly_prefers(g, PlayerId{0}, std::vector<double>{0.0}, x));
  CHECK_FALSE(strictly_prefers(g, PlayerId{1}, std::vector<double>{0.4}, x));
}

TEST_CASE("strict preference is irreflexive for every variant") {
  Rng rng(3);
  for (const auto& g : variant_games()) {
    const auto box = g.stacked_box();
    for (int t = 0; t < 40; ++t) {
      std::vector<double> v(box.size());
      for (std::size_t i = 0; i < v.size(); ++i) v[i] = rng.uniform(box[i].lower, box[i].upper);
      Profile x = Profile::from_stacked(g, v);
      for (std::size_t i = 0; i < g.player_count(); ++i) {
        PlayerId id{i};
        CHECK_FALSE(strictly_prefers(g, id, x.block(id), x));
      }
    }
  }
}

TEST_CASE("utility preferences are ordinal") {
  const std::string theta = "(-(x1 - 0.3*x2 - 0.2)^2)";
  GameSpec base = utility_pair(theta, "-(x2)^2");
  GameSpec cubic = utility_pair(theta + "^3 + " + theta, "-(x2)^2");
  GameSpec expo = utility_pair("exp(" + theta + ")", "-(x2)^2");
  Rng rng(17);
  int agreements = 0;
  for (int t = 0; t < 500; ++t) {
    Profile x = Profile::from_stacked(base, {rng.uniform(-1, 1), rng.uniform(-1, 1)});
    std::vector<double> y{rng.uniform(-1, 1)};
    const bool b = strictly_prefers(base, PlayerId{0}, y, x);
    CHECK(strictly_prefers(cubic, PlayerId{0}, y, x) == b);
    CHECK(strictly_prefers(expo, PlayerId{0}, y, x) == b);
    agreements += b;
  }
  CHECK(agreements > 0);
  CHECK(agreements < 500);
}

TEST_CASE("contour samples are strictly preferred and reproducible") {
  for (const auto& g : variant_games()) {
    Profile x = Profile::from_stacked(g, std::vector<double>(g.total_dim(), 0.0));
    if (!in_own_feasible_set(g, x)) continue;
    for (std::size_t i = 0; i < g.player_count(); ++i) {
      PlayerId id{i};
      auto a = upper_contour_sample(g, id, x, 200, 77);
      auto b = upper_contour_sample(g, id, x, 200, 77);
      REQUIRE(a.size() == b.size());
      for (std::size_t k = 0; k < a.size(); ++k) {
        CHECK(a[k].values == b[k].values);
        CHECK(strictly_prefers(g, id, a[k].values, x));
      }
    }
  }
  CHECK(upper_contour_sample(example_trivial_pref(), PlayerId{0},
                             Profile::from_stacked(example_trivial_pref(), {0.0, 0.0}), 10, 1)
            .empty());
}

TEST_CASE("feasible region of a shared constraint") {
  GameSpec g = arrow_debreu_instance(1);
  auto r = feasible_region(g, PlayerId{0}, std::vector<double>{0.25});
  REQUIRE(r.halfspaces.size() == 1);
  CHECK(r.halfspaces[0].normal == std::vector<double>{1.0});
  CHECK(r.halfspaces[0].offset == doctest::Approx(0.75));
  CHECK(r.contains(std::vector<double>{0.75}));
  CHECK_FALSE(r.contains(std::vector<double>{0.76}));
  CHECK_FALSE(r.empty);
  CHECK(feasible_region(g, PlayerId{0}, std::vector<double>{1.5}).empty);
  CHECK(in_own_feasible_set(g, Profile::from_stacked(g, {0.5, 0.5})));
  CHECK_FALSE(in_own_feasible_set(g, Profile::from_stacked(g, {0.6, 0.5})));
}

TEST_CASE("validate_spec issues") {
  CHECK(validate_spec(random_concave_quadratic(1, 2, 1)).empty());
  CHECK(has_issue(validate_spec(utility_pair("x9", "x2")), "unknown variable"));
  CHECK(has_issue(validate_spec(utility_pair("x1 +", "x2")), "unparsable expression"));
  CHECK(has_issue(validate_spec(GameSpec({}, BoxOnly{})), "no players"));

  std::vector<PlayerSpec> p;
  p.push_back({2, {{-1.0, 1.0}}, CoordinateOrderPreference{}});
  CHECK(has_issue(validate_spec(GameSpec(p, BoxOnly{})), "dimension mismatch"));
  p = {{1, {{1.0, -1.0}}, CoordinateOrderPreference{}}};
  CHECK(has_issue(validate_spec(GameSpec(p, BoxOnly{})), "empty interval"));
  p = {{1, {{0.0, INFINITY}}, CoordinateOrderPreference{}}};
  CHECK(has_issue(validate_spec(GameSpec(p, BoxOnly{})), "unbounded interval"));

  p = {{1, {{0.0, 1.0}}, CoordinateOrderPreference{}}, {1, {{0.0, 1.0}}, CoordinateOrderPreference{}}};
  CHECK(has_issue(validate_spec(GameSpec(p, SharedLinear{{{1.0, 1.0}}, {-1.0}})), "infeasible constraint set"));

  // A utility that is not quasi-concave in the own block.
  CHECK(has_issue(validate_spec(utility_pair("(x1)^2", "-(x2)^2")), "non-convex upper contour"));
  CHECK_THROWS_AS(require_valid(utility_pair("x9", "x2")), Error);
}
