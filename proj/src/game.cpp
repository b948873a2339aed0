#include "ordgne/game.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ordgne/error.hpp"
#include "ordgne/polyhedron.hpp"
#include "ordgne/random.hpp"

namespace ordgne {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string player_name(PlayerId id) { return "player " + std::to_string(id.index); }

void check_player(const GameSpec& game, PlayerId id) {
  if (id.index >= game.player_count()) {
    throw Error(ErrorKind::invalid_argument, "no " + player_name(id));
  }
}

void check_block_dim(const GameSpec& game, PlayerId id, std::size_t size) {
  if (size != game.dim(id)) {
    throw Error(ErrorKind::dimension_mismatch, player_name(id) + " has dimension " +
                                                   std::to_string(game.dim(id)) + ", got " +
                                                   std::to_string(size));
  }
}

void check_profile(const GameSpec& game, const Profile& x) {
  if (x.stacked().size() != game.total_dim() || x.player_count() != game.player_count()) {
    throw Error(ErrorKind::dimension_mismatch, "profile does not match the game's dimensions");
  }
}

double finite_or_throw(double v, const std::string& what) {
  if (!std::isfinite(v)) throw Error(ErrorKind::evaluation, what + " is not finite");
  return v;
}

std::vector<ContourRow> evaluate_rows(const HalfspaceContourPreference& pref,
                                      std::span<const double> stacked) {
  std::vector<ContourRow> rows;
  rows.reserve(pref.rows.size());
  for (const auto& spec : pref.rows) {
    ContourRow row;
    row.normal.reserve(spec.coefficients.size());
    for (const auto& c : spec.coefficients) row.normal.push_back(c.evaluate(stacked));
    row.bound = spec.bound.evaluate(stacked);
    rows.push_back(std::move(row));
  }
  return rows;
}

ContourRow empty_row(std::size_t dim) { return {std::vector<double>(dim, 0.0), -1.0}; }

}  // namespace

// ---------------------------------------------------------------------------

CompiledExpression::CompiledExpression(std::string source) : source_(std::move(source)) {
  try {
    expr_ = Expression::parse(source_);
  } catch (const Error& e) {
    error_ = e.what();
  }
}

double CompiledExpression::evaluate(std::span<const double> vars) const {
  if (!expr_) throw Error(ErrorKind::evaluation, "unparsed expression '" + source_ + "': " + error_);
  const double v = expr_->evaluate(vars);
  if (!std::isfinite(v)) throw Error(ErrorKind::evaluation, "expression '" + source_ + "' is not finite");
  return v;
}

std::string preference_type_name(const Preference& p) {
  return std::visit(overloaded{
                        [](const UtilityPreference&) { return std::string("Utility"); },
                        [](const CoordinateOrderPreference&) { return std::string("CoordinateOrder"); },
                        [](const TrivialZeroPreference&) { return std::string("TrivialZero"); },
                        [](const HalfspaceContourPreference&) { return std::string("HalfspaceContour"); },
                        [](const ThresholdBandPreference&) { return std::string("ThresholdBand"); },
                    },
                    p);
}

GameSpec::GameSpec(std::vector<PlayerSpec> players, ConstraintMap constraints)
    : players_(std::move(players)), constraints_(std::move(constraints)) {
  offsets_.reserve(players_.size());
  for (const auto& p : players_) {
    offsets_.push_back(total_dim_);
    total_dim_ += p.dim;
  }
}

std::vector<Interval> GameSpec::stacked_box() const {
  std::vector<Interval> box;
  box.reserve(total_dim_);
  for (const auto& p : players_) box.insert(box.end(), p.box.begin(), p.box.end());
  return box;
}

// ---------------------------------------------------------------------------

Profile Profile::from_stacked(const GameSpec& game, std::vector<double> stacked) {
  if (stacked.size() != game.total_dim()) {
    throw Error(ErrorKind::dimension_mismatch,
                "profile has " + std::to_string(stacked.size()) + " entries, game needs " +
                    std::to_string(game.total_dim()));
  }
  Profile p;
  p.values_ = std::move(stacked);
  p.offsets_.reserve(game.player_count() + 1);
  for (std::size_t i = 0; i < game.player_count(); ++i) p.offsets_.push_back(game.offset(PlayerId{i}));
  p.offsets_.push_back(game.total_dim());
  return p;
}

std::span<const double> Profile::block(PlayerId id) const {
  if (id.index + 1 >= offsets_.size()) throw Error(ErrorKind::invalid_argument, "no " + player_name(id));
  return std::span<const double>(values_).subspan(offsets_[id.index],
                                                  offsets_[id.index + 1] - offsets_[id.index]);
}

std::vector<double> Profile::rivals(PlayerId id) const {
  auto own = block(id);
  std::vector<double> out;
  out.reserve(values_.size() - own.size());
  out.insert(out.end(), values_.begin(), values_.begin() + static_cast<long>(offsets_[id.index]));
  out.insert(out.end(), values_.begin() + static_cast<long>(offsets_[id.index + 1]), values_.end());
  return out;
}

std::vector<Block> Profile::blocks() const {
  std::vector<Block> out;
  for (std::size_t i = 0; i < player_count(); ++i) {
    auto b = block(PlayerId{i});
    out.push_back({PlayerId{i}, std::vector<double>(b.begin(), b.end())});
  }
  return out;
}

Profile Profile::with_block(PlayerId id, std::span<const double> values) const {
  auto own = block(id);
  if (own.size() != values.size()) throw Error(ErrorKind::dimension_mismatch, "block size mismatch");
  Profile copy = *this;
  std::copy(values.begin(), values.end(), copy.values_.begin() + static_cast<long>(offsets_[id.index]));
  return copy;
}

Profile assemble_profile(const GameSpec& game, std::vector<Block> blocks) {
  std::vector<const Block*> slot(game.player_count(), nullptr);
  for (const auto& b : blocks) {
    check_player(game, b.player);
    if (slot[b.player.index] != nullptr) {
      throw Error(ErrorKind::duplicate_player, "duplicate block for " + player_name(b.player));
    }
    check_block_dim(game, b.player, b.values.size());
    for (double v : b.values) finite_or_throw(v, "block entry");
    slot[b.player.index] = &b;
  }
  std::vector<double> stacked;
  stacked.reserve(game.total_dim());
  for (std::size_t i = 0; i < slot.size(); ++i) {
    if (slot[i] == nullptr) throw Error(ErrorKind::missing_player, "missing block for " + player_name(PlayerId{i}));
    stacked.insert(stacked.end(), slot[i]->values.begin(), slot[i]->values.end());
  }
  return Profile::from_stacked(game, std::move(stacked));
}

// ---------------------------------------------------------------------------

bool strictly_prefers(const GameSpec& game, PlayerId player, std::span<const double> y,
                      const Profile& x) {
  check_player(game, player);
  check_block_dim(game, player, y.size());
  check_profile(game, x);
  auto own = x.block(player);
  return std::visit(
      overloaded{
          [&](const UtilityPreference& u) {
            Profile moved = x.with_block(player, y);
            return u.utility.evaluate(moved.stacked()) > u.utility.evaluate(x.stacked());
          },
          [&](const CoordinateOrderPreference&) {
            for (std::size_t i = 0; i < y.size(); ++i) {
              if (!(y[i] > own[i])) return false;
            }
            return true;
          },
          [](const TrivialZeroPreference&) { return false; },
          [&](const HalfspaceContourPreference& h) {
            for (const auto& row : evaluate_rows(h, x.stacked())) {
              double lhs = std::inner_product(row.normal.begin(), row.normal.end(), y.begin(), 0.0);
              if (!(lhs < row.bound)) return false;
            }
            return true;
          },
          [&](const ThresholdBandPreference&) {
            bool y_in = std::all_of(y.begin(), y.end(), [](double v) { return v >= 0.0; });
            bool x_in = std::all_of(own.begin(), own.end(), [](double v) { return v >= 0.0; });
            return y_in && !x_in;
          },
      },
      game.player(player).preference);
}

std::optional<std::vector<ContourRow>> contour_rows(const GameSpec& game, PlayerId player,
                                                    const Profile& x) {
  check_player(game, player);
  check_profile(game, x);
  const std::size_t n = game.dim(player);
  auto own = x.block(player);
  using Rows = std::optional<std::vector<ContourRow>>;
  return std::visit(
      overloaded{
          [](const UtilityPreference&) -> Rows { return std::nullopt; },
          [&](const CoordinateOrderPreference&) -> Rows {
            std::vector<ContourRow> rows;
            for (std::size_t i = 0; i < n; ++i) {
              ContourRow r{std::vector<double>(n, 0.0), -own[i]};
              r.normal[i] = -1.0;
              rows.push_back(std::move(r));
            }
            return rows;
          },
          [&](const TrivialZeroPreference&) -> Rows { return std::vector<ContourRow>{empty_row(n)}; },
          [&](const HalfspaceContourPreference& h) -> Rows { return evaluate_rows(h, x.stacked()); },
          [&](const ThresholdBandPreference&) -> Rows {
            if (std::all_of(own.begin(), own.end(), [](double v) { return v >= 0.0; })) {
              return std::vector<ContourRow>{empty_row(n)};
            }
            std::vector<ContourRow> rows;
            for (std::size_t i = 0; i < n; ++i) {
              ContourRow r{std::vector<double>(n, 0.0), 0.0};
              r.normal[i] = -1.0;
              rows.push_back(std::move(r));
            }
            return rows;
          },
      },
      game.player(player).preference);
}

// ---------------------------------------------------------------------------

double FeasibleRegion::violation(std::span<const double> y) const {
  double worst = 0.0;
  for (std::size_t i = 0; i < box.size(); ++i) {
    worst = std::max({worst, box[i].lower - y[i], y[i] - box[i].upper});
  }
  for (const auto& h : halfspaces) {
    double lhs = std::inner_product(h.normal.begin(), h.normal.end(), y.begin(), 0.0);
    worst = std::max(worst, lhs - h.offset);
  }
  return worst;
}

FeasibleRegion feasible_region(const GameSpec& game, PlayerId player,
                               std::span<const double> rivals) {
  check_player(game, player);
  const std::size_t n_own = game.dim(player);
  if (rivals.size() != game.total_dim() - n_own) {
    throw Error(ErrorKind::dimension_mismatch, "rival vector has wrong dimension");
  }
  FeasibleRegion region;
  region.player = player;
  region.box = game.player(player).box;
  for (const auto& iv : region.box) {
    if (iv.lower > iv.upper) region.empty = true;
  }
  if (const auto* shared = std::get_if<SharedLinear>(&game.constraints())) {
    const std::size_t begin = game.offset(player);
    const std::size_t end = begin + n_own;
    for (std::size_t r = 0; r < shared->matrix.size(); ++r) {
      const auto& row = shared->matrix[r];
      Halfspace h;
      h.normal.assign(row.begin() + static_cast<long>(begin), row.begin() + static_cast<long>(end));
      h.offset = shared->rhs[r];
      std::size_t k = 0;
      for (std::size_t j = 0; j < row.size(); ++j) {
        if (j >= begin && j < end) continue;
        h.offset -= row[j] * rivals[k++];
      }
      bool zero_normal = std::all_of(h.normal.begin(), h.normal.end(), [](double v) { return v == 0.0; });
      if (zero_normal) {
        if (h.offset < -1e-9) region.empty = true;
        continue;
      }
      region.halfspaces.push_back(std::move(h));
    }
    if (!region.empty && !region.halfspaces.empty()) {
      region.empty = !linear_system_feasible(region_rows(region), n_own, 1e-12);
    }
  }
  return region;
}

FeasibleRegion feasible_region(const GameSpec& game, PlayerId player, const Profile& x) {
  return feasible_region(game, player, x.rivals(player));
}

bool in_own_feasible_set(const GameSpec& game, const Profile& x, double tol) {
  for (std::size_t i = 0; i < game.player_count(); ++i) {
    PlayerId id{i};
    auto region = feasible_region(game, id, x);
    if (region.empty || !region.contains(x.block(id), tol)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

std::vector<Block> upper_contour_sample(const GameSpec& game, PlayerId player, const Profile& x,
                                        std::size_t count, std::uint64_t seed,
                                        std::optional<std::vector<Interval>> region) {
  check_player(game, player);
  std::vector<Block> out;
  if (count == 0) return out;
  const std::vector<Interval>& box = region ? *region : game.player(player).box;
  check_block_dim(game, player, box.size());
  if (std::holds_alternative<TrivialZeroPreference>(game.player(player).preference)) return out;

  Rng rng(mix_seed(seed, player.index));
  const std::size_t attempts = std::max<std::size_t>(1024, 64 * count);
  std::vector<double> y(box.size());
  if (const auto* u = std::get_if<UtilityPreference>(&game.player(player).preference)) {
    // Same test as strictly_prefers, without re-evaluating θ(x) per draw.
    check_profile(game, x);
    const double base = u->utility.evaluate(x.stacked());
    std::vector<double> moved(x.stacked().begin(), x.stacked().end());
    const std::size_t off = game.offset(player);
    for (std::size_t a = 0; a < attempts && out.size() < count; ++a) {
      for (std::size_t i = 0; i < box.size(); ++i) y[i] = rng.uniform(box[i].lower, box[i].upper);
      std::copy(y.begin(), y.end(), moved.begin() + static_cast<long>(off));
      if (u->utility.evaluate(moved) > base) out.push_back({player, y});
    }
    return out;
  }
  for (std::size_t a = 0; a < attempts && out.size() < count; ++a) {
    for (std::size_t i = 0; i < box.size(); ++i) y[i] = rng.uniform(box[i].lower, box[i].upper);
    if (strictly_prefers(game, player, y, x)) out.push_back({player, y});
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

void check_expression(const CompiledExpression& e, std::size_t total_dim, const std::string& where,
                      std::vector<Issue>& issues) {
  if (!e.ok()) {
    issues.push_back({IssueSeverity::error, "unparsable expression", where + ": " + e.parse_error()});
    return;
  }
  if (e.max_variable() >= static_cast<long>(total_dim)) {
    issues.push_back({IssueSeverity::error, "unknown variable",
                      where + " references x" + std::to_string(e.max_variable() + 1) + " but the game has " +
                          std::to_string(total_dim) + " variables"});
  }
}

std::vector<double> random_point(Rng& rng, const std::vector<Interval>& box) {
  std::vector<double> p(box.size());
  for (std::size_t i = 0; i < box.size(); ++i) p[i] = rng.uniform(box[i].lower, box[i].upper);
  return p;
}

void sampling_checks(const GameSpec& game, std::vector<Issue>& issues) {
  constexpr std::size_t kProfiles = 8;
  constexpr std::size_t kContour = 16;
  Rng rng(0x5eedULL);
  const auto box = game.stacked_box();
  bool warned_empty_k = false;
  for (std::size_t s = 0; s < kProfiles; ++s) {
    Profile x = Profile::from_stacked(game, random_point(rng, box));
    for (std::size_t i = 0; i < game.player_count(); ++i) {
      PlayerId id{i};
      const auto& pref = game.player(id).preference;
      std::string who = player_name(id);
      try {
        if (const auto* u = std::get_if<UtilityPreference>(&pref)) {
          (void)u->utility.evaluate(x.stacked());
        }
        if (strictly_prefers(game, id, x.block(id), x)) {
          issues.push_back({IssueSeverity::error, "reflexive strict preference",
                            who + ": own strategy lies in its strict upper-contour set"});
          return;
        }
        if (std::holds_alternative<UtilityPreference>(pref)) {
          auto pts = upper_contour_sample(game, id, x, kContour, mix_seed(s, i));
          for (std::size_t k = 1; k < pts.size(); ++k) {
            std::vector<double> mid(pts[k].values.size());
            for (std::size_t j = 0; j < mid.size(); ++j) mid[j] = 0.5 * (pts[k].values[j] + pts[k - 1].values[j]);
            if (!strictly_prefers(game, id, mid, x)) {
              issues.push_back({IssueSeverity::warning, "non-convex upper contour",
                                who + ": sampled strict upper-contour set is not convex"});
              return;
            }
          }
        }
      } catch (const Error& e) {
        issues.push_back({IssueSeverity::error, "evaluation failure", who + ": " + e.what()});
        return;
      }
      if (!warned_empty_k && feasible_region(game, id, x).empty) {
        issues.push_back({IssueSeverity::warning, "empty feasible set",
                          who + ": K is empty for some rival profile in the box"});
        warned_empty_k = true;
      }
    }
  }
}

}  // namespace

std::vector<Issue> validate_spec(const GameSpec& game) {
  std::vector<Issue> issues;
  const std::size_t n = game.total_dim();
  if (game.player_count() == 0) issues.push_back({IssueSeverity::error, "no players", "game has no players"});
  for (std::size_t i = 0; i < game.player_count(); ++i) {
    const auto& p = game.player(PlayerId{i});
    std::string who = player_name(PlayerId{i});
    if (p.dim == 0) issues.push_back({IssueSeverity::error, "dimension mismatch", who + " has dimension 0"});
    if (p.box.size() != p.dim) {
      issues.push_back({IssueSeverity::error, "dimension mismatch",
                        who + " box has " + std::to_string(p.box.size()) + " intervals for dimension " +
                            std::to_string(p.dim)});
    }
    for (std::size_t k = 0; k < p.box.size(); ++k) {
      const auto& iv = p.box[k];
      if (!std::isfinite(iv.lower) || !std::isfinite(iv.upper)) {
        issues.push_back({IssueSeverity::error, "unbounded interval", who + " box interval " + std::to_string(k)});
      } else if (iv.lower > iv.upper) {
        issues.push_back({IssueSeverity::error, "empty interval",
                          who + " box interval " + std::to_string(k) + " has lower > upper"});
      }
    }
    if (const auto* u = std::get_if<UtilityPreference>(&p.preference)) {
      check_expression(u->utility, n, who + " utility", issues);
    } else if (const auto* h = std::get_if<HalfspaceContourPreference>(&p.preference)) {
      for (std::size_t r = 0; r < h->rows.size(); ++r) {
        const auto& row = h->rows[r];
        std::string where = who + " contour row " + std::to_string(r);
        if (row.coefficients.size() != p.dim) {
          issues.push_back({IssueSeverity::error, "dimension mismatch", where + " coefficient count"});
        }
        for (const auto& c : row.coefficients) check_expression(c, n, where, issues);
        check_expression(row.bound, n, where, issues);
      }
    }
  }
  if (const auto* shared = std::get_if<SharedLinear>(&game.constraints())) {
    bool shape_ok = shared->matrix.size() == shared->rhs.size();
    for (const auto& row : shared->matrix) shape_ok = shape_ok && row.size() == n;
    if (!shape_ok) {
      issues.push_back({IssueSeverity::error, "dimension mismatch",
                        "shared constraint matrix must be rows x " + std::to_string(n) + " with matching rhs"});
    }
  }
  if (!issues.empty()) return issues;

  if (const auto* shared = std::get_if<SharedLinear>(&game.constraints())) {
    std::vector<LinearRow> rows;
    const auto box = game.stacked_box();
    for (std::size_t i = 0; i < n; ++i) {
      LinearRow up{std::vector<double>(n, 0.0), box[i].upper, false};
      up.a[i] = 1.0;
      LinearRow lo{std::vector<double>(n, 0.0), -box[i].lower, false};
      lo.a[i] = -1.0;
      rows.push_back(std::move(up));
      rows.push_back(std::move(lo));
    }
    for (std::size_t r = 0; r < shared->matrix.size(); ++r) rows.push_back({shared->matrix[r], shared->rhs[r], false});
    if (!linear_system_feasible(std::move(rows), n, 1e-12)) {
      issues.push_back({IssueSeverity::error, "infeasible constraint set",
                        "no profile in the box satisfies the shared constraints"});
      return issues;
    }
  }
  sampling_checks(game, issues);
  return issues;
}

void require_valid(const GameSpec& game) {
  for (const auto& issue : validate_spec(game)) {
    if (issue.severity == IssueSeverity::error) {
      throw Error(ErrorKind::invalid_argument, issue.code + ": " + issue.message);
    }
  }
}

}  // namespace ordgne
