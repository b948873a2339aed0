#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ordgne/expression.hpp"

namespace ordgne {

struct PlayerId {
  std::size_t index = 0;
  auto operator<=>(const PlayerId&) const = default;
};

struct Interval {
  double lower = 0.0;
  double upper = 0.0;
  [[nodiscard]] double width() const noexcept { return upper - lower; }
  bool operator==(const Interval&) const = default;
};

/// A single player's strategy sub-vector.
struct Block {
  PlayerId player;
  std::vector<double> values;
};

/// Expression text kept alongside its parse result, so malformed input can be
/// carried into a GameSpec and reported by validate_spec instead of throwing.
class CompiledExpression {
 public:
  CompiledExpression() = default;
  explicit CompiledExpression(std::string source);

  [[nodiscard]] const std::string& source() const noexcept { return source_; }
  [[nodiscard]] bool ok() const noexcept { return expr_.has_value(); }
  [[nodiscard]] const std::string& parse_error() const noexcept { return error_; }
  [[nodiscard]] long max_variable() const noexcept { return expr_ ? expr_->max_variable() : -1; }

  /// Throws Error{evaluation} when unparsed or when the value is not finite.
  [[nodiscard]] double evaluate(std::span<const double> vars) const;

 private:
  std::string source_;
  std::optional<Expression> expr_;
  std::string error_;
};

// Preference variants. Each describes the strict part of player ν's relation.

/// y ≻ x iff θ(y, x^{-ν}) > θ(x).
struct UtilityPreference {
  CompiledExpression utility;
};
/// y ≻ x iff every own component of y strictly exceeds x^ν.
struct CoordinateOrderPreference {};
/// Strict part is empty.
struct TrivialZeroPreference {};
/// One row a(x)·y < b(x) of an open polyhedral upper-contour set.
struct HalfspaceRowSpec {
  std::vector<CompiledExpression> coefficients;
  CompiledExpression bound;
};
struct HalfspaceContourPreference {
  std::vector<HalfspaceRowSpec> rows;
};
/// (a,b) ⪰ (x,y) iff a ≥ 0 and b ≥ y, induced on the own block:
/// y ≻ x iff y ≥ 0 componentwise and x^ν is not.
struct ThresholdBandPreference {};

using Preference = std::variant<UtilityPreference, CoordinateOrderPreference,
                                TrivialZeroPreference, HalfspaceContourPreference,
                                ThresholdBandPreference>;

[[nodiscard]] std::string preference_type_name(const Preference& p);

struct BoxOnly {};
/// Rows A·x ≤ b over the stacked profile; each player sees them with rivals fixed.
struct SharedLinear {
  std::vector<std::vector<double>> matrix;
  std::vector<double> rhs;
};
using ConstraintMap = std::variant<BoxOnly, SharedLinear>;

struct PlayerSpec {
  std::size_t dim = 1;
  std::vector<Interval> box;
  Preference preference;
};

class GameSpec {
 public:
  GameSpec() = default;
  GameSpec(std::vector<PlayerSpec> players, ConstraintMap constraints);

  [[nodiscard]] std::size_t player_count() const noexcept { return players_.size(); }
  [[nodiscard]] const std::vector<PlayerSpec>& players() const noexcept { return players_; }
  [[nodiscard]] const PlayerSpec& player(PlayerId id) const { return players_.at(id.index); }
  [[nodiscard]] const ConstraintMap& constraints() const noexcept { return constraints_; }
  [[nodiscard]] std::size_t total_dim() const noexcept { return total_dim_; }
  [[nodiscard]] std::size_t offset(PlayerId id) const { return offsets_.at(id.index); }
  [[nodiscard]] std::size_t dim(PlayerId id) const { return players_.at(id.index).dim; }
  /// Stacked box over all players.
  [[nodiscard]] std::vector<Interval> stacked_box() const;

 private:
  std::vector<PlayerSpec> players_;
  ConstraintMap constraints_;
  std::vector<std::size_t> offsets_;
  std::size_t total_dim_ = 0;
};

/// Full strategy vector, stored stacked in player order.
class Profile {
 public:
  Profile() = default;
  /// Splits `stacked` into blocks by the game's dimensions.
  static Profile from_stacked(const GameSpec& game, std::vector<double> stacked);

  [[nodiscard]] std::span<const double> stacked() const noexcept { return values_; }
  [[nodiscard]] std::size_t player_count() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  [[nodiscard]] std::span<const double> block(PlayerId id) const;
  [[nodiscard]] std::vector<double> rivals(PlayerId id) const;
  [[nodiscard]] std::vector<Block> blocks() const;
  /// Copy with player `id`'s block replaced.
  [[nodiscard]] Profile with_block(PlayerId id, std::span<const double> values) const;

  bool operator==(const Profile&) const = default;

 private:
  std::vector<double> values_;
  std::vector<std::size_t> offsets_;
};

/// Orders `blocks` by player and stacks them. Throws on missing or duplicate
/// players and on dimension mismatches.
[[nodiscard]] Profile assemble_profile(const GameSpec& game, std::vector<Block> blocks);

/// True iff y ∈ U^s_ν(x), that is (y, x^{-ν}) ≻_ν x.
[[nodiscard]] bool strictly_prefers(const GameSpec& game, PlayerId player,
                                    std::span<const double> y, const Profile& x);

/// Row a·y < b of an upper-contour set evaluated at a fixed profile.
struct ContourRow {
  std::vector<double> normal;
  double bound = 0.0;
};

/// Open-polyhedron description of U^s_ν(x) when the preference has one
/// (HalfspaceContour, CoordinateOrder, TrivialZero, ThresholdBand). The rows
/// describe the set up to closure; an empty set is encoded by the row 0·y < -1.
[[nodiscard]] std::optional<std::vector<ContourRow>> contour_rows(const GameSpec& game,
                                                                  PlayerId player,
                                                                  const Profile& x);

/// y is feasible for the player iff normal·y ≤ offset for every halfspace and y is in the box.
struct Halfspace {
  std::vector<double> normal;
  double offset = 0.0;
};

/// K_ν(x^{-ν}) = box ∩ halfspaces.
struct FeasibleRegion {
  PlayerId player;
  std::vector<Interval> box;
  std::vector<Halfspace> halfspaces;
  bool empty = false;

  [[nodiscard]] std::size_t dim() const noexcept { return box.size(); }
  /// Largest constraint violation of `y` (0 when feasible).
  [[nodiscard]] double violation(std::span<const double> y) const;
  [[nodiscard]] bool contains(std::span<const double> y, double tol = 1e-9) const {
    return violation(y) <= tol;
  }
};

/// `rivals` is the concatenation of every other player's block in player order.
[[nodiscard]] FeasibleRegion feasible_region(const GameSpec& game, PlayerId player,
                                             std::span<const double> rivals);
[[nodiscard]] FeasibleRegion feasible_region(const GameSpec& game, PlayerId player,
                                             const Profile& x);

/// True iff x^ν ∈ K_ν(x^{-ν}) for every player, within `tol`.
[[nodiscard]] bool in_own_feasible_set(const GameSpec& game, const Profile& x, double tol = 1e-9);

/// Seeded uniform rejection sample of U^s_ν(x) ∩ region (region defaults to the
/// player's box). Output order depends only on the inputs.
[[nodiscard]] std::vector<Block> upper_contour_sample(
    const GameSpec& game, PlayerId player, const Profile& x, std::size_t count,
    std::uint64_t seed, std::optional<std::vector<Interval>> region = std::nullopt);

enum class IssueSeverity { error, warning };

struct Issue {
  IssueSeverity severity = IssueSeverity::error;
  std::string code;
  std::string message;
};

[[nodiscard]] std::vector<Issue> validate_spec(const GameSpec& game);

/// Throws Error{invalid_argument} listing the first error-severity issue.
void require_valid(const GameSpec& game);

}  // namespace ordgne
