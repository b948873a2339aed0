#pragma once

// Reference computations used only by the tests. Each one takes a different
// route from the library code it checks.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "ordgne/corpus.hpp"
#include "ordgne/game.hpp"
#include "ordgne/random.hpp"

namespace oracle {

using ordgne::Halfspace;
using ordgne::Interval;

// Projection onto box ∩ halfspaces by enumerating active sets and solving the
// KKT system of each: y = p - Aᵀλ, A y = b, λ ≥ 0, all constraints satisfied.
inline std::optional<std::vector<double>> kkt_projection(const std::vector<double>& p,
                                                         const std::vector<Interval>& box,
                                                         const std::vector<Halfspace>& halfspaces) {
  const std::size_t n = p.size();
  std::vector<Eigen::VectorXd> rows;
  std::vector<double> rhs;
  for (std::size_t i = 0; i < box.size(); ++i) {
    Eigen::VectorXd up = Eigen::VectorXd::Zero(static_cast<long>(n));
    up[static_cast<long>(i)] = 1.0;
    rows.push_back(up);
    rhs.push_back(box[i].upper);
    rows.push_back(-up);
    rhs.push_back(-box[i].lower);
  }
  for (const auto& h : halfspaces) {
    rows.push_back(Eigen::Map<const Eigen::VectorXd>(h.normal.data(), static_cast<long>(n)));
    rhs.push_back(h.offset);
  }
  const std::size_t m = rows.size();
  const Eigen::VectorXd pv = Eigen::Map<const Eigen::VectorXd>(p.data(), static_cast<long>(n));
  std::optional<std::vector<double>> best;
  double best_dist = std::numeric_limits<double>::infinity();
  for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
    std::vector<std::size_t> act;
    for (std::size_t j = 0; j < m; ++j) {
      if (mask & (std::size_t{1} << j)) act.push_back(j);
    }
    if (act.size() > n) continue;
    Eigen::VectorXd y = pv;
    if (!act.empty()) {
      Eigen::MatrixXd a(static_cast<long>(act.size()), static_cast<long>(n));
      Eigen::VectorXd b(static_cast<long>(act.size()));
      for (std::size_t k = 0; k < act.size(); ++k) {
        a.row(static_cast<long>(k)) = rows[act[k]].transpose();
        b[static_cast<long>(k)] = rhs[act[k]];
      }
      Eigen::MatrixXd gram = a * a.transpose();
      Eigen::FullPivLU<Eigen::MatrixXd> lu(gram);
      if (lu.rank() < static_cast<long>(act.size())) continue;
      Eigen::VectorXd lambda = lu.solve(a * pv - b);
      if ((lambda.array() < -1e-12).any()) continue;
      y = pv - a.transpose() * lambda;
    }
    bool feasible = true;
    for (std::size_t j = 0; j < m && feasible; ++j) feasible = rows[j].dot(y) <= rhs[j] + 1e-10;
    if (!feasible) continue;
    const double d = (y - pv).norm();
    if (d < best_dist) {
      best_dist = d;
      best = std::vector<double>(y.data(), y.data() + n);
    }
  }
  return best;
}

// Smallest norm of Σ w_i g_i over simplex weights on a lattice of step 1/steps.
inline double simplex_grid_min_norm(const std::vector<std::vector<double>>& gens, int steps) {
  const std::size_t k = gens.size();
  const std::size_t dim = gens.front().size();
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> w(k, 0);
  auto visit = [&](auto&& self, std::size_t idx, int left) -> void {
    if (idx + 1 == k) {
      w[idx] = left;
      double sq = 0.0;
      for (std::size_t d = 0; d < dim; ++d) {
        double s = 0.0;
        for (std::size_t i = 0; i < k; ++i) s += w[i] * gens[i][d];
        s /= steps;
        sq += s * s;
      }
      best = std::min(best, std::sqrt(sq));
      return;
    }
    for (int v = 0; v <= left; ++v) {
      w[idx] = v;
      self(self, idx + 1, left - v);
    }
  };
  visit(visit, 0, steps);
  return best;
}

// Unique equilibrium of a two-player scalar quadratic game: try every
// combination of "at lower bound / interior / at upper bound" and keep the
// one whose linear solution is consistent.
inline std::vector<double> quadratic_two_player_equilibrium(const ordgne::QuadraticParams& q) {
  const double m[2] = {q.coupling[0][0][0], q.coupling[1][0][0]};
  const double c[2] = {q.offsets[0][0], q.offsets[1][0]};
  for (int r0 = 0; r0 < 3; ++r0) {
    for (int r1 = 0; r1 < 3; ++r1) {
      // regime 0: x = -1, 1: x = m·x_other + c, 2: x = 1
      double x[2];
      const int r[2] = {r0, r1};
      if (r0 != 1 && r1 != 1) {
        x[0] = r0 == 0 ? -1.0 : 1.0;
        x[1] = r1 == 0 ? -1.0 : 1.0;
      } else if (r0 == 1 && r1 == 1) {
        const double det = 1.0 - m[0] * m[1];
        x[0] = (c[0] + m[0] * c[1]) / det;
        x[1] = (c[1] + m[1] * c[0]) / det;
      } else {
        const int fixed = r0 == 1 ? 1 : 0;
        const int free = 1 - fixed;
        x[fixed] = r[fixed] == 0 ? -1.0 : 1.0;
        x[free] = m[free] * x[fixed] + c[free];
      }
      bool ok = true;
      for (int i = 0; i < 2 && ok; ++i) {
        const double target = m[i] * x[1 - i] + c[i];
        if (r[i] == 0) ok = target <= -1.0 + 1e-12;
        if (r[i] == 2) ok = target >= 1.0 - 1e-12;
        if (r[i] == 1) ok = x[i] >= -1.0 - 1e-12 && x[i] <= 1.0 + 1e-12;
      }
      if (ok) return {x[0], x[1]};
    }
  }
  return {};
}

// Open-polyhedron contour sets built around the current own block:
// U^s(x) = {y : a_r·(y - x^ν) < -s_r} with s_r ≥ 0, so x^ν is never inside.
inline ordgne::GameSpec halfspace_game(std::uint64_t seed) {
  ordgne::Rng rng(ordgne::mix_seed(seed, 0x4a1f));
  std::vector<ordgne::PlayerSpec> players;
  const std::size_t dims[2] = {2, 1};
  std::size_t off = 0;
  for (std::size_t p = 0; p < 2; ++p) {
    ordgne::HalfspaceContourPreference pref;
    const std::size_t nrows = 1 + rng.next() % 2;
    for (std::size_t r = 0; r < nrows; ++r) {
      ordgne::HalfspaceRowSpec row;
      std::string bound;
      for (std::size_t k = 0; k < dims[p]; ++k) {
        const double a = rng.uniform(-1.0, 1.0);
        row.coefficients.emplace_back(ordgne::format_number(a));
        bound += (k ? " + " : "") + ordgne::format_number(a) + "*x" + std::to_string(off + k + 1);
      }
      const double shift = rng.uniform() < 0.5 ? 0.0 : rng.uniform(0.0, 0.3);
      bound += " - " + ordgne::format_number(shift);
      row.bound = ordgne::CompiledExpression(bound);
      pref.rows.push_back(std::move(row));
    }
    players.push_back({dims[p], std::vector<Interval>(dims[p], Interval{-1.0, 1.0}), pref});
    off += dims[p];
  }
  return ordgne::GameSpec(std::move(players), ordgne::BoxOnly{});
}

}  // namespace oracle
