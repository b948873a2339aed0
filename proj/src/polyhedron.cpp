#include "ordgne/polyhedron.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "ordgne/error.hpp"
#include "ordgne/game.hpp"

namespace ordgne {

namespace {

constexpr std::size_t kMaxRows = 20000;

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// Scales a row so its largest coefficient is 1; returns false for a zero row.
bool normalize(LinearRow& row) {
  double scale = max_abs(row.a);
  if (scale <= 1e-14) {
    std::fill(row.a.begin(), row.a.end(), 0.0);
    return false;
  }
  for (double& x : row.a) x /= scale;
  row.b /= scale;
  return true;
}

bool constant_row_holds(const LinearRow& row, double tol) {
  return row.strict ? row.b > tol : row.b >= -tol;
}

}  // namespace

bool linear_system_feasible(std::vector<LinearRow> rows, std::size_t dim, double tol) {
  std::vector<LinearRow> live;
  for (auto& row : rows) {
    if (normalize(row)) {
      live.push_back(std::move(row));
    } else if (!constant_row_holds(row, tol)) {
      return false;
    }
  }
  for (std::size_t k = 0; k < dim && !live.empty(); ++k) {
    std::vector<LinearRow> pos, neg, next;
    for (auto& row : live) {
      if (row.a[k] > 1e-14) {
        pos.push_back(std::move(row));
      } else if (row.a[k] < -1e-14) {
        neg.push_back(std::move(row));
      } else {
        row.a[k] = 0.0;
        next.push_back(std::move(row));
      }
    }
    for (const auto& p : pos) {
      for (const auto& n : neg) {
        LinearRow combo;
        double wp = 1.0 / p.a[k];
        double wn = -1.0 / n.a[k];
        combo.a.resize(dim);
        for (std::size_t j = 0; j < dim; ++j) combo.a[j] = wp * p.a[j] + wn * n.a[j];
        combo.a[k] = 0.0;
        combo.b = wp * p.b + wn * n.b;
        combo.strict = p.strict || n.strict;
        if (normalize(combo)) {
          next.push_back(std::move(combo));
        } else if (!constant_row_holds(combo, tol)) {
          return false;
        }
      }
    }
    if (next.size() > kMaxRows) {
      throw Error(ErrorKind::invalid_argument,
                  "linear system too large for exact elimination (" +
                      std::to_string(next.size()) + " rows)");
    }
    live = std::move(next);
  }
  return true;
}

std::vector<LinearRow> region_rows(const FeasibleRegion& region) {
  const std::size_t n = region.dim();
  std::vector<LinearRow> rows;
  for (std::size_t i = 0; i < n; ++i) {
    LinearRow upper{std::vector<double>(n, 0.0), region.box[i].upper, false};
    upper.a[i] = 1.0;
    LinearRow lower{std::vector<double>(n, 0.0), -region.box[i].lower, false};
    lower.a[i] = -1.0;
    rows.push_back(std::move(upper));
    rows.push_back(std::move(lower));
  }
  for (const auto& h : region.halfspaces) rows.push_back({h.normal, h.offset, false});
  return rows;
}

std::optional<std::vector<std::vector<double>>> enumerate_vertices(std::span<const LinearRow> rows,
                                                                   std::size_t dim,
                                                                   std::size_t budget,
                                                                   double tol) {
  const std::size_t m = rows.size();
  if (dim == 0 || m < dim) return std::vector<std::vector<double>>{};
  // C(m, dim) without overflow
  double combos = 1.0;
  for (std::size_t i = 0; i < dim; ++i) combos = combos * static_cast<double>(m - i) / static_cast<double>(i + 1);
  if (combos > static_cast<double>(budget)) return std::nullopt;

  std::vector<std::vector<double>> vertices;
  std::vector<std::size_t> pick(dim);
  for (std::size_t i = 0; i < dim; ++i) pick[i] = i;
  Eigen::MatrixXd a(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  Eigen::VectorXd b(static_cast<Eigen::Index>(dim));
  for (;;) {
    for (std::size_t r = 0; r < dim; ++r) {
      for (std::size_t c = 0; c < dim; ++c) a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[pick[r]].a[c];
      b(static_cast<Eigen::Index>(r)) = rows[pick[r]].b;
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
    if (lu.isInvertible()) {
      Eigen::VectorXd y = lu.solve(b);
      bool feasible = true;
      for (const auto& row : rows) {
        double lhs = 0.0;
        for (std::size_t c = 0; c < dim; ++c) lhs += row.a[c] * y(static_cast<Eigen::Index>(c));
        if (lhs > row.b + tol) {
          feasible = false;
          break;
        }
      }
      if (feasible) vertices.emplace_back(y.data(), y.data() + y.size());
    }
    // next combination
    std::size_t i = dim;
    while (i > 0 && pick[i - 1] == m - dim + (i - 1)) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < dim; ++j) pick[j] = pick[j - 1] + 1;
  }
  return vertices;
}

}  // namespace ordgne
