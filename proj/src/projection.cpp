#include "ordgne/projection.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>

#include <Eigen/Dense>

#include "ordgne/error.hpp"

namespace ordgne {

namespace {

void clamp_into(std::vector<double>& y, std::span<const Interval> box) {
  for (std::size_t i = 0; i < box.size(); ++i) y[i] = std::clamp(y[i], box[i].lower, box[i].upper);
}

void project_halfspace(std::vector<double>& y, const Halfspace& h) {
  double lhs = std::inner_product(h.normal.begin(), h.normal.end(), y.begin(), 0.0);
  if (lhs <= h.offset) return;
  double nn = std::inner_product(h.normal.begin(), h.normal.end(), h.normal.begin(), 0.0);
  if (nn == 0.0) return;
  double t = (lhs - h.offset) / nn;
  for (std::size_t i = 0; i < y.size(); ++i) y[i] -= t * h.normal[i];
}

double violation(std::span<const double> y, std::span<const Interval> box,
                 std::span<const Halfspace> halfspaces) {
  double worst = 0.0;
  for (std::size_t i = 0; i < box.size(); ++i) worst = std::max({worst, box[i].lower - y[i], y[i] - box[i].upper});
  for (const auto& h : halfspaces) {
    worst = std::max(worst, std::inner_product(h.normal.begin(), h.normal.end(), y.begin(), 0.0) - h.offset);
  }
  return worst;
}

// Constraint a·y ≤ b.
struct Row {
  std::vector<double> a;
  double b;
};

std::vector<Row> all_rows(std::span<const Interval> box, std::span<const Halfspace> halfspaces, std::size_t n) {
  std::vector<Row> rows;
  for (std::size_t i = 0; i < box.size(); ++i) {
    std::vector<double> e(n, 0.0);
    e[i] = 1.0;
    rows.push_back({e, box[i].upper});
    e[i] = -1.0;
    rows.push_back({e, -box[i].lower});
  }
  for (const auto& h : halfspaces) rows.push_back({h.normal, h.offset});
  return rows;
}

// Primal active-set method for min ½‖y - p‖² s.t. a_i·y ≤ b_i, started from a
// feasible `start`. The working set stays linearly independent because a
// constraint only enters when it blocks a step inside the current face.
// nullopt when the iteration cap is hit.
std::optional<std::vector<double>> polish(std::span<const double> point, const std::vector<Row>& rows,
                                          std::span<const double> start) {
  const auto n = static_cast<long>(point.size());
  const std::size_t m = rows.size();
  const Eigen::VectorXd p = Eigen::Map<const Eigen::VectorXd>(point.data(), n);
  auto row = [&](std::size_t r) { return Eigen::Map<const Eigen::VectorXd>(rows[r].a.data(), n); };
  Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(start.data(), n);

  std::vector<std::size_t> work;
  auto independent_with = [&](std::size_t r) {
    Eigen::MatrixXd a(static_cast<long>(work.size()) + 1, n);
    for (std::size_t i = 0; i < work.size(); ++i) a.row(static_cast<long>(i)) = row(work[i]).transpose();
    a.row(static_cast<long>(work.size())) = row(r).transpose();
    return Eigen::FullPivLU<Eigen::MatrixXd>(a).rank() == static_cast<long>(work.size()) + 1;
  };
  for (std::size_t r = 0; r < m; ++r) {
    if (std::abs(row(r).dot(y) - rows[r].b) <= 1e-12 && static_cast<long>(work.size()) < n && independent_with(r)) {
      work.push_back(r);
    }
  }

  for (std::size_t it = 0; it < 10 * (m + 1); ++it) {
    // Minimizer on the face {a_W·y = b_W}: y* = p - A_Wᵀλ.
    const auto k = static_cast<long>(work.size());
    Eigen::VectorXd lambda(k);
    Eigen::VectorXd target = p;
    if (k > 0) {
      Eigen::MatrixXd a(k, n);
      Eigen::VectorXd b(k);
      for (long i = 0; i < k; ++i) {
        a.row(i) = row(work[static_cast<std::size_t>(i)]).transpose();
        b[i] = rows[work[static_cast<std::size_t>(i)]].b;
      }
      lambda = (a * a.transpose()).fullPivLu().solve(a * p - b);
      target = p - a.transpose() * lambda;
    }
    const Eigen::VectorXd d = target - y;
    if (d.norm() <= 1e-14) {
      Eigen::Index worst = 0;
      if (k == 0 || lambda.minCoeff(&worst) >= -1e-14) return std::vector<double>(y.data(), y.data() + n);
      work.erase(work.begin() + worst);
      continue;
    }
    double alpha = 1.0;
    std::optional<std::size_t> blocking;
    for (std::size_t r = 0; r < m; ++r) {
      if (std::find(work.begin(), work.end(), r) != work.end()) continue;
      const double ad = row(r).dot(d);
      if (ad <= 1e-15) continue;
      const double step = std::max(0.0, (rows[r].b - row(r).dot(y)) / ad);
      if (step < alpha) {
        alpha = step;
        blocking = r;
      }
    }
    y += alpha * d;
    if (blocking) work.push_back(*blocking);
  }
  return std::nullopt;
}

}  // namespace

std::vector<double> dykstra_project(std::span<const double> point, std::span<const Interval> box,
                                    std::span<const Halfspace> halfspaces,
                                    const DykstraOptions& options) {
  std::vector<double> y(point.begin(), point.end());
  if (halfspaces.empty()) {
    clamp_into(y, box);
    return y;
  }
  const std::size_t n = y.size();
  const std::size_t sets = halfspaces.size() + (box.empty() ? 0 : 1);
  std::vector<std::vector<double>> increments(sets, std::vector<double>(n, 0.0));
  std::vector<double> before(n);
  for (int cycle = 0; cycle < options.max_cycles; ++cycle) {
    double moved = 0.0;
    for (std::size_t s = 0; s < sets; ++s) {
      auto& inc = increments[s];
      for (std::size_t i = 0; i < n; ++i) before[i] = y[i] + inc[i];
      std::vector<double> next = before;
      if (!box.empty() && s == 0) {
        clamp_into(next, box);
      } else {
        project_halfspace(next, halfspaces[s - (box.empty() ? 0 : 1)]);
      }
      for (std::size_t i = 0; i < n; ++i) {
        inc[i] = before[i] - next[i];
        moved = std::max(moved, std::abs(next[i] - y[i]));
      }
      y = std::move(next);
    }
    if (moved < options.move_tol) break;
  }
  // Dykstra's iterate is only asymptotically feasible; finish with plain
  // alternating projections, which move it by at most the residual violation.
  for (int pass = 0; pass < 1000 && violation(y, box, halfspaces) > 1e-12; ++pass) {
    if (!box.empty()) clamp_into(y, box);
    for (const auto& h : halfspaces) project_halfspace(y, h);
  }
  if (!box.empty()) clamp_into(y, box);
  // Where constraints meet at small angles the capped iterate can still be
  // ~1e-3 from the projection; an active-set solve from it is exact.
  if (violation(y, box, halfspaces) <= 1e-9) {
    if (auto exact = polish(point, all_rows(box, halfspaces, n), y)) return *exact;
  }
  return y;
}

std::vector<double> project_feasible(const FeasibleRegion& region, std::span<const double> point) {
  if (region.empty) throw Error(ErrorKind::infeasible, "infeasible constraint set");
  if (point.size() != region.dim()) throw Error(ErrorKind::dimension_mismatch, "point has wrong dimension");
  if (region.dim() == 1) {
    // Exact: the region is an interval.
    double lo = region.box[0].lower;
    double hi = region.box[0].upper;
    for (const auto& h : region.halfspaces) {
      if (h.normal[0] > 0) {
        hi = std::min(hi, h.offset / h.normal[0]);
      } else if (h.normal[0] < 0) {
        lo = std::max(lo, h.offset / h.normal[0]);
      }
    }
    if (lo > hi) {
      if (lo - hi > 1e-9) throw Error(ErrorKind::infeasible, "infeasible constraint set");
      hi = lo;
    }
    return {std::clamp(point[0], lo, hi)};
  }
  return dykstra_project(point, region.box, region.halfspaces);
}

}  // namespace ordgne
