#include "ordgne/normal_cone.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ordgne/error.hpp"
#include "ordgne/polyhedron.hpp"
#include "ordgne/projection.hpp"

namespace ordgne {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

std::vector<double> normalized(std::vector<double> v) {
  double n = norm2(v);
  for (double& x : v) x /= n;
  return v;
}

// Affine minimizer of ‖Σ α_i p_i‖ subject to Σ α_i = 1 over the corral.
std::vector<double> affine_minimizer(std::span<const std::vector<double>> points,
                                     const std::vector<std::size_t>& corral) {
  const auto k = static_cast<Eigen::Index>(corral.size());
  if (k == 1) return {1.0};
  const auto d = static_cast<Eigen::Index>(points[corral[0]].size());
  Eigen::Map<const Eigen::VectorXd> p0(points[corral[0]].data(), d);
  Eigen::MatrixXd basis(d, k - 1);
  for (Eigen::Index j = 1; j < k; ++j) {
    basis.col(j - 1) = Eigen::Map<const Eigen::VectorXd>(points[corral[static_cast<std::size_t>(j)]].data(), d) - p0;
  }
  Eigen::VectorXd beta = basis.colPivHouseholderQr().solve(-p0);
  std::vector<double> alpha(static_cast<std::size_t>(k));
  alpha[0] = 1.0 - beta.sum();
  for (Eigen::Index j = 1; j < k; ++j) alpha[static_cast<std::size_t>(j)] = beta(j - 1);
  return alpha;
}

std::vector<double> combine(std::span<const std::vector<double>> points,
                            const std::vector<std::size_t>& corral, const std::vector<double>& w) {
  std::vector<double> x(points[corral[0]].size(), 0.0);
  for (std::size_t i = 0; i < corral.size(); ++i) {
    for (std::size_t j = 0; j < x.size(); ++j) x[j] += w[i] * points[corral[i]][j];
  }
  return x;
}

}  // namespace

double Direction::norm() const { return norm2(vector); }

const char* to_string(ConeProvenance p) {
  switch (p) {
    case ConeProvenance::gradient:
      return "gradient";
    case ConeProvenance::polyhedral:
      return "polyhedral";
    case ConeProvenance::sampled:
      return "sampled";
    case ConeProvenance::full_space:
      return "full-space";
  }
  return "unknown";
}

std::optional<Direction> gradient_normal_direction(const GameSpec& game, PlayerId player,
                                                   const Profile& x) {
  const auto* pref = std::get_if<UtilityPreference>(&game.player(player).preference);
  if (pref == nullptr) return std::nullopt;
  const std::size_t begin = game.offset(player);
  const std::size_t n = game.dim(player);
  std::vector<double> probe(x.stacked().begin(), x.stacked().end());
  std::vector<double> descent(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double saved = probe[begin + i];
    probe[begin + i] = saved + kFiniteDifferenceStep;
    const double up = pref->utility.evaluate(probe);
    probe[begin + i] = saved - kFiniteDifferenceStep;
    const double down = pref->utility.evaluate(probe);
    probe[begin + i] = saved;
    descent[i] = -(up - down) / (2.0 * kFiniteDifferenceStep);
    if (!std::isfinite(descent[i])) throw Error(ErrorKind::evaluation, "non-finite gradient");
  }
  if (norm2(descent) <= kGradientTol) return std::nullopt;
  return Direction{player, normalized(std::move(descent))};
}

ConeGenerators polyhedral_normal_generators(PlayerId player, std::span<const ContourRow> rows,
                                            std::span<const double> xblock) {
  const std::size_t n = xblock.size();
  ConeGenerators out{player, {}, ConeProvenance::polyhedral};

  std::vector<LinearRow> system;
  for (const auto& r : rows) system.push_back({r.normal, r.bound, true});
  if (!linear_system_feasible(system, n)) {
    out.provenance = ConeProvenance::full_space;
    return out;
  }

  bool interior = true;
  bool outside = false;
  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double slack = dot(rows[i].normal, xblock) - rows[i].bound;
    if (slack > kActivityTol) outside = true;
    if (slack >= -kActivityTol) {
      interior = false;
      if (std::abs(slack) <= kActivityTol && norm2(rows[i].normal) > 0.0) active.push_back(i);
    }
  }
  if (interior) throw Error(ErrorKind::interior_point, "interior point has trivial cone");

  if (outside) {
    std::vector<Halfspace> closure;
    for (const auto& r : rows) closure.push_back({r.normal, r.bound});
    DykstraOptions opts;
    opts.max_cycles = 2000;
    auto p = dykstra_project(xblock, {}, closure, opts);
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = xblock[i] - p[i];
    if (norm2(d) > kZeroNormTol) {
      out.directions.push_back({player, normalized(std::move(d))});
      return out;
    }
  }
  for (std::size_t i : active) out.directions.push_back({player, normalized(rows[i].normal)});
  return out;
}

MinNormPoint min_norm_point(std::span<const std::vector<double>> points, double tol) {
  if (points.empty()) throw Error(ErrorKind::invalid_argument, "min_norm_point of an empty set");
  const std::size_t m = points.size();
  double max_sq = 0.0;
  std::size_t start = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < m; ++i) {
    const double sq = dot(points[i], points[i]);
    max_sq = std::max(max_sq, sq);
    if (sq < best) {
      best = sq;
      start = i;
    }
  }
  constexpr double kWeightEps = 1e-14;
  std::vector<std::size_t> corral{start};
  std::vector<double> lambda{1.0};
  std::vector<double> x = points[start];
  MinNormPoint result;
  const int max_iter = 1000 + 10 * static_cast<int>(m);
  int iter = 0;
  for (; iter < max_iter; ++iter) {
    const double xx = dot(x, x);
    if (xx <= tol * tol) break;
    std::size_t j = 0;
    double lowest = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
      const double v = dot(x, points[i]);
      if (v < lowest) {
        lowest = v;
        j = i;
      }
    }
    if (xx - lowest <= tol * std::max(1.0, max_sq)) break;
    if (std::find(corral.begin(), corral.end(), j) != corral.end()) break;
    corral.push_back(j);
    lambda.push_back(0.0);
    for (int minor = 0; minor < max_iter; ++minor) {
      auto alpha = affine_minimizer(points, corral);
      if (std::all_of(alpha.begin(), alpha.end(), [](double a) { return a > kWeightEps; })) {
        lambda = std::move(alpha);
        break;
      }
      double theta = 1.0;
      for (std::size_t i = 0; i < alpha.size(); ++i) {
        if (alpha[i] <= kWeightEps && lambda[i] - alpha[i] > 0.0) {
          theta = std::min(theta, lambda[i] / (lambda[i] - alpha[i]));
        }
      }
      for (std::size_t i = 0; i < alpha.size(); ++i) lambda[i] = theta * alpha[i] + (1.0 - theta) * lambda[i];
      std::vector<std::size_t> keep_idx;
      std::vector<double> keep_w;
      for (std::size_t i = 0; i < corral.size(); ++i) {
        if (lambda[i] > kWeightEps) {
          keep_idx.push_back(corral[i]);
          keep_w.push_back(lambda[i]);
        }
      }
      if (keep_idx.empty()) {
        keep_idx.push_back(corral.back());
        keep_w.push_back(1.0);
      }
      double total = std::accumulate(keep_w.begin(), keep_w.end(), 0.0);
      for (double& w : keep_w) w /= total;
      corral = std::move(keep_idx);
      lambda = std::move(keep_w);
      if (corral.size() == 1) break;
    }
    x = combine(points, corral, lambda);
  }
  result.point = x;
  result.norm = norm2(x);
  result.weights.assign(m, 0.0);
  for (std::size_t i = 0; i < corral.size(); ++i) result.weights[corral[i]] = lambda[i];
  result.iterations = iter;
  return result;
}

std::optional<Direction> sampled_separating_direction(std::span<const Block> samples,
                                                      std::span<const double> xblock) {
  if (samples.empty()) return std::nullopt;
  std::vector<std::vector<double>> diffs;
  diffs.reserve(samples.size());
  for (const auto& s : samples) {
    if (s.values.size() != xblock.size()) throw Error(ErrorKind::dimension_mismatch, "sample has wrong dimension");
    std::vector<double> d(xblock.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = s.values[i] - xblock[i];
    diffs.push_back(std::move(d));
  }
  auto mnp = min_norm_point(diffs, 1e-12);
  if (mnp.norm < kZeroNormTol) throw Error(ErrorKind::no_separator, "no separator found");
  std::vector<double> d(mnp.point.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = -mnp.point[i] / mnp.norm;
  return Direction{samples.front().player, std::move(d)};
}

bool cone_membership(const Direction& d, std::span<const Block> samples,
                     std::span<const double> xblock, double tol) {
  for (const auto& s : samples) {
    double v = 0.0;
    for (std::size_t i = 0; i < xblock.size(); ++i) v += d.vector[i] * (s.values[i] - xblock[i]);
    if (v > tol) return false;
  }
  return true;
}

bool zero_in_hull(const ConeGenerators& generators) {
  if (generators.provenance == ConeProvenance::full_space) return true;
  if (generators.directions.empty()) return false;
  std::vector<std::vector<double>> pts;
  pts.reserve(generators.directions.size());
  for (const auto& d : generators.directions) pts.push_back(d.vector);
  return min_norm_point(pts, 1e-12).norm <= kZeroNormTol;
}

}  // namespace ordgne
