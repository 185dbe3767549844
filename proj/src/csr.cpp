#include "sspp/csr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

#include "sspp/error.hpp"
#include "sspp/parallel.hpp"
#include "sspp/random.hpp"

namespace sspp {

std::vector<double> default_r_grid(const Window& window, double r_max, std::size_t steps) {
  if (steps < 2) throw Error(ErrorCode::invalid_argument, "r grid needs at least two values");
  if (!(r_max > 0.0)) throw Error(ErrorCode::invalid_argument, "r_max must be positive");
  const double top = std::min(r_max, window.shorter_side() / 2.0);
  std::vector<double> grid(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    grid[i] = top * static_cast<double>(i) / static_cast<double>(steps - 1);
  }
  return grid;
}

namespace {

void validate_grid(std::span<const double> r_grid, const Window& window) {
  if (r_grid.empty()) throw Error(ErrorCode::invalid_argument, "empty r grid");
  for (std::size_t i = 0; i < r_grid.size(); ++i) {
    if (!(r_grid[i] >= 0.0) || (i > 0 && !(r_grid[i] > r_grid[i - 1]))) {
      throw Error(ErrorCode::invalid_argument,
                  "r grid must be non-negative and strictly increasing");
    }
  }
  const double limit = window.shorter_side() / 2.0;
  if (r_grid.back() > limit * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "r grid maximum " << r_grid.back() << " exceeds half the shorter window side ("
        << limit << ")";
    throw Error(ErrorCode::invalid_argument, msg.str());
  }
}

std::vector<double> k_values(std::span<const Point> points, double area,
                             std::span<const double> r_grid, std::vector<double>& scratch) {
  const std::size_t n = points.size();
  scratch.clear();
  const double r_top = r_grid.back();
  const double r_top2 = r_top * r_top;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d2 = squared_distance(points[i], points[j]);
      if (d2 <= r_top2) scratch.push_back(d2);
    }
  }
  std::sort(scratch.begin(), scratch.end());
  const double scale = area / (static_cast<double>(n) * static_cast<double>(n - 1));
  std::vector<double> k(r_grid.size());
  std::size_t count = 0;
  for (std::size_t g = 0; g < r_grid.size(); ++g) {
    const double r2 = r_grid[g] * r_grid[g];
    while (count < scratch.size() && scratch[count] <= r2) ++count;
    k[g] = scale * 2.0 * static_cast<double>(count);
  }
  return k;
}

}  // namespace

std::vector<double> k_estimate(std::span<const Point> points, const Window& window,
                               std::span<const double> r_grid) {
  if (points.size() < 2) {
    throw Error(ErrorCode::degenerate, "K function needs at least two points");
  }
  validate_grid(r_grid, window);
  std::vector<double> scratch;
  return k_values(points, window.area(), r_grid, scratch);
}

std::vector<double> centered_l_from_k(std::span<const double> k, std::span<const double> r_grid) {
  std::vector<double> out(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) {
    out[i] = std::sqrt(k[i] / std::numbers::pi) - r_grid[i];
  }
  return out;
}

LCurve centered_l(std::span<const Point> points, const Window& window,
                  std::span<const double> r_grid) {
  const auto k = k_estimate(points, window, r_grid);
  LCurve curve;
  curve.r_grid.assign(r_grid.begin(), r_grid.end());
  curve.values = centered_l_from_k(k, r_grid);
  curve.n_points = points.size();
  return curve;
}

std::vector<std::vector<std::size_t>> erl_sorted_ranks(
    const std::vector<std::vector<double>>& curves) {
  const std::size_t s = curves.size();
  if (s == 0) return {};
  const std::size_t len = curves.front().size();
  std::vector<std::vector<std::size_t>> ranks(s, std::vector<std::size_t>(len));
  std::vector<double> column(s);
  for (std::size_t i = 0; i < len; ++i) {
    for (std::size_t c = 0; c < s; ++c) column[c] = curves[c][i];
    std::vector<double> sorted = column;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t c = 0; c < s; ++c) {
      const auto below = static_cast<std::size_t>(
          std::upper_bound(sorted.begin(), sorted.end(), column[c]) - sorted.begin());
      const auto above = static_cast<std::size_t>(
          sorted.end() - std::lower_bound(sorted.begin(), sorted.end(), column[c]));
      ranks[c][i] = std::min(below, above);
    }
  }
  for (auto& r : ranks) std::sort(r.begin(), r.end());
  return ranks;
}

std::vector<std::size_t> erl_order(const std::vector<std::vector<std::size_t>>& sorted_ranks) {
  std::vector<std::size_t> order(sorted_ranks.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return sorted_ranks[a] < sorted_ranks[b];
  });
  return order;
}

GlobalEnvelopeResult erl_global_test(std::span<const Point> points, const Window& window,
                                     std::span<const double> r_grid,
                                     const CsrTestConfig& config) {
  if (config.n_sim < 99) {
    throw Error(ErrorCode::invalid_argument, "global envelope test needs at least 99 simulations");
  }
  if (!(config.alpha > 0.0 && config.alpha < 1.0)) {
    throw Error(ErrorCode::invalid_argument, "alpha must lie in (0, 1)");
  }
  if (points.size() < 2) {
    throw Error(ErrorCode::degenerate, "CSR test needs at least two points");
  }
  validate_grid(r_grid, window);

  const std::size_t n = points.size();
  const std::size_t s = config.n_sim + 1;
  // curves[0] is the data, curves[1..n_sim] the simulations.
  std::vector<std::vector<double>> curves(s);
  GlobalEnvelopeResult result;
  result.data_curve = centered_l(points, window, r_grid);
  curves[0] = result.data_curve.values;

  parallel_for(
      config.n_sim,
      [&](std::size_t j) {
        Rng rng = Rng::stream(config.seed, j);
        std::vector<Point> pattern(n);
        for (Point& p : pattern) {
          p = {rng.uniform(window.xmin(), window.xmax()), rng.uniform(window.ymin(), window.ymax())};
        }
        std::vector<double> scratch;
        curves[j + 1] = centered_l_from_k(k_values(pattern, window.area(), r_grid, scratch), r_grid);
      },
      config.threads);

  const auto ranks = erl_sorted_ranks(curves);
  std::size_t as_extreme = 0;
  for (std::size_t c = 1; c < s; ++c) {
    if (ranks[c] <= ranks[0]) ++as_extreme;
    if (ranks[c] == ranks[0]) ++result.ties;
  }
  result.p_value = static_cast<double>(1 + as_extreme) / static_cast<double>(s);
  result.n_sim = config.n_sim;
  result.alpha = config.alpha;
  result.seed = config.seed;

  const auto order = erl_order(ranks);
  const auto excluded = static_cast<std::size_t>(
      std::floor(config.alpha * static_cast<double>(s) + 1e-9));
  const std::size_t len = r_grid.size();
  result.lower.assign(len, std::numeric_limits<double>::infinity());
  result.upper.assign(len, -std::numeric_limits<double>::infinity());
  for (std::size_t pos = excluded; pos < s; ++pos) {
    const std::size_t c = order[pos];
    if (c == 0) continue;
    for (std::size_t i = 0; i < len; ++i) {
      result.lower[i] = std::min(result.lower[i], curves[c][i]);
      result.upper[i] = std::max(result.upper[i], curves[c][i]);
    }
  }
  return result;
}

}  // namespace sspp
