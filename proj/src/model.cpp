#include "sspp/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "sspp/error.hpp"

namespace sspp {

ModelParams::ModelParams(double theta, double radius, Window window)
    : theta_(theta), radius_(radius), window_(window) {
  if (!(theta > 0.0 && theta < 1.0)) {
    std::ostringstream msg;
    msg << "theta must lie strictly inside (0, 1), got " << theta;
    throw Error(ErrorCode::invalid_argument, msg.str());
  }
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    std::ostringstream msg;
    msg << "interaction radius must be positive and finite, got " << radius;
    throw Error(ErrorCode::invalid_argument, msg.str());
  }
}

double ModelParams::density_bound() const noexcept { return std::max(theta_, 1.0 - theta_); }

PointSequence::PointSequence(std::vector<Point> points, Window window,
                             std::optional<std::vector<double>> marks)
    : points_(std::move(points)), window_(window), marks_(std::move(marks)) {
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const Point& p = points_[i];
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw Error(ErrorCode::invalid_argument,
                  "point " + std::to_string(i + 1) + " has non-finite coordinates");
    }
    if (!window_.contains(p)) {
      std::ostringstream msg;
      msg << "point " << i + 1 << " (" << p.x << ", " << p.y << ") lies outside the window";
      throw Error(ErrorCode::domain, msg.str());
    }
  }
  if (marks_ && marks_->size() != points_.size()) {
    throw Error(ErrorCode::invalid_argument, "marks and points differ in length");
  }
  std::vector<std::size_t> order(points_.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [this](std::size_t a, std::size_t b) {
    const Point& p = points_[a];
    const Point& q = points_[b];
    return p.x < q.x || (p.x == q.x && p.y < q.y);
  });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (points_[order[i]] == points_[order[i - 1]]) {
      const auto [a, b] = std::minmax(order[i - 1], order[i]);
      throw Error(ErrorCode::degenerate, "points " + std::to_string(a + 1) + " and " +
                                             std::to_string(b + 1) + " coincide");
    }
  }
}

std::size_t lagged_clustering(std::span<const Point> past, Point y, double r) noexcept {
  const double r2 = r * r;
  return static_cast<std::size_t>(std::count_if(
      past.begin(), past.end(), [&](const Point& x) { return squared_distance(x, y) <= r2; }));
}

bool in_past_union(std::span<const Point> past, Point y, double r) noexcept {
  const double r2 = r * r;
  return std::any_of(past.begin(), past.end(),
                     [&](const Point& x) { return squared_distance(x, y) <= r2; });
}

double self_interaction(std::size_t lagged_count, const ModelParams& params) noexcept {
  return lagged_count >= 1 ? params.theta() : 1.0 - params.theta();
}

double normalizer(double covered_area, double theta, double window_area) noexcept {
  // Same affine form as theta*A + (1-theta)*(|W|-A), arranged so that the A
  // term vanishes exactly at theta = 0.5.
  return (1.0 - theta) * window_area + (2.0 * theta - 1.0) * covered_area;
}

double normalizer(const ModelParams& params, const CoverageRaster& raster) {
  return normalizer(raster.covered_area(), params.theta(), params.window().area());
}

double conditional_log_density(std::span<const Point> past, Point y,
                               const ModelParams& params, const CoverageRaster& raster) {
  if (!params.window().contains(y)) {
    std::ostringstream msg;
    msg << "location (" << y.x << ", " << y.y << ") lies outside the window";
    throw Error(ErrorCode::domain, msg.str());
  }
  if (past.empty()) return first_point_log_density(y, params.window());
  const double weight = self_interaction(lagged_clustering(past, y, params.radius()), params);
  return std::log(weight) - std::log(normalizer(params, raster));
}

double first_point_log_density(Point x1, const Window& window) {
  if (!window.contains(x1)) {
    std::ostringstream msg;
    msg << "first location (" << x1.x << ", " << x1.y << ") lies outside the window";
    throw Error(ErrorCode::domain, msg.str());
  }
  return -std::log(window.area());
}

double sequential_log_density(const PointSequence& seq, const ModelParams& params,
                              double cell_size) {
  if (seq.size() == 0) {
    throw Error(ErrorCode::degenerate, "sequence is empty");
  }
  double total = first_point_log_density(seq[0], seq.window());
  CoverageRaster raster(seq.window(), cell_size);
  for (std::size_t k = 1; k < seq.size(); ++k) {
    raster.add_disc(seq[k - 1], params.radius());
    total += conditional_log_density(seq.prefix(k), seq[k], params, raster);
  }
  return total;
}

PiOfRReport pi_of_r_report(const ModelParams& params, double max_mark) {
  if (!(max_mark > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "maximum mark must be positive");
  }
  PiOfRReport report;
  report.theta = params.theta();
  report.radius = params.radius();
  report.max_mark = max_mark;
  report.stem_radius = max_mark / 200.0;
  report.stem_knot = max_mark / 100.0;
  const double inf = std::numeric_limits<double>::infinity();
  report.segments = {
      {0.0, report.stem_knot, 0.0},
      {report.stem_knot, params.radius(), params.theta()},
      {params.radius(), inf, 1.0 - params.theta()},
  };
  return report;
}

}  // namespace sspp
