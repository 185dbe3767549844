#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sspp/geometry.hpp"

namespace sspp {

// Self-interaction parameters of the sequential model on a window.
// theta is the probability weight for locations inside the union of past
// r-balls; 1 - theta applies outside. theta = 0.5 is the order-free case.
class ModelParams {
 public:
  ModelParams(double theta, double radius, Window window);

  double theta() const noexcept { return theta_; }
  double radius() const noexcept { return radius_; }
  const Window& window() const noexcept { return window_; }

  // max(theta, 1 - theta): the envelope constant of the two-valued density.
  double density_bound() const noexcept;

 private:
  double theta_;
  double radius_;
  Window window_;
};

// Ordered realisation x_1, ..., x_n with optional marks (DBH in cm).
// Points must lie in the window and be pairwise distinct.
class PointSequence {
 public:
  PointSequence(std::vector<Point> points, Window window,
                std::optional<std::vector<double>> marks = std::nullopt);

  std::size_t size() const noexcept { return points_.size(); }
  const Window& window() const noexcept { return window_; }
  std::span<const Point> points() const noexcept { return points_; }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  // First k points.
  std::span<const Point> prefix(std::size_t k) const { return std::span(points_).first(k); }
  const std::optional<std::vector<double>>& marks() const noexcept { return marks_; }

 private:
  std::vector<Point> points_;
  Window window_;
  std::optional<std::vector<double>> marks_;
};

// Number of past points within closed distance r of y.
std::size_t lagged_clustering(std::span<const Point> past, Point y, double r) noexcept;

// True when y lies in at least one closed r-ball around a past point.
bool in_past_union(std::span<const Point> past, Point y, double r) noexcept;

// theta when at least one past ball contains the location, else 1 - theta.
double self_interaction(std::size_t lagged_count, const ModelParams& params) noexcept;

// Integral of the self-interaction function over the window given the
// covered area of the past ball union: theta*A + (1-theta)*(|W| - A).
double normalizer(double covered_area, double theta, double window_area) noexcept;

// Same, reading the covered area off a raster that holds the past union.
double normalizer(const ModelParams& params, const CoverageRaster& raster);

// log density of the next location y given the past, whose r-ball union is
// held by `raster`.
double conditional_log_density(std::span<const Point> past, Point y,
                               const ModelParams& params, const CoverageRaster& raster);

// The first location is uniform on the window.
double first_point_log_density(Point x1, const Window& window);

// Full sequential log density: first-point term plus every conditional term.
double sequential_log_density(const PointSequence& seq, const ModelParams& params,
                              double cell_size);

// Self-interaction weight as a piecewise-constant function of distance from
// an existing tree, with the stem excluded near the origin.
struct PiecewiseSegment {
  double from;
  double to;  // +inf for the last segment
  double value;
};

struct PiOfRReport {
  double theta;
  double radius;
  double max_mark;          // largest DBH, cm
  double stem_radius;       // max_mark / 200, metres
  double stem_knot;         // max_mark / 100, metres: first knot of the segments
  std::vector<PiecewiseSegment> segments;
};

PiOfRReport pi_of_r_report(const ModelParams& params, double max_mark);

}  // namespace sspp
