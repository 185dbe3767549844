#include "sspp/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sspp/error.hpp"

namespace sspp {

double squared_distance(Point a, Point b) noexcept {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

double distance(Point a, Point b) noexcept { return std::hypot(a.x - b.x, a.y - b.y); }

Window::Window(double xmin, double ymin, double xmax, double ymax)
    : xmin_(xmin), ymin_(ymin), xmax_(xmax), ymax_(ymax) {
  const bool finite = std::isfinite(xmin) && std::isfinite(ymin) &&
                      std::isfinite(xmax) && std::isfinite(ymax);
  if (!finite || !(xmax > xmin) || !(ymax > ymin)) {
    std::ostringstream msg;
    msg << "invalid window [" << xmin << ", " << xmax << "] x [" << ymin << ", "
        << ymax << "]: sides must be positive and finite";
    throw Error(ErrorCode::invalid_argument, msg.str());
  }
}

double Window::shorter_side() const noexcept { return std::min(width(), height()); }

bool Window::contains(Point p) const noexcept {
  return p.x >= xmin_ && p.x <= xmax_ && p.y >= ymin_ && p.y <= ymax_;
}

bool Window::strictly_contains(Point p) const noexcept {
  return p.x > xmin_ && p.x < xmax_ && p.y > ymin_ && p.y < ymax_;
}

double default_cell_size(const Window& window) noexcept {
  return window.shorter_side() / 200.0;
}

namespace {

// Splits [lo, hi] into ceil((hi-lo)/h) cells, the last one clipped.
void build_axis(double lo, double hi, double h, std::vector<double>& mids,
                std::vector<double>& widths) {
  const double extent = hi - lo;
  // Guard against 1/0.01 style round-off producing an extra sliver cell.
  const auto n = static_cast<std::size_t>(std::ceil(extent / h - 1e-9));
  mids.resize(n);
  widths.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = lo + static_cast<double>(i) * h;
    const double b = (i + 1 == n) ? hi : lo + static_cast<double>(i + 1) * h;
    mids[i] = 0.5 * (a + b);
    widths[i] = b - a;
  }
}

}  // namespace

CoverageRaster::CoverageRaster(const Window& window, double cell_size)
    : window_(window), h_(cell_size) {
  if (!(cell_size > 0.0) || !std::isfinite(cell_size) ||
      !(cell_size < window.shorter_side())) {
    std::ostringstream msg;
    msg << "invalid discretization: cell size " << cell_size
        << " must be positive and smaller than the shorter window side "
        << window.shorter_side();
    throw Error(ErrorCode::invalid_argument, msg.str());
  }
  build_axis(window.xmin(), window.xmax(), h_, col_mid_, col_width_);
  build_axis(window.ymin(), window.ymax(), h_, row_mid_, row_height_);
  cells_.assign(columns() * rows(), 0);
}

std::size_t CoverageRaster::covered_count() const noexcept {
  return class_count_[0] + class_count_[1] + class_count_[2] + class_count_[3];
}

double CoverageRaster::covered_area() const noexcept {
  const double full_w = col_width_.front();
  const double full_h = row_height_.front();
  const double last_w = col_width_.back();
  const double last_h = row_height_.back();
  return static_cast<double>(class_count_[0]) * (full_w * full_h) +
         static_cast<double>(class_count_[1]) * (last_w * full_h) +
         static_cast<double>(class_count_[2]) * (full_w * last_h) +
         static_cast<double>(class_count_[3]) * (last_w * last_h);
}

void CoverageRaster::clear() noexcept {
  std::fill(cells_.begin(), cells_.end(), std::uint8_t{0});
  std::fill(std::begin(class_count_), std::end(class_count_), std::size_t{0});
}

template <typename CellVisitor>
void CoverageRaster::visit_disc(Point center, double radius, CellVisitor&& visit) const {
  const double r2 = radius * radius;
  const auto nx = static_cast<long>(columns());
  const auto ny = static_cast<long>(rows());
  // Candidate index ranges from the bounding box, widened by one cell so the
  // clipped last row/column is always examined; the exact test is per cell.
  auto index_range = [this](double lo, double hi, double origin, long n) {
    long a = static_cast<long>(std::floor((lo - origin) / h_)) - 1;
    long b = static_cast<long>(std::floor((hi - origin) / h_)) + 1;
    return std::pair<long, long>{std::max(a, 0L), std::min(b, n - 1)};
  };
  const auto [row_lo, row_hi] =
      index_range(center.y - radius, center.y + radius, window_.ymin(), ny);
  for (long row = row_lo; row <= row_hi; ++row) {
    const double dy = row_mid_[static_cast<std::size_t>(row)] - center.y;
    const double rest = r2 - dy * dy;
    if (rest < 0.0) continue;
    const double half = std::sqrt(rest);
    const auto [col_lo, col_hi] =
        index_range(center.x - half, center.x + half, window_.xmin(), nx);
    for (long col = col_lo; col <= col_hi; ++col) {
      const double dx = col_mid_[static_cast<std::size_t>(col)] - center.x;
      if (dx * dx + dy * dy <= r2) {
        visit(static_cast<std::size_t>(col), static_cast<std::size_t>(row));
      }
    }
  }
}

DiscUpdate CoverageRaster::add_disc(Point center, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw Error(ErrorCode::invalid_argument, "disc radius must be positive and finite");
  }
  DiscUpdate update;
  visit_disc(center, radius, [&](std::size_t col, std::size_t row) {
    const double a = cell_area(col, row);
    update.disc_area += a;
    auto& cell = cells_[row * columns() + col];
    if (cell == 0) {
      cell = 1;
      ++class_count_[cell_class(col, row)];
      update.newly_covered += a;
    }
  });
  return update;
}

DiscUpdate CoverageRaster::probe_disc(Point center, double radius) const {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw Error(ErrorCode::invalid_argument, "disc radius must be positive and finite");
  }
  DiscUpdate update;
  visit_disc(center, radius, [&](std::size_t col, std::size_t row) {
    const double a = cell_area(col, row);
    update.disc_area += a;
    if (!is_covered(col, row)) update.newly_covered += a;
  });
  return update;
}

double union_disc_area(std::span<const Point> points, double radius,
                       const Window& window, double cell_size) {
  if (!(radius > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "disc radius must be positive");
  }
  CoverageRaster raster(window, cell_size);
  for (const Point& p : points) raster.add_disc(p, radius);
  return raster.covered_area();
}

}  // namespace sspp
