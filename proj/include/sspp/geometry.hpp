#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace sspp {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

double distance(Point a, Point b) noexcept;
double squared_distance(Point a, Point b) noexcept;

// Axis-aligned rectangular observation window. Construction validates
// that both side lengths are strictly positive and finite.
class Window {
 public:
  Window(double xmin, double ymin, double xmax, double ymax);

  double xmin() const noexcept { return xmin_; }
  double ymin() const noexcept { return ymin_; }
  double xmax() const noexcept { return xmax_; }
  double ymax() const noexcept { return ymax_; }
  double width() const noexcept { return xmax_ - xmin_; }
  double height() const noexcept { return ymax_ - ymin_; }
  double area() const noexcept { return width() * height(); }
  double shorter_side() const noexcept;

  // Closed rectangle membership.
  bool contains(Point p) const noexcept;
  bool strictly_contains(Point p) const noexcept;

  friend bool operator==(const Window&, const Window&) = default;

 private:
  double xmin_, ymin_, xmax_, ymax_;
};

// Resolution used when the caller does not pick one: 200 cells along the
// shorter side of the window.
double default_cell_size(const Window& window) noexcept;

struct DiscUpdate {
  double newly_covered = 0.0;  // area that switched from uncovered to covered
  double disc_area = 0.0;      // rasterised area of the disc inside the window
};

// Rasterised indicator of a union of discs intersected with the window.
//
// Cells are h x h squares anchored at (xmin, ymin); the last column and row
// are clipped to the window so the cell areas sum to the window area. A cell
// is covered when its midpoint (the midpoint of the clipped cell) lies in a
// closed disc. The covered area is derived from integer counters per cell
// class, so it does not depend on the order in which discs were added.
class CoverageRaster {
 public:
  CoverageRaster(const Window& window, double cell_size);

  const Window& window() const noexcept { return window_; }
  double cell_size() const noexcept { return h_; }
  std::size_t columns() const noexcept { return col_mid_.size(); }
  std::size_t rows() const noexcept { return row_mid_.size(); }

  std::size_t covered_count() const noexcept;
  double covered_area() const noexcept;
  bool is_covered(std::size_t col, std::size_t row) const noexcept {
    return cells_[row * columns() + col] != 0;
  }
  double cell_area(std::size_t col, std::size_t row) const noexcept {
    return col_width_[col] * row_height_[row];
  }
  Point cell_midpoint(std::size_t col, std::size_t row) const noexcept {
    return {col_mid_[col], row_mid_[row]};
  }

  // Marks every cell whose midpoint is within `radius` of `center`.
  DiscUpdate add_disc(Point center, double radius);

  // Rasterised |B(center, radius) ∩ W| and the part of it already covered,
  // without modifying the raster.
  DiscUpdate probe_disc(Point center, double radius) const;

  void clear() noexcept;

 private:
  template <typename CellVisitor>
  void visit_disc(Point center, double radius, CellVisitor&& visit) const;

  // 0: interior, 1: clipped column, 2: clipped row, 3: clipped corner.
  int cell_class(std::size_t col, std::size_t row) const noexcept {
    return (col + 1 == columns() ? 1 : 0) | (row + 1 == rows() ? 2 : 0);
  }

  Window window_;
  double h_;
  std::vector<double> col_mid_, row_mid_;
  std::vector<double> col_width_, row_height_;
  std::vector<std::uint8_t> cells_;
  std::size_t class_count_[4] = {0, 0, 0, 0};
};

// |∪ B(p, radius) ∩ W| on a fresh raster of the given resolution.
double union_disc_area(std::span<const Point> points, double radius,
                       const Window& window, double cell_size);

}  // namespace sspp
