#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "sspp/error.hpp"
#include "sspp/geometry.hpp"

using namespace sspp;
using std::numbers::pi;

TEST_CASE("distance") {
  CHECK(distance({0, 0}, {3, 4}) == doctest::Approx(5.0));
  CHECK(distance({1, 1}, {1, 1}) == 0.0);
  CHECK(distance({0.90, 0.50}, {0.60, 0.92}) == doctest::Approx(std::sqrt(0.2664)).epsilon(1e-12));
  CHECK(distance({0.90, 0.50}, {0.60, 0.92}) == doctest::Approx(0.5161).epsilon(1e-3));
  CHECK(distance({2, -1}, {-3, 5}) == distance({-3, 5}, {2, -1}));
}

TEST_CASE("window validation") {
  CHECK_THROWS_AS(Window(0, 0, 0, 1), Error);
  CHECK_THROWS_AS(Window(0, 1, 1, 0), Error);
  CHECK_THROWS_AS(Window(0, 0, INFINITY, 1), Error);
  const Window w(0, 0, 25, 25);
  CHECK(w.area() == 625.0);
  CHECK(w.contains({25, 0}));
  CHECK_FALSE(w.strictly_contains({25, 0}));
  CHECK(default_cell_size(w) == 0.125);
}

TEST_CASE("raster construction") {
  const CoverageRaster unit(Window(0, 0, 1, 1), 0.01);
  CHECK(unit.columns() == 100);
  CHECK(unit.rows() == 100);
  CHECK(unit.covered_area() == 0.0);
  CHECK(unit.covered_count() == 0);

  const CoverageRaster plot(Window(0, 0, 25, 25), 0.125);
  CHECK(plot.columns() == 200);
  CHECK(plot.rows() == 200);

  SUBCASE("invalid discretization") {
    const Window w(0, 0, 1, 1);
    CHECK_THROWS_AS(CoverageRaster(w, 2.0), Error);
    CHECK_THROWS_AS(CoverageRaster(w, 1.0), Error);
    CHECK_THROWS_AS(CoverageRaster(w, 0.0), Error);
    CHECK_THROWS_AS(CoverageRaster(w, -0.1), Error);
  }
}

TEST_CASE("clipped cells sum to the window area") {
  const Window w(0, 0, 1, 0.7);
  CoverageRaster raster(w, 0.3);
  CHECK(raster.columns() == 4);
  CHECK(raster.rows() == 3);
  CHECK(raster.cell_area(3, 2) == doctest::Approx(0.1 * 0.1));
  raster.add_disc({0.5, 0.35}, 10.0);
  CHECK(raster.covered_count() == 12);
  CHECK(raster.covered_area() == doctest::Approx(0.7).epsilon(1e-14));
}

TEST_CASE("add_disc") {
  CoverageRaster raster(Window(0, 0, 25, 25), 0.125);
  const DiscUpdate first = raster.add_disc({12.5, 12.5}, 2.0);
  CHECK(first.newly_covered == doctest::Approx(4 * pi).epsilon(0.01));
  CHECK(first.disc_area == first.newly_covered);
  const DiscUpdate second = raster.add_disc({12.5, 12.5}, 2.0);
  CHECK(second.newly_covered == 0.0);
  CHECK(raster.covered_area() == first.newly_covered);
  CHECK_THROWS_AS(raster.add_disc({1, 1}, 0.0), Error);
  CHECK_THROWS_AS(raster.add_disc({1, 1}, -1.0), Error);
}

TEST_CASE("discs centred outside the window only cover their in-window part") {
  CoverageRaster raster(Window(0, 0, 1, 1), 0.005);
  raster.add_disc({-0.1, 0.5}, 0.2);
  // Circular segment of height 0.1 on a radius-0.2 disc.
  const double r = 0.2, hgt = 0.1;
  const double segment = r * r * std::acos((r - hgt) / r) - (r - hgt) * std::sqrt(2 * r * hgt - hgt * hgt);
  CHECK(raster.covered_area() == doctest::Approx(segment).epsilon(0.03));
}

TEST_CASE("two overlapping discs agree with a dart oracle") {
  const Window w(-3, -3, 4, 3);
  const std::vector<Point> centers = {{0, 0}, {1, 0}};
  const double r = 0.6;
  CoverageRaster raster(w, 0.01);
  for (const auto& c : centers) raster.add_disc(c, r);
  const std::size_t darts = 1'000'000;
  const double mc = oracle::dart_union_area(centers, r, w, darts, 7);
  const double p = mc / w.area();
  const double se = w.area() * std::sqrt(p * (1 - p) / static_cast<double>(darts));
  CHECK(std::abs(raster.covered_area() - mc) < 4 * se + 0.002);
  // And the closed form.
  const double exact = 2 * pi * r * r - oracle::lens_area(r, 1.0);
  CHECK(raster.covered_area() == doctest::Approx(exact).epsilon(0.005));
}

TEST_CASE("union_disc_area") {
  const Window w(0, 0, 10, 10);
  CHECK(union_disc_area({}, 1.0, w, 0.05) == 0.0);
  const std::vector<Point> disjoint = {{2, 2}, {5, 5}, {8, 2}, {2, 8}};
  const double r = 0.8;
  CHECK(union_disc_area(disjoint, r, w, 0.01) == doctest::Approx(4 * pi * r * r).epsilon(0.01));
  CHECK_THROWS_AS(union_disc_area(disjoint, 0.0, w, 0.05), Error);
}

TEST_CASE("single-disc convergence at h = r/50") {
  for (double r : {0.05, 0.1, 0.3}) {
    const double area = union_disc_area(std::vector<Point>{{0.5, 0.5}}, r, Window(0, 0, 1, 1), r / 50);
    CHECK(std::abs(area - pi * r * r) / (pi * r * r) < 0.01);
  }
}

TEST_CASE("coverage properties on random discs") {
  std::mt19937_64 gen(11);
  const Window w(0, 0, 3, 2);
  for (int trial = 0; trial < 20; ++trial) {
    auto pts = oracle::uniform_points(25, w, gen);
    // Some centres outside the window as well.
    pts.push_back({-0.2, 1.0});
    pts.push_back({3.1, 2.1});
    const double r = std::uniform_real_distribution<double>(0.05, 0.6)(gen);
    CoverageRaster raster(w, 0.02);
    double previous = 0.0;
    for (const auto& p : pts) {
      const DiscUpdate u = raster.add_disc(p, r);
      CHECK(raster.covered_area() >= previous);
      CHECK(raster.covered_area() - previous == doctest::Approx(u.newly_covered));
      CHECK(raster.covered_area() <= w.area() * (1 + 1e-12));
      previous = raster.covered_area();
    }
    auto shuffled = pts;
    std::shuffle(shuffled.begin(), shuffled.end(), gen);
    CoverageRaster other(w, 0.02);
    for (const auto& p : shuffled) other.add_disc(p, r);
    CHECK(other.covered_area() == raster.covered_area());
    CHECK(other.covered_count() == raster.covered_count());
    CHECK(union_disc_area(pts, r, w, 0.02) == raster.covered_area());
    CHECK(raster.covered_area() <= std::min(w.area(), pts.size() * pi * r * r * 1.05));
  }
}

TEST_CASE("probe_disc leaves the raster unchanged") {
  CoverageRaster raster(Window(0, 0, 1, 1), 0.01);
  raster.add_disc({0.4, 0.5}, 0.2);
  const double before = raster.covered_area();
  const DiscUpdate probe = raster.probe_disc({0.6, 0.5}, 0.2);
  CHECK(raster.covered_area() == before);
  const DiscUpdate added = raster.add_disc({0.6, 0.5}, 0.2);
  CHECK(probe.newly_covered == added.newly_covered);
  CHECK(probe.disc_area == added.disc_area);
}
