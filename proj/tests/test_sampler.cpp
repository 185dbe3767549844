#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sspp/error.hpp"
#include "sspp/random.hpp"
#include "sspp/sampler.hpp"

using namespace sspp;
using std::numbers::pi;

namespace {

SimulationConfig make_config(double theta, double r, std::size_t n, const Window& w,
                             std::uint64_t seed = 1) {
  SimulationConfig config{ModelParams(theta, r, w)};
  config.n_points = n;
  config.seed = seed;
  return config;
}

}  // namespace

TEST_CASE("random streams") {
  Rng a = Rng::stream(5, 0), b = Rng::stream(5, 0), c = Rng::stream(5, 1);
  for (int i = 0; i < 100; ++i) {
    const double u = a.uniform();
    CHECK(u == b.uniform());
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  CHECK(Rng::stream(5, 0).next_u64() != c.next_u64());
}

TEST_CASE("theta = 0.5 gives a uniform pattern") {
  const Window w(0, 0, 1, 1);
  const PointSequence seq = simulate(make_config(0.5, 0.1, 1000, w, 42));
  REQUIRE(seq.size() == 1000);
  int counts[4][4] = {};
  for (const Point& p : seq.points()) {
    ++counts[std::min(3, static_cast<int>(p.x * 4))][std::min(3, static_cast<int>(p.y * 4))];
  }
  double chi2 = 0.0;
  for (auto& row : counts)
    for (int c : row) chi2 += (c - 62.5) * (c - 62.5) / 62.5;
  CHECK(chi2 < 37.70);  // chi-square(15) upper 0.001 point
}

TEST_CASE("second point law with one fixed past point") {
  const Window w(0, 0, 1, 1);
  const double r = 0.1;
  const double disc = pi * r * r;
  for (double theta : {0.2, 0.8}) {
    SimulationConfig config = make_config(theta, r, 2, w, 3);
    config.start_points = {{0.5, 0.5}};
    const std::size_t draws = 20000;
    std::size_t inside = 0;
    for (std::size_t j = 0; j < draws; ++j) {
      const PointSequence s = simulate(config, j);
      CHECK(s[0] == Point{0.5, 0.5});
      inside += distance(s[1], s[0]) <= r ? 1 : 0;
    }
    const double p = theta * disc / (theta * disc + (1 - theta) * (1 - disc));
    const double se = std::sqrt(p * (1 - p) / draws);
    CHECK(std::abs(static_cast<double>(inside) / draws - p) < 4 * se);
  }
}

TEST_CASE("simulated sequences are valid and reproducible") {
  const Window w(0, 0, 25, 25);
  SimulationConfig config = make_config(0.95, 2.0, 120, w, 9);
  config.start_points = {{1, 1}, {24, 24}};
  const PointSequence a = simulate(config, 4);
  const PointSequence b = simulate(config, 4);
  const PointSequence c = simulate(config, 5);
  REQUIRE(a.size() == 120);
  CHECK(a[0] == Point{1, 1});
  CHECK(a[1] == Point{24, 24});
  CHECK(std::ranges::equal(a.points(), b.points()));
  CHECK_FALSE(std::ranges::equal(a.points(), c.points()));
  for (const Point& p : a.points()) CHECK(w.contains(p));
}

TEST_CASE("batches match single streams for any thread count") {
  const SimulationConfig config = make_config(0.3, 0.1, 50, Window(0, 0, 1, 1), 77);
  const auto one = simulate_batch(config, 6, 1);
  const auto four = simulate_batch(config, 6, 4);
  REQUIRE(one.size() == 6);
  for (std::size_t j = 0; j < 6; ++j) {
    CHECK(std::ranges::equal(one[j].points(), four[j].points()));
    CHECK(std::ranges::equal(one[j].points(), simulate(config, j).points()));
  }
}

TEST_CASE("simulation errors") {
  const Window w(0, 0, 1, 1);
  SUBCASE("stall") {
    SimulationConfig config = make_config(0.9999, 0.01, 50, w);
    config.max_rejects_per_point = 1;
    try {
      simulate(config);
      FAIL("expected a stall");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::simulation_stall);
    }
  }
  SUBCASE("invalid configurations") {
    SimulationConfig config = make_config(0.5, 0.1, 10, w);
    config.start_points = {{0.1, 0.1}, {0.2, 0.2}, {0.3, 0.3}};
    CHECK_THROWS_AS(simulate(config), Error);
    config.start_points = {{1.5, 0.1}};
    CHECK_THROWS_AS(simulate(config), Error);
    config.start_points = {};
    config.n_points = 0;
    CHECK_THROWS_AS(simulate(config), Error);
  }
}
