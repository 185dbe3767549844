#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sspp/geometry.hpp"

namespace sspp {

// `steps` equally spaced values on [0, min(r_max, shorter side / 2)].
std::vector<double> default_r_grid(const Window& window, double r_max = 5.0,
                                   std::size_t steps = 513);

// Ripley's K without edge correction:
// |W| / (n (n-1)) * #{ordered pairs i != j : |x_i - x_j| <= r}.
std::vector<double> k_estimate(std::span<const Point> points, const Window& window,
                               std::span<const double> r_grid);

struct LCurve {
  std::vector<double> r_grid;
  std::vector<double> values;  // sqrt(K(r) / pi) - r
  std::size_t n_points = 0;
};

LCurve centered_l(std::span<const Point> points, const Window& window,
                  std::span<const double> r_grid);

// sqrt(K / pi) - r for precomputed K values.
std::vector<double> centered_l_from_k(std::span<const double> k, std::span<const double> r_grid);

// Extreme-rank-length ordering of a set of curves (curves[c][i]).
//
// For every argument i, each curve gets the two-sided extreme rank
// min(#{c' : v_c' <= v_c}, #{c' : v_c' >= v_c}); ties count towards both
// sides, so tied values are never ranked as extreme. Each curve's ranks are
// then sorted ascending, and curves compare lexicographically on the sorted
// vectors: smaller means more extreme.
std::vector<std::vector<std::size_t>> erl_sorted_ranks(
    const std::vector<std::vector<double>>& curves);

// Curve indices from most to least extreme; equal rank vectors keep index
// order.
std::vector<std::size_t> erl_order(const std::vector<std::vector<std::size_t>>& sorted_ranks);

struct GlobalEnvelopeResult {
  LCurve data_curve;
  std::vector<double> lower;
  std::vector<double> upper;
  double p_value = 1.0;
  std::size_t n_sim = 0;
  double alpha = 0.05;
  std::uint64_t seed = 0;
  std::size_t ties = 0;  // simulations whose rank vector equals the data's
  const char* ordering = "erl";
};

struct CsrTestConfig {
  std::size_t n_sim = 4999;
  double alpha = 0.05;
  std::uint64_t seed = 0;
  std::size_t threads = 0;
};

// Global envelope test of complete spatial randomness with the centred
// L-function. Simulations are binomial patterns with the observed number of
// points. p = (1 + #{simulations at least as extreme as the data}) /
// (n_sim + 1). The band is the pointwise range of the simulated curves left
// after removing the floor(alpha * (n_sim + 1)) most extreme of all curves.
GlobalEnvelopeResult erl_global_test(std::span<const Point> points, const Window& window,
                                     std::span<const double> r_grid,
                                     const CsrTestConfig& config);

}  // namespace sspp
