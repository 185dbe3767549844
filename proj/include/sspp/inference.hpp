#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sspp/model.hpp"

namespace sspp {

// Equally spaced values lo, lo + step, ... up to hi (inclusive within
// round-off).
struct GridSpec {
  double lo = 0.0;
  double hi = 0.0;
  double step = 0.0;

  std::vector<double> values() const;
};

struct FitConfig {
  GridSpec theta_grid{0.025, 0.975, 0.05};
  // r grid lower end; when empty it is derived from the data, see
  // default_r_lower().
  std::optional<double> r_lower;
  double r_upper = 5.0;
  double r_step = 0.1;
  bool refine = true;
  std::optional<double> cell_size;  // default: default_cell_size(window)
  std::size_t bootstrap_replicates = 20;  // 0 disables the bootstrap
  std::uint64_t seed = 0;
  // Re-evaluates the optimum at half the cell size.
  bool convergence_check = true;
  std::size_t threads = 0;
};

// Largest mark / 200 (DBH in cm to stem radius in m) when marks exist,
// otherwise 1e-3 times the shorter window side.
double default_r_lower(const PointSequence& seq);

// Everything the log-likelihood needs for one interaction radius. For a
// fixed radius, the inside/outside flags and covered areas A_k do not depend
// on theta, so one raster pass serves every theta.
struct RadiusProfile {
  double radius = 0.0;
  double window_area = 0.0;
  std::vector<std::uint8_t> inside;  // inside[k-1]: x_{k+1} falls in the union of x_1..x_k
  std::vector<double> covered;       // covered[k-1] = A_k

  std::size_t n_inside() const noexcept;
  std::size_t n_outside() const noexcept { return inside.size() - n_inside(); }
  double loglik(double theta) const;
};

RadiusProfile radius_profile(const PointSequence& seq, double radius, double cell_size);

// Log-likelihood over x_2..x_n (the uniform first-point term is omitted).
double log_likelihood(const PointSequence& seq, const ModelParams& params, double cell_size);

struct SurfacePoint {
  double theta;
  double radius;
  double loglik;
};

struct Interval {
  double lo;
  double hi;
};

struct ConvergenceCheck {
  double cell_size_half = 0.0;
  double loglik_at_half = 0.0;
  double loglik_change = 0.0;        // |l(h/2) - l(h)| at the optimum
  double adjacent_grid_change = 0.0;  // smallest |l| change to a grid neighbour
  bool passed = false;
};

struct BootstrapResult {
  Interval theta_ci;
  Interval r_ci;
  std::size_t successes = 0;
  std::size_t failures = 0;
  std::vector<std::pair<double, double>> estimates;  // (theta, r) per replicate
  std::vector<std::string> failure_messages;
  std::vector<std::string> warnings;
};

struct FitResult {
  double theta_hat = 0.0;
  double r_hat = 0.0;
  double max_loglik = 0.0;
  double grid_theta_hat = 0.0;
  double grid_r_hat = 0.0;
  double grid_max_loglik = 0.0;
  std::vector<SurfacePoint> surface;  // theta-major, radius-minor
  std::size_t theta_count = 0;
  std::size_t radius_count = 0;
  double cell_size = 0.0;
  double r_lower = 0.0;
  double r_upper = 0.0;
  bool refined = false;
  std::size_t refine_iterations = 0;
  std::size_t refine_evaluations = 0;
  bool refine_converged = false;
  std::vector<double> refine_trace;
  std::optional<ConvergenceCheck> convergence;
  std::optional<BootstrapResult> bootstrap;
  std::vector<std::string> warnings;
};

FitResult fit(const PointSequence& seq, const FitConfig& config);

// Parametric bootstrap: simulates config.bootstrap_replicates sequences from
// the fitted parameters with the observed first two points fixed, refits
// each, and returns the 2.5% / 97.5% quantiles (linear interpolation).
BootstrapResult bootstrap_ci(const PointSequence& seq, const FitResult& fitted,
                             const FitConfig& config);

// Linear-interpolation sample quantile (type 7). Sorts a copy.
double sample_quantile(std::vector<double> values, double p);

}  // namespace sspp
