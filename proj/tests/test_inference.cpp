#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "sspp/error.hpp"
#include "sspp/inference.hpp"
#include "sspp/optimize.hpp"
#include "sspp/sampler.hpp"

using namespace sspp;

namespace {

PointSequence simulated(double theta, double r, std::size_t n, const Window& w,
                        std::uint64_t seed, std::uint64_t stream = 0) {
  SimulationConfig config{ModelParams(theta, r, w)};
  config.n_points = n;
  config.seed = seed;
  return simulate(config, stream);
}

}  // namespace

TEST_CASE("grid values") {
  const auto theta = GridSpec{0.025, 0.975, 0.05}.values();
  REQUIRE(theta.size() == 20);
  CHECK(theta.front() == 0.025);
  CHECK(theta.back() == doctest::Approx(0.975));
  const auto r = GridSpec{0.1, 5.0, 0.1}.values();
  CHECK(r.size() == 50);
  CHECK(r.back() == doctest::Approx(5.0));
}

TEST_CASE("default lower radius") {
  const Window w(0, 0, 25, 25);
  const PointSequence marked({{1, 1}, {2, 2}}, w, std::vector<double>{23.15, 10.0});
  CHECK(default_r_lower(marked) == doctest::Approx(0.11575));
  const PointSequence bare({{1, 1}, {2, 2}}, w);
  CHECK(default_r_lower(bare) == doctest::Approx(0.025));
}

TEST_CASE("log-likelihood at theta = 0.5") {
  const Window w(0, 0, 25, 25);
  const PointSequence seq = simulated(0.3, 2.0, 60, w, 4);
  for (double r : {0.5, 2.0, 4.0}) {
    CHECK(log_likelihood(seq, ModelParams(0.5, r, w), 0.125) ==
          doctest::Approx(-59 * std::log(625.0)));
  }
}

TEST_CASE("log-likelihood against the full-grid oracle") {
  const Window w(0, 0, 1, 1);
  const std::vector<Point> pts = {{0.2, 0.2}, {0.3, 0.25}, {0.7, 0.8}};
  const PointSequence seq(pts, w);
  for (double theta : {0.2, 0.9}) {
    const double ours = log_likelihood(seq, ModelParams(theta, 0.15, w), default_cell_size(w));
    const double grid = oracle::grid_loglik(pts, theta, 0.15, w);
    CHECK(std::abs(ours - grid) < 1e-2);
  }
}

TEST_CASE("log-likelihood input checks") {
  const Window w(0, 0, 1, 1);
  CHECK_THROWS_AS(log_likelihood(PointSequence({{0.5, 0.5}}, w), ModelParams(0.3, 0.1, w), 0.01),
                  Error);
  const PointSequence seq({{0.5, 0.5}, {0.6, 0.6}}, w);
  CHECK_THROWS_AS(log_likelihood(seq, ModelParams(0.3, 0.1, Window(0, 0, 2, 2)), 0.01), Error);
}

TEST_CASE("radius profile matches direct evaluation") {
  const Window w(0, 0, 25, 25);
  const PointSequence seq = simulated(0.2, 2.5, 80, w, 8);
  const RadiusProfile profile = radius_profile(seq, 2.5, 0.125);
  CHECK(profile.inside.size() == 79);
  CHECK(profile.n_inside() + profile.n_outside() == 79);
  for (double theta : {0.1, 0.4, 0.77}) {
    CHECK(profile.loglik(theta) ==
          doctest::Approx(log_likelihood(seq, ModelParams(theta, 2.5, w), 0.125)).epsilon(1e-12));
  }
}

TEST_CASE("theta profile maximiser matches a golden-section oracle") {
  const Window w(0, 0, 25, 25);
  for (std::uint64_t seed : {1, 2, 3}) {
    const PointSequence seq = simulated(0.25, 2.0, 100, w, seed);
    const RadiusProfile profile = radius_profile(seq, 2.0, 0.125);
    const auto f = [&](double t) { return profile.loglik(t); };
    const double golden = oracle::golden_section_max(f, 1e-6, 1 - 1e-6);
    // Grid search then a 1-D polish, as the fitter does.
    double best_t = 0.025, best = -INFINITY;
    for (double t : GridSpec{0.025, 0.975, 0.05}.values()) {
      if (f(t) > best) {
        best = f(t);
        best_t = t;
      }
    }
    const std::vector<double> step = {0.05};
    const auto nm = nelder_mead([&](std::span<const double> u) { return -f(u[0]); }, {best_t}, step,
                                {1e-7, 500});
    CHECK(std::abs(nm.x[0] - golden) < 1e-3);
  }
}

TEST_CASE("fit") {
  const Window w(0, 0, 25, 25);
  const PointSequence seq = simulated(0.17, 2.18, 120, w, 12);
  FitConfig config;
  config.bootstrap_replicates = 0;
  const FitResult a = fit(seq, config);
  CHECK(a.theta_count == 20);
  CHECK(a.surface.size() == a.theta_count * a.radius_count);
  CHECK(a.surface[0].theta == 0.025);
  CHECK(a.surface[1].theta == 0.025);
  CHECK(a.surface[1].radius > a.surface[0].radius);
  CHECK(a.max_loglik >= a.grid_max_loglik);
  CHECK(std::abs(a.theta_hat - 0.17) < 0.1);
  CHECK(std::abs(a.r_hat - 2.18) < 0.5);
  REQUIRE(a.convergence.has_value());
  CHECK(a.convergence->cell_size_half == 0.0625);
  for (std::size_t i = 1; i < a.refine_trace.size(); ++i)
    CHECK(a.refine_trace[i] >= a.refine_trace[i - 1]);

  const FitResult b = fit(seq, config);
  CHECK(a.theta_hat == b.theta_hat);
  CHECK(a.r_hat == b.r_hat);
  CHECK(a.max_loglik == b.max_loglik);

  config.threads = 3;
  const FitResult c = fit(seq, config);
  CHECK(a.theta_hat == c.theta_hat);
  CHECK(a.r_hat == c.r_hat);

  config.refine = false;
  const FitResult d = fit(seq, config);
  CHECK(d.theta_hat == d.grid_theta_hat);
  CHECK(d.max_loglik == d.grid_max_loglik);
}

TEST_CASE("fit on theta = 0.5 data") {
  // theta = 0.5 is CSR for every r, so the maximised log-likelihood should sit
  // only a few units above the CSR value. At small r with no point inside the
  // past union the estimate can run to the theta -> 0 boundary.
  const Window w(0, 0, 25, 25);
  FitConfig config;
  config.bootstrap_replicates = 0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const FitResult f = fit(simulated(0.5, 2.0, 100, w, seed), config);
    const double lr = f.max_loglik + 99 * std::log(625.0);
    CHECK(lr >= 0.0);
    CHECK(lr < 10.0);
    const bool boundary = f.theta_hat < 1e-6;
    const bool warned = std::any_of(f.warnings.begin(), f.warnings.end(), [](const std::string& m) {
      return m.find("boundary") != std::string::npos;
    });
    CHECK(boundary == warned);
  }
}

TEST_CASE("fit input checks") {
  const Window w(0, 0, 25, 25);
  FitConfig config;
  CHECK_THROWS_AS(fit(PointSequence({{1, 1}}, w), config), Error);
  const PointSequence seq({{1, 1}, {2, 2}, {3, 4}}, w);
  config.r_lower = 6.0;
  CHECK_THROWS_AS(fit(seq, config), Error);
  config.r_lower = 0.1;
  config.theta_grid = {0.0, 0.9, 0.1};
  CHECK_THROWS_AS(fit(seq, config), Error);
}

TEST_CASE("bootstrap") {
  const Window w(0, 0, 25, 25);
  const PointSequence seq = simulated(0.17, 2.18, 100, w, 5);
  FitConfig config;
  config.bootstrap_replicates = 12;
  config.seed = 3;
  const FitResult a = fit(seq, config);
  REQUIRE(a.bootstrap.has_value());
  const BootstrapResult& bs = *a.bootstrap;
  CHECK(bs.successes + bs.failures == 12);
  CHECK(bs.estimates.size() == bs.successes);
  CHECK(bs.theta_ci.lo <= bs.theta_ci.hi);
  CHECK(bs.r_ci.lo <= bs.r_ci.hi);
  const FitResult b = fit(seq, config);
  CHECK(b.bootstrap->theta_ci.lo == bs.theta_ci.lo);
  CHECK(b.bootstrap->r_ci.hi == bs.r_ci.hi);
}

TEST_CASE("sample quantile") {
  CHECK(sample_quantile({3.0, 3.0, 3.0}, 0.025) == 3.0);
  CHECK(sample_quantile({3.0, 3.0, 3.0}, 0.975) == 3.0);
  CHECK(sample_quantile({4.0, 1.0, 3.0, 2.0}, 0.5) == 2.5);
  CHECK(sample_quantile({1.0, 2.0}, 0.0) == 1.0);
  CHECK(sample_quantile({1.0, 2.0}, 1.0) == 2.0);
  CHECK_THROWS_AS(sample_quantile({}, 0.5), Error);
}
