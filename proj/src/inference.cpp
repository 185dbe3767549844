#include "sspp/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "sspp/error.hpp"
#include "sspp/optimize.hpp"
#include "sspp/parallel.hpp"
#include "sspp/sampler.hpp"

namespace sspp {

std::vector<double> GridSpec::values() const {
  if (!(step > 0.0) || !(hi >= lo) || !std::isfinite(lo) || !std::isfinite(hi)) {
    std::ostringstream msg;
    msg << "invalid grid (" << lo << ", " << hi << ", " << step << ")";
    throw Error(ErrorCode::invalid_argument, msg.str());
  }
  std::vector<double> out;
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(lo + static_cast<double>(i) * step);
  return out;
}

double default_r_lower(const PointSequence& seq) {
  if (const auto& marks = seq.marks(); marks && !marks->empty()) {
    return *std::max_element(marks->begin(), marks->end()) / 200.0;
  }
  return 1e-3 * seq.window().shorter_side();
}

std::size_t RadiusProfile::n_inside() const noexcept {
  return static_cast<std::size_t>(std::count(inside.begin(), inside.end(), std::uint8_t{1}));
}

double RadiusProfile::loglik(double theta) const {
  if (!(theta > 0.0 && theta < 1.0)) {
    throw Error(ErrorCode::invalid_argument, "theta must lie strictly inside (0, 1)");
  }
  const double log_in = std::log(theta);
  const double log_out = std::log(1.0 - theta);
  // Summed term by term: at theta = 0.5 every term is identical, so the
  // total is the same for any ordering of the points.
  double total = 0.0;
  for (std::size_t k = 0; k < inside.size(); ++k) {
    const double alpha = normalizer(covered[k], theta, window_area);
    total += (inside[k] ? log_in : log_out) - std::log(alpha);
  }
  return total;
}

RadiusProfile radius_profile(const PointSequence& seq, double radius, double cell_size) {
  if (seq.size() < 2) {
    throw Error(ErrorCode::degenerate, "log-likelihood needs at least two points");
  }
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw Error(ErrorCode::invalid_argument, "interaction radius must be positive");
  }
  RadiusProfile profile;
  profile.radius = radius;
  profile.window_area = seq.window().area();
  profile.inside.resize(seq.size() - 1);
  profile.covered.resize(seq.size() - 1);
  CoverageRaster raster(seq.window(), cell_size);
  for (std::size_t k = 1; k < seq.size(); ++k) {
    raster.add_disc(seq[k - 1], radius);
    profile.covered[k - 1] = raster.covered_area();
    profile.inside[k - 1] = in_past_union(seq.prefix(k), seq[k], radius) ? 1 : 0;
  }
  return profile;
}

double log_likelihood(const PointSequence& seq, const ModelParams& params, double cell_size) {
  if (!(params.window() == seq.window())) {
    throw Error(ErrorCode::invalid_argument, "parameters and sequence use different windows");
  }
  return radius_profile(seq, params.radius(), cell_size).loglik(params.theta());
}

double sample_quantile(std::vector<double> values, double p) {
  if (values.empty()) throw Error(ErrorCode::degenerate, "quantile of an empty sample");
  std::sort(values.begin(), values.end());
  const double h = (static_cast<double>(values.size()) - 1.0) * std::clamp(p, 0.0, 1.0);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= values.size()) return values.back();
  return values[lo] + (h - static_cast<double>(lo)) * (values[lo + 1] - values[lo]);
}

namespace {

void validate(const FitConfig& config, double r_lower) {
  const auto& tg = config.theta_grid;
  if (!(tg.lo > 0.0 && tg.lo < tg.hi && tg.hi < 1.0 && tg.step > 0.0)) {
    throw Error(ErrorCode::invalid_argument,
                "theta grid must satisfy 0 < lo < hi < 1 with a positive step");
  }
  if (!(r_lower > 0.0 && r_lower < config.r_upper && config.r_step > 0.0)) {
    std::ostringstream msg;
    msg << "radius grid must satisfy 0 < r_lower < r_upper with a positive step (r_lower="
        << r_lower << ", r_upper=" << config.r_upper << ", step=" << config.r_step << ")";
    throw Error(ErrorCode::invalid_argument, msg.str());
  }
}

}  // namespace

FitResult fit(const PointSequence& seq, const FitConfig& config) {
  if (seq.size() < 2) {
    throw Error(ErrorCode::degenerate, "fitting needs at least two points");
  }
  const double r_lower = config.r_lower.value_or(default_r_lower(seq));
  validate(config, r_lower);
  const double h = config.cell_size.value_or(default_cell_size(seq.window()));

  const std::vector<double> thetas = config.theta_grid.values();
  const std::vector<double> radii = GridSpec{r_lower, config.r_upper, config.r_step}.values();

  FitResult result;
  result.cell_size = h;
  result.r_lower = r_lower;
  result.r_upper = config.r_upper;
  result.theta_count = thetas.size();
  result.radius_count = radii.size();

  // One column per radius; columns are independent.
  std::vector<std::vector<double>> columns(radii.size());
  parallel_for(
      radii.size(),
      [&](std::size_t j) {
        const RadiusProfile profile = radius_profile(seq, radii[j], h);
        columns[j].resize(thetas.size());
        for (std::size_t i = 0; i < thetas.size(); ++i) columns[j][i] = profile.loglik(thetas[i]);
      },
      config.threads);

  result.surface.reserve(thetas.size() * radii.size());
  double best = -std::numeric_limits<double>::infinity();
  std::size_t best_i = 0, best_j = 0;
  bool found = false;
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    for (std::size_t j = 0; j < radii.size(); ++j) {
      const double l = columns[j][i];
      result.surface.push_back({thetas[i], radii[j], l});
      // Strict comparison keeps the lowest theta, then the lowest r, on ties.
      if (std::isfinite(l) && (!found || l > best)) {
        best = l;
        best_i = i;
        best_j = j;
        found = true;
      }
    }
  }
  if (!found) {
    throw Error(ErrorCode::estimation, "log-likelihood is not finite anywhere on the grid");
  }
  result.grid_theta_hat = thetas[best_i];
  result.grid_r_hat = radii[best_j];
  result.grid_max_loglik = best;
  result.theta_hat = result.grid_theta_hat;
  result.r_hat = result.grid_r_hat;
  result.max_loglik = best;

  if (config.refine) {
    // Normalised coordinates: theta as is, r scaled to [0, 1] over the range.
    const double r_span = config.r_upper - r_lower;
    constexpr double theta_margin = 1e-9;
    auto to_params = [&](std::span<const double> u) {
      return std::pair<double, double>{
          std::clamp(u[0], theta_margin, 1.0 - theta_margin),
          r_lower + std::clamp(u[1], 0.0, 1.0) * r_span};
    };
    // Radius columns are reused for every theta probed at that radius.
    std::vector<std::pair<double, RadiusProfile>> cache;
    auto objective = [&](std::span<const double> u) {
      const auto [theta, r] = to_params(u);
      auto it = std::find_if(cache.begin(), cache.end(),
                             [r = r](const auto& entry) { return entry.first == r; });
      if (it == cache.end()) {
        cache.emplace_back(r, radius_profile(seq, r, h));
        it = std::prev(cache.end());
      }
      return -it->second.loglik(theta);
    };
    const std::vector<double> start = {result.grid_theta_hat,
                                       (result.grid_r_hat - r_lower) / r_span};
    const std::vector<double> step = {config.theta_grid.step, config.r_step / r_span};
    const NelderMeadResult nm = nelder_mead(objective, start, step);
    result.refined = true;
    result.refine_iterations = nm.iterations;
    result.refine_evaluations = nm.evaluations;
    result.refine_converged = nm.converged;
    result.refine_trace.reserve(nm.trace.size());
    for (double v : nm.trace) result.refine_trace.push_back(-v);
    if (-nm.value > best) {
      const auto [theta, r] = to_params(nm.x);
      result.theta_hat = theta;
      result.r_hat = r;
      result.max_loglik = -nm.value;
    }
    if (result.theta_hat < 1e-6 || result.theta_hat > 1.0 - 1e-6) {
      result.warnings.push_back(
          "theta estimate sits on the boundary of (0, 1); the likelihood keeps increasing "
          "towards it at this radius");
    }
    if (!nm.converged) {
      result.warnings.push_back("Nelder-Mead refinement stopped at the iteration limit");
    }
  }

  if (config.convergence_check) {
    ConvergenceCheck check;
    check.cell_size_half = h / 2.0;
    check.loglik_at_half =
        radius_profile(seq, result.r_hat, check.cell_size_half).loglik(result.theta_hat);
    check.loglik_change = std::abs(check.loglik_at_half - result.max_loglik);
    double adjacent = std::numeric_limits<double>::infinity();
    auto consider = [&](std::size_t i, std::size_t j) {
      const double l = columns[j][i];
      if (std::isfinite(l)) adjacent = std::min(adjacent, std::abs(l - best));
    };
    if (best_i > 0) consider(best_i - 1, best_j);
    if (best_i + 1 < thetas.size()) consider(best_i + 1, best_j);
    if (best_j > 0) consider(best_i, best_j - 1);
    if (best_j + 1 < radii.size()) consider(best_i, best_j + 1);
    check.adjacent_grid_change = adjacent;
    check.passed = check.loglik_change < adjacent;
    if (!check.passed) {
      result.warnings.push_back(
          "halving the cell size changes the optimum log-likelihood by more than the "
          "difference to a neighbouring grid cell; consider a finer raster");
    }
    result.convergence = check;
  }

  if (config.bootstrap_replicates > 0) {
    result.bootstrap = bootstrap_ci(seq, result, config);
    for (const auto& w : result.bootstrap->warnings) result.warnings.push_back(w);
  }
  return result;
}

BootstrapResult bootstrap_ci(const PointSequence& seq, const FitResult& fitted,
                             const FitConfig& config) {
  const std::size_t replicates = config.bootstrap_replicates;
  if (replicates < 1) {
    throw Error(ErrorCode::invalid_argument, "bootstrap needs at least one replicate");
  }
  constexpr std::size_t min_successes = 10;

  SimulationConfig sim{ModelParams(fitted.theta_hat, fitted.r_hat, seq.window())};
  sim.n_points = seq.size();
  sim.seed = config.seed;
  for (std::size_t i = 0; i < std::min<std::size_t>(2, seq.size()); ++i) {
    sim.start_points.push_back(seq[i]);
  }

  FitConfig refit = config;
  refit.r_lower = fitted.r_lower;
  refit.cell_size = fitted.cell_size;
  refit.bootstrap_replicates = 0;
  refit.convergence_check = false;
  refit.threads = 1;

  std::vector<std::optional<std::pair<double, double>>> estimates(replicates);
  std::vector<std::string> errors(replicates);
  parallel_for(
      replicates,
      [&](std::size_t j) {
        try {
          const PointSequence replicate = simulate(sim, j);
          const FitResult f = fit(replicate, refit);
          estimates[j] = std::pair{f.theta_hat, f.r_hat};
        } catch (const Error& e) {
          errors[j] = "replicate " + std::to_string(j) + ": " + e.what();
        }
      },
      config.threads);

  BootstrapResult out;
  std::vector<double> thetas, radii;
  for (std::size_t j = 0; j < replicates; ++j) {
    if (estimates[j]) {
      out.estimates.push_back(*estimates[j]);
      thetas.push_back(estimates[j]->first);
      radii.push_back(estimates[j]->second);
    } else {
      out.failure_messages.push_back(errors[j]);
    }
  }
  out.successes = thetas.size();
  out.failures = replicates - out.successes;
  if (out.successes < std::min(min_successes, replicates)) {
    std::ostringstream msg;
    msg << "bootstrap produced only " << out.successes << " successful refits out of "
        << replicates;
    throw Error(ErrorCode::estimation, msg.str());
  }
  out.theta_ci = {sample_quantile(thetas, 0.025), sample_quantile(thetas, 0.975)};
  out.r_ci = {sample_quantile(radii, 0.025), sample_quantile(radii, 0.975)};
  auto covers = [](const Interval& ci, double v) { return ci.lo <= v && v <= ci.hi; };
  if (!covers(out.theta_ci, fitted.theta_hat)) {
    out.warnings.push_back("small-sample bootstrap: theta interval does not contain the estimate");
  }
  if (!covers(out.r_ci, fitted.r_hat)) {
    out.warnings.push_back("small-sample bootstrap: r interval does not contain the estimate");
  }
  return out;
}

}  // namespace sspp
