#include "sspp/sampler.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

#include "sspp/error.hpp"
#include "sspp/parallel.hpp"
#include "sspp/random.hpp"

namespace sspp {

void validate(const SimulationConfig& config) {
  if (config.n_points < 1) {
    throw Error(ErrorCode::invalid_argument, "n_points must be at least 1");
  }
  if (config.max_rejects_per_point < 1) {
    throw Error(ErrorCode::invalid_argument, "max_rejects_per_point must be at least 1");
  }
  if (config.start_points.size() > 2) {
    throw Error(ErrorCode::invalid_argument, "at most two start points may be fixed");
  }
  if (config.start_points.size() > config.n_points) {
    throw Error(ErrorCode::invalid_argument, "more start points than n_points");
  }
  const Window& w = config.params.window();
  for (const Point& p : config.start_points) {
    if (!w.contains(p)) {
      std::ostringstream msg;
      msg << "start point (" << p.x << ", " << p.y << ") lies outside the window";
      throw Error(ErrorCode::invalid_argument, msg.str());
    }
  }
  if (config.start_points.size() == 2 && config.start_points[0] == config.start_points[1]) {
    throw Error(ErrorCode::invalid_argument, "start points must be distinct");
  }
}

namespace {

Point uniform_interior_point(const Window& w, Rng& rng) {
  for (;;) {
    const Point p{rng.uniform(w.xmin(), w.xmax()), rng.uniform(w.ymin(), w.ymax())};
    if (w.strictly_contains(p)) return p;
  }
}

}  // namespace

PointSequence simulate(const SimulationConfig& config, std::uint64_t stream_index) {
  validate(config);
  const ModelParams& params = config.params;
  const Window& w = params.window();
  Rng rng = Rng::stream(config.seed, stream_index);

  std::vector<Point> points(config.start_points);
  points.reserve(config.n_points);
  if (points.empty()) points.push_back(uniform_interior_point(w, rng));

  const double bound = params.density_bound();
  const double accept_inside = params.theta() / bound;
  const double accept_outside = (1.0 - params.theta()) / bound;
  while (points.size() < config.n_points) {
    std::optional<Point> accepted;
    for (std::size_t attempt = 0; attempt < config.max_rejects_per_point; ++attempt) {
      const Point y = uniform_interior_point(w, rng);
      const bool inside = in_past_union(points, y, params.radius());
      const double u = rng.uniform();
      if (u < (inside ? accept_inside : accept_outside)) {
        accepted = y;
        break;
      }
    }
    if (!accepted) {
      std::ostringstream msg;
      msg << "accept-reject stalled at point " << points.size() + 1 << " after "
          << config.max_rejects_per_point << " proposals (theta=" << params.theta()
          << ", r=" << params.radius() << ")";
      throw Error(ErrorCode::simulation_stall, msg.str());
    }
    // A continuous proposal repeats an earlier location with probability
    // zero; redraw rather than emit a duplicate.
    if (std::find(points.begin(), points.end(), *accepted) != points.end()) continue;
    points.push_back(*accepted);
  }
  return PointSequence(std::move(points), w);
}

std::vector<PointSequence> simulate_batch(const SimulationConfig& config,
                                          std::size_t replicates, std::size_t threads) {
  if (replicates < 1) {
    throw Error(ErrorCode::invalid_argument, "replicates must be at least 1");
  }
  validate(config);
  std::vector<std::optional<PointSequence>> slots(replicates);
  parallel_for(
      replicates,
      [&](std::size_t j) {
        try {
          slots[j] = simulate(config, j);
        } catch (const Error& e) {
          throw Error(e.code(), "replicate " + std::to_string(j) + ": " + e.what());
        }
      },
      threads);
  std::vector<PointSequence> out;
  out.reserve(replicates);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace sspp
