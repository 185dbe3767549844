#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sspp/model.hpp"

namespace sspp {

struct SimulationConfig {
  explicit SimulationConfig(ModelParams model) : params(model) {}

  ModelParams params;
  std::size_t n_points = 100;
  // Up to two fixed leading locations; the rest are simulated.
  std::vector<Point> start_points;
  std::uint64_t seed = 0;
  std::size_t max_rejects_per_point = 1'000'000;
};

void validate(const SimulationConfig& config);

// Sequential accept-reject simulation. Proposals are uniform on the window
// and a proposal y is kept with probability pi(y) / max(theta, 1 - theta),
// which gives each new point exactly the conditional density given the past.
// Uses random stream `stream_index` of config.seed.
PointSequence simulate(const SimulationConfig& config, std::uint64_t stream_index = 0);

// Replicate j is simulate(config, j). Output order follows the replicate
// index whatever the thread count.
std::vector<PointSequence> simulate_batch(const SimulationConfig& config,
                                          std::size_t replicates, std::size_t threads = 0);

}  // namespace sspp
