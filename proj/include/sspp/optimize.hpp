#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace sspp {

struct NelderMeadOptions {
  double diameter_tolerance = 1e-4;  // stop when the simplex is this small
  std::size_t max_iterations = 200;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  std::size_t iterations = 0;
  std::size_t evaluations = 0;
  bool converged = false;
  std::vector<double> trace;  // best value after each iteration
};

// Derivative-free minimisation with the standard reflection (1), expansion
// (2), contraction (1/2) and shrink (1/2) coefficients. The initial simplex is
// start plus start + step[i] * e_i.
NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                             std::vector<double> start, std::span<const double> step,
                             const NelderMeadOptions& options = {});

}  // namespace sspp
