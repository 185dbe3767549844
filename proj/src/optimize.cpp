#include "sspp/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sspp/error.hpp"

namespace sspp {

namespace {

double simplex_diameter(const std::vector<std::vector<double>>& vertices) {
  double diameter = 0.0;
  for (std::size_t a = 0; a < vertices.size(); ++a) {
    for (std::size_t b = a + 1; b < vertices.size(); ++b) {
      double d2 = 0.0;
      for (std::size_t i = 0; i < vertices[a].size(); ++i) {
        const double d = vertices[a][i] - vertices[b][i];
        d2 += d * d;
      }
      diameter = std::max(diameter, std::sqrt(d2));
    }
  }
  return diameter;
}

}  // namespace

NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                             std::vector<double> start, std::span<const double> step,
                             const NelderMeadOptions& options) {
  const std::size_t dim = start.size();
  if (dim == 0 || step.size() != dim) {
    throw Error(ErrorCode::invalid_argument, "nelder_mead: start and step sizes differ");
  }
  NelderMeadResult result;
  auto eval = [&](const std::vector<double>& x) {
    ++result.evaluations;
    return f(x);
  };

  std::vector<std::vector<double>> x(dim + 1, start);
  for (std::size_t i = 0; i < dim; ++i) x[i + 1][i] += step[i];
  std::vector<double> fx(dim + 1);
  for (std::size_t j = 0; j <= dim; ++j) fx[j] = eval(x[j]);

  std::vector<std::size_t> order(dim + 1);
  auto sort_simplex = [&] {
    std::iota(order.begin(), order.end(), std::size_t{0});
    // Stable so that ties keep the earlier vertex (the start point first).
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return fx[a] < fx[b]; });
    std::vector<std::vector<double>> xs(dim + 1);
    std::vector<double> fs(dim + 1);
    for (std::size_t k = 0; k <= dim; ++k) {
      xs[k] = std::move(x[order[k]]);
      fs[k] = fx[order[k]];
    }
    x = std::move(xs);
    fx = std::move(fs);
  };

  auto along = [&](const std::vector<double>& from, const std::vector<double>& to, double t) {
    std::vector<double> p(dim);
    for (std::size_t i = 0; i < dim; ++i) p[i] = from[i] + t * (to[i] - from[i]);
    return p;
  };

  sort_simplex();
  while (result.iterations < options.max_iterations) {
    if (simplex_diameter(x) < options.diameter_tolerance) {
      result.converged = true;
      break;
    }
    ++result.iterations;

    std::vector<double> centroid(dim, 0.0);
    for (std::size_t j = 0; j < dim; ++j)
      for (std::size_t i = 0; i < dim; ++i) centroid[i] += x[j][i] / static_cast<double>(dim);

    const auto reflected = along(centroid, x[dim], -1.0);
    const double f_reflected = eval(reflected);
    if (f_reflected < fx[0]) {
      const auto expanded = along(centroid, x[dim], -2.0);
      const double f_expanded = eval(expanded);
      if (f_expanded < f_reflected) {
        x[dim] = expanded;
        fx[dim] = f_expanded;
      } else {
        x[dim] = reflected;
        fx[dim] = f_reflected;
      }
    } else if (f_reflected < fx[dim - 1]) {
      x[dim] = reflected;
      fx[dim] = f_reflected;
    } else {
      const bool outside = f_reflected < fx[dim];
      const auto contracted = outside ? along(centroid, reflected, 0.5)
                                      : along(centroid, x[dim], 0.5);
      const double f_contracted = eval(contracted);
      if (f_contracted < std::min(f_reflected, fx[dim])) {
        x[dim] = contracted;
        fx[dim] = f_contracted;
      } else {
        for (std::size_t j = 1; j <= dim; ++j) {
          x[j] = along(x[0], x[j], 0.5);
          fx[j] = eval(x[j]);
        }
      }
    }
    sort_simplex();
    result.trace.push_back(fx[0]);
  }
  if (!result.converged && simplex_diameter(x) < options.diameter_tolerance) {
    result.converged = true;
  }
  result.x = x[0];
  result.value = fx[0];
  return result;
}

}  // namespace sspp
