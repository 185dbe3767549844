#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sspp/csr.hpp"
#include "sspp/error.hpp"
#include "sspp/inference.hpp"
#include "sspp/io.hpp"
#include "sspp/sampler.hpp"
#include "sspp/serialize.hpp"
#include "sspp/summaries.hpp"

namespace py = pybind11;
using namespace sspp;

namespace {

py::object to_python(const Json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

std::vector<Point> to_points(const std::vector<std::pair<double, double>>& xy) {
  std::vector<Point> out;
  out.reserve(xy.size());
  for (const auto& [x, y] : xy) out.push_back({x, y});
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Sequential spatial point process (SSPP) model: likelihood, fitting, "
            "simulation and summary statistics";

  py::register_exception<Error>(m, "SsppError", PyExc_ValueError);

  py::class_<Point>(m, "Point")
      .def(py::init<double, double>(), py::arg("x"), py::arg("y"))
      .def_readwrite("x", &Point::x)
      .def_readwrite("y", &Point::y)
      .def("__repr__", [](const Point& p) {
        return "Point(" + format_double(p.x) + ", " + format_double(p.y) + ")";
      });

  py::class_<Window>(m, "Window")
      .def(py::init<double, double, double, double>(), py::arg("xmin"), py::arg("ymin"),
           py::arg("xmax"), py::arg("ymax"))
      .def_property_readonly("xmin", &Window::xmin)
      .def_property_readonly("ymin", &Window::ymin)
      .def_property_readonly("xmax", &Window::xmax)
      .def_property_readonly("ymax", &Window::ymax)
      .def_property_readonly("area", &Window::area);

  py::class_<ModelParams>(m, "ModelParams")
      .def(py::init<double, double, Window>(), py::arg("theta"), py::arg("r"), py::arg("window"))
      .def_property_readonly("theta", &ModelParams::theta)
      .def_property_readonly("r", &ModelParams::radius)
      .def_property_readonly("window", &ModelParams::window);

  py::class_<PointSequence>(m, "PointSequence")
      .def(py::init([](const std::vector<std::pair<double, double>>& xy, const Window& w,
                       std::optional<std::vector<double>> marks) {
             return PointSequence(to_points(xy), w, std::move(marks));
           }),
           py::arg("points"), py::arg("window"), py::arg("marks") = py::none())
      .def("__len__", &PointSequence::size)
      .def_property_readonly("window", &PointSequence::window)
      .def_property_readonly("marks", &PointSequence::marks)
      .def("points", [](const PointSequence& s) {
        std::vector<std::pair<double, double>> out;
        for (const Point& p : s.points()) out.emplace_back(p.x, p.y);
        return out;
      });

  m.def("distance", &distance, py::arg("a"), py::arg("b"));
  m.def("default_cell_size", &default_cell_size, py::arg("window"));
  m.def(
      "union_disc_area",
      [](const std::vector<std::pair<double, double>>& xy, double r, const Window& w,
         std::optional<double> h) {
        const auto pts = to_points(xy);
        return union_disc_area(pts, r, w, h.value_or(default_cell_size(w)));
      },
      py::arg("points"), py::arg("r"), py::arg("window"), py::arg("cell_size") = py::none());

  m.def(
      "log_likelihood",
      [](const PointSequence& seq, double theta, double r, std::optional<double> h) {
        return log_likelihood(seq, ModelParams(theta, r, seq.window()),
                              h.value_or(default_cell_size(seq.window())));
      },
      py::arg("seq"), py::arg("theta"), py::arg("r"), py::arg("cell_size") = py::none());

  m.def(
      "simulate",
      [](double theta, double r, std::size_t n, const Window& w,
         const std::vector<std::pair<double, double>>& start, std::uint64_t seed,
         std::uint64_t stream) {
        SimulationConfig config{ModelParams(theta, r, w)};
        config.n_points = n;
        config.start_points = to_points(start);
        config.seed = seed;
        return simulate(config, stream);
      },
      py::arg("theta"), py::arg("r"), py::arg("n"), py::arg("window"),
      py::arg("start") = std::vector<std::pair<double, double>>{}, py::arg("seed") = 0,
      py::arg("stream") = 0);

  m.def(
      "fit",
      [](const PointSequence& seq, std::optional<double> r_lower, double r_upper, double r_step,
         bool refine, std::size_t bootstrap, std::uint64_t seed, std::optional<double> h) {
        FitConfig config;
        config.r_lower = r_lower;
        config.r_upper = r_upper;
        config.r_step = r_step;
        config.refine = refine;
        config.bootstrap_replicates = bootstrap;
        config.seed = seed;
        config.cell_size = h;
        FitResult result;
        {
          py::gil_scoped_release release;
          result = fit(seq, config);
        }
        return to_python(to_json(result, true));
      },
      py::arg("seq"), py::arg("r_lower") = py::none(), py::arg("r_upper") = 5.0,
      py::arg("r_step") = 0.1, py::arg("refine") = true, py::arg("bootstrap") = 0,
      py::arg("seed") = 0, py::arg("cell_size") = py::none());

  m.def(
      "summaries",
      [](const PointSequence& seq, double r, bool cumulative, std::optional<double> h) {
        const auto curves =
            all_curves(seq, r, h.value_or(default_cell_size(seq.window())), cumulative);
        Json j = Json::object();
        for (const auto& c : curves) j[std::string(statistic_name(c.kind))] = to_json(c);
        return to_python(j);
      },
      py::arg("seq"), py::arg("r"), py::arg("cumulative") = true,
      py::arg("cell_size") = py::none());

  m.def(
      "envelopes",
      [](const PointSequence& seq, double theta, double r, std::size_t replicates, double level,
         std::uint64_t seed) {
        EnvelopeConfig config;
        config.replicates = replicates;
        config.level = level;
        config.seed = seed;
        std::array<EnvelopeBand, 4> bands;
        {
          py::gil_scoped_release release;
          bands = envelopes(seq, ModelParams(theta, r, seq.window()), config);
        }
        Json j = Json::object();
        for (const auto& b : bands) j[std::string(statistic_name(b.kind))] = to_json(b);
        return to_python(j);
      },
      py::arg("seq"), py::arg("theta"), py::arg("r"), py::arg("replicates") = 999,
      py::arg("level") = 0.95, py::arg("seed") = 0);

  m.def(
      "centered_l",
      [](const std::vector<std::pair<double, double>>& xy, const Window& w,
         const std::vector<double>& r_grid) {
        const auto pts = to_points(xy);
        return centered_l(pts, w, r_grid).values;
      },
      py::arg("points"), py::arg("window"), py::arg("r_grid"));

  m.def(
      "csr_test",
      [](const std::vector<std::pair<double, double>>& xy, const Window& w, std::size_t n_sim,
         double r_max, std::size_t r_steps, double alpha, std::uint64_t seed) {
        const auto pts = to_points(xy);
        CsrTestConfig config;
        config.n_sim = n_sim;
        config.alpha = alpha;
        config.seed = seed;
        const auto grid = default_r_grid(w, r_max, r_steps);
        GlobalEnvelopeResult result;
        {
          py::gil_scoped_release release;
          result = erl_global_test(pts, w, grid, config);
        }
        return to_python(to_json(result));
      },
      py::arg("points"), py::arg("window"), py::arg("n_sim") = 4999, py::arg("r_max") = 5.0,
      py::arg("r_steps") = 513, py::arg("alpha") = 0.05, py::arg("seed") = 0);
}
