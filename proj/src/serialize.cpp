#include "sspp/serialize.hpp"

#include <cmath>

namespace sspp {

namespace {

// JSON has no infinity; open-ended segments are written as null.
Json finite_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json interval(const Interval& ci) { return Json::array({ci.lo, ci.hi}); }

}  // namespace

Json to_json(const Window& window) {
  return Json::array({window.xmin(), window.ymin(), window.xmax(), window.ymax()});
}

Json to_json(const BootstrapResult& boot) {
  Json j;
  j["theta_ci"] = interval(boot.theta_ci);
  j["r_ci"] = interval(boot.r_ci);
  j["successes"] = boot.successes;
  j["failures"] = boot.failures;
  Json est = Json::array();
  for (const auto& [t, r] : boot.estimates) est.push_back(Json::array({t, r}));
  j["estimates"] = est;
  j["failure_messages"] = boot.failure_messages;
  j["warnings"] = boot.warnings;
  return j;
}

Json to_json(const FitResult& fit, bool include_surface) {
  Json j;
  j["theta_hat"] = fit.theta_hat;
  j["r_hat"] = fit.r_hat;
  j["max_loglik"] = fit.max_loglik;
  j["grid_theta_hat"] = fit.grid_theta_hat;
  j["grid_r_hat"] = fit.grid_r_hat;
  j["grid_max_loglik"] = fit.grid_max_loglik;
  if (fit.bootstrap) {
    j["theta_ci"] = interval(fit.bootstrap->theta_ci);
    j["r_ci"] = interval(fit.bootstrap->r_ci);
  } else {
    j["theta_ci"] = nullptr;
    j["r_ci"] = nullptr;
  }
  Json diag;
  diag["cell_size"] = fit.cell_size;
  diag["r_lower"] = fit.r_lower;
  diag["r_upper"] = fit.r_upper;
  diag["theta_grid_size"] = fit.theta_count;
  diag["r_grid_size"] = fit.radius_count;
  diag["refined"] = fit.refined;
  diag["refine_iterations"] = fit.refine_iterations;
  diag["refine_evaluations"] = fit.refine_evaluations;
  diag["refine_converged"] = fit.refine_converged;
  diag["refine_trace"] = fit.refine_trace;
  if (fit.convergence) {
    const auto& c = *fit.convergence;
    diag["convergence"] = {
        {"cell_size_half", c.cell_size_half},
        {"loglik_at_half", c.loglik_at_half},
        {"loglik_change", c.loglik_change},
        {"adjacent_grid_change", finite_or_null(c.adjacent_grid_change)},
        {"passed", c.passed},
    };
  }
  j["diagnostics"] = diag;
  if (fit.bootstrap) j["bootstrap"] = to_json(*fit.bootstrap);
  j["warnings"] = fit.warnings;
  if (include_surface) {
    Json surface = Json::array();
    for (const auto& p : fit.surface) {
      surface.push_back(Json::array({p.theta, p.radius, finite_or_null(p.loglik)}));
    }
    j["loglik_surface"] = surface;
  }
  return j;
}

Json to_json(const SummaryCurve& curve) {
  Json j;
  j["kind"] = statistic_name(curve.kind);
  j["cumulative"] = curve.cumulative;
  j["r"] = curve.r_used;
  j["cell_size"] = curve.cell_size;
  j["first_index"] = curve.index.empty() ? 0 : curve.index.front();
  j["index"] = curve.index;
  j["values"] = curve.values;
  return j;
}

Json to_json(const EnvelopeBand& band) {
  Json j;
  j["kind"] = statistic_name(band.kind);
  j["level"] = band.level;
  j["replicates"] = band.n_replicates;
  j["seed"] = band.seed;
  j["r"] = band.data_curve.r_used;
  j["cell_size"] = band.data_curve.cell_size;
  j["cumulative"] = band.data_curve.cumulative;
  j["fraction_inside"] = band.fraction_inside();
  j["exceedances"] = band.exceedances();
  j["index"] = band.index;
  j["value"] = band.data_curve.values;
  j["lower"] = band.lower;
  j["upper"] = band.upper;
  return j;
}

Json to_json(const GlobalEnvelopeResult& result) {
  Json j;
  j["ordering"] = result.ordering;
  j["p_value"] = result.p_value;
  j["n_sim"] = result.n_sim;
  j["alpha"] = result.alpha;
  j["seed"] = result.seed;
  j["ties"] = result.ties;
  j["n_points"] = result.data_curve.n_points;
  j["r"] = result.data_curve.r_grid;
  j["value"] = result.data_curve.values;
  j["lower"] = result.lower;
  j["upper"] = result.upper;
  return j;
}

Json to_json(const PiOfRReport& report) {
  Json j;
  j["theta"] = report.theta;
  j["r"] = report.radius;
  j["max_dbh_cm"] = report.max_mark;
  j["stem_radius"] = report.stem_radius;
  j["stem_knot"] = report.stem_knot;
  Json segs = Json::array();
  for (const auto& s : report.segments) {
    segs.push_back({{"from", s.from}, {"to", finite_or_null(s.to)}, {"value", s.value}});
  }
  j["segments"] = segs;
  return j;
}

}  // namespace sspp
