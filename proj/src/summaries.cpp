#include "sspp/summaries.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "sspp/error.hpp"
#include "sspp/parallel.hpp"
#include "sspp/sampler.hpp"

namespace sspp {

std::string_view statistic_name(StatisticKind kind) noexcept {
  switch (kind) {
    case StatisticKind::lagged_clustering: return "lagged_clustering";
    case StatisticKind::first_contact: return "first_contact";
    case StatisticKind::proper_zone: return "proper_zone";
    case StatisticKind::ball_coverage: return "ball_coverage";
  }
  return "unknown";
}

std::optional<StatisticKind> parse_statistic(std::string_view name) noexcept {
  for (StatisticKind kind : kAllStatistics) {
    if (statistic_name(kind) == name) return kind;
  }
  return std::nullopt;
}

namespace {

void require_radius(double r) {
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw Error(ErrorCode::invalid_argument, "summary radius must be positive");
  }
}

void accumulate(std::vector<double>& values) {
  double sum = 0.0;
  for (double& v : values) {
    sum += v;
    v = sum;
  }
}

SummaryCurve make_curve(StatisticKind kind, std::size_t first_index, std::vector<double> values,
                        bool cumulative, double r, double h) {
  SummaryCurve curve;
  curve.kind = kind;
  curve.index.resize(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) curve.index[i] = first_index + i;
  if (cumulative) accumulate(values);
  curve.values = std::move(values);
  curve.cumulative = cumulative;
  curve.r_used = r;
  curve.cell_size = h;
  return curve;
}

std::vector<double> lagged_values(const PointSequence& seq, double r) {
  std::vector<double> out;
  for (std::size_t k = 1; k < seq.size(); ++k) {
    out.push_back(static_cast<double>(lagged_clustering(seq.prefix(k), seq[k], r)));
  }
  return out;
}

std::vector<double> first_contact_values(const PointSequence& seq) {
  std::vector<double> out;
  for (std::size_t k = 1; k < seq.size(); ++k) {
    double best = std::numeric_limits<double>::infinity();
    for (const Point& x : seq.prefix(k)) best = std::min(best, squared_distance(x, seq[k]));
    out.push_back(std::sqrt(best));
  }
  return out;
}

// Proper zone and coverage share one incremental pass.
void raster_values(const PointSequence& seq, double r, double h, std::vector<double>& zone,
                   std::vector<double>& coverage) {
  CoverageRaster raster(seq.window(), h);
  const double area = seq.window().area();
  zone.clear();
  coverage.clear();
  for (std::size_t k = 0; k < seq.size(); ++k) {
    const DiscUpdate u = raster.add_disc(seq[k], r);
    // A disc narrower than the cell pitch may miss every midpoint; it then
    // has no resolvable overlap and counts as fully proper.
    zone.push_back(u.disc_area > 0.0 ? u.newly_covered / u.disc_area : 1.0);
    coverage.push_back(raster.covered_area() / area);
  }
}

}  // namespace

SummaryCurve lagged_clustering_curve(const PointSequence& seq, double r, bool cumulative) {
  require_radius(r);
  return make_curve(StatisticKind::lagged_clustering, 2, lagged_values(seq, r), cumulative, r, 0.0);
}

SummaryCurve first_contact_curve(const PointSequence& seq, bool cumulative) {
  if (seq.size() < 2) throw Error(ErrorCode::degenerate, "first contact needs two points");
  return make_curve(StatisticKind::first_contact, 2, first_contact_values(seq), cumulative, 0.0,
                    0.0);
}

SummaryCurve proper_zone_curve(const PointSequence& seq, double r, double cell_size,
                               bool cumulative) {
  require_radius(r);
  std::vector<double> zone, coverage;
  raster_values(seq, r, cell_size, zone, coverage);
  return make_curve(StatisticKind::proper_zone, 1, std::move(zone), cumulative, r, cell_size);
}

SummaryCurve ball_coverage_curve(const PointSequence& seq, double r, double cell_size) {
  require_radius(r);
  std::vector<double> zone, coverage;
  raster_values(seq, r, cell_size, zone, coverage);
  return make_curve(StatisticKind::ball_coverage, 1, std::move(coverage), false, r, cell_size);
}

std::array<SummaryCurve, 4> all_curves(const PointSequence& seq, double r, double cell_size,
                                       bool cumulative) {
  require_radius(r);
  std::vector<double> zone, coverage;
  raster_values(seq, r, cell_size, zone, coverage);
  return {
      make_curve(StatisticKind::lagged_clustering, 2, lagged_values(seq, r), cumulative, r, 0.0),
      make_curve(StatisticKind::first_contact, 2, first_contact_values(seq), cumulative, 0.0, 0.0),
      make_curve(StatisticKind::proper_zone, 1, std::move(zone), cumulative, r, cell_size),
      make_curve(StatisticKind::ball_coverage, 1, std::move(coverage), false, r, cell_size),
  };
}

std::size_t EnvelopeBand::exceedances() const noexcept {
  return static_cast<std::size_t>(std::count(outside.begin(), outside.end(), std::uint8_t{1}));
}

double EnvelopeBand::fraction_inside() const noexcept {
  if (outside.empty()) return 1.0;
  return 1.0 - static_cast<double>(exceedances()) / static_cast<double>(outside.size());
}

void pointwise_band(const std::vector<std::vector<double>>& curves, double level,
                    std::vector<double>& lower, std::vector<double>& upper) {
  if (curves.empty()) throw Error(ErrorCode::invalid_argument, "no curves for the band");
  if (!(level > 0.0 && level <= 1.0)) {
    throw Error(ErrorCode::invalid_argument, "envelope level must lie in (0, 1]");
  }
  const std::size_t m = curves.size();
  const std::size_t len = curves.front().size();
  const double tail = (1.0 - level) / 2.0 * static_cast<double>(m);
  // Small slack so that e.g. 0.025 * 1000 is not pushed to 26 by round-off.
  const auto k = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::ceil(tail - 1e-9)), std::size_t{1}, m);
  lower.assign(len, 0.0);
  upper.assign(len, 0.0);
  std::vector<double> column(m);
  for (std::size_t i = 0; i < len; ++i) {
    for (std::size_t j = 0; j < m; ++j) column[j] = curves[j][i];
    std::sort(column.begin(), column.end());
    lower[i] = column[k - 1];
    upper[i] = column[m - k];
  }
}

std::array<EnvelopeBand, 4> envelopes(const PointSequence& data, const ModelParams& params,
                                      const EnvelopeConfig& config) {
  if (config.replicates < 1) {
    throw Error(ErrorCode::invalid_argument, "envelope needs at least one replicate");
  }
  if (!(config.level > 0.0 && config.level <= 1.0)) {
    throw Error(ErrorCode::invalid_argument, "envelope level must lie in (0, 1]");
  }
  if (config.level < 1.0 &&
      static_cast<double>(config.replicates + 1) * (1.0 - config.level) < 1.0 - 1e-9) {
    std::ostringstream msg;
    msg << config.replicates << " replicates are too few for a " << config.level
        << " pointwise band";
    throw Error(ErrorCode::invalid_argument, msg.str());
  }
  if (data.size() < 2) throw Error(ErrorCode::degenerate, "envelopes need at least two points");
  const double h = config.cell_size.value_or(default_cell_size(data.window()));
  const double r = params.radius();

  SimulationConfig sim{params};
  sim.n_points = data.size();
  sim.seed = config.seed;
  sim.start_points = {data[0], data[1]};

  // replicate_curves[kind][replicate]
  std::array<std::vector<std::vector<double>>, 4> replicate_curves;
  for (auto& c : replicate_curves) c.resize(config.replicates);
  parallel_for(
      config.replicates,
      [&](std::size_t j) {
        const PointSequence replicate = simulate(sim, j);
        auto curves = all_curves(replicate, r, h, config.cumulative);
        for (std::size_t s = 0; s < 4; ++s) replicate_curves[s][j] = std::move(curves[s].values);
      },
      config.threads);

  auto data_curves = all_curves(data, r, h, config.cumulative);
  std::array<EnvelopeBand, 4> out;
  for (std::size_t s = 0; s < 4; ++s) {
    EnvelopeBand& band = out[s];
    band.kind = kAllStatistics[s];
    band.level = config.level;
    band.n_replicates = config.replicates;
    band.seed = config.seed;
    pointwise_band(replicate_curves[s], config.level, band.lower, band.upper);
    band.data_curve = std::move(data_curves[s]);
    band.index = band.data_curve.index;
    band.outside.resize(band.index.size());
    for (std::size_t i = 0; i < band.index.size(); ++i) {
      const double v = band.data_curve.values[i];
      band.outside[i] = (v < band.lower[i] || v > band.upper[i]) ? 1 : 0;
    }
  }
  return out;
}

EnvelopeBand envelope(const PointSequence& data, const ModelParams& params, StatisticKind kind,
                      const EnvelopeConfig& config) {
  auto all = envelopes(data, params, config);
  return std::move(all[static_cast<std::size_t>(kind)]);
}

}  // namespace sspp
