#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "sspp/model.hpp"

namespace sspp {

enum class StatisticKind { lagged_clustering, first_contact, proper_zone, ball_coverage };

inline constexpr std::array<StatisticKind, 4> kAllStatistics = {
    StatisticKind::lagged_clustering, StatisticKind::first_contact,
    StatisticKind::proper_zone, StatisticKind::ball_coverage};

std::string_view statistic_name(StatisticKind kind) noexcept;
std::optional<StatisticKind> parse_statistic(std::string_view name) noexcept;

// Values of one order-aware statistic against sequence position (1-based).
// Lagged clustering and first contact start at index 2; proper zone and
// ball coverage start at index 1.
struct SummaryCurve {
  StatisticKind kind = StatisticKind::lagged_clustering;
  std::vector<std::size_t> index;
  std::vector<double> values;
  bool cumulative = false;
  double r_used = 0.0;  // 0 for first contact, which has no radius
  double cell_size = 0.0;
};

SummaryCurve lagged_clustering_curve(const PointSequence& seq, double r, bool cumulative);
SummaryCurve first_contact_curve(const PointSequence& seq, bool cumulative);
SummaryCurve proper_zone_curve(const PointSequence& seq, double r, double cell_size,
                               bool cumulative);
// Already monotone; never cumulated.
SummaryCurve ball_coverage_curve(const PointSequence& seq, double r, double cell_size);

// All four curves from a single raster pass. `cumulative` applies to the
// three per-point statistics; ball coverage is reported as is.
std::array<SummaryCurve, 4> all_curves(const PointSequence& seq, double r, double cell_size,
                                       bool cumulative);

struct EnvelopeBand {
  StatisticKind kind = StatisticKind::lagged_clustering;
  std::vector<std::size_t> index;
  std::vector<double> lower;
  std::vector<double> upper;
  double level = 0.95;
  std::size_t n_replicates = 0;
  std::uint64_t seed = 0;
  SummaryCurve data_curve;
  std::vector<std::uint8_t> outside;  // 1 where the data curve leaves the band

  std::size_t exceedances() const noexcept;
  double fraction_inside() const noexcept;
};

struct EnvelopeConfig {
  std::size_t replicates = 999;
  double level = 0.95;
  std::uint64_t seed = 0;
  bool cumulative = true;
  std::optional<double> cell_size;
  std::size_t threads = 0;
};

// Pointwise band from the order statistics ceil(a*m) and m + 1 - ceil(a*m)
// with a = (1 - level) / 2 (at least the minimum / maximum).
void pointwise_band(const std::vector<std::vector<double>>& curves, double level,
                    std::vector<double>& lower, std::vector<double>& upper);

// Monte Carlo envelopes of all four statistics from `config.replicates`
// simulations of the fitted model, the data's first two points held fixed.
std::array<EnvelopeBand, 4> envelopes(const PointSequence& data, const ModelParams& params,
                                      const EnvelopeConfig& config);

EnvelopeBand envelope(const PointSequence& data, const ModelParams& params,
                      StatisticKind kind, const EnvelopeConfig& config);

}  // namespace sspp
