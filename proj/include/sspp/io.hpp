#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sspp/csr.hpp"
#include "sspp/inference.hpp"
#include "sspp/model.hpp"
#include "sspp/summaries.hpp"

namespace sspp {

// One plot of trees: locations in metres and DBH in cm.
struct PlotRecord {
  std::string id;
  std::vector<Point> points;
  std::vector<double> dbh;  // empty when the file carries no dbh column
  Window window;
};

// "xmin,ymin,xmax,ymax"
Window parse_window(std::string_view spec);

// "x,y;x,y"
std::vector<Point> parse_points(std::string_view spec);

// Reads a header-first CSV with columns x and y and optionally dbh (an
// index column, as written by `simulate`, is accepted and ignored). Without
// an explicit window the bounding box of the points is used.
PlotRecord ingest_csv(const std::filesystem::path& path,
                      const std::optional<Window>& window = std::nullopt);
PlotRecord ingest_csv(std::istream& in, const std::optional<Window>& window,
                      std::string id = "stdin");

enum class OrderRule { descending_mark, ascending_mark, given };

std::optional<OrderRule> parse_order_rule(std::string_view name) noexcept;
std::string_view order_rule_name(OrderRule rule) noexcept;

// Sorts by DBH (ties: x then y ascending) or keeps file order. Marks travel
// with their points.
PointSequence order_sequence(const PlotRecord& record, OrderRule rule);

// Shortest decimal form that parses back to the same double.
std::string format_double(double value);

void write_sequence_csv(std::ostream& out, const PointSequence& seq);
void write_curve_csv(std::ostream& out, const SummaryCurve& curve);
void write_band_csv(std::ostream& out, const EnvelopeBand& band);
void write_surface_csv(std::ostream& out, const FitResult& fit);
void write_csr_csv(std::ostream& out, const GlobalEnvelopeResult& result);

// Writes `text` to `path`, creating parent directories.
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace sspp
