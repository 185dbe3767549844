#include "sspp/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "sspp/error.hpp"

namespace sspp {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::optional<double> to_double(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

[[noreturn]] void parse_error(const std::string& message) {
  throw Error(ErrorCode::parse, message);
}

}  // namespace

Window parse_window(std::string_view spec) {
  const auto parts = split(spec, ',');
  if (parts.size() != 4) {
    parse_error("window spec must be xmin,ymin,xmax,ymax, got '" + std::string(spec) + "'");
  }
  double v[4];
  for (int i = 0; i < 4; ++i) {
    const auto d = to_double(parts[static_cast<std::size_t>(i)]);
    if (!d) parse_error("window spec has a non-numeric field: '" + std::string(spec) + "'");
    v[i] = *d;
  }
  try {
    return Window(v[0], v[1], v[2], v[3]);
  } catch (const Error& e) {
    parse_error(e.what());
  }
}

std::vector<Point> parse_points(std::string_view spec) {
  std::vector<Point> out;
  if (trim(spec).empty()) return out;
  for (auto item : split(spec, ';')) {
    const auto xy = split(item, ',');
    const auto x = xy.size() == 2 ? to_double(xy[0]) : std::nullopt;
    const auto y = xy.size() == 2 ? to_double(xy[1]) : std::nullopt;
    if (!x || !y) parse_error("point list must look like 'x,y;x,y', got '" + std::string(spec) + "'");
    out.push_back({*x, *y});
  }
  return out;
}

PlotRecord ingest_csv(const std::filesystem::path& path, const std::optional<Window>& window) {
  std::ifstream in(path);
  if (!in) parse_error("cannot open '" + path.string() + "'");
  return ingest_csv(in, window, path.stem().string());
}

PlotRecord ingest_csv(std::istream& in, const std::optional<Window>& window, std::string id) {
  std::string line;
  std::size_t line_no = 0;
  // Header: first non-empty line.
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (trim(line).empty()) continue;
    for (auto f : split(line, ',')) header.emplace_back(f);
    break;
  }
  if (header.empty()) parse_error("input CSV is empty");
  std::map<std::string, std::size_t> column;
  for (std::size_t i = 0; i < header.size(); ++i) column[header[i]] = i;
  if (!column.count("x") || !column.count("y")) {
    parse_error("input CSV header must contain columns x and y");
  }
  const std::size_t cx = column["x"];
  const std::size_t cy = column["y"];
  const std::optional<std::size_t> cd =
      column.count("dbh") ? std::optional<std::size_t>(column["dbh"]) : std::nullopt;

  std::vector<Point> points;
  std::vector<double> dbh;
  std::vector<std::size_t> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() != header.size()) {
      parse_error("row " + std::to_string(line_no) + ": expected " +
                  std::to_string(header.size()) + " fields, found " +
                  std::to_string(fields.size()));
    }
    const auto x = to_double(fields[cx]);
    const auto y = to_double(fields[cy]);
    if (!x || !y) parse_error("row " + std::to_string(line_no) + ": non-numeric coordinate");
    points.push_back({*x, *y});
    if (cd) {
      const auto d = to_double(fields[*cd]);
      if (!d) parse_error("row " + std::to_string(line_no) + ": non-numeric dbh");
      if (!(*d > 0.0)) parse_error("row " + std::to_string(line_no) + ": dbh must be positive");
      dbh.push_back(*d);
    }
    rows.push_back(line_no);
  }
  if (points.empty()) parse_error("input CSV has no data rows");

  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::pair{points[a].x, points[a].y} < std::pair{points[b].x, points[b].y};
  });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (points[order[i]] == points[order[i - 1]]) {
      const auto [a, b] = std::minmax(rows[order[i - 1]], rows[order[i]]);
      parse_error("duplicate point at rows " + std::to_string(a) + " and " + std::to_string(b));
    }
  }

  Window w = window.value_or(Window(0, 0, 1, 1));
  if (!window) {
    double x0 = points[0].x, x1 = x0, y0 = points[0].y, y1 = y0;
    for (const Point& p : points) {
      x0 = std::min(x0, p.x);
      x1 = std::max(x1, p.x);
      y0 = std::min(y0, p.y);
      y1 = std::max(y1, p.y);
    }
    try {
      w = Window(x0, y0, x1, y1);
    } catch (const Error&) {
      parse_error("cannot infer a window from collinear points; pass one explicitly");
    }
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!w.contains(points[i])) {
      std::ostringstream msg;
      msg << "row " << rows[i] << ": point (" << points[i].x << ", " << points[i].y
          << ") lies outside the window";
      parse_error(msg.str());
    }
  }
  return PlotRecord{std::move(id), std::move(points), std::move(dbh), w};
}

std::optional<OrderRule> parse_order_rule(std::string_view name) noexcept {
  if (name == "descending_mark") return OrderRule::descending_mark;
  if (name == "ascending_mark") return OrderRule::ascending_mark;
  if (name == "given") return OrderRule::given;
  return std::nullopt;
}

std::string_view order_rule_name(OrderRule rule) noexcept {
  switch (rule) {
    case OrderRule::descending_mark: return "descending_mark";
    case OrderRule::ascending_mark: return "ascending_mark";
    case OrderRule::given: return "given";
  }
  return "unknown";
}

PointSequence order_sequence(const PlotRecord& record, OrderRule rule) {
  const bool has_marks = !record.dbh.empty();
  if (rule != OrderRule::given && !has_marks) {
    throw Error(ErrorCode::invalid_argument,
                std::string("ordering rule ") + std::string(order_rule_name(rule)) +
                    " needs a dbh column");
  }
  std::vector<std::size_t> order(record.points.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (rule != OrderRule::given) {
    const bool descending = rule == OrderRule::descending_mark;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const double ma = record.dbh[a];
      const double mb = record.dbh[b];
      if (ma != mb) return descending ? ma > mb : ma < mb;
      const Point& p = record.points[a];
      const Point& q = record.points[b];
      return p.x < q.x || (p.x == q.x && p.y < q.y);
    });
  }
  std::vector<Point> points;
  std::vector<double> marks;
  for (std::size_t i : order) {
    points.push_back(record.points[i]);
    if (has_marks) marks.push_back(record.dbh[i]);
  }
  return PointSequence(std::move(points), record.window,
                       has_marks ? std::optional(std::move(marks)) : std::nullopt);
}

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, ptr);
}

void write_sequence_csv(std::ostream& out, const PointSequence& seq) {
  const bool marks = seq.marks().has_value();
  out << (marks ? "index,x,y,dbh\n" : "index,x,y\n");
  for (std::size_t i = 0; i < seq.size(); ++i) {
    out << i + 1 << ',' << format_double(seq[i].x) << ',' << format_double(seq[i].y);
    if (marks) out << ',' << format_double((*seq.marks())[i]);
    out << '\n';
  }
}

void write_curve_csv(std::ostream& out, const SummaryCurve& curve) {
  out << "index,value\n";
  for (std::size_t i = 0; i < curve.values.size(); ++i) {
    out << curve.index[i] << ',' << format_double(curve.values[i]) << '\n';
  }
}

void write_band_csv(std::ostream& out, const EnvelopeBand& band) {
  out << "index,value,lower,upper\n";
  for (std::size_t i = 0; i < band.index.size(); ++i) {
    out << band.index[i] << ',' << format_double(band.data_curve.values[i]) << ','
        << format_double(band.lower[i]) << ',' << format_double(band.upper[i]) << '\n';
  }
}

void write_surface_csv(std::ostream& out, const FitResult& fit) {
  out << "theta,r,loglik\n";
  for (const auto& p : fit.surface) {
    out << format_double(p.theta) << ',' << format_double(p.radius) << ','
        << format_double(p.loglik) << '\n';
  }
}

void write_csr_csv(std::ostream& out, const GlobalEnvelopeResult& result) {
  out << "r,value,lower,upper\n";
  const auto& c = result.data_curve;
  for (std::size_t i = 0; i < c.r_grid.size(); ++i) {
    out << format_double(c.r_grid[i]) << ',' << format_double(c.values[i]) << ','
        << format_double(result.lower[i]) << ',' << format_double(result.upper[i]) << '\n';
  }
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::invalid_argument, "cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw Error(ErrorCode::invalid_argument, "failed writing '" + path.string() + "'");
}

}  // namespace sspp
