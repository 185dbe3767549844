#include "sspp/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace sspp::svg {

namespace {

constexpr double kPanelWidth = 360.0;
constexpr double kPanelHeight = 280.0;
constexpr double kMarginLeft = 56.0;
constexpr double kMarginRight = 16.0;
constexpr double kMarginTop = 28.0;
constexpr double kMarginBottom = 40.0;

// Fixed precision keeps the files stable and diff-able.
std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", std::abs(v) < 1e-12 ? 0.0 : v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void include(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void finish() {
    if (!(lo <= hi)) {
      lo = 0.0;
      hi = 1.0;
    }
    if (hi - lo < 1e-12) {
      lo -= 0.5;
      hi += 0.5;
    }
  }
};

class Frame {
 public:
  Frame(double ox, double oy, Range xr, Range yr) : ox_(ox), oy_(oy), xr_(xr), yr_(yr) {}

  double x(double v) const {
    return ox_ + kMarginLeft +
           (v - xr_.lo) / (xr_.hi - xr_.lo) * (kPanelWidth - kMarginLeft - kMarginRight);
  }
  double y(double v) const {
    return oy_ + kPanelHeight - kMarginBottom -
           (v - yr_.lo) / (yr_.hi - yr_.lo) * (kPanelHeight - kMarginTop - kMarginBottom);
  }
  const Range& xr() const { return xr_; }
  const Range& yr() const { return yr_; }
  double ox() const { return ox_; }
  double oy() const { return oy_; }

 private:
  double ox_, oy_;
  Range xr_, yr_;
};

void axes(std::ostringstream& out, const Frame& f, const Panel& p) {
  const double x0 = f.x(f.xr().lo), x1 = f.x(f.xr().hi);
  const double y0 = f.y(f.yr().lo), y1 = f.y(f.yr().hi);
  out << "<rect x=\"" << num(x0) << "\" y=\"" << num(y1) << "\" width=\"" << num(x1 - x0)
      << "\" height=\"" << num(y0 - y1) << "\" fill=\"none\" stroke=\"#000000\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double xv = f.xr().lo + (f.xr().hi - f.xr().lo) * t / 4.0;
    const double yv = f.yr().lo + (f.yr().hi - f.yr().lo) * t / 4.0;
    out << "<text x=\"" << num(f.x(xv)) << "\" y=\"" << num(y0 + 14)
        << "\" font-size=\"10\" text-anchor=\"middle\">" << tick_label(xv) << "</text>\n";
    out << "<text x=\"" << num(x0 - 4) << "\" y=\"" << num(f.y(yv) + 3)
        << "\" font-size=\"10\" text-anchor=\"end\">" << tick_label(yv) << "</text>\n";
  }
  out << "<text x=\"" << num((x0 + x1) / 2) << "\" y=\"" << num(f.oy() + 18)
      << "\" font-size=\"12\" text-anchor=\"middle\">" << escape(p.title) << "</text>\n";
  out << "<text x=\"" << num((x0 + x1) / 2) << "\" y=\"" << num(y0 + 30)
      << "\" font-size=\"11\" text-anchor=\"middle\">" << escape(p.x_label) << "</text>\n";
  out << "<text x=\"" << num(f.ox() + 12) << "\" y=\"" << num((y0 + y1) / 2)
      << "\" font-size=\"11\" text-anchor=\"middle\" transform=\"rotate(-90 " << num(f.ox() + 12)
      << ' ' << num((y0 + y1) / 2) << ")\">" << escape(p.y_label) << "</text>\n";
}

std::string header(double width, double height) {
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\""
      << num(height) << "\" viewBox=\"0 0 " << num(width) << ' ' << num(height) << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
  return out.str();
}

}  // namespace

std::string render_panels(const std::vector<Panel>& panels, int columns) {
  columns = std::max(1, columns);
  const int rows = static_cast<int>((panels.size() + static_cast<std::size_t>(columns) - 1) /
                                    static_cast<std::size_t>(columns));
  std::ostringstream out;
  out << header(kPanelWidth * columns, kPanelHeight * std::max(rows, 1));
  for (std::size_t k = 0; k < panels.size(); ++k) {
    const Panel& p = panels[k];
    Range xr, yr;
    for (const auto& b : p.bands) {
      for (double v : b.x) xr.include(v);
      for (double v : b.lower) yr.include(v);
      for (double v : b.upper) yr.include(v);
    }
    for (const auto& s : p.series) {
      for (double v : s.x) xr.include(v);
      for (double v : s.y) yr.include(v);
    }
    xr.finish();
    yr.finish();
    const Frame f(kPanelWidth * static_cast<double>(k % static_cast<std::size_t>(columns)),
                  kPanelHeight * static_cast<double>(k / static_cast<std::size_t>(columns)), xr,
                  yr);
    for (const auto& b : p.bands) {
      out << "<polygon fill=\"" << b.fill << "\" stroke=\"none\" points=\"";
      for (std::size_t i = 0; i < b.x.size(); ++i) {
        out << num(f.x(b.x[i])) << ',' << num(f.y(b.upper[i])) << ' ';
      }
      for (std::size_t i = b.x.size(); i-- > 0;) {
        out << num(f.x(b.x[i])) << ',' << num(f.y(b.lower[i])) << ' ';
      }
      out << "\"/>\n";
    }
    for (const auto& s : p.series) {
      out << "<polyline fill=\"none\" stroke=\"" << s.stroke << "\" stroke-width=\"1.5\"";
      if (s.dashed) out << " stroke-dasharray=\"5,3\"";
      out << " points=\"";
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        out << num(f.x(s.x[i])) << ',' << num(f.y(s.y[i])) << ' ';
      }
      out << "\"/>\n";
    }
    axes(out, f, p);
  }
  out << "</svg>\n";
  return out.str();
}

std::string render_pattern(const PointSequence& seq) {
  const Window& w = seq.window();
  const double size = 480.0;
  const double margin = 20.0;
  const double scale = (size - 2 * margin) / std::max(w.width(), w.height());
  const double width = w.width() * scale + 2 * margin;
  const double height = w.height() * scale + 2 * margin;
  auto px = [&](double x) { return margin + (x - w.xmin()) * scale; };
  auto py = [&](double y) { return height - margin - (y - w.ymin()) * scale; };
  std::ostringstream out;
  out << header(width, height);
  out << "<rect x=\"" << num(margin) << "\" y=\"" << num(margin) << "\" width=\""
      << num(w.width() * scale) << "\" height=\"" << num(w.height() * scale)
      << "\" fill=\"none\" stroke=\"#000000\"/>\n";
  const auto& marks = seq.marks();
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const double r = marks ? 0.02 * (*marks)[i] * scale : 2.0;
    out << "<circle cx=\"" << num(px(seq[i].x)) << "\" cy=\"" << num(py(seq[i].y))
        << "\" r=\"" << num(std::max(r, 1.0)) << "\" fill=\"none\" stroke=\"#000000\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::string render_surface(const FitResult& fit) {
  const std::size_t nt = fit.theta_count;
  const std::size_t nr = fit.radius_count;
  const double cell = 12.0;
  const double margin_left = 56.0, margin_bottom = 40.0, margin_top = 28.0, margin_right = 16.0;
  const double width = margin_left + margin_right + cell * static_cast<double>(nr);
  const double height = margin_top + margin_bottom + cell * static_cast<double>(nt);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& p : fit.surface) {
    if (std::isfinite(p.loglik)) {
      lo = std::min(lo, p.loglik);
      hi = std::max(hi, p.loglik);
    }
  }
  if (!(hi > lo)) hi = lo + 1.0;
  std::ostringstream out;
  out << header(width, height);
  for (std::size_t i = 0; i < nt; ++i) {
    for (std::size_t j = 0; j < nr; ++j) {
      const auto& p = fit.surface[i * nr + j];
      const double t = std::isfinite(p.loglik) ? (p.loglik - lo) / (hi - lo) : 0.0;
      const int g = static_cast<int>(std::lround(255.0 * (1.0 - t)));
      char colour[16];
      std::snprintf(colour, sizeof(colour), "#%02x%02x%02x", 255, g, g);
      out << "<rect x=\"" << num(margin_left + cell * static_cast<double>(j)) << "\" y=\""
          << num(margin_top + cell * static_cast<double>(nt - 1 - i)) << "\" width=\""
          << num(cell) << "\" height=\"" << num(cell) << "\" fill=\"" << colour << "\"/>\n";
    }
  }
  const double r_step = nr > 1 ? fit.surface[1].radius - fit.surface[0].radius : 1.0;
  const double t_step = nt > 1 ? fit.surface[nr].theta - fit.surface[0].theta : 1.0;
  const double cx = margin_left + cell * ((fit.r_hat - fit.surface[0].radius) / r_step + 0.5);
  const double cy =
      margin_top + cell * (static_cast<double>(nt) - 0.5 -
                           (fit.theta_hat - fit.surface[0].theta) / t_step);
  out << "<circle cx=\"" << num(cx) << "\" cy=\"" << num(cy)
      << "\" r=\"4\" fill=\"none\" stroke=\"#0000ff\" stroke-width=\"2\"/>\n";
  out << "<text x=\"" << num(width / 2) << "\" y=\"18\" font-size=\"12\" text-anchor=\"middle\">"
      << "log-likelihood surface</text>\n";
  out << "<text x=\"" << num(width / 2) << "\" y=\"" << num(height - 12)
      << "\" font-size=\"11\" text-anchor=\"middle\">r from " << tick_label(fit.surface[0].radius)
      << " to " << tick_label(fit.surface.back().radius) << "</text>\n";
  out << "<text x=\"14\" y=\"" << num(height / 2)
      << "\" font-size=\"11\" text-anchor=\"middle\" transform=\"rotate(-90 14 " << num(height / 2)
      << ")\">theta</text>\n";
  out << "</svg>\n";
  return out.str();
}

namespace {

std::vector<double> as_double(const std::vector<std::size_t>& v) {
  return {v.begin(), v.end()};
}

std::string curve_title(StatisticKind kind, bool cumulative) {
  std::string name(statistic_name(kind));
  std::replace(name.begin(), name.end(), '_', ' ');
  return cumulative && kind != StatisticKind::ball_coverage ? "cumulative " + name : name;
}

}  // namespace

Panel curve_panel(const SummaryCurve& curve) {
  Panel p;
  p.title = curve_title(curve.kind, curve.cumulative);
  p.x_label = "order index";
  p.series.push_back({as_double(curve.index), curve.values});
  return p;
}

Panel band_panel(const EnvelopeBand& band) {
  Panel p = curve_panel(band.data_curve);
  p.bands.push_back({as_double(band.index), band.lower, band.upper});
  return p;
}

Panel csr_panel(const GlobalEnvelopeResult& result) {
  Panel p;
  p.title = "L(r) - r, global ERL envelope";
  p.x_label = "r";
  const auto& r = result.data_curve.r_grid;
  p.bands.push_back({r, result.lower, result.upper});
  p.series.push_back({r, std::vector<double>(r.size(), 0.0), "#000000", true});
  p.series.push_back({r, result.data_curve.values});
  return p;
}

}  // namespace sspp::svg
