#pragma once

#include <string>
#include <vector>

#include "sspp/csr.hpp"
#include "sspp/inference.hpp"
#include "sspp/model.hpp"
#include "sspp/summaries.hpp"

namespace sspp::svg {

struct Series {
  std::vector<double> x;
  std::vector<double> y;
  std::string stroke = "#000000";
  bool dashed = false;
};

struct Band {
  std::vector<double> x;
  std::vector<double> lower;
  std::vector<double> upper;
  std::string fill = "#bdbdbd";
};

struct Panel {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Band> bands;
  std::vector<Series> series;
};

// Grid of line panels, `columns` per row.
std::string render_panels(const std::vector<Panel>& panels, int columns);

// Point pattern; with marks each tree is drawn as a disc of radius
// 0.02 * dbh metres (twice the DBH, in cm, read as metres / 100).
std::string render_pattern(const PointSequence& seq);

// Log-likelihood surface heat map with the estimate marked.
std::string render_surface(const FitResult& fit);

Panel curve_panel(const SummaryCurve& curve);
Panel band_panel(const EnvelopeBand& band);
Panel csr_panel(const GlobalEnvelopeResult& result);

}  // namespace sspp::svg
