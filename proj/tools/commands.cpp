#include "commands.hpp"

#include <algorithm>
#include <sstream>

#include "sspp/csr.hpp"
#include "sspp/error.hpp"
#include "sspp/inference.hpp"
#include "sspp/io.hpp"
#include "sspp/sampler.hpp"
#include "sspp/summaries.hpp"
#include "sspp/svg.hpp"

namespace sspp::cli {

namespace fs = std::filesystem;

namespace {

struct LoadedInput {
  PlotRecord record;
  PointSequence sequence;
  OrderRule rule;
};

LoadedInput load(const InputOptions& in) {
  std::optional<Window> window;
  if (!in.window.empty()) window = parse_window(in.window);
  PlotRecord record = ingest_csv(in.input, window);
  OrderRule rule = OrderRule::given;
  if (in.order == "auto") {
    rule = record.dbh.empty() ? OrderRule::given : OrderRule::descending_mark;
  } else if (auto parsed = parse_order_rule(in.order)) {
    rule = *parsed;
  } else {
    throw Error(ErrorCode::parse, "unknown ordering rule '" + in.order + "'");
  }
  PointSequence seq = order_sequence(record, rule);
  return {std::move(record), std::move(seq), rule};
}

Json input_json(const InputOptions& in, const LoadedInput& loaded, double cell_size) {
  return {
      {"input", in.input.generic_string()},
      {"window", to_json(loaded.record.window)},
      {"order", order_rule_name(loaded.rule)},
      {"n_points", loaded.sequence.size()},
      {"cell_size", cell_size},
      {"seed", in.seed},
  };
}

void write_json(const fs::path& path, const Json& j) { write_text_file(path, j.dump(2) + "\n"); }

template <typename Writer, typename T>
void write_csv(const fs::path& path, Writer writer, const T& value) {
  std::ostringstream out;
  writer(out, value);
  write_text_file(path, out.str());
}

FitConfig fit_config(const FitOptions& opts, std::uint64_t seed) {
  FitConfig config;
  config.theta_grid = {opts.theta_lo, opts.theta_hi, opts.theta_step};
  config.r_lower = opts.r_lower;
  config.r_upper = opts.r_upper;
  config.r_step = opts.r_step;
  config.refine = opts.refine;
  config.cell_size = opts.in.cell_size;
  config.bootstrap_replicates = opts.bootstrap;
  config.seed = seed;
  config.threads = opts.in.threads;
  return config;
}

Json fit_config_json(const FitConfig& c, double r_lower) {
  return {
      {"theta_grid", {c.theta_grid.lo, c.theta_grid.hi, c.theta_grid.step}},
      {"r_grid", {r_lower, c.r_upper, c.r_step}},
      {"refine", c.refine},
      {"bootstrap_replicates", c.bootstrap_replicates},
      {"seed", c.seed},
  };
}

Json write_fit_outputs(const fs::path& dir, const FitResult& fit, const Json& config, bool svg) {
  Json j = to_json(fit);
  j["config"] = config;
  write_json(dir / "fit.json", j);
  write_csv(dir / "loglik_surface.csv", write_surface_csv, fit);
  if (svg) write_text_file(dir / "loglik_surface.svg", svg::render_surface(fit));
  return j;
}

std::vector<StatisticKind> selected_kinds(const std::string& kind) {
  if (kind == "all") return {kAllStatistics.begin(), kAllStatistics.end()};
  if (auto k = parse_statistic(kind)) return {*k};
  throw Error(ErrorCode::parse, "unknown statistic '" + kind + "'");
}

Json write_envelopes(const fs::path& dir, const std::array<EnvelopeBand, 4>& bands,
                     const std::vector<StatisticKind>& kinds, const Json& config) {
  Json summary = Json::object();
  std::vector<svg::Panel> panels;
  for (StatisticKind kind : kinds) {
    const EnvelopeBand& band = bands[static_cast<std::size_t>(kind)];
    const std::string stem = "envelope_" + std::string(statistic_name(kind));
    Json j = to_json(band);
    j["config"] = config;
    write_json(dir / (stem + ".json"), j);
    write_csv(dir / (stem + ".csv"), write_band_csv, band);
    panels.push_back(svg::band_panel(band));
    summary[std::string(statistic_name(kind))] = {
        {"csv", stem + ".csv"},
        {"json", stem + ".json"},
        {"fraction_inside", band.fraction_inside()},
        {"exceedances", band.exceedances()},
    };
  }
  write_text_file(dir / "envelopes.svg", svg::render_panels(panels, 2));
  return summary;
}

Json write_summaries(const fs::path& dir, const std::array<SummaryCurve, 4>& curves,
                     const Json& config) {
  Json files = Json::object();
  Json all = Json::object();
  std::vector<svg::Panel> panels;
  for (const SummaryCurve& curve : curves) {
    const std::string stem = "summary_" + std::string(statistic_name(curve.kind));
    write_csv(dir / (stem + ".csv"), write_curve_csv, curve);
    files[std::string(statistic_name(curve.kind))] = stem + ".csv";
    all[std::string(statistic_name(curve.kind))] = to_json(curve);
    panels.push_back(svg::curve_panel(curve));
  }
  all["config"] = config;
  write_json(dir / "summaries.json", all);
  write_text_file(dir / "summaries.svg", svg::render_panels(panels, 2));
  return files;
}

Json write_csr(const fs::path& dir, const GlobalEnvelopeResult& result, const Json& config) {
  Json j = to_json(result);
  j["config"] = config;
  write_json(dir / "csr_test.json", j);
  write_csv(dir / "csr_test.csv", write_csr_csv, result);
  write_text_file(dir / "csr_test.svg", svg::render_panels({svg::csr_panel(result)}, 1));
  return j;
}

std::vector<double> csr_grid(const Window& w, double r_max, std::size_t steps) {
  return default_r_grid(w, r_max, steps);
}

}  // namespace

Json run_fit(const FitOptions& opts) {
  const LoadedInput loaded = load(opts.in);
  const FitConfig config = fit_config(opts, opts.in.seed);
  const FitResult result = fit(loaded.sequence, config);
  Json run = {{"command", "fit"}, {"version", kVersion}};
  run["input"] = input_json(opts.in, loaded, result.cell_size);
  run["fit"] = fit_config_json(config, result.r_lower);
  write_json(opts.in.out_dir / "run_config.json", run);
  return write_fit_outputs(opts.in.out_dir, result, run, opts.svg);
}

Json run_simulate(const SimulateOptions& opts) {
  const Window window = parse_window(opts.window);
  SimulationConfig config{ModelParams(opts.theta, opts.r, window)};
  config.n_points = opts.n;
  config.start_points = parse_points(opts.start);
  config.seed = opts.seed;
  config.max_rejects_per_point = opts.max_rejects;
  const PointSequence seq = simulate(config);
  Json run = {
      {"command", "simulate"},
      {"version", kVersion},
      {"theta", opts.theta},
      {"r", opts.r},
      {"n", opts.n},
      {"window", to_json(window)},
      {"start", Json::array()},
      {"seed", opts.seed},
      {"max_rejects_per_point", opts.max_rejects},
  };
  for (const Point& p : config.start_points) run["start"].push_back(Json::array({p.x, p.y}));
  write_json(opts.out_dir / "run_config.json", run);
  write_csv(opts.out_dir / "sequence.csv", write_sequence_csv, seq);
  write_text_file(opts.out_dir / "pattern.svg", svg::render_pattern(seq));
  return {{"n_points", seq.size()}, {"file", "sequence.csv"}, {"config", run}};
}

Json run_summarize(const SummarizeOptions& opts) {
  const LoadedInput loaded = load(opts.in);
  const double h = opts.in.cell_size.value_or(default_cell_size(loaded.record.window));
  Json run = {{"command", "summarize"}, {"version", kVersion}, {"r", opts.r},
              {"cumulative", opts.cumulative}};
  run["input"] = input_json(opts.in, loaded, h);
  write_json(opts.in.out_dir / "run_config.json", run);
  const auto curves = all_curves(loaded.sequence, opts.r, h, opts.cumulative);
  return {{"files", write_summaries(opts.in.out_dir, curves, run)}, {"config", run}};
}

Json run_envelope(const EnvelopeOptions& opts) {
  const LoadedInput loaded = load(opts.in);
  const auto kinds = selected_kinds(opts.kind);
  const double h = opts.in.cell_size.value_or(default_cell_size(loaded.record.window));
  const ModelParams params(opts.theta, opts.r, loaded.record.window);
  EnvelopeConfig config;
  config.replicates = opts.replicates;
  config.level = opts.level;
  config.seed = opts.in.seed;
  config.cumulative = opts.cumulative;
  config.cell_size = h;
  config.threads = opts.in.threads;
  Json run = {{"command", "envelope"}, {"version", kVersion},   {"theta", opts.theta},
              {"r", opts.r},           {"replicates", opts.replicates}, {"level", opts.level},
              {"kind", opts.kind},     {"cumulative", opts.cumulative}};
  run["input"] = input_json(opts.in, loaded, h);
  write_json(opts.in.out_dir / "run_config.json", run);
  const auto bands = envelopes(loaded.sequence, params, config);
  return {{"envelopes", write_envelopes(opts.in.out_dir, bands, kinds, run)}, {"config", run}};
}

Json run_csr_test(const CsrOptions& opts) {
  const LoadedInput loaded = load(opts.in);
  const Window& w = loaded.record.window;
  const auto grid = csr_grid(w, opts.r_max, opts.r_steps);
  CsrTestConfig config;
  config.n_sim = opts.n_sim;
  config.alpha = opts.alpha;
  config.seed = opts.in.seed;
  config.threads = opts.in.threads;
  Json run = {{"command", "csr-test"}, {"version", kVersion}, {"n_sim", opts.n_sim},
              {"r_max", grid.back()},  {"r_steps", opts.r_steps}, {"alpha", opts.alpha}};
  run["input"] = input_json(opts.in, loaded, 0.0);
  run["input"].erase("cell_size");
  write_json(opts.in.out_dir / "run_config.json", run);
  const auto result = erl_global_test(loaded.record.points, w, grid, config);
  write_csr(opts.in.out_dir, result, run);
  return {{"p_value", result.p_value}, {"config", run}};
}

Json run_report(const ReportOptions& opts) {
  const InputOptions& in = opts.fit.in;
  const fs::path& dir = in.out_dir;
  const LoadedInput loaded = load(in);
  const Window& w = loaded.record.window;
  const double h = in.cell_size.value_or(default_cell_size(w));
  const std::uint64_t csr_seed = in.seed;
  const std::uint64_t fit_seed = in.seed + 1;
  const std::uint64_t envelope_seed = in.seed + 2;

  const FitConfig fconfig = fit_config(opts.fit, fit_seed);
  const auto grid = csr_grid(w, opts.csr_r_max, opts.csr_r_steps);

  Json run = {{"command", "report"}, {"version", kVersion}};
  run["input"] = input_json(in, loaded, h);
  run["fit"] = fit_config_json(fconfig, fconfig.r_lower.value_or(default_r_lower(loaded.sequence)));
  run["envelope"] = {{"replicates", opts.envelope_replicates},
                     {"level", opts.envelope_level},
                     {"seed", envelope_seed}};
  run["csr"] = {{"n_sim", opts.csr_sims}, {"r_max", grid.back()}, {"r_steps", opts.csr_r_steps},
                {"alpha", opts.csr_alpha}, {"seed", csr_seed}};
  write_json(dir / "run_config.json", run);

  CsrTestConfig cconfig;
  cconfig.n_sim = opts.csr_sims;
  cconfig.alpha = opts.csr_alpha;
  cconfig.seed = csr_seed;
  cconfig.threads = in.threads;
  const auto csr = erl_global_test(loaded.record.points, w, grid, cconfig);
  write_csr(dir, csr, run);

  const FitResult fitted = fit(loaded.sequence, fconfig);
  write_fit_outputs(dir, fitted, run, opts.fit.svg);

  const ModelParams params(fitted.theta_hat, fitted.r_hat, w);
  EnvelopeConfig econfig;
  econfig.replicates = opts.envelope_replicates;
  econfig.level = opts.envelope_level;
  econfig.seed = envelope_seed;
  econfig.cell_size = h;
  econfig.threads = in.threads;
  const auto bands = envelopes(loaded.sequence, params, econfig);
  const Json envelope_files = write_envelopes(
      dir, bands, {kAllStatistics.begin(), kAllStatistics.end()}, run);

  const auto curves = all_curves(loaded.sequence, fitted.r_hat, h, true);
  const Json summary_files = write_summaries(dir, curves, run);

  Json manifest = {{"tool", "sspp"}, {"version", kVersion}};
  manifest["inputs"] = run["input"];
  manifest["config"] = run;
  manifest["seed"] = in.seed;
  manifest["seeds"] = {{"csr", csr_seed}, {"bootstrap", fit_seed}, {"envelope", envelope_seed}};
  manifest["cell_size"] = h;
  manifest["theta_hat"] = fitted.theta_hat;
  manifest["r_hat"] = fitted.r_hat;
  manifest["grid_theta_hat"] = fitted.grid_theta_hat;
  manifest["grid_r_hat"] = fitted.grid_r_hat;
  manifest["max_loglik"] = fitted.max_loglik;
  if (fitted.bootstrap) {
    manifest["theta_ci"] = {fitted.bootstrap->theta_ci.lo, fitted.bootstrap->theta_ci.hi};
    manifest["r_ci"] = {fitted.bootstrap->r_ci.lo, fitted.bootstrap->r_ci.hi};
  } else {
    manifest["theta_ci"] = nullptr;
    manifest["r_ci"] = nullptr;
  }
  manifest["p_csr"] = csr.p_value;
  manifest["envelopes"] = envelope_files;
  manifest["summaries"] = summary_files;
  if (const auto& marks = loaded.sequence.marks(); marks && !marks->empty()) {
    const PiOfRReport pi = pi_of_r_report(params, *std::max_element(marks->begin(), marks->end()));
    write_json(dir / "pi_of_r.json", to_json(pi));
    manifest["pi_of_r"] = to_json(pi);
  } else {
    manifest["pi_of_r"] = nullptr;
  }
  manifest["warnings"] = fitted.warnings;
  Json files = {"run_config.json", "csr_test.json", "csr_test.csv", "csr_test.svg", "fit.json",
                "loglik_surface.csv"};
  if (opts.fit.svg) files.push_back("loglik_surface.svg");
  for (const char* f : {"envelopes.svg", "summaries.json", "summaries.svg"}) files.push_back(f);
  if (!manifest["pi_of_r"].is_null()) files.push_back("pi_of_r.json");
  files.push_back("manifest.json");
  manifest["files"] = files;
  write_json(dir / "manifest.json", manifest);
  return manifest;
}

}  // namespace sspp::cli
