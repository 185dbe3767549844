#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "sspp/error.hpp"

namespace {

using namespace sspp::cli;

void add_input_options(CLI::App* cmd, InputOptions& in) {
  cmd->add_option("-i,--input", in.input, "CSV with columns x,y[,dbh]")->required();
  cmd->add_option("-w,--window", in.window, "observation window xmin,ymin,xmax,ymax");
  cmd->add_option("--order", in.order, "descending_mark | ascending_mark | given | auto")
      ->capture_default_str();
  cmd->add_option("--cell-size", in.cell_size, "raster cell size (default: shorter side / 200)");
  cmd->add_option("--seed", in.seed, "random seed")->capture_default_str();
  cmd->add_option("-o,--out", in.out_dir, "output directory")->capture_default_str();
  cmd->add_option("--threads", in.threads, "worker threads, 0 = all cores")->capture_default_str();
}

void add_fit_options(CLI::App* cmd, FitOptions& f) {
  add_input_options(cmd, f.in);
  cmd->add_option("--theta-lo", f.theta_lo)->capture_default_str();
  cmd->add_option("--theta-hi", f.theta_hi)->capture_default_str();
  cmd->add_option("--theta-step", f.theta_step)->capture_default_str();
  cmd->add_option("--r-lower", f.r_lower, "default: largest DBH / 200 m");
  cmd->add_option("--r-upper", f.r_upper)->capture_default_str();
  cmd->add_option("--r-step", f.r_step)->capture_default_str();
  cmd->add_flag("!--no-refine", f.refine, "skip the Nelder-Mead polish");
  cmd->add_option("--bootstrap", f.bootstrap, "bootstrap replicates, 0 disables")
      ->capture_default_str();
  cmd->add_flag("!--no-svg", f.svg, "skip the surface heat map");
}

void print_error(sspp::ErrorCode code, const std::string& message) {
  std::cerr << "error " << sspp::error_code_name(code) << ": " << message << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sequential spatial point process (SSPP) toolkit"};
  app.set_config("--config", "", "key=value / TOML config file; command-line flags take precedence");
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  FitOptions fit_opts;
  auto* fit_cmd = app.add_subcommand("fit", "maximum-likelihood fit of (theta, r)");
  add_fit_options(fit_cmd, fit_opts);

  SimulateOptions sim_opts;
  auto* sim_cmd = app.add_subcommand("simulate", "simulate one sequence");
  sim_cmd->add_option("--theta", sim_opts.theta)->required();
  sim_cmd->add_option("--r", sim_opts.r)->required();
  sim_cmd->add_option("--n", sim_opts.n)->required();
  sim_cmd->add_option("-w,--window", sim_opts.window)->capture_default_str();
  sim_cmd->add_option("--start", sim_opts.start, "fixed starting points 'x,y;x,y'");
  sim_cmd->add_option("--seed", sim_opts.seed)->capture_default_str();
  sim_cmd->add_option("--max-rejects", sim_opts.max_rejects)->capture_default_str();
  sim_cmd->add_option("-o,--out", sim_opts.out_dir)->capture_default_str();

  SummarizeOptions sum_opts;
  auto* sum_cmd = app.add_subcommand("summarize", "the four order-aware summary curves");
  add_input_options(sum_cmd, sum_opts.in);
  sum_cmd->add_option("--r", sum_opts.r)->required();
  sum_cmd->add_flag("!--per-point", sum_opts.cumulative, "report per-point values");

  EnvelopeOptions env_opts;
  auto* env_cmd = app.add_subcommand("envelope", "Monte Carlo pointwise envelopes");
  add_input_options(env_cmd, env_opts.in);
  env_cmd->add_option("--theta", env_opts.theta)->required();
  env_cmd->add_option("--r", env_opts.r)->required();
  env_cmd->add_option("--replicates", env_opts.replicates)->capture_default_str();
  env_cmd->add_option("--level", env_opts.level)->capture_default_str();
  env_cmd->add_option("--kind", env_opts.kind)->capture_default_str();
  env_cmd->add_flag("!--per-point", env_opts.cumulative, "envelopes of per-point values");

  CsrOptions csr_opts;
  auto* csr_cmd = app.add_subcommand("csr-test", "L-function ERL global envelope test");
  add_input_options(csr_cmd, csr_opts.in);
  csr_cmd->add_option("--n-sim", csr_opts.n_sim)->capture_default_str();
  csr_cmd->add_option("--r-max", csr_opts.r_max)->capture_default_str();
  csr_cmd->add_option("--r-steps", csr_opts.r_steps)->capture_default_str();
  csr_cmd->add_option("--alpha", csr_opts.alpha)->capture_default_str();

  ReportOptions rep_opts;
  auto* rep_cmd = app.add_subcommand("report", "full pipeline into one directory");
  add_fit_options(rep_cmd, rep_opts.fit);
  rep_cmd->add_option("--replicates", rep_opts.envelope_replicates)->capture_default_str();
  rep_cmd->add_option("--level", rep_opts.envelope_level)->capture_default_str();
  rep_cmd->add_option("--n-sim", rep_opts.csr_sims)->capture_default_str();
  rep_cmd->add_option("--r-max", rep_opts.csr_r_max)->capture_default_str();
  rep_cmd->add_option("--r-steps", rep_opts.csr_r_steps)->capture_default_str();
  rep_cmd->add_option("--alpha", rep_opts.csr_alpha)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_error(sspp::ErrorCode::parse, e.what());
    return 2;
  }

  try {
    sspp::Json out;
    if (*fit_cmd) out = run_fit(fit_opts);
    else if (*sim_cmd) out = run_simulate(sim_opts);
    else if (*sum_cmd) out = run_summarize(sum_opts);
    else if (*env_cmd) out = run_envelope(env_opts);
    else if (*csr_cmd) out = run_csr_test(csr_opts);
    else if (*rep_cmd) out = run_report(rep_opts);
    out.erase("config");
    std::cout << out.dump(2) << '\n';
  } catch (const sspp::Error& e) {
    print_error(e.code(), e.what());
    return sspp::exit_status(e.code());
  } catch (const std::exception& e) {
    print_error(sspp::ErrorCode::invalid_argument, e.what());
    return 2;
  }
  return 0;
}
