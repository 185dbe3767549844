#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "sspp/serialize.hpp"

namespace sspp::cli {

inline constexpr const char* kVersion = "0.1.0";

struct InputOptions {
  std::filesystem::path input;
  std::string window;  // empty: bounding box of the points
  std::string order = "auto";  // auto = descending_mark if dbh exists, else given
  std::optional<double> cell_size;
  std::uint64_t seed = 0;
  std::filesystem::path out_dir = ".";
  std::size_t threads = 0;
};

struct FitOptions {
  InputOptions in;
  double theta_lo = 0.025, theta_hi = 0.975, theta_step = 0.05;
  std::optional<double> r_lower;
  double r_upper = 5.0, r_step = 0.1;
  bool refine = true;
  std::size_t bootstrap = 20;
  bool svg = true;
};

struct SimulateOptions {
  double theta = 0.5;
  double r = 0.1;
  std::size_t n = 100;
  std::string window = "0,0,1,1";
  std::string start;  // "x,y;x,y"
  std::uint64_t seed = 0;
  std::size_t max_rejects = 1'000'000;
  std::filesystem::path out_dir = ".";
};

struct SummarizeOptions {
  InputOptions in;
  double r = 0.0;
  bool cumulative = true;
};

struct EnvelopeOptions {
  InputOptions in;
  double theta = 0.5;
  double r = 0.0;
  std::size_t replicates = 999;
  double level = 0.95;
  std::string kind = "all";
  bool cumulative = true;
};

struct CsrOptions {
  InputOptions in;
  std::size_t n_sim = 4999;
  double r_max = 5.0;
  std::size_t r_steps = 513;
  double alpha = 0.05;
};

struct ReportOptions {
  FitOptions fit;
  std::size_t envelope_replicates = 999;
  double envelope_level = 0.95;
  std::size_t csr_sims = 4999;
  double csr_r_max = 5.0;
  std::size_t csr_r_steps = 513;
  double csr_alpha = 0.05;
};

// Each command writes its files into the output directory, always including
// run_config.json, and returns the JSON summary it printed.
Json run_fit(const FitOptions& opts);
Json run_simulate(const SimulateOptions& opts);
Json run_summarize(const SummarizeOptions& opts);
Json run_envelope(const EnvelopeOptions& opts);
Json run_csr_test(const CsrOptions& opts);
Json run_report(const ReportOptions& opts);

}  // namespace sspp::cli
