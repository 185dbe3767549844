#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "commands.hpp"
#include "sspp/io.hpp"
#include "sspp/sampler.hpp"

#if defined(__unix__) || defined(__APPLE__)
#include <sys/wait.h>
#endif

namespace fs = std::filesystem;
using namespace sspp;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("sspp_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

// A marked pattern in the Plot I window.
fs::path write_plot(const fs::path& dir) {
  SimulationConfig config{ModelParams(0.17, 2.18, Window(0, 0, 25, 25))};
  config.n_points = 60;
  config.seed = 21;
  const PointSequence seq = simulate(config);
  std::ostringstream csv;
  csv << "x,y,dbh\n";
  for (std::size_t i = 0; i < seq.size(); ++i)
    csv << format_double(seq[i].x) << "," << format_double(seq[i].y) << "," << 40.0 - 0.5 * i << "\n";
  const fs::path path = dir / "plot.csv";
  write_text_file(path, csv.str());
  return path;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string("\"") + SSPP_CLI_PATH + "\" " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
#if defined(WIFEXITED)
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
#else
  return status;
#endif
}

}  // namespace

TEST_CASE("simulate command is reproducible") {
  const fs::path a = scratch("sim_a"), b = scratch("sim_b");
  cli::SimulateOptions opts;
  opts.theta = 0.95;
  opts.r = 0.1;
  opts.n = 100;
  opts.start = "0.1,0.1;0.9,0.9";
  opts.seed = 5;
  opts.out_dir = a;
  cli::run_simulate(opts);
  opts.out_dir = b;
  cli::run_simulate(opts);
  CHECK(slurp(a / "sequence.csv") == slurp(b / "sequence.csv"));
  CHECK(slurp(a / "run_config.json") == slurp(b / "run_config.json"));
  CHECK(fs::exists(a / "pattern.svg"));
  const PlotRecord rec = ingest_csv(a / "sequence.csv", Window(0, 0, 1, 1));
  CHECK(rec.points.size() == 100);
  CHECK(rec.points[0] == Point{0.1, 0.1});
}

TEST_CASE("fit command writes a full surface") {
  const fs::path dir = scratch("fit");
  cli::FitOptions opts;
  opts.in.input = write_plot(dir);
  opts.in.window = "0,0,25,25";
  opts.in.out_dir = dir / "out";
  opts.bootstrap = 0;
  const Json out = cli::run_fit(opts);
  CHECK(out.contains("theta_hat"));
  std::istringstream surface(slurp(dir / "out" / "loglik_surface.csv"));
  std::string line;
  std::size_t rows = 0;
  std::getline(surface, line);
  CHECK(line == "theta,r,loglik");
  while (std::getline(surface, line)) ++rows;
  // r grid from 40 / 200 = 0.2 to 5 in steps of 0.1.
  CHECK(rows == 20 * 49);
  CHECK(fs::exists(dir / "out" / "fit.json"));
  CHECK(fs::exists(dir / "out" / "loglik_surface.svg"));
  CHECK(fs::exists(dir / "out" / "run_config.json"));
}

TEST_CASE("summarize and envelope commands") {
  const fs::path dir = scratch("summ");
  const fs::path input = write_plot(dir);
  cli::SummarizeOptions s;
  s.in.input = input;
  s.in.window = "0,0,25,25";
  s.in.out_dir = dir / "s";
  s.r = 2.0;
  cli::run_summarize(s);
  for (const char* f : {"summary_lagged_clustering.csv", "summary_first_contact.csv",
                        "summary_proper_zone.csv", "summary_ball_coverage.csv", "summaries.json"})
    CHECK(fs::exists(dir / "s" / f));

  cli::EnvelopeOptions e;
  e.in = s.in;
  e.in.out_dir = dir / "e";
  e.theta = 0.2;
  e.r = 2.0;
  e.replicates = 39;
  e.kind = "ball_coverage";
  cli::run_envelope(e);
  CHECK(fs::exists(dir / "e" / "envelope_ball_coverage.csv"));
  CHECK_FALSE(fs::exists(dir / "e" / "envelope_proper_zone.csv"));
}

TEST_CASE("report is byte-identical across runs") {
  const fs::path dir = scratch("report");
  cli::ReportOptions opts;
  opts.fit.in.input = write_plot(dir);
  opts.fit.in.window = "0,0,25,25";
  opts.fit.in.seed = 7;
  opts.fit.bootstrap = 10;
  opts.envelope_replicates = 39;
  opts.csr_sims = 99;
  opts.csr_r_steps = 65;
  opts.fit.in.out_dir = dir / "a";
  const Json manifest = cli::run_report(opts);
  opts.fit.in.out_dir = dir / "b";
  cli::run_report(opts);
  for (const auto& f : manifest["files"]) {
    const std::string name = f.get<std::string>();
    CHECK_MESSAGE(slurp(dir / "a" / name) == slurp(dir / "b" / name), name);
  }
  for (const char* key : {"theta_hat", "r_hat", "theta_ci", "r_ci", "p_csr", "cell_size", "seed",
                          "envelopes", "pi_of_r"})
    CHECK_MESSAGE(manifest.contains(key), key);
  CHECK(manifest["seeds"]["csr"] == 7);
  CHECK(manifest["seeds"]["bootstrap"] == 8);
  CHECK(manifest["seeds"]["envelope"] == 9);
  CHECK(fs::exists(dir / "a" / "pi_of_r.json"));
}

TEST_CASE("CLI exit codes") {
  const fs::path dir = scratch("cli");
  const std::string out = " -o \"" + (dir / "o").string() + "\"";
  const fs::path input = write_plot(dir);
  CHECK(run_cli("--help") == 0);
  CHECK(run_cli("simulate --theta 0.5 --r 0.1 --n 10" + out) == 0);
  CHECK(run_cli("simulate --theta 0.5 --r 0.1") == 2);
  CHECK(run_cli("simulate --theta 1.5 --r 0.1 --n 10" + out) == 2);
  CHECK(run_cli("simulate --theta 0.5 --r 0.1 --n 10 -w 0,0,1" + out) == 2);
  CHECK(run_cli("simulate --theta 0.9999 --r 0.01 --n 50 --max-rejects 1" + out) == 4);

  write_text_file(dir / "bad.csv", "x,y\n1,1\n1,1\n");
  CHECK(run_cli("fit -i \"" + (dir / "bad.csv").string() + "\"" + out) == 2);
  write_text_file(dir / "one.csv", "x,y\n1,1\n");
  CHECK(run_cli("fit -w 0,0,5,5 -i \"" + (dir / "one.csv").string() + "\"" + out) == 3);
  CHECK(run_cli("summarize --r 2 -w 0,0,25,25 -i \"" + input.string() + "\"" + out) == 0);
}
