#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "sspp/error.hpp"
#include "sspp/io.hpp"
#include "sspp/sampler.hpp"

using namespace sspp;

namespace {

ErrorCode ingest_code(const std::string& text, std::optional<Window> w = std::nullopt,
                      std::string* message = nullptr) {
  std::istringstream in(text);
  try {
    ingest_csv(in, w);
  } catch (const Error& e) {
    if (message) *message = e.what();
    return e.code();
  }
  FAIL("expected an ingest error");
  return ErrorCode::invalid_argument;
}

}  // namespace

TEST_CASE("window and point specs") {
  const Window w = parse_window("0,0,25,30");
  CHECK(w.xmax() == 25.0);
  CHECK(w.ymax() == 30.0);
  CHECK_THROWS_AS(parse_window("0,0,25"), Error);
  CHECK_THROWS_AS(parse_window("0,0,a,1"), Error);
  CHECK_THROWS_AS(parse_window("0,0,0,1"), Error);
  const auto pts = parse_points("1,2;3.5,4");
  REQUIRE(pts.size() == 2);
  CHECK(pts[1] == Point{3.5, 4});
  CHECK(parse_points("").empty());
  CHECK_THROWS_AS(parse_points("1,2;3"), Error);
}

TEST_CASE("ingest") {
  std::ostringstream text;
  text << "x,y,dbh\n";
  for (int i = 0; i < 120; ++i) text << (i % 12) * 2 + 0.5 << "," << (i / 12) * 2 + 0.5 << "," << 5 + i * 0.1 << "\n";
  std::istringstream in(text.str());
  const PlotRecord rec = ingest_csv(in, Window(0, 0, 25, 25));
  CHECK(rec.points.size() == 120);
  CHECK(rec.dbh.size() == 120);
  CHECK(rec.window.area() == 625.0);

  std::istringstream no_window("index,x,y\n1,1,2\n2,3,5\n");
  const PlotRecord bare = ingest_csv(no_window, std::nullopt);
  CHECK(bare.dbh.empty());
  CHECK(bare.window.xmin() == 1.0);
  CHECK(bare.window.ymax() == 5.0);
}

TEST_CASE("ingest errors") {
  std::string msg;
  CHECK(ingest_code("") == ErrorCode::parse);
  CHECK(ingest_code("x,y\n") == ErrorCode::parse);
  CHECK(ingest_code("a,b\n1,2\n") == ErrorCode::parse);
  CHECK(ingest_code("x,y\n1,2\n3\n", std::nullopt, &msg) == ErrorCode::parse);
  CHECK(msg.find("row 3") != std::string::npos);
  CHECK(ingest_code("x,y\n1,abc\n") == ErrorCode::parse);
  CHECK(ingest_code("x,y,dbh\n1,1,0\n2,2,3\n") == ErrorCode::parse);
  CHECK(ingest_code("x,y\n1,1\n30,2\n", Window(0, 0, 25, 25), &msg) == ErrorCode::parse);
  CHECK(msg.find("row 3") != std::string::npos);
  CHECK(ingest_code("x,y\n1,1\n2,2\n1,1\n", std::nullopt, &msg) == ErrorCode::parse);
  CHECK(msg.find("rows 2 and 4") != std::string::npos);
}

TEST_CASE("ordering") {
  const PlotRecord rec{"t", {{1, 1}, {2, 2}, {0.5, 3}, {4, 4}}, {10, 30, 30, 5}, Window(0, 0, 5, 5)};
  const PointSequence desc = order_sequence(rec, OrderRule::descending_mark);
  CHECK(desc[0] == Point{0.5, 3});  // tie on 30 broken by x
  CHECK(desc[1] == Point{2, 2});
  CHECK(desc[3] == Point{4, 4});
  CHECK((*desc.marks())[0] == 30);
  CHECK((*desc.marks())[3] == 5);
  const PointSequence asc = order_sequence(rec, OrderRule::ascending_mark);
  CHECK(asc[0] == Point{4, 4});
  const PointSequence given = order_sequence(rec, OrderRule::given);
  CHECK(std::ranges::equal(given.points(), rec.points));
  const PlotRecord bare{"b", {{1, 1}, {2, 2}}, {}, Window(0, 0, 5, 5)};
  CHECK_THROWS_AS(order_sequence(bare, OrderRule::descending_mark), Error);
  CHECK(parse_order_rule("given") == OrderRule::given);
  CHECK_FALSE(parse_order_rule("random").has_value());
}

TEST_CASE("format_double round trips") {
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double v = u(gen);
    CHECK(std::stod(format_double(v)) == v);
  }
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(2.0) == "2");
}

TEST_CASE("simulate, write, ingest, log-likelihood round trip") {
  const Window w(0, 0, 25, 25);
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    SimulationConfig config{ModelParams(0.3, 2.0, w)};
    config.n_points = 50;
    config.seed = seed;
    const PointSequence seq = simulate(config);
    std::stringstream csv;
    write_sequence_csv(csv, seq);
    const PlotRecord rec = ingest_csv(csv, w);
    const PointSequence back = order_sequence(rec, OrderRule::given);
    CHECK(std::ranges::equal(back.points(), seq.points()));
    const ModelParams params(0.3, 2.0, w);
    CHECK(log_likelihood(back, params, 0.125) == log_likelihood(seq, params, 0.125));
  }
}
