#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "diamond/io.hpp"

using namespace diamond;
namespace fs = std::filesystem;

namespace {
struct TempFile {
  fs::path path;
  explicit TempFile(const std::string& text) {
    path = fs::temp_directory_path() /
           ("diamond_io_test_" + std::to_string(counter++) + ".csv");
    std::ofstream out(path);
    out << text;
  }
  ~TempFile() { std::error_code ec; fs::remove(path, ec); }
  static int counter;
};
int TempFile::counter = 0;
}  // namespace

TEST_CASE("filter parsing: constant and linear profiles") {
  TempFile flat_file("0,2.0\n10,2.0\n");
  const auto g = io::parse_filter_csv(flat_file.path.string(), 4, 10.0);
  REQUIRE(g.size() == 4);
  for (double v : g) CHECK(v == doctest::Approx(2.0).epsilon(1e-12));

  TempFile ramp_file("f,gain\n0,0\n1,1\n");
  const auto r = io::parse_filter_csv(ramp_file.path.string(), 2, 1.0);
  REQUIRE(r.size() == 2);
  CHECK(r[0] == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(r[1] == doctest::Approx(0.75).epsilon(1e-12));

  // Centers outside the tabulated range clamp to the endpoint gain.
  TempFile narrow_file("0.4,1.0\n0.6,3.0\n");
  const auto n = io::parse_filter_csv(narrow_file.path.string(), 2, 1.0);
  CHECK(n[0] == doctest::Approx(1.0));
  CHECK(n[1] == doctest::Approx(3.0));
}

TEST_CASE("filter parsing: comments and errors") {
  TempFile comment_file("# response\n0,1\n# mid\n1,1\n");
  CHECK(io::parse_filter_csv(comment_file.path.string(), 3, 1.0).size() == 3);

  TempFile neg_file("0,1\n1,-0.5\n");
  CHECK_THROWS_AS(io::parse_filter_csv(neg_file.path.string(), 2, 1.0),
                  io::ParseError);
  try {
    io::parse_filter_csv(neg_file.path.string(), 2, 1.0);
  } catch (const io::ParseError& e) {
    CHECK(e.row == 2);
  }

  TempFile unsorted_file("0,1\n2,1\n1,1\n");
  CHECK_THROWS_AS(io::parse_filter_csv(unsorted_file.path.string(), 2, 2.0),
                  io::ParseError);
  TempFile empty_file("");
  CHECK_THROWS_AS(io::parse_filter_csv(empty_file.path.string(), 2, 1.0),
                  io::ParseError);
  CHECK_THROWS_AS(io::parse_filter_csv("/nonexistent/filter.csv", 2, 1.0),
                  io::ParseError);
}

TEST_CASE("flat report is deterministic and echoes inputs") {
  io::RunConfig cfg;
  cfg.power = 3.0;
  cfg.fronthaul = 1.0;
  cfg.grid = 128;
  const auto a = io::run_flat(cfg);
  const auto b = io::run_flat(cfg);
  CHECK(a.dump() == b.dump());
  CHECK(a["inputs"]["power"].get<double>() == 3.0);
  CHECK(a["inputs"]["fronthaul"].get<double>() == 1.0);
  CHECK(a["plan"]["rate"].get<double>() == doctest::Approx(1.10447).epsilon(2e-3));
  CHECK(a["references"]["cutset"].get<double>() >=
        a["plan"]["rate"].get<double>() - 1e-9);
}

TEST_CASE("spc report carries mode and threshold") {
  io::RunConfig cfg;
  cfg.power = 3.0;
  cfg.fronthaul = 2.0;
  const auto rep = io::run_spc(cfg);
  CHECK(rep["threshold"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rep["mode"].get<std::string>() == "PureCF");
  CHECK(rep["achieved"].get<double>() > 1.0);
}

TEST_CASE("sweep report has the requested shape") {
  io::RunConfig cfg;
  cfg.power = 3.0;
  cfg.grid = 96;
  const auto rep = io::run_sweep_c(cfg, 0.2, 1.0, 5);
  REQUIRE(rep["rows"].size() == 5);
  CHECK(rep["rows"][0]["c"].get<double>() == doctest::Approx(0.2));
  CHECK(rep["rows"][4]["c"].get<double>() == doctest::Approx(1.0));
  double prev = -1.0;
  for (const auto& row : rep["rows"]) {
    const double rate = row["rate"].get<double>();
    CHECK(rate >= prev - 1e-6);
    prev = rate;
  }
  CHECK_THROWS_AS(io::run_sweep_c(cfg, 0.2, 1.0, 0), std::invalid_argument);
}

TEST_CASE("frequency report and allocation CSV") {
  io::RunConfig cfg;
  cfg.power = 3.0;
  cfg.fronthaul = 1.0;
  cfg.bandwidth = 0.5;
  cfg.bands = 1;
  cfg.dual_grid = 48;
  freq::AllocationPlan plan;
  const auto rep = io::run_freq(cfg, &plan);
  CHECK(rep["achieved"].get<double>() ==
        doctest::Approx(plan.rate).epsilon(1e-12));
  CHECK(rep["references"]["cf_only"].get<double>() <= plan.rate + 1e-3);
  CHECK(rep["references"]["df_only"].get<double>() <= plan.rate + 1e-3);
  CHECK(rep["references"]["cutset"].get<double>() >= plan.rate - 1e-9);

  const auto csv_path = fs::temp_directory_path() / "diamond_io_test_alloc.csv";
  io::write_alloc_csv(csv_path.string(), plan, cfg.bandwidth);
  std::ifstream in(csv_path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "f,h,t_df,t_cf,s_df,s_cf,c_df,c_cf,r_df,r_cf");
  int rows = 0;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) ++rows;
  }
  CHECK(rows == 1);
  std::error_code ec;
  fs::remove(csv_path, ec);
}

TEST_CASE("atlas report samples every border") {
  const auto rep = io::run_atlas(1.0, 32);
  REQUIRE(rep["rows"].size() == 32);
  for (const char* key :
       {"lambda_c", "df_region", "cf_region", "equal_power", "equal_relayrate"}) {
    CHECK(rep["rows"][0].contains(key));
  }
  CHECK(rep["junctions"]["equal_power"].get<double>() ==
        doctest::Approx(2.0 / 7.0).epsilon(1e-6));
  CHECK_THROWS_AS(io::run_atlas(0.0, 32), std::invalid_argument);
}
