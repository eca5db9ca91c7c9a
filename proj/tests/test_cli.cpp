#include <doctest.h>

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "dsmkit/cli.hpp"

#include "test_util.hpp"

using nlohmann::json;
using testutil::run_cli;
using testutil::TempDir;
using testutil::write_file;
using testutil::read_file;

namespace {

std::string base_config(const std::string& extra = "") {
  return "[filter]\n"
         "preset = dsm1\n"
         "[quantizer]\n"
         "delta = 1\n"
         "m = 2\n" +
         extra;
}

std::vector<std::string> split_lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string field;
  while (std::getline(in, field, ',')) out.push_back(field);
  return out;
}

}  // namespace

TEST_CASE("certify exit codes follow applicability") {
  TempDir tmp;
  const auto ok = tmp / "ok.ini";
  write_file(ok, base_config());
  CHECK(run_cli({"certify", "--config", ok.string()}) == 0);

  const auto off = tmp / "off.ini";
  write_file(off, "[filter]\npreset = dsm1\n[quantizer]\ndelta = 1\nm = 1\n");
  CHECK(run_cli({"certify", "--config", off.string()}) == 2);
}

TEST_CASE("certify writes a machine-readable report") {
  TempDir tmp;
  const auto cfg = tmp / "cfg.ini";
  write_file(cfg, base_config("[output]\nreport = cert.json\n"));
  REQUIRE(run_cli({"certify", "--config", cfg.string(), "--out",
                   tmp.path().string()}) == 0);
  const json j = json::parse(read_file(tmp / "cert.json"));
  CHECK(j["command"] == "certify");
  CHECK(j["certificate"]["applicable"] == true);
  CHECK(j["certificate"]["optimal_value"] == 0.5);
  CHECK(j["certificate"]["beta"] == 2.0);
  CHECK(j["certificate"]["min_applicable_m"] == 2);
}

TEST_CASE("usage errors exit with 64") {
  TempDir tmp;
  CHECK(run_cli({"certify", "--config", (tmp / "missing.ini").string()}) == 64);

  const auto bad = tmp / "bad.ini";
  write_file(bad, "[quantizer]\nstep = 1\n");
  CHECK(run_cli({"certify", "--config", bad.string()}) == 64);

  const auto dup = tmp / "dup.ini";
  write_file(dup, "[quantizer]\ndelta = 1\ndelta = 2\n");
  CHECK(run_cli({"certify", "--config", dup.string()}) == 64);

  const auto both = tmp / "both.ini";
  write_file(both,
             "[filter]\npreset = dsm1\na = 1\nb = 1\nc = 1\n"
             "[quantizer]\ndelta = 1\nm = 2\n");
  CHECK(run_cli({"certify", "--config", both.string()}) == 64);

  CHECK(run_cli({}) == 64);
  CHECK(run_cli({"frobnicate"}) == 64);
  CHECK(run_cli({"--help"}) == 0);
  CHECK(run_cli({"certify"}) == 64);  // --config is required
}

TEST_CASE("simulate writes an exact trace for the zero input") {
  TempDir tmp;
  const auto cfg = tmp / "cfg.ini";
  write_file(cfg, base_config("[run]\nhorizon = 5\n"
                              "[ensemble]\nconstant = 0\n"
                              "[output]\ntrace = trace.csv\n"));
  REQUIRE(run_cli({"simulate", "--config", cfg.string(), "--out",
                   tmp.path().string()}) == 0);
  const auto lines = split_lines(read_file(tmp / "trace.csv"));
  REQUIRE(lines.size() == 6);
  CHECK(lines[0] == "n,r,u,w,q");
  for (int n = 0; n < 5; ++n) {
    CHECK(lines[n + 1] == std::to_string(n) + ",0,0,0,0");
  }
}

TEST_CASE("simulate report carries the certified error bound") {
  TempDir tmp;
  const auto cfg = tmp / "cfg.ini";
  write_file(cfg, base_config("[run]\nhorizon = 2000\n"
                              "[ensemble]\niid_uniform = 42\n"
                              "[output]\nreport = run.json\n"));
  REQUIRE(run_cli({"simulate", "--config", cfg.string(), "--out",
                   tmp.path().string()}) == 0);
  const json j = json::parse(read_file(tmp / "run.json"));
  CHECK(j["adc"] == "greedy");
  CHECK(j["certificate"]["applicable"] == true);
  REQUIRE(j["members"].size() == 1);
  CHECK(j["members"][0]["source"] == "iid-uniform(seed=42)");
  CHECK(j["members"][0]["max_abs_q"].get<double>() <= 0.5 + 1e-12);
  CHECK(j["j_estimate"].get<double>() <= 0.5 + 1e-9);
}

TEST_CASE("simulate surfaces a filter blow-up as a runtime failure") {
  TempDir tmp;
  const auto cfg = tmp / "cfg.ini";
  // open loop (memoryless ADC) the unstable filter overflows the state
  write_file(cfg,
             "[filter]\na = 3\nb = 1\nc = 1\n"
             "[quantizer]\ndelta = 1\nm = 4\n"
             "[run]\nhorizon = 800\nadc = memoryless\n"
             "[ensemble]\nconstant = 0.5\n");
  CHECK(run_cli({"simulate", "--config", cfg.string(), "--out",
                 tmp.path().string()}) == 1);
}

TEST_CASE("simulate validates window against horizon") {
  TempDir tmp;
  const auto cfg = tmp / "cfg.ini";
  write_file(cfg, base_config("[run]\nhorizon = 10\nwindow = 50\n"
                              "[ensemble]\nconstant = 0\n"));
  CHECK(run_cli({"simulate", "--config", cfg.string()}) == 64);
}

TEST_CASE("simulate drives the alternative realizations") {
  TempDir tmp;
  const auto cfg = tmp / "cfg.ini";
  write_file(cfg, base_config("[run]\nhorizon = 200\nadc = dsm-loop\n"
                              "[ensemble]\niid_uniform = 3\n"));
  CHECK(run_cli({"simulate", "--config", cfg.string(), "--out",
                 tmp.path().string()}) == 0);
}

TEST_CASE("attack passes for every target via the --target override") {
  TempDir tmp;
  const auto cfg = tmp / "cfg.ini";
  write_file(cfg, base_config("[run]\nhorizon = 500\n"));
  for (const std::string target :
       {"greedy", "dsm-loop", "classical-dsm1", "memoryless"}) {
    CHECK(run_cli({"attack", "--config", cfg.string(), "--out",
                   tmp.path().string(), "--target", target}) == 0);
  }
}

TEST_CASE("sweep over delta reports the optimal value and meets it") {
  TempDir tmp;
  const auto cfg = tmp / "cfg.ini";
  write_file(cfg,
             "[filter]\npreset = dsm1\n"
             "[quantizer]\nm = 8\n"
             "[sweep]\nparam = delta\nvalues = 0.25 0.5 1.0\n"
             "[output]\ntrace = sweep.csv\n");
  REQUIRE(run_cli({"sweep", "--config", cfg.string(), "--out",
                   tmp.path().string(), "--horizon", "4000"}) == 0);
  const auto lines = split_lines(read_file(tmp / "sweep.csv"));
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] == "param,value,beta,applicable,optimal_value,empirical_j");
  const double expect_opt[3] = {0.125, 0.25, 0.5};
  for (int i = 0; i < 3; ++i) {
    const auto f = split_csv(lines[i + 1]);
    REQUIRE(f.size() == 6);
    CHECK(f[0] == "delta");
    CHECK(f[3] == "true");
    CHECK(std::stod(f[4]) == expect_opt[i]);
    CHECK(std::abs(std::stod(f[5]) - expect_opt[i]) <= 1e-9);
  }
}

TEST_CASE("sweep over M flags the inapplicable grid points") {
  TempDir tmp;
  const auto cfg = tmp / "cfg.ini";
  write_file(cfg,
             "[filter]\npreset = dsm2\n"
             "[quantizer]\ndelta = 1\n"
             "[sweep]\nparam = m\nvalues = 1 2 3 4\n"
             "[output]\ntrace = sweep.csv\n");
  REQUIRE(run_cli({"sweep", "--config", cfg.string(), "--out",
                   tmp.path().string(), "--horizon", "2000"}) == 0);
  const auto lines = split_lines(read_file(tmp / "sweep.csv"));
  REQUIRE(lines.size() == 5);
  const char* expect[4] = {"false", "false", "true", "true"};
  for (int i = 0; i < 4; ++i) {
    CHECK(split_csv(lines[i + 1])[3] == expect[i]);
  }
}

TEST_CASE("sweep rejects a bad grid") {
  TempDir tmp;
  const auto no_values = tmp / "a.ini";
  write_file(no_values,
             "[filter]\npreset = dsm1\n[quantizer]\nm = 4\n"
             "[sweep]\nparam = delta\n");
  CHECK(run_cli({"sweep", "--config", no_values.string()}) == 64);

  const auto bad_param = tmp / "b.ini";
  write_file(bad_param,
             "[filter]\npreset = dsm1\n[quantizer]\nm = 4\n"
             "[sweep]\nparam = gamma\nvalues = 1\n");
  CHECK(run_cli({"sweep", "--config", bad_param.string()}) == 64);
}

TEST_CASE("repeated runs are byte-identical") {
  TempDir a, b;
  const std::string body =
      base_config("[run]\nhorizon = 300\nseed = 9\n"
                  "[ensemble]\niid_uniform = auto\nadversarial = on\n"
                  "[output]\ntrace = t.csv\nreport = r.json\n");
  write_file(a / "cfg.ini", body);
  write_file(b / "cfg.ini", body);
  REQUIRE(run_cli({"simulate", "--config", (a / "cfg.ini").string(), "--out",
                   a.path().string()}) == 0);
  REQUIRE(run_cli({"simulate", "--config", (b / "cfg.ini").string(), "--out",
                   b.path().string()}) == 0);
  CHECK(read_file(a / "t.csv") == read_file(b / "t.csv"));
  CHECK(read_file(a / "r.json") == read_file(b / "r.json"));
}

TEST_CASE("the seed override reaches auto-seeded sources") {
  TempDir tmp;
  const auto cfg = tmp / "cfg.ini";
  write_file(cfg, base_config("[run]\nhorizon = 50\n"
                              "[ensemble]\niid_uniform = auto\n"
                              "[output]\ntrace = t.csv\n"));
  const auto out1 = tmp / "s1";
  const auto out2 = tmp / "s2";
  REQUIRE(run_cli({"simulate", "--config", cfg.string(), "--out", out1.string(),
                   "--seed", "11"}) == 0);
  REQUIRE(run_cli({"simulate", "--config", cfg.string(), "--out", out2.string(),
                   "--seed", "22"}) == 0);
  CHECK(read_file(out1 / "t.csv") != read_file(out2 / "t.csv"));
}

TEST_CASE("explicit filter matrices round through the config") {
  TempDir tmp;
  const auto cfg = tmp / "cfg.ini";
  write_file(cfg,
             "# dsm2 spelled out\n"
             "[filter]\n"
             "a = 2 -1 ; 1 0\n"
             "b = 1 0\n"
             "c = 1 0\n"
             "[quantizer]\ndelta = 0.5\nm = 4\n"
             "[output]\nreport = cert.json\n");
  REQUIRE(run_cli({"certify", "--config", cfg.string(), "--out",
                   tmp.path().string()}) == 0);
  const json j = json::parse(read_file(tmp / "cert.json"));
  CHECK(j["filter"] == "custom");
  CHECK(j["certificate"]["beta"] == 2.0);
  CHECK(j["certificate"]["optimal_value"] == 0.25);
}
