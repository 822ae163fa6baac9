#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "cybelab/errors.hpp"
#include "cybelab/report.hpp"
#include "cybelab/suites.hpp"

using namespace cybelab;

namespace {

Report sample_report() {
  Report r;
  r.suite = "sample";
  r.profile = "sigma=+1";
  r.seed = 7;
  r.config = {{"window", "8"}, {"pencil", "1,0,-1"}};
  r.checks = {CheckRecord::pass("b.zero", "35 triples"), CheckRecord::fail("a.nonzero", "e(x)f(x)h: 2/3"),
              CheckRecord::skipped("c.slow", "window too narrow"), CheckRecord::note("d.finding", "sign flip")};
  r.timing_ms = 12.5;
  r.sort_checks();
  return r;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("machine report round-trips") {
  const Report r = sample_report();
  const std::string text = serialize_report(r);
  const Report back = parse_report(text);
  CHECK(back == r);
  CHECK(serialize_report(back) == text);
  CHECK(r.checks.front().id == "a.nonzero");
  CHECK_FALSE(r.all_pass());
  CHECK(r.count(CheckRecord::Status::Pass) == 2);
}

TEST_CASE("schema violations are rejected") {
  std::string text = serialize_report(sample_report());
  CHECK_THROWS_AS(parse_report(""), std::invalid_argument);
  std::string wrong = text;
  wrong.replace(wrong.find(kReportSchema), std::string(kReportSchema).size(), "other/9");
  CHECK_THROWS_AS(parse_report(wrong), std::invalid_argument);
  CHECK_THROWS_AS(parse_report(text.substr(0, text.rfind("{\""))), std::invalid_argument);
}

TEST_CASE("a failing record needs a witness") {
  CHECK_THROWS(CheckRecord::fail("x", ""));
  CHECK_THROWS(CheckRecord::skipped("x", ""));
}

TEST_CASE("findings never change the status") {
  Report r;
  r.checks = {CheckRecord::pass("a"), CheckRecord::note("b", "observed")};
  CHECK(r.all_pass());
}

TEST_CASE("strip_timing zeroes only the timing") {
  Report r = sample_report();
  Report s = r;
  s.timing_ms = 999;
  CHECK(serialize_report(r) != serialize_report(s));
  CHECK(strip_timing(serialize_report(r)) == strip_timing(serialize_report(s)));
  r.timing_ms = 0;
  CHECK(strip_timing(serialize_report(s)) == serialize_report(r));
}

TEST_CASE("config text parsing") {
  const auto kv = parse_config_text("# comment\nwindow = 6\n\n  pencil=1,0,-1  # trailing\n");
  CHECK(kv.at("window") == "6");
  CHECK(kv.at("pencil") == "1,0,-1");
  CHECK_THROWS_AS(parse_config_text("window 6\n"), ConfigError);

  SuiteConfig cfg;
  for (const auto& [k, v] : kv) apply_config(cfg, k, v);
  CHECK(*cfg.window == 6);
  CHECK(*cfg.pencil == PencilCoeffs::of(1, 0, -1));
  CHECK_THROWS_AS(apply_config(cfg, "window", "0"), ConfigError);
  CHECK_THROWS_AS(apply_config(cfg, "window", "41"), ConfigError);
  CHECK_THROWS_AS(apply_config(cfg, "window", "six"), ConfigError);
  CHECK_THROWS_AS(apply_config(cfg, "format", "xml"), ConfigError);
  CHECK_THROWS_AS(apply_config(cfg, "seed", "-3"), ConfigError);
  CHECK_THROWS_AS(apply_config(cfg, "colour", "red"), ConfigError);
  CHECK_THROWS_AS(apply_config(cfg, "z", "1"), ConfigError);
}

TEST_CASE("pencil parsing") {
  const PencilCoeffs p = parse_pencil("1/2, 0, -3");
  Scalar half(1, 2);
  CHECK(p == PencilCoeffs::of(half, 0, -3));
  CHECK_NOTHROW(parse_pencil("symbolic"));
  CHECK_THROWS_AS(parse_pencil("0,0,0"), ConfigError);
  CHECK_THROWS_AS(parse_pencil("1/0,0,1"), ConfigError);
  CHECK_THROWS_AS(parse_pencil("1,2"), ConfigError);
  CHECK_THROWS_AS(parse_pencil("1,x,2"), ConfigError);
}

TEST_CASE("unknown suite") {
  CHECK_THROWS_AS(run_suite("nope", SuiteConfig{}), UnknownName);
}

TEST_CASE("suite output is deterministic apart from timing") {
  for (const std::string name : {"shift", "decompose"}) {
    CAPTURE(name);
    const std::string a = strip_timing(serialize_report(run_suite(name, SuiteConfig{})));
    const std::string b = strip_timing(serialize_report(run_suite(name, SuiteConfig{})));
    CHECK(a == b);
  }
}

// Regenerate with CYBELAB_UPDATE_GOLDEN=1 after an intended output change.
TEST_CASE("machine output matches the golden files") {
  const bool update = std::getenv("CYBELAB_UPDATE_GOLDEN") != nullptr;
  for (const auto& name : suite_names()) {
    CAPTURE(name);
    const std::string path = std::string(CYBELAB_GOLDEN_DIR) + "/" + name + ".jsonl";
    const std::string got = strip_timing(serialize_report(run_suite(name, SuiteConfig{})));
    if (update) {
      std::ofstream(path) << got;
      continue;
    }
    const std::string want = read_text(path);
    REQUIRE_MESSAGE(!want.empty(), "missing golden file " << path);
    CHECK(got == want);
  }
}
