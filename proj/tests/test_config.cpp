#include "config.hpp"
#include "doctest.h"
#include "suites.hpp"

using namespace slicepi::cli;

namespace {

RunConfig parse(const std::string& text) { return load_config(KeyValueFile::parse(text, "t.cfg")); }

int error_line(const std::string& text) {
  try {
    parse(text);
  } catch (const ConfigError& e) {
    return e.line;
  }
  return -1;
}

}  // namespace

TEST_CASE("sections, lists and comments") {
  const RunConfig c = parse(
      "seed = 7\n"
      "# comment\n"
      "[domain]\n"
      "shape = disk   # trailing\n"
      "radius = 0.5\n"
      "m = 3\n"
      "[study]\n"
      "resolutions = 16, 32, 64\n"
      "[tolerances]\n"
      "bpf.bpf1_poly = 1e-3\n");
  CHECK(c.seed == 7);
  CHECK(c.domain.m == 3);
  CHECK(c.domain.region.radius() == 0.5);
  CHECK(c.resolutions == std::vector<int>{16, 32, 64});
  CHECK(c.tolerances.at("bpf.bpf1_poly") == 1e-3);
}

TEST_CASE("diagnostics carry the offending line") {
  CHECK(error_line("[study]\nresolutions = 64, 32\n") == 2);
  CHECK(error_line("seed = 1\n[domain]\nshape = hexagon\n") == 3);
  CHECK(error_line("\n\n[domain]\nm = x\n") == 4);
  CHECK(error_line("[domain]\nbogus = 1\n") == 2);
  CHECK(error_line("[domain\n") == 1);
  CHECK(error_line("a = 1\na = 2\n") == 2);
  CHECK(error_line("[beltrami]\nf = 1\nproduct = 0.5\n") == 2);
  CHECK(error_line("[domain]\nm = 2\n[beltrami]\nf = 1, 2, 3\n") == 4);
}

TEST_CASE("beltrami coefficient defaults to a product of one half") {
  CHECK(parse("").beltrami.product == 0.5);
  const RunConfig c = parse("[beltrami]\nf = 0\n");
  CHECK_FALSE(c.beltrami.product.has_value());
  CHECK(c.beltrami.f == std::vector<double>{0.0});
}

TEST_CASE("suite registry") {
  CHECK(suite_names().size() == 10);
  CHECK(is_suite("pi-consistency"));
  CHECK_FALSE(is_suite("nonexistent"));
  CHECK_THROWS_AS(run_suite("nonexistent", RunConfig{}), std::invalid_argument);
}

TEST_CASE("tolerance overrides reach the rows") {
  RunConfig c;
  c.algebra_dims = {2};
  c.cases = 10;
  c.tolerances["clifford.assoc.m2"] = -1.0;
  const SuiteReport r = run_suite("clifford", c);
  CHECK_FALSE(r.passed());
  CHECK(r.rows.front().check_id == "clifford.assoc.m2");
  CHECK_FALSE(r.rows.front().pass);
  CHECK(format_csv(r).rfind("check_id,anchor,resolution,error,tol,pass\n", 0) == 0);
}
