#include <doctest.h>

#include "clocklab/errors.hpp"
#include "clocklab/scenario_io.hpp"

using namespace clocklab;
using namespace clocklab::scenario_io;

namespace {

const char* kScenario = R"(# example scenario
[meta]
seed = 42

[node]
id = A
position_lns = 0
offset_ns = -250

[node]
id = B
position_lns = 1000
rate_ppb = 40

[link]
a = A
b = B
delay_ab_ns = 1500
delay_ba_ns = 1100

[message]
at_ns = 0
from = A
to = B

[sync]
at_ns = 100
master = A
slave = B
repetitions = 4

[conventions]
epsilons = 0.1 0.5 0.9
boosts = default
)";

} // namespace

TEST_CASE("a full scenario parses") {
  const ScenarioFile f = parse_scenario(kScenario);
  CHECK(f.sim.seed == 42);
  REQUIRE(f.sim.nodes.size() == 2);
  CHECK(f.sim.nodes[0].clock.offset_ns == -250);
  CHECK(*f.sim.nodes[1].position_lns == 1000);
  CHECK(f.sim.nodes[1].clock.rate_ppb == 40);
  REQUIRE(f.sim.links.size() == 1);
  CHECK(f.sim.links[0].delay_ab_ns == 1500);
  REQUIRE(f.sim.messages.size() == 1);
  CHECK(f.sim.messages[0].msg_id == "m0"); // auto-assigned
  REQUIRE(f.sim.syncs.size() == 1);
  CHECK(f.sim.syncs[0].repetitions == 4);
  REQUIRE(f.sim.epsilons.size() == 3);
  CHECK(f.sim.epsilons[1] == Ratio{1, 2});
  CHECK(f.sim.boosts.size() == 5);
  clocknet::validate(f.sim);
}

TEST_CASE("unknown section fails with its line number") {
  try {
    parse_scenario("[meta]\nseed = 1\n\n[nonsense]\nx = 1\n");
    FAIL("expected parse_error");
  } catch (const parse_error& e) {
    CHECK(e.line == 4);
  }
}

TEST_CASE("unknown key fails with line and column") {
  try {
    parse_scenario("[node]\nid = A\nofset_ns = 3\n");
    FAIL("expected parse_error");
  } catch (const parse_error& e) {
    CHECK(e.line == 3);
    CHECK(e.column == 1);
  }
}

TEST_CASE("malformed values are rejected") {
  CHECK_THROWS_AS(parse_scenario("[meta]\nseed = abc\n"), parse_error);
  CHECK_THROWS_AS(parse_scenario("[node]\nid = A\noffset_ns = 1.5\n"), parse_error);
  CHECK_THROWS_AS(parse_scenario("[conventions]\nepsilons = 0.1 oops\n"), parse_error);
  CHECK_THROWS_AS(parse_scenario("seed = 1\n"), parse_error);     // key before section
  CHECK_THROWS_AS(parse_scenario("[meta\nseed = 1\n"), parse_error);
  CHECK_THROWS_AS(parse_scenario("[meta]\nseed\n"), parse_error); // no equals
}

TEST_CASE("default epsilon grid is 0.05 .. 0.95") {
  const auto grid = default_epsilon_grid();
  REQUIRE(grid.size() == 19);
  CHECK(grid.front() == Ratio{1, 20});
  CHECK(grid.back() == Ratio{19, 20});
  const ScenarioFile f = parse_scenario("[conventions]\nepsilons = default\n");
  CHECK(f.sim.epsilons.size() == 19);
}

TEST_CASE("analysis sections parse") {
  const ScenarioFile f = parse_scenario(
      "[smear]\nleap_ns = 86400000000000\nsign = 1\nwindow_s = 86400\n"
      "[rates]\npreset = gps\n"
      "[chsh]\ncoarse = 90\nfine = 360\n"
      "[dst]\nbase_offset_s = 0\nstart = 2026-03-08T02:00:00\n"
      "end = 2026-11-01T02:00:00\nprobe = 2026-06-15T12:00:00\n"
      "probe = 2026-01-15T12:00:00\n");
  REQUIRE(f.smear.has_value());
  CHECK(f.smear->window_s == 86400);
  REQUIRE(f.rates.has_value());
  CHECK(f.rates->preset_gps);
  REQUIRE(f.chsh.has_value());
  REQUIRE(f.dst.has_value());
  CHECK(f.dst->probes.size() == 2);
}

TEST_CASE("ratio parsing and printing") {
  CHECK(parse_ratio("0.05") == Ratio{1, 20});
  CHECK(parse_ratio("-0.9") == Ratio{-9, 10});
  CHECK(parse_ratio("3") == Ratio{3, 1});
  CHECK(to_string(Ratio{1, 20}) == "0.05");
  CHECK(to_string(Ratio{-9, 10}) == "-0.9");
  CHECK(to_string(Ratio{3, 1}) == "3");
  CHECK_THROWS_AS(parse_ratio("1.2.3"), validation_error);
  CHECK_THROWS_AS(parse_ratio(""), validation_error);
}

TEST_CASE("div_half_even") {
  CHECK(div_half_even(10, 4) == 2);  // 2.5 -> 2
  CHECK(div_half_even(14, 4) == 4);  // 3.5 -> 4
  CHECK(div_half_even(-10, 4) == -2);
  CHECK(div_half_even(7, 3) == 2);
  CHECK(div_half_even(8, 3) == 3);
  CHECK(div_half_even(-7, 3) == -2);
}
