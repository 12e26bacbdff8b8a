#include <doctest.h>

#include "clocklab/clocknet.hpp"
#include "clocklab/errors.hpp"
#include "clocklab/rng.hpp"
#include "clocklab/syncproto.hpp"

using namespace clocklab;
using namespace clocklab::syncproto;

namespace {

clocknet::Scenario sync_pair(std::int64_t fwd, std::int64_t rev,
                             std::int64_t master_off, std::int64_t slave_off) {
  clocknet::Scenario s;
  s.nodes.push_back(clocknet::Node{"M", std::nullopt,
                                   clocknet::ClockModel{master_off, 0, 0}});
  s.nodes.push_back(clocknet::Node{"S", std::nullopt,
                                   clocknet::ClockModel{slave_off, 0, 0}});
  s.links.push_back(clocknet::Link{"M", "S", fwd, rev, 0});
  return s;
}

} // namespace

TEST_CASE("halving rounds half toward even") {
  CHECK(halve_half_even(4) == 2);
  CHECK(halve_half_even(5) == 2);
  CHECK(halve_half_even(7) == 4);
  CHECK(halve_half_even(-5) == -2);
  CHECK(halve_half_even(-7) == -4);
}

TEST_CASE("ptp_estimate on the worked example") {
  const SyncEstimate e = ptp_estimate({0, 6, 10, 14});
  CHECK(e.offset_ns == 1);
  CHECK(e.delay_ns == 5);
}

TEST_CASE("symmetric path with zero offset") {
  const std::int64_t d = 1234;
  const SyncEstimate e = ptp_estimate({0, d, 5000, 5000 + d});
  CHECK(e.offset_ns == 0);
  CHECK(e.delay_ns == d);
}

TEST_CASE("ptp_estimate validates the exchange") {
  CHECK_THROWS_AS(ptp_estimate({0, 10, 5, 20}), validation_error);  // t3 < t2
  CHECK_THROWS_AS(ptp_estimate({20, 25, 30, 10}), validation_error); // t4 < t1
}

TEST_CASE("asymmetry bias over 1000 random triples") {
  NoiseStream gen(99, "bias-triples");
  for (int i = 0; i < 1000; ++i) {
    const std::int64_t b = gen.next_in(-1000000, 1000000);
    const std::int64_t df = gen.next_in(1, 100000);
    const std::int64_t dr = gen.next_in(1, 100000);
    const std::int64_t t_send = gen.next_in(0, 1000000);
    // noiseless exchange assembled directly from the clock model
    const SyncExchange x{t_send, t_send + df + b, t_send + df + b,
                         t_send + df + dr};
    const SyncEstimate e = ptp_estimate(x);
    CHECK(e.offset_ns == halve_half_even(df - dr + 2 * b));
    CHECK(e.delay_ns == halve_half_even(df + dr));
    if ((df - dr) % 2 == 0) CHECK(e.offset_ns - b == (df - dr) / 2);
  }
}

TEST_CASE("run_sync against the simulator") {
  SUBCASE("perfect clocks, symmetric link") {
    const auto estimates = run_sync(sync_pair(1000, 1000, 0, 0), "M", "S", 5);
    REQUIRE(estimates.size() == 5);
    for (const SyncEstimate& e : estimates) {
      CHECK(e.offset_ns == 0);
      CHECK(e.delay_ns == 1000);
    }
  }
  SUBCASE("slave offset shows up exactly") {
    const auto estimates = run_sync(sync_pair(1000, 1000, 0, 500), "M", "S", 3);
    for (const SyncEstimate& e : estimates) CHECK(e.offset_ns == 500);
  }
  SUBCASE("asymmetric path biases the offset by half the difference") {
    const auto estimates = run_sync(sync_pair(1500, 500, 0, 0), "M", "S", 3);
    for (const SyncEstimate& e : estimates) {
      CHECK(e.offset_ns == 500);
      CHECK(e.delay_ns == 1000);
    }
  }
  SUBCASE("no link is a configuration error") {
    clocknet::Scenario s = sync_pair(1000, 1000, 0, 0);
    s.links.clear();
    CHECK_THROWS_AS(run_sync(s, "M", "S", 1), config_error);
  }
}

TEST_CASE("with zero noise every estimate is identical") {
  clocknet::Scenario s = sync_pair(1100, 900, -200, 300);
  const auto estimates = run_sync(s, "M", "S", 10);
  for (const SyncEstimate& e : estimates) {
    CHECK(e.offset_ns == estimates.front().offset_ns);
    CHECK(e.delay_ns == estimates.front().delay_ns);
  }
}

TEST_CASE("RTT is invariant under slave-clock changes and resynchronization") {
  NoiseStream gen(5, "rtt-invariance");
  for (int i = 0; i < 200; ++i) {
    const std::int64_t fwd = gen.next_in(1, 5000);
    const std::int64_t rev = gen.next_in(1, 5000);
    const std::int64_t slave_off = gen.next_in(-1000000, 1000000);
    const auto x = exchanges_from_trace(
        clocknet::run([&] {
          clocknet::Scenario s = sync_pair(fwd, rev, 0, slave_off);
          s.syncs.push_back(clocknet::SyncSchedule{0, "M", "S", 1, 1000000, 0});
          return s;
        }()));
    REQUIRE(x.size() == 1);
    CHECK(round_trip_ns(x[0]) == fwd + rev);
    for (std::int64_t num = 1; num <= 9; ++num) {
      const SyncExchange shifted = reassign_slave(x[0], Ratio{num, 10}, fwd + rev);
      CHECK(round_trip_ns(shifted) == fwd + rev);
    }
  }
}

TEST_CASE("epsilon reassignment moves the estimate linearly") {
  // rtt = 2000, so each 0.1 step of epsilon moves the offset by 200 ns
  clocknet::Scenario s = sync_pair(1000, 1000, 0, 0);
  s.syncs.push_back(clocknet::SyncSchedule{0, "M", "S", 1, 1000000, 0});
  const auto exchanges = exchanges_from_trace(clocknet::run(s));
  REQUIRE(exchanges.size() == 1);
  const std::int64_t rtt = round_trip_ns(exchanges[0]);
  CHECK(rtt == 2000);
  for (std::int64_t num = 1; num <= 9; ++num) {
    const SyncExchange shifted = reassign_slave(exchanges[0], Ratio{num, 10}, rtt);
    const SyncEstimate e = ptp_estimate(shifted);
    const std::int64_t expected_shift = (2 * num - 10) * rtt / 20;
    CHECK(e.offset_ns == expected_shift);
  }
}

TEST_CASE("apply_correction subtracts the estimate (and is not idempotent)") {
  const clocknet::ClockModel fixed =
      apply_correction(clocknet::ClockModel{500, 0, 0}, SyncEstimate{500, 1000});
  CHECK(fixed.offset_ns == 0);
  CHECK(fixed.rate_ppb == 0);

  // a biased estimate "corrects" a perfect clock into an erroneous one
  const clocknet::ClockModel hurt =
      apply_correction(clocknet::ClockModel{0, 0, 0}, SyncEstimate{500, 1000});
  CHECK(hurt.offset_ns == -500);

  const clocknet::ClockModel twice = apply_correction(hurt, SyncEstimate{500, 1000});
  CHECK(twice.offset_ns == -1000);
}
