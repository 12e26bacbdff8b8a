#include <doctest.h>

#include <cmath>

#include "clocklab/chsh.hpp"
#include "clocklab/errors.hpp"
#include "clocklab/rng.hpp"

using namespace clocklab;
using namespace clocklab::chsh;

namespace {
constexpr double kTsirelson = 2.8284271247461903; // 2 * sqrt(2)
}

TEST_CASE("chsh_value arithmetic") {
  CHECK(chsh_value({0, 0, 0, 0}) == 0.0);
  CHECK(chsh_value({1, 1, 1, -1}) == 4.0);
  CHECK_THROWS_AS(chsh_value({1.5, 0, 0, 0}), validation_error);
}

TEST_CASE("local bound is exactly 2") {
  CHECK(lhv_max() == 2.0);
  // the all-plus strategy already reaches it
  const CorrelationTable all_plus{1, 1, 1, 1};
  CHECK(chsh_value(all_plus) == 2.0);
  // exhaustive check that no deterministic strategy exceeds 2
  for (int mask = 0; mask < 16; ++mask) {
    const int a = mask & 1 ? 1 : -1;
    const int a2 = mask & 2 ? 1 : -1;
    const int b = mask & 4 ? 1 : -1;
    const int b2 = mask & 8 ? 1 : -1;
    const CorrelationTable t{static_cast<double>(a * b), static_cast<double>(a * b2),
                             static_cast<double>(a2 * b),
                             static_cast<double>(a2 * b2)};
    CHECK(chsh_value(t) <= 2.0);
  }
}

TEST_CASE("mixtures of deterministic strategies stay below 2") {
  NoiseStream gen(41, "mixtures");
  for (int trial = 0; trial < 1000; ++trial) {
    double w[16];
    double total = 0;
    for (double& x : w) {
      x = gen.next_unit();
      total += x;
    }
    CorrelationTable mix{0, 0, 0, 0};
    for (int mask = 0; mask < 16; ++mask) {
      const double p = w[mask] / total;
      const int a = mask & 1 ? 1 : -1;
      const int a2 = mask & 2 ? 1 : -1;
      const int b = mask & 4 ? 1 : -1;
      const int b2 = mask & 8 ? 1 : -1;
      mix.e_ab += p * a * b;
      mix.e_ab2 += p * a * b2;
      mix.e_a2b += p * a2 * b;
      mix.e_a2b2 += p * a2 * b2;
    }
    CHECK(chsh_value(mix) <= 2.0 + 1e-12);
  }
}

TEST_CASE("singlet correlation") {
  CHECK(singlet_correlation(0.3, 0.3) == -1.0);
  CHECK(singlet_correlation(0.0, 1.5707963267948966) ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK_THROWS_AS(singlet_correlation(std::nan(""), 0.0), validation_error);
}

TEST_CASE("optimal angles hit 2*sqrt(2)") {
  const double a = 0.0;
  const double a2 = M_PI / 2;
  const double b = M_PI / 4;
  const double b2 = -M_PI / 4;
  const CorrelationTable t{singlet_correlation(a, b), singlet_correlation(a, b2),
                           singlet_correlation(a2, b), singlet_correlation(a2, b2)};
  CHECK(chsh_value(t) == doctest::Approx(kTsirelson).epsilon(1e-12));
}

TEST_CASE("grid search reaches the quantum optimum and never passes it") {
  const GridSearchResult r = tsirelson_search(90, 360);
  CHECK(r.max_value >= kTsirelson - 1e-4);
  CHECK(r.max_value <= kTsirelson + 1e-12);
  const CorrelationTable at{
      singlet_correlation(r.angles[0], r.angles[2]),
      singlet_correlation(r.angles[0], r.angles[3]),
      singlet_correlation(r.angles[1], r.angles[2]),
      singlet_correlation(r.angles[1], r.angles[3])};
  CHECK(chsh_value(at) == doctest::Approx(r.max_value).epsilon(1e-12));
  CHECK_THROWS_AS(tsirelson_search(90, 100), validation_error);
}
