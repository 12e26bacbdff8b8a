#pragma once

#include <cstdint>
#include <string>

namespace clocklab {

/// Exact rational, used for convention grid values (epsilon, kappa) so that
/// timeline shifts like (eps - 1/2) * RTT stay in integer arithmetic.
struct Ratio {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

bool operator==(const Ratio& a, const Ratio& b);

/// Parses a decimal literal ("0.05", "-0.9", "3") into an exact Ratio.
Ratio parse_ratio(const std::string& text);

/// Shortest decimal rendering of the exact value, e.g. {1,20} -> "0.05".
std::string to_string(const Ratio& r);

/// Rounds num/den to the nearest integer, ties to even.
std::int64_t div_half_even(std::int64_t num, std::int64_t den);

/// x/2 with round-half-toward-even.
inline std::int64_t halve_half_even(std::int64_t x) { return div_half_even(x, 2); }

} // namespace clocklab
