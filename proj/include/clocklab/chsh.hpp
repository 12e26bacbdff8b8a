#pragma once

#include <array>

namespace clocklab::chsh {

/// The four correlators of a CHSH run; every entry in [-1, 1].
struct CorrelationTable {
  double e_ab = 0.0;
  double e_ab2 = 0.0;  // E(a, b')
  double e_a2b = 0.0;  // E(a', b)
  double e_a2b2 = 0.0; // E(a', b')
};

/// |E(a,b) + E(a,b') + E(a',b) - E(a',b')|.
double chsh_value(const CorrelationTable& c);

/// Maximum over the 16 deterministic local strategies; equals 2 exactly
/// (the enumeration runs in integer arithmetic).
double lhv_max();

/// Singlet-state correlation -cos(theta_a - theta_b).
double singlet_correlation(double theta_a, double theta_b);

struct GridSearchResult {
  double max_value = 0.0;
  std::array<double, 4> angles{}; // a, a', b, b' in radians
  unsigned long long evaluations = 0;
};

/// Maximizes the singlet CHSH value over an angle grid of `coarse` points
/// per dimension, then refines locally on a grid of `fine` points per turn.
GridSearchResult tsirelson_search(int coarse = 90, int fine = 360);

} // namespace clocklab::chsh
