#include "clocklab/chsh.hpp"

#include <cmath>
#include <vector>

#include "clocklab/errors.hpp"

namespace clocklab::chsh {

namespace {

constexpr double kTwoPi = 6.283185307179586476925287;

void require_correlator(double e) {
  if (!(e >= -1.0 && e <= 1.0))
    throw validation_error("correlator outside [-1, 1]");
}

// -cos of angle differences on a uniform n-grid, tabulated so that one
// CHSH evaluation is four array reads.
struct CorrTable {
  explicit CorrTable(int n) : n(n), value(static_cast<std::size_t>(n) * n) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        value[static_cast<std::size_t>(i) * n + j] =
            -std::cos(kTwoPi * (i - j) / n);
  }
  const double* row(int i) const {
    int k = i % n;
    if (k < 0) k += n;
    return value.data() + static_cast<std::size_t>(k) * n;
  }
  int wrap(int i) const {
    int k = i % n;
    if (k < 0) k += n;
    return k;
  }
  int n;
  std::vector<double> value;
};

} // namespace

double chsh_value(const CorrelationTable& c) {
  require_correlator(c.e_ab);
  require_correlator(c.e_ab2);
  require_correlator(c.e_a2b);
  require_correlator(c.e_a2b2);
  return std::abs(c.e_ab + c.e_ab2 + c.e_a2b - c.e_a2b2);
}

double lhv_max() {
  int best = 0;
  for (int a = -1; a <= 1; a += 2)
    for (int a2 = -1; a2 <= 1; a2 += 2)
      for (int b = -1; b <= 1; b += 2)
        for (int b2 = -1; b2 <= 1; b2 += 2) {
          const int s = a * b + a * b2 + a2 * b - a2 * b2;
          best = std::max(best, s < 0 ? -s : s);
        }
  return static_cast<double>(best);
}

double singlet_correlation(double theta_a, double theta_b) {
  if (!std::isfinite(theta_a) || !std::isfinite(theta_b))
    throw validation_error("non-finite angle");
  return -std::cos(theta_a - theta_b);
}

GridSearchResult tsirelson_search(int coarse, int fine) {
  if (coarse < 4 || fine < coarse || fine % coarse != 0)
    throw validation_error("grid sizes must satisfy 4 <= coarse, coarse | fine");

  GridSearchResult result;
  const CorrTable ct(coarse);
  int best[4] = {0, 0, 0, 0};
  for (int a = 0; a < coarse; ++a) {
    const double* ra = ct.row(a);
    for (int a2 = 0; a2 < coarse; ++a2) {
      const double* ra2 = ct.row(a2);
      for (int b = 0; b < coarse; ++b) {
        const double base = ra[b] /* E(a,b) */;
        const double cross = ra2[b] /* E(a',b) */;
        for (int b2 = 0; b2 < coarse; ++b2) {
          ++result.evaluations;
          const double s = std::abs(base + ra[b2] + cross - ra2[b2]);
          if (s > result.max_value) {
            result.max_value = s;
            best[0] = a;
            best[1] = a2;
            best[2] = b;
            best[3] = b2;
          }
        }
      }
    }
  }

  // local refinement on the fine grid around the coarse maximum
  const CorrTable ft(fine);
  const int scale = fine / coarse;
  const int radius = 2 * scale;
  int fa[4];
  for (int k = 0; k < 4; ++k) fa[k] = best[k] * scale;
  int fine_best[4] = {fa[0], fa[1], fa[2], fa[3]};
  for (int da = -radius; da <= radius; ++da) {
    const double* ra = ft.row(fa[0] + da);
    for (int da2 = -radius; da2 <= radius; ++da2) {
      const double* ra2 = ft.row(fa[1] + da2);
      for (int db = -radius; db <= radius; ++db) {
        const int ib = ft.wrap(fa[2] + db);
        const double base = ra[ib];
        const double cross = ra2[ib];
        for (int db2 = -radius; db2 <= radius; ++db2) {
          ++result.evaluations;
          const int ib2 = ft.wrap(fa[3] + db2);
          const double s = std::abs(base + ra[ib2] + cross - ra2[ib2]);
          if (s > result.max_value) {
            result.max_value = s;
            fine_best[0] = ft.wrap(fa[0] + da);
            fine_best[1] = ft.wrap(fa[1] + da2);
            fine_best[2] = ib;
            fine_best[3] = ib2;
          }
        }
      }
    }
  }

  for (int k = 0; k < 4; ++k)
    result.angles[static_cast<std::size_t>(k)] = kTwoPi * fine_best[k] / fine;
  return result;
}

} // namespace clocklab::chsh
