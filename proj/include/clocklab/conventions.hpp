#pragma once

#include <utility>

namespace clocklab::conventions {

/// Reichenbach synchrony parameter, open interval (0, 1).
class Epsilon {
 public:
  explicit Epsilon(double value);
  double value() const { return value_; }

 private:
  double value_;
};

/// Anisotropy parameter, closed interval [-1, 1]. kappa = +/-1 is the
/// extreme case: one direction instantaneous, the other at c/2.
class Kappa {
 public:
  explicit Kappa(double value);
  double value() const { return value_; }

 private:
  double value_;
};

/// One-way light speed in units of c. The instantaneous branch at |kappa| = 1
/// is a distinguished value, not a floating-point infinity, so callers must
/// branch before doing arithmetic.
class OneWaySpeed {
 public:
  static OneWaySpeed finite(double value) { return OneWaySpeed(value, false); }
  static OneWaySpeed instantaneous() { return OneWaySpeed(0.0, true); }

  bool is_instantaneous() const { return instantaneous_; }

  /// Finite value in units of c; throws if instantaneous.
  double value() const;

 private:
  OneWaySpeed(double value, bool inst) : value_(value), instantaneous_(inst) {}
  double value_;
  bool instantaneous_;
};

/// Fractional clock-rate contributions and the resulting drift per day.
struct RelativisticRates {
  double velocity_term = 0.0;   // -v^2 / 2c^2
  double gravity_term = 0.0;    // delta_phi / c^2
  double net_per_day_us = 0.0;  // (sum) * 86400 * 1e6
};

/// Timestamp assigned to the distant clock: t1 + eps * (t3 - t1).
/// Throws validation_error("non-causal round trip") when t3 < t1.
double reichenbach_assign(double t1, double t3, const Epsilon& eps);

/// One-way speeds (c_plus, c_minus) = (1/(1-kappa), 1/(1+kappa)).
std::pair<OneWaySpeed, OneWaySpeed> kappa_speeds(const Kappa& kappa);

/// eps = (1 - kappa) / 2; requires kappa in the open interval.
Epsilon kappa_to_epsilon(const Kappa& kappa);

/// Inverse map: kappa = 1 - 2 * eps.
Kappa epsilon_to_kappa(const Epsilon& eps);

/// (1 - kappa * v) / sqrt(1 - v^2); reduces to the standard gamma at kappa = 0.
double modified_gamma(double v, const Kappa& kappa);

/// First-order rate terms for a clock at orbital speed v (m/s) and potential
/// difference phi_delta (m^2/s^2) relative to the reference clock.
RelativisticRates relativistic_rate(double v, double phi_delta, double c);

// GPS preset constants.
// GM_E and R_E: IERS 2010 conventions values, rounded as commonly tabulated.
// Orbit radius 26,561 km and speed 3,874 m/s: nominal circular GPS orbit.
namespace gps {
constexpr double kGmEarth = 3.986e14;        // m^3/s^2
constexpr double kEarthRadius = 6.371e6;     // m
constexpr double kOrbitRadius = 2.6561e7;    // m
constexpr double kOrbitalSpeed = 3874.0;     // m/s
constexpr double kSpeedOfLight = 299792458.0; // m/s
} // namespace gps

/// relativistic_rate evaluated at the GPS preset.
RelativisticRates gps_rates();

} // namespace clocklab::conventions
