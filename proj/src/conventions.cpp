#include "clocklab/conventions.hpp"

#include <cmath>
#include <stdexcept>

#include "clocklab/errors.hpp"

namespace clocklab::conventions {

Epsilon::Epsilon(double value) : value_(value) {
  if (!std::isfinite(value) || value <= 0.0 || value >= 1.0)
    throw std::domain_error("epsilon outside (0, 1)");
}

Kappa::Kappa(double value) : value_(value) {
  if (!std::isfinite(value) || value < -1.0 || value > 1.0)
    throw std::domain_error("kappa outside [-1, 1]");
}

double OneWaySpeed::value() const {
  if (instantaneous_)
    throw validation_error("instantaneous one-way speed has no finite value");
  return value_;
}

double reichenbach_assign(double t1, double t3, const Epsilon& eps) {
  if (!std::isfinite(t1) || !std::isfinite(t3))
    throw validation_error("non-finite clock reading");
  if (t3 < t1) throw validation_error("non-causal round trip");
  return t1 + eps.value() * (t3 - t1);
}

std::pair<OneWaySpeed, OneWaySpeed> kappa_speeds(const Kappa& kappa) {
  const double k = kappa.value();
  auto branch = [](double denom) {
    return denom == 0.0 ? OneWaySpeed::instantaneous()
                        : OneWaySpeed::finite(1.0 / denom);
  };
  return {branch(1.0 - k), branch(1.0 + k)};
}

Epsilon kappa_to_epsilon(const Kappa& kappa) {
  const double k = kappa.value();
  if (k <= -1.0 || k >= 1.0) throw std::domain_error("epsilon boundary");
  return Epsilon((1.0 - k) / 2.0);
}

Kappa epsilon_to_kappa(const Epsilon& eps) {
  return Kappa(1.0 - 2.0 * eps.value());
}

double modified_gamma(double v, const Kappa& kappa) {
  if (!std::isfinite(v)) throw validation_error("non-finite velocity");
  if (std::abs(v) >= 1.0) throw std::domain_error("superluminal frame");
  return (1.0 - kappa.value() * v) / std::sqrt(1.0 - v * v);
}

RelativisticRates relativistic_rate(double v, double phi_delta, double c) {
  if (!std::isfinite(v) || !std::isfinite(phi_delta) || !std::isfinite(c))
    throw validation_error("non-finite rate input");
  if (v < 0.0 || c <= 0.0) throw std::domain_error("negative speed or non-positive c");
  if (v >= c) throw std::domain_error("orbital speed at or above c");
  RelativisticRates r;
  r.velocity_term = -(v * v) / (2.0 * c * c);
  r.gravity_term = phi_delta / (c * c);
  r.net_per_day_us = (r.velocity_term + r.gravity_term) * 86400.0 * 1e6;
  return r;
}

RelativisticRates gps_rates() {
  using namespace gps;
  const double phi_delta = kGmEarth * (1.0 / kEarthRadius - 1.0 / kOrbitRadius);
  return relativistic_rate(kOrbitalSpeed, phi_delta, kSpeedOfLight);
}

} // namespace clocklab::conventions
