#include "clocklab/spacetime.hpp"

#include <cmath>
#include <stdexcept>

#include "clocklab/errors.hpp"

namespace clocklab::spacetime {

namespace {

constexpr double kLightlikeTol = 1e-9;
constexpr double kOrderTieTol = 1e-12;

void require_finite(double value, const char* what) {
  if (!std::isfinite(value))
    throw validation_error(std::string("non-finite ") + what);
}

void require_subluminal(double v) {
  require_finite(v, "velocity");
  if (std::abs(v) >= 1.0) throw std::domain_error("superluminal frame");
}

} // namespace

const char* to_string(IntervalClass c) {
  switch (c) {
    case IntervalClass::Timelike: return "Timelike";
    case IntervalClass::Spacelike: return "Spacelike";
    case IntervalClass::Lightlike: return "Lightlike";
  }
  return "Unknown";
}

const char* to_string(Ordering o) {
  switch (o) {
    case Ordering::Before: return "Before";
    case Ordering::After: return "After";
    case Ordering::Simultaneous: return "Simultaneous";
  }
  return "Unknown";
}

Delta boost(const Delta& delta, double v) {
  require_finite(delta.dt, "dt");
  require_finite(delta.dx, "dx");
  require_subluminal(v);
  const double gamma = 1.0 / std::sqrt(1.0 - v * v);
  return Delta{gamma * (delta.dt - v * delta.dx), gamma * (delta.dx - v * delta.dt)};
}

double interval_squared(const Delta& delta) {
  return delta.dt * delta.dt - delta.dx * delta.dx;
}

IntervalClass classify_interval(const Delta& delta) {
  require_finite(delta.dt, "dt");
  require_finite(delta.dx, "dx");
  const double t2 = delta.dt * delta.dt;
  const double x2 = delta.dx * delta.dx;
  const double s = t2 - x2;
  const double band = kLightlikeTol * std::max(std::max(t2, x2), 1.0);
  if (std::abs(s) <= band) return IntervalClass::Lightlike;
  return s > 0.0 ? IntervalClass::Timelike : IntervalClass::Spacelike;
}

Ordering order_in_frame(const SpacetimeEvent& e1, const SpacetimeEvent& e2, double v) {
  const Delta d{e2.t - e1.t, e2.x - e1.x};
  const Delta boosted = boost(d, v);
  if (std::abs(boosted.dt) < kOrderTieTol) return Ordering::Simultaneous;
  return boosted.dt > 0.0 ? Ordering::Before : Ordering::After;
}

double compose_velocities(double v1, double v2) {
  require_subluminal(v1);
  require_subluminal(v2);
  return (v1 + v2) / (1.0 + v1 * v2);
}

} // namespace clocklab::spacetime
