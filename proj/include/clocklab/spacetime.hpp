#pragma once

#include <string>

namespace clocklab::spacetime {

/// One event in flat 1+1-dimensional spacetime, natural units (c = 1).
/// t in seconds, x in light-seconds. Both must be finite.
struct SpacetimeEvent {
  double t = 0.0;
  double x = 0.0;
};

/// Coordinate differences of an event pair.
struct Delta {
  double dt = 0.0;
  double dx = 0.0;
};

/// Relative frame velocity as a fraction of c; |v| < 1 strictly.
struct Boost {
  double v = 0.0;
};

enum class IntervalClass { Timelike, Spacelike, Lightlike };

enum class Ordering { Before, After, Simultaneous };

const char* to_string(IntervalClass c);
const char* to_string(Ordering o);

/// Lorentz transform of (dt, dx) into the frame moving at v.
/// Throws std::domain_error("superluminal frame") for |v| >= 1 and
/// validation_error for non-finite inputs.
Delta boost(const Delta& delta, double v);

/// Sign classification of dt^2 - dx^2 with a relative tolerance band for
/// the lightlike case.
IntervalClass classify_interval(const Delta& delta);

/// Temporal order of e1 vs e2 as judged in the frame moving at v.
/// Before means e1 precedes e2. |dt'| below 1e-12 reports Simultaneous.
Ordering order_in_frame(const SpacetimeEvent& e1, const SpacetimeEvent& e2, double v);

/// Squared interval dt^2 - dx^2.
double interval_squared(const Delta& delta);

/// Relativistic velocity addition (v1 + v2) / (1 + v1*v2).
double compose_velocities(double v1, double v2);

} // namespace clocklab::spacetime
