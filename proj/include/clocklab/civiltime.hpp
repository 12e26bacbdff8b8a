#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "clocklab/errors.hpp"

namespace clocklab::civiltime {

/// Nanoseconds since 1958-01-01T00:00:00 TAI. Monotone and continuous;
/// leap seconds never touch this scale.
struct TaiInstant {
  std::int64_t ns_since_epoch = 0;
};

/// Calendar fields on the UTC scale. second == 60 is legal only during an
/// inserted leap second.
struct UtcCivil {
  int year = 1958;
  int month = 1;
  int day = 1;
  int hour = 0;
  int minute = 0;
  int second = 0;
  std::int64_t nanosecond = 0;
};

bool operator==(const UtcCivil& a, const UtcCivil& b);

/// "YYYY-MM-DDTHH:MM:SS[.fffffffff]"
std::string format_civil(const UtcCivil& c);
UtcCivil parse_civil(const std::string& text);

/// Days relative to 1958-01-01 in the proleptic Gregorian calendar.
std::int64_t day_number(int year, int month, int day);
void civil_from_day_number(std::int64_t days, int& year, int& month, int& day);
bool calendar_valid(int year, int month, int day);

/// Ordered (effective UTC date, cumulative TAI-UTC) entries. Consecutive
/// offsets must differ by exactly +/-1 second.
class LeapTable {
 public:
  struct Entry {
    std::int64_t effective_day = 0; // day_number of 00:00:00 UTC
    std::int64_t tai_minus_utc_s = 0;
  };

  static LeapTable from_entries(std::vector<Entry> entries);
  /// CSV with header, rows "YYYY-MM-DD,offset_s".
  static LeapTable load_csv(const std::string& path);

  const std::vector<Entry>& entries() const { return entries_; }

  /// Cumulative offset applicable on the given UTC day.
  /// Throws validation_error("uncovered epoch") before the first entry.
  std::int64_t offset_on(std::int64_t utc_day) const;

  /// Number of +1 steps whose effective date falls in [from_year, to_year].
  int positive_steps(int from_year, int to_year) const;

 private:
  std::vector<Entry> entries_;
};

TaiInstant utc_to_tai(const UtcCivil& utc, const LeapTable& table);
UtcCivil tai_to_utc(const TaiInstant& t, const LeapTable& table);

/// True iff |UTC - UT1| stays strictly inside the 0.9 s bound.
bool check_leap_constraint(double utc_minus_ut1_s);

/// Piecewise-linear UT1-UTC model; flat extrapolation beyond the knots.
class Ut1Model {
 public:
  struct Knot {
    std::int64_t utc_day = 0;
    double offset_s = 0.0;
  };
  explicit Ut1Model(std::vector<Knot> knots);
  double offset_at(double utc_day) const;

 private:
  std::vector<Knot> knots_;
};

/// Leap smear: one second of adjustment spread linearly over a window that
/// by default ends at the leap instant.
struct SmearSpec {
  TaiInstant leap;                        // instant of the leap on the input timeline
  int sign = +1;                          // +1 inserted second, -1 removed
  std::int64_t window_ns = 86400LL * 1000000000LL;
  std::int64_t window_end_offset_ns = 0;  // shift of the window relative to the leap
};

/// Smeared label for an input timeline value: identity outside the window,
/// linear ramp inside, cumulative adjustment exactly +/-1 s at the end.
std::int64_t smear(std::int64_t t_ns, const SmearSpec& spec);

/// Peak fractional rate deviation of the smear, in ppb.
double smear_max_rate_ppb(const SmearSpec& spec);

/// One DST season: wall clocks jump forward dst_offset_s at `start` and
/// back at `end` (both wall-clock civil labels).
struct DstRule {
  std::int64_t base_offset_s = 0;
  std::int64_t dst_offset_s = 3600;
  UtcCivil start;
  UtcCivil end;
};

struct dst_gap_error : validation_error {
  explicit dst_gap_error(const std::string& what) : validation_error(what) {}
};

enum class DstStatus { Standard, Dst, Ambiguous };

/// Resolution of a wall-clock label against a DST rule.
struct DstResult {
  DstStatus status = DstStatus::Standard;
  std::int64_t utc_offset_s = 0;          // total offset in force
  UtcCivil adjusted;                      // input with dst_offset applied when in effect
  std::optional<std::int64_t> alternate_offset_s; // second reading when ambiguous
};

/// Resolves a wall-clock civil label. Labels inside the spring-forward gap
/// throw dst_gap_error; labels in the fall-back overlap come back tagged
/// with both candidate offsets.
DstResult apply_dst(const UtcCivil& wall, const DstRule& rule);

} // namespace clocklab::civiltime
