#include "clocklab/civiltime.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace clocklab::civiltime {

namespace {

constexpr std::int64_t kNsPerSec = 1000000000LL;
constexpr std::int64_t kSecPerDay = 86400LL;

bool is_leap_year(int y) { return y % 4 == 0 && (y % 100 != 0 || y % 400 == 0); }

int days_in_month(int y, int m) {
  static const int table[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  if (m == 2 && is_leap_year(y)) return 29;
  return table[m - 1];
}

// Howard Hinnant's civil-days algorithm, rebased to 1958-01-01.
std::int64_t days_from_civil_1970(int y, int m, int d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days_1970(std::int64_t z, int& y, int& m, int& d) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t yy = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
  m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
  y = static_cast<int>(yy + (m <= 2));
}

const std::int64_t kEpochShift = days_from_civil_1970(1958, 1, 1);

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

void validate_fields(const UtcCivil& c) {
  if (!calendar_valid(c.year, c.month, c.day))
    throw validation_error("invalid calendar date " + format_civil(c));
  if (c.hour < 0 || c.hour > 23 || c.minute < 0 || c.minute > 59 ||
      c.second < 0 || c.second > 60 || c.nanosecond < 0 ||
      c.nanosecond >= kNsPerSec)
    throw validation_error("invalid time of day " + format_civil(c));
}

} // namespace

bool calendar_valid(int year, int month, int day) {
  return month >= 1 && month <= 12 && day >= 1 && day <= days_in_month(year, month);
}

std::int64_t day_number(int year, int month, int day) {
  return days_from_civil_1970(year, month, day) - kEpochShift;
}

void civil_from_day_number(std::int64_t days, int& year, int& month, int& day) {
  civil_from_days_1970(days + kEpochShift, year, month, day);
}

bool operator==(const UtcCivil& a, const UtcCivil& b) {
  return a.year == b.year && a.month == b.month && a.day == b.day &&
         a.hour == b.hour && a.minute == b.minute && a.second == b.second &&
         a.nanosecond == b.nanosecond;
}

std::string format_civil(const UtcCivil& c) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02d", c.year, c.month,
                c.day, c.hour, c.minute, c.second);
  std::string out = buf;
  if (c.nanosecond != 0) {
    std::snprintf(buf, sizeof buf, ".%09lld",
                  static_cast<long long>(c.nanosecond));
    out += buf;
  }
  return out;
}

UtcCivil parse_civil(const std::string& text) {
  UtcCivil c;
  int n = 0;
  long long frac = 0;
  const int got = std::sscanf(text.c_str(), "%d-%d-%dT%d:%d:%d%n", &c.year,
                              &c.month, &c.day, &c.hour, &c.minute, &c.second, &n);
  if (got != 6) throw validation_error("unparseable civil time: " + text);
  std::string rest = text.substr(static_cast<std::size_t>(n));
  if (!rest.empty()) {
    if (rest[0] != '.' || rest.size() < 2 || rest.size() > 10)
      throw validation_error("unparseable civil time: " + text);
    for (std::size_t i = 1; i < rest.size(); ++i) {
      if (rest[i] < '0' || rest[i] > '9')
        throw validation_error("unparseable civil time: " + text);
      frac = frac * 10 + (rest[i] - '0');
    }
    for (std::size_t i = rest.size(); i < 10; ++i) frac *= 10;
  }
  c.nanosecond = frac;
  validate_fields(c);
  return c;
}

LeapTable LeapTable::from_entries(std::vector<Entry> entries) {
  if (entries.empty()) throw validation_error("empty leap table");
  for (std::size_t i = 1; i < entries.size(); ++i) {
    if (entries[i].effective_day <= entries[i - 1].effective_day)
      throw validation_error("leap table dates not strictly increasing");
    const std::int64_t step =
        entries[i].tai_minus_utc_s - entries[i - 1].tai_minus_utc_s;
    if (step != 1 && step != -1)
      throw validation_error("leap table offsets must step by exactly +/-1");
  }
  LeapTable t;
  t.entries_ = std::move(entries);
  return t;
}

LeapTable LeapTable::load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open leap table: " + path);
  std::string line;
  if (!std::getline(in, line)) throw validation_error("empty leap table file");
  std::vector<Entry> entries;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    int y = 0, m = 0, d = 0;
    long long off = 0;
    if (std::sscanf(line.c_str(), "%d-%d-%d,%lld", &y, &m, &d, &off) != 4)
      throw parse_error("bad leap table row", lineno, 1);
    if (!calendar_valid(y, m, d)) throw parse_error("bad leap table date", lineno, 1);
    entries.push_back(Entry{day_number(y, m, d), off});
  }
  return from_entries(std::move(entries));
}

std::int64_t LeapTable::offset_on(std::int64_t utc_day) const {
  if (utc_day < entries_.front().effective_day)
    throw validation_error("uncovered epoch");
  auto it = std::upper_bound(
      entries_.begin(), entries_.end(), utc_day,
      [](std::int64_t day, const Entry& e) { return day < e.effective_day; });
  return std::prev(it)->tai_minus_utc_s;
}

int LeapTable::positive_steps(int from_year, int to_year) const {
  const std::int64_t lo = day_number(from_year, 1, 1);
  const std::int64_t hi = day_number(to_year, 12, 31);
  int count = 0;
  for (std::size_t i = 1; i < entries_.size(); ++i) {
    if (entries_[i].effective_day < lo || entries_[i].effective_day > hi) continue;
    if (entries_[i].tai_minus_utc_s > entries_[i - 1].tai_minus_utc_s) ++count;
  }
  return count;
}

TaiInstant utc_to_tai(const UtcCivil& utc, const LeapTable& table) {
  validate_fields(utc);
  const std::int64_t day = day_number(utc.year, utc.month, utc.day);
  const std::int64_t offset = table.offset_on(day);
  const std::int64_t sod =
      utc.hour * 3600LL + utc.minute * 60LL + utc.second;

  const auto& entries = table.entries();
  auto next = std::upper_bound(
      entries.begin(), entries.end(), day,
      [](std::int64_t d, const LeapTable::Entry& e) { return d < e.effective_day; });
  const bool boundary_next = next != entries.end() && next->effective_day == day + 1;

  if (utc.second == 60) {
    const bool positive_leap =
        boundary_next && next->tai_minus_utc_s == offset + 1;
    if (!(positive_leap && utc.hour == 23 && utc.minute == 59))
      throw validation_error("second=60 outside a declared leap second");
  }
  if (boundary_next && next->tai_minus_utc_s == offset - 1 && sod == kSecPerDay - 1)
    throw validation_error("nonexistent UTC second removed by negative leap");

  const std::int64_t tai_s = day * kSecPerDay + sod + offset;
  return TaiInstant{tai_s * kNsPerSec + utc.nanosecond};
}

UtcCivil tai_to_utc(const TaiInstant& t, const LeapTable& table) {
  const std::int64_t tai_s = floor_div(t.ns_since_epoch, kNsPerSec);
  const std::int64_t ns = t.ns_since_epoch - tai_s * kNsPerSec;
  const auto& entries = table.entries();

  const auto segment_start = [](const LeapTable::Entry& e) {
    return e.effective_day * kSecPerDay + e.tai_minus_utc_s;
  };
  if (tai_s < segment_start(entries.front()))
    throw validation_error("uncovered epoch");

  std::size_t i = entries.size() - 1;
  while (segment_start(entries[i]) > tai_s) --i;

  const std::int64_t utc_s = tai_s - entries[i].tai_minus_utc_s;
  std::int64_t day = floor_div(utc_s, kSecPerDay);
  std::int64_t sod = utc_s - day * kSecPerDay;

  // the inserted second reads 23:59:60 of the previous day
  if (i + 1 < entries.size() &&
      entries[i + 1].tai_minus_utc_s == entries[i].tai_minus_utc_s + 1 &&
      day == entries[i + 1].effective_day) {
    day -= 1;
    sod = kSecPerDay; // renders as second 60
  }

  UtcCivil c;
  civil_from_day_number(day, c.year, c.month, c.day);
  c.hour = static_cast<int>(sod / 3600);
  c.minute = static_cast<int>((sod % 3600) / 60);
  c.second = static_cast<int>(sod % 60);
  if (sod == kSecPerDay) {
    c.hour = 23;
    c.minute = 59;
    c.second = 60;
  }
  c.nanosecond = ns;
  return c;
}

bool check_leap_constraint(double utc_minus_ut1_s) {
  if (!(utc_minus_ut1_s == utc_minus_ut1_s))
    throw validation_error("non-finite UTC-UT1");
  return utc_minus_ut1_s < 0.9 && utc_minus_ut1_s > -0.9;
}

Ut1Model::Ut1Model(std::vector<Knot> knots) : knots_(std::move(knots)) {
  if (knots_.empty()) throw validation_error("UT1 model needs at least one knot");
  for (std::size_t i = 1; i < knots_.size(); ++i)
    if (knots_[i].utc_day <= knots_[i - 1].utc_day)
      throw validation_error("UT1 knots not strictly increasing");
}

double Ut1Model::offset_at(double utc_day) const {
  if (utc_day <= static_cast<double>(knots_.front().utc_day))
    return knots_.front().offset_s;
  if (utc_day >= static_cast<double>(knots_.back().utc_day))
    return knots_.back().offset_s;
  for (std::size_t i = 1; i < knots_.size(); ++i) {
    const double x0 = static_cast<double>(knots_[i - 1].utc_day);
    const double x1 = static_cast<double>(knots_[i].utc_day);
    if (utc_day <= x1) {
      const double f = (utc_day - x0) / (x1 - x0);
      return knots_[i - 1].offset_s + f * (knots_[i].offset_s - knots_[i - 1].offset_s);
    }
  }
  return knots_.back().offset_s;
}

std::int64_t smear(std::int64_t t_ns, const SmearSpec& spec) {
  if (spec.window_ns <= 0) throw std::domain_error("smear window must be positive");
  if (spec.sign != 1 && spec.sign != -1)
    throw validation_error("smear sign must be +1 or -1");
  const std::int64_t w1 = spec.leap.ns_since_epoch + spec.window_end_offset_ns;
  const std::int64_t w0 = w1 - spec.window_ns;
  if (t_ns <= w0) return t_ns;
  if (t_ns >= w1) return t_ns - spec.sign * kNsPerSec;
  const __int128 accumulated =
      static_cast<__int128>(t_ns - w0) * kNsPerSec / spec.window_ns;
  return t_ns - spec.sign * static_cast<std::int64_t>(accumulated);
}

double smear_max_rate_ppb(const SmearSpec& spec) {
  if (spec.window_ns <= 0) throw std::domain_error("smear window must be positive");
  return 1e18 / static_cast<double>(spec.window_ns);
}

namespace {

// label comparisons on a leap-free local timeline
std::int64_t label_seconds(const UtcCivil& c) {
  return day_number(c.year, c.month, c.day) * kSecPerDay + c.hour * 3600LL +
         c.minute * 60LL + c.second;
}

UtcCivil label_add(const UtcCivil& c, std::int64_t seconds) {
  std::int64_t total = label_seconds(c) + seconds;
  std::int64_t day = floor_div(total, kSecPerDay);
  std::int64_t sod = total - day * kSecPerDay;
  UtcCivil out;
  civil_from_day_number(day, out.year, out.month, out.day);
  out.hour = static_cast<int>(sod / 3600);
  out.minute = static_cast<int>((sod % 3600) / 60);
  out.second = static_cast<int>(sod % 60);
  out.nanosecond = c.nanosecond;
  return out;
}

} // namespace

DstResult apply_dst(const UtcCivil& wall, const DstRule& rule) {
  validate_fields(wall);
  if (rule.dst_offset_s <= 0) throw validation_error("DST offset must be positive");
  const std::int64_t w = label_seconds(wall);
  const std::int64_t start = label_seconds(rule.start);
  const std::int64_t end = label_seconds(rule.end);
  if (start == end) throw validation_error("DST rule with start == end");
  if (end - start < 2 * rule.dst_offset_s)
    throw validation_error("DST season shorter than twice the offset");

  DstResult r;
  r.adjusted = wall;
  if (w < start || w >= end) {
    r.status = DstStatus::Standard;
    r.utc_offset_s = rule.base_offset_s;
    return r;
  }
  if (w < start + rule.dst_offset_s)
    throw dst_gap_error("nonexistent wall time " + format_civil(wall) +
                        " inside the spring-forward gap");
  if (w >= end - rule.dst_offset_s) {
    r.status = DstStatus::Ambiguous;
    r.utc_offset_s = rule.base_offset_s + rule.dst_offset_s;
    r.alternate_offset_s = rule.base_offset_s;
    return r;
  }
  r.status = DstStatus::Dst;
  r.utc_offset_s = rule.base_offset_s + rule.dst_offset_s;
  r.adjusted = label_add(wall, rule.dst_offset_s);
  return r;
}

} // namespace clocklab::civiltime
