#include "relocast/time.hpp"

#include <charconv>
#include <cstdio>

#include "relocast/error.hpp"

namespace relocast {

using namespace std::chrono;

Step parse_step(std::string_view text) {
  if (text == "hourly") return Step::Hourly;
  if (text == "daily") return Step::Daily;
  throw ValidationError("unknown step '" + std::string(text) +
                        "' (expected hourly or daily)");
}

std::string_view to_string(Step step) {
  return step == Step::Hourly ? "hourly" : "daily";
}

std::chrono::seconds step_duration(Step step) {
  return step == Step::Hourly ? seconds{hours{1}} : seconds{days{1}};
}

Date make_date(int year, unsigned month, unsigned day) {
  const year_month_day ymd{std::chrono::year{year}, std::chrono::month{month},
                           std::chrono::day{day}};
  if (!ymd.ok()) {
    throw ValidationError("invalid calendar date " + std::to_string(year) +
                          "-" + std::to_string(month) + "-" +
                          std::to_string(day));
  }
  return local_days{ymd};
}

Timestamp make_timestamp(int year, unsigned month, unsigned day, int hour,
                         int minute, int second) {
  return Timestamp{make_date(year, month, day)} + hours{hour} +
         minutes{minute} + seconds{second};
}

Date date_of(Timestamp t) { return floor<days>(t); }

int day_of_year(Date d) {
  const year_month_day ymd{d};
  const local_days jan1{ymd.year() / January / 1};
  return static_cast<int>((d - jan1).count()) + 1;
}

int day_of_year(Timestamp t) { return day_of_year(date_of(t)); }

double clock_hours(Timestamp t) {
  const auto since_midnight = t - Timestamp{date_of(t)};
  return static_cast<double>(since_midnight.count()) / 3600.0;
}

std::string format_timestamp(Timestamp t, Step step) {
  const year_month_day ymd{date_of(t)};
  char buf[32];
  if (step == Step::Daily) {
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", int(ymd.year()),
                  unsigned(ymd.month()), unsigned(ymd.day()));
  } else {
    const hh_mm_ss hms{t - Timestamp{date_of(t)}};
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d", int(ymd.year()),
                  unsigned(ymd.month()), unsigned(ymd.day()),
                  int(hms.hours().count()), int(hms.minutes().count()));
  }
  return buf;
}

namespace {

std::optional<int> parse_fixed(std::string_view text, std::size_t pos,
                               std::size_t width) {
  if (pos + width > text.size()) return std::nullopt;
  int value = 0;
  const char* first = text.data() + pos;
  const char* last = first + width;
  for (const char* p = first; p != last; ++p) {
    if (*p < '0' || *p > '9') return std::nullopt;
  }
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) return std::nullopt;
  return value;
}

}  // namespace

std::optional<Timestamp> parse_timestamp(std::string_view text, Step step) {
  const std::size_t expected = step == Step::Daily ? 10 : 16;
  if (text.size() != expected || text[4] != '-' || text[7] != '-') {
    return std::nullopt;
  }
  auto y = parse_fixed(text, 0, 4);
  auto m = parse_fixed(text, 5, 2);
  auto d = parse_fixed(text, 8, 2);
  if (!y || !m || !d) return std::nullopt;
  const year_month_day ymd{std::chrono::year{*y},
                           std::chrono::month{unsigned(*m)},
                           std::chrono::day{unsigned(*d)}};
  if (!ymd.ok()) return std::nullopt;
  Timestamp t{local_days{ymd}};
  if (step == Step::Hourly) {
    if (text[10] != 'T' || text[13] != ':') return std::nullopt;
    auto hh = parse_fixed(text, 11, 2);
    auto mm = parse_fixed(text, 14, 2);
    if (!hh || !mm || *hh > 23 || *mm > 59) return std::nullopt;
    t += hours{*hh} + minutes{*mm};
  }
  return t;
}

}  // namespace relocast
