#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace relocast {

// Legal local time of a site, stored with a fixed UTC offset (no DST).
using Timestamp = std::chrono::local_time<std::chrono::seconds>;
using Date = std::chrono::local_days;

enum class Step { Hourly, Daily };

Step parse_step(std::string_view text);
std::string_view to_string(Step step);

std::chrono::seconds step_duration(Step step);

Timestamp make_timestamp(int year, unsigned month, unsigned day, int hour = 0,
                         int minute = 0, int second = 0);
Date make_date(int year, unsigned month, unsigned day);

Date date_of(Timestamp t);

// 1 for January 1st.
int day_of_year(Date d);
int day_of_year(Timestamp t);

// Hours elapsed since local midnight of the same day, in [0, 24).
double clock_hours(Timestamp t);

// `YYYY-MM-DDTHH:MM` for hourly, `YYYY-MM-DD` for daily.
std::string format_timestamp(Timestamp t, Step step);

// Strict inverse of format_timestamp; nullopt on any deviation.
std::optional<Timestamp> parse_timestamp(std::string_view text, Step step);

}  // namespace relocast
