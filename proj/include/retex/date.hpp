#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace retex {

using Date = std::chrono::year_month_day;

inline constexpr std::string_view kIsoDateFormat = "%Y-%m-%d";

// Parses `text` against a strftime-like pattern. Supported conversions:
// %Y (four-digit year), %y (two-digit year, 69-99 -> 19xx, else 20xx),
// %m, %d (one or two digits) and %%. Every other pattern character must
// match literally. Returns nullopt on mismatch or an invalid calendar date.
std::optional<Date> parse_date(std::string_view text, std::string_view pattern);

std::string format_iso(Date date);

// b - a in calendar days.
int days_between(Date a, Date b);

Date add_days(Date date, int days);

// Monday..Friday.
bool is_business_day(Date date);

}  // namespace retex
