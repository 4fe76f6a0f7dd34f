#include "retex/date.hpp"

#include <cstdio>

namespace retex {

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }

// Reads between min_digits and max_digits decimal digits at text[pos].
std::optional<int> read_number(std::string_view text, std::size_t& pos,
                               int min_digits, int max_digits) {
  int value = 0;
  int count = 0;
  while (pos < text.size() && count < max_digits && is_digit(text[pos])) {
    value = value * 10 + (text[pos] - '0');
    ++pos;
    ++count;
  }
  if (count < min_digits) return std::nullopt;
  return value;
}

}  // namespace

std::optional<Date> parse_date(std::string_view text, std::string_view pattern) {
  std::optional<int> year, month, day;
  std::size_t pos = 0;
  for (std::size_t p = 0; p < pattern.size(); ++p) {
    if (pattern[p] != '%' || p + 1 == pattern.size()) {
      if (pos >= text.size() || text[pos] != pattern[p]) return std::nullopt;
      ++pos;
      continue;
    }
    const char spec = pattern[++p];
    switch (spec) {
      case 'Y':
        year = read_number(text, pos, 4, 4);
        if (!year) return std::nullopt;
        break;
      case 'y': {
        auto yy = read_number(text, pos, 2, 2);
        if (!yy) return std::nullopt;
        year = *yy >= 69 ? 1900 + *yy : 2000 + *yy;
        break;
      }
      case 'm':
        month = read_number(text, pos, 1, 2);
        if (!month) return std::nullopt;
        break;
      case 'd':
        day = read_number(text, pos, 1, 2);
        if (!day) return std::nullopt;
        break;
      case '%':
        if (pos >= text.size() || text[pos] != '%') return std::nullopt;
        ++pos;
        break;
      default:
        return std::nullopt;
    }
  }
  if (pos != text.size() || !year || !month || !day) return std::nullopt;
  const Date date{std::chrono::year{*year},
                  std::chrono::month{static_cast<unsigned>(*month)},
                  std::chrono::day{static_cast<unsigned>(*day)}};
  if (!date.ok()) return std::nullopt;
  return date;
}

std::string format_iso(Date date) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(date.year()),
                static_cast<unsigned>(date.month()),
                static_cast<unsigned>(date.day()));
  return buf;
}

int days_between(Date a, Date b) {
  return static_cast<int>(
      (std::chrono::sys_days{b} - std::chrono::sys_days{a}).count());
}

Date add_days(Date date, int days) {
  return Date{std::chrono::sys_days{date} + std::chrono::days{days}};
}

bool is_business_day(Date date) {
  const std::chrono::weekday wd{std::chrono::sys_days{date}};
  return wd != std::chrono::Saturday && wd != std::chrono::Sunday;
}

}  // namespace retex
