#include "retex/series.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "retex/error.hpp"

namespace retex {

namespace {

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n';
  };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

// Splits one CSV record. Double-quoted fields may contain commas; a doubled
// quote inside a quoted field is a literal quote.
std::vector<std::string> split_record(std::string_view line) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        current += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        current += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back(trim(current));
      current.clear();
    } else {
      current += c;
    }
  }
  fields.emplace_back(trim(current));
  return fields;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find('\n', start);
    if (end == std::string_view::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

std::optional<double> parse_double(std::string_view cell) {
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc{} || ptr != cell.data() + cell.size() || !std::isfinite(value))
    return std::nullopt;
  return value;
}

std::size_t column_index(const std::vector<std::string>& header,
                         std::string_view name) {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end())
    throw Error(ErrorCode::UnknownColumn,
                "column '" + std::string(name) + "' not in header");
  return static_cast<std::size_t>(it - header.begin());
}

}  // namespace

TimeSeries::TimeSeries(std::vector<Date> dates, std::vector<double> values,
                       std::string label)
    : dates_(std::move(dates)), values_(std::move(values)), label_(std::move(label)) {
  if (values_.empty()) throw Error(ErrorCode::EmptySeries, "series has no observations");
  if (dates_.size() != values_.size())
    throw Error(ErrorCode::InvalidArgument, "dates and values differ in length");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i]))
      throw Error(ErrorCode::InvalidArgument,
                  "non-finite value at index " + std::to_string(i));
    if (i > 0 && !(dates_[i - 1] < dates_[i]))
      throw Error(ErrorCode::InvalidArgument,
                  "dates not strictly increasing at index " + std::to_string(i));
  }
}

TimeSeries TimeSeries::with_values(std::vector<double> values) const {
  return TimeSeries(dates_, std::move(values), label_);
}

std::string_view gap_mode_name(GapMode mode) noexcept {
  switch (mode) {
    case GapMode::forward_fill: return "forward_fill";
    case GapMode::drop: return "drop";
    case GapMode::error: return "error";
  }
  return "forward_fill";
}

GapMode parse_gap_mode(std::string_view name) {
  if (name == "forward_fill") return GapMode::forward_fill;
  if (name == "drop") return GapMode::drop;
  if (name == "error") return GapMode::error;
  throw Error(ErrorCode::InvalidArgument, "unknown gap mode '" + std::string(name) + "'");
}

TimeSeries parse_csv(std::string_view raw_text, std::string_view date_column,
                     std::string_view value_column, std::string_view date_format,
                     std::string label) {
  if (raw_text.size() >= 3 && raw_text.substr(0, 3) == "\xEF\xBB\xBF")
    raw_text.remove_prefix(3);
  const auto lines = split_lines(raw_text);
  std::size_t first = 0;
  while (first < lines.size() && trim(lines[first]).empty()) ++first;
  if (first == lines.size())
    throw Error(ErrorCode::UnknownColumn, "input has no header row");

  const auto header = split_record(lines[first]);
  const auto date_idx = column_index(header, date_column);
  const auto value_idx = column_index(header, value_column);

  struct Row {
    Date date;
    double value;
  };
  std::vector<Row> rows;
  for (std::size_t li = first + 1, row_no = 1; li < lines.size(); ++li) {
    if (trim(lines[li]).empty()) continue;
    const std::size_t this_row = row_no++;
    const auto fields = split_record(lines[li]);
    if (fields.size() <= std::max(date_idx, value_idx))
      throw Error(ErrorCode::MalformedRow,
                  "row " + std::to_string(this_row) + ": missing columns", this_row);
    const auto& value_cell = fields[value_idx];
    if (value_cell.empty()) continue;
    const auto date = parse_date(fields[date_idx], date_format);
    if (!date)
      throw Error(ErrorCode::MalformedRow,
                  "row " + std::to_string(this_row) + ": bad date '" + fields[date_idx] + "'",
                  this_row);
    const auto value = parse_double(value_cell);
    if (!value)
      throw Error(ErrorCode::MalformedRow,
                  "row " + std::to_string(this_row) + ": bad value '" + value_cell + "'",
                  this_row);
    rows.push_back({*date, *value});
  }
  if (rows.empty()) throw Error(ErrorCode::EmptySeries, "no usable rows");

  std::stable_sort(rows.begin(), rows.end(),
                   [](const Row& a, const Row& b) { return a.date < b.date; });
  std::vector<Date> dates;
  std::vector<double> values;
  dates.reserve(rows.size());
  values.reserve(rows.size());
  for (const auto& r : rows) {
    if (!dates.empty() && dates.back() == r.date)
      throw Error(ErrorCode::DuplicateDate, "duplicate date " + format_iso(r.date));
    dates.push_back(r.date);
    values.push_back(r.value);
  }
  return TimeSeries(std::move(dates), std::move(values), std::move(label));
}

std::string to_csv(const TimeSeries& series) {
  std::string out = "date,value\n";
  char buf[64];
  for (std::size_t i = 0; i < series.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", series.values()[i]);
    out += format_iso(series.dates()[i]);
    out += ',';
    out += buf;
    out += '\n';
  }
  return out;
}

TimeSeries regularize(const TimeSeries& series, const GapPolicy& policy) {
  if (policy.max_gap_days < 1)
    throw Error(ErrorCode::InvalidArgument, "max_gap_days must be >= 1");
  const auto dates = series.dates();
  const auto values = series.values();

  switch (policy.mode) {
    case GapMode::drop:
      return series;
    case GapMode::error:
      for (std::size_t i = 1; i < dates.size(); ++i) {
        if (days_between(dates[i - 1], dates[i]) > 1)
          throw Error(ErrorCode::GapFound, "gap after " + format_iso(dates[i - 1]));
      }
      return series;
    case GapMode::forward_fill:
      break;
  }

  std::vector<Date> out_dates{dates.front()};
  std::vector<double> out_values{values.front()};
  for (std::size_t i = 1; i < dates.size(); ++i) {
    const int gap = days_between(dates[i - 1], dates[i]);
    if (gap > policy.max_gap_days)
      throw Error(ErrorCode::GapTooLarge,
                  std::to_string(gap) + "-day gap after " + format_iso(dates[i - 1]) +
                      " exceeds max_gap_days=" + std::to_string(policy.max_gap_days));
    for (int d = 1; d < gap; ++d) {
      out_dates.push_back(add_days(dates[i - 1], d));
      out_values.push_back(values[i - 1]);
    }
    out_dates.push_back(dates[i]);
    out_values.push_back(values[i]);
  }
  return TimeSeries(std::move(out_dates), std::move(out_values), series.label());
}

TimeSeries slice_by_date(const TimeSeries& series, Date start, Date end) {
  if (end < start) throw Error(ErrorCode::InvalidArgument, "slice start after end");
  const auto dates = series.dates();
  const auto lo = std::lower_bound(dates.begin(), dates.end(), start);
  const auto hi = std::upper_bound(dates.begin(), dates.end(), end);
  if (lo >= hi)
    throw Error(ErrorCode::EmptySeries, "no observations between " + format_iso(start) +
                                            " and " + format_iso(end));
  const auto a = static_cast<std::size_t>(lo - dates.begin());
  const auto b = static_cast<std::size_t>(hi - dates.begin());
  const auto values = series.values();
  return TimeSeries(std::vector<Date>(dates.begin() + a, dates.begin() + b),
                    std::vector<double>(values.begin() + a, values.begin() + b),
                    series.label());
}

}  // namespace retex
