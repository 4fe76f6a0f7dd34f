#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "retex/date.hpp"

namespace retex {

// Dated scalar observations. Dates are strictly increasing and every value is
// finite; the constructor enforces both and rejects empty input.
class TimeSeries {
 public:
  TimeSeries(std::vector<Date> dates, std::vector<double> values,
             std::string label = {});

  std::size_t size() const noexcept { return values_.size(); }
  Date start_date() const { return dates_.front(); }
  std::span<const Date> dates() const noexcept { return dates_; }
  std::span<const double> values() const noexcept { return values_; }
  const std::string& label() const noexcept { return label_; }

  // Same dates and label, new values (must match in length).
  TimeSeries with_values(std::vector<double> values) const;

  // Dates and values compare equal; the label is ignored.
  friend bool operator==(const TimeSeries& a, const TimeSeries& b) {
    return a.dates_ == b.dates_ && a.values_ == b.values_;
  }

 private:
  std::vector<Date> dates_;
  std::vector<double> values_;
  std::string label_;
};

enum class GapMode { forward_fill, drop, error };

struct GapPolicy {
  GapMode mode = GapMode::forward_fill;
  int max_gap_days = 7;
};

std::string_view gap_mode_name(GapMode mode) noexcept;
GapMode parse_gap_mode(std::string_view name);

// Reads a header-first, comma-separated file. Rows whose value cell is empty
// are skipped; the result is sorted by date.
TimeSeries parse_csv(std::string_view raw_text, std::string_view date_column,
                     std::string_view value_column,
                     std::string_view date_format = kIsoDateFormat,
                     std::string label = {});

// `date,value` header, ISO dates, 17 significant digits.
std::string to_csv(const TimeSeries& series);

TimeSeries regularize(const TimeSeries& series, const GapPolicy& policy);

// Observations with start <= date <= end.
TimeSeries slice_by_date(const TimeSeries& series, Date start, Date end);

}  // namespace retex
