#pragma once

#include <span>
#include <vector>

#include "retex/series.hpp"

namespace retex {

double mean(std::span<const double> values);
inline double mean(const TimeSeries& s) { return mean(s.values()); }

// Recurrence threshold: sqrt((1/N) * sum (x_i - mean)^2), the population
// RMS deviation. Zero iff every value is equal.
double threshold(std::span<const double> values);
inline double threshold(const TimeSeries& s) { return threshold(s.values()); }

// Threshold recomputed over a window of `window` consecutive values centred on
// each index (shifted inward at the ends so every window holds exactly
// min(window, N) values). window == 0 is rejected.
std::vector<double> sliding_threshold(std::span<const double> values,
                                      std::size_t window);

// Polynomial trend in the observation index: value(t) = sum_k coeff[k] * t^k
// where t = index - origin_index.
struct TrendModel {
  int degree = 1;
  std::vector<double> coefficients;
  long origin_index = 0;

  double value_at(double index) const;
};

// Ordinary least squares on indices 0..N-1. Throws SingularFit when the
// design is rank deficient (N <= degree).
TrendModel fit_trend(std::span<const double> values, int degree);
inline TrendModel fit_trend(const TimeSeries& s, int degree) {
  return fit_trend(s.values(), degree);
}

TimeSeries detrend(const TimeSeries& series, const TrendModel& trend);

}  // namespace retex
