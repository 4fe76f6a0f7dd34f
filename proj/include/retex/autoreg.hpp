#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "retex/series.hpp"

namespace retex {

// x_i = c + sum_{j=1..p} rho[j-1] * x_{i-j} + e_i, e_i ~ N(0, noise_std^2).
struct ARModel {
  double c = 0.0;
  std::vector<double> rho;
  double noise_std = 0.0;

  std::size_t order() const noexcept { return rho.size(); }
};

// Throws InvalidArgument unless order >= 1, every field is finite and
// noise_std >= 0.
void validate(const ARModel& model);

// True when every root of the characteristic polynomial lies strictly inside
// the unit circle.
bool is_stationary(const ARModel& model);

struct ForecastResult {
  std::size_t horizon = 0;
  std::vector<double> predictions;
  bool is_iterated = false;
  double noise_std = 0.0;
};

// Conditional least squares over targets x_p..x_{N-1}. noise_std is the
// residual RMS. Throws InsufficientData when N < p + 2 and DegenerateSeries
// when the regressors are collinear (e.g. a constant series).
ARModel fit_ar(std::span<const double> values, std::size_t p);
inline ARModel fit_ar(const TimeSeries& s, std::size_t p) { return fit_ar(s.values(), p); }

// Point forecast with the error term set to zero; steps past the first feed
// on earlier predictions.
ForecastResult forecast(const ARModel& model, std::span<const double> history,
                        std::size_t horizon);

// Response at lag k to a unit shock at lag 0.
double impulse_response(const ARModel& model, std::size_t k);

// Synthetic series: the first p values are `initial`, the rest follow the
// model with Gaussian noise from std::mt19937_64(seed). Dates are consecutive
// days from `start`.
TimeSeries simulate(const ARModel& model, std::size_t n, std::uint64_t seed,
                    std::span<const double> initial,
                    Date start = Date{std::chrono::year{2000}, std::chrono::January,
                                      std::chrono::day{1}});

// Trend fit, AR(p) on the detrended residuals, and the sum of the trend
// extrapolation at N..N+horizon-1 with the residual forecast.
ForecastResult forecast_with_trend(const TimeSeries& series, int degree,
                                   std::size_t p, std::size_t horizon);

// {"c": ..., "rho": [...], "p": ..., "noise_std": ...}
std::string to_json(const ARModel& model);
ARModel ar_model_from_json(std::string_view text);

}  // namespace retex
