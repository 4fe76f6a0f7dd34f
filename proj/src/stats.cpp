#include "retex/stats.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "retex/error.hpp"

namespace retex {

double mean(std::span<const double> values) {
  if (values.empty()) throw Error(ErrorCode::EmptySeries, "mean of empty series");
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

double threshold(std::span<const double> values) {
  const double m = mean(values);
  double ss = 0.0;
  for (double v : values) ss += (v - m) * (v - m);
  return std::sqrt(ss / static_cast<double>(values.size()));
}

std::vector<double> sliding_threshold(std::span<const double> values,
                                      std::size_t window) {
  if (window == 0) throw Error(ErrorCode::InvalidArgument, "window must be positive");
  if (values.empty()) throw Error(ErrorCode::EmptySeries, "empty series");
  const std::size_t n = values.size();
  const std::size_t w = std::min(window, n);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t lo = i >= w / 2 ? i - w / 2 : 0;
    lo = std::min(lo, n - w);
    out[i] = threshold(values.subspan(lo, w));
  }
  return out;
}

double TrendModel::value_at(double index) const {
  const double t = index - static_cast<double>(origin_index);
  double acc = 0.0;
  for (auto k = coefficients.size(); k-- > 0;) acc = acc * t + coefficients[k];
  return acc;
}

TrendModel fit_trend(std::span<const double> values, int degree) {
  if (degree < 1 || degree > 2)
    throw Error(ErrorCode::InvalidArgument, "trend degree must be 1 or 2");
  const auto n = static_cast<Eigen::Index>(values.size());
  if (n < degree + 1)
    throw Error(ErrorCode::SingularFit,
                "need at least " + std::to_string(degree + 1) + " observations");

  // Fit in a centred regressor u = i - n/2, then re-expand about i = 0.
  const double centre = static_cast<double>(n / 2);
  Eigen::MatrixXd design(n, degree + 1);
  Eigen::VectorXd target(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double u = static_cast<double>(i) - centre;
    double power = 1.0;
    for (int k = 0; k <= degree; ++k) {
      design(i, k) = power;
      power *= u;
    }
    target(i) = values[static_cast<std::size_t>(i)];
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  qr.setThreshold(1e-12);
  if (qr.rank() < degree + 1)
    throw Error(ErrorCode::SingularFit, "trend design matrix is rank deficient");
  const Eigen::VectorXd b = qr.solve(target);

  TrendModel model;
  model.degree = degree;
  model.origin_index = 0;
  // b0 + b1 (t - c) + b2 (t - c)^2 expanded in powers of t.
  if (degree == 1) {
    model.coefficients = {b(0) - b(1) * centre, b(1)};
  } else {
    model.coefficients = {b(0) - b(1) * centre + b(2) * centre * centre,
                          b(1) - 2.0 * b(2) * centre, b(2)};
  }
  for (double c : model.coefficients) {
    if (!std::isfinite(c)) throw Error(ErrorCode::SingularFit, "non-finite coefficient");
  }
  return model;
}

TimeSeries detrend(const TimeSeries& series, const TrendModel& trend) {
  std::vector<double> out(series.size());
  const auto values = series.values();
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = values[i] - trend.value_at(static_cast<double>(i));
  return series.with_values(std::move(out));
}

}  // namespace retex
