#include "retex/autoreg.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <json.hpp>
#include <random>

#include "retex/error.hpp"
#include "retex/stats.hpp"

namespace retex {

void validate(const ARModel& model) {
  if (model.rho.empty()) throw Error(ErrorCode::InvalidArgument, "AR order must be >= 1");
  if (!std::isfinite(model.c) || !std::isfinite(model.noise_std))
    throw Error(ErrorCode::InvalidArgument, "AR parameters must be finite");
  for (double r : model.rho)
    if (!std::isfinite(r)) throw Error(ErrorCode::InvalidArgument, "AR parameters must be finite");
  if (model.noise_std < 0.0)
    throw Error(ErrorCode::InvalidArgument, "noise_std must be nonnegative");
}

bool is_stationary(const ARModel& model) {
  const auto p = static_cast<Eigen::Index>(model.order());
  if (p == 0) return true;
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(p, p);
  for (Eigen::Index j = 0; j < p; ++j) companion(0, j) = model.rho[static_cast<std::size_t>(j)];
  for (Eigen::Index j = 1; j < p; ++j) companion(j, j - 1) = 1.0;
  const Eigen::VectorXcd roots = companion.eigenvalues();
  return roots.cwiseAbs().maxCoeff() < 1.0;
}

ARModel fit_ar(std::span<const double> values, std::size_t p) {
  if (p < 1) throw Error(ErrorCode::InvalidArgument, "AR order must be >= 1");
  const std::size_t n = values.size();
  if (n < p + 2)
    throw Error(ErrorCode::InsufficientData, "AR(" + std::to_string(p) + ") needs at least " +
                                                 std::to_string(p + 2) + " observations");
  const auto rows = static_cast<Eigen::Index>(n - p);
  const auto cols = static_cast<Eigen::Index>(p + 1);
  Eigen::MatrixXd design(rows, cols);
  Eigen::VectorXd target(rows);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto i = p + static_cast<std::size_t>(r);
    design(r, 0) = 1.0;
    for (std::size_t j = 1; j <= p; ++j) design(r, static_cast<Eigen::Index>(j)) = values[i - j];
    target(r) = values[i];
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  qr.setThreshold(1e-10);
  if (qr.rank() < cols)
    throw Error(ErrorCode::DegenerateSeries, "lagged regressors are collinear");
  const Eigen::VectorXd b = qr.solve(target);
  const Eigen::VectorXd residual = target - design * b;

  ARModel model;
  model.c = b(0);
  model.rho.assign(b.data() + 1, b.data() + cols);
  model.noise_std = std::sqrt(residual.squaredNorm() / static_cast<double>(rows));
  try {
    validate(model);
  } catch (const Error&) {
    throw Error(ErrorCode::DegenerateSeries, "fit produced non-finite parameters");
  }
  return model;
}

ForecastResult forecast(const ARModel& model, std::span<const double> history,
                        std::size_t horizon) {
  validate(model);
  const std::size_t p = model.order();
  if (horizon < 1) throw Error(ErrorCode::InvalidArgument, "horizon must be >= 1");
  if (history.size() < p)
    throw Error(ErrorCode::InsufficientHistory,
                "need " + std::to_string(p) + " history values, got " +
                    std::to_string(history.size()));

  // Rolling window of the last p values, newest last.
  std::vector<double> window(history.end() - static_cast<std::ptrdiff_t>(p), history.end());
  window.reserve(p + horizon);
  ForecastResult result;
  result.horizon = horizon;
  result.is_iterated = horizon > 1;
  result.noise_std = model.noise_std;
  result.predictions.reserve(horizon);
  for (std::size_t step = 0; step < horizon; ++step) {
    double next = model.c;
    const std::size_t end = window.size();
    for (std::size_t j = 1; j <= p; ++j) next += model.rho[j - 1] * window[end - j];
    result.predictions.push_back(next);
    window.push_back(next);
  }
  return result;
}

double impulse_response(const ARModel& model, std::size_t k) {
  validate(model);
  const std::size_t p = model.order();
  std::vector<double> psi(k + 1, 0.0);
  psi[0] = 1.0;
  for (std::size_t i = 1; i <= k; ++i) {
    double acc = 0.0;
    for (std::size_t j = 1; j <= std::min(i, p); ++j) acc += model.rho[j - 1] * psi[i - j];
    psi[i] = acc;
  }
  return psi[k];
}

TimeSeries simulate(const ARModel& model, std::size_t n, std::uint64_t seed,
                    std::span<const double> initial, Date start) {
  validate(model);
  const std::size_t p = model.order();
  if (initial.size() != p)
    throw Error(ErrorCode::InvalidArgument,
                "simulate needs exactly " + std::to_string(p) + " initial values");
  if (n < p) throw Error(ErrorCode::InvalidArgument, "n must be >= model order");
  if (n == 0) throw Error(ErrorCode::EmptySeries, "n must be positive");

  std::mt19937_64 engine(seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::vector<double> values(initial.begin(), initial.end());
  values.reserve(n);
  while (values.size() < n) {
    const std::size_t i = values.size();
    double next = model.c;
    for (std::size_t j = 1; j <= p; ++j) next += model.rho[j - 1] * values[i - j];
    next += model.noise_std * noise(engine);
    values.push_back(next);
  }
  std::vector<Date> dates(n);
  for (std::size_t i = 0; i < n; ++i) dates[i] = add_days(start, static_cast<int>(i));
  return TimeSeries(std::move(dates), std::move(values), "simulated");
}

ForecastResult forecast_with_trend(const TimeSeries& series, int degree,
                                   std::size_t p, std::size_t horizon) {
  const TrendModel trend = fit_trend(series, degree);
  const TimeSeries residual = detrend(series, trend);
  const ARModel model = fit_ar(residual, p);
  ForecastResult result = forecast(model, residual.values(), horizon);
  const auto n = static_cast<double>(series.size());
  for (std::size_t k = 0; k < horizon; ++k)
    result.predictions[k] += trend.value_at(n + static_cast<double>(k));
  return result;
}

std::string to_json(const ARModel& model) {
  nlohmann::ordered_json j;
  j["c"] = model.c;
  j["rho"] = model.rho;
  j["p"] = model.order();
  j["noise_std"] = model.noise_std;
  return j.dump(2);
}

ARModel ar_model_from_json(std::string_view text) {
  ARModel model;
  try {
    const auto j = nlohmann::json::parse(text);
    model.c = j.at("c").get<double>();
    model.rho = j.at("rho").get<std::vector<double>>();
    model.noise_std = j.value("noise_std", 0.0);
    if (j.contains("p") && j.at("p").get<std::size_t>() != model.rho.size())
      throw Error(ErrorCode::ParseError, "p does not match length of rho");
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  validate(model);
  return model;
}

}  // namespace retex
