#include <gtest/gtest.h>

#include <cmath>
#include <json.hpp>
#include <random>

#include "retex/autoreg.hpp"
#include "retex/error.hpp"
#include "retex/stats.hpp"
#include "test_util.hpp"

using namespace retex;
using retex::testing::daily;

namespace {

// Noiseless AR recursion written out independently of simulate().
std::vector<double> generate(double c, const std::vector<double>& rho,
                             std::vector<double> values, std::size_t n) {
  while (values.size() < n) {
    double next = c;
    for (std::size_t j = 0; j < rho.size(); ++j) next += rho[j] * values[values.size() - 1 - j];
    values.push_back(next);
  }
  return values;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected retex::Error";
  return ErrorCode::IoError;
}

}  // namespace

TEST(FitAr, RecoversNoiselessAr1) {
  const auto x = generate(1.0, {0.7}, {0.0}, 50);
  const auto m = fit_ar(x, 1);
  EXPECT_NEAR(m.c, 1.0, 1e-8);
  EXPECT_NEAR(m.rho[0], 0.7, 1e-8);
  EXPECT_NEAR(m.noise_std, 0.0, 1e-10);
}

TEST(FitAr, RecoversNoiselessAr2) {
  const auto x = generate(0.0, {0.5, 0.25}, {1.0, -1.0}, 100);
  const auto m = fit_ar(x, 2);
  EXPECT_NEAR(m.c, 0.0, 1e-8);
  EXPECT_NEAR(m.rho[0], 0.5, 1e-8);
  EXPECT_NEAR(m.rho[1], 0.25, 1e-8);
}

TEST(FitAr, Errors) {
  EXPECT_EQ(code_of([] { fit_ar(std::vector<double>(20, 5.0), 1); }), ErrorCode::DegenerateSeries);
  EXPECT_EQ(code_of([] { fit_ar(std::vector<double>{1, 2}, 1); }), ErrorCode::InsufficientData);
  EXPECT_EQ(code_of([] { fit_ar(std::vector<double>{1, 2, 4}, 2); }), ErrorCode::InsufficientData);
  EXPECT_EQ(code_of([] { fit_ar(std::vector<double>{1, 2, 4}, 0); }), ErrorCode::InvalidArgument);
}

TEST(FitAr, ConsistentOnNoisySimulations) {
  const std::vector<ARModel> models{
      {1.0, {0.7}, 0.01}, {0.2, {0.5, 0.25}, 0.01}, {-0.5, {-0.6}, 0.01}, {0.0, {0.3, -0.2, 0.1}, 0.01}};
  std::uint64_t seed = 1;
  for (const auto& truth : models) {
    ASSERT_TRUE(is_stationary(truth));
    const std::vector<double> init(truth.order(), 0.0);
    const auto s = simulate(truth, 10000, seed++, init);
    const auto m = fit_ar(s, truth.order());
    EXPECT_NEAR(m.c, truth.c, 0.05);
    for (std::size_t j = 0; j < truth.order(); ++j) EXPECT_NEAR(m.rho[j], truth.rho[j], 0.05);
    EXPECT_NEAR(m.noise_std, 0.01, 0.001);
  }
}

TEST(Forecast, Examples) {
  const ARModel half{0.0, {0.5}, 0.0};
  const std::vector<double> one{3.0, 1.0};
  const auto a = forecast(half, one, 3);
  EXPECT_EQ(a.predictions, (std::vector<double>{0.5, 0.25, 0.125}));
  EXPECT_TRUE(a.is_iterated);
  EXPECT_EQ(a.horizon, 3u);

  const ARModel shifted{1.0, {0.5}, 0.0};
  const std::vector<double> zero{0.0};
  EXPECT_EQ(forecast(shifted, zero, 3).predictions, (std::vector<double>{1.0, 1.5, 1.75}));

  const ARModel two{0.0, {0.5, 0.25}, 0.0};
  const std::vector<double> hist{7.0, 1.0, 2.0};
  const auto b = forecast(two, hist, 1);
  EXPECT_EQ(b.predictions, (std::vector<double>{1.25}));
  EXPECT_FALSE(b.is_iterated);
}

TEST(Forecast, Errors) {
  const ARModel two{0.0, {0.5, 0.25}, 0.0};
  const std::vector<double> shorty{1.0};
  EXPECT_EQ(code_of([&] { forecast(two, shorty, 1); }), ErrorCode::InsufficientHistory);
  EXPECT_EQ(code_of([&] { forecast(two, std::vector<double>{1, 2}, 0); }),
            ErrorCode::InvalidArgument);
}

TEST(Forecast, MultiStepEqualsChainedSingleSteps) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    ARModel m{u(rng), std::vector<double>(1 + trial % 4), 0.0};
    for (auto& r : m.rho) r = u(rng);
    std::vector<double> history(8);
    for (auto& h : history) h = u(rng);
    const auto whole = forecast(m, history, 12).predictions;
    auto chained = history;
    for (std::size_t k = 0; k < 12; ++k) {
      const double next = forecast(m, chained, 1).predictions[0];
      EXPECT_EQ(whole[k], next);
      chained.push_back(next);
    }
  }
}

TEST(Forecast, AffineInLastValue) {
  // Dyadic inputs keep every product and sum exact in binary64.
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> k(-64, 64);
  const auto dyadic = [&] { return k(rng) / 16.0; };
  for (int trial = 0; trial < 100; ++trial) {
    ARModel m{dyadic(), {dyadic(), dyadic()}, 0.0};
    std::vector<double> history{dyadic(), dyadic(), dyadic()};
    const double delta = dyadic();
    const double base = forecast(m, history, 1).predictions[0];
    history.back() += delta;
    EXPECT_EQ(forecast(m, history, 1).predictions[0] - base, m.rho[0] * delta);
  }
}

TEST(ImpulseResponse, Examples) {
  const ARModel half{0.0, {0.5}, 0.0};
  EXPECT_EQ(impulse_response(half, 0), 1.0);
  EXPECT_EQ(impulse_response(half, 1), 0.5);
  EXPECT_EQ(impulse_response(half, 2), 0.25);
  const ARModel two{3.0, {0.5, 0.25}, 1.0};
  EXPECT_EQ(impulse_response(two, 0), 1.0);
  EXPECT_EQ(impulse_response(two, 2), 0.5);
}

TEST(ImpulseResponse, Ar1IsPowerAndDecays) {
  for (double rho : {0.9, -0.7, 0.5, 0.1, -0.99}) {
    const ARModel m{0.0, {rho}, 0.0};
    double prev = 1.0;
    for (std::size_t k = 0; k <= 20; ++k) {
      EXPECT_NEAR(impulse_response(m, k), std::pow(rho, static_cast<double>(k)), 1e-15);
      if (k > 0) EXPECT_LT(std::abs(impulse_response(m, k)), std::abs(prev));
      prev = impulse_response(m, k);
    }
    const auto forced = static_cast<std::size_t>(std::ceil(std::log(1e-6) / std::log(std::abs(rho))));
    EXPECT_LT(std::abs(impulse_response(m, forced + 1)), 1e-6);
  }
}

TEST(ImpulseResponse, MatchesSimulatedShockResponse) {
  // Difference of two noiseless paths whose first value differs by one.
  const ARModel m{0.3, {0.4, 0.3, -0.2}, 0.0};
  const auto base = generate(m.c, m.rho, {0.0, 0.0, 0.0}, 30);
  const auto shocked = generate(m.c, m.rho, {0.0, 0.0, 1.0}, 30);
  for (std::size_t k = 0; k < 27; ++k)
    EXPECT_NEAR(shocked[2 + k] - base[2 + k], impulse_response(m, k), 1e-12);
}

TEST(Simulate, NoiselessRecursion) {
  const ARModel m{0.0, {0.5}, 0.0};
  const auto s = simulate(m, 4, 42, std::vector<double>{1.0});
  EXPECT_EQ(std::vector<double>(s.values().begin(), s.values().end()),
            (std::vector<double>{1.0, 0.5, 0.25, 0.125}));
  EXPECT_EQ(days_between(s.dates()[0], s.dates()[3]), 3);
}

TEST(Simulate, DeterministicPerSeed) {
  const ARModel m{0.1, {0.6, -0.2}, 0.3};
  const std::vector<double> init{0.0, 0.0};
  EXPECT_EQ(simulate(m, 500, 9, init), simulate(m, 500, 9, init));
  EXPECT_FALSE(simulate(m, 500, 9, init) == simulate(m, 500, 10, init));
}

TEST(Simulate, WhiteNoiseScale) {
  const ARModel m{0.0, {0.0}, 1.0};
  const auto s = simulate(m, 10000, 123, std::vector<double>{0.0});
  EXPECT_NEAR(threshold(s), 1.0, 0.05);
}

TEST(Simulate, Preconditions) {
  const ARModel m{0.0, {0.5, 0.1}, 0.0};
  EXPECT_THROW(simulate(m, 10, 1, std::vector<double>{1.0}), Error);
  EXPECT_THROW(simulate(m, 1, 1, std::vector<double>{1.0, 2.0}), Error);
  EXPECT_THROW(simulate(ARModel{0.0, {}, 0.0}, 10, 1, std::vector<double>{}), Error);
  EXPECT_THROW(simulate(ARModel{0.0, {0.5}, -1.0}, 10, 1, std::vector<double>{0.0}), Error);
}

TEST(ForecastWithTrend, LinearSeriesHasDegenerateResiduals) {
  EXPECT_EQ(code_of([] { forecast_with_trend(daily({1, 2, 3, 4, 5}), 1, 1, 2); }),
            ErrorCode::DegenerateSeries);
}

TEST(ForecastWithTrend, IsTrendExtrapolationPlusResidualForecast) {
  const std::size_t n = 1000;
  std::vector<double> x(n);
  double r = 1.0;
  for (std::size_t i = 0; i < n; ++i, r *= 0.5) x[i] = 2.0 + static_cast<double>(i) + r;
  const auto s = daily(x);
  const auto result = forecast_with_trend(s, 1, 1, 3);

  // Composition of the public pieces.
  const auto trend = fit_trend(s, 1);
  const auto residual = detrend(s, trend);
  const auto ar = forecast(fit_ar(residual, 1), residual.values(), 3).predictions;
  for (std::size_t k = 0; k < 3; ++k)
    EXPECT_NEAR(result.predictions[k], trend.value_at(static_cast<double>(n + k)) + ar[k], 1e-12);

  // Generator oracle: true line plus decayed residual. OLS absorbs part of the
  // geometric residual, so agreement is O(1/N), not exact.
  for (std::size_t k = 0; k < 3; ++k) {
    const double truth = 2.0 + static_cast<double>(n + k) + std::pow(0.5, static_cast<double>(n + k));
    EXPECT_NEAR(result.predictions[k], truth, 1e-2);
  }
}

TEST(ForecastWithTrend, MatchesPlainForecastOnTrendlessAr1) {
  const ARModel truth{0.0, {0.5}, 0.1};
  const auto s = simulate(truth, 5000, 77, std::vector<double>{0.0});
  const auto combined = forecast_with_trend(s, 1, 1, 5).predictions;
  const auto plain = forecast(fit_ar(s, 1), s.values(), 5).predictions;
  for (std::size_t k = 0; k < 5; ++k) EXPECT_NEAR(combined[k], plain[k], 0.01);
}

TEST(ArModel, StationarityFlag) {
  EXPECT_TRUE(is_stationary({0.0, {0.5}, 0.0}));
  EXPECT_FALSE(is_stationary({0.0, {1.0}, 0.0}));
  EXPECT_FALSE(is_stationary({0.0, {1.2}, 0.0}));
  EXPECT_TRUE(is_stationary({0.0, {0.5, 0.25}, 0.0}));
  EXPECT_FALSE(is_stationary({0.0, {0.5, 0.6}, 0.0}));
  // Non-stationary models still simulate and respond.
  const ARModel explosive{0.0, {1.1}, 0.0};
  EXPECT_NEAR(impulse_response(explosive, 3), 1.331, 1e-12);
  EXPECT_NO_THROW(simulate(explosive, 20, 1, std::vector<double>{1.0}));
}

TEST(ArModel, JsonRoundTripAndSchema) {
  const ARModel m{0.1, {0.5, -0.25, 1.0 / 3.0}, 0.02};
  const std::string text = to_json(m);
  const auto j = nlohmann::json::parse(text);
  EXPECT_EQ(j.at("p").get<int>(), 3);
  EXPECT_EQ(j.at("rho").size(), 3u);
  EXPECT_TRUE(j.contains("c"));
  EXPECT_TRUE(j.contains("noise_std"));
  const auto back = ar_model_from_json(text);
  EXPECT_EQ(back.c, m.c);
  EXPECT_EQ(back.rho, m.rho);
  EXPECT_EQ(back.noise_std, m.noise_std);
}

TEST(ArModel, JsonErrors) {
  EXPECT_EQ(code_of([] { ar_model_from_json("{"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { ar_model_from_json(R"({"c":0,"rho":[0.5],"p":2})"); }),
            ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { ar_model_from_json(R"({"c":0,"rho":[]})"); }),
            ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { ar_model_from_json(R"({"c":0,"rho":[0.5],"noise_std":-1})"); }),
            ErrorCode::InvalidArgument);
}
