#include <gtest/gtest.h>

#include <json.hpp>
#include <random>

#include "retex/autoreg.hpp"
#include "retex/error.hpp"
#include "retex/stats.hpp"
#include "retex/texture.hpp"
#include "test_util.hpp"

using namespace retex;
using retex::testing::daily;

namespace {

RecurrenceMatrix filled(std::size_t m, bool value) {
  RecurrenceMatrix rp(m, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) rp.set(i, j, value);
  return rp;
}

// Ones inside [0, split) x [0, split) and [split, m) x [split, m).
RecurrenceMatrix two_blocks(std::size_t m, std::size_t split) {
  RecurrenceMatrix rp(m, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) rp.set(i, j, (i < split) == (j < split));
  return rp;
}

RecurrenceMatrix rp_of(const TimeSeries& s) {
  return binary_rp(distance_matrix(embed(s.values(), {})), threshold(s));
}

std::vector<Date> dates_for(std::size_t m) {
  const auto s = daily(std::vector<double>(m, 0.0));
  return std::vector<Date>(s.dates().begin(), s.dates().end());
}

// Mean over a block, counted cell by cell.
double block_mean(const RecurrenceMatrix& rp, std::size_t r0, std::size_t r1, std::size_t c0,
                  std::size_t c1) {
  double ones = 0;
  for (std::size_t i = r0; i < r1; ++i)
    for (std::size_t j = c0; j < c1; ++j) ones += rp(i, j) ? 1 : 0;
  return ones / static_cast<double>((r1 - r0) * (c1 - c0));
}

}  // namespace

TEST(ColumnDensity, Examples) {
  for (std::size_t w : {1u, 3u, 10u}) {
    for (double d : column_density(filled(10, true), w).densities) EXPECT_EQ(d, 1.0);
  }
  RecurrenceMatrix identity(8, 0.0);
  for (std::size_t i = 0; i < 8; ++i) identity.set(i, i, true);
  for (double d : column_density(identity, 1).densities) EXPECT_EQ(d, 1.0 / 8.0);
  for (double d : column_density(two_blocks(10, 5), 1).densities) EXPECT_EQ(d, 0.5);
}

TEST(ColumnDensity, MatchesDirectCountAndRejectsBadWindow) {
  std::mt19937_64 rng(1);
  std::vector<double> x(30);
  for (auto& v : x) v = std::uniform_real_distribution<double>(0, 1)(rng);
  const auto rp = rp_of(daily(x));
  const auto profile = column_density(rp, 4);
  EXPECT_EQ(profile.window, 4u);
  for (std::size_t j = 0; j < 30; ++j) {
    const std::size_t lo = j >= 3 ? j - 3 : 0;
    EXPECT_NEAR(profile.densities[j], block_mean(rp, lo, j + 1, 0, 30), 1e-15);
  }
  try {
    column_density(rp, 31);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::WindowTooLarge);
  }
  EXPECT_THROW(column_density(rp, 0), Error);
}

TEST(TransitionScores, MatchBlockMeansAndBounds) {
  std::mt19937_64 rng(2);
  std::vector<double> x(60);
  for (auto& v : x) v = std::uniform_real_distribution<double>(0, 1)(rng);
  const auto rp = rp_of(daily(x));
  const std::size_t w = 7;
  const auto s = transition_scores(rp, w);
  ASSERT_EQ(s.size(), 60 - 2 * w);
  for (std::size_t k = 0; k < s.size(); ++k) {
    const std::size_t j = k + w;
    const double expected = block_mean(rp, j - w, j, j - w, j) + block_mean(rp, j, j + w, j, j + w) -
                            2 * block_mean(rp, j - w, j, j, j + w);
    EXPECT_NEAR(s[k], expected, 1e-12);
    EXPECT_GE(s[k], -2.0);
    EXPECT_LE(s[k], 2.0);
  }
}

TEST(TransitionScores, HomogeneousMatricesScoreZero) {
  for (bool v : {true, false})
    for (double s : transition_scores(filled(40, v), 5)) EXPECT_EQ(s, 0.0);
  const auto report = detect_transitions(filled(40, true), dates_for(40), {5, 0.5, 5});
  EXPECT_TRUE(report.transitions.empty());
}

TEST(TransitionScores, PerfectSplitIsGlobalMaximum) {
  const std::size_t m = 100, split = 37, w = 10;
  const auto s = transition_scores(two_blocks(m, split), w);
  EXPECT_EQ(s[split - w], 2.0);
  for (std::size_t k = 0; k < s.size(); ++k)
    if (k != split - w) EXPECT_LT(s[k], 2.0);
  const auto report = detect_transitions(two_blocks(m, split), dates_for(m), {w, 0.5, w});
  ASSERT_FALSE(report.transitions.empty());
  EXPECT_EQ(report.transitions[0].index, split);
  EXPECT_EQ(report.transitions[0].score, 2.0);
  EXPECT_EQ(report.transitions[0].date, dates_for(m)[split]);
}

TEST(DetectTransitions, IidNoiseHasNoTransition) {
  const ARModel white{0.0, {0.0}, 1.0};
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto s = simulate(white, 1000, seed, std::vector<double>{0.0});
    const auto scores = transition_scores(rp_of(s), 50);
    EXPECT_LT(*std::max_element(scores.begin(), scores.end()), 0.5) << "seed " << seed;
    EXPECT_TRUE(detect_transitions(rp_of(s), s.dates(), {50, 0.5, 50}).transitions.empty());
  }
}

TEST(DetectTransitions, FindsLevelShift) {
  const ARModel low{0.1, {0.9}, 0.05};   // mean 1.0
  const ARModel high{0.2, {0.9}, 0.05};  // mean 2.0
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto a = simulate(low, 500, 2 * seed, std::vector<double>{1.0});
    const auto b = simulate(high, 501, 2 * seed + 1, std::vector<double>{a.values().back()});
    std::vector<double> x(a.values().begin(), a.values().end());
    x.insert(x.end(), b.values().begin() + 1, b.values().end());
    const auto s = daily(x);
    const auto report = detect_transitions(rp_of(s), s.dates(), {30, 0.5, 30});
    ASSERT_FALSE(report.transitions.empty());
    EXPECT_NEAR(static_cast<double>(report.transitions[0].index), 500.0, 30.0);
  }
}

TEST(DetectTransitions, SeparationOrderingAndDeterminism) {
  // Several level shifts produce several well-separated peaks.
  std::vector<double> x;
  std::mt19937_64 rng(3);
  std::normal_distribution<double> noise(0, 0.05);
  for (double level : {1.0, 3.0, 1.5, 4.0, 2.0})
    for (int i = 0; i < 120; ++i) x.push_back(level + noise(rng));
  const auto s = daily(x);
  const auto rp = rp_of(s);
  for (std::size_t sep : {1u, 20u, 90u, 200u}) {
    const TransitionParams params{20, 0.2, sep};
    const auto report = detect_transitions(rp, s.dates(), params);
    const auto again = detect_transitions(rp, s.dates(), params);
    ASSERT_EQ(report.transitions.size(), again.transitions.size());
    for (std::size_t a = 0; a < report.transitions.size(); ++a) {
      EXPECT_EQ(report.transitions[a].index, again.transitions[a].index);
      EXPECT_EQ(report.transitions[a].score, again.transitions[a].score);
      EXPECT_GE(report.transitions[a].index, 20u);
      EXPECT_LT(report.transitions[a].index, x.size() - 20);
      if (a > 0) EXPECT_GE(report.transitions[a - 1].score, report.transitions[a].score);
      for (std::size_t b = 0; b < a; ++b) {
        const auto ia = report.transitions[a].index, ib = report.transitions[b].index;
        EXPECT_GE(ia > ib ? ia - ib : ib - ia, sep);
      }
    }
    if (sep == 20u) EXPECT_EQ(report.transitions.size(), 4u);
  }
}

TEST(DetectTransitions, Errors) {
  const auto rp = filled(10, true);
  const auto dates = dates_for(10);
  try {
    detect_transitions(rp, dates, {6, 0.5, 6});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::WindowTooLarge);
  }
  EXPECT_THROW(detect_transitions(rp, dates, {2, -1.0, 2}), Error);
  EXPECT_THROW(detect_transitions(rp, dates, {2, 0.5, 0}), Error);
  EXPECT_THROW(detect_transitions(rp, dates_for(9), {2, 0.5, 2}), Error);
}

TEST(TransitionReport, JsonAndTable) {
  const auto report = detect_transitions(two_blocks(40, 20), dates_for(40), {5, 0.5, 5});
  const auto j = nlohmann::json::parse(to_json(report));
  ASSERT_EQ(j.at("transitions").size(), 1u);
  EXPECT_EQ(j["transitions"][0]["index"], 20);
  EXPECT_EQ(j["transitions"][0]["date"], "2010-07-21");
  EXPECT_EQ(j["transitions"][0]["score"], 2.0);
  EXPECT_EQ(j["params"]["window"], 5);
  EXPECT_EQ(j["params"]["min_separation"], 5);
  EXPECT_EQ(j["params"]["score_threshold"], 0.5);
  EXPECT_NE(to_table(report).find("2010-07-21"), std::string::npos);
}
