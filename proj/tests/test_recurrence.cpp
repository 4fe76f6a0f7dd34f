#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "retex/error.hpp"
#include "retex/recurrence.hpp"
#include "retex/stats.hpp"
#include "test_util.hpp"

using namespace retex;
using retex::testing::uniform_values;

namespace {

RecurrenceMatrix pipeline(const std::vector<double>& x) {
  return binary_rp(distance_matrix(embed(x, {})), threshold(x));
}

// Direct double loop over Theta(T - |x_i - x_j|) with Theta(0) = 1.
std::vector<std::vector<int>> brute_force_rp(const std::vector<double>& x) {
  double sum = 0;
  for (double v : x) sum += v;
  const double m = sum / static_cast<double>(x.size());
  double ss = 0;
  for (double v : x) ss += (v - m) * (v - m);
  const double t = std::sqrt(ss / static_cast<double>(x.size()));
  std::vector<std::vector<int>> rp(x.size(), std::vector<int>(x.size()));
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) rp[i][j] = t - std::abs(x[i] - x[j]) >= 0 ? 1 : 0;
  return rp;
}

RecurrenceMatrix from_rows(const std::vector<std::vector<int>>& rows) {
  RecurrenceMatrix rp(rows.size(), 0.0);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows.size(); ++j) rp.set(i, j, rows[i][j] != 0);
  return rp;
}

}  // namespace

TEST(Embed, Examples) {
  const std::vector<double> x{1, 2, 3, 4};
  const auto identity = embed(x, {1, 1});
  ASSERT_EQ(identity.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(identity.state(i)[0], x[i]);

  const auto pairs = embed(x, {2, 1});
  ASSERT_EQ(pairs.size(), 3u);
  EXPECT_EQ(pairs.state(0)[0], 1.0);
  EXPECT_EQ(pairs.state(0)[1], 2.0);
  EXPECT_EQ(pairs.state(2)[1], 4.0);

  const auto single = embed(std::vector<double>{10, 11, 12, 13, 14}, {3, 2});
  ASSERT_EQ(single.size(), 1u);
  EXPECT_EQ(single.state(0)[0], 10.0);
  EXPECT_EQ(single.state(0)[1], 12.0);
  EXPECT_EQ(single.state(0)[2], 14.0);
}

TEST(Embed, TooShort) {
  try {
    embed(std::vector<double>{1, 2, 3, 4}, {3, 2});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SeriesTooShort);
  }
  EXPECT_THROW(embed(std::vector<double>{1, 2}, {0, 1}), Error);
}

TEST(DistanceMatrix, Examples) {
  const StateSequence pts(2, {0, 0, 3, 4});
  const auto dm = distance_matrix(pts);
  EXPECT_EQ(dm(0, 1), 5.0);
  EXPECT_EQ(dm(1, 0), 5.0);

  const auto scalar = distance_matrix(embed(std::vector<double>{1, 2, 4}, {}));
  const double expected[3][3] = {{0, 1, 3}, {1, 0, 2}, {3, 2, 0}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_EQ(scalar(i, j), expected[i][j]);
  EXPECT_EQ(scalar.max(), 3.0);
}

TEST(DistanceMatrix, MetricProperties) {
  std::mt19937_64 rng(8);
  const auto x = uniform_values(rng, 80);
  const auto dm = distance_matrix(embed(x, {3, 2}));
  const std::size_t m = dm.size();
  for (std::size_t i = 0; i < m; ++i) {
    EXPECT_EQ(dm(i, i), 0.0);
    for (std::size_t j = 0; j < m; ++j) {
      EXPECT_EQ(dm(i, j), dm(j, i));
      for (std::size_t k = 0; k < m; k += 7) EXPECT_LE(dm(i, j), dm(i, k) + dm(k, j) + 1e-12);
    }
  }
}

TEST(BinaryRp, Examples) {
  const std::vector<double> a{1, 2, 3};
  const auto rp = pipeline(a);
  EXPECT_EQ(rp.threshold_used(), threshold(a));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(rp(i, j), i == j);

  const std::vector<double> b{1, 2, 1};
  const auto rb = pipeline(b);
  EXPECT_NEAR(rb.threshold_used(), 0.4714, 1e-4);
  EXPECT_TRUE(rb(0, 2));
  EXPECT_FALSE(rb(0, 1));
  EXPECT_FALSE(rb(1, 2));

  const auto dm = distance_matrix(embed(a, {}));
  const auto full = binary_rp(dm, dm.max());
  EXPECT_EQ(full.count(), 9u);
}

TEST(BinaryRp, BoundaryAndErrors) {
  const auto dm = distance_matrix(embed(std::vector<double>{0, 1}, {}));
  EXPECT_TRUE(binary_rp(dm, 1.0)(0, 1));  // distance == threshold recurs
  EXPECT_FALSE(binary_rp(dm, std::nextafter(1.0, 0.0))(0, 1));
  try {
    binary_rp(dm, -0.1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NegativeThreshold);
  }
  // Constant series: T = 0 and every cell recurs.
  EXPECT_EQ(pipeline({4, 4, 4, 4}).count(), 16u);
}

TEST(BinaryRp, MatchesBruteForce) {
  std::mt19937_64 rng(31337);
  std::uniform_int_distribution<std::size_t> len(1, 64);
  for (int trial = 0; trial < 50; ++trial) {
    const auto x = uniform_values(rng, len(rng));
    EXPECT_EQ(pipeline(x), from_rows(brute_force_rp(x)));
  }
}

TEST(BinaryRp, StructuralInvariants) {
  std::mt19937_64 rng(4242);
  std::uniform_int_distribution<std::size_t> len(1, 64);
  std::uniform_real_distribution<double> shift(-50, 50), scale(0.01, 20);
  for (int trial = 0; trial < 50; ++trial) {
    const auto x = uniform_values(rng, len(rng));
    const auto rp = pipeline(x);
    const std::size_t m = rp.size();
    for (std::size_t i = 0; i < m; ++i) {
      EXPECT_TRUE(rp(i, i));
      for (std::size_t j = 0; j < m; ++j) EXPECT_EQ(rp(i, j), rp(j, i));
    }
    const auto dm = distance_matrix(embed(x, {}));
    const auto higher = binary_rp(dm, rp.threshold_used() * 1.5);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        if (rp(i, j)) EXPECT_TRUE(higher(i, j));
  }
}

TEST(BinaryRp, ShiftAndScaleInvariance) {
  // Dyadic values with power-of-two factors make shifted/scaled distances exact,
  // so the comparison with the threshold cannot flip through rounding.
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> k(-256, 256);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> x(8 + trial);
    for (auto& v : x) v = k(rng) / 64.0;
    const auto base = pipeline(x);
    auto shifted = x;
    for (auto& v : shifted) v += 3.0;
    auto scaled = x;
    for (auto& v : scaled) v *= 4.0;
    EXPECT_EQ(pipeline(shifted), base);
    EXPECT_EQ(pipeline(scaled), base);
  }
}

TEST(BinaryRp, Periodicity) {
  const std::size_t period = 20;
  std::vector<double> x(200);
  for (std::size_t i = 0; i < x.size(); ++i)
    x[i] = std::sin(2.0 * std::numbers::pi * static_cast<double>(i) / period);
  const auto rp = pipeline(x);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i % period; j < x.size(); j += period) EXPECT_TRUE(rp(i, j)) << i << "," << j;
}

TEST(BinaryRpLocal, UsesPairwiseMinimumThreshold) {
  const auto dm = distance_matrix(embed(std::vector<double>{0, 1, 3}, {}));
  const std::vector<double> t{1.0, 5.0, 0.5};
  const auto rp = binary_rp_local(dm, t);
  EXPECT_TRUE(rp(0, 1));   // 1 <= min(1, 5)
  EXPECT_FALSE(rp(1, 2));  // 2 > min(5, 0.5)
  EXPECT_FALSE(rp(0, 2));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(rp(i, j), rp(j, i));
  EXPECT_THROW(binary_rp_local(dm, std::vector<double>{1.0}), Error);
  EXPECT_THROW(binary_rp_local(dm, std::vector<double>{1.0, -1.0, 1.0}), Error);
}

TEST(RecurrenceRate, Examples) {
  RecurrenceMatrix ones(3, 1.0), identity(3, 1.0), pair(2, 1.0);
  for (std::size_t i = 0; i < 3; ++i) {
    identity.set(i, i, true);
    for (std::size_t j = 0; j < 3; ++j) ones.set(i, j, true);
  }
  pair.set(0, 0, true);
  pair.set(1, 1, true);
  pair.set(0, 1, true);
  pair.set(1, 0, true);
  EXPECT_EQ(recurrence_rate(ones), 1.0);
  EXPECT_DOUBLE_EQ(recurrence_rate(identity), 1.0 / 3.0);
  EXPECT_EQ(recurrence_rate(pair), 1.0);
}

TEST(TextGrid, RowZeroFirst) {
  RecurrenceMatrix rp(2, 0.0);
  rp.set(0, 0, true);
  rp.set(0, 1, true);
  EXPECT_EQ(to_text_grid(rp), "11\n00\n");
}

TEST(Overlay, Examples) {
  RecurrenceMatrix identity(3, 0.0), ones(3, 0.0);
  for (std::size_t i = 0; i < 3; ++i) {
    identity.set(i, i, true);
    for (std::size_t j = 0; j < 3; ++j) ones.set(i, j, true);
  }
  const auto self = overlay(identity, identity);
  const auto mixed = overlay(identity, ones);
  const auto swapped = overlay(ones, identity);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      EXPECT_EQ(self(i, j), i == j ? OverlayCell::both : OverlayCell::neither);
      EXPECT_EQ(mixed(i, j), i == j ? OverlayCell::both : OverlayCell::only_b);
      EXPECT_EQ(swapped(i, j), i == j ? OverlayCell::both : OverlayCell::only_a);
    }
  }
  try {
    overlay(identity, RecurrenceMatrix(2, 0.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SizeMismatch);
  }
}

TEST(Overlay, SwapExchangesOnlyCategories) {
  std::mt19937_64 rng(5);
  const auto a = pipeline(uniform_values(rng, 40));
  const auto b = pipeline(uniform_values(rng, 40));
  const auto ab = overlay(a, b);
  const auto ba = overlay(b, a);
  const auto swap = [](OverlayCell c) {
    return c == OverlayCell::only_a ? OverlayCell::only_b
           : c == OverlayCell::only_b ? OverlayCell::only_a
                                      : c;
  };
  for (std::size_t i = 0; i < 40; ++i)
    for (std::size_t j = 0; j < 40; ++j) EXPECT_EQ(ab(i, j), swap(ba(i, j)));
}

TEST(DistanceCsv, Format) {
  const auto dm = distance_matrix(embed(std::vector<double>{0, 0.5}, {}));
  EXPECT_EQ(to_csv(dm), "0,0.5\n0.5,0\n");
}
