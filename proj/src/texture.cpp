#include "retex/texture.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <json.hpp>

#include "retex/error.hpp"

namespace retex {

namespace {

// Summed-area table over the recurrence bits.
class BlockSums {
 public:
  explicit BlockSums(const RecurrenceMatrix& rp)
      : n_(rp.size()), table_((n_ + 1) * (n_ + 1), 0) {
    for (std::size_t i = 0; i < n_; ++i) {
      std::uint64_t row_sum = 0;
      for (std::size_t j = 0; j < n_; ++j) {
        row_sum += rp(i, j) ? 1u : 0u;
        at(i + 1, j + 1) = at(i, j + 1) + row_sum;
      }
    }
  }

  // Ones in rows [r0, r1) x columns [c0, c1).
  std::uint64_t sum(std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) const {
    return at(r1, c1) + at(r0, c0) - at(r0, c1) - at(r1, c0);
  }

 private:
  std::uint64_t& at(std::size_t i, std::size_t j) { return table_[i * (n_ + 1) + j]; }
  std::uint64_t at(std::size_t i, std::size_t j) const { return table_[i * (n_ + 1) + j]; }

  std::size_t n_;
  std::vector<std::uint64_t> table_;
};

}  // namespace

TextureProfile column_density(const RecurrenceMatrix& rp, std::size_t window) {
  const std::size_t m = rp.size();
  if (window < 1 || window > m)
    throw Error(ErrorCode::WindowTooLarge,
                "window " + std::to_string(window) + " outside [1, " + std::to_string(m) + "]");
  std::vector<std::size_t> row_counts(m, 0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) row_counts[i] += rp(i, j) ? 1u : 0u;

  TextureProfile profile;
  profile.window = window;
  profile.densities.resize(m);
  std::size_t running = 0;
  for (std::size_t j = 0; j < m; ++j) {
    running += row_counts[j];
    if (j >= window) running -= row_counts[j - window];
    const std::size_t rows = std::min(j + 1, window);
    profile.densities[j] =
        static_cast<double>(running) / (static_cast<double>(rows) * static_cast<double>(m));
  }
  return profile;
}

std::vector<double> transition_scores(const RecurrenceMatrix& rp, std::size_t window) {
  const std::size_t m = rp.size();
  if (window < 1 || 2 * window > m)
    throw Error(ErrorCode::WindowTooLarge, "need 1 <= 2*window <= " + std::to_string(m) +
                                               ", got window " + std::to_string(window));
  const BlockSums sums(rp);
  const double area = static_cast<double>(window) * static_cast<double>(window);
  std::vector<double> scores;
  scores.reserve(m - 2 * window);
  for (std::size_t j = window; j + window < m; ++j) {
    const auto before = static_cast<double>(sums.sum(j - window, j, j - window, j));
    const auto after = static_cast<double>(sums.sum(j, j + window, j, j + window));
    const auto cross = static_cast<double>(sums.sum(j - window, j, j, j + window));
    scores.push_back((before + after - 2.0 * cross) / area);
  }
  return scores;
}

TransitionReport detect_transitions(const RecurrenceMatrix& rp,
                                    std::span<const Date> dates,
                                    const TransitionParams& params) {
  if (!(params.score_threshold >= 0.0))
    throw Error(ErrorCode::InvalidArgument, "score_threshold must be >= 0");
  if (params.min_separation < 1)
    throw Error(ErrorCode::InvalidArgument, "min_separation must be >= 1");
  if (dates.size() != rp.size())
    throw Error(ErrorCode::SizeMismatch, "one date per matrix row required");
  const std::vector<double> scores = transition_scores(rp, params.window);
  const std::size_t w = params.window;

  struct Candidate {
    std::size_t index;
    double score;
  };
  std::vector<Candidate> peaks;
  for (std::size_t k = 0; k < scores.size(); ++k) {
    const double s = scores[k];
    if (!(s > params.score_threshold)) continue;
    const bool left_ok = k == 0 || s >= scores[k - 1];
    const bool right_ok = k + 1 == scores.size() || s >= scores[k + 1];
    if (left_ok && right_ok) peaks.push_back({k + w, s});
  }
  std::sort(peaks.begin(), peaks.end(), [](const Candidate& a, const Candidate& b) {
    return a.score != b.score ? a.score > b.score : a.index < b.index;
  });

  TransitionReport report;
  report.params = params;
  for (const auto& c : peaks) {
    const bool clear = std::none_of(
        report.transitions.begin(), report.transitions.end(), [&](const Transition& t) {
          const std::size_t gap = t.index > c.index ? t.index - c.index : c.index - t.index;
          return gap < params.min_separation;
        });
    if (clear) report.transitions.push_back({c.index, dates[c.index], c.score});
  }
  return report;
}

std::string to_json(const TransitionReport& report) {
  nlohmann::ordered_json j;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& t : report.transitions) {
    nlohmann::ordered_json row;
    row["index"] = t.index;
    row["date"] = format_iso(t.date);
    row["score"] = t.score;
    rows.push_back(std::move(row));
  }
  j["transitions"] = std::move(rows);
  j["params"] = {{"window", report.params.window},
                 {"min_separation", report.params.min_separation},
                 {"score_threshold", report.params.score_threshold}};
  return j.dump(2);
}

std::string to_table(const TransitionReport& report) {
  std::string out;
  char buf[96];
  std::snprintf(buf, sizeof buf, "%-6s %-8s %-12s %s\n", "rank", "index", "date", "score");
  out += buf;
  std::size_t rank = 1;
  for (const auto& t : report.transitions) {
    std::snprintf(buf, sizeof buf, "%-6zu %-8zu %-12s %.6f\n", rank++, t.index,
                  format_iso(t.date).c_str(), t.score);
    out += buf;
  }
  if (report.transitions.empty()) out += "(no transitions above threshold)\n";
  return out;
}

}  // namespace retex
