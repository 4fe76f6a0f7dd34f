#pragma once

#include <span>
#include <string>
#include <vector>

#include "retex/date.hpp"
#include "retex/recurrence.hpp"

namespace retex {

struct TextureProfile {
  std::size_t window = 0;
  std::vector<double> densities;
};

// densities[j] = mean of rp over rows [max(0, j-w+1) .. j] x all columns.
// Throws WindowTooLarge unless 1 <= window <= M.
TextureProfile column_density(const RecurrenceMatrix& rp, std::size_t window);

struct TransitionParams {
  std::size_t window = 30;
  double score_threshold = 0.5;
  std::size_t min_separation = 30;
};

struct Transition {
  std::size_t index = 0;
  Date date;
  double score = 0.0;
};

struct TransitionReport {
  std::vector<Transition> transitions;  // score descending, ties by lower index
  TransitionParams params;
};

// Block dissimilarity at each candidate j in [w, M-w); scores[k] is s(w + k):
//   s(j) = mean(before x before) + mean(after x after) - 2 mean(before x after)
// with before = [j-w, j) and after = [j, j+w). Throws WindowTooLarge when
// 2w > M.
std::vector<double> transition_scores(const RecurrenceMatrix& rp, std::size_t window);

// Local maxima of s above score_threshold, chosen greedily by score with
// min_separation suppression. `dates[i]` labels matrix row i and must have
// rp.size() entries.
TransitionReport detect_transitions(const RecurrenceMatrix& rp,
                                    std::span<const Date> dates,
                                    const TransitionParams& params);

std::string to_json(const TransitionReport& report);
std::string to_table(const TransitionReport& report);

}  // namespace retex
