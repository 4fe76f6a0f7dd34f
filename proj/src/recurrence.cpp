#include "retex/recurrence.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>

#include "retex/error.hpp"

namespace retex {

StateSequence::StateSequence(std::size_t dimension, std::vector<double> coords)
    : dimension_(dimension), count_(0), coords_(std::move(coords)) {
  if (dimension_ == 0 || coords_.size() % dimension_ != 0)
    throw Error(ErrorCode::InvalidArgument, "state coordinates do not match dimension");
  count_ = coords_.size() / dimension_;
}

StateSequence embed(std::span<const double> values, const EmbeddingConfig& config) {
  if (config.dimension < 1 || config.delay < 1)
    throw Error(ErrorCode::InvalidArgument, "embedding dimension and delay must be >= 1");
  const std::size_t span = embedding_offset(config);
  if (values.size() <= span)
    throw Error(ErrorCode::SeriesTooShort,
                std::to_string(values.size()) + " observations cannot fill a " +
                    std::to_string(config.dimension) + "-dimensional embedding with delay " +
                    std::to_string(config.delay));
  const std::size_t count = values.size() - span;
  std::vector<double> coords;
  coords.reserve(count * config.dimension);
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t k = 0; k < config.dimension; ++k) coords.push_back(values[i + k * config.delay]);
  return StateSequence(config.dimension, std::move(coords));
}

DistanceMatrix::DistanceMatrix(std::size_t size) : size_(size), data_(size * size, 0.0) {}

double DistanceMatrix::max() const {
  return data_.empty() ? 0.0 : *std::max_element(data_.begin(), data_.end());
}

DistanceMatrix distance_matrix(const StateSequence& states) {
  const std::size_t m = states.size();
  DistanceMatrix dm(m);
  const std::size_t dim = states.dimension();
  for (std::size_t i = 0; i < m; ++i) {
    const auto a = states.state(i);
    for (std::size_t j = i + 1; j < m; ++j) {
      const auto b = states.state(j);
      double d;
      if (dim == 1) {
        d = std::abs(a[0] - b[0]);
      } else {
        double ss = 0.0;
        for (std::size_t k = 0; k < dim; ++k) ss += (a[k] - b[k]) * (a[k] - b[k]);
        d = std::sqrt(ss);
      }
      dm.data_[i * m + j] = d;
      dm.data_[j * m + i] = d;
    }
  }
  return dm;
}

std::string to_csv(const DistanceMatrix& dm) {
  std::string out;
  char buf[32];
  for (std::size_t i = 0; i < dm.size(); ++i) {
    for (std::size_t j = 0; j < dm.size(); ++j) {
      if (j) out += ',';
      std::snprintf(buf, sizeof buf, "%.17g", dm(i, j));
      out += buf;
    }
    out += '\n';
  }
  return out;
}

RecurrenceMatrix::RecurrenceMatrix(std::size_t size, double threshold_used)
    : size_(size), stride_((size + 63) / 64), threshold_(threshold_used),
      bits_(size * stride_, 0) {}

void RecurrenceMatrix::set(std::size_t i, std::size_t j, bool value) {
  auto& word = bits_[i * stride_ + j / 64];
  const std::uint64_t mask = std::uint64_t{1} << (j % 64);
  word = value ? (word | mask) : (word & ~mask);
}

std::size_t RecurrenceMatrix::count() const {
  std::size_t n = 0;
  for (auto w : bits_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

RecurrenceMatrix binary_rp(const DistanceMatrix& distances, double threshold) {
  if (std::isnan(threshold)) throw Error(ErrorCode::InvalidArgument, "threshold is NaN");
  if (threshold < 0.0)
    throw Error(ErrorCode::NegativeThreshold, "threshold must be >= 0");
  const std::size_t m = distances.size();
  RecurrenceMatrix rp(m, threshold);
  for (std::size_t i = 0; i < m; ++i) {
    const auto row = distances.row(i);
    for (std::size_t j = 0; j < m; ++j)
      if (row[j] <= threshold) rp.set(i, j, true);
  }
  return rp;
}

RecurrenceMatrix binary_rp_local(const DistanceMatrix& distances,
                                 std::span<const double> thresholds) {
  const std::size_t m = distances.size();
  if (thresholds.size() != m)
    throw Error(ErrorCode::SizeMismatch, "one threshold per matrix row required");
  double sum = 0.0;
  for (double t : thresholds) {
    if (std::isnan(t)) throw Error(ErrorCode::InvalidArgument, "threshold is NaN");
    if (t < 0.0) throw Error(ErrorCode::NegativeThreshold, "threshold must be >= 0");
    sum += t;
  }
  RecurrenceMatrix rp(m, m ? sum / static_cast<double>(m) : 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    const auto row = distances.row(i);
    for (std::size_t j = 0; j < m; ++j)
      if (row[j] <= std::min(thresholds[i], thresholds[j])) rp.set(i, j, true);
  }
  return rp;
}

std::string to_text_grid(const RecurrenceMatrix& rp) {
  const std::size_t m = rp.size();
  std::string out;
  out.reserve(m * (m + 1));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) out += rp(i, j) ? '1' : '0';
    out += '\n';
  }
  return out;
}

double recurrence_rate(const RecurrenceMatrix& rp) {
  if (rp.size() == 0) throw Error(ErrorCode::InvalidArgument, "empty recurrence matrix");
  const double cells = static_cast<double>(rp.size()) * static_cast<double>(rp.size());
  return static_cast<double>(rp.count()) / cells;
}

OverlayMatrix overlay(const RecurrenceMatrix& a, const RecurrenceMatrix& b) {
  if (a.size() != b.size())
    throw Error(ErrorCode::SizeMismatch, "overlay of " + std::to_string(a.size()) + "x" +
                                             std::to_string(a.size()) + " and " +
                                             std::to_string(b.size()) + "x" +
                                             std::to_string(b.size()) + " matrices");
  const std::size_t m = a.size();
  OverlayMatrix out(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const unsigned code = (a(i, j) ? 1u : 0u) | (b(i, j) ? 2u : 0u);
      out.set(i, j, static_cast<OverlayCell>(code));
    }
  }
  return out;
}

}  // namespace retex
