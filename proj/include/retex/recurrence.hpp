#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "retex/series.hpp"

namespace retex {

struct EmbeddingConfig {
  std::size_t dimension = 1;
  std::size_t delay = 1;
};

// Delay-embedded states stored row-major: state i is
// (x_i, x_{i+delay}, ..., x_{i+(dimension-1)*delay}).
class StateSequence {
 public:
  StateSequence(std::size_t dimension, std::vector<double> coords);

  std::size_t size() const noexcept { return count_; }
  std::size_t dimension() const noexcept { return dimension_; }
  std::span<const double> state(std::size_t i) const {
    return std::span<const double>(coords_).subspan(i * dimension_, dimension_);
  }

 private:
  std::size_t dimension_;
  std::size_t count_;
  std::vector<double> coords_;
};

// Index of the observation that completes state 0; state i aligns with
// observation i + embedding_offset(config).
inline std::size_t embedding_offset(const EmbeddingConfig& config) {
  return (config.dimension - 1) * config.delay;
}

// Throws SeriesTooShort when N - (m-1)*tau < 1.
StateSequence embed(std::span<const double> values, const EmbeddingConfig& config);

// Dense, symmetric, zero-diagonal Euclidean distances.
class DistanceMatrix {
 public:
  explicit DistanceMatrix(std::size_t size);

  std::size_t size() const noexcept { return size_; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * size_ + j]; }
  double max() const;
  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(data_).subspan(i * size_, size_);
  }

 private:
  friend DistanceMatrix distance_matrix(const StateSequence& states);
  std::size_t size_;
  std::vector<double> data_;
};

DistanceMatrix distance_matrix(const StateSequence& states);

// Comma-separated rows, 17 significant digits.
std::string to_csv(const DistanceMatrix& dm);

// Bit-packed square binary matrix.
class RecurrenceMatrix {
 public:
  RecurrenceMatrix(std::size_t size, double threshold_used);

  std::size_t size() const noexcept { return size_; }
  double threshold_used() const noexcept { return threshold_; }
  bool operator()(std::size_t i, std::size_t j) const {
    return (bits_[i * stride_ + j / 64] >> (j % 64)) & 1u;
  }
  void set(std::size_t i, std::size_t j, bool value);
  std::size_t count() const;

  friend bool operator==(const RecurrenceMatrix& a, const RecurrenceMatrix& b) {
    return a.size_ == b.size_ && a.bits_ == b.bits_;
  }

 private:
  std::size_t size_;
  std::size_t stride_;
  double threshold_;
  std::vector<std::uint64_t> bits_;
};

// Cell (i,j) recurs iff distance <= threshold. Throws NegativeThreshold.
RecurrenceMatrix binary_rp(const DistanceMatrix& distances, double threshold);

// Cell (i,j) recurs iff distance <= min(thresholds[i], thresholds[j]).
// threshold_used is recorded as the mean of `thresholds`.
RecurrenceMatrix binary_rp_local(const DistanceMatrix& distances,
                                 std::span<const double> thresholds);

// Rows of '0'/'1' characters, row 0 first.
std::string to_text_grid(const RecurrenceMatrix& rp);

double recurrence_rate(const RecurrenceMatrix& rp);

enum class OverlayCell : std::uint8_t { neither = 0, only_a = 1, only_b = 2, both = 3 };

class OverlayMatrix {
 public:
  explicit OverlayMatrix(std::size_t size)
      : size_(size), cells_(size * size, OverlayCell::neither) {}

  std::size_t size() const noexcept { return size_; }
  OverlayCell operator()(std::size_t i, std::size_t j) const { return cells_[i * size_ + j]; }
  void set(std::size_t i, std::size_t j, OverlayCell c) { cells_[i * size_ + j] = c; }

 private:
  std::size_t size_;
  std::vector<OverlayCell> cells_;
};

// Throws SizeMismatch when the matrices differ in size.
OverlayMatrix overlay(const RecurrenceMatrix& a, const RecurrenceMatrix& b);

}  // namespace retex
