#pragma once

// Owning wrappers for the C API handles, plus a status check that throws.

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

#include "retex/retex.h"

namespace retex_cli {

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const noexcept { Free(p); }
};

template <typename T, void (*Free)(T*)>
using Handle = std::unique_ptr<T, Deleter<T, Free>>;

using Series = Handle<retex_series, retex_series_free>;
using Trend = Handle<retex_trend, retex_trend_free>;
using ArModel = Handle<retex_ar_model, retex_ar_model_free>;
using DistanceMatrix = Handle<retex_distance_matrix, retex_distance_matrix_free>;
using Recurrence = Handle<retex_recurrence, retex_rp_free>;
using Overlay = Handle<retex_overlay, retex_overlay_free>;
using Report = Handle<retex_report, retex_report_free>;
using Buffer = Handle<retex_buffer, retex_buffer_free>;

// Failure carrying the library's one-line diagnostic.
class ApiError : public std::runtime_error {
 public:
  explicit ApiError(const std::string& message) : std::runtime_error(message) {}
};

inline void check(retex_status status) {
  if (status != RETEX_OK) throw ApiError(retex_last_error());
}

// Usage errors raised by the CLI itself, formatted like library errors.
[[noreturn]] inline void fail(std::string_view name, const std::string& message) {
  throw ApiError(std::string(name) + ": " + message);
}

inline std::string to_string(const Buffer& buffer) {
  return {reinterpret_cast<const char*>(retex_buffer_data(buffer.get())),
          retex_buffer_size(buffer.get())};
}

// Wraps `fn(args..., &raw)` and returns the owned handle.
template <typename H, typename Fn, typename... Args>
H make(Fn fn, Args&&... args) {
  typename H::pointer raw = nullptr;
  check(fn(std::forward<Args>(args)..., &raw));
  return H(raw);
}

}  // namespace retex_cli
