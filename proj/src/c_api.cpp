#include "retex/retex.h"

#include <cstring>
#include <memory>
#include <new>
#include <string>
#include <utility>

#include "retex/autoreg.hpp"
#include "retex/error.hpp"
#include "retex/recurrence.hpp"
#include "retex/render.hpp"
#include "retex/series.hpp"
#include "retex/stats.hpp"
#include "retex/texture.hpp"

struct retex_series {
  retex::TimeSeries value;
};
struct retex_trend {
  retex::TrendModel value;
};
struct retex_ar_model {
  retex::ARModel value;
};
struct retex_distance_matrix {
  retex::DistanceMatrix value;
};
struct retex_recurrence {
  retex::RecurrenceMatrix value;
};
struct retex_overlay {
  retex::OverlayMatrix value;
};
struct retex_report {
  retex::TransitionReport value;
};
struct retex_buffer {
  std::string bytes;
};

namespace {

thread_local std::string last_error;

retex_status to_status(retex::ErrorCode code) {
  using retex::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument: return RETEX_ERR_INVALID_ARGUMENT;
    case ErrorCode::MalformedRow: return RETEX_ERR_MALFORMED_ROW;
    case ErrorCode::DuplicateDate: return RETEX_ERR_DUPLICATE_DATE;
    case ErrorCode::EmptySeries: return RETEX_ERR_EMPTY_SERIES;
    case ErrorCode::UnknownColumn: return RETEX_ERR_UNKNOWN_COLUMN;
    case ErrorCode::GapTooLarge: return RETEX_ERR_GAP_TOO_LARGE;
    case ErrorCode::GapFound: return RETEX_ERR_GAP_FOUND;
    case ErrorCode::SingularFit: return RETEX_ERR_SINGULAR_FIT;
    case ErrorCode::DegenerateSeries: return RETEX_ERR_DEGENERATE_SERIES;
    case ErrorCode::InsufficientData: return RETEX_ERR_INSUFFICIENT_DATA;
    case ErrorCode::InsufficientHistory: return RETEX_ERR_INSUFFICIENT_HISTORY;
    case ErrorCode::SeriesTooShort: return RETEX_ERR_SERIES_TOO_SHORT;
    case ErrorCode::NegativeThreshold: return RETEX_ERR_NEGATIVE_THRESHOLD;
    case ErrorCode::SizeMismatch: return RETEX_ERR_SIZE_MISMATCH;
    case ErrorCode::WindowTooLarge: return RETEX_ERR_WINDOW_TOO_LARGE;
    case ErrorCode::ImageTooLarge: return RETEX_ERR_IMAGE_TOO_LARGE;
    case ErrorCode::ParseError: return RETEX_ERR_PARSE;
    case ErrorCode::IoError: return RETEX_ERR_IO;
  }
  return RETEX_ERR_INTERNAL;
}

retex_status fail(retex_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <typename Body>
retex_status guarded(Body&& body) {
  try {
    body();
    return RETEX_OK;
  } catch (const retex::Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(RETEX_ERR_OUT_OF_MEMORY, "OutOfMemory: allocation failed");
  } catch (const std::exception& e) {
    return fail(RETEX_ERR_INTERNAL, std::string("Internal: ") + e.what());
  } catch (...) {
    return fail(RETEX_ERR_INTERNAL, "Internal: unknown exception");
  }
}

void require(bool condition, const char* what) {
  if (!condition) throw retex::Error(retex::ErrorCode::InvalidArgument, what);
}

retex::Date to_date(retex_date d) {
  const retex::Date date{std::chrono::year{d.year}, std::chrono::month{d.month},
                         std::chrono::day{d.day}};
  require(date.ok(), "invalid calendar date");
  return date;
}

retex_date from_date(retex::Date d) {
  return {static_cast<int32_t>(static_cast<int>(d.year())), static_cast<unsigned>(d.month()),
          static_cast<unsigned>(d.day())};
}

template <typename Handle, typename Value>
void emit(Handle** out, Value&& value) {
  *out = new Handle{std::forward<Value>(value)};
}

void emit_buffer(retex_buffer** out, std::string bytes) { *out = new retex_buffer{std::move(bytes)}; }

void emit_buffer(retex_buffer** out, const std::vector<std::uint8_t>& bytes) {
  *out = new retex_buffer{std::string(bytes.begin(), bytes.end())};
}

retex::RenderOptions to_options(const retex_render_options* o) {
  retex::RenderOptions options;
  if (!o) return options;
  const auto rgb = [](retex_rgb c) { return retex::Rgb{c.r, c.g, c.b}; };
  options.cell_pixels = o->cell_pixels;
  options.colormap = retex::named_colormap(o->colormap ? o->colormap : "default");
  options.color_a = rgb(o->color_a);
  options.color_b = rgb(o->color_b);
  options.color_both = rgb(o->color_both);
  options.background = rgb(o->background);
  options.ink = rgb(o->ink);
  options.max_pixels = o->max_pixels;
  return options;
}

}  // namespace

extern "C" {

const char* retex_version(void) { return "1.0.0"; }

const char* retex_status_name(retex_status status) {
  switch (status) {
    case RETEX_OK: return "Ok";
    case RETEX_ERR_OUT_OF_MEMORY: return "OutOfMemory";
    case RETEX_ERR_INTERNAL: return "Internal";
    default: break;
  }
  if (status < RETEX_OK || status > RETEX_ERR_INTERNAL) return "Unknown";
  // Codes 1..18 follow retex::ErrorCode order; the names are string literals.
  return retex::error_name(static_cast<retex::ErrorCode>(status - 1)).data();
}

const char* retex_last_error(void) { return last_error.c_str(); }

const uint8_t* retex_buffer_data(const retex_buffer* buffer) {
  return buffer ? reinterpret_cast<const uint8_t*>(buffer->bytes.data()) : nullptr;
}
size_t retex_buffer_size(const retex_buffer* buffer) { return buffer ? buffer->bytes.size() : 0; }
void retex_buffer_free(retex_buffer* buffer) { delete buffer; }

// ---- series ---------------------------------------------------------------

retex_status retex_series_parse_csv(const char* text, size_t length, const char* date_column,
                                    const char* value_column, const char* date_format,
                                    retex_series** out, size_t* bad_row) {
  if (bad_row) *bad_row = 0;
  try {
    require(out && (text || length == 0) && date_column && value_column, "null argument");
    emit(out, retex::parse_csv(std::string_view(text ? text : "", length), date_column,
                               value_column,
                               date_format ? std::string_view(date_format) : retex::kIsoDateFormat));
    return RETEX_OK;
  } catch (const retex::Error& e) {
    if (bad_row && e.row()) *bad_row = *e.row();
    return fail(to_status(e.code()), e.what());
  } catch (...) {
    return guarded([] { throw; });
  }
}

retex_status retex_series_create(const retex_date* dates, const double* values, size_t count,
                                 retex_series** out) {
  return guarded([&] {
    require(out && (count == 0 || (dates && values)), "null argument");
    std::vector<retex::Date> ds;
    ds.reserve(count);
    for (size_t i = 0; i < count; ++i) ds.push_back(to_date(dates[i]));
    emit(out, retex::TimeSeries(std::move(ds), std::vector<double>(values, values + count)));
  });
}

void retex_series_free(retex_series* series) { delete series; }
size_t retex_series_size(const retex_series* series) { return series ? series->value.size() : 0; }
const double* retex_series_values(const retex_series* series) {
  return series ? series->value.values().data() : nullptr;
}

retex_status retex_series_date(const retex_series* series, size_t index, retex_date* out) {
  return guarded([&] {
    require(series && out, "null argument");
    require(index < series->value.size(), "index out of range");
    *out = from_date(series->value.dates()[index]);
  });
}

retex_status retex_series_regularize(const retex_series* series, retex_gap_mode mode,
                                     int max_gap_days, retex_series** out) {
  return guarded([&] {
    require(series && out, "null argument");
    retex::GapPolicy policy;
    switch (mode) {
      case RETEX_GAP_FORWARD_FILL: policy.mode = retex::GapMode::forward_fill; break;
      case RETEX_GAP_DROP: policy.mode = retex::GapMode::drop; break;
      case RETEX_GAP_ERROR: policy.mode = retex::GapMode::error; break;
      default: require(false, "unknown gap mode");
    }
    policy.max_gap_days = max_gap_days;
    emit(out, retex::regularize(series->value, policy));
  });
}

retex_status retex_series_slice(const retex_series* series, retex_date start, retex_date end,
                                retex_series** out) {
  return guarded([&] {
    require(series && out, "null argument");
    emit(out, retex::slice_by_date(series->value, to_date(start), to_date(end)));
  });
}

retex_status retex_series_to_csv(const retex_series* series, retex_buffer** out) {
  return guarded([&] {
    require(series && out, "null argument");
    emit_buffer(out, retex::to_csv(series->value));
  });
}

// ---- statistics and trend -------------------------------------------------

retex_status retex_series_mean(const retex_series* series, double* out) {
  return guarded([&] {
    require(series && out, "null argument");
    *out = retex::mean(series->value);
  });
}

retex_status retex_series_threshold(const retex_series* series, double* out) {
  return guarded([&] {
    require(series && out, "null argument");
    *out = retex::threshold(series->value);
  });
}

retex_status retex_series_sliding_threshold(const retex_series* series, size_t window,
                                            double* out) {
  return guarded([&] {
    require(series && out, "null argument");
    const auto t = retex::sliding_threshold(series->value.values(), window);
    std::copy(t.begin(), t.end(), out);
  });
}

retex_status retex_trend_fit(const retex_series* series, int degree, retex_trend** out) {
  return guarded([&] {
    require(series && out, "null argument");
    emit(out, retex::fit_trend(series->value, degree));
  });
}

void retex_trend_free(retex_trend* trend) { delete trend; }
int retex_trend_degree(const retex_trend* trend) { return trend ? trend->value.degree : 0; }
const double* retex_trend_coefficients(const retex_trend* trend) {
  return trend ? trend->value.coefficients.data() : nullptr;
}
double retex_trend_value(const retex_trend* trend, double index) {
  return trend ? trend->value.value_at(index) : 0.0;
}

retex_status retex_detrend(const retex_series* series, const retex_trend* trend,
                           retex_series** out) {
  return guarded([&] {
    require(series && trend && out, "null argument");
    emit(out, retex::detrend(series->value, trend->value));
  });
}

// ---- autoregressive models ------------------------------------------------

retex_status retex_ar_model_create(double intercept, const double* rho, size_t order,
                                   double noise_std, retex_ar_model** out) {
  return guarded([&] {
    require(out && (order == 0 || rho), "null argument");
    retex::ARModel model{intercept, std::vector<double>(rho, rho + order), noise_std};
    retex::validate(model);
    emit(out, std::move(model));
  });
}

retex_status retex_ar_fit(const retex_series* series, size_t order, retex_ar_model** out) {
  return guarded([&] {
    require(series && out, "null argument");
    emit(out, retex::fit_ar(series->value, order));
  });
}

void retex_ar_model_free(retex_ar_model* model) { delete model; }
double retex_ar_model_intercept(const retex_ar_model* model) { return model ? model->value.c : 0.0; }
size_t retex_ar_model_order(const retex_ar_model* model) { return model ? model->value.order() : 0; }
const double* retex_ar_model_coefficients(const retex_ar_model* model) {
  return model ? model->value.rho.data() : nullptr;
}
double retex_ar_model_noise_std(const retex_ar_model* model) {
  return model ? model->value.noise_std : 0.0;
}
int retex_ar_model_is_stationary(const retex_ar_model* model) {
  return model && retex::is_stationary(model->value) ? 1 : 0;
}

retex_status retex_ar_model_to_json(const retex_ar_model* model, retex_buffer** out) {
  return guarded([&] {
    require(model && out, "null argument");
    emit_buffer(out, retex::to_json(model->value));
  });
}

retex_status retex_ar_model_from_json(const char* text, size_t length, retex_ar_model** out) {
  return guarded([&] {
    require(out && (text || length == 0), "null argument");
    emit(out, retex::ar_model_from_json(std::string_view(text ? text : "", length)));
  });
}

retex_status retex_ar_forecast(const retex_ar_model* model, const double* history,
                               size_t history_length, size_t horizon, double* predictions) {
  return guarded([&] {
    require(model && predictions && (history || history_length == 0), "null argument");
    const auto result = retex::forecast(
        model->value, std::span<const double>(history, history_length), horizon);
    std::copy(result.predictions.begin(), result.predictions.end(), predictions);
  });
}

retex_status retex_ar_impulse_response(const retex_ar_model* model, size_t lag, double* out) {
  return guarded([&] {
    require(model && out, "null argument");
    *out = retex::impulse_response(model->value, lag);
  });
}

retex_status retex_ar_simulate(const retex_ar_model* model, size_t length, uint64_t seed,
                               const double* initial, size_t initial_length, retex_date start,
                               retex_series** out) {
  return guarded([&] {
    require(model && out && (initial || initial_length == 0), "null argument");
    emit(out, retex::simulate(model->value, length, seed,
                              std::span<const double>(initial, initial_length), to_date(start)));
  });
}

retex_status retex_forecast_with_trend(const retex_series* series, int degree, size_t order,
                                       size_t horizon, double* predictions) {
  return guarded([&] {
    require(series && predictions, "null argument");
    const auto result = retex::forecast_with_trend(series->value, degree, order, horizon);
    std::copy(result.predictions.begin(), result.predictions.end(), predictions);
  });
}

// ---- recurrence -----------------------------------------------------------

retex_status retex_distance_matrix_build(const retex_series* series, retex_embedding embedding,
                                         retex_distance_matrix** out) {
  return guarded([&] {
    require(series && out, "null argument");
    const auto states =
        retex::embed(series->value.values(), {embedding.dimension, embedding.delay});
    emit(out, retex::distance_matrix(states));
  });
}

void retex_distance_matrix_free(retex_distance_matrix* dm) { delete dm; }
size_t retex_distance_matrix_size(const retex_distance_matrix* dm) { return dm ? dm->value.size() : 0; }
double retex_distance_matrix_at(const retex_distance_matrix* dm, size_t i, size_t j) {
  return dm && i < dm->value.size() && j < dm->value.size() ? dm->value(i, j) : 0.0;
}
double retex_distance_matrix_max(const retex_distance_matrix* dm) { return dm ? dm->value.max() : 0.0; }

retex_status retex_distance_matrix_to_csv(const retex_distance_matrix* dm, retex_buffer** out) {
  return guarded([&] {
    require(dm && out, "null argument");
    emit_buffer(out, retex::to_csv(dm->value));
  });
}

retex_status retex_rp_build(const retex_distance_matrix* dm, double threshold,
                            retex_recurrence** out) {
  return guarded([&] {
    require(dm && out, "null argument");
    emit(out, retex::binary_rp(dm->value, threshold));
  });
}

retex_status retex_rp_build_local(const retex_distance_matrix* dm, const double* thresholds,
                                  size_t count, retex_recurrence** out) {
  return guarded([&] {
    require(dm && out && (thresholds || count == 0), "null argument");
    emit(out, retex::binary_rp_local(dm->value, std::span<const double>(thresholds, count)));
  });
}

void retex_rp_free(retex_recurrence* rp) { delete rp; }
size_t retex_rp_size(const retex_recurrence* rp) { return rp ? rp->value.size() : 0; }
int retex_rp_at(const retex_recurrence* rp, size_t i, size_t j) {
  return rp && i < rp->value.size() && j < rp->value.size() && rp->value(i, j) ? 1 : 0;
}
double retex_rp_threshold(const retex_recurrence* rp) { return rp ? rp->value.threshold_used() : 0.0; }
double retex_rp_recurrence_rate(const retex_recurrence* rp) {
  return rp && rp->value.size() ? retex::recurrence_rate(rp->value) : 0.0;
}

retex_status retex_rp_to_text(const retex_recurrence* rp, retex_buffer** out) {
  return guarded([&] {
    require(rp && out, "null argument");
    emit_buffer(out, retex::to_text_grid(rp->value));
  });
}

retex_status retex_overlay_build(const retex_recurrence* a, const retex_recurrence* b,
                                 retex_overlay** out) {
  return guarded([&] {
    require(a && b && out, "null argument");
    emit(out, retex::overlay(a->value, b->value));
  });
}

void retex_overlay_free(retex_overlay* ov) { delete ov; }
size_t retex_overlay_size(const retex_overlay* ov) { return ov ? ov->value.size() : 0; }
retex_overlay_cell retex_overlay_at(const retex_overlay* ov, size_t i, size_t j) {
  if (!ov || i >= ov->value.size() || j >= ov->value.size()) return RETEX_CELL_NEITHER;
  return static_cast<retex_overlay_cell>(ov->value(i, j));
}

// ---- texture --------------------------------------------------------------

retex_status retex_column_density(const retex_recurrence* rp, size_t window, double* out) {
  return guarded([&] {
    require(rp && out, "null argument");
    const auto profile = retex::column_density(rp->value, window);
    std::copy(profile.densities.begin(), profile.densities.end(), out);
  });
}

retex_transition_params retex_transition_params_default(void) {
  const retex::TransitionParams p;
  return {p.window, p.score_threshold, p.min_separation};
}

retex_status retex_detect_transitions(const retex_recurrence* rp, const retex_series* series,
                                      size_t date_offset, retex_transition_params params,
                                      retex_report** out) {
  return guarded([&] {
    require(rp && series && out, "null argument");
    const auto dates = series->value.dates();
    if (date_offset > dates.size() || dates.size() - date_offset < rp->value.size())
      throw retex::Error(retex::ErrorCode::SizeMismatch,
                         "series too short to label every matrix row");
    emit(out, retex::detect_transitions(
                  rp->value, dates.subspan(date_offset, rp->value.size()),
                  {params.window, params.score_threshold, params.min_separation}));
  });
}

void retex_report_free(retex_report* report) { delete report; }
size_t retex_report_count(const retex_report* report) {
  return report ? report->value.transitions.size() : 0;
}

retex_status retex_report_get(const retex_report* report, size_t rank, size_t* index,
                              retex_date* date, double* score) {
  return guarded([&] {
    require(report != nullptr, "null argument");
    require(rank < report->value.transitions.size(), "rank out of range");
    const auto& t = report->value.transitions[rank];
    if (index) *index = t.index;
    if (date) *date = from_date(t.date);
    if (score) *score = t.score;
  });
}

retex_status retex_report_to_json(const retex_report* report, retex_buffer** out) {
  return guarded([&] {
    require(report && out, "null argument");
    emit_buffer(out, retex::to_json(report->value));
  });
}

retex_status retex_report_to_table(const retex_report* report, retex_buffer** out) {
  return guarded([&] {
    require(report && out, "null argument");
    emit_buffer(out, retex::to_table(report->value));
  });
}

// ---- rendering ------------------------------------------------------------

void retex_render_options_default(retex_render_options* options) {
  if (!options) return;
  const retex::RenderOptions d;
  const auto rgb = [](retex::Rgb c) { return retex_rgb{c.r, c.g, c.b}; };
  options->cell_pixels = d.cell_pixels;
  options->colormap = "default";
  options->color_a = rgb(d.color_a);
  options->color_b = rgb(d.color_b);
  options->color_both = rgb(d.color_both);
  options->background = rgb(d.background);
  options->ink = rgb(d.ink);
  options->max_pixels = d.max_pixels;
}

retex_status retex_render_binary_png(const retex_recurrence* rp,
                                     const retex_render_options* options, retex_buffer** out) {
  return guarded([&] {
    require(rp && out, "null argument");
    emit_buffer(out, retex::encode_png(retex::render_binary(rp->value, to_options(options))));
  });
}

retex_status retex_render_distance_png(const retex_distance_matrix* dm,
                                       const retex_render_options* options, retex_buffer** out) {
  return guarded([&] {
    require(dm && out, "null argument");
    emit_buffer(out, retex::encode_png(retex::render_distance(dm->value, to_options(options))));
  });
}

retex_status retex_render_overlay_png(const retex_overlay* ov, const retex_render_options* options,
                                      retex_buffer** out) {
  return guarded([&] {
    require(ov && out, "null argument");
    emit_buffer(out, retex::encode_png(retex::render_overlay(ov->value, to_options(options))));
  });
}

}  // extern "C"
