/*
 * retex: recurrence plots, AR forecasting and texture-transition detection
 * for scalar time series. C interface over the C++ core.
 *
 * Every fallible call returns a retex_status; RETEX_OK is zero. On failure
 * retex_last_error() holds a one-line message for the calling thread until
 * its next failing call. Objects returned through `out` parameters are owned
 * by the caller and released with the matching *_free function; passing NULL
 * to a *_free function is a no-op. Pointers returned by accessors borrow from
 * their owning object.
 */
#ifndef RETEX_RETEX_H
#define RETEX_RETEX_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(RETEX_BUILDING_LIBRARY)
#    define RETEX_API __declspec(dllexport)
#  else
#    define RETEX_API __declspec(dllimport)
#  endif
#else
#  define RETEX_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum retex_status {
  RETEX_OK = 0,
  RETEX_ERR_INVALID_ARGUMENT,
  RETEX_ERR_MALFORMED_ROW,
  RETEX_ERR_DUPLICATE_DATE,
  RETEX_ERR_EMPTY_SERIES,
  RETEX_ERR_UNKNOWN_COLUMN,
  RETEX_ERR_GAP_TOO_LARGE,
  RETEX_ERR_GAP_FOUND,
  RETEX_ERR_SINGULAR_FIT,
  RETEX_ERR_DEGENERATE_SERIES,
  RETEX_ERR_INSUFFICIENT_DATA,
  RETEX_ERR_INSUFFICIENT_HISTORY,
  RETEX_ERR_SERIES_TOO_SHORT,
  RETEX_ERR_NEGATIVE_THRESHOLD,
  RETEX_ERR_SIZE_MISMATCH,
  RETEX_ERR_WINDOW_TOO_LARGE,
  RETEX_ERR_IMAGE_TOO_LARGE,
  RETEX_ERR_PARSE,
  RETEX_ERR_IO,
  RETEX_ERR_OUT_OF_MEMORY,
  RETEX_ERR_INTERNAL
} retex_status;

typedef struct retex_series retex_series;
typedef struct retex_trend retex_trend;
typedef struct retex_ar_model retex_ar_model;
typedef struct retex_distance_matrix retex_distance_matrix;
typedef struct retex_recurrence retex_recurrence;
typedef struct retex_overlay retex_overlay;
typedef struct retex_report retex_report;
typedef struct retex_buffer retex_buffer;

typedef struct retex_date {
  int32_t year;
  uint32_t month; /* 1..12 */
  uint32_t day;   /* 1..31 */
} retex_date;

typedef enum retex_gap_mode {
  RETEX_GAP_FORWARD_FILL = 0,
  RETEX_GAP_DROP = 1,
  RETEX_GAP_ERROR = 2
} retex_gap_mode;

typedef struct retex_embedding {
  size_t dimension; /* m >= 1 */
  size_t delay;     /* tau >= 1 */
} retex_embedding;

typedef enum retex_overlay_cell {
  RETEX_CELL_NEITHER = 0,
  RETEX_CELL_ONLY_A = 1,
  RETEX_CELL_ONLY_B = 2,
  RETEX_CELL_BOTH = 3
} retex_overlay_cell;

typedef struct retex_transition_params {
  size_t window;
  double score_threshold;
  size_t min_separation;
} retex_transition_params;

typedef struct retex_rgb {
  uint8_t r, g, b;
} retex_rgb;

typedef struct retex_render_options {
  size_t cell_pixels;
  const char *colormap; /* "default" or "gray"; NULL means "default" */
  retex_rgb color_a;
  retex_rgb color_b;
  retex_rgb color_both;
  retex_rgb background;
  retex_rgb ink;
  size_t max_pixels;
} retex_render_options;

/* ---- general ---------------------------------------------------------- */

RETEX_API const char *retex_version(void);
/* CamelCase error name, e.g. "DegenerateSeries"; "Ok" for RETEX_OK. */
RETEX_API const char *retex_status_name(retex_status status);
RETEX_API const char *retex_last_error(void);

RETEX_API const uint8_t *retex_buffer_data(const retex_buffer *buffer);
RETEX_API size_t retex_buffer_size(const retex_buffer *buffer);
RETEX_API void retex_buffer_free(retex_buffer *buffer);

/* ---- series ----------------------------------------------------------- */

/* date_format NULL means "%Y-%m-%d". For MalformedRow the data row number
 * (1-based, header excluded) is written to *bad_row when bad_row != NULL. */
RETEX_API retex_status retex_series_parse_csv(const char *text, size_t length,
                                              const char *date_column,
                                              const char *value_column,
                                              const char *date_format,
                                              retex_series **out, size_t *bad_row);
RETEX_API retex_status retex_series_create(const retex_date *dates, const double *values,
                                           size_t count, retex_series **out);
RETEX_API void retex_series_free(retex_series *series);
RETEX_API size_t retex_series_size(const retex_series *series);
RETEX_API const double *retex_series_values(const retex_series *series);
RETEX_API retex_status retex_series_date(const retex_series *series, size_t index,
                                         retex_date *out);
RETEX_API retex_status retex_series_regularize(const retex_series *series,
                                               retex_gap_mode mode, int max_gap_days,
                                               retex_series **out);
/* Inclusive on both ends. */
RETEX_API retex_status retex_series_slice(const retex_series *series, retex_date start,
                                          retex_date end, retex_series **out);
RETEX_API retex_status retex_series_to_csv(const retex_series *series, retex_buffer **out);

/* ---- statistics and trend -------------------------------------------- */

RETEX_API retex_status retex_series_mean(const retex_series *series, double *out);
/* Population RMS deviation about the mean. */
RETEX_API retex_status retex_series_threshold(const retex_series *series, double *out);
/* Writes retex_series_size(series) values to out. */
RETEX_API retex_status retex_series_sliding_threshold(const retex_series *series,
                                                      size_t window, double *out);

RETEX_API retex_status retex_trend_fit(const retex_series *series, int degree,
                                       retex_trend **out);
RETEX_API void retex_trend_free(retex_trend *trend);
RETEX_API int retex_trend_degree(const retex_trend *trend);
/* degree + 1 coefficients, constant first, in powers of the observation index. */
RETEX_API const double *retex_trend_coefficients(const retex_trend *trend);
RETEX_API double retex_trend_value(const retex_trend *trend, double index);
RETEX_API retex_status retex_detrend(const retex_series *series, const retex_trend *trend,
                                     retex_series **out);

/* ---- autoregressive models -------------------------------------------- */

RETEX_API retex_status retex_ar_model_create(double intercept, const double *rho,
                                             size_t order, double noise_std,
                                             retex_ar_model **out);
RETEX_API retex_status retex_ar_fit(const retex_series *series, size_t order,
                                    retex_ar_model **out);
RETEX_API void retex_ar_model_free(retex_ar_model *model);
RETEX_API double retex_ar_model_intercept(const retex_ar_model *model);
RETEX_API size_t retex_ar_model_order(const retex_ar_model *model);
RETEX_API const double *retex_ar_model_coefficients(const retex_ar_model *model);
RETEX_API double retex_ar_model_noise_std(const retex_ar_model *model);
RETEX_API int retex_ar_model_is_stationary(const retex_ar_model *model);
/* {"c": ..., "rho": [...], "p": ..., "noise_std": ...} */
RETEX_API retex_status retex_ar_model_to_json(const retex_ar_model *model, retex_buffer **out);
RETEX_API retex_status retex_ar_model_from_json(const char *text, size_t length,
                                                retex_ar_model **out);
/* Writes `horizon` predictions. */
RETEX_API retex_status retex_ar_forecast(const retex_ar_model *model, const double *history,
                                         size_t history_length, size_t horizon,
                                         double *predictions);
RETEX_API retex_status retex_ar_impulse_response(const retex_ar_model *model, size_t lag,
                                                 double *out);
RETEX_API retex_status retex_ar_simulate(const retex_ar_model *model, size_t length,
                                         uint64_t seed, const double *initial,
                                         size_t initial_length, retex_date start,
                                         retex_series **out);
RETEX_API retex_status retex_forecast_with_trend(const retex_series *series, int degree,
                                                 size_t order, size_t horizon,
                                                 double *predictions);

/* ---- recurrence -------------------------------------------------------- */

RETEX_API retex_status retex_distance_matrix_build(const retex_series *series,
                                                   retex_embedding embedding,
                                                   retex_distance_matrix **out);
RETEX_API void retex_distance_matrix_free(retex_distance_matrix *dm);
RETEX_API size_t retex_distance_matrix_size(const retex_distance_matrix *dm);
RETEX_API double retex_distance_matrix_at(const retex_distance_matrix *dm, size_t i, size_t j);
RETEX_API double retex_distance_matrix_max(const retex_distance_matrix *dm);
RETEX_API retex_status retex_distance_matrix_to_csv(const retex_distance_matrix *dm,
                                                    retex_buffer **out);

/* Cell (i,j) recurs iff distance <= threshold. */
RETEX_API retex_status retex_rp_build(const retex_distance_matrix *dm, double threshold,
                                      retex_recurrence **out);
/* Cell (i,j) recurs iff distance <= min(thresholds[i], thresholds[j]). */
RETEX_API retex_status retex_rp_build_local(const retex_distance_matrix *dm,
                                            const double *thresholds, size_t count,
                                            retex_recurrence **out);
RETEX_API void retex_rp_free(retex_recurrence *rp);
RETEX_API size_t retex_rp_size(const retex_recurrence *rp);
RETEX_API int retex_rp_at(const retex_recurrence *rp, size_t i, size_t j);
RETEX_API double retex_rp_threshold(const retex_recurrence *rp);
RETEX_API double retex_rp_recurrence_rate(const retex_recurrence *rp);
/* One line of '0'/'1' per matrix row, row 0 first. */
RETEX_API retex_status retex_rp_to_text(const retex_recurrence *rp, retex_buffer **out);

RETEX_API retex_status retex_overlay_build(const retex_recurrence *a, const retex_recurrence *b,
                                           retex_overlay **out);
RETEX_API void retex_overlay_free(retex_overlay *ov);
RETEX_API size_t retex_overlay_size(const retex_overlay *ov);
RETEX_API retex_overlay_cell retex_overlay_at(const retex_overlay *ov, size_t i, size_t j);

/* ---- texture ----------------------------------------------------------- */

/* Writes retex_rp_size(rp) densities. */
RETEX_API retex_status retex_column_density(const retex_recurrence *rp, size_t window,
                                            double *out);
/* window 30, score_threshold 0.5, min_separation 30. */
RETEX_API retex_transition_params retex_transition_params_default(void);
/* Matrix row i is labelled with the date of observation i + date_offset in
 * `series` (date_offset is (m-1)*tau for an embedded matrix). */
RETEX_API retex_status retex_detect_transitions(const retex_recurrence *rp,
                                                const retex_series *series,
                                                size_t date_offset,
                                                retex_transition_params params,
                                                retex_report **out);
RETEX_API void retex_report_free(retex_report *report);
RETEX_API size_t retex_report_count(const retex_report *report);
RETEX_API retex_status retex_report_get(const retex_report *report, size_t rank,
                                        size_t *index, retex_date *date, double *score);
RETEX_API retex_status retex_report_to_json(const retex_report *report, retex_buffer **out);
RETEX_API retex_status retex_report_to_table(const retex_report *report, retex_buffer **out);

/* ---- rendering --------------------------------------------------------- */

RETEX_API void retex_render_options_default(retex_render_options *options);
RETEX_API retex_status retex_render_binary_png(const retex_recurrence *rp,
                                               const retex_render_options *options,
                                               retex_buffer **out);
RETEX_API retex_status retex_render_distance_png(const retex_distance_matrix *dm,
                                                 const retex_render_options *options,
                                                 retex_buffer **out);
RETEX_API retex_status retex_render_overlay_png(const retex_overlay *ov,
                                                const retex_render_options *options,
                                                retex_buffer **out);

#ifdef __cplusplus
}
#endif

#endif /* RETEX_RETEX_H */
