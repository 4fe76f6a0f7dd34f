// retex command-line front end. Talks to the library only through retex.h.

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <tuple>
#include <chrono>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "handles.hpp"

namespace retex_cli {
namespace {

using json = nlohmann::ordered_json;

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1)
    fail("IoError", "SHA-256 digest failed");
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < length; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xf];
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("IoError", "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

retex_date parse_iso(const std::string& text) {
  retex_date d{};
  char tail = 0;
  if (std::sscanf(text.c_str(), "%d-%u-%u%c", &d.year, &d.month, &d.day, &tail) != 3)
    fail("InvalidArgument", "expected YYYY-MM-DD, got '" + text + "'");
  return d;
}

std::string format_iso(retex_date d) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", d.year, d.month, d.day);
  return buf;
}

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

retex_date series_date(const Series& s, std::size_t i) {
  retex_date d{};
  check(retex_series_date(s.get(), i, &d));
  return d;
}

// Files produced by a run. Nothing touches the disk until commit(); a failed
// commit removes whatever it already wrote.
class Artifacts {
 public:
  void add(std::string path, std::string bytes) {
    files_.emplace_back(std::move(path), std::move(bytes));
  }
  std::vector<std::string> paths() const {
    std::vector<std::string> out;
    for (const auto& f : files_) out.push_back(f.first);
    return out;
  }
  void commit() {
    std::vector<std::string> written;
    for (const auto& [path, bytes] : files_) {
      std::ofstream out(path, std::ios::binary | std::ios::trunc);
      if (out) written.push_back(path);
      if (!out || !out.write(bytes.data(), static_cast<std::streamsize>(bytes.size())) ||
          !out.flush()) {
        out.close();
        std::error_code ec;
        for (const auto& p : written) std::filesystem::remove(p, ec);
        fail("IoError", "cannot write '" + path + "'");
      }
    }
  }

 private:
  std::vector<std::pair<std::string, std::string>> files_;
};

struct SeriesOptions {
  std::string date_column = "date";
  std::string value_column = "value";
  std::string date_format = "%Y-%m-%d";
  std::string gap_policy = "forward_fill";
  int max_gap_days = 7;
  std::string start;
  std::string end;

  void add_to(CLI::App& app) {
    app.add_option("--date-column", date_column, "Header of the date column")->capture_default_str();
    app.add_option("--value-column", value_column, "Header of the value column")->capture_default_str();
    app.add_option("--date-format", date_format, "Date pattern (%Y %y %m %d)")->capture_default_str();
    app.add_option("--gap-policy", gap_policy, "forward_fill, drop or error")
        ->check(CLI::IsMember({"forward_fill", "drop", "error"}))
        ->capture_default_str();
    app.add_option("--max-gap-days", max_gap_days, "Largest gap forward_fill will bridge")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--start", start, "First date kept (YYYY-MM-DD)");
    app.add_option("--end", end, "Last date kept (YYYY-MM-DD)");
  }

  json to_json() const {
    return {{"date_column", date_column}, {"value_column", value_column},
            {"date_format", date_format}, {"gap_policy", gap_policy},
            {"max_gap_days", max_gap_days}, {"start", start.empty() ? json() : json(start)},
            {"end", end.empty() ? json() : json(end)}};
  }
};

struct EmbedOptions {
  std::size_t dimension = 1;
  std::size_t delay = 1;

  void add_to(CLI::App& app) {
    app.add_option("--embed-dim", dimension, "Embedding dimension m")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--embed-delay", delay, "Embedding delay tau")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  }
  retex_embedding get() const { return {dimension, delay}; }
  std::size_t offset() const { return (dimension - 1) * delay; }
  json to_json() const { return {{"dimension", dimension}, {"delay", delay}}; }
};

struct RpOptions {
  std::optional<double> threshold;
  std::size_t local_window = 0;

  void add_to(CLI::App& app) {
    app.add_option("--threshold", threshold, "Fixed recurrence threshold (default: series RMS deviation)")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--local-threshold-window", local_window,
                   "Recompute the threshold over a centred window of this many observations; 0 = global")
        ->capture_default_str();
  }
  json to_json() const {
    return {{"threshold", threshold ? json(*threshold) : json()},
            {"local_threshold_window", local_window}};
  }
};

// Shared state of one invocation: inputs, parameters, results, outputs.
class Run {
 public:
  explicit Run(std::string subcommand) { manifest_["subcommand"] = std::move(subcommand); }

  Series load_series(const std::string& path, const SeriesOptions& o) {
    const std::string text = read_file(path);
    manifest_["inputs"].push_back(
        {{"path", path}, {"sha256", sha256_hex(text)}, {"bytes", text.size()}});
    retex_series* raw = nullptr;
    std::size_t bad_row = 0;
    check(retex_series_parse_csv(text.data(), text.size(), o.date_column.c_str(),
                                 o.value_column.c_str(), o.date_format.c_str(), &raw, &bad_row));
    Series parsed(raw);
    const retex_gap_mode mode = o.gap_policy == "drop"    ? RETEX_GAP_DROP
                                : o.gap_policy == "error" ? RETEX_GAP_ERROR
                                                          : RETEX_GAP_FORWARD_FILL;
    Series series = make<Series>(retex_series_regularize, parsed.get(), mode, o.max_gap_days);
    if (!o.start.empty() || !o.end.empty()) {
      const retex_date first = o.start.empty() ? series_date(series, 0) : parse_iso(o.start);
      const retex_date last = o.end.empty()
                                  ? series_date(series, retex_series_size(series.get()) - 1)
                                  : parse_iso(o.end);
      series = make<Series>(retex_series_slice, series.get(), first, last);
    }
    return series;
  }

  json& parameters() { return manifest_["parameters"]; }
  json& results() { return manifest_["results"]; }
  Artifacts& artifacts() { return artifacts_; }

  // Adds the manifest beside `primary` and writes everything.
  void finish(const std::string& primary) {
    manifest_["tool"] = "retex";
    manifest_["version"] = retex_version();
    manifest_["outputs"] = artifacts_.paths();
    artifacts_.add(primary + ".manifest.json", manifest_.dump(2) + "\n");
    artifacts_.commit();
  }

 private:
  json manifest_ = {{"tool", nullptr}, {"version", nullptr}, {"subcommand", nullptr},
                    {"parameters", json::object()}, {"inputs", json::array()},
                    {"outputs", json::array()}, {"results", json::object()}};
  Artifacts artifacts_;
};

// Global or sliding-window thresholded recurrence matrix of `series`.
Recurrence build_rp(const Series& series, const DistanceMatrix& dm, const EmbedOptions& embed,
                    const RpOptions& rp, json& results) {
  const std::size_t m = retex_distance_matrix_size(dm.get());
  if (rp.local_window > 0) {
    std::vector<double> local(retex_series_size(series.get()));
    check(retex_series_sliding_threshold(series.get(), rp.local_window, local.data()));
    const auto first = local.begin() + static_cast<std::ptrdiff_t>(embed.offset());
    const std::vector<double> aligned(first, first + static_cast<std::ptrdiff_t>(m));
    auto out = make<Recurrence>(retex_rp_build_local, dm.get(), aligned.data(), aligned.size());
    results["threshold_mode"] = "local";
    results["mean_local_threshold"] = retex_rp_threshold(out.get());
    return out;
  }
  double threshold = 0.0;
  if (rp.threshold) {
    threshold = *rp.threshold;
  } else {
    check(retex_series_threshold(series.get(), &threshold));
  }
  results["threshold_mode"] = rp.threshold ? "fixed" : "global";
  results["threshold"] = threshold;
  return make<Recurrence>(retex_rp_build, dm.get(), threshold);
}

// `colormap` must outlive the returned options.
retex_render_options render_options(std::size_t cell_pixels, const char* colormap) {
  retex_render_options o;
  retex_render_options_default(&o);
  o.cell_pixels = cell_pixels;
  o.colormap = colormap;
  return o;
}

json render_json(const retex_render_options& o) {
  return {{"cell_pixels", o.cell_pixels}, {"colormap", o.colormap}, {"origin", "bottom-left"}};
}

std::string sibling(const std::string& path, const std::string& extension) {
  return std::filesystem::path(path).replace_extension(extension).string();
}

// ---- subcommands -----------------------------------------------------------

struct RpCommand {
  std::string input, out = "rp.png", grid;
  std::size_t cell_pixels = 1;
  SeriesOptions series;
  EmbedOptions embed;
  RpOptions rp;

  void run() const {
    Run run("rp");
    const Series s = run.load_series(input, series);
    const auto dm = make<DistanceMatrix>(retex_distance_matrix_build, s.get(), embed.get());
    auto& results = run.results();
    const Recurrence matrix = build_rp(s, dm, embed, rp, results);
    const retex_render_options ro = render_options(cell_pixels, "default");
    const auto png = make<Buffer>(retex_render_binary_png, matrix.get(), &ro);
    const auto text = make<Buffer>(retex_rp_to_text, matrix.get());

    run.parameters() = {{"input", input}, {"series", series.to_json()},
                        {"embedding", embed.to_json()}, {"recurrence", rp.to_json()},
                        {"render", render_json(ro)}};
    results["observations"] = retex_series_size(s.get());
    results["matrix_size"] = retex_rp_size(matrix.get());
    results["recurrence_rate"] = retex_rp_recurrence_rate(matrix.get());
    run.artifacts().add(out, to_string(png));
    run.artifacts().add(grid.empty() ? sibling(out, ".txt") : grid, to_string(text));
    run.finish(out);
  }
};

struct DistplotCommand {
  std::string input, out = "distplot.png", csv, colormap = "default";
  std::size_t cell_pixels = 1;
  SeriesOptions series;
  EmbedOptions embed;

  void run() const {
    Run run("distplot");
    const Series s = run.load_series(input, series);
    const auto dm = make<DistanceMatrix>(retex_distance_matrix_build, s.get(), embed.get());
    const retex_render_options ro = render_options(cell_pixels, colormap.c_str());
    const auto png = make<Buffer>(retex_render_distance_png, dm.get(), &ro);

    run.parameters() = {{"input", input}, {"series", series.to_json()},
                        {"embedding", embed.to_json()}, {"render", render_json(ro)},
                        {"normalization", "per-matrix max"}};
    run.results() = {{"observations", retex_series_size(s.get())},
                     {"matrix_size", retex_distance_matrix_size(dm.get())},
                     {"max_distance", retex_distance_matrix_max(dm.get())}};
    run.artifacts().add(out, to_string(png));
    if (!csv.empty()) run.artifacts().add(csv, to_string(make<Buffer>(retex_distance_matrix_to_csv, dm.get())));
    run.finish(out);
  }
};

struct OverlayCommand {
  std::string input_a, input_b, out = "overlay.png";
  bool clip = false;
  std::size_t cell_pixels = 1;
  SeriesOptions series;
  EmbedOptions embed;

  void run() const {
    Run run("overlay");
    Series a = run.load_series(input_a, series);
    Series b = run.load_series(input_b, series);
    if (clip) {
      const auto last = [](const Series& s) { return series_date(s, retex_series_size(s.get()) - 1); };
      const auto before = [](retex_date x, retex_date y) {
        return std::tie(x.year, x.month, x.day) < std::tie(y.year, y.month, y.day);
      };
      const auto later = [&](retex_date x, retex_date y) { return before(x, y) ? y : x; };
      const auto earlier = [&](retex_date x, retex_date y) { return before(x, y) ? x : y; };
      const retex_date first = later(series_date(a, 0), series_date(b, 0));
      const retex_date end = earlier(last(a), last(b));
      a = make<Series>(retex_series_slice, a.get(), first, end);
      b = make<Series>(retex_series_slice, b.get(), first, end);
    }
    const std::size_t na = retex_series_size(a.get());
    const std::size_t nb = retex_series_size(b.get());
    if (na != nb)
      fail("SizeMismatch", "series lengths differ after regularization (" + std::to_string(na) +
                               " vs " + std::to_string(nb) + "); pass --clip-to-common-range to "
                               "use the common date range");

    json results;
    const auto rp_of = [&](const Series& s, const char* key) {
      const auto dm = make<DistanceMatrix>(retex_distance_matrix_build, s.get(), embed.get());
      json r;
      Recurrence m = build_rp(s, dm, embed, RpOptions{}, r);
      r["recurrence_rate"] = retex_rp_recurrence_rate(m.get());
      results[key] = r;
      return m;
    };
    const Recurrence rp_a = rp_of(a, "a");
    const Recurrence rp_b = rp_of(b, "b");
    const auto ov = make<Overlay>(retex_overlay_build, rp_a.get(), rp_b.get());
    const retex_render_options ro = render_options(cell_pixels, "default");
    const auto png = make<Buffer>(retex_render_overlay_png, ov.get(), &ro);

    json render = render_json(ro);
    const auto rgb = [](retex_rgb c) { return json::array({c.r, c.g, c.b}); };
    render["color_a"] = rgb(ro.color_a);
    render["color_b"] = rgb(ro.color_b);
    render["color_both"] = rgb(ro.color_both);
    render["background"] = rgb(ro.background);
    run.parameters() = {{"input_a", input_a}, {"input_b", input_b},
                        {"series", series.to_json()}, {"clip_to_common_range", clip},
                        {"embedding", embed.to_json()}, {"render", render}};
    results["matrix_size"] = retex_overlay_size(ov.get());
    run.results() = results;
    run.artifacts().add(out, to_string(png));
    run.finish(out);
  }
};

struct ArCommand {
  std::string input, out = "forecast.csv", model_out = "ar_model.json";
  std::size_t order = 1, horizon = 1;
  SeriesOptions series;

  void run() const {
    Run run("ar");
    const Series s = run.load_series(input, series);
    const auto model = make<ArModel>(retex_ar_fit, s.get(), order);
    const std::size_t n = retex_series_size(s.get());
    std::vector<double> predictions(horizon);
    check(retex_ar_forecast(model.get(), retex_series_values(s.get()), n, horizon,
                            predictions.data()));
    const bool stationary = retex_ar_model_is_stationary(model.get()) != 0;
    if (!stationary) std::cerr << "warning: fitted AR model is not stationary\n";

    // Forecast dates continue the series' daily spacing.
    const retex_date last = series_date(s, n - 1);
    std::string csv = "step,date,value\n";
    for (std::size_t k = 0; k < horizon; ++k) {
      const auto d = std::chrono::year_month_day{
          std::chrono::sys_days{std::chrono::year_month_day{std::chrono::year{last.year},
                                                            std::chrono::month{last.month},
                                                            std::chrono::day{last.day}}} +
          std::chrono::days{k + 1}};
      csv += std::to_string(k + 1) + "," +
             format_iso({static_cast<int>(d.year()), static_cast<unsigned>(d.month()),
                         static_cast<unsigned>(d.day())}) +
             "," + format_real(predictions[k]) + "\n";
    }
    run.parameters() = {{"input", input}, {"series", series.to_json()}, {"order", order},
                        {"horizon", horizon}, {"estimator", "conditional least squares"},
                        {"forecast_error_term", 0}};
    run.results() = {{"observations", n}, {"stationary", stationary},
                     {"noise_std", retex_ar_model_noise_std(model.get())}};
    run.artifacts().add(model_out, to_string(make<Buffer>(retex_ar_model_to_json, model.get())) + "\n");
    run.artifacts().add(out, csv);
    run.finish(out);
  }
};

struct TrendCommand {
  std::string input, out = "trend.json";
  int degree = 1;
  std::size_t order = 0, horizon = 0;
  SeriesOptions series;

  void run() const {
    Run run("trend");
    const Series s = run.load_series(input, series);
    const auto trend = make<Trend>(retex_trend_fit, s.get(), degree);
    const double* coeffs = retex_trend_coefficients(trend.get());
    json doc = {{"degree", degree},
                {"coefficients", std::vector<double>(coeffs, coeffs + degree + 1)},
                {"origin_index", 0}};
    if (horizon > 0) {
      std::vector<double> predictions(horizon);
      const auto n = static_cast<double>(retex_series_size(s.get()));
      if (order > 0) {
        check(retex_forecast_with_trend(s.get(), degree, order, horizon, predictions.data()));
      } else {
        for (std::size_t k = 0; k < horizon; ++k)
          predictions[k] = retex_trend_value(trend.get(), n + static_cast<double>(k));
      }
      doc["forecast"] = predictions;
    }
    run.parameters() = {{"input", input}, {"series", series.to_json()}, {"degree", degree},
                        {"ar_order", order}, {"horizon", horizon},
                        {"regressor", "observation index"}};
    run.results() = {{"observations", retex_series_size(s.get())}};
    run.artifacts().add(out, doc.dump(2) + "\n");
    run.finish(out);
  }
};

struct TransitionsCommand {
  std::string input, out = "transitions.json";
  std::size_t window = 30;
  double score_threshold = 0.5;
  std::optional<std::size_t> min_separation;
  SeriesOptions series;
  EmbedOptions embed;
  RpOptions rp;

  void run() const {
    Run run("transitions");
    const Series s = run.load_series(input, series);
    const auto dm = make<DistanceMatrix>(retex_distance_matrix_build, s.get(), embed.get());
    auto& results = run.results();
    const Recurrence matrix = build_rp(s, dm, embed, rp, results);
    const retex_transition_params params{window, score_threshold, min_separation.value_or(window)};
    const auto report =
        make<Report>(retex_detect_transitions, matrix.get(), s.get(), embed.offset(), params);

    run.parameters() = {{"input", input}, {"series", series.to_json()},
                        {"embedding", embed.to_json()}, {"recurrence", rp.to_json()},
                        {"window", params.window}, {"score_threshold", params.score_threshold},
                        {"min_separation", params.min_separation}};
    results["observations"] = retex_series_size(s.get());
    results["matrix_size"] = retex_rp_size(matrix.get());
    results["transitions"] = retex_report_count(report.get());
    std::cout << to_string(make<Buffer>(retex_report_to_table, report.get()));
    run.artifacts().add(out, to_string(make<Buffer>(retex_report_to_json, report.get())) + "\n");
    run.finish(out);
  }
};

struct SimulateCommand {
  std::string model, out = "simulated.csv", start = "2000-01-01";
  std::uint64_t seed = 0;
  std::size_t length = 1000;
  std::vector<double> initial;

  void run() const {
    Run run("simulate");
    const std::string text = read_file(model);
    const auto m = make<ArModel>(retex_ar_model_from_json, text.data(), text.size());
    const std::size_t p = retex_ar_model_order(m.get());
    const std::vector<double> init = initial.empty() ? std::vector<double>(p, 0.0) : initial;
    const auto s = make<Series>(retex_ar_simulate, m.get(), length, seed, init.data(),
                                init.size(), parse_iso(start));
    run.parameters() = {{"model", model}, {"seed", seed}, {"length", length},
                        {"initial", init}, {"start", start},
                        {"generator", "mt19937_64 + normal_distribution"}};
    run.results() = {{"observations", retex_series_size(s.get())}};
    // Record the model file like any other input.
    run.parameters()["model_sha256"] = sha256_hex(text);
    run.artifacts().add(out, to_string(make<Buffer>(retex_series_to_csv, s.get())));
    run.finish(out);
  }
};

}  // namespace
}  // namespace retex_cli

int main(int argc, char** argv) {
  using namespace retex_cli;
  CLI::App app{"Recurrence plots, AR forecasts and texture transitions for scalar time series"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(retex_version()));

  RpCommand rp;
  auto* rp_cmd = app.add_subcommand("rp", "Binary recurrence plot (PNG + 0/1 grid)");
  rp_cmd->add_option("--input", rp.input, "Series CSV")->required()->check(CLI::ExistingFile);
  rp_cmd->add_option("--out", rp.out, "PNG path")->capture_default_str();
  rp_cmd->add_option("--grid", rp.grid, "0/1 text grid path (default: PNG path with .txt)");
  rp_cmd->add_option("--cell-pixels", rp.cell_pixels, "Pixels per matrix cell")
      ->check(CLI::PositiveNumber)->capture_default_str();
  rp.series.add_to(*rp_cmd);
  rp.embed.add_to(*rp_cmd);
  rp.rp.add_to(*rp_cmd);

  DistplotCommand dist;
  auto* dist_cmd = app.add_subcommand("distplot", "Distance-colored recurrence plot");
  dist_cmd->add_option("--input", dist.input, "Series CSV")->required()->check(CLI::ExistingFile);
  dist_cmd->add_option("--out", dist.out, "PNG path")->capture_default_str();
  dist_cmd->add_option("--csv", dist.csv, "Also write the distance matrix as CSV");
  dist_cmd->add_option("--colormap", dist.colormap, "default or gray")
      ->check(CLI::IsMember({"default", "gray"}))->capture_default_str();
  dist_cmd->add_option("--cell-pixels", dist.cell_pixels, "Pixels per matrix cell")
      ->check(CLI::PositiveNumber)->capture_default_str();
  dist.series.add_to(*dist_cmd);
  dist.embed.add_to(*dist_cmd);

  OverlayCommand ov;
  auto* ov_cmd = app.add_subcommand("overlay", "Two binary recurrence plots in one image");
  ov_cmd->add_option("--input-a", ov.input_a, "First series CSV (blue)")->required()->check(CLI::ExistingFile);
  ov_cmd->add_option("--input-b", ov.input_b, "Second series CSV (red)")->required()->check(CLI::ExistingFile);
  ov_cmd->add_option("--out", ov.out, "PNG path")->capture_default_str();
  ov_cmd->add_flag("--clip-to-common-range", ov.clip, "Slice both series to their common dates");
  ov_cmd->add_option("--cell-pixels", ov.cell_pixels, "Pixels per matrix cell")
      ->check(CLI::PositiveNumber)->capture_default_str();
  ov.series.add_to(*ov_cmd);
  ov.embed.add_to(*ov_cmd);

  ArCommand ar;
  auto* ar_cmd = app.add_subcommand("ar", "Fit AR(p) and forecast");
  ar_cmd->add_option("--input", ar.input, "Series CSV")->required()->check(CLI::ExistingFile);
  ar_cmd->add_option("--order", ar.order, "AR order p")->check(CLI::PositiveNumber)->capture_default_str();
  ar_cmd->add_option("--horizon", ar.horizon, "Forecast steps")->check(CLI::PositiveNumber)->capture_default_str();
  ar_cmd->add_option("--out", ar.out, "Forecast CSV path")->capture_default_str();
  ar_cmd->add_option("--model-out", ar.model_out, "Model JSON path")->capture_default_str();
  ar.series.add_to(*ar_cmd);

  TrendCommand trend;
  auto* trend_cmd = app.add_subcommand("trend", "Polynomial trend, optionally with an AR residual forecast");
  trend_cmd->add_option("--input", trend.input, "Series CSV")->required()->check(CLI::ExistingFile);
  trend_cmd->add_option("--degree", trend.degree, "1 (linear) or 2 (quadratic)")
      ->check(CLI::IsMember({1, 2}))->capture_default_str();
  trend_cmd->add_option("--order", trend.order, "AR order for residuals; 0 = trend only")->capture_default_str();
  trend_cmd->add_option("--horizon", trend.horizon, "Forecast steps; 0 = none")->capture_default_str();
  trend_cmd->add_option("--out", trend.out, "Trend JSON path")->capture_default_str();
  trend.series.add_to(*trend_cmd);

  TransitionsCommand tr;
  auto* tr_cmd = app.add_subcommand("transitions", "Detect texture transitions");
  tr_cmd->add_option("--input", tr.input, "Series CSV")->required()->check(CLI::ExistingFile);
  tr_cmd->add_option("--out", tr.out, "Report JSON path")->capture_default_str();
  tr_cmd->add_option("--window", tr.window, "Block size w")->check(CLI::PositiveNumber)->capture_default_str();
  tr_cmd->add_option("--score-threshold", tr.score_threshold, "Minimum reported score")
      ->check(CLI::NonNegativeNumber)->capture_default_str();
  tr_cmd->add_option("--min-separation", tr.min_separation, "Minimum index gap (default: window)")
      ->check(CLI::PositiveNumber);
  tr.series.add_to(*tr_cmd);
  tr.embed.add_to(*tr_cmd);
  tr.rp.add_to(*tr_cmd);

  SimulateCommand sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Synthetic series from an AR model JSON");
  sim_cmd->add_option("--model", sim.model, "Model JSON")->required()->check(CLI::ExistingFile);
  sim_cmd->add_option("--seed", sim.seed, "RNG seed")->capture_default_str();
  sim_cmd->add_option("--length", sim.length, "Number of observations")->check(CLI::PositiveNumber)->capture_default_str();
  sim_cmd->add_option("--initial", sim.initial, "First p values (default zeros)")->delimiter(',');
  sim_cmd->add_option("--start", sim.start, "Date of the first observation")->capture_default_str();
  sim_cmd->add_option("--out", sim.out, "Series CSV path")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*rp_cmd) rp.run();
    else if (*dist_cmd) dist.run();
    else if (*ov_cmd) ov.run();
    else if (*ar_cmd) ar.run();
    else if (*trend_cmd) trend.run();
    else if (*tr_cmd) tr.run();
    else if (*sim_cmd) sim.run();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
