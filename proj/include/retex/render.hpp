#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

#include "retex/recurrence.hpp"

namespace retex {

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

inline constexpr Rgb kBlack{0, 0, 0};
inline constexpr Rgb kWhite{255, 255, 255};

// Blue -> cyan -> yellow -> red, small distances cool.
std::vector<Rgb> default_colormap();
// "default" or "gray" (black -> white).
std::vector<Rgb> named_colormap(std::string_view name);

struct RenderOptions {
  std::size_t cell_pixels = 1;
  std::vector<Rgb> colormap = default_colormap();
  Rgb color_a{0, 0, 255};
  Rgb color_b{255, 0, 0};
  Rgb color_both{128, 0, 128};
  Rgb background = kWhite;
  Rgb ink = kBlack;
  std::size_t max_pixels = std::size_t{1} << 28;
};

// 8-bit RGB raster, row 0 at the top.
struct Image {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> rgb;

  Rgb pixel(std::size_t x, std::size_t y) const {
    const std::size_t o = 3 * (y * width + x);
    return {rgb[o], rgb[o + 1], rgb[o + 2]};
  }
};

// All renderers place matrix cell (i, j) at column i, counted from the left,
// and row j, counted from the bottom, so cell (0, 0) is the bottom-left block.
// Each throws ImageTooLarge when (M * cell_pixels)^2 exceeds max_pixels.
Image render_binary(const RecurrenceMatrix& rp, const RenderOptions& options = {});
Image render_distance(const DistanceMatrix& dm, const RenderOptions& options = {});
Image render_overlay(const OverlayMatrix& ov, const RenderOptions& options = {});

// Palette lookup for u in [0, 1], linear between evenly spaced anchors.
Rgb colormap_lookup(const std::vector<Rgb>& anchors, double u);

// PNG: 8-bit truecolour, no interlace, filter 0, IHDR/IDAT/IEND only.
std::vector<std::uint8_t> encode_png(const Image& image);

}  // namespace retex
