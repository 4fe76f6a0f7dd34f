#include "retex/render.hpp"

#include <zlib.h>

#include <algorithm>
#include <cmath>
#include <string>

#include "retex/error.hpp"

namespace retex {

namespace {

void check_options(const RenderOptions& options, std::size_t m) {
  if (options.cell_pixels < 1)
    throw Error(ErrorCode::InvalidArgument, "cell_pixels must be >= 1");
  if (m == 0) throw Error(ErrorCode::InvalidArgument, "empty matrix");
  const std::size_t side = m * options.cell_pixels;
  if (side / options.cell_pixels != m || side > options.max_pixels / side)
    throw Error(ErrorCode::ImageTooLarge,
                std::to_string(side) + "x" + std::to_string(side) + " image exceeds budget of " +
                    std::to_string(options.max_pixels) + " pixels");
}

template <typename ColorOf>
Image paint(std::size_t m, std::size_t cell_pixels, ColorOf color_of) {
  Image img;
  img.width = img.height = m * cell_pixels;
  img.rgb.resize(3 * img.width * img.height);
  for (std::size_t j = 0; j < m; ++j) {
    // Matrix row j occupies image rows counted upward from the bottom.
    const std::size_t y0 = (m - 1 - j) * cell_pixels;
    for (std::size_t i = 0; i < m; ++i) {
      const Rgb c = color_of(i, j);
      const std::size_t x0 = i * cell_pixels;
      for (std::size_t dy = 0; dy < cell_pixels; ++dy) {
        std::uint8_t* p = &img.rgb[3 * ((y0 + dy) * img.width + x0)];
        for (std::size_t dx = 0; dx < cell_pixels; ++dx) {
          *p++ = c.r;
          *p++ = c.g;
          *p++ = c.b;
        }
      }
    }
  }
  return img;
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 24));
  out.push_back(static_cast<std::uint8_t>(v >> 16));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

void put_chunk(std::vector<std::uint8_t>& out, const char (&type)[5],
               const std::vector<std::uint8_t>& data) {
  put_u32(out, static_cast<std::uint32_t>(data.size()));
  const std::size_t type_at = out.size();
  out.insert(out.end(), type, type + 4);
  out.insert(out.end(), data.begin(), data.end());
  const uLong crc = crc32(crc32(0L, Z_NULL, 0), out.data() + type_at,
                          static_cast<uInt>(4 + data.size()));
  put_u32(out, static_cast<std::uint32_t>(crc));
}

}  // namespace

std::vector<Rgb> default_colormap() {
  return {{0, 0, 128}, {0, 0, 255}, {0, 255, 255}, {255, 255, 0}, {255, 0, 0}};
}

std::vector<Rgb> named_colormap(std::string_view name) {
  if (name == "default") return default_colormap();
  if (name == "gray") return {kBlack, kWhite};
  throw Error(ErrorCode::InvalidArgument, "unknown colormap '" + std::string(name) + "'");
}

Rgb colormap_lookup(const std::vector<Rgb>& anchors, double u) {
  if (anchors.size() < 2)
    throw Error(ErrorCode::InvalidArgument, "colormap needs at least two anchors");
  u = std::clamp(u, 0.0, 1.0);
  const double pos = u * static_cast<double>(anchors.size() - 1);
  const std::size_t seg = std::min(static_cast<std::size_t>(pos), anchors.size() - 2);
  const double frac = pos - static_cast<double>(seg);
  const Rgb a = anchors[seg];
  const Rgb b = anchors[seg + 1];
  const auto mix = [frac](std::uint8_t x, std::uint8_t y) {
    return static_cast<std::uint8_t>(std::lround(x + (static_cast<double>(y) - x) * frac));
  };
  return {mix(a.r, b.r), mix(a.g, b.g), mix(a.b, b.b)};
}

Image render_binary(const RecurrenceMatrix& rp, const RenderOptions& options) {
  check_options(options, rp.size());
  return paint(rp.size(), options.cell_pixels, [&](std::size_t i, std::size_t j) {
    return rp(i, j) ? options.ink : options.background;
  });
}

Image render_distance(const DistanceMatrix& dm, const RenderOptions& options) {
  check_options(options, dm.size());
  if (options.colormap.size() < 2)
    throw Error(ErrorCode::InvalidArgument, "colormap needs at least two anchors");
  const double max = dm.max();
  return paint(dm.size(), options.cell_pixels, [&](std::size_t i, std::size_t j) {
    const double u = max > 0.0 ? dm(i, j) / max : 0.0;
    return colormap_lookup(options.colormap, u);
  });
}

Image render_overlay(const OverlayMatrix& ov, const RenderOptions& options) {
  check_options(options, ov.size());
  return paint(ov.size(), options.cell_pixels, [&](std::size_t i, std::size_t j) {
    switch (ov(i, j)) {
      case OverlayCell::only_a: return options.color_a;
      case OverlayCell::only_b: return options.color_b;
      case OverlayCell::both: return options.color_both;
      case OverlayCell::neither: break;
    }
    return options.background;
  });
}

std::vector<std::uint8_t> encode_png(const Image& image) {
  if (image.width == 0 || image.height == 0 || image.rgb.size() != 3 * image.width * image.height)
    throw Error(ErrorCode::InvalidArgument, "malformed image buffer");
  if (image.width > 0x7fffffffu || image.height > 0x7fffffffu)
    throw Error(ErrorCode::ImageTooLarge, "PNG dimensions exceed 2^31-1");

  const std::size_t stride = 3 * image.width;
  std::vector<std::uint8_t> raw;
  raw.reserve((stride + 1) * image.height);
  for (std::size_t y = 0; y < image.height; ++y) {
    raw.push_back(0);  // filter type: none
    const auto* row = image.rgb.data() + y * stride;
    raw.insert(raw.end(), row, row + stride);
  }
  uLongf packed_size = compressBound(static_cast<uLong>(raw.size()));
  std::vector<std::uint8_t> packed(packed_size);
  if (compress2(packed.data(), &packed_size, raw.data(), static_cast<uLong>(raw.size()), 6) != Z_OK)
    throw Error(ErrorCode::IoError, "zlib compression failed");
  packed.resize(packed_size);

  std::vector<std::uint8_t> png = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
  std::vector<std::uint8_t> ihdr;
  put_u32(ihdr, static_cast<std::uint32_t>(image.width));
  put_u32(ihdr, static_cast<std::uint32_t>(image.height));
  ihdr.insert(ihdr.end(), {8, 2, 0, 0, 0});  // depth, truecolour, deflate, filter, no interlace
  put_chunk(png, "IHDR", ihdr);
  put_chunk(png, "IDAT", packed);
  put_chunk(png, "IEND", {});
  return png;
}

}  // namespace retex
