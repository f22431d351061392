// Copyright 2026 The taskaug Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "taskaug/io/image_io.hpp"

#include <png.h>
// jpeglib.h needs size_t and FILE declared first.
#include <cstdio>
#include <jpeglib.h>

#include <csetjmp>
#include <memory>
#include <vector>

#include "taskaug/common/error.hpp"
#include "taskaug/common/util.hpp"

namespace taskaug::io {
namespace {

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_read(const std::filesystem::path& path) {
  FilePtr f(std::fopen(path.c_str(), "rb"));
  if (!f) throw IoError("cannot open image " + path.string());
  return f;
}

bool has_png_signature(std::FILE* f) {
  unsigned char sig[8] = {};
  const auto n = std::fread(sig, 1, 8, f);
  std::rewind(f);
  return n == 8 && png_sig_cmp(sig, 0, 8) == 0;
}

[[noreturn]] void png_error_fn(png_structp png, png_const_charp msg) {
  auto* text = static_cast<std::string*>(png_get_error_ptr(png));
  if (text) *text = msg;
  png_longjmp(png, 1);
}

void png_warning_fn(png_structp, png_const_charp) {}

// Decodes a PNG into rows of `channels` samples of `depth` bits after applying
// the requested transforms.
struct DecodedPng {
  int width = 0, height = 0;
  int channels = 0;
  int bit_depth = 0;
  std::vector<std::uint8_t> bytes;
};

DecodedPng decode_png(std::FILE* f, const std::filesystem::path& path, bool want_gray16) {
  std::string err;
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &err, png_error_fn, png_warning_fn);
  if (!png) throw IoError("libpng init failed");
  png_infop info = png_create_info_struct(png);
  DecodedPng out;
  std::vector<png_bytep> rows;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw IoError("PNG decode failed for " + path.string() + ": " + err);
  }
  png_init_io(png, f);
  png_read_info(png, info);
  const auto color = png_get_color_type(png, info);
  const auto depth = png_get_bit_depth(png, info);
  if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
  if (want_gray16) {
    if (color & PNG_COLOR_MASK_COLOR) png_set_rgb_to_gray_fixed(png, 1, -1, -1);
    if (color & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(png);
    if (depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (depth == 16) png_set_swap(png);  // host-order little endian
  } else {
    if (depth == 16) png_set_strip_16(png);
    if (depth < 8 && color == PNG_COLOR_TYPE_GRAY) png_set_expand_gray_1_2_4_to_8(png);
    if (!(color & PNG_COLOR_MASK_COLOR)) png_set_gray_to_rgb(png);
    png_set_strip_alpha(png);
  }
  png_read_update_info(png, info);
  out.width = static_cast<int>(png_get_image_width(png, info));
  out.height = static_cast<int>(png_get_image_height(png, info));
  out.channels = png_get_channels(png, info);
  out.bit_depth = png_get_bit_depth(png, info);
  const auto rowbytes = png_get_rowbytes(png, info);
  out.bytes.resize(rowbytes * out.height);
  rows.resize(out.height);
  for (int y = 0; y < out.height; ++y) rows[y] = out.bytes.data() + rowbytes * y;
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return out;
}

struct JpegErrorMgr {
  jpeg_error_mgr base;
  std::jmp_buf jump;
  char message[JMSG_LENGTH_MAX];
};

[[noreturn]] void jpeg_error_exit(j_common_ptr cinfo) {
  auto* mgr = reinterpret_cast<JpegErrorMgr*>(cinfo->err);
  (*cinfo->err->format_message)(cinfo, mgr->message);
  std::longjmp(mgr->jump, 1);
}

RgbImage decode_jpeg(std::FILE* f, const std::filesystem::path& path) {
  jpeg_decompress_struct cinfo;
  JpegErrorMgr err;
  cinfo.err = jpeg_std_error(&err.base);
  err.base.error_exit = jpeg_error_exit;
  RgbImage img;
  if (setjmp(err.jump)) {
    jpeg_destroy_decompress(&cinfo);
    throw IoError("JPEG decode failed for " + path.string() + ": " + err.message);
  }
  jpeg_create_decompress(&cinfo);
  jpeg_stdio_src(&cinfo, f);
  jpeg_read_header(&cinfo, TRUE);
  cinfo.out_color_space = JCS_RGB;
  jpeg_start_decompress(&cinfo);
  img = RgbImage(static_cast<int>(cinfo.output_width), static_cast<int>(cinfo.output_height));
  while (cinfo.output_scanline < cinfo.output_height) {
    JSAMPROW row = img.data.data() + img.offset(0, static_cast<int>(cinfo.output_scanline));
    jpeg_read_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_decompress(&cinfo);
  jpeg_destroy_decompress(&cinfo);
  return img;
}

void png_write_to_string(png_structp png, png_bytep data, png_size_t len) {
  auto* out = static_cast<std::string*>(png_get_io_ptr(png));
  out->append(reinterpret_cast<const char*>(data), len);
}

void png_flush_noop(png_structp) {}

// Encodes rows of `bit_depth` samples, `color_type` layout.
std::string encode(int width, int height, int bit_depth, int color_type,
                   const std::vector<png_bytep>& rows, bool swap16) {
  std::string out;
  std::string err;
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &err, png_error_fn, png_warning_fn);
  if (!png) throw IoError("libpng init failed");
  png_infop info = png_create_info_struct(png);
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw IoError("PNG encode failed: " + err);
  }
  png_set_write_fn(png, &out, png_write_to_string, png_flush_noop);
  png_set_compression_level(png, 6);
  png_set_IHDR(png, info, static_cast<png_uint_32>(width), static_cast<png_uint_32>(height),
               bit_depth, color_type, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  if (swap16) png_set_swap(png);
  png_write_image(png, const_cast<png_bytepp>(rows.data()));
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return out;
}

}  // namespace

RgbImage read_rgb(const std::filesystem::path& path) {
  auto f = open_read(path);
  if (has_png_signature(f.get())) {
    auto d = decode_png(f.get(), path, /*want_gray16=*/false);
    RgbImage img(d.width, d.height);
    img.data = std::move(d.bytes);
    return img;
  }
  return decode_jpeg(f.get(), path);
}

std::string encode_png(const RgbImage& image) {
  std::vector<png_bytep> rows(image.height);
  auto* base = const_cast<std::uint8_t*>(image.data.data());
  for (int y = 0; y < image.height; ++y) rows[y] = base + image.offset(0, y);
  return encode(image.width, image.height, 8, PNG_COLOR_TYPE_RGB, rows, false);
}

void write_png(const std::filesystem::path& path, const RgbImage& image) {
  write_file(path, encode_png(image));
}

Gray16Image read_gray16_png(const std::filesystem::path& path) {
  auto f = open_read(path);
  if (!has_png_signature(f.get())) throw IoError("not a PNG file: " + path.string());
  auto d = decode_png(f.get(), path, /*want_gray16=*/true);
  Gray16Image img(d.width, d.height);
  for (int y = 0; y < d.height; ++y) {
    for (int x = 0; x < d.width; ++x) {
      if (d.bit_depth == 16) {
        const std::size_t o = (static_cast<std::size_t>(y) * d.width + x) * 2;
        img.set(x, y, static_cast<std::uint16_t>(d.bytes[o] | (d.bytes[o + 1] << 8)));
      } else {
        // Widen 8-bit so that 255 maps to 65535.
        const auto v = d.bytes[static_cast<std::size_t>(y) * d.width + x];
        img.set(x, y, static_cast<std::uint16_t>(v * 257));
      }
    }
  }
  return img;
}

void write_gray16_png(const std::filesystem::path& path, const Gray16Image& image) {
  std::vector<png_bytep> rows(image.height);
  auto* base = reinterpret_cast<std::uint8_t*>(const_cast<std::uint16_t*>(image.data.data()));
  for (int y = 0; y < image.height; ++y) rows[y] = base + static_cast<std::size_t>(y) * image.width * 2;
  write_file(path, encode(image.width, image.height, 16, PNG_COLOR_TYPE_GRAY, rows, true));
}

}  // namespace taskaug::io
