/**
 * Copyright 2026 The PerceptForge Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "perceptforge/png_io.hpp"

#include <png.h>

#include <cstring>
#include <fstream>
#include <iterator>

#include "perceptforge/error.hpp"

namespace perceptforge {

namespace {

struct ReadCursor {
  std::span<const std::uint8_t> bytes;
  std::size_t offset = 0;
};

void WriteToVector(png_structp png, png_bytep data, png_size_t length) {
  auto *out = static_cast<std::vector<std::uint8_t> *>(png_get_io_ptr(png));
  out->insert(out->end(), data, data + length);
}

void FlushNothing(png_structp) {}

void ReadFromSpan(png_structp png, png_bytep data, png_size_t length) {
  auto *cursor = static_cast<ReadCursor *>(png_get_io_ptr(png));
  if (cursor->offset + length > cursor->bytes.size()) {
    png_error(png, "unexpected end of PNG data");
  }
  std::memcpy(data, cursor->bytes.data() + cursor->offset, length);
  cursor->offset += length;
}

struct PngErrorSink {
  char message[256] = {};
};

void OnPngError(png_structp png, png_const_charp message) {
  auto *sink = static_cast<PngErrorSink *>(png_get_error_ptr(png));
  std::strncpy(sink->message, message, sizeof(sink->message) - 1);
  png_longjmp(png, 1);
}

void OnPngWarning(png_structp, png_const_charp) {}

// Frames containing setjmp hold only trivially destructible locals.
bool EncodeRows(const std::uint8_t *rgb, int width, int height, std::vector<std::uint8_t> *out, PngErrorSink *sink) {
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, sink, OnPngError, OnPngWarning);
  if (!png) return false;
  png_infop info = png_create_info_struct(png);
  if (!info || setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    return false;
  }
  png_set_write_fn(png, out, WriteToVector, FlushNothing);
  png_set_IHDR(png, info, width, height, 8, PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_set_compression_level(png, 6);
  png_write_info(png, info);
  for (int y = 0; y < height; ++y) {
    png_write_row(png, const_cast<png_bytep>(rgb + static_cast<std::size_t>(y) * width * 3));
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return true;
}

struct DecodeTarget {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> *rgb = nullptr;
  std::vector<png_bytep> *rows = nullptr;
};

bool DecodeRows(ReadCursor *cursor, DecodeTarget *target, PngErrorSink *sink) {
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, sink, OnPngError, OnPngWarning);
  if (!png) return false;
  png_infop info = png_create_info_struct(png);
  if (!info || setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    return false;
  }
  png_set_read_fn(png, cursor, ReadFromSpan);
  png_read_info(png, info);
  const int colorType = png_get_color_type(png, info);
  const int depth = png_get_bit_depth(png, info);
  if (depth == 16) png_set_strip_16(png);
  if (depth < 8) png_set_packing(png);
  if (colorType == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (colorType == PNG_COLOR_TYPE_GRAY || colorType == PNG_COLOR_TYPE_GRAY_ALPHA) png_set_gray_to_rgb(png);
  if (colorType & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(png);
  png_set_interlace_handling(png);
  png_read_update_info(png, info);
  target->width = static_cast<int>(png_get_image_width(png, info));
  target->height = static_cast<int>(png_get_image_height(png, info));
  target->rgb->resize(static_cast<std::size_t>(target->width) * target->height * 3);
  target->rows->resize(target->height);
  for (int y = 0; y < target->height; ++y) {
    (*target->rows)[y] = target->rgb->data() + static_cast<std::size_t>(y) * target->width * 3;
  }
  png_read_image(png, target->rows->data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return true;
}

}  // namespace

std::vector<std::uint8_t> EncodePng(const Image8 &image) { return EncodePng(image.rgb, image.width, image.height); }

std::vector<std::uint8_t> EncodePng(std::span<const std::uint8_t> rgb, int width, int height) {
  if (rgb.size() != static_cast<std::size_t>(width) * height * 3) {
    throw Error(ErrorCode::kInvalidArgument, "rgb buffer does not match image size");
  }
  std::vector<std::uint8_t> out;
  PngErrorSink sink;
  if (!EncodeRows(rgb.data(), width, height, &out, &sink)) {
    throw Error(ErrorCode::kIoFailure, std::string("png encode: ") + sink.message);
  }
  return out;
}

Image8 DecodePng(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 8 || png_sig_cmp(bytes.data(), 0, 8) != 0) {
    throw Error(ErrorCode::kIoFailure, "not a PNG stream");
  }
  Image8 image;
  std::vector<png_bytep> rows;
  ReadCursor cursor{bytes, 0};
  DecodeTarget target{0, 0, &image.rgb, &rows};
  PngErrorSink sink;
  if (!DecodeRows(&cursor, &target, &sink)) {
    throw Error(ErrorCode::kIoFailure, std::string("png decode: ") + sink.message);
  }
  image.width = target.width;
  image.height = target.height;
  return image;
}

Image8 ReadPng(const std::filesystem::path &path) { return DecodePng(ReadFileBytes(path)); }

std::vector<std::uint8_t> ReadFileBytes(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoFailure, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void WriteFileBytes(const std::filesystem::path &path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoFailure, "cannot write " + path.string());
  out.write(reinterpret_cast<const char *>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIoFailure, "short write to " + path.string());
}

}  // namespace perceptforge
