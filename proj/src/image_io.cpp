#include "imrestore/image_io.hpp"

#include <png.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <memory>
#include <vector>

namespace imrestore {

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

Image from_rgb8(const std::vector<unsigned char>& rgb, int h, int w) {
  Image img(h, w);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const unsigned char* px = &rgb[(static_cast<std::size_t>(y) * w + x) * 3];
      for (int c = 0; c < 3; ++c) {
        img.at(c, y, x) = px[c] / 255.0;
      }
    }
  }
  return img;
}

Image load_png(const std::filesystem::path& path) {
  FilePtr fp(std::fopen(path.string().c_str(), "rb"));
  if (!fp) {
    throw std::runtime_error("load_image: cannot open " + path.string());
  }

  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw std::runtime_error("load_image: libpng init failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw std::runtime_error("load_image: libpng init failed");
  }
  std::vector<unsigned char> rgb;
  std::vector<png_bytep> rows;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw std::runtime_error("load_image: corrupt or unsupported PNG: " + path.string());
  }

  png_init_io(png, fp.get());
  png_read_info(png, info);

  const png_uint_32 w = png_get_image_width(png, info);
  const png_uint_32 h = png_get_image_height(png, info);
  const int color_type = png_get_color_type(png, info);
  const int bit_depth = png_get_bit_depth(png, info);
  if (w == 0 || h == 0) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw std::runtime_error("load_image: zero-dimension PNG: " + path.string());
  }

  // Normalize every variant to 8-bit RGB: strip 16->8, expand palette/gray,
  // drop alpha, replicate gray to 3 channels.
  if (bit_depth == 16) png_set_strip_16(png);
  if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
  if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
  if (color_type == PNG_COLOR_TYPE_GRAY || color_type == PNG_COLOR_TYPE_GRAY_ALPHA) {
    png_set_gray_to_rgb(png);
  }
  png_set_strip_alpha(png);
  png_read_update_info(png, info);

  if (png_get_rowbytes(png, info) != static_cast<std::size_t>(w) * 3) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw std::runtime_error("load_image: unsupported PNG layout: " + path.string());
  }

  rgb.resize(static_cast<std::size_t>(w) * h * 3);
  rows.resize(h);
  for (png_uint_32 y = 0; y < h; ++y) {
    rows[y] = rgb.data() + static_cast<std::size_t>(y) * w * 3;
  }
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);

  return from_rgb8(rgb, static_cast<int>(h), static_cast<int>(w));
}

int read_ppm_token(std::FILE* f) {
  // Skips whitespace and '#' comments, then parses one unsigned decimal.
  int ch = std::fgetc(f);
  while (ch != EOF) {
    if (ch == '#') {
      while (ch != EOF && ch != '\n') ch = std::fgetc(f);
    } else if (std::isspace(ch)) {
      ch = std::fgetc(f);
    } else {
      break;
    }
  }
  if (ch == EOF || !std::isdigit(ch)) return -1;
  int value = 0;
  while (ch != EOF && std::isdigit(ch)) {
    value = value * 10 + (ch - '0');
    if (value > 1 << 26) return -1;
    ch = std::fgetc(f);
  }
  return value;
}

Image load_ppm(const std::filesystem::path& path) {
  FilePtr fp(std::fopen(path.string().c_str(), "rb"));
  if (!fp) {
    throw std::runtime_error("load_image: cannot open " + path.string());
  }
  char magic[2] = {0, 0};
  if (std::fread(magic, 1, 2, fp.get()) != 2 || magic[0] != 'P' || magic[1] != '6') {
    throw std::runtime_error("load_image: not a binary PPM (P6): " + path.string());
  }
  const int w = read_ppm_token(fp.get());
  const int h = read_ppm_token(fp.get());
  const int maxval = read_ppm_token(fp.get());
  if (w <= 0 || h <= 0) {
    throw std::runtime_error("load_image: zero-dimension PPM: " + path.string());
  }
  if (maxval != 255) {
    throw std::runtime_error("load_image: unsupported PPM maxval (want 255): " + path.string());
  }
  std::vector<unsigned char> rgb(static_cast<std::size_t>(w) * h * 3);
  if (std::fread(rgb.data(), 1, rgb.size(), fp.get()) != rgb.size()) {
    throw std::runtime_error("load_image: truncated PPM: " + path.string());
  }
  return from_rgb8(rgb, h, w);
}

}  // namespace

int quantize8(double v) {
  const long q = std::lround(v * 255.0);  // lround: halves away from zero
  return static_cast<int>(std::min(255L, std::max(0L, q)));
}

Image load_image(const std::filesystem::path& path) {
  FilePtr probe(std::fopen(path.string().c_str(), "rb"));
  if (!probe) {
    throw std::runtime_error("load_image: cannot open " + path.string());
  }
  unsigned char sig[8] = {};
  const std::size_t got = std::fread(sig, 1, sizeof(sig), probe.get());
  probe.reset();

  if (got >= 8 && png_sig_cmp(sig, 0, 8) == 0) {
    return load_png(path);
  }
  if (got >= 2 && sig[0] == 'P' && sig[1] == '6') {
    return load_ppm(path);
  }
  throw std::runtime_error("load_image: unsupported format (expect PNG or PPM P6): " +
                           path.string());
}

void save_image(const Image& img, const std::filesystem::path& path) {
  if (img.empty()) {
    throw std::invalid_argument("save_image: empty image");
  }
  FilePtr fp(std::fopen(path.string().c_str(), "wb"));
  if (!fp) {
    throw std::runtime_error("save_image: cannot open " + path.string() + " for writing");
  }

  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw std::runtime_error("save_image: libpng init failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw std::runtime_error("save_image: libpng init failed");
  }
  std::vector<unsigned char> rgb(static_cast<std::size_t>(img.height) * img.width * 3);
  std::vector<png_bytep> rows(img.height);
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw std::runtime_error("save_image: write failed: " + path.string());
  }

  png_init_io(png, fp.get());
  png_set_IHDR(png, info, img.width, img.height, 8, PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);

  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      unsigned char* px = &rgb[(static_cast<std::size_t>(y) * img.width + x) * 3];
      for (int c = 0; c < 3; ++c) {
        px[c] = static_cast<unsigned char>(quantize8(img.at(c, y, x)));
      }
    }
    rows[y] = rgb.data() + static_cast<std::size_t>(y) * img.width * 3;
  }
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);

  if (std::fflush(fp.get()) != 0) {
    throw std::runtime_error("save_image: flush failed: " + path.string());
  }
}

}  // namespace imrestore
