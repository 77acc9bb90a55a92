#pragma once

// File-boundary codecs. Samples are 8-bit on disk and real [0,1] in memory:
// load divides by 255, save multiplies by 255 and rounds half away from zero.
// Reads PNG (gray/palette/alpha promoted or stripped to RGB) and binary PPM
// (P6, maxval 255); writes 8-bit RGB PNG.

#include <filesystem>
#include <string>

#include "imrestore/image.hpp"

namespace imrestore {

Image load_image(const std::filesystem::path& path);
void save_image(const Image& img, const std::filesystem::path& path);

// 8-bit quantization used at the save boundary: round(v*255) half away from
// zero, clamped to [0,255].
int quantize8(double v);

}  // namespace imrestore
