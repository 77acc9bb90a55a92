#pragma once

// Planar RGB raster with real-valued samples in [0,1]. The shared currency of
// every pipeline: tiling, degradation, metrics and the networks all consume
// and produce this type.

#include <Eigen/Core>

#include <cstdint>
#include <stdexcept>
#include <utility>

namespace imrestore {

template <typename ScalarT>
struct ImageT {
  using Scalar = ScalarT;
  using Plane = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  using Flat = Eigen::Array<Scalar, Eigen::Dynamic, 1>;
  using PlaneMap = Eigen::Map<Plane>;
  using ConstPlaneMap = Eigen::Map<const Plane>;

  static constexpr int channels = 3;

  int height = 0;
  int width = 0;
  Flat data;  // channel-major planes, each row-major: ((c*H)+y)*W + x

  ImageT() = default;

  ImageT(int h, int w) : height(h), width(w) {
    if (h < 1 || w < 1) {
      throw std::invalid_argument("ImageT: dimensions must be >= 1");
    }
    data = Flat::Zero(static_cast<Eigen::Index>(channels) * h * w);
  }

  static ImageT constant(int h, int w, Scalar value) {
    ImageT img(h, w);
    img.data.setConstant(value);
    return img;
  }

  Eigen::Index size() const { return data.size(); }
  bool empty() const { return data.size() == 0; }
  bool same_shape(const ImageT& other) const {
    return height == other.height && width == other.width;
  }

  PlaneMap plane(int c) {
    return PlaneMap(data.data() + static_cast<std::ptrdiff_t>(c) * height * width, height, width);
  }
  ConstPlaneMap plane(int c) const {
    return ConstPlaneMap(data.data() + static_cast<std::ptrdiff_t>(c) * height * width, height,
                         width);
  }

  // Canonical sample index used by counter-based noise: depends only on the
  // pixel's (c, y, x) position and the raster dimensions.
  static std::int64_t canonical_index(int c, int y, int x, int h, int w) {
    return (static_cast<std::int64_t>(c) * h + y) * w + x;
  }
  std::int64_t index(int c, int y, int x) const { return canonical_index(c, y, x, height, width); }

  Scalar& at(int c, int y, int x) { return data[index(c, y, x)]; }
  Scalar at(int c, int y, int x) const { return data[index(c, y, x)]; }
};

using Image = ImageT<double>;

// Maps every sample to min(max(v, 0), 1). Idempotent and order-preserving.
template <typename Scalar>
ImageT<Scalar> clamp_unit(ImageT<Scalar> img) {
  img.data = img.data.max(Scalar(0)).min(Scalar(1));
  return img;
}

// Crops to the top-left h x w region. Requires 1 <= h <= height, same for w.
template <typename Scalar>
ImageT<Scalar> crop(const ImageT<Scalar>& img, int h, int w) {
  if (h < 1 || w < 1 || h > img.height || w > img.width) {
    throw std::invalid_argument("crop: target size out of range");
  }
  ImageT<Scalar> out(h, w);
  for (int c = 0; c < ImageT<Scalar>::channels; ++c) {
    out.plane(c) = img.plane(c).topLeftCorner(h, w);
  }
  return out;
}

}  // namespace imrestore
