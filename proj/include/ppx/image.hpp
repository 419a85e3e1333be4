// Copyright 2026 The planarpx Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "ppx/errors.hpp"

namespace ppx {

/// Row-major interleaved intensity buffer, values in [0,1], 1 or 3 channels.
struct ImageBuffer {
  int width = 0;
  int height = 0;
  int channels = 1;
  std::vector<double> data;

  ImageBuffer() = default;
  ImageBuffer(int w, int h, int c, double fill = 0.0)
      : width(w), height(h), channels(c),
        data(static_cast<size_t>(w) * h * c, fill) {}

  double& at(int x, int y, int c = 0) {
    return data[(static_cast<size_t>(y) * width + x) * channels + c];
  }
  double at(int x, int y, int c = 0) const {
    return data[(static_cast<size_t>(y) * width + x) * channels + c];
  }

  bool same_shape(const ImageBuffer& other) const {
    return width == other.width && height == other.height &&
           channels == other.channels;
  }

  void validate() const {
    if (channels != 1 && channels != 3)
      throw ValidationError("image: channels must be 1 or 3");
    if (data.size() != static_cast<size_t>(width) * height * channels)
      throw ValidationError("image: data size does not match dimensions");
    for (double v : data)
      if (!std::isfinite(v)) throw ValidationError("image: non-finite value");
  }
};

/// Per-pixel 0/1 mask.
struct Mask {
  int width = 0;
  int height = 0;
  std::vector<uint8_t> data;

  Mask() = default;
  Mask(int w, int h, uint8_t fill = 0)
      : width(w), height(h), data(static_cast<size_t>(w) * h, fill) {}

  uint8_t& at(int x, int y) { return data[static_cast<size_t>(y) * width + x]; }
  uint8_t at(int x, int y) const {
    return data[static_cast<size_t>(y) * width + x];
  }

  long count() const {
    long n = 0;
    for (uint8_t v : data) n += (v != 0);
    return n;
  }
  bool same_shape(const Mask& other) const {
    return width == other.width && height == other.height;
  }
};

inline Mask mask_and(const Mask& a, const Mask& b) {
  if (!a.same_shape(b)) throw ValidationError("mask_and: shape mismatch");
  Mask out(a.width, a.height);
  for (size_t i = 0; i < out.data.size(); ++i)
    out.data[i] = (a.data[i] && b.data[i]) ? 1 : 0;
  return out;
}

}  // namespace ppx
