// Copyright 2026 The planarpx Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "ppx/image.hpp"

namespace ppx {

/// Per-pixel scalar map with a validity mask. Invalid pixels hold 0, never
/// NaN; validity propagates through every conversion as a conjunction.
struct ScalarField {
  int width = 0;
  int height = 0;
  std::vector<double> values;
  Mask valid;

  ScalarField() = default;
  ScalarField(int w, int h, double fill = 0.0, uint8_t valid_fill = 1)
      : width(w), height(h), values(static_cast<size_t>(w) * h, fill),
        valid(w, h, valid_fill) {}

  double& at(int x, int y) { return values[static_cast<size_t>(y) * width + x]; }
  double at(int x, int y) const {
    return values[static_cast<size_t>(y) * width + x];
  }
  bool is_valid(int x, int y) const { return valid.at(x, y) != 0; }
  void set(int x, int y, double v, bool ok = true) {
    values[static_cast<size_t>(y) * width + x] = ok ? v : 0.0;
    valid.at(x, y) = ok ? 1 : 0;
  }
  bool same_shape(const ScalarField& o) const {
    return width == o.width && height == o.height;
  }
};

/// Per-pixel 2-vector map (pixels), e.g. residual flow.
struct VectorField {
  int width = 0;
  int height = 0;
  std::vector<double> xy;  // interleaved u,v
  Mask valid;

  VectorField() = default;
  VectorField(int w, int h)
      : width(w), height(h), xy(static_cast<size_t>(w) * h * 2, 0.0),
        valid(w, h, 1) {}

  double& x(int px, int py) { return xy[(static_cast<size_t>(py) * width + px) * 2]; }
  double x(int px, int py) const {
    return xy[(static_cast<size_t>(py) * width + px) * 2];
  }
  double& y(int px, int py) {
    return xy[(static_cast<size_t>(py) * width + px) * 2 + 1];
  }
  double y(int px, int py) const {
    return xy[(static_cast<size_t>(py) * width + px) * 2 + 1];
  }
  bool is_valid(int px, int py) const { return valid.at(px, py) != 0; }
};

/// Per-pixel unit 3-vector map (camera frame), invalid on borders where the
/// neighbor stencil does not fit.
struct NormalField {
  int width = 0;
  int height = 0;
  std::vector<double> xyz;
  Mask valid;

  NormalField() = default;
  NormalField(int w, int h)
      : width(w), height(h), xyz(static_cast<size_t>(w) * h * 3, 0.0),
        valid(w, h, 0) {}

  double component(int x, int y, int c) const {
    return xyz[(static_cast<size_t>(y) * width + x) * 3 + c];
  }
  void set(int x, int y, double nx, double ny, double nz, bool ok = true) {
    const size_t i = (static_cast<size_t>(y) * width + x) * 3;
    xyz[i] = ok ? nx : 0.0;
    xyz[i + 1] = ok ? ny : 0.0;
    xyz[i + 2] = ok ? nz : 0.0;
    valid.at(x, y) = ok ? 1 : 0;
  }
};

using DepthField = ScalarField;      // meters, positive where valid
using StructureField = ScalarField;  // height-to-depth ratio, 0 on the plane
using ResidualFlowField = VectorField;

/// Epipolar flow multiplier per pixel, plus the bin bounds used when the
/// field came from a unit-interval binning.
struct FlowScaleField {
  ScalarField values;
  double f_min = -100.0;
  double f_max = 100.0;
};

}  // namespace ppx
