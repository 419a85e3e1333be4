// Copyright 2026 The planarpx Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "ppx/field.hpp"
#include "ppx/geometry.hpp"
#include "ppx/image.hpp"

namespace ppx {

/// Per-output-pixel source coordinates for bilinear sampling. Coordinates
/// outside [0, W-1] x [0, H-1] are invalid (a 1e-9 slack is allowed at the
/// far border and treated as an edge sample).
struct SampleGrid {
  int width = 0;
  int height = 0;
  std::vector<double> uv;  // interleaved
  Mask valid;

  SampleGrid() = default;
  SampleGrid(int w, int h)
      : width(w), height(h), uv(static_cast<size_t>(w) * h * 2, 0.0),
        valid(w, h, 1) {}

  void set(int x, int y, double u, double v, bool ok = true) {
    const size_t i = (static_cast<size_t>(y) * width + x) * 2;
    uv[i] = u;
    uv[i + 1] = v;
    valid.at(x, y) = ok ? 1 : 0;
  }
  double u(int x, int y) const {
    return uv[(static_cast<size_t>(y) * width + x) * 2];
  }
  double v(int x, int y) const {
    return uv[(static_cast<size_t>(y) * width + x) * 2 + 1];
  }
};

struct SampledImage {
  ImageBuffer image;
  Mask valid;
};

SampleGrid identity_grid(int width, int height);

/// True when (u,v) may be bilinearly sampled from a width x height image.
bool grid_coordinate_in_bounds(double u, double v, int width, int height);

/// Each output pixel is the bilinear interpolation of the 4 source
/// neighbors of its grid coordinate; out-of-bounds or invalid grid entries
/// produce 0 with validity false.
SampledImage bilinear_sample(const ImageBuffer& image, const SampleGrid& grid);

/// Backward warp: output pixel p samples the source at H^-1 * p, so plane
/// content lines up with the target view when H is the plane-induced
/// homography mapping source pixels to target pixels.
SampledImage warp_by_homography(const ImageBuffer& source, const Homography& H);
SampleGrid grid_from_homography(int width, int height, const Homography& H);

/// View synthesis by depth: backproject each target pixel with its depth,
/// move it through pose_t_to_s, project into the source image, sample.
/// Pixels whose transformed point lies behind the source camera are invalid.
SampledImage synthesize_from_depth(const ImageBuffer& source,
                                   const DepthField& depth_t,
                                   const CameraIntrinsics& K,
                                   const RigidPose& pose_t_to_s);
SampleGrid grid_from_depth(const DepthField& depth_t, const CameraIntrinsics& K,
                           const RigidPose& pose_t_to_s);

/// View synthesis by residual flow: output pixel p samples the
/// homography-warped source at p + u_res(p).
SampledImage synthesize_from_residual_flow(const ImageBuffer& warped_source,
                                           const ResidualFlowField& u_res);
SampleGrid grid_from_residual_flow(const ResidualFlowField& u_res);

}  // namespace ppx
