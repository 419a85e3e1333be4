// Copyright 2026 The planarpx Authors
// SPDX-License-Identifier: Apache-2.0

#include "ppx/sampling.hpp"

#include <algorithm>
#include <cmath>

#include "ppx/parallel.hpp"

namespace ppx {

namespace {
constexpr double kBorderSlack = 1e-9;
}

SampleGrid identity_grid(int width, int height) {
  SampleGrid grid(width, height);
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x)
      grid.set(x, y, static_cast<double>(x), static_cast<double>(y));
  return grid;
}

bool grid_coordinate_in_bounds(double u, double v, int width, int height) {
  return u >= 0.0 && v >= 0.0 && u <= width - 1 + kBorderSlack &&
         v <= height - 1 + kBorderSlack;
}

SampledImage bilinear_sample(const ImageBuffer& image, const SampleGrid& grid) {
  if (grid.width <= 0 || grid.height <= 0)
    throw ValidationError("bilinear_sample: empty grid");
  SampledImage out;
  out.image = ImageBuffer(grid.width, grid.height, image.channels);
  out.valid = Mask(grid.width, grid.height);
  const int sw = image.width;
  const int sh = image.height;
  parallel_rows(grid.height, [&](int y) {
    for (int x = 0; x < grid.width; ++x) {
      if (!grid.valid.at(x, y)) continue;
      const double u = grid.u(x, y);
      const double v = grid.v(x, y);
      if (!grid_coordinate_in_bounds(u, v, sw, sh)) continue;
      // Keep the anchor one pixel inside so the far border interpolates
      // between the last two columns/rows with weight 1 on the edge.
      const int x0 = std::min(static_cast<int>(std::floor(u)), sw - 2);
      const int y0 = std::min(static_cast<int>(std::floor(v)), sh - 2);
      const int xa = std::max(x0, 0);
      const int ya = std::max(y0, 0);
      const double du = std::clamp(u - xa, 0.0, 1.0);
      const double dv = std::clamp(v - ya, 0.0, 1.0);
      const int xb = std::min(xa + 1, sw - 1);
      const int yb = std::min(ya + 1, sh - 1);
      for (int c = 0; c < image.channels; ++c) {
        const double v00 = image.at(xa, ya, c);
        const double v10 = image.at(xb, ya, c);
        const double v01 = image.at(xa, yb, c);
        const double v11 = image.at(xb, yb, c);
        out.image.at(x, y, c) = (1.0 - dv) * ((1.0 - du) * v00 + du * v10) +
                                dv * ((1.0 - du) * v01 + du * v11);
      }
      out.valid.at(x, y) = 1;
    }
  });
  return out;
}

SampleGrid grid_from_homography(int width, int height, const Homography& H) {
  const Homography Hinv = H.inverse();
  SampleGrid grid(width, height);
  parallel_rows(height, [&](int y) {
    for (int x = 0; x < width; ++x) {
      const Eigen::Vector3d h =
          Hinv.matrix * Eigen::Vector3d(static_cast<double>(x),
                                        static_cast<double>(y), 1.0);
      if (std::abs(h.z()) < 1e-12) {
        grid.set(x, y, 0.0, 0.0, false);
        continue;
      }
      const double u = h.x() / h.z();
      const double v = h.y() / h.z();
      grid.set(x, y, u, v, grid_coordinate_in_bounds(u, v, width, height));
    }
  });
  return grid;
}

SampledImage warp_by_homography(const ImageBuffer& source, const Homography& H) {
  return bilinear_sample(source,
                         grid_from_homography(source.width, source.height, H));
}

SampleGrid grid_from_depth(const DepthField& depth_t, const CameraIntrinsics& K,
                           const RigidPose& pose_t_to_s) {
  K.validate();
  SampleGrid grid(depth_t.width, depth_t.height);
  parallel_rows(depth_t.height, [&](int y) {
    for (int x = 0; x < depth_t.width; ++x) {
      if (!depth_t.is_valid(x, y) || !(depth_t.at(x, y) > 0.0)) {
        grid.set(x, y, 0.0, 0.0, false);
        continue;
      }
      const Eigen::Vector3d p_t = depth_t.at(x, y) * K.ray(x, y);
      const Eigen::Vector3d p_s = pose_t_to_s.apply(p_t);
      if (!(p_s.z() > 0.0)) {
        grid.set(x, y, 0.0, 0.0, false);
        continue;
      }
      const double u = K.fx * p_s.x() / p_s.z() + K.cx;
      const double v = K.fy * p_s.y() / p_s.z() + K.cy;
      grid.set(x, y, u, v,
               grid_coordinate_in_bounds(u, v, depth_t.width, depth_t.height));
    }
  });
  return grid;
}

SampledImage synthesize_from_depth(const ImageBuffer& source,
                                   const DepthField& depth_t,
                                   const CameraIntrinsics& K,
                                   const RigidPose& pose_t_to_s) {
  return bilinear_sample(source, grid_from_depth(depth_t, K, pose_t_to_s));
}

SampleGrid grid_from_residual_flow(const ResidualFlowField& u_res) {
  SampleGrid grid(u_res.width, u_res.height);
  for (int y = 0; y < u_res.height; ++y)
    for (int x = 0; x < u_res.width; ++x) {
      const double u = x + u_res.x(x, y);
      const double v = y + u_res.y(x, y);
      grid.set(x, y, u, v,
               u_res.is_valid(x, y) &&
                   grid_coordinate_in_bounds(u, v, u_res.width, u_res.height));
    }
  return grid;
}

SampledImage synthesize_from_residual_flow(const ImageBuffer& warped_source,
                                           const ResidualFlowField& u_res) {
  if (warped_source.width != u_res.width ||
      warped_source.height != u_res.height)
    throw ValidationError("synthesize_from_residual_flow: size mismatch");
  return bilinear_sample(warped_source, grid_from_residual_flow(u_res));
}

}  // namespace ppx
