// Copyright 2026 The planarpx Authors
// SPDX-License-Identifier: Apache-2.0

#include "ppx/surface.hpp"

#include <array>
#include <cmath>

#include "ppx/parallel.hpp"

namespace ppx {

NormalField surface_normals(const DepthField& depth, const CameraIntrinsics& K,
                            int neighbor_offset) {
  K.validate();
  if (neighbor_offset < 1)
    throw ValidationError("surface_normals: neighbor offset must be >= 1");
  if (depth.width <= 2 * neighbor_offset || depth.height <= 2 * neighbor_offset)
    throw ValidationError("surface_normals: image too small for the stencil");

  const int n = neighbor_offset;
  // Neighbor pairs (axis-aligned and diagonal) whose difference vectors span
  // the local tangent plane.
  const std::array<std::array<int, 4>, 4> pairs = {{
      {{-n, 0, 0, -n}},  // left, up
      {{+n, 0, 0, +n}},  // right, down
      {{-n, -n, +n, -n}},  // up-left, up-right
      {{-n, +n, +n, +n}},  // down-left, down-right
  }};

  NormalField out(depth.width, depth.height);
  parallel_rows(depth.height, [&](int y) {
    for (int x = 0; x < depth.width; ++x) {
      if (x < n || y < n || x >= depth.width - n || y >= depth.height - n)
        continue;
      bool ok = depth.is_valid(x, y) && depth.at(x, y) > 0.0;
      for (int dy = -n; ok && dy <= n; dy += n)
        for (int dx = -n; ok && dx <= n; dx += n)
          ok = depth.is_valid(x + dx, y + dy) && depth.at(x + dx, y + dy) > 0.0;
      if (!ok) continue;

      const Eigen::Vector3d center = depth.at(x, y) * K.ray(x, y);
      auto neighbor = [&](int dx, int dy) {
        return depth.at(x + dx, y + dy) * K.ray(x + dx, y + dy) - center;
      };
      Eigen::Vector3d avg = Eigen::Vector3d::Zero();
      int used = 0;
      for (const auto& p : pairs) {
        const Eigen::Vector3d v1 = neighbor(p[0], p[1]);
        const Eigen::Vector3d v2 = neighbor(p[2], p[3]);
        Eigen::Vector3d cross = v1.cross(v2);
        const double len = cross.norm();
        if (len < 1e-300) continue;
        cross /= len;
        if (cross.dot(center) > 0.0) cross = -cross;  // face the camera
        avg += cross;
        ++used;
      }
      if (used == 0) continue;
      const double len = avg.norm();
      if (len < 1e-12) continue;
      avg /= len;
      out.set(x, y, avg.x(), avg.y(), avg.z());
    }
  });
  return out;
}

Mask flat_mask(const NormalField& normals,
               const Eigen::Vector3d& reference_normal, double tau) {
  if (!(tau > 0.0 && tau < 1.0))
    throw ValidationError("flat_mask: tau must be in (0,1)");
  const Eigen::Vector3d ref = reference_normal.normalized();
  Mask out(normals.width, normals.height);
  for (int y = 0; y < normals.height; ++y)
    for (int x = 0; x < normals.width; ++x) {
      if (!normals.valid.at(x, y)) continue;
      const double cos_sim = ref.x() * normals.component(x, y, 0) +
                             ref.y() * normals.component(x, y, 1) +
                             ref.z() * normals.component(x, y, 2);
      out.at(x, y) = std::abs(cos_sim) > tau ? 1 : 0;
    }
  return out;
}

Mask trapezoid_road_mask(int width, int height, const StructureField& gamma,
                         double gamma_tol) {
  if (!(gamma_tol > 0.0))
    throw ValidationError("trapezoid_road_mask: gamma tolerance must be > 0");
  if (gamma.width != width || gamma.height != height)
    throw ValidationError("trapezoid_road_mask: gamma size mismatch");
  const double v_top = 0.55 * height;
  const double v_bottom = height - 1.0;
  Mask out(width, height);
  for (int y = 0; y < height; ++y) {
    if (y < v_top) continue;
    const double t = v_bottom > v_top ? (y - v_top) / (v_bottom - v_top) : 1.0;
    const double left = (0.35 + t * (0.05 - 0.35)) * width;
    const double right = (0.65 + t * (0.95 - 0.65)) * width;
    for (int x = 0; x < width; ++x) {
      if (x < left || x > right) continue;
      if (!gamma.is_valid(x, y) || std::abs(gamma.at(x, y)) > gamma_tol)
        continue;
      out.at(x, y) = 1;
    }
  }
  return out;
}

}  // namespace ppx
