// Copyright 2026 The planarpx Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <span>
#include <string>
#include <vector>

#include "ppx/field.hpp"
#include "ppx/geometry.hpp"

namespace ppx {

struct PlaneFit {
  GroundPlane plane;          // camera-frame plane, height = camera distance
  double inlier_ratio = 0.0;  // over the points actually supplied
  int iterations = 0;
};

struct RansacParams {
  int iterations = 200;
  double inlier_tol = 0.033;  // meters; 0.02 x a nominal 1.65 m mount
  uint64_t seed = 0;
};

/// RANSAC plane fit: best 3-point hypothesis by inlier count, then a
/// least-squares refit on the inliers. Deterministic given the seed.
PlaneFit fit_plane_ransac(std::span<const Eigen::Vector3d> points,
                          const RansacParams& params = {});

enum class HeightMethod { median, ransac };
HeightMethod parse_height_method(const std::string& name);
std::string to_string(HeightMethod method);

struct HeightEstimate {
  double h_pred = 0.0;
  HeightMethod method = HeightMethod::median;
  double inlier_ratio = -1.0;  // ransac only
  int iterations = 0;          // ransac only
};

/// Camera height implied by a depth map over flat-mask pixels. median: the
/// median of per-pixel heights reference_normal · P (P backprojected);
/// ransac: the camera-to-plane distance of a RANSAC fit over the
/// backprojected flat pixels.
HeightEstimate camera_height_from_depth(
    const DepthField& depth, const CameraIntrinsics& K, const Mask& flat,
    HeightMethod method,
    const Eigen::Vector3d& reference_normal = Eigen::Vector3d(0, 1, 0),
    const RansacParams& params = {});

struct ScaleEstimate {
  double scale = 1.0;  // h_pred / h_true
  double h_pred = 0.0;
  double h_true = 0.0;
  HeightMethod method = HeightMethod::median;
};

/// Divides the depth map by scale = h_pred/h_true so the corrected map's
/// inferred camera height equals h_true.
DepthField recover_and_apply_scale(const DepthField& depth, double h_pred,
                                   double h_true);

}  // namespace ppx
