// Copyright 2026 The planarpx Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>

#include "ppx/errors.hpp"

namespace ppx {

/// Pinhole camera. Pixel centers sit at integer coordinates; u grows right,
/// v grows down. Camera frame is x-right, y-down, z-forward.
struct CameraIntrinsics {
  double fx = 0.0;
  double fy = 0.0;
  double cx = 0.0;
  double cy = 0.0;
  int width = 0;
  int height = 0;

  Eigen::Matrix3d matrix() const;
  Eigen::Matrix3d inverse_matrix() const;

  /// Unnormalized ray through pixel (u,v): ((u-cx)/fx, (v-cy)/fy, 1).
  Eigen::Vector3d ray(double u, double v) const {
    return {(u - cx) / fx, (v - cy) / fy, 1.0};
  }

  void validate() const;
};

/// Rigid transform X' = R*X + T, translation in meters.
struct RigidPose {
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  Eigen::Vector3d translation = Eigen::Vector3d::Zero();

  Eigen::Vector3d apply(const Eigen::Vector3d& x) const {
    return rotation * x + translation;
  }
  void validate(double tol = 1e-9) const;
};

RigidPose compose_pose(const RigidPose& a, const RigidPose& b);  // b first, then a
RigidPose invert_pose(const RigidPose& pose);

/// Reference plane in a camera frame: {X : normal·X = height}. The unit
/// normal points from the camera toward the plane, so a level camera
/// mounted above the road has normal (0, 1, 0) and height = mounting
/// height in meters.
struct GroundPlane {
  Eigen::Vector3d normal = Eigen::Vector3d(0.0, 1.0, 0.0);
  double height = 1.65;

  void validate() const;
};

/// Re-expresses a plane given in frame A in frame B, where pose_a_to_b maps
/// A-coordinates to B-coordinates.
GroundPlane transform_plane(const GroundPlane& plane_a,
                            const RigidPose& pose_a_to_b);

/// 3x3 projective map on homogeneous pixel coordinates.
struct Homography {
  Eigen::Matrix3d matrix = Eigen::Matrix3d::Identity();

  Eigen::Vector2d apply(const Eigen::Vector2d& px) const;
  Homography inverse() const;
  /// Matrix scaled so the bottom-right entry is 1 (for comparisons).
  Eigen::Matrix3d normalized() const;
  void validate() const;
};

struct Epipole {
  double u = 0.0;
  double v = 0.0;
  bool at_infinity = false;
};

/// Plane-induced homography mapping source pixels of plane points to their
/// target pixels. pose_s_to_t maps source camera coordinates to target
/// camera coordinates; the plane is given in the target frame.
Homography plane_homography(const CameraIntrinsics& K,
                            const RigidPose& pose_s_to_t,
                            const GroundPlane& plane);

/// Image of the source camera center in the target view (the focus of
/// expansion). at_infinity is set when |T_z| < 1e-9; u,v then hold the
/// direction of the image point at infinity.
Epipole epipole(const CameraIntrinsics& K, const RigidPose& pose_s_to_t);

Eigen::Vector2d project(const CameraIntrinsics& K, const Eigen::Vector3d& point);
Eigen::Vector3d backproject(const CameraIntrinsics& K, const Eigen::Vector2d& px,
                            double depth);

}  // namespace ppx
