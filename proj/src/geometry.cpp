// Copyright 2026 The planarpx Authors
// SPDX-License-Identifier: Apache-2.0

#include "ppx/geometry.hpp"

#include <cmath>

namespace ppx {

Eigen::Matrix3d CameraIntrinsics::matrix() const {
  Eigen::Matrix3d K;
  K << fx, 0.0, cx, 0.0, fy, cy, 0.0, 0.0, 1.0;
  return K;
}

Eigen::Matrix3d CameraIntrinsics::inverse_matrix() const {
  Eigen::Matrix3d Ki;
  Ki << 1.0 / fx, 0.0, -cx / fx, 0.0, 1.0 / fy, -cy / fy, 0.0, 0.0, 1.0;
  return Ki;
}

void CameraIntrinsics::validate() const {
  if (!(fx > 0.0) || !(fy > 0.0))
    throw ValidationError("invalid intrinsics: focal lengths must be positive");
  if (width <= 0 || height <= 0)
    throw ValidationError("invalid intrinsics: image size must be positive");
  if (!(cx >= 0.0 && cx < width) || !(cy >= 0.0 && cy < height))
    throw ValidationError("invalid intrinsics: principal point outside image");
}

void RigidPose::validate(double tol) const {
  const Eigen::Matrix3d err =
      rotation.transpose() * rotation - Eigen::Matrix3d::Identity();
  if (err.cwiseAbs().maxCoeff() > tol)
    throw ValidationError("invalid pose: rotation is not orthonormal");
  if (std::abs(rotation.determinant() - 1.0) > tol)
    throw ValidationError("invalid pose: rotation determinant is not +1");
  if (!translation.allFinite())
    throw ValidationError("invalid pose: non-finite translation");
}

RigidPose compose_pose(const RigidPose& a, const RigidPose& b) {
  RigidPose out;
  out.rotation = a.rotation * b.rotation;
  out.translation = a.rotation * b.translation + a.translation;
  return out;
}

RigidPose invert_pose(const RigidPose& pose) {
  RigidPose out;
  out.rotation = pose.rotation.transpose();
  out.translation = -(pose.rotation.transpose() * pose.translation);
  return out;
}

void GroundPlane::validate() const {
  if (std::abs(normal.norm() - 1.0) > 1e-12)
    throw ValidationError("invalid plane: normal must be a unit vector");
  if (!(height > 0.0))
    throw ValidationError("invalid plane: height must be positive");
}

GroundPlane transform_plane(const GroundPlane& plane_a,
                            const RigidPose& pose_a_to_b) {
  // N_a·X_a = h  ==>  (R N_a)·X_b = h + (R N_a)·T  with X_b = R X_a + T.
  GroundPlane out;
  out.normal = pose_a_to_b.rotation * plane_a.normal;
  out.height = plane_a.height + out.normal.dot(pose_a_to_b.translation);
  return out;
}

Eigen::Vector2d Homography::apply(const Eigen::Vector2d& px) const {
  const Eigen::Vector3d h = matrix * Eigen::Vector3d(px.x(), px.y(), 1.0);
  return {h.x() / h.z(), h.y() / h.z()};
}

Homography Homography::inverse() const {
  validate();
  return Homography{matrix.inverse()};
}

Eigen::Matrix3d Homography::normalized() const {
  const double w = matrix(2, 2);
  if (std::abs(w) < 1e-300)
    throw ValidationError("homography cannot be normalized: zero corner");
  return matrix / w;
}

void Homography::validate() const {
  if (std::abs(matrix.determinant()) <= 1e-12)
    throw ValidationError("homography is singular");
}

Homography plane_homography(const CameraIntrinsics& K,
                            const RigidPose& pose_s_to_t,
                            const GroundPlane& plane) {
  K.validate();
  plane.validate();
  // The plane N·X_t = h re-expressed in the source frame is n_s·X_s = c_s
  // with n_s = RᵀN and c_s = h − N·T. Points on it satisfy
  // X_t = (R + T n_sᵀ / c_s) X_s, which is exact for any pose.
  const Eigen::Vector3d n_s = pose_s_to_t.rotation.transpose() * plane.normal;
  const double c_s = plane.height - plane.normal.dot(pose_s_to_t.translation);
  if (std::abs(c_s) < 1e-12)
    throw ValidationError("plane homography: source camera lies on the plane");
  const Eigen::Matrix3d core =
      pose_s_to_t.rotation +
      pose_s_to_t.translation * (n_s.transpose() / c_s);
  return Homography{K.matrix() * core * K.inverse_matrix()};
}

Epipole epipole(const CameraIntrinsics& K, const RigidPose& pose_s_to_t) {
  K.validate();
  const Eigen::Vector3d t = K.matrix() * pose_s_to_t.translation;
  Epipole e;
  if (std::abs(pose_s_to_t.translation.z()) < 1e-9) {
    e.at_infinity = true;
    const double n = std::hypot(t.x(), t.y());
    e.u = n > 0.0 ? t.x() / n : 0.0;
    e.v = n > 0.0 ? t.y() / n : 0.0;
    return e;
  }
  e.u = t.x() / t.z();
  e.v = t.y() / t.z();
  return e;
}

Eigen::Vector2d project(const CameraIntrinsics& K, const Eigen::Vector3d& point) {
  if (!(point.z() > 0.0))
    throw ValidationError("project: point is not in front of the camera");
  return {K.fx * point.x() / point.z() + K.cx,
          K.fy * point.y() / point.z() + K.cy};
}

Eigen::Vector3d backproject(const CameraIntrinsics& K, const Eigen::Vector2d& px,
                            double depth) {
  if (!(depth > 0.0)) throw ValidationError("backproject: depth must be positive");
  return depth * K.ray(px.x(), px.y());
}

}  // namespace ppx
