// Copyright 2026 The planarpx Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>

#include "ppx/field.hpp"
#include "ppx/geometry.hpp"

namespace ppx {

/// Per-pixel surface normal from a depth map: backproject the pixel and its
/// 8 neighbors at the given offset, average the normalized cross products
/// of the 4 neighbor-vector pairs, renormalize. Each cross product is
/// oriented toward the camera before averaging. Pixels whose stencil leaves
/// the image or touches invalid depth are invalid.
NormalField surface_normals(const DepthField& depth, const CameraIntrinsics& K,
                            int neighbor_offset = 2);

/// Flat-area test: |cos_sim(n(p), reference_normal)| > tau.
Mask flat_mask(const NormalField& normals,
               const Eigen::Vector3d& reference_normal, double tau);

/// Road-region prior: a trapezoid whose bottom edge spans
/// [0.05 W, 0.95 W] at the last row and whose top edge spans
/// [0.35 W, 0.65 W] at row 0.55 H, intersected with |gamma| <= gamma_tol.
Mask trapezoid_road_mask(int width, int height, const StructureField& gamma,
                         double gamma_tol = 0.05);

}  // namespace ppx
