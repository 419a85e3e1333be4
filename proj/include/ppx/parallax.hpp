// Copyright 2026 The planarpx Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "ppx/field.hpp"
#include "ppx/geometry.hpp"

namespace ppx {

/// Flowscale from structure: S = (γ·a) / (1 − γ·a) with a = T_z / h_c.
/// Sign convention: the residual flow u_res = S·(p − e_t) is the
/// displacement from a target pixel to its warped-source position, so
/// backward sampling at p + u_res reconstructs the target. Pixels where the
/// denominator vanishes are invalid.
FlowScaleField flowscale_from_gamma(const StructureField& gamma, double t_z,
                                    const GroundPlane& plane);

/// Exact inverse of flowscale_from_gamma: γ = S/(S+1) · h_c/T_z.
StructureField gamma_from_flowscale(const FlowScaleField& flowscale, double t_z,
                                    const GroundPlane& plane);

/// u_res(p) = S(p) · (p − e_t). Requires a finite epipole.
ResidualFlowField residual_flow_from_flowscale(const FlowScaleField& flowscale,
                                               const Epipole& e_t);

struct FlowScaleProjection {
  FlowScaleField field;
  /// Magnitude of the flow component orthogonal to (p − e_t); zero for
  /// perfectly epipolar flow.
  ScalarField residual;
};

/// Least-squares scalar S per pixel so that S·(p − e_t) best matches u.
/// Pixels within epipole_radius of the epipole are invalid (the division is
/// ill-conditioned there).
FlowScaleProjection flowscale_from_residual_flow(const ResidualFlowField& u,
                                                 const Epipole& e_t,
                                                 double epipole_radius = 2.0);

/// D(p) = h_c / (γ(p) + N·(K⁻¹ p̃)). Non-positive denominators (rays above
/// the horizon with too-small γ) are per-pixel invalid.
DepthField depth_from_gamma(const StructureField& gamma,
                            const CameraIntrinsics& K, const GroundPlane& plane);

/// Exact inverse of depth_from_gamma: γ = h_c/D − N·(K⁻¹ p̃).
StructureField gamma_from_depth(const DepthField& depth,
                                const CameraIntrinsics& K,
                                const GroundPlane& plane);

struct BinnedFlowScale {
  FlowScaleField field;
  long clamped = 0;  // inputs outside [0,1], clamped with a warning count
};

/// Affine map of a unit-interval raw field onto [f_min, f_max].
BinnedFlowScale bin_flowscale(const ScalarField& raw, double f_min, double f_max);

/// Inverse of bin_flowscale back to the unit interval.
ScalarField unbin_flowscale(const FlowScaleField& flowscale);

/// Keeps pixels where the flow-implied source coordinate (mapped through
/// the inverse plane homography) and the depth-reprojected source
/// coordinate agree within eps_px pixels.
Mask certainty_mask(const ResidualFlowField& u_res, const DepthField& depth_pp,
                    const CameraIntrinsics& K, const RigidPose& pose_t_to_s,
                    const GroundPlane& plane, double eps_px = 5.0);

}  // namespace ppx
