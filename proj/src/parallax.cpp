// Copyright 2026 The planarpx Authors
// SPDX-License-Identifier: Apache-2.0

#include "ppx/parallax.hpp"

#include <atomic>
#include <cmath>

#include "ppx/parallel.hpp"

namespace ppx {

namespace {
constexpr double kDegenerateBaseline = 1e-9;
constexpr double kDenominatorFloor = 1e-9;

void require_baseline(double t_z) {
  if (std::abs(t_z) < kDegenerateBaseline)
    throw ValidationError("degenerate baseline: |T_z| is too small");
}
}  // namespace

FlowScaleField flowscale_from_gamma(const StructureField& gamma, double t_z,
                                    const GroundPlane& plane) {
  require_baseline(t_z);
  plane.validate();
  const double a = t_z / plane.height;
  FlowScaleField out;
  out.values = ScalarField(gamma.width, gamma.height);
  parallel_rows(gamma.height, [&](int y) {
    for (int x = 0; x < gamma.width; ++x) {
      if (!gamma.is_valid(x, y)) {
        out.values.set(x, y, 0.0, false);
        continue;
      }
      const double ga = gamma.at(x, y) * a;
      const double denom = 1.0 - ga;
      if (std::abs(denom) < kDenominatorFloor) {
        out.values.set(x, y, 0.0, false);
        continue;
      }
      out.values.set(x, y, ga / denom);
    }
  });
  return out;
}

StructureField gamma_from_flowscale(const FlowScaleField& flowscale, double t_z,
                                    const GroundPlane& plane) {
  require_baseline(t_z);
  plane.validate();
  const ScalarField& s = flowscale.values;
  StructureField out(s.width, s.height);
  parallel_rows(s.height, [&](int y) {
    for (int x = 0; x < s.width; ++x) {
      if (!s.is_valid(x, y)) {
        out.set(x, y, 0.0, false);
        continue;
      }
      const double sv = s.at(x, y);
      if (std::abs(sv + 1.0) < kDenominatorFloor) {
        out.set(x, y, 0.0, false);
        continue;
      }
      out.set(x, y, sv / (sv + 1.0) * plane.height / t_z);
    }
  });
  return out;
}

ResidualFlowField residual_flow_from_flowscale(const FlowScaleField& flowscale,
                                               const Epipole& e_t) {
  if (e_t.at_infinity)
    throw ValidationError(
        "residual flow needs a finite epipole (T_z must not vanish)");
  const ScalarField& s = flowscale.values;
  ResidualFlowField out(s.width, s.height);
  parallel_rows(s.height, [&](int y) {
    for (int x = 0; x < s.width; ++x) {
      if (!s.is_valid(x, y)) {
        out.x(x, y) = 0.0;
        out.y(x, y) = 0.0;
        out.valid.at(x, y) = 0;
        continue;
      }
      const double sv = s.at(x, y);
      out.x(x, y) = sv * (x - e_t.u);
      out.y(x, y) = sv * (y - e_t.v);
      out.valid.at(x, y) = 1;
    }
  });
  return out;
}

FlowScaleProjection flowscale_from_residual_flow(const ResidualFlowField& u,
                                                 const Epipole& e_t,
                                                 double epipole_radius) {
  if (e_t.at_infinity)
    throw ValidationError("flowscale projection needs a finite epipole");
  FlowScaleProjection out;
  out.field.values = ScalarField(u.width, u.height);
  out.residual = ScalarField(u.width, u.height);
  const double r2 = epipole_radius * epipole_radius;
  parallel_rows(u.height, [&](int y) {
    for (int x = 0; x < u.width; ++x) {
      const double dx = x - e_t.u;
      const double dy = y - e_t.v;
      const double d2 = dx * dx + dy * dy;
      if (!u.is_valid(x, y) || d2 <= r2) {
        out.field.values.set(x, y, 0.0, false);
        out.residual.set(x, y, 0.0, false);
        continue;
      }
      const double s = (u.x(x, y) * dx + u.y(x, y) * dy) / d2;
      const double rx = u.x(x, y) - s * dx;
      const double ry = u.y(x, y) - s * dy;
      out.field.values.set(x, y, s);
      out.residual.set(x, y, std::hypot(rx, ry));
    }
  });
  return out;
}

DepthField depth_from_gamma(const StructureField& gamma,
                            const CameraIntrinsics& K, const GroundPlane& plane) {
  K.validate();
  plane.validate();
  DepthField out(gamma.width, gamma.height);
  parallel_rows(gamma.height, [&](int y) {
    for (int x = 0; x < gamma.width; ++x) {
      if (!gamma.is_valid(x, y)) {
        out.set(x, y, 0.0, false);
        continue;
      }
      const double denom = gamma.at(x, y) + plane.normal.dot(K.ray(x, y));
      if (!(denom > kDenominatorFloor)) {
        out.set(x, y, 0.0, false);
        continue;
      }
      out.set(x, y, plane.height / denom);
    }
  });
  return out;
}

StructureField gamma_from_depth(const DepthField& depth,
                                const CameraIntrinsics& K,
                                const GroundPlane& plane) {
  K.validate();
  plane.validate();
  StructureField out(depth.width, depth.height);
  parallel_rows(depth.height, [&](int y) {
    for (int x = 0; x < depth.width; ++x) {
      if (!depth.is_valid(x, y) || !(depth.at(x, y) > 0.0)) {
        out.set(x, y, 0.0, false);
        continue;
      }
      out.set(x, y,
              plane.height / depth.at(x, y) - plane.normal.dot(K.ray(x, y)));
    }
  });
  return out;
}

BinnedFlowScale bin_flowscale(const ScalarField& raw, double f_min,
                              double f_max) {
  if (!(f_min < f_max))
    throw ValidationError("bin_flowscale: f_min must be below f_max");
  BinnedFlowScale out;
  out.field.f_min = f_min;
  out.field.f_max = f_max;
  out.field.values = ScalarField(raw.width, raw.height);
  std::atomic<long> clamped{0};
  parallel_rows(raw.height, [&](int y) {
    long row_clamped = 0;
    for (int x = 0; x < raw.width; ++x) {
      if (!raw.is_valid(x, y)) {
        out.field.values.set(x, y, 0.0, false);
        continue;
      }
      double r = raw.at(x, y);
      if (r < 0.0 || r > 1.0) {
        r = std::clamp(r, 0.0, 1.0);
        ++row_clamped;
      }
      out.field.values.set(x, y, f_min + r * (f_max - f_min));
    }
    clamped.fetch_add(row_clamped, std::memory_order_relaxed);
  });
  out.clamped = clamped.load();
  return out;
}

ScalarField unbin_flowscale(const FlowScaleField& flowscale) {
  const ScalarField& s = flowscale.values;
  ScalarField out(s.width, s.height);
  const double span = flowscale.f_max - flowscale.f_min;
  for (int y = 0; y < s.height; ++y)
    for (int x = 0; x < s.width; ++x)
      out.set(x, y, (s.at(x, y) - flowscale.f_min) / span, s.is_valid(x, y));
  return out;
}

Mask certainty_mask(const ResidualFlowField& u_res, const DepthField& depth_pp,
                    const CameraIntrinsics& K, const RigidPose& pose_t_to_s,
                    const GroundPlane& plane, double eps_px) {
  if (!(eps_px > 0.0)) throw ValidationError("certainty mask: eps must be > 0");
  if (u_res.width != depth_pp.width || u_res.height != depth_pp.height)
    throw ValidationError("certainty mask: flow/depth size mismatch");
  const Homography H =
      plane_homography(K, invert_pose(pose_t_to_s), plane);
  const Eigen::Matrix3d Hinv = H.inverse().matrix;
  Mask out(u_res.width, u_res.height);
  parallel_rows(u_res.height, [&](int y) {
    for (int x = 0; x < u_res.width; ++x) {
      if (!u_res.is_valid(x, y) || !depth_pp.is_valid(x, y) ||
          !(depth_pp.at(x, y) > 0.0))
        continue;
      // Flow-implied coordinate lives in the warped-source frame; map it
      // back through the homography to compare in raw source pixels.
      const Eigen::Vector3d q =
          Hinv * Eigen::Vector3d(x + u_res.x(x, y), y + u_res.y(x, y), 1.0);
      if (std::abs(q.z()) < 1e-12) continue;
      const double fu = q.x() / q.z();
      const double fv = q.y() / q.z();
      const Eigen::Vector3d p_s =
          pose_t_to_s.apply(depth_pp.at(x, y) * K.ray(x, y));
      if (!(p_s.z() > 0.0)) continue;
      const double du = K.fx * p_s.x() / p_s.z() + K.cx;
      const double dv = K.fy * p_s.y() / p_s.z() + K.cy;
      const double diff = std::hypot(fu - du, fv - dv);
      out.at(x, y) = diff <= eps_px ? 1 : 0;
    }
  });
  return out;
}

}  // namespace ppx
