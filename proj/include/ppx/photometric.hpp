// Copyright 2026 The planarpx Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "ppx/field.hpp"
#include "ppx/image.hpp"

namespace ppx {

struct PhotometricParams {
  double alpha = 0.85;      // SSIM weight in pe
  int ssim_window = 3;      // odd, >= 3; uniform window, reflect padding
  double c1 = 0.01 * 0.01;  // SSIM stabilizers on [0,1] intensities
  double c2 = 0.03 * 0.03;

  void validate() const;
};

/// Scalar loss plus its per-pixel contribution map. For mean-form losses
/// value = sum(map)/count; for sum-form losses (mean_normalized == false)
/// value = sum(map). count == 0 sets empty_mask and value 0.
struct LossReport {
  double value = 0.0;
  ScalarField contributions;
  long count = 0;
  bool empty_mask = false;
  bool mean_normalized = true;
};

/// Per-pixel SSIM in [-1, 1], channel-averaged, local statistics over a
/// ssim_window box with reflect padding.
ScalarField ssim_map(const ImageBuffer& a, const ImageBuffer& b,
                     const PhotometricParams& params = {});

/// pe = (alpha/2)(1 - SSIM) + (1 - alpha)|a - b|, channel-averaged, clamped
/// at >= 0 against floating-point noise.
ScalarField photometric_error(const ImageBuffer& a, const ImageBuffer& b,
                              const PhotometricParams& params = {});

/// Keeps pixels where the best warped source beats the best raw source:
/// min_s pe(target, warped_s) < min_s pe(target, raw_s).
Mask auto_mask(const ImageBuffer& target,
               const std::vector<ImageBuffer>& warped_sources,
               const std::vector<ImageBuffer>& raw_sources,
               const PhotometricParams& params = {});

/// Mean pe(warped_source, target) over the flat-area mask.
LossReport loss_homo(const ImageBuffer& warped_source, const ImageBuffer& target,
                     const Mask& flat, const PhotometricParams& params = {});

/// Mean pe(synthesized, target) over the auto-mask.
LossReport loss_mono(const ImageBuffer& synthesized, const ImageBuffer& target,
                     const Mask& auto_mask, const PhotometricParams& params = {});

/// Mean pe(synthesized, target) over auto-mask ∧ certainty mask.
LossReport loss_pp(const ImageBuffer& synthesized, const ImageBuffer& target,
                   const Mask& auto_mask, const Mask& certainty,
                   const PhotometricParams& params = {});

/// Unmasked mean pe(synthesized, target) over all pixels.
LossReport loss_res(const ImageBuffer& synthesized, const ImageBuffer& target,
                    const PhotometricParams& params = {});

/// Pixels where two depth maps agree within relative threshold delta:
/// max((a-b)/b, (b-a)/a) < delta. Invalid or non-positive depths give 0.
Mask static_mask(const DepthField& depth_mono, const DepthField& depth_pp,
                 double delta = 0.2);

/// Sum over masked pixels of |normalized(a) - normalized(b)| where each
/// field is divided by its own mean over valid pixels. Sum form, not mean.
LossReport loss_consist(const DepthField& depth_mono, const DepthField& depth_pp,
                        const Mask& mask);

/// Mean-normalized variant of loss_consist (sum divided by mask count).
LossReport loss_consist_mean(const DepthField& depth_mono,
                             const DepthField& depth_pp, const Mask& mask);

/// Edge-aware smoothness of a mean-normalized disparity map: per pixel
/// |∂x d*|e^{-|∂x I|} + |∂y d*|e^{-|∂y I|} with forward differences,
/// averaged over all pixels (border gradients contribute 0).
LossReport smoothness_loss(const ScalarField& disparity,
                           const ImageBuffer& image);

enum class TrainingStage { early, homo, distill };
TrainingStage parse_training_stage(const std::string& name);
std::string to_string(TrainingStage stage);

struct StageLosses {
  LossReport mono, res, pp, homo, consist, smooth;
  double smooth_weight = 1.0;
};

/// Stage composition: early = mono+res+pp; homo adds the homography loss;
/// distill = mono+homo+consist. Smoothness is added in every stage.
LossReport schedule_total(TrainingStage stage, const StageLosses& losses);

/// Masked mean of an arbitrary per-pixel map (shared by the mean losses).
LossReport masked_mean(const ScalarField& map, const Mask& mask);

}  // namespace ppx
