// Copyright 2026 The planarpx Authors
// SPDX-License-Identifier: Apache-2.0

#include "ppx/photometric.hpp"

#include <algorithm>
#include <cmath>

#include "ppx/parallel.hpp"

namespace ppx {

namespace {

void require_same_shape(const ImageBuffer& a, const ImageBuffer& b,
                        const char* who) {
  if (!a.same_shape(b))
    throw ValidationError(std::string(who) + ": image shapes differ (" +
                          std::to_string(a.width) + "x" + std::to_string(a.height) +
                          "x" + std::to_string(a.channels) + " vs " +
                          std::to_string(b.width) + "x" + std::to_string(b.height) +
                          "x" + std::to_string(b.channels) + ")");
}

inline int reflect(int i, int n) {
  if (i < 0) return -i;
  if (i >= n) return 2 * n - 2 - i;
  return i;
}

/// Kahan-compensated sequential sum; deterministic and accurate enough for
/// the 1e-12 loss identities.
struct KahanSum {
  double sum = 0.0;
  double comp = 0.0;
  void add(double v) {
    const double y = v - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

double masked_mean_value(const ScalarField& field, const Mask& mask, long* count) {
  KahanSum acc;
  long n = 0;
  for (int y = 0; y < field.height; ++y)
    for (int x = 0; x < field.width; ++x)
      if (mask.at(x, y)) {
        acc.add(field.at(x, y));
        ++n;
      }
  *count = n;
  return n > 0 ? acc.sum / n : 0.0;
}

}  // namespace

void PhotometricParams::validate() const {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw ValidationError("photometric params: alpha must be in [0,1]");
  if (ssim_window < 3 || ssim_window % 2 == 0)
    throw ValidationError("photometric params: window must be odd and >= 3");
}

ScalarField ssim_map(const ImageBuffer& a, const ImageBuffer& b,
                     const PhotometricParams& params) {
  require_same_shape(a, b, "ssim_map");
  params.validate();
  const int r = params.ssim_window / 2;
  const double inv_n = 1.0 / (params.ssim_window * params.ssim_window);
  ScalarField out(a.width, a.height);
  parallel_rows(a.height, [&](int y) {
    for (int x = 0; x < a.width; ++x) {
      double ssim_sum = 0.0;
      for (int c = 0; c < a.channels; ++c) {
        double sa = 0.0, sb = 0.0, saa = 0.0, sbb = 0.0, sab = 0.0;
        for (int dy = -r; dy <= r; ++dy) {
          const int yy = reflect(y + dy, a.height);
          for (int dx = -r; dx <= r; ++dx) {
            const int xx = reflect(x + dx, a.width);
            const double va = a.at(xx, yy, c);
            const double vb = b.at(xx, yy, c);
            sa += va;
            sb += vb;
            saa += va * va;
            sbb += vb * vb;
            sab += va * vb;
          }
        }
        const double mu_a = sa * inv_n;
        const double mu_b = sb * inv_n;
        const double var_a = saa * inv_n - mu_a * mu_a;
        const double var_b = sbb * inv_n - mu_b * mu_b;
        const double cov = sab * inv_n - mu_a * mu_b;
        const double num =
            (2.0 * mu_a * mu_b + params.c1) * (2.0 * cov + params.c2);
        const double den = (mu_a * mu_a + mu_b * mu_b + params.c1) *
                           (var_a + var_b + params.c2);
        ssim_sum += num / den;
      }
      out.at(x, y) = std::clamp(ssim_sum / a.channels, -1.0, 1.0);
    }
  });
  return out;
}

ScalarField photometric_error(const ImageBuffer& a, const ImageBuffer& b,
                              const PhotometricParams& params) {
  require_same_shape(a, b, "photometric_error");
  params.validate();
  const ScalarField ssim = ssim_map(a, b, params);
  ScalarField out(a.width, a.height);
  parallel_rows(a.height, [&](int y) {
    for (int x = 0; x < a.width; ++x) {
      double l1 = 0.0;
      for (int c = 0; c < a.channels; ++c)
        l1 += std::abs(a.at(x, y, c) - b.at(x, y, c));
      l1 /= a.channels;
      const double pe = 0.5 * params.alpha * (1.0 - ssim.at(x, y)) +
                        (1.0 - params.alpha) * l1;
      out.at(x, y) = std::max(pe, 0.0);
    }
  });
  return out;
}

Mask auto_mask(const ImageBuffer& target,
               const std::vector<ImageBuffer>& warped_sources,
               const std::vector<ImageBuffer>& raw_sources,
               const PhotometricParams& params) {
  if (warped_sources.empty() || raw_sources.empty())
    throw ValidationError("auto_mask: needs at least one source image");
  auto min_pe = [&](const std::vector<ImageBuffer>& images) {
    ScalarField best = photometric_error(target, images[0], params);
    for (size_t i = 1; i < images.size(); ++i) {
      const ScalarField pe = photometric_error(target, images[i], params);
      for (size_t j = 0; j < best.values.size(); ++j)
        best.values[j] = std::min(best.values[j], pe.values[j]);
    }
    return best;
  };
  const ScalarField warped = min_pe(warped_sources);
  const ScalarField raw = min_pe(raw_sources);
  Mask out(target.width, target.height);
  for (size_t i = 0; i < out.data.size(); ++i)
    out.data[i] = warped.values[i] < raw.values[i] ? 1 : 0;
  return out;
}

LossReport masked_mean(const ScalarField& map, const Mask& mask) {
  if (map.width != mask.width || map.height != mask.height)
    throw ValidationError("masked_mean: map/mask size mismatch");
  LossReport report;
  report.contributions = ScalarField(map.width, map.height);
  for (int y = 0; y < map.height; ++y)
    for (int x = 0; x < map.width; ++x)
      if (mask.at(x, y)) report.contributions.at(x, y) = map.at(x, y);
  report.value = masked_mean_value(map, mask, &report.count);
  report.empty_mask = report.count == 0;
  return report;
}

LossReport loss_homo(const ImageBuffer& warped_source, const ImageBuffer& target,
                     const Mask& flat, const PhotometricParams& params) {
  return masked_mean(photometric_error(warped_source, target, params), flat);
}

LossReport loss_mono(const ImageBuffer& synthesized, const ImageBuffer& target,
                     const Mask& auto_mask, const PhotometricParams& params) {
  return masked_mean(photometric_error(synthesized, target, params), auto_mask);
}

LossReport loss_pp(const ImageBuffer& synthesized, const ImageBuffer& target,
                   const Mask& auto_mask, const Mask& certainty,
                   const PhotometricParams& params) {
  return masked_mean(photometric_error(synthesized, target, params),
                     mask_and(auto_mask, certainty));
}

LossReport loss_res(const ImageBuffer& synthesized, const ImageBuffer& target,
                    const PhotometricParams& params) {
  return masked_mean(photometric_error(synthesized, target, params),
                     Mask(target.width, target.height, 1));
}

Mask static_mask(const DepthField& depth_mono, const DepthField& depth_pp,
                 double delta) {
  if (!(delta > 0.0)) throw ValidationError("static_mask: delta must be > 0");
  if (!depth_mono.same_shape(depth_pp))
    throw ValidationError("static_mask: depth size mismatch");
  Mask out(depth_mono.width, depth_mono.height);
  for (int y = 0; y < out.height; ++y)
    for (int x = 0; x < out.width; ++x) {
      const double a = depth_mono.at(x, y);
      const double b = depth_pp.at(x, y);
      if (!depth_mono.is_valid(x, y) || !depth_pp.is_valid(x, y) || !(a > 0.0) ||
          !(b > 0.0))
        continue;
      out.at(x, y) = std::max((a - b) / b, (b - a) / a) < delta ? 1 : 0;
    }
  return out;
}

namespace {

double valid_mean(const DepthField& d) {
  KahanSum acc;
  long n = 0;
  for (int y = 0; y < d.height; ++y)
    for (int x = 0; x < d.width; ++x)
      if (d.is_valid(x, y)) {
        acc.add(d.at(x, y));
        ++n;
      }
  if (n == 0) throw ValidationError("depth normalization: no valid pixels");
  return acc.sum / n;
}

LossReport consist_impl(const DepthField& a, const DepthField& b,
                        const Mask& mask, bool mean_form) {
  if (!a.same_shape(b) || a.width != mask.width || a.height != mask.height)
    throw ValidationError("loss_consist: size mismatch");
  const double mu_a = valid_mean(a);
  const double mu_b = valid_mean(b);
  LossReport report;
  report.contributions = ScalarField(a.width, a.height);
  KahanSum acc;
  for (int y = 0; y < a.height; ++y)
    for (int x = 0; x < a.width; ++x) {
      if (!mask.at(x, y) || !a.is_valid(x, y) || !b.is_valid(x, y)) continue;
      const double term = std::abs(a.at(x, y) / mu_a - b.at(x, y) / mu_b);
      report.contributions.at(x, y) = term;
      acc.add(term);
      ++report.count;
    }
  report.empty_mask = report.count == 0;
  report.mean_normalized = mean_form;
  if (report.count > 0)
    report.value = mean_form ? acc.sum / report.count : acc.sum;
  return report;
}

}  // namespace

LossReport loss_consist(const DepthField& depth_mono, const DepthField& depth_pp,
                        const Mask& mask) {
  return consist_impl(depth_mono, depth_pp, mask, false);
}

LossReport loss_consist_mean(const DepthField& depth_mono,
                             const DepthField& depth_pp, const Mask& mask) {
  return consist_impl(depth_mono, depth_pp, mask, true);
}

LossReport smoothness_loss(const ScalarField& disparity,
                           const ImageBuffer& image) {
  if (disparity.width != image.width || disparity.height != image.height)
    throw ValidationError("smoothness_loss: disparity/image size mismatch");
  KahanSum mean_acc;
  long n = 0;
  for (int y = 0; y < disparity.height; ++y)
    for (int x = 0; x < disparity.width; ++x)
      if (disparity.is_valid(x, y)) {
        mean_acc.add(disparity.at(x, y));
        ++n;
      }
  const double mu = n > 0 ? mean_acc.sum / n : 0.0;
  if (!(std::abs(mu) > 1e-12))
    throw ValidationError("smoothness_loss: disparity mean is zero");

  auto image_grad = [&](int x, int y, int dx, int dy) {
    double g = 0.0;
    for (int c = 0; c < image.channels; ++c)
      g += std::abs(image.at(x + dx, y + dy, c) - image.at(x, y, c));
    return g / image.channels;
  };

  LossReport report;
  report.contributions = ScalarField(disparity.width, disparity.height);
  KahanSum acc;
  for (int y = 0; y < disparity.height; ++y)
    for (int x = 0; x < disparity.width; ++x) {
      double term = 0.0;
      const double d = disparity.at(x, y) / mu;
      if (x + 1 < disparity.width) {
        const double gx = std::abs(disparity.at(x + 1, y) / mu - d);
        term += gx * std::exp(-image_grad(x, y, 1, 0));
      }
      if (y + 1 < disparity.height) {
        const double gy = std::abs(disparity.at(x, y + 1) / mu - d);
        term += gy * std::exp(-image_grad(x, y, 0, 1));
      }
      report.contributions.at(x, y) = term;
      acc.add(term);
    }
  report.count = static_cast<long>(disparity.width) * disparity.height;
  report.value = report.count > 0 ? acc.sum / report.count : 0.0;
  report.empty_mask = report.count == 0;
  return report;
}

TrainingStage parse_training_stage(const std::string& name) {
  if (name == "early") return TrainingStage::early;
  if (name == "homo") return TrainingStage::homo;
  if (name == "distill") return TrainingStage::distill;
  throw ValidationError("unknown training stage: " + name);
}

std::string to_string(TrainingStage stage) {
  switch (stage) {
    case TrainingStage::early: return "early";
    case TrainingStage::homo: return "homo";
    case TrainingStage::distill: return "distill";
  }
  return "?";
}

LossReport schedule_total(TrainingStage stage, const StageLosses& losses) {
  LossReport total;
  total.mean_normalized = false;
  double value = 0.0;
  switch (stage) {
    case TrainingStage::early:
      value = losses.mono.value + losses.res.value + losses.pp.value;
      break;
    case TrainingStage::homo:
      value = losses.mono.value + losses.res.value + losses.pp.value +
              losses.homo.value;
      break;
    case TrainingStage::distill:
      value = losses.mono.value + losses.homo.value + losses.consist.value;
      break;
  }
  total.value = value + losses.smooth_weight * losses.smooth.value;
  return total;
}

}  // namespace ppx
