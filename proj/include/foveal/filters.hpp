#pragma once

#include <Eigen/Core>

#include <cmath>
#include <variant>
#include <vector>

#include "foveal/box.hpp"
#include "foveal/image.hpp"
#include "foveal/pyramid.hpp"

namespace foveal {

inline constexpr double kDefaultFoveaSigma1 = 1.0;
inline constexpr int kDefaultFoveaLevels = 5;
inline constexpr double kDefaultGbbSigma = 7.0;

/// Fovea placement and stack shape. The fovea is centered on the box center
/// and its level-k extent is 2^k times the box half-size along each axis.
struct FoveaParams {
  double sigma1 = kDefaultFoveaSigma1;
  int levels = kDefaultFoveaLevels;
  BoundingBox box;

  double center_x() const { return box.x + box.w / 2.0; }
  double center_y() const { return box.y + box.h / 2.0; }
  double extent_x(int k) const { return std::ldexp(box.w / 2.0, k); }
  double extent_y(int k) const { return std::ldexp(box.h / 2.0, k); }

  void validate() const {
    if (!(sigma1 > 0.0)) throw ValidationError("fovea sigma1 must be > 0");
    if (levels < 1) throw ValidationError("fovea needs at least one level");
    if (!box.valid()) throw ValidationError("fovea box must have positive extent");
  }
};

/// Per-band weights that factor into a column profile times a row profile.
struct SeparableWeights {
  Eigen::ArrayXd x;  // indexed by column
  Eigen::ArrayXd y;  // indexed by row
};

/// exp(-(i - center)^2 / (2 extent^2)) for i in [0, n).
inline Eigen::ArrayXd fovea_profile(int n, double center, double extent) {
  const Eigen::ArrayXd d = Eigen::ArrayXd::LinSpaced(n, 0.0, n - 1.0) - center;
  return (-(d * d) / (2.0 * extent * extent)).exp();
}

inline SeparableWeights fovea_weights(int width, int height, const FoveaParams& params, int k) {
  return {fovea_profile(width, params.center_x(), params.extent_x(k)),
          fovea_profile(height, params.center_y(), params.extent_y(k))};
}

/// The level-k fovea kernel as a 1-channel image:
/// exp(-((u - u0)^2 / (2 f_kx^2) + (v - v0)^2 / (2 f_ky^2))).
template <typename Scalar = double>
BasicImage<Scalar> fovea_kernel(int width, int height, const FoveaParams& params, int k) {
  if (k < 0 || k > params.levels) throw ValidationError("fovea_kernel: level out of range");
  const SeparableWeights w = fovea_weights(width, height, params, k);
  using Samples = typename BasicImage<Scalar>::Samples;
  Samples s = (w.y.matrix() * w.x.matrix().transpose()).array().template cast<Scalar>();
  return BasicImage<Scalar>(width, height, 1, std::move(s));
}

/// base + sum_k weights[k] (.) bands[k], accumulated coarse to fine. Weights
/// broadcast over channels.
template <typename Scalar>
BasicImage<Scalar> weighted_reconstruct(const GaussianStack<Scalar>& gs, const std::vector<SeparableWeights>& weights) {
  using RowArray = Eigen::Array<Scalar, 1, Eigen::Dynamic>;
  if (static_cast<int>(weights.size()) != gs.depth()) throw ValidationError("one weight profile per band required");
  const BasicImage<Scalar>& base = gs.levels.back();
  const int width = base.width();
  const int channels = base.channels();
  typename BasicImage<Scalar>::Samples out = base.samples();
  RowArray wx(static_cast<Eigen::Index>(width) * channels);
  for (int k = gs.depth() - 1; k >= 0; --k) {
    const SeparableWeights& w = weights[k];
    if (w.x.size() != width || w.y.size() != base.height()) throw ValidationError("weight profile size mismatch");
    for (int u = 0; u < width; ++u) wx.segment(static_cast<Eigen::Index>(u) * channels, channels).setConstant(Scalar(w.x(u)));
    const auto& fine = gs.levels[k].samples();
    const auto& coarse = gs.levels[k + 1].samples();
    for (int v = 0; v < base.height(); ++v)
      out.row(v) += Scalar(w.y(v)) * wx * (fine.row(v) - coarse.row(v));
  }
  return base.with_samples(out);
}

/// Foveal filter over a prebuilt stack; the stack may be shared across boxes of
/// the same frame. Intensity output is clamped to [0,1]; flow is not.
template <typename Scalar>
BasicImage<Scalar> apply_fovea(const GaussianStack<Scalar>& gs, const FoveaParams& params) {
  params.validate();
  const BasicImage<Scalar>& original = gs.levels.front();
  FoveaParams p = params;
  p.box = clamp_box(params.box, original.width(), original.height());
  if (gs.depth() != p.levels) throw ValidationError("stack depth does not match fovea levels");

  std::vector<SeparableWeights> weights;
  weights.reserve(p.levels);
  for (int k = 0; k < p.levels; ++k) weights.push_back(fovea_weights(original.width(), original.height(), p, k));
  BasicImage<Scalar> out = weighted_reconstruct(gs, weights);
  if (!out.is_flow()) out.samples() = out.samples().max(Scalar(0)).min(Scalar(1));
  return out;
}

template <typename Scalar>
BasicImage<Scalar> apply_fovea(const BasicImage<Scalar>& image, const FoveaParams& params) {
  params.validate();
  clamp_box(params.box, image.width(), image.height());
  return apply_fovea(build_gaussian_stack(image, params.sigma1, params.levels), params);
}

/// Keeps the box interior, replaces everything outside with `outside`.
template <typename Scalar>
BasicImage<Scalar> composite_box(const BasicImage<Scalar>& inside, BasicImage<Scalar> outside, const BoundingBox& box) {
  const BoundingBox b = clamp_box(box, inside.width(), inside.height());
  const int c = inside.channels();
  outside.samples().block(b.y, static_cast<Eigen::Index>(b.x) * c, b.h, static_cast<Eigen::Index>(b.w) * c) =
      inside.samples().block(b.y, static_cast<Eigen::Index>(b.x) * c, b.h, static_cast<Eigen::Index>(b.w) * c);
  return outside;
}

/// Gaussian background blur: sharp inside the box, blurred outside, with a
/// hard seam at the box edge.
template <typename Scalar>
BasicImage<Scalar> apply_gbb(const BasicImage<Scalar>& image, const BoundingBox& box, double sigma) {
  if (!(sigma > 0.0)) throw ValidationError("gbb sigma must be > 0");
  clamp_box(box, image.width(), image.height());
  return composite_box(image, gaussian_blur(image, sigma), box);
}

/// Zeroes everything outside the box; the canvas size is unchanged.
template <typename Scalar>
BasicImage<Scalar> apply_crop(const BasicImage<Scalar>& image, const BoundingBox& box) {
  return composite_box(image, BasicImage<Scalar>(image.width(), image.height(), image.channels()), box);
}

struct CropFilter {
  BoundingBox box;
};

struct GbbFilter {
  BoundingBox box;
  double sigma = kDefaultGbbSigma;
};

struct FoveaFilter {
  FoveaParams params;
};

using AttentionFilter = std::variant<CropFilter, GbbFilter, FoveaFilter>;

template <typename Scalar>
BasicImage<Scalar> apply_filter(const BasicImage<Scalar>& image, const AttentionFilter& filter) {
  struct Visitor {
    const BasicImage<Scalar>& image;
    BasicImage<Scalar> operator()(const CropFilter& f) const { return apply_crop(image, f.box); }
    BasicImage<Scalar> operator()(const GbbFilter& f) const { return apply_gbb(image, f.box, f.sigma); }
    BasicImage<Scalar> operator()(const FoveaFilter& f) const { return apply_fovea(image, f.params); }
  };
  return std::visit(Visitor{image}, filter);
}

/// Applies the filter to each flow frame independently, both channels.
inline FlowStack apply_to_stack(const FlowStack& stack, const AttentionFilter& filter) {
  validate_flow_stack(stack);
  FlowStack out;
  out.frames.reserve(stack.length());
  for (const Image& frame : stack.frames) out.frames.push_back(apply_filter(frame, filter));
  return out;
}

}  // namespace foveal
