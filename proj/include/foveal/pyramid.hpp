#pragma once

#include <Eigen/Core>

#include <cmath>
#include <vector>

#include "foveal/image.hpp"

namespace foveal {

/// Maps an out-of-range index into [0, n) by mirror reflection about the edge
/// samples (the edge sample itself is not repeated): -1 -> 1, n -> n - 2.
inline int reflect_index(int i, int n) {
  if (n == 1) return 0;
  const int period = 2 * (n - 1);
  i %= period;
  if (i < 0) i += period;
  return i < n ? i : period - i;
}

/// Discrete Gaussian taps for offsets -r..r with r = ceil(3 sigma), normalized
/// to unit sum. sigma must be positive.
inline Eigen::ArrayXd gaussian_kernel(double sigma) {
  if (!(sigma > 0.0)) throw ValidationError("gaussian kernel needs sigma > 0");
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  Eigen::ArrayXd taps(2 * radius + 1);
  for (int i = -radius; i <= radius; ++i) taps(i + radius) = std::exp(-0.5 * (i * i) / (sigma * sigma));
  return taps / taps.sum();
}

/// Separable Gaussian blur with reflect padding. sigma == 0 returns a copy.
template <typename Scalar>
BasicImage<Scalar> gaussian_blur(const BasicImage<Scalar>& image, double sigma) {
  using Samples = typename BasicImage<Scalar>::Samples;
  using RowArray = Eigen::Array<Scalar, 1, Eigen::Dynamic>;

  if (!(sigma >= 0.0)) throw ValidationError("gaussian_blur: sigma must be >= 0");
  if (sigma == 0.0) return image;

  const Eigen::Array<Scalar, Eigen::Dynamic, 1> taps = gaussian_kernel(sigma).cast<Scalar>();
  const int radius = static_cast<int>(taps.size() - 1) / 2;
  const int width = image.width();
  const int height = image.height();
  const int channels = image.channels();
  const Eigen::Index n = static_cast<Eigen::Index>(width) * channels;
  const Samples& src = image.samples();

  // Rows: convolve a reflect-padded copy, one shifted axpy per tap pair.
  Samples rows(height, n);
  RowArray padded(static_cast<Eigen::Index>(width + 2 * radius) * channels);
  for (int y = 0; y < height; ++y) {
    padded.segment(static_cast<Eigen::Index>(radius) * channels, n) = src.row(y);
    for (int p = -radius; p < 0; ++p) {
      for (int c = 0; c < channels; ++c) {
        padded((p + radius) * channels + c) = src(y, reflect_index(p, width) * channels + c);
        padded((width - 1 - p + radius) * channels + c) = src(y, reflect_index(width - 1 - p, width) * channels + c);
      }
    }
    auto out = rows.row(y);
    out = taps(radius) * padded.segment(static_cast<Eigen::Index>(radius) * channels, n);
    for (int j = 1; j <= radius; ++j) {
      out += taps(radius + j) * (padded.segment(static_cast<Eigen::Index>(radius - j) * channels, n) +
                                 padded.segment(static_cast<Eigen::Index>(radius + j) * channels, n));
    }
  }

  // Columns: each output row is a weighted sum of whole input rows.
  Samples result(height, n);
  for (int y = 0; y < height; ++y) {
    auto out = result.row(y);
    out = taps(radius) * rows.row(y);
    for (int j = 1; j <= radius; ++j)
      out += taps(radius + j) * (rows.row(reflect_index(y - j, height)) + rows.row(reflect_index(y + j, height)));
  }
  return BasicImage<Scalar>(width, height, channels, std::move(result));
}

/// Standard deviation of level k of a Gaussian stack: 0 for k = 0, otherwise
/// 2^(k-1) * sigma1.
inline double level_sigma(double sigma1, int k) { return k == 0 ? 0.0 : std::ldexp(sigma1, k - 1); }

/// Same-resolution Gaussian stack g_0 (the input) ... g_K.
template <typename Scalar>
struct GaussianStack {
  std::vector<BasicImage<Scalar>> levels;
  double sigma1 = 1.0;

  int depth() const { return static_cast<int>(levels.size()) - 1; }
  double sigma(int k) const { return level_sigma(sigma1, k); }
};

/// Band-pass decomposition: bands[k] = g_k - g_(k+1), base = g_K.
template <typename Scalar>
struct LaplacianStack {
  std::vector<BasicImage<Scalar>> bands;
  BasicImage<Scalar> base;

  /// base + sum of bands, accumulated coarse to fine.
  BasicImage<Scalar> reconstruct() const {
    typename BasicImage<Scalar>::Samples acc = base.samples();
    for (auto band = bands.rbegin(); band != bands.rend(); ++band) acc += band->samples();
    return base.with_samples(acc);
  }
};

/// Every level is blurred directly from the input at its target sigma.
template <typename Scalar>
GaussianStack<Scalar> build_gaussian_stack(const BasicImage<Scalar>& image, double sigma1, int levels) {
  if (levels < 1) throw ValidationError("gaussian stack needs at least one level above the base");
  if (!(sigma1 > 0.0)) throw ValidationError("gaussian stack needs sigma1 > 0");
  GaussianStack<Scalar> stack;
  stack.sigma1 = sigma1;
  stack.levels.reserve(levels + 1);
  stack.levels.push_back(image);
  for (int k = 1; k <= levels; ++k) stack.levels.push_back(gaussian_blur(image, level_sigma(sigma1, k)));
  return stack;
}

template <typename Scalar>
LaplacianStack<Scalar> build_laplacian_stack(const GaussianStack<Scalar>& gs) {
  if (gs.depth() < 1) throw ValidationError("laplacian stack needs K >= 1");
  std::vector<BasicImage<Scalar>> bands;
  bands.reserve(gs.depth());
  for (int k = 0; k < gs.depth(); ++k)
    bands.push_back(gs.levels[k].with_samples(gs.levels[k].samples() - gs.levels[k + 1].samples()));
  return {std::move(bands), gs.levels.back()};
}

}  // namespace foveal
