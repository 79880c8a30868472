#pragma once

// Test-only reference implementations. They share no code with the library
// kernels: dense 2-D loops in double precision, boundary reflection by
// repeated folding, kernels evaluated straight from the closed form.

#include <cmath>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "foveal/image.hpp"

namespace oracle {

inline int fold(int i, int n) {
  if (n == 1) return 0;
  while (i < 0 || i >= n) {
    if (i < 0) i = -i;
    if (i >= n) i = 2 * (n - 1) - i;
  }
  return i;
}

/// Dense 2-D Gaussian convolution with a square support of radius
/// ceil(3 sigma), normalized over the whole square.
inline foveal::BasicImage<double> dense_blur(const foveal::BasicImage<double>& img, double sigma) {
  if (sigma == 0.0) return img;
  const int r = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> k((2 * r + 1) * (2 * r + 1));
  double total = 0.0;
  for (int dy = -r; dy <= r; ++dy)
    for (int dx = -r; dx <= r; ++dx) {
      const double w = std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma));
      k[(dy + r) * (2 * r + 1) + (dx + r)] = w;
      total += w;
    }
  foveal::BasicImage<double> out(img.width(), img.height(), img.channels());
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x)
      for (int c = 0; c < img.channels(); ++c) {
        double acc = 0.0;
        for (int dy = -r; dy <= r; ++dy)
          for (int dx = -r; dx <= r; ++dx)
            acc += k[(dy + r) * (2 * r + 1) + (dx + r)] * img(fold(x + dx, img.width()), fold(y + dy, img.height()), c);
        out(x, y, c) = acc / total;
      }
  return out;
}

inline double fovea_weight(double u, double v, double u0, double v0, double fx, double fy) {
  return std::exp(-((u - u0) * (u - u0) / (2 * fx * fx) + (v - v0) * (v - v0) / (2 * fy * fy)));
}

/// Per-pixel composition: g_K + sum_k kernel_k * (g_k - g_(k+1)), clamped to
/// [0,1] unless `flow`.
inline foveal::BasicImage<double> fovea(const foveal::BasicImage<double>& img, double sigma1, int levels, int bx,
                                        int by, int bw, int bh, bool flow = false) {
  std::vector<foveal::BasicImage<double>> g{img};
  for (int k = 1; k <= levels; ++k) g.push_back(dense_blur(img, sigma1 * std::pow(2.0, k - 1)));
  const double u0 = bx + bw / 2.0;
  const double v0 = by + bh / 2.0;
  foveal::BasicImage<double> out(img.width(), img.height(), img.channels());
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x)
      for (int c = 0; c < img.channels(); ++c) {
        double v = g[levels](x, y, c);
        for (int k = 0; k < levels; ++k) {
          const double w = fovea_weight(x, y, u0, v0, std::pow(2.0, k) * bw / 2.0, std::pow(2.0, k) * bh / 2.0);
          v += w * (g[k](x, y, c) - g[k + 1](x, y, c));
        }
        out(x, y, c) = flow ? v : std::min(1.0, std::max(0.0, v));
      }
  return out;
}

inline foveal::Image random_image(std::mt19937& rng, int w, int h, int c) {
  std::uniform_real_distribution<float> unit(0.0f, 1.0f);
  foveal::Image img(w, h, c);
  for (float& v : img.data()) v = unit(rng);
  return img;
}

inline foveal::Image impulse(int w, int h, int x, int y) {
  foveal::Image img(w, h, 1);
  img(x, y) = 1.0f;
  return img;
}

inline std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("foveal_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace oracle
