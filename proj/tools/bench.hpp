#pragma once

namespace foveal::cli {

inline constexpr double kFoveaFpsTarget = 100.0;
inline constexpr double kGbbFpsTarget = 300.0;

struct BenchResult {
  int size = 224;
  int iterations = 0;
  double fovea_fps = 0.0;
  double gbb_fps = 0.0;

  bool fovea_ok() const { return fovea_fps >= kFoveaFpsTarget; }
  bool gbb_ok() const { return gbb_fps >= kGbbFpsTarget; }
};

/// Single-threaded throughput of the fovea (K = 5, sigma1 = 1) and GBB
/// (sigma = 7) filters on a random size x size RGB frame.
BenchResult run_benchmark(int size = 224, int iterations = 50);

}  // namespace foveal::cli
