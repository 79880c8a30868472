#include "bench.hpp"

#include <chrono>
#include <random>

#include "foveal/filters.hpp"

namespace foveal::cli {

namespace {

template <typename F>
double frames_per_second(int iterations, F&& f) {
  f();  // warm-up
  const auto start = std::chrono::steady_clock::now();
  for (int i = 0; i < iterations; ++i) f();
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  return iterations / elapsed.count();
}

}  // namespace

BenchResult run_benchmark(int size, int iterations) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<float> unit(0.0f, 1.0f);
  Image frame(size, size, 3);
  for (float& v : frame.data()) v = unit(rng);
  const BoundingBox box{size / 4, size / 4, size / 2, size / 2};

  BenchResult result;
  result.size = size;
  result.iterations = iterations;
  volatile float sink = 0.0f;
  result.fovea_fps = frames_per_second(iterations, [&] {
    sink = apply_fovea(frame, FoveaParams{kDefaultFoveaSigma1, kDefaultFoveaLevels, box})(0, 0);
  });
  result.gbb_fps = frames_per_second(iterations, [&] { sink = apply_gbb(frame, box, kDefaultGbbSigma)(0, 0); });
  (void)sink;
  return result;
}

}  // namespace foveal::cli
