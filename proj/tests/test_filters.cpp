#include <doctest.h>

#include <cmath>
#include <random>

#include "foveal/filters.hpp"
#include "oracles.hpp"

using namespace foveal;

TEST_CASE("fovea kernel worked values") {
  const FoveaParams p{1.0, 5, {50, 50, 100, 50}};
  CHECK(p.center_x() == 100.0);
  CHECK(p.center_y() == 75.0);
  CHECK(p.extent_x(0) == 50.0);
  const auto k0 = fovea_kernel(224, 224, p, 0);
  const auto k1 = fovea_kernel(224, 224, p, 1);
  CHECK(std::abs(k0(150, 75) - std::exp(-0.5)) < 1e-9);
  CHECK(std::abs(k0(150, 75) - 0.60653) < 1e-5);
  CHECK(std::abs(k1(150, 75) - std::exp(-0.125)) < 1e-9);
  CHECK(std::abs(k1(150, 75) - 0.88250) < 1e-5);
  for (int k = 0; k <= 5; ++k) CHECK(fovea_kernel(224, 224, p, k)(100, 75) == 1.0);
  CHECK_THROWS_AS(fovea_kernel(224, 224, p, 6), ValidationError);
}

TEST_CASE("fovea kernel matches the closed form everywhere") {
  const FoveaParams p{1.0, 3, {7, 3, 9, 14}};
  for (int k = 0; k <= 3; ++k) {
    const auto kern = fovea_kernel(31, 27, p, k);
    for (int v = 0; v < 27; ++v)
      for (int u = 0; u < 31; ++u)
        CHECK(kern(u, v) == doctest::Approx(oracle::fovea_weight(u, v, 11.5, 10.0, 4.5 * std::pow(2, k),
                                                                 7.0 * std::pow(2, k)))
                                .epsilon(1e-12));
  }
}

TEST_CASE("fovea kernel widens with level and decays away from the center") {
  std::mt19937 rng(8);
  std::uniform_int_distribution<int> pos(0, 60), ext(1, 30);
  for (int rep = 0; rep < 20; ++rep) {
    const FoveaParams p{1.0, 4, {pos(rng), pos(rng), ext(rng), ext(rng)}};
    for (int k = 0; k < 4; ++k) {
      const auto a = fovea_kernel(96, 96, p, k);
      const auto b = fovea_kernel(96, 96, p, k + 1);
      CHECK(((b.samples() - a.samples()) >= 0.0).all());
      for (int v = 0; v < 96; v += 7)
        for (int u = 1; u < 96; ++u) {
          if (u - 1 >= p.center_x()) CHECK(a(u, v) <= a(u - 1, v));
          if (u <= p.center_x()) CHECK(a(u, v) >= a(u - 1, v));
        }
    }
  }
}

TEST_CASE("apply_fovea restores the original pixel at the fovea center") {
  std::mt19937 rng(9);
  const Image img = oracle::random_image(rng, 64, 48, 3);
  const FoveaParams p{1.0, 5, {20, 10, 16, 12}};
  const Image out = apply_fovea(img, p);
  for (int c = 0; c < 3; ++c) CHECK(std::abs(out(28, 16, c) - img(28, 16, c)) < 1e-5f);
}

TEST_CASE("apply_fovea leaves a constant image unchanged") {
  const Image flat(40, 30, 3, 0.6f);
  CHECK(max_abs_difference(apply_fovea(flat, FoveaParams{1.0, 5, {5, 5, 10, 10}}), flat) < 1e-6f);
}

TEST_CASE("apply_fovea of a distant impulse matches the brute-force composition") {
  const Image imp = oracle::impulse(48, 48, 6, 6);
  const FoveaParams p{1.0, 4, {34, 34, 8, 8}};
  const auto expected = oracle::fovea(imp.cast<double>(), 1.0, 4, 34, 34, 8, 8);
  CHECK(max_abs_difference(apply_fovea(imp, p).cast<double>(), expected) < 1e-5);
}

TEST_CASE("apply_fovea matches the brute-force composition on random RGB and flow") {
  std::mt19937 rng(10);
  const Image rgb = oracle::random_image(rng, 24, 20, 3);
  CHECK(max_abs_difference(apply_fovea(rgb, FoveaParams{0.75, 3, {3, 4, 6, 5}}).cast<double>(),
                           oracle::fovea(rgb.cast<double>(), 0.75, 3, 3, 4, 6, 5)) < 1e-5);

  Image flow = oracle::random_image(rng, 20, 18, 2);
  flow.samples() = flow.samples() * 8.0f - 4.0f;
  const Image out = apply_fovea(flow, FoveaParams{1.0, 3, {2, 2, 4, 4}});
  CHECK(max_abs_difference(out.cast<double>(), oracle::fovea(flow.cast<double>(), 1.0, 3, 2, 2, 4, 4, true)) < 1e-5);
  CHECK(out.samples().minCoeff() < 0.0f);  // signed flow is not clamped
}

TEST_CASE("unit band weights reconstruct the input") {
  std::mt19937 rng(11);
  const Image img = oracle::random_image(rng, 33, 17, 3);
  const auto gs = build_gaussian_stack(img, 1.0, 5);
  const std::vector<SeparableWeights> ones(5, {Eigen::ArrayXd::Ones(33), Eigen::ArrayXd::Ones(17)});
  CHECK(max_abs_difference(weighted_reconstruct(gs, ones), img) <= 1e-6f);
}

TEST_CASE("far field converges to the coarsest level") {
  std::mt19937 rng(12);
  const Image img = oracle::random_image(rng, 96, 96, 3);
  const FoveaParams p{1.0, 2, {10, 12, 2, 2}};
  const Image out = apply_fovea(img, p);
  const auto gs = build_gaussian_stack(img, 1.0, 2);
  const double fx = p.extent_x(1), fy = p.extent_y(1);
  int far = 0;
  for (int v = 0; v < 96; ++v)
    for (int u = 0; u < 96; ++u) {
      const double du = (u - p.center_x()) / fx, dv = (v - p.center_y()) / fy;
      if (std::sqrt(du * du + dv * dv) < 6.0) continue;
      ++far;
      for (int c = 0; c < 3; ++c) CHECK(std::abs(out(u, v, c) - gs.levels[2](u, v, c)) <= 1e-3f);
    }
  CHECK(far > 1000);
}

TEST_CASE("apply_gbb") {
  std::mt19937 rng(13);
  const Image img = oracle::random_image(rng, 32, 32, 3);
  CHECK(max_abs_difference(apply_gbb(img, {0, 0, 32, 32}, 2.0), img) == 0.0f);
  const Image flat(32, 32, 3, 0.3f);
  CHECK(max_abs_difference(apply_gbb(flat, {4, 4, 8, 8}, 3.0), flat) < 1e-6f);
  CHECK_THROWS_AS(apply_gbb(img, {40, 40, 4, 4}, 2.0), BoxOutsideImage);
  CHECK_THROWS_AS(apply_gbb(img, {4, 4, 4, 4}, 0.0), ValidationError);
}

TEST_CASE("apply_gbb on a checkerboard equals blur-then-paste") {
  Image board(32, 32, 1);
  for (int y = 0; y < 32; ++y)
    for (int x = 0; x < 32; ++x) board(x, y) = static_cast<float>((x / 4 + y / 4) % 2);
  const BoundingBox box{8, 8, 16, 16};
  const Image out = apply_gbb(board, box, 2.0);
  const auto blurred = oracle::dense_blur(board.cast<double>(), 2.0);
  for (int y = 0; y < 32; ++y)
    for (int x = 0; x < 32; ++x) {
      const double expected = box.contains(x, y) ? board(x, y) : blurred(x, y);
      CHECK(std::abs(out(x, y) - expected) < 1e-6);
    }
  const Image again = apply_gbb(out, box, 2.0);
  for (int y = box.y; y < box.bottom(); ++y)
    for (int x = box.x; x < box.right(); ++x) CHECK(again(x, y) == board(x, y));
}

TEST_CASE("apply_crop") {
  std::mt19937 rng(14);
  const Image img = oracle::random_image(rng, 20, 16, 3);
  CHECK(max_abs_difference(apply_crop(img, {0, 0, 20, 16}), img) == 0.0f);

  const Image corner = apply_crop(img, {0, 0, 1, 1});
  for (int y = 0; y < 16; ++y)
    for (int x = 0; x < 20; ++x)
      for (int c = 0; c < 3; ++c) CHECK(corner(x, y, c) == (x == 0 && y == 0 ? img(0, 0, c) : 0.0f));

  const BoundingBox box{3, 5, 7, 4};
  const Image cropped = apply_crop(img, box);
  double inside = 0.0;
  for (int y = box.y; y < box.bottom(); ++y)
    for (int x = box.x; x < box.right(); ++x)
      for (int c = 0; c < 3; ++c) inside += img(x, y, c);
  const double box_mean = inside / (box.area() * 3.0);
  CHECK(cropped.samples().cast<double>().mean() ==
        doctest::Approx(box_mean * box.area() / (20.0 * 16.0)).epsilon(1e-6));
  CHECK(max_abs_difference(apply_crop(cropped, box), cropped) == 0.0f);

  const Image gbb = apply_gbb(img, box, 3.0);
  for (int y = box.y; y < box.bottom(); ++y)
    for (int x = box.x; x < box.right(); ++x)
      for (int c = 0; c < 3; ++c) CHECK(cropped(x, y, c) == gbb(x, y, c));

  // Partially outside boxes are clamped, not rejected.
  CHECK(max_abs_difference(apply_crop(img, {-5, -5, 10, 10}), apply_crop(img, {0, 0, 5, 5})) == 0.0f);
}

TEST_CASE("filters on flow stacks") {
  FlowStack zeros;
  for (int i = 0; i < 10; ++i) zeros.frames.emplace_back(16, 12, 2);
  const FlowStack cropped = apply_to_stack(zeros, CropFilter{{2, 2, 5, 5}});
  REQUIRE(cropped.length() == 10);
  for (const auto& f : cropped.frames) CHECK(f.samples().abs().maxCoeff() == 0.0f);

  std::mt19937 rng(15);
  FlowStack stack;
  for (int i = 0; i < 10; ++i) {
    Image f = oracle::random_image(rng, 16, 12, 2);
    f.samples() = f.samples() * 10.0f - 5.0f;
    stack.frames.push_back(f);
  }
  const FoveaParams p{1.0, 3, {4, 3, 6, 5}};
  const FlowStack fov = apply_to_stack(stack, FoveaFilter{p});
  REQUIRE(fov.length() == 10);
  for (int i = 0; i < 10; ++i) {
    CHECK(fov.frames[i].width() == 16);
    CHECK(fov.frames[i].height() == 12);
    CHECK(max_abs_difference(fov.frames[i], apply_fovea(stack.frames[i], p)) == 0.0f);
  }
  const FlowStack gbb = apply_to_stack(stack, GbbFilter{{4, 3, 6, 5}, 2.0});
  CHECK(max_abs_difference(gbb.frames[3], apply_gbb(stack.frames[3], {4, 3, 6, 5}, 2.0)) == 0.0f);
  CHECK_THROWS_AS(apply_to_stack(stack, CropFilter{{100, 100, 5, 5}}), BoxOutsideImage);
}
