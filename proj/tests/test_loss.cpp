#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "foveal/errors.hpp"
#include "foveal/loss.hpp"

using namespace foveal;
using Eigen::VectorXd;

namespace {

VectorXd vec(std::initializer_list<double> v) {
  VectorXd out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

struct Draw {
  ScoreVector scores;
  LabelVector label;
};

Draw random_draw(std::mt19937& rng, const HeadSizes& h) {
  std::uniform_real_distribution<double> logit(-4.0, 4.0);
  std::uniform_int_distribution<int> count(0, 3);
  const auto rand_vec = [&](int n) {
    VectorXd v(n);
    for (int i = 0; i < n; ++i) v(i) = logit(rng);
    return v;
  };
  const auto pick = [&](int n) {
    std::vector<int> all(n);
    for (int i = 0; i < n; ++i) all[i] = i;
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(std::min(n, count(rng)));
    return all;
  };
  return {{rand_vec(h.pose), rand_vec(h.human_human), rand_vec(h.human_object)},
          LabelVector::from_indices(h, std::uniform_int_distribution<int>(0, h.pose - 1)(rng), pick(h.human_human),
                                    pick(h.human_object))};
}

// Central differences on the public loss, logit by logit.
ScoreVector numeric_gradient(const ScoreVector& s, const LabelVector& l, double step) {
  ScoreVector g = s;
  ScoreVector probe = s;
  for (auto head : {&ScoreVector::pose, &ScoreVector::hh, &ScoreVector::ho}) {
    for (Eigen::Index i = 0; i < (s.*head).size(); ++i) {
      (probe.*head)(i) = (s.*head)(i) + step;
      const double up = generalized_binary_loss(probe, l);
      (probe.*head)(i) = (s.*head)(i) - step;
      const double down = generalized_binary_loss(probe, l);
      (probe.*head)(i) = (s.*head)(i);
      (g.*head)(i) = (up - down) / (2 * step);
    }
  }
  return g;
}

double rel_err(const VectorXd& a, const VectorXd& n) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    worst = std::max(worst, std::abs(a(i) - n(i)) / std::max({std::abs(a(i)), std::abs(n(i)), 1e-300}));
  return worst;
}

}  // namespace

TEST_CASE("softmax_ce worked values") {
  CHECK(softmax_ce(VectorXd::Zero(10), 3) == doctest::Approx(std::log(10.0)).epsilon(1e-12));
  CHECK(softmax_ce(vec({1, 0, 0}), 0) == doctest::Approx(std::log((std::exp(1.0) + 2) / std::exp(1.0))).epsilon(1e-12));
  CHECK(softmax_ce(vec({1, 0, 0}), 0) == doctest::Approx(0.55144).epsilon(1e-5));
  const double big = softmax_ce(vec({1000, 0}), 0);
  CHECK(std::isfinite(big));
  CHECK(big < 1e-12);
  CHECK(softmax_ce(vec({0, 1000}), 0) == doctest::Approx(1000.0));
  CHECK_THROWS_AS(softmax_ce(vec({0, 0}), 2), TargetOutOfRange);
  CHECK_THROWS_AS(softmax_ce(vec({0, 0}), -1), TargetOutOfRange);
}

TEST_CASE("bce_sigmoid worked values") {
  CHECK(bce_sigmoid(VectorXd::Zero(8), vec({1, 0, 1, 1, 0, 0, 0, 1})) ==
        doctest::Approx(8 * std::log(2.0)).epsilon(1e-12));
  CHECK(bce_sigmoid(vec({50}), vec({1})) < 1e-20);
  CHECK(bce_sigmoid(vec({-50}), vec({1})) == doctest::Approx(50.0).epsilon(1e-12));
  CHECK(std::isfinite(bce_sigmoid(vec({-1e4, 1e4}), vec({1, 0}))));
  CHECK_THROWS_AS(bce_sigmoid(vec({0, 0}), vec({1})), LengthMismatch);
}

TEST_CASE("generalized binary loss") {
  const HeadSizes mini;
  const ScoreVector zero{VectorXd::Zero(10), VectorXd::Zero(8), VectorXd::Zero(12)};
  const auto label = LabelVector::from_indices(mini, 4, {1, 2}, {0, 5, 11});
  CHECK(std::abs(generalized_binary_loss(zero, label) - (std::log(10.0) + 20 * std::log(2.0))) < 1e-9);
  CHECK(generalized_binary_loss(zero, label) == doctest::Approx(16.16553).epsilon(1e-6));

  ScoreVector saturated{VectorXd::Constant(10, -60), VectorXd::Constant(8, -60), VectorXd::Constant(12, -60)};
  saturated.pose(4) = 60;
  saturated.hh(1) = saturated.hh(2) = 60;
  saturated.ho(0) = saturated.ho(5) = saturated.ho(11) = 60;
  CHECK(generalized_binary_loss(saturated, label) < 1e-20);

  std::mt19937 rng(16);
  for (int i = 0; i < 50; ++i) {
    const Draw d = random_draw(rng, mini);
    const double total = generalized_binary_loss(d.scores, d.label);
    CHECK(total == softmax_ce(d.scores.pose, d.label.pose) + bce_sigmoid(d.scores.hh, d.label.hh) +
                       bce_sigmoid(d.scores.ho, d.label.ho));
    CHECK(total > 0.0);
  }
  const ScoreVector wrong{VectorXd::Zero(10), VectorXd::Zero(7), VectorXd::Zero(12)};
  CHECK_THROWS_AS(generalized_binary_loss(wrong, label), HeadSizeMismatch);
}

TEST_CASE("gradient worked values") {
  const HeadSizes h{2, 1, 1};
  const auto label = LabelVector::from_indices(h, 0, {0}, {});
  const ScoreVector s{VectorXd::Zero(2), VectorXd::Zero(1), VectorXd::Zero(1)};
  const ScoreVector g = generalized_binary_loss_grad(s, label);
  CHECK(g.pose(0) == doctest::Approx(-0.5));
  CHECK(g.pose(1) == doctest::Approx(0.5));
  CHECK(g.hh(0) == doctest::Approx(-0.5));
  CHECK(g.ho(0) == doctest::Approx(0.5));
}

TEST_CASE("analytic gradients agree with central differences") {
  std::mt19937 rng(17);
  for (int i = 0; i < 100; ++i) {
    const Draw d = random_draw(rng, HeadSizes{});
    const ScoreVector a = generalized_binary_loss_grad(d.scores, d.label);
    const ScoreVector n = numeric_gradient(d.scores, d.label, 1e-5);
    CHECK(rel_err(a.pose, n.pose) < 1e-4);
    CHECK(rel_err(a.hh, n.hh) < 1e-4);
    CHECK(rel_err(a.ho, n.ho) < 1e-4);
    CHECK(gradient_check_error(LossKind::GeneralizedBinary, d.scores, d.label) < 1e-4);
    CHECK(gradient_check_error(LossKind::SumOfSigmoids, d.scores, d.label) < 1e-4);
  }
}

TEST_CASE("softmax_ce is shift invariant and bce is label/sign symmetric") {
  std::mt19937 rng(18);
  std::uniform_real_distribution<double> u(-5, 5);
  for (int i = 0; i < 100; ++i) {
    const Draw d = random_draw(rng, HeadSizes{});
    const double c = u(rng) * 20;
    CHECK(std::abs(softmax_ce((d.scores.pose.array() + c).matrix(), d.label.pose) - softmax_ce(d.scores.pose, d.label.pose)) <
          1e-9);
    const VectorXd flipped = VectorXd::Ones(d.label.ho.size()) - d.label.ho;
    CHECK(std::abs(bce_sigmoid(-d.scores.ho, flipped) - bce_sigmoid(d.scores.ho, d.label.ho)) < 1e-9);
  }
}

TEST_CASE("single-head mode") {
  CHECK(std::abs(single_head_loss(VectorXd::Zero(24), 7) - std::log(24.0)) < 1e-9);
  CHECK(single_head_loss(VectorXd::Zero(24), 7) == doctest::Approx(3.17805).epsilon(1e-6));
  const VectorXd logits = vec({0.3, -1.2, 2.0, 0.0});
  CHECK(single_head_loss(logits, 2) == softmax_ce(logits, 2));
  CHECK_THROWS_AS(single_head_loss(logits, 4), TargetOutOfRange);
  const VectorXd g = single_head_loss_grad(logits, 2);
  CHECK(g.sum() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(g(2) < 0.0);
}

TEST_CASE("sum-of-sigmoids baseline treats pose as independent binaries") {
  const HeadSizes h{3, 2, 2};
  const auto label = LabelVector::from_indices(h, 1, {}, {0});
  const ScoreVector zero{VectorXd::Zero(3), VectorXd::Zero(2), VectorXd::Zero(2)};
  CHECK(sum_of_sigmoids_loss(zero, label) == doctest::Approx(7 * std::log(2.0)).epsilon(1e-12));
  CHECK(sum_of_sigmoids_loss_grad(zero, label).pose(1) == doctest::Approx(-0.5));
}

TEST_CASE("label construction enforces the AVA label structure") {
  const HeadSizes h;
  const auto ok = LabelVector::from_indices(h, 9, {0, 1, 7}, {});
  CHECK(ok.hh.sum() == 3.0);
  CHECK(ok.ho.size() == 12);
  CHECK_THROWS_AS(LabelVector::from_indices(h, 10, {}, {}), InvalidLabel);
  CHECK_THROWS_AS(LabelVector::from_indices(h, 0, {0, 1, 2, 3}, {}), InvalidLabel);
  CHECK_THROWS_AS(LabelVector::from_indices(h, 0, {}, {1, 1}), InvalidLabel);
  CHECK_THROWS_AS(LabelVector::from_indices(h, 0, {8}, {}), InvalidLabel);
}
