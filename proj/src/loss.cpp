#include "foveal/loss.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "foveal/errors.hpp"

namespace foveal {

namespace {

void check_target(const VectorRef& logits, int target) {
  if (logits.size() == 0) throw ValidationError("softmax over an empty logit vector");
  if (target < 0 || target >= logits.size())
    throw TargetOutOfRange("target " + std::to_string(target) + " outside [0, " + std::to_string(logits.size()) + ")");
}

void check_lengths(const VectorRef& logits, const VectorRef& targets) {
  if (logits.size() != targets.size())
    throw LengthMismatch("logits have " + std::to_string(logits.size()) + " entries, targets " +
                         std::to_string(targets.size()));
}

Eigen::VectorXd bce_sigmoid_grad(const VectorRef& logits, const VectorRef& targets) {
  check_lengths(logits, targets);
  return logits.unaryExpr([](double s) { return sigmoid(s); }) - targets;
}

Eigen::VectorXd one_hot(Eigen::Index n, int index) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
  v(index) = 1.0;
  return v;
}

}  // namespace

double sigmoid(double s) {
  if (s >= 0) return 1.0 / (1.0 + std::exp(-s));
  const double e = std::exp(s);
  return e / (1.0 + e);
}

double log_sigmoid(double s) { return s >= 0 ? -std::log1p(std::exp(-s)) : s - std::log1p(std::exp(s)); }

Eigen::VectorXd softmax(const VectorRef& logits) {
  const Eigen::VectorXd e = (logits.array() - logits.maxCoeff()).exp().matrix();
  return e / e.sum();
}

double softmax_ce(const VectorRef& logits, int target) {
  check_target(logits, target);
  const double m = logits.maxCoeff();
  const double log_norm = m + std::log((logits.array() - m).exp().sum());
  return log_norm - logits(target);
}

double bce_sigmoid(const VectorRef& logits, const VectorRef& targets) {
  check_lengths(logits, targets);
  double loss = 0.0;
  for (Eigen::Index j = 0; j < logits.size(); ++j) {
    const double t = targets(j);
    loss -= t * log_sigmoid(logits(j)) + (1.0 - t) * log_sigmoid(-logits(j));
  }
  return loss;
}

void check_heads(const ScoreVector& scores, const LabelVector& label) {
  if (scores.hh.size() != label.hh.size() || scores.ho.size() != label.ho.size())
    throw HeadSizeMismatch("score and label head sizes differ");
}

double generalized_binary_loss(const ScoreVector& scores, const LabelVector& label) {
  check_heads(scores, label);
  return softmax_ce(scores.pose, label.pose) + bce_sigmoid(scores.hh, label.hh) + bce_sigmoid(scores.ho, label.ho);
}

ScoreVector generalized_binary_loss_grad(const ScoreVector& scores, const LabelVector& label) {
  check_heads(scores, label);
  check_target(scores.pose, label.pose);
  return {softmax(scores.pose) - one_hot(scores.pose.size(), label.pose), bce_sigmoid_grad(scores.hh, label.hh),
          bce_sigmoid_grad(scores.ho, label.ho)};
}

double single_head_loss(const VectorRef& logits, int target) { return softmax_ce(logits, target); }

Eigen::VectorXd single_head_loss_grad(const VectorRef& logits, int target) {
  check_target(logits, target);
  return softmax(logits) - one_hot(logits.size(), target);
}

double sum_of_sigmoids_loss(const ScoreVector& scores, const LabelVector& label) {
  check_heads(scores, label);
  check_target(scores.pose, label.pose);
  return bce_sigmoid(scores.pose, one_hot(scores.pose.size(), label.pose)) + bce_sigmoid(scores.hh, label.hh) +
         bce_sigmoid(scores.ho, label.ho);
}

ScoreVector sum_of_sigmoids_loss_grad(const ScoreVector& scores, const LabelVector& label) {
  check_heads(scores, label);
  check_target(scores.pose, label.pose);
  return {bce_sigmoid_grad(scores.pose, one_hot(scores.pose.size(), label.pose)),
          bce_sigmoid_grad(scores.hh, label.hh), bce_sigmoid_grad(scores.ho, label.ho)};
}

double loss_value(LossKind kind, const ScoreVector& scores, const LabelVector& label) {
  return kind == LossKind::GeneralizedBinary ? generalized_binary_loss(scores, label)
                                             : sum_of_sigmoids_loss(scores, label);
}

ScoreVector loss_gradient(LossKind kind, const ScoreVector& scores, const LabelVector& label) {
  return kind == LossKind::GeneralizedBinary ? generalized_binary_loss_grad(scores, label)
                                             : sum_of_sigmoids_loss_grad(scores, label);
}

double gradient_check_error(LossKind kind, const ScoreVector& scores, const LabelVector& label, double step) {
  const ScoreVector analytic = loss_gradient(kind, scores, label);
  ScoreVector probe = scores;
  double worst = 0.0;
  const auto check_head = [&](Eigen::VectorXd ScoreVector::*head) {
    Eigen::VectorXd& logits = probe.*head;
    for (Eigen::Index i = 0; i < logits.size(); ++i) {
      const double saved = logits(i);
      logits(i) = saved + step;
      const double up = loss_value(kind, probe, label);
      logits(i) = saved - step;
      const double down = loss_value(kind, probe, label);
      logits(i) = saved;
      const double numeric = (up - down) / (2.0 * step);
      const double a = (analytic.*head)(i);
      const double scale = std::max({std::abs(a), std::abs(numeric), 1e-300});
      worst = std::max(worst, std::abs(a - numeric) / scale);
    }
  };
  check_head(&ScoreVector::pose);
  check_head(&ScoreVector::hh);
  check_head(&ScoreVector::ho);
  return worst;
}

LabelVector LabelVector::from_indices(const HeadSizes& sizes, int pose, const std::vector<int>& hh,
                                      const std::vector<int>& ho) {
  if (sizes.pose < 1 || sizes.human_human < 0 || sizes.human_object < 0)
    throw InvalidLabel("head sizes must be positive");
  if (pose < 0 || pose >= sizes.pose) throw InvalidLabel("pose class " + std::to_string(pose) + " out of range");
  const auto encode = [](const std::vector<int>& ids, int n, const char* head) {
    if (ids.size() > static_cast<std::size_t>(kMaxInteractionLabels))
      throw InvalidLabel(std::string("more than 3 ") + head + " labels");
    Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
    for (int id : ids) {
      if (id < 0 || id >= n) throw InvalidLabel(std::string(head) + " class " + std::to_string(id) + " out of range");
      if (v(id) != 0.0) throw InvalidLabel(std::string("duplicate ") + head + " class " + std::to_string(id));
      v(id) = 1.0;
    }
    return v;
  };
  return {pose, encode(hh, sizes.human_human, "human-human"), encode(ho, sizes.human_object, "human-object")};
}

}  // namespace foveal
