#pragma once

#include <Eigen/Core>

#include "foveal/labels.hpp"

namespace foveal {

using VectorRef = Eigen::Ref<const Eigen::VectorXd>;

/// -log softmax(logits)[target], max-shifted. Throws TargetOutOfRange.
double softmax_ce(const VectorRef& logits, int target);

/// Per-class binary cross-entropy on sigmoid outputs, summed over classes,
/// via the stable log-sigmoid form. Throws LengthMismatch.
double bce_sigmoid(const VectorRef& logits, const VectorRef& targets);

/// log(sigmoid(s)) without overflow.
double log_sigmoid(double s);
double sigmoid(double s);

Eigen::VectorXd softmax(const VectorRef& logits);

/// Pose softmax cross-entropy plus binary cross-entropy on both interaction
/// heads.
double generalized_binary_loss(const ScoreVector& scores, const LabelVector& label);

/// Gradient of the loss with respect to every logit, same shapes as the
/// scores: softmax(s) - onehot on the pose head, sigmoid(s) - t elsewhere.
ScoreVector generalized_binary_loss_grad(const ScoreVector& scores, const LabelVector& label);

/// Mutually exclusive single-head mode (one softmax layer).
double single_head_loss(const VectorRef& logits, int target);
Eigen::VectorXd single_head_loss_grad(const VectorRef& logits, int target);

/// Baseline for comparison: one sigmoid per class across all three heads,
/// pose encoded one-hot.
double sum_of_sigmoids_loss(const ScoreVector& scores, const LabelVector& label);
ScoreVector sum_of_sigmoids_loss_grad(const ScoreVector& scores, const LabelVector& label);

enum class LossKind { GeneralizedBinary, SumOfSigmoids };

double loss_value(LossKind kind, const ScoreVector& scores, const LabelVector& label);
ScoreVector loss_gradient(LossKind kind, const ScoreVector& scores, const LabelVector& label);

/// Largest relative error |a - n| / max(|a|, |n|) between the analytic
/// gradient and central differences with the given step, over every logit.
double gradient_check_error(LossKind kind, const ScoreVector& scores, const LabelVector& label, double step = 1e-5);

/// Throws HeadSizeMismatch unless scores and label agree on head sizes.
void check_heads(const ScoreVector& scores, const LabelVector& label);

}  // namespace foveal
