#pragma once

#include <Eigen/Core>

#include <vector>

namespace foveal {

inline constexpr int kMaxInteractionLabels = 3;

/// Output layer sizes: pose (mutually exclusive), human-human and
/// human-object (independent). Defaults are the miniAVA head sizes.
struct HeadSizes {
  int pose = 10;
  int human_human = 8;
  int human_object = 12;

  int total() const { return pose + human_human + human_object; }
  friend bool operator==(const HeadSizes&, const HeadSizes&) = default;
};

/// Ground truth for one person in one segment.
struct LabelVector {
  int pose = 0;
  Eigen::VectorXd hh;  // binary, length human_human
  Eigen::VectorXd ho;  // binary, length human_object

  /// Builds a label from class indices, enforcing the one-pose and
  /// at-most-three-interactions-per-head structure. Throws InvalidLabel.
  static LabelVector from_indices(const HeadSizes& sizes, int pose, const std::vector<int>& hh,
                                  const std::vector<int>& ho);
};

/// Per-head predictions for one frame (logits for the loss, probabilities
/// for voting).
struct ScoreVector {
  Eigen::VectorXd pose;
  Eigen::VectorXd hh;
  Eigen::VectorXd ho;

  HeadSizes sizes() const {
    return {static_cast<int>(pose.size()), static_cast<int>(hh.size()), static_cast<int>(ho.size())};
  }
};

}  // namespace foveal
