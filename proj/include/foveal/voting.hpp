#pragma once

#include <vector>

#include "foveal/labels.hpp"

namespace foveal {

inline constexpr double kDefaultVoteThreshold = 0.4;

/// Frame sampling inside one annotated segment. Defaults: a 3 s segment at
/// 30 fps with the keyframe at its center, 5 samples, 10-frame flow stacks.
struct SegmentSpec {
  int frame_count = 90;
  int keyframe_index = 45;
  int samples = 5;
  int flow_depth = 10;

  void validate() const;
};

struct SegmentPrediction {
  int pose = 0;
  std::vector<int> hh;
  std::vector<int> ho;

  friend bool operator==(const SegmentPrediction&, const SegmentPrediction&) = default;
};

/// Evenly spaced indices centered on the keyframe with spacing
/// floor(frame_count / samples), clamped into the segment.
std::vector<int> subsample_indices(const SegmentSpec& spec);

/// start, start+1, ... start+depth-1, clamped so the boundary frame repeats.
std::vector<int> flow_window(int start, int depth, int frame_count);

/// Index of the largest entry; the lowest index wins ties.
int argmax(const Eigen::VectorXd& v);

/// Per-class vote counts on the interaction heads: the number of frames
/// whose score is strictly above `threshold`.
struct VoteCounts {
  std::vector<int> hh;
  std::vector<int> ho;
};

VoteCounts count_votes(const std::vector<ScoreVector>& frame_scores, double threshold);

/// Fuses per-frame scores into one prediction.
///  - pose: majority of per-frame argmaxes, lowest class on ties;
///  - hh/ho: a frame votes for every class scoring strictly above
///    `threshold`; up to three classes with at least one vote are kept,
///    ranked by votes, then mean score, then lower index.
/// Throws EmptyScoreList, HeadSizeMismatch.
SegmentPrediction aggregate_votes(const std::vector<ScoreVector>& frame_scores,
                                  double threshold = kDefaultVoteThreshold);

/// Single-label mode: majority of per-frame argmaxes, lowest index on ties.
int aggregate_votes_single_label(const std::vector<Eigen::VectorXd>& frame_scores, int classes);

}  // namespace foveal
