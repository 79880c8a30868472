#include "foveal/voting.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "foveal/errors.hpp"

namespace foveal {

void SegmentSpec::validate() const {
  if (frame_count < 1) throw ValidationError("segment needs at least one frame");
  if (samples < 1 || samples > frame_count) throw ValidationError("samples must be in [1, frame_count]");
  if (keyframe_index < 0 || keyframe_index >= frame_count) throw ValidationError("keyframe outside the segment");
  if (flow_depth < 1) throw ValidationError("flow depth must be >= 1");
}

std::vector<int> subsample_indices(const SegmentSpec& spec) {
  spec.validate();
  const int spacing = spec.frame_count / spec.samples;
  std::vector<int> indices;
  indices.reserve(spec.samples);
  for (int i = 0; i < spec.samples; ++i) {
    // keyframe + (i - (samples-1)/2) * spacing, kept in integers; floors for
    // even sample counts.
    const int twice = 2 * spec.keyframe_index + (2 * i - (spec.samples - 1)) * spacing;
    const int index = twice >= 0 ? twice / 2 : -((-twice + 1) / 2);
    indices.push_back(std::clamp(index, 0, spec.frame_count - 1));
  }
  return indices;
}

std::vector<int> flow_window(int start, int depth, int frame_count) {
  if (depth < 1) throw ValidationError("flow depth must be >= 1");
  if (frame_count < 1) throw ValidationError("segment needs at least one frame");
  std::vector<int> indices(depth);
  for (int i = 0; i < depth; ++i) indices[i] = std::clamp(start + i, 0, frame_count - 1);
  return indices;
}

int argmax(const Eigen::VectorXd& v) {
  if (v.size() == 0) throw ValidationError("argmax of an empty vector");
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < v.size(); ++i)
    if (v(i) > v(best)) best = i;
  return static_cast<int>(best);
}

namespace {

int majority(const std::vector<int>& votes, int classes) {
  std::vector<int> counts(classes, 0);
  for (int v : votes) ++counts[v];
  return static_cast<int>(std::max_element(counts.begin(), counts.end()) - counts.begin());
}

std::vector<int> head_votes(const std::vector<ScoreVector>& frames, const Eigen::VectorXd ScoreVector::*head,
                            double threshold) {
  std::vector<int> votes((frames.front().*head).size(), 0);
  for (const ScoreVector& f : frames)
    for (std::size_t c = 0; c < votes.size(); ++c)
      if ((f.*head)(static_cast<Eigen::Index>(c)) > threshold) ++votes[c];
  return votes;
}

std::vector<int> top_voted(const std::vector<ScoreVector>& frames, const Eigen::VectorXd ScoreVector::*head,
                           double threshold) {
  const std::vector<int> votes_per_class = head_votes(frames, head, threshold);
  const auto classes = static_cast<Eigen::Index>(votes_per_class.size());
  struct Tally {
    int cls;
    int votes;
    double mean;
  };
  std::vector<Tally> tallies;
  std::vector<double> column(frames.size());
  for (Eigen::Index c = 0; c < classes; ++c) {
    const int votes = votes_per_class[c];
    if (votes == 0) continue;
    for (std::size_t f = 0; f < frames.size(); ++f) column[f] = (frames[f].*head)(c);
    // Summing in sorted order makes the mean independent of frame order.
    std::sort(column.begin(), column.end());
    const double mean = std::accumulate(column.begin(), column.end(), 0.0) / static_cast<double>(column.size());
    tallies.push_back({static_cast<int>(c), votes, mean});
  }
  const std::size_t keep = std::min<std::size_t>(tallies.size(), kMaxInteractionLabels);
  std::partial_sort(tallies.begin(), tallies.begin() + keep, tallies.end(), [](const Tally& a, const Tally& b) {
    if (a.votes != b.votes) return a.votes > b.votes;
    if (a.mean != b.mean) return a.mean > b.mean;
    return a.cls < b.cls;
  });
  std::vector<int> out;
  for (std::size_t i = 0; i < keep; ++i) out.push_back(tallies[i].cls);
  return out;
}

void check_frames(const std::vector<ScoreVector>& frame_scores) {
  if (frame_scores.empty()) throw EmptyScoreList("no frame scores to aggregate");
  const HeadSizes sizes = frame_scores.front().sizes();
  if (sizes.pose < 1) throw HeadSizeMismatch("pose head is empty");
  for (const ScoreVector& s : frame_scores)
    if (!(s.sizes() == sizes)) throw HeadSizeMismatch("frames disagree on head sizes");
}

}  // namespace

VoteCounts count_votes(const std::vector<ScoreVector>& frame_scores, double threshold) {
  check_frames(frame_scores);
  return {head_votes(frame_scores, &ScoreVector::hh, threshold), head_votes(frame_scores, &ScoreVector::ho, threshold)};
}

SegmentPrediction aggregate_votes(const std::vector<ScoreVector>& frame_scores, double threshold) {
  check_frames(frame_scores);
  const HeadSizes sizes = frame_scores.front().sizes();

  std::vector<int> pose_votes;
  pose_votes.reserve(frame_scores.size());
  for (const ScoreVector& s : frame_scores) pose_votes.push_back(argmax(s.pose));

  return {majority(pose_votes, sizes.pose), top_voted(frame_scores, &ScoreVector::hh, threshold),
          top_voted(frame_scores, &ScoreVector::ho, threshold)};
}

int aggregate_votes_single_label(const std::vector<Eigen::VectorXd>& frame_scores, int classes) {
  if (frame_scores.empty()) throw EmptyScoreList("no frame scores to aggregate");
  if (classes < 1) throw HeadSizeMismatch("class count must be positive");
  std::vector<int> votes;
  for (const auto& s : frame_scores) {
    if (s.size() != classes)
      throw HeadSizeMismatch("frame has " + std::to_string(s.size()) + " scores, expected " + std::to_string(classes));
    votes.push_back(argmax(s));
  }
  return majority(votes, classes);
}

}  // namespace foveal
