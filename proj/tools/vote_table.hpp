#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "foveal/detmetrics.hpp"
#include "foveal/labels.hpp"
#include "foveal/voting.hpp"

namespace foveal::cli {

/// Per-frame scores of one segment, frames in ascending frame index.
struct SegmentScores {
  std::string segment_id;
  std::vector<int> frame_indices;
  std::vector<ScoreVector> frames;
};

/// Parses `segment_id,frame_idx,head,class,score` rows (head is pose, hh or
/// ho; optional header). Head sizes default to one past the largest class
/// seen per head; absent cells score 0. Segments come out sorted by id.
std::vector<SegmentScores> parse_frame_scores(const std::string& contents, std::optional<HeadSizes> sizes);

struct SegmentResult {
  std::string segment_id;
  SegmentPrediction prediction;
  ScoreVector mean;  // per-class mean score over the segment's frames
};

std::vector<SegmentResult> vote_segments(const std::vector<SegmentScores>& segments, double threshold);

/// `segment_id,pose,hh,ho` with interaction ids joined by '|'.
std::string format_predictions(const std::vector<SegmentResult>& results);

/// `segment_id,x1,y1,x2,y2` rows (optional header).
std::map<std::string, RealBox> parse_segment_boxes(const std::string& contents);

/// One detection row per predicted class, `segment_id,x1,y1,x2,y2,class_id,score`.
/// Class ids are flattened as pose, then C_P + hh, then C_P + C_H + ho; the
/// score is the class's mean frame score. Segments without a box are skipped.
std::string format_detections(const std::vector<SegmentResult>& results, const std::map<std::string, RealBox>& boxes);

}  // namespace foveal::cli
