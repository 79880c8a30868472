#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "foveal/box.hpp"

namespace foveal {

using RealBox = Box<double>;

struct Detection {
  std::string segment_id;
  RealBox box;
  int class_id = 0;
  double score = 0.0;
};

struct GroundTruth {
  std::string segment_id;
  RealBox box;
  int class_id = 0;
};

double iou(const RealBox& a, const RealBox& b);

enum class ApInterpolation { AllPoint, ElevenPoint };

/// Per-detection outcome after greedy matching, in ranked order.
struct RankedMatch {
  std::size_t detection = 0;  // index into the input list
  bool true_positive = false;
};

/// Detections of `class_id` ranked by descending score (stable), each
/// matched to the highest-IoU still-unmatched ground truth of the same class
/// and segment with IoU >= iou_threshold.
std::vector<RankedMatch> match_detections(const std::vector<Detection>& dets, const std::vector<GroundTruth>& gts,
                                          int class_id, double iou_threshold);

/// PASCAL-style AP for one class. Returns 0 when the class has ground truth
/// but no detections. The caller must exclude classes without ground truth
/// (the value returned for them is 0).
double average_precision(const std::vector<Detection>& dets, const std::vector<GroundTruth>& gts, int class_id,
                         double iou_threshold = 0.5, ApInterpolation mode = ApInterpolation::AllPoint);

struct ClassAp {
  int class_id = 0;
  std::size_t ground_truth = 0;
  std::size_t detections = 0;
  double ap = 0.0;
};

struct MeanApResult {
  double map = 0.0;
  std::vector<ClassAp> per_class;  // ascending class id, classes with ground truth only
};

/// Unweighted mean of AP over classes that have ground truth.
/// Throws NoGroundTruth when there are none.
MeanApResult mean_ap(const std::vector<Detection>& dets, const std::vector<GroundTruth>& gts,
                     double iou_threshold = 0.5, ApInterpolation mode = ApInterpolation::AllPoint);

/// `segment_id,x1,y1,x2,y2,class_id,score` (corner coordinates).
std::vector<Detection> parse_detections(const std::filesystem::path& path);
/// `segment_id,x1,y1,x2,y2,class_id`.
std::vector<GroundTruth> parse_ground_truth(const std::filesystem::path& path);
std::vector<Detection> parse_detections_text(const std::string& text);
std::vector<GroundTruth> parse_ground_truth_text(const std::string& text);

}  // namespace foveal
