#include "foveal/detmetrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "foveal/errors.hpp"
#include "foveal/text.hpp"

namespace foveal {

double iou(const RealBox& a, const RealBox& b) {
  const double iw = std::min(a.right(), b.right()) - std::max(a.x, b.x);
  const double ih = std::min(a.bottom(), b.bottom()) - std::max(a.y, b.y);
  if (iw <= 0.0 || ih <= 0.0) return 0.0;
  const double inter = iw * ih;
  return inter / (a.area() + b.area() - inter);
}

std::vector<RankedMatch> match_detections(const std::vector<Detection>& dets, const std::vector<GroundTruth>& gts,
                                          int class_id, double iou_threshold) {
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < dets.size(); ++i)
    if (dets[i].class_id == class_id) order.push_back(i);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return dets[a].score > dets[b].score; });

  std::vector<std::size_t> candidates;
  for (std::size_t g = 0; g < gts.size(); ++g)
    if (gts[g].class_id == class_id) candidates.push_back(g);
  std::vector<bool> used(gts.size(), false);

  std::vector<RankedMatch> ranked;
  ranked.reserve(order.size());
  for (std::size_t d : order) {
    double best = -1.0;
    std::size_t best_gt = 0;
    for (std::size_t g : candidates) {
      if (used[g] || gts[g].segment_id != dets[d].segment_id) continue;
      const double overlap = iou(dets[d].box, gts[g].box);
      if (overlap > best) {
        best = overlap;
        best_gt = g;
      }
    }
    const bool tp = best >= iou_threshold;
    if (tp) used[best_gt] = true;
    ranked.push_back({d, tp});
  }
  return ranked;
}

double average_precision(const std::vector<Detection>& dets, const std::vector<GroundTruth>& gts, int class_id,
                         double iou_threshold, ApInterpolation mode) {
  const auto positives = static_cast<std::size_t>(
      std::count_if(gts.begin(), gts.end(), [&](const GroundTruth& g) { return g.class_id == class_id; }));
  if (positives == 0) return 0.0;
  const auto ranked = match_detections(dets, gts, class_id, iou_threshold);

  std::vector<double> recall, precision;
  recall.reserve(ranked.size());
  precision.reserve(ranked.size());
  std::size_t tp = 0;
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    if (ranked[i].true_positive) ++tp;
    recall.push_back(static_cast<double>(tp) / static_cast<double>(positives));
    precision.push_back(static_cast<double>(tp) / static_cast<double>(i + 1));
  }

  if (mode == ApInterpolation::ElevenPoint) {
    double ap = 0.0;
    for (int t = 0; t <= 10; ++t) {
      const double r = t / 10.0;
      double p = 0.0;
      for (std::size_t i = 0; i < recall.size(); ++i)
        if (recall[i] >= r - 1e-12) p = std::max(p, precision[i]);
      ap += p / 11.0;
    }
    return ap;
  }

  // Precision envelope, then area under the step curve.
  for (std::size_t i = precision.size(); i-- > 1;) precision[i - 1] = std::max(precision[i - 1], precision[i]);
  double ap = 0.0;
  double prev_recall = 0.0;
  for (std::size_t i = 0; i < recall.size(); ++i) {
    ap += (recall[i] - prev_recall) * precision[i];
    prev_recall = recall[i];
  }
  return ap;
}

MeanApResult mean_ap(const std::vector<Detection>& dets, const std::vector<GroundTruth>& gts, double iou_threshold,
                     ApInterpolation mode) {
  std::set<int> classes;
  for (const auto& g : gts) classes.insert(g.class_id);
  if (classes.empty()) throw NoGroundTruth("no class has ground truth");

  MeanApResult result;
  double sum = 0.0;
  for (int c : classes) {
    ClassAp entry;
    entry.class_id = c;
    entry.ground_truth = static_cast<std::size_t>(
        std::count_if(gts.begin(), gts.end(), [&](const GroundTruth& g) { return g.class_id == c; }));
    entry.detections = static_cast<std::size_t>(
        std::count_if(dets.begin(), dets.end(), [&](const Detection& d) { return d.class_id == c; }));
    entry.ap = average_precision(dets, gts, c, iou_threshold, mode);
    sum += entry.ap;
    result.per_class.push_back(entry);
  }
  result.map = sum / static_cast<double>(result.per_class.size());
  return result;
}

namespace {

template <typename Row>
std::vector<Row> parse_rows(const std::string& contents, std::size_t fields) {
  std::vector<Row> rows;
  std::istringstream in(contents);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    const auto f = text::split_csv(line);
    if (line_no == 1 && !f.empty() && f[0] == "segment_id") continue;
    if (f.size() != fields)
      throw ParseError(line_no, "expected " + std::to_string(fields) + " fields, found " + std::to_string(f.size()));
    Row row;
    try {
      row.segment_id = f[0];
      const double x1 = text::parse_double(f[1]);
      const double y1 = text::parse_double(f[2]);
      const double x2 = text::parse_double(f[3]);
      const double y2 = text::parse_double(f[4]);
      row.box = {x1, y1, x2 - x1, y2 - y1};
      row.class_id = text::parse_int(f[5]);
      if constexpr (std::is_same_v<Row, Detection>) {
        row.score = text::parse_double(f[6]);
        if (!std::isfinite(row.score)) throw ValidationError("score must be finite");
      }
    } catch (const ValidationError& e) {
      throw ParseError(line_no, e.what());
    }
    if (!row.box.valid()) throw ParseError(line_no, "box must satisfy x1 < x2 and y1 < y2");
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string slurp(const std::filesystem::path& path) {
  std::string joined;
  for (const auto& l : text::read_lines(path)) joined.append(l).push_back('\n');
  return joined;
}

}  // namespace

std::vector<Detection> parse_detections_text(const std::string& contents) {
  return parse_rows<Detection>(contents, 7);
}

std::vector<GroundTruth> parse_ground_truth_text(const std::string& contents) {
  return parse_rows<GroundTruth>(contents, 6);
}

std::vector<Detection> parse_detections(const std::filesystem::path& path) {
  return parse_detections_text(slurp(path));
}

std::vector<GroundTruth> parse_ground_truth(const std::filesystem::path& path) {
  return parse_ground_truth_text(slurp(path));
}

}  // namespace foveal
