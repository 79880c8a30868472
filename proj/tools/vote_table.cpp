#include "vote_table.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <tuple>

#include "foveal/errors.hpp"
#include "foveal/text.hpp"

namespace foveal::cli {

namespace {

struct Cell {
  std::string segment;
  int frame;
  int head;
  int cls;
  double score;
};

int head_index(const std::string& name) {
  if (name == "pose") return 0;
  if (name == "hh") return 1;
  if (name == "ho") return 2;
  return -1;
}

Eigen::VectorXd& head_of(ScoreVector& s, int head) { return head == 0 ? s.pose : head == 1 ? s.hh : s.ho; }

std::string join_ids(const std::vector<int>& ids) {
  std::string s;
  for (std::size_t i = 0; i < ids.size(); ++i) s += (i ? "|" : "") + std::to_string(ids[i]);
  return s;
}

}  // namespace

std::vector<SegmentScores> parse_frame_scores(const std::string& contents, std::optional<HeadSizes> sizes) {
  std::vector<Cell> cells;
  std::istringstream in(contents);
  std::string line;
  std::size_t line_no = 0;
  int max_class[3] = {-1, -1, -1};
  std::set<std::tuple<std::string, int, int, int>> seen;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    const auto f = text::split_csv(line);
    if (line_no == 1 && !f.empty() && f[0] == "segment_id") continue;
    if (f.size() != 5) throw ParseError(line_no, "expected segment_id,frame_idx,head,class,score");
    Cell c;
    try {
      c.segment = f[0];
      c.frame = text::parse_int(f[1]);
      c.head = head_index(f[2]);
      c.cls = text::parse_int(f[3]);
      c.score = text::parse_double(f[4]);
    } catch (const ValidationError& e) {
      throw ParseError(line_no, e.what());
    }
    if (c.head < 0) throw ParseError(line_no, "head must be pose, hh or ho");
    if (c.cls < 0) throw ParseError(line_no, "class must be non-negative");
    if (!std::isfinite(c.score)) throw ParseError(line_no, "score must be finite");
    if (!seen.emplace(c.segment, c.frame, c.head, c.cls).second) throw ParseError(line_no, "duplicate score cell");
    max_class[c.head] = std::max(max_class[c.head], c.cls);
    cells.push_back(std::move(c));
  }

  const HeadSizes heads = sizes.value_or(HeadSizes{max_class[0] + 1, max_class[1] + 1, max_class[2] + 1});
  const int limits[3] = {heads.pose, heads.human_human, heads.human_object};
  for (const Cell& c : cells)
    if (c.cls >= limits[c.head])
      throw HeadSizeMismatch("class " + std::to_string(c.cls) + " exceeds the configured head size");

  std::map<std::string, std::map<int, ScoreVector>> grouped;
  for (const Cell& c : cells) {
    auto [it, inserted] = grouped[c.segment].try_emplace(c.frame);
    if (inserted)
      it->second = {Eigen::VectorXd::Zero(heads.pose), Eigen::VectorXd::Zero(heads.human_human),
                    Eigen::VectorXd::Zero(heads.human_object)};
    head_of(it->second, c.head)(c.cls) = c.score;
  }

  std::vector<SegmentScores> out;
  for (auto& [id, frames] : grouped) {
    SegmentScores s{id, {}, {}};
    for (auto& [idx, scores] : frames) {
      s.frame_indices.push_back(idx);
      s.frames.push_back(std::move(scores));
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<SegmentResult> vote_segments(const std::vector<SegmentScores>& segments, double threshold) {
  std::vector<SegmentResult> results;
  for (const auto& seg : segments) {
    SegmentResult r{seg.segment_id, aggregate_votes(seg.frames, threshold), seg.frames.front()};
    for (int h = 0; h < 3; ++h) {
      Eigen::VectorXd sum = Eigen::VectorXd::Zero(head_of(r.mean, h).size());
      for (auto frame : seg.frames) sum += head_of(frame, h);
      head_of(r.mean, h) = sum / static_cast<double>(seg.frames.size());
    }
    results.push_back(std::move(r));
  }
  return results;
}

std::string format_predictions(const std::vector<SegmentResult>& results) {
  std::string out = "segment_id,pose,hh,ho\n";
  for (const auto& r : results)
    out += r.segment_id + ',' + std::to_string(r.prediction.pose) + ',' + join_ids(r.prediction.hh) + ',' +
           join_ids(r.prediction.ho) + '\n';
  return out;
}

std::map<std::string, RealBox> parse_segment_boxes(const std::string& contents) {
  std::map<std::string, RealBox> boxes;
  std::istringstream in(contents);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    const auto f = text::split_csv(line);
    if (line_no == 1 && !f.empty() && f[0] == "segment_id") continue;
    if (f.size() != 5) throw ParseError(line_no, "expected segment_id,x1,y1,x2,y2");
    RealBox b;
    try {
      const double x1 = text::parse_double(f[1]);
      const double y1 = text::parse_double(f[2]);
      b = {x1, y1, text::parse_double(f[3]) - x1, text::parse_double(f[4]) - y1};
    } catch (const ValidationError& e) {
      throw ParseError(line_no, e.what());
    }
    if (!b.valid()) throw ParseError(line_no, "box must satisfy x1 < x2 and y1 < y2");
    if (!boxes.emplace(f[0], b).second) throw ParseError(line_no, "duplicate segment box");
  }
  return boxes;
}

std::string format_detections(const std::vector<SegmentResult>& results, const std::map<std::string, RealBox>& boxes) {
  std::string out = "segment_id,x1,y1,x2,y2,class_id,score\n";
  for (const auto& r : results) {
    const auto it = boxes.find(r.segment_id);
    if (it == boxes.end()) continue;
    const RealBox& b = it->second;
    const std::string prefix = r.segment_id + ',' + text::format_double(b.x) + ',' + text::format_double(b.y) + ',' +
                               text::format_double(b.right()) + ',' + text::format_double(b.bottom()) + ',';
    const auto emit = [&](int flat_id, double score) {
      out += prefix + std::to_string(flat_id) + ',' + text::format_double(score) + '\n';
    };
    const int pose_n = static_cast<int>(r.mean.pose.size());
    const int hh_n = static_cast<int>(r.mean.hh.size());
    emit(r.prediction.pose, r.mean.pose(r.prediction.pose));
    for (int c : r.prediction.hh) emit(pose_n + c, r.mean.hh(c));
    for (int c : r.prediction.ho) emit(pose_n + hh_n + c, r.mean.ho(c));
  }
  return out;
}

}  // namespace foveal::cli
