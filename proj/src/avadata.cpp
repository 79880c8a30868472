#include "foveal/avadata.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "foveal/errors.hpp"
#include "foveal/text.hpp"

namespace foveal {

const char* to_string(HeadKind kind) {
  switch (kind) {
    case HeadKind::Pose:
      return "pose";
    case HeadKind::HumanHuman:
      return "human-human";
    case HeadKind::HumanObject:
      return "human-object";
  }
  return "unknown";
}

LabelMap LabelMap::load(const std::filesystem::path& path) {
  const auto lines = text::read_lines(path);
  std::map<int, LabelInfo> entries;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (text::trim(lines[i]).empty()) continue;
    const auto f = text::split_csv(lines[i]);
    if (f.size() != 3) throw ParseError(i + 1, "label map rows are id,name,type");
    if (i == 0 && f[0] == "id") continue;
    HeadKind kind;
    if (f[2] == "pose")
      kind = HeadKind::Pose;
    else if (f[2] == "human-human")
      kind = HeadKind::HumanHuman;
    else if (f[2] == "human-object")
      kind = HeadKind::HumanObject;
    else
      throw ParseError(i + 1, "unknown label type '" + f[2] + "'");
    try {
      entries[text::parse_int(f[0])] = {f[1], kind};
    } catch (const ValidationError& e) {
      throw ParseError(i + 1, e.what());
    }
  }
  return LabelMap(std::move(entries));
}

HeadKind LabelMap::kind(int action_id) const {
  if (const auto it = entries_.find(action_id); it != entries_.end()) return it->second.kind;
  if (!entries_.empty()) throw ValidationError("action id " + std::to_string(action_id) + " missing from label map");
  if (action_id <= 14) return HeadKind::Pose;
  if (action_id <= 63) return HeadKind::HumanObject;
  return HeadKind::HumanHuman;
}

std::string LabelMap::name(int action_id) const {
  if (const auto it = entries_.find(action_id); it != entries_.end()) return it->second.name;
  return std::to_string(action_id);
}

std::vector<AnnotationRecord> parse_annotations_text(const std::string& contents) {
  std::vector<AnnotationRecord> records;
  std::istringstream in(contents);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    const auto f = text::split_csv(line);
    if (f.size() != 8) throw ParseError(line_no, "expected 8 fields, found " + std::to_string(f.size()));
    AnnotationRecord r;
    try {
      r.video_id = f[0];
      r.timestamp = text::parse_int(f[1]);
      r.x1 = text::parse_double(f[2]);
      r.y1 = text::parse_double(f[3]);
      r.x2 = text::parse_double(f[4]);
      r.y2 = text::parse_double(f[5]);
      r.action_id = text::parse_int(f[6]);
      r.person_id = text::parse_int(f[7]);
    } catch (const ValidationError& e) {
      throw ParseError(line_no, e.what());
    }
    if (r.video_id.empty()) throw ParseError(line_no, "empty video id");
    if (!(0.0 <= r.x1 && r.x1 < r.x2 && r.x2 <= 1.0 && 0.0 <= r.y1 && r.y1 < r.y2 && r.y2 <= 1.0))
      throw ParseError(line_no, "box corners must satisfy 0 <= x1 < x2 <= 1 and 0 <= y1 < y2 <= 1");
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<AnnotationRecord> parse_annotations(const std::filesystem::path& path) {
  const auto lines = text::read_lines(path);
  std::string joined;
  for (const auto& l : lines) joined.append(l).push_back('\n');
  return parse_annotations_text(joined);
}

std::string format_annotations(const std::vector<AnnotationRecord>& records) {
  std::string out;
  for (const auto& r : records) {
    out += r.video_id + ',' + std::to_string(r.timestamp) + ',' + text::format_double(r.x1) + ',' +
           text::format_double(r.y1) + ',' + text::format_double(r.x2) + ',' + text::format_double(r.y2) + ',' +
           std::to_string(r.action_id) + ',' + std::to_string(r.person_id) + '\n';
  }
  return out;
}

std::vector<std::pair<int, std::size_t>> class_distribution(const std::vector<AnnotationRecord>& records) {
  std::map<int, std::size_t> counts;
  for (const auto& r : records) ++counts[r.action_id];
  std::vector<std::pair<int, std::size_t>> dist(counts.begin(), counts.end());
  std::stable_sort(dist.begin(), dist.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  return dist;
}

std::vector<AnnotationRecord> temporal_order(const std::vector<AnnotationRecord>& records) {
  std::vector<std::size_t> idx(records.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    const auto& ra = records[a];
    const auto& rb = records[b];
    if (ra.timestamp != rb.timestamp) return ra.timestamp < rb.timestamp;
    if (ra.video_id != rb.video_id) return ra.video_id < rb.video_id;
    return ra.person_id < rb.person_id;
  });
  std::vector<AnnotationRecord> out;
  out.reserve(records.size());
  for (std::size_t i : idx) out.push_back(records[i]);
  return out;
}

namespace {

std::vector<AnnotationRecord> take_prefix(const std::vector<AnnotationRecord>& pool, std::size_t target,
                                          bool& insufficient) {
  std::vector<AnnotationRecord> ordered = temporal_order(pool);
  if (ordered.size() < target)
    insufficient = true;
  else
    ordered.resize(target);
  return ordered;
}

std::map<int, std::size_t> count_classes(const std::vector<AnnotationRecord>& records) {
  std::map<int, std::size_t> counts;
  for (const auto& r : records) ++counts[r.action_id];
  return counts;
}

void remove_classes(std::vector<AnnotationRecord>& records, const std::set<int>& classes) {
  std::erase_if(records, [&](const AnnotationRecord& r) { return classes.count(r.action_id) != 0; });
}

}  // namespace

Partition build_partition(const std::vector<AnnotationRecord>& train_pool,
                          const std::vector<AnnotationRecord>& test_pool, const PartitionOptions& options) {
  if (train_pool.empty() && test_pool.empty()) throw ValidationError("partition needs at least one record");
  if (options.target_size == 0) throw ValidationError("partition target size must be positive");

  Partition part;
  PartitionReport& report = part.report;
  report.options = options;
  report.train_available = train_pool.size();
  report.test_available = test_pool.size();

  std::size_t train_target = options.target_size;
  std::size_t test_target = options.target_size;
  if (!options.per_split) {
    const std::size_t available = train_pool.size() + test_pool.size();
    train_target = static_cast<std::size_t>(
        std::llround(static_cast<double>(options.target_size) * static_cast<double>(train_pool.size()) /
                     static_cast<double>(available)));
    test_target = options.target_size - std::min(train_target, options.target_size);
  }
  part.train = take_prefix(train_pool, train_target, report.insufficient_data);
  part.test = take_prefix(test_pool, test_target, report.insufficient_data);

  // Every class seen in either split, with counts at the time it is judged.
  const auto initial_train = count_classes(part.train);
  std::set<int> classes;
  for (const auto& [c, n] : initial_train) classes.insert(c);
  for (const auto& [c, n] : count_classes(part.test)) classes.insert(c);

  // Records carry one label each, so a single round normally suffices; the
  // loop keeps the minimum-test guarantee if that ever changes.
  while (true) {
    const auto test_counts = count_classes(part.test);
    const auto train_counts = count_classes(part.train);
    std::set<int> drop;
    for (int c : classes) {
      const auto it = test_counts.find(c);
      const std::size_t n = it == test_counts.end() ? 0 : it->second;
      if (n < options.min_test) {
        drop.insert(c);
        const auto tr = train_counts.find(c);
        report.dropped.push_back({c, tr == train_counts.end() ? 0 : tr->second, n});
      }
    }
    if (drop.empty()) break;
    ++report.pruning_rounds;
    for (int c : drop) classes.erase(c);
    remove_classes(part.train, drop);
    remove_classes(part.test, drop);
  }
  std::sort(report.dropped.begin(), report.dropped.end(),
            [](const ClassSplitCount& a, const ClassSplitCount& b) { return a.class_id < b.class_id; });

  const auto train_counts = count_classes(part.train);
  const auto test_counts = count_classes(part.test);
  for (int c : classes) {
    const auto tr = train_counts.find(c);
    report.retained.push_back({c, tr == train_counts.end() ? 0 : tr->second, test_counts.at(c)});
  }
  report.train_total = part.train.size();
  report.test_total = part.test.size();
  std::vector<AnnotationRecord> all = part.train;
  all.insert(all.end(), part.test.begin(), part.test.end());
  report.distribution = class_distribution(all);
  return part;
}

Partition build_partition(const std::vector<AnnotationRecord>& records, const PartitionOptions& options,
                          double test_fraction) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) throw ValidationError("test fraction must be in (0, 1)");
  std::set<std::string> videos;
  for (const auto& r : records) videos.insert(r.video_id);
  const auto n_test = static_cast<std::size_t>(std::ceil(test_fraction * static_cast<double>(videos.size())));
  std::set<std::string> test_videos(std::next(videos.begin(), static_cast<long>(videos.size() - n_test)), videos.end());
  std::vector<AnnotationRecord> train_pool, test_pool;
  for (const auto& r : records) (test_videos.count(r.video_id) ? test_pool : train_pool).push_back(r);
  return build_partition(train_pool, test_pool, options);
}

std::string PartitionReport::to_text(const LabelMap* labels) const {
  std::ostringstream out;
  out << "target_size: " << options.target_size << '\n'
      << "target_scope: " << (options.per_split ? "per-split" : "union") << '\n'
      << "min_test: " << options.min_test << '\n'
      << "train_available: " << train_available << '\n'
      << "test_available: " << test_available << '\n'
      << "insufficient_data: " << (insufficient_data ? "true" : "false") << '\n'
      << "pruning_rounds: " << pruning_rounds << '\n'
      << "train_total: " << train_total << '\n'
      << "test_total: " << test_total << '\n'
      << "retained_classes: " << retained.size() << '\n'
      << "dropped_classes: " << dropped.size() << '\n';
  if (labels != nullptr) {
    std::map<HeadKind, std::size_t> per_head;
    for (const auto& c : retained) ++per_head[labels->kind(c.class_id)];
    for (HeadKind k : {HeadKind::Pose, HeadKind::HumanHuman, HeadKind::HumanObject})
      out << "retained_" << to_string(k) << "_classes: " << per_head[k] << '\n';
  }
  const auto describe = [&](int c) {
    std::string s = std::to_string(c);
    if (labels != nullptr) s += " name=" + labels->name(c) + " head=" + to_string(labels->kind(c));
    return s;
  };
  for (const auto& c : retained) out << "retained: " << describe(c.class_id) << " train=" << c.train << " test=" << c.test << '\n';
  for (const auto& c : dropped)
    out << "dropped: " << describe(c.class_id) << " train=" << c.train << " test=" << c.test
        << " reason=test_count_below_min\n";
  out << "distribution:";
  for (std::size_t i = 0; i < distribution.size(); ++i)
    out << (i == 0 ? " " : ",") << distribution[i].first << '=' << distribution[i].second;
  out << '\n';
  return out.str();
}

}  // namespace foveal
