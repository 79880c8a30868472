#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace foveal {

/// One row of an AVA annotation CSV:
/// `video_id,timestamp,x1,y1,x2,y2,action_id,person_id`.
/// Rows sharing (video_id, timestamp, person_id) describe the same person.
struct AnnotationRecord {
  std::string video_id;
  int timestamp = 0;
  double x1 = 0, y1 = 0, x2 = 0, y2 = 0;
  int action_id = 0;
  int person_id = 0;

  friend bool operator==(const AnnotationRecord&, const AnnotationRecord&) = default;
};

enum class HeadKind { Pose, HumanHuman, HumanObject };

const char* to_string(HeadKind kind);

struct LabelInfo {
  std::string name;
  HeadKind kind = HeadKind::Pose;
};

/// action id -> name and head. When no map file is supplied the AVA v2
/// layout is assumed: 1-14 pose, 15-63 human-object, 64-80 human-human.
class LabelMap {
 public:
  LabelMap() = default;
  explicit LabelMap(std::map<int, LabelInfo> entries) : entries_(std::move(entries)) {}

  /// Parses `id,name,type` lines, type in {pose, human-human, human-object}.
  static LabelMap load(const std::filesystem::path& path);

  HeadKind kind(int action_id) const;
  std::string name(int action_id) const;
  bool empty() const { return entries_.empty(); }

 private:
  std::map<int, LabelInfo> entries_;
};

/// Throws IoError when unreadable, ParseError (with the line number) on a
/// malformed row. Blank lines are skipped.
std::vector<AnnotationRecord> parse_annotations(const std::filesystem::path& path);
std::vector<AnnotationRecord> parse_annotations_text(const std::string& text);

/// Serializes records in the input CSV layout.
std::string format_annotations(const std::vector<AnnotationRecord>& records);

/// (class, count) sorted by descending count, then ascending class.
std::vector<std::pair<int, std::size_t>> class_distribution(const std::vector<AnnotationRecord>& records);

struct PartitionOptions {
  std::size_t target_size = 15000;
  std::size_t min_test = 20;
  /// true: target_size applies to each split; false: to train + test.
  bool per_split = true;
};

struct ClassSplitCount {
  int class_id = 0;
  std::size_t train = 0;
  std::size_t test = 0;
};

struct PartitionReport {
  PartitionOptions options;
  std::size_t train_available = 0;
  std::size_t test_available = 0;
  /// Set when a split had fewer records than its target; that split then
  /// takes everything available.
  bool insufficient_data = false;
  std::size_t pruning_rounds = 0;
  std::vector<ClassSplitCount> retained;  // ascending class id
  std::vector<ClassSplitCount> dropped;   // ascending class id, counts at drop time
  std::size_t train_total = 0;
  std::size_t test_total = 0;
  std::vector<std::pair<int, std::size_t>> distribution;  // train + test

  /// Line-oriented `key: value` text. Head counts are included when a label
  /// map is given.
  std::string to_text(const LabelMap* labels = nullptr) const;
};

struct Partition {
  std::vector<AnnotationRecord> train;
  std::vector<AnnotationRecord> test;
  PartitionReport report;
};

/// Records in selection order: ascending timestamp, then video id, person id
/// and input position. Taking a prefix of this order keeps every video's
/// selected timestamps a prefix of its own timeline.
std::vector<AnnotationRecord> temporal_order(const std::vector<AnnotationRecord>& records);

/// Builds a reduced train/test partition:
///  1. each pool is put in temporal order and its first target records kept;
///  2. every class with fewer than min_test test records is removed from both
///     splits, repeated until no such class remains;
///  3. the report is filled in.
Partition build_partition(const std::vector<AnnotationRecord>& train_pool,
                          const std::vector<AnnotationRecord>& test_pool, const PartitionOptions& options = {});

/// Single-pool variant: the last ceil(test_fraction * videos) videos, in
/// ascending video-id order, form the test pool.
Partition build_partition(const std::vector<AnnotationRecord>& records, const PartitionOptions& options,
                          double test_fraction);

}  // namespace foveal
