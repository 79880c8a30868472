#include "prep.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <thread>
#include <tuple>

#include "foveal/avadata.hpp"
#include "foveal/image_io.hpp"
#include "foveal/text.hpp"

namespace foveal::cli {

FilterMode parse_filter_mode(const std::string& name) {
  if (name == "crop") return FilterMode::Crop;
  if (name == "gbb") return FilterMode::Gbb;
  if (name == "fovea") return FilterMode::Fovea;
  throw ValidationError("filter mode must be crop, gbb or fovea, got '" + name + "'");
}

void FilterSettings::validate() const {
  if (!(sigma1 > 0.0)) throw ValidationError("--sigma1 must be > 0");
  if (levels < 1) throw ValidationError("--levels must be >= 1");
  if (!(sigma > 0.0)) throw ValidationError("--sigma must be > 0");
}

AttentionFilter make_filter(const FilterSettings& settings, const BoundingBox& box) {
  switch (settings.mode) {
    case FilterMode::Crop:
      return CropFilter{box};
    case FilterMode::Gbb:
      return GbbFilter{box, settings.sigma};
    case FilterMode::Fovea:
      break;
  }
  return FoveaFilter{FoveaParams{settings.sigma1, settings.levels, box}};
}

namespace {

struct Person {
  int person_id = 0;
  AnnotationRecord first;  // box source
  std::vector<int> actions;
  std::string output_name;
  std::string labels;
  std::string label_error;
};

struct Keyframe {
  std::string video_id;
  int timestamp = 0;
  std::vector<Person> persons;
};

struct ItemOutcome {
  bool ok = false;
  std::string error;
};

std::string join(const std::vector<int>& ids) {
  std::string s;
  for (std::size_t i = 0; i < ids.size(); ++i) s += (i ? "|" : "") + std::to_string(ids[i]);
  return s;
}

std::string label_string(const std::vector<int>& actions, const LabelMap& labels) {
  std::vector<int> pose, hh, ho;
  for (int a : actions) {
    switch (labels.kind(a)) {
      case HeadKind::Pose:
        pose.push_back(a);
        break;
      case HeadKind::HumanHuman:
        hh.push_back(a);
        break;
      case HeadKind::HumanObject:
        ho.push_back(a);
        break;
    }
  }
  return join(pose) + ';' + join(hh) + ';' + join(ho);
}

std::vector<ItemOutcome> process_keyframe(const Keyframe& kf, const PrepConfig& config) {
  std::vector<ItemOutcome> outcomes(kf.persons.size());
  std::optional<Image> frame;
  try {
    frame = read_image(config.frames / (kf.video_id + '_' + std::to_string(kf.timestamp) + ".png"));
  } catch (const std::exception& e) {
    for (auto& o : outcomes) o.error = e.what();
    return outcomes;
  }

  std::optional<GaussianStack<float>> stack;
  for (std::size_t i = 0; i < kf.persons.size(); ++i) {
    const Person& p = kf.persons[i];
    if (!p.label_error.empty()) {
      outcomes[i].error = p.label_error;
      continue;
    }
    try {
      const BoundingBox box = clamp_box(
          denormalize_box(p.first.x1, p.first.y1, p.first.x2, p.first.y2, frame->width(), frame->height()),
          frame->width(), frame->height());
      Image filtered = [&] {
        if (config.filter.mode != FilterMode::Fovea) return apply_filter(*frame, make_filter(config.filter, box));
        // One stack per keyframe, shared by every person on it.
        if (!stack) stack = build_gaussian_stack(*frame, config.filter.sigma1, config.filter.levels);
        return apply_fovea(*stack, FoveaParams{config.filter.sigma1, config.filter.levels, box});
      }();
      write_image(filtered, config.out / p.output_name);
      outcomes[i].ok = true;
    } catch (const std::exception& e) {
      outcomes[i].error = e.what();
    }
  }
  return outcomes;
}

}  // namespace

PrepSummary prep_pipeline(const PrepConfig& config, std::ostream& log) {
  config.filter.validate();
  if (config.jobs < 1) throw ValidationError("--jobs must be >= 1");

  const auto records = parse_annotations(config.annotations);
  const LabelMap labels = config.label_map ? LabelMap::load(*config.label_map) : LabelMap{};
  std::filesystem::create_directories(config.out);

  std::map<std::tuple<std::string, int>, std::map<int, Person>> grouped;
  for (const auto& r : records) {
    auto [it, inserted] = grouped[{r.video_id, r.timestamp}].try_emplace(r.person_id);
    if (inserted) {
      it->second.person_id = r.person_id;
      it->second.first = r;
    }
    it->second.actions.push_back(r.action_id);
  }

  PrepSummary summary;
  summary.annotations = records.size();
  std::vector<Keyframe> keyframes;
  for (auto& [key, persons] : grouped) {
    Keyframe kf{std::get<0>(key), std::get<1>(key), {}};
    for (auto& [id, p] : persons) {
      std::sort(p.actions.begin(), p.actions.end());
      p.actions.erase(std::unique(p.actions.begin(), p.actions.end()), p.actions.end());
      p.output_name = kf.video_id + '_' + std::to_string(kf.timestamp) + '_' + std::to_string(id) + ".png";
      try {
        p.labels = label_string(p.actions, labels);
      } catch (const std::exception& e) {
        p.label_error = e.what();
      }
      kf.persons.push_back(std::move(p));
    }
    keyframes.push_back(std::move(kf));
  }

  std::vector<std::vector<ItemOutcome>> outcomes(keyframes.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < keyframes.size(); i = next++) outcomes[i] = process_keyframe(keyframes[i], config);
  };
  {
    const auto workers = static_cast<std::size_t>(config.jobs);
    std::vector<std::jthread> pool;
    for (std::size_t w = 1; w < std::min(workers, keyframes.size()); ++w) pool.emplace_back(worker);
    worker();
  }

  std::string manifest = "file,video_id,timestamp,person_id,labels\n";
  for (std::size_t k = 0; k < keyframes.size(); ++k) {
    for (std::size_t i = 0; i < keyframes[k].persons.size(); ++i) {
      const Person& p = keyframes[k].persons[i];
      ++summary.items;
      if (!outcomes[k][i].ok) {
        ++summary.failed;
        log << "prep: " << p.output_name << ": " << outcomes[k][i].error << '\n';
        continue;
      }
      ++summary.written;
      manifest += p.output_name + ',' + keyframes[k].video_id + ',' + std::to_string(keyframes[k].timestamp) + ',' +
                  std::to_string(p.person_id) + ',' + p.labels + '\n';
    }
  }
  text::write_file(config.out / "manifest.csv", manifest);
  return summary;
}

}  // namespace foveal::cli
