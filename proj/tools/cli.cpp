#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <optional>

#include "bench.hpp"
#include "foveal/avadata.hpp"
#include "foveal/detmetrics.hpp"
#include "foveal/filters.hpp"
#include "foveal/flow_io.hpp"
#include "foveal/image_io.hpp"
#include "foveal/loss.hpp"
#include "foveal/text.hpp"
#include "prep.hpp"
#include "vote_table.hpp"

namespace fs = std::filesystem;

namespace foveal::cli {

namespace {

std::string slurp(const fs::path& path) {
  std::string s;
  for (const auto& line : text::read_lines(path)) s.append(line).push_back('\n');
  return s;
}

HeadSizes parse_heads(const std::string& s) {
  const auto f = text::split_csv(s);
  if (f.size() != 3) throw ValidationError("--heads must be pose,hh,ho");
  HeadSizes h{text::parse_int(f[0]), text::parse_int(f[1]), text::parse_int(f[2])};
  if (h.pose < 1 || h.human_human < 0 || h.human_object < 0) throw ValidationError("--heads sizes must be positive");
  return h;
}

// ---------------------------------------------------------------- filter

struct FilterArgs {
  std::string mode = "fovea";
  std::string box;
  std::string boxes;
  std::string in;
  std::string out;
  FilterSettings settings;
};

void register_filter(CLI::App& app, FilterArgs& a) {
  app.add_option("--mode", a.mode, "crop, gbb or fovea")->capture_default_str();
  app.add_option("--box", a.box, "attention box x,y,w,h in pixels");
  app.add_option("--boxes", a.boxes, "CSV of x,y,w,h rows; one output per row");
  app.add_option("--sigma1", a.settings.sigma1, "fovea base blur sigma")->capture_default_str();
  app.add_option("--levels", a.settings.levels, "fovea stack depth K")->capture_default_str();
  app.add_option("--sigma", a.settings.sigma, "GBB blur sigma")->capture_default_str();
  app.add_option("--in", a.in, "PNG, .flo, or directory of .flo frames")->required();
  app.add_option("--out", a.out, "output file, or directory for stacks and --boxes")->required();
}

enum class InputKind { Png, Flow, FlowStack };

InputKind input_kind(const fs::path& p) {
  if (fs::is_directory(p)) return InputKind::FlowStack;
  return p.extension() == ".flo" ? InputKind::Flow : InputKind::Png;
}

std::vector<BoundingBox> read_box_rows(const fs::path& path) {
  std::vector<BoundingBox> boxes;
  const auto lines = text::read_lines(path);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (text::trim(lines[i]).empty()) continue;
    if (i == 0 && text::split_csv(lines[i])[0] == "x") continue;
    try {
      boxes.push_back(parse_box(lines[i]));
    } catch (const ValidationError& e) {
      throw ParseError(i + 1, e.what());
    }
  }
  return boxes;
}

int cmd_filter(const FilterArgs& a, std::ostream& out) {
  a.settings.validate();
  FilterSettings settings = a.settings;
  settings.mode = parse_filter_mode(a.mode);
  if (a.box.empty() == a.boxes.empty()) throw ValidationError("give exactly one of --box or --boxes");
  std::vector<BoundingBox> boxes;
  if (!a.box.empty()) boxes.push_back(parse_box(a.box));

  const fs::path in = a.in;
  if (!fs::exists(in)) throw IoError("input " + in.string() + " does not exist");
  if (!a.boxes.empty()) boxes = read_box_rows(a.boxes);
  const InputKind kind = input_kind(in);
  const bool many = !a.boxes.empty();
  const fs::path out_path = a.out;

  const auto target = [&](std::size_t i) {
    if (!many) return out_path;
    return out_path / (in.stem().string() + '_' + std::to_string(i) + (kind == InputKind::FlowStack ? "" : in.extension().string()));
  };

  if (kind == InputKind::FlowStack) {
    std::vector<fs::path> names;
    for (const auto& e : fs::directory_iterator(in))
      if (e.is_regular_file() && e.path().extension() == ".flo") names.push_back(e.path().filename());
    std::sort(names.begin(), names.end());
    const FlowStack stack = read_flow_stack(in);
    validate_flow_stack(stack);
    for (const auto& b : boxes) clamp_box(b, stack.frames.front().width(), stack.frames.front().height());
    for (std::size_t i = 0; i < boxes.size(); ++i) {
      const FlowStack filtered = apply_to_stack(stack, make_filter(settings, boxes[i]));
      const fs::path dir = target(i);
      fs::create_directories(dir);
      for (std::size_t f = 0; f < names.size(); ++f) write_flo(filtered.frames[f], dir / names[f]);
    }
  } else {
    const Image image = kind == InputKind::Flow ? read_flo(in) : read_image(in);
    for (const auto& b : boxes) clamp_box(b, image.width(), image.height());
    if (many) fs::create_directories(out_path);
    std::optional<GaussianStack<float>> stack;
    for (std::size_t i = 0; i < boxes.size(); ++i) {
      Image filtered = [&] {
        if (settings.mode != FilterMode::Fovea) return apply_filter(image, make_filter(settings, boxes[i]));
        if (!stack) stack = build_gaussian_stack(image, settings.sigma1, settings.levels);
        return apply_fovea(*stack, FoveaParams{settings.sigma1, settings.levels, boxes[i]});
      }();
      if (kind == InputKind::Flow)
        write_flo(filtered, target(i));
      else
        write_image(filtered, target(i));
    }
  }
  out << "filter: wrote " << boxes.size() << " output(s)\n";
  return kExitOk;
}

// ---------------------------------------------------------- pyramid-dump

struct PyramidArgs {
  std::string in;
  std::string out;
  double sigma1 = kDefaultFoveaSigma1;
  int levels = kDefaultFoveaLevels;
};

int cmd_pyramid(const PyramidArgs& a, std::ostream& out) {
  if (!(a.sigma1 > 0.0)) throw ValidationError("--sigma1 must be > 0");
  if (a.levels < 1) throw ValidationError("--levels must be >= 1");
  const Image image = read_image(a.in);
  const auto gs = build_gaussian_stack(image, a.sigma1, a.levels);
  const auto ls = build_laplacian_stack(gs);
  const fs::path dir = a.out;
  fs::create_directories(dir);
  for (int k = 0; k <= gs.depth(); ++k) write_image(gs.levels[k], dir / ("gaussian_" + std::to_string(k) + ".png"));
  for (int k = 0; k < gs.depth(); ++k) {
    const Image& band = ls.bands[k];
    write_image(band.with_samples(band.samples() + 0.5f), dir / ("laplacian_" + std::to_string(k) + ".png"));
  }
  out << "pyramid-dump: " << gs.depth() + 1 << " gaussian levels, " << gs.depth() << " laplacian bands\n";
  return kExitOk;
}

// ------------------------------------------------------------------ vote

struct VoteArgs {
  std::string scores;
  std::string out;
  std::string heads;
  std::string boxes;
  std::string dets_out;
  double threshold = kDefaultVoteThreshold;
};

int cmd_vote(const VoteArgs& a, std::ostream& out) {
  if (!std::isfinite(a.threshold)) throw ValidationError("--threshold must be finite");
  std::optional<HeadSizes> heads;
  if (!a.heads.empty()) heads = parse_heads(a.heads);
  if (a.boxes.empty() != a.dets_out.empty()) throw ValidationError("--boxes and --dets-out go together");

  const auto segments = parse_frame_scores(slurp(a.scores), heads);
  std::map<std::string, RealBox> boxes;
  if (!a.boxes.empty()) boxes = parse_segment_boxes(slurp(a.boxes));
  const auto results = vote_segments(segments, a.threshold);
  text::write_file(a.out, format_predictions(results));
  if (!a.dets_out.empty()) text::write_file(a.dets_out, format_detections(results, boxes));
  out << "vote: " << results.size() << " segment(s), threshold " << text::format_double(a.threshold) << '\n';
  return kExitOk;
}

// ------------------------------------------------------------- partition

struct PartitionArgs {
  std::string train;
  std::string test;
  std::string annotations;
  double test_fraction = 0.0;
  std::size_t target = 15000;
  std::size_t min_test = 20;
  std::string scope = "per-split";
  std::string label_map;
  std::string out;
};

int cmd_partition(const PartitionArgs& a, std::ostream& out) {
  PartitionOptions options;
  options.target_size = a.target;
  options.min_test = a.min_test;
  if (a.target == 0) throw ValidationError("--target must be positive");
  if (a.scope != "per-split" && a.scope != "union") throw ValidationError("--target-scope must be per-split or union");
  options.per_split = a.scope == "per-split";
  const bool pooled = !a.annotations.empty();
  if (pooled == (!a.train.empty() || !a.test.empty()))
    throw ValidationError("give either --train and --test, or --annotations with --test-fraction");
  if (!pooled && (a.train.empty() || a.test.empty())) throw ValidationError("--train and --test are both required");
  if (pooled && !(a.test_fraction > 0.0 && a.test_fraction < 1.0))
    throw ValidationError("--test-fraction must be in (0, 1)");

  std::optional<LabelMap> labels;
  if (!a.label_map.empty()) labels = LabelMap::load(a.label_map);
  const Partition part = pooled ? build_partition(parse_annotations(a.annotations), options, a.test_fraction)
                                : build_partition(parse_annotations(a.train), parse_annotations(a.test), options);
  const fs::path dir = a.out;
  fs::create_directories(dir);
  text::write_file(dir / "train.csv", format_annotations(part.train));
  text::write_file(dir / "test.csv", format_annotations(part.test));
  text::write_file(dir / "report.txt", part.report.to_text(labels ? &*labels : nullptr));
  out << "partition: train " << part.report.train_total << ", test " << part.report.test_total << ", "
      << part.report.retained.size() << " classes retained, " << part.report.dropped.size() << " dropped\n";
  if (part.report.insufficient_data) out << "partition: warning: a split had fewer records than the target\n";
  return kExitOk;
}

// ------------------------------------------------------------------ eval

struct EvalArgs {
  std::string dets;
  std::string gt;
  double iou = 0.5;
  std::string report;
  bool eleven_point = false;
};

int cmd_eval(const EvalArgs& a, std::ostream& out) {
  if (!(a.iou > 0.0 && a.iou <= 1.0)) throw ValidationError("--iou must be in (0, 1]");
  const auto dets = parse_detections(a.dets);
  const auto gts = parse_ground_truth(a.gt);
  const auto mode = a.eleven_point ? ApInterpolation::ElevenPoint : ApInterpolation::AllPoint;
  const MeanApResult result = mean_ap(dets, gts, a.iou, mode);

  for (const auto& c : result.per_class)
    out << "class " << c.class_id << ": AP = " << text::format_fixed(c.ap, 6) << " (gt " << c.ground_truth
        << ", dets " << c.detections << ")\n";
  out << "mAP@" << text::format_fixed(a.iou, 2) << " = " << text::format_fixed(result.map, 6) << '\n';

  if (!a.report.empty()) {
    nlohmann::ordered_json j;
    j["iou_threshold"] = a.iou;
    j["interpolation"] = a.eleven_point ? "11-point" : "all-point";
    j["map"] = result.map;
    j["classes"] = nlohmann::json::array();
    for (const auto& c : result.per_class)
      j["classes"].push_back({{"class_id", c.class_id}, {"ap", c.ap}, {"ground_truth", c.ground_truth},
                              {"detections", c.detections}});
    text::write_file(a.report, j.dump(2) + '\n');
  }
  return kExitOk;
}

// ------------------------------------------------------------ loss-check

struct LossArgs {
  std::string in;
  std::string heads = "10,8,12";
  std::string mode = "gb";
  int classes = 24;
  double step = 1e-5;
};

int cmd_loss(const LossArgs& a, std::ostream& out) {
  if (a.mode != "gb" && a.mode != "sigmoids" && a.mode != "single")
    throw ValidationError("--mode must be gb, sigmoids or single");
  if (!(a.step > 0.0)) throw ValidationError("--step must be > 0");
  const bool single = a.mode == "single";
  if (single && a.classes < 1) throw ValidationError("--classes must be >= 1");
  const HeadSizes heads = single ? HeadSizes{a.classes, 0, 0} : parse_heads(a.heads);
  const auto kind = a.mode == "gb" ? LossKind::GeneralizedBinary : LossKind::SumOfSigmoids;
  const std::size_t width = single ? static_cast<std::size_t>(heads.pose) + 1
                                   : static_cast<std::size_t>(heads.total() + 1 + heads.human_human + heads.human_object);

  const auto lines = text::read_lines(a.in);
  std::size_t rows = 0;
  double total = 0.0;
  double worst = 0.0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (text::trim(lines[i]).empty()) continue;
    const auto f = text::split_csv(lines[i]);
    if (f.size() != width)
      throw ParseError(i + 1, "expected " + std::to_string(width) + " fields, found " + std::to_string(f.size()));
    double loss = 0.0;
    double err = 0.0;
    try {
      std::vector<double> v;
      for (std::size_t k = 0; k < static_cast<std::size_t>(heads.total()); ++k) v.push_back(text::parse_double(f[k]));
      const auto seg = [&](int from, int n) { return Eigen::Map<const Eigen::VectorXd>(v.data() + from, n); };
      const int target = text::parse_int(f[heads.total()]);
      if (single) {
        const Eigen::VectorXd logits = seg(0, heads.pose);
        loss = single_head_loss(logits, target);
        // Same check as the multi-head path, with empty interaction heads.
        const ScoreVector s{logits, Eigen::VectorXd(0), Eigen::VectorXd(0)};
        const LabelVector l{target, Eigen::VectorXd(0), Eigen::VectorXd(0)};
        err = gradient_check_error(LossKind::GeneralizedBinary, s, l, a.step);
      } else {
        const ScoreVector s{seg(0, heads.pose), seg(heads.pose, heads.human_human),
                            seg(heads.pose + heads.human_human, heads.human_object)};
        LabelVector l{target, Eigen::VectorXd(heads.human_human), Eigen::VectorXd(heads.human_object)};
        std::size_t k = static_cast<std::size_t>(heads.total()) + 1;
        for (int j = 0; j < heads.human_human; ++j) l.hh(j) = text::parse_double(f[k++]);
        for (int j = 0; j < heads.human_object; ++j) l.ho(j) = text::parse_double(f[k++]);
        loss = loss_value(kind, s, l);
        err = gradient_check_error(kind, s, l, a.step);
      }
    } catch (const ValidationError& e) {
      throw ParseError(i + 1, e.what());
    }
    out << "row " << rows << ": loss = " << text::format_fixed(loss, 9) << '\n';
    total += loss;
    worst = std::max(worst, err);
    ++rows;
  }
  out << "rows = " << rows << '\n';
  out << "mean_loss = " << text::format_fixed(rows ? total / static_cast<double>(rows) : 0.0, 9) << '\n';
  out << "max_grad_rel_err = " << worst << '\n';
  return kExitOk;
}

// ------------------------------------------------------------------ prep

struct PrepArgs {
  std::string annotations;
  std::string frames;
  std::string out;
  std::string mode = "fovea";
  std::string label_map;
  FilterSettings settings;
  int jobs = 1;
};

int cmd_prep(const PrepArgs& a, std::ostream& out, std::ostream& err) {
  PrepConfig config;
  config.annotations = a.annotations;
  config.frames = a.frames;
  config.out = a.out;
  config.filter = a.settings;
  config.filter.mode = parse_filter_mode(a.mode);
  config.filter.validate();
  config.jobs = a.jobs;
  if (a.jobs < 1) throw ValidationError("--jobs must be >= 1");
  if (!a.label_map.empty()) config.label_map = a.label_map;
  if (!fs::is_directory(config.frames)) throw IoError("frames directory " + a.frames + " does not exist");

  const PrepSummary s = prep_pipeline(config, err);
  out << "prep: " << s.annotations << " annotation(s), " << s.items << " item(s), " << s.written << " written, "
      << s.failed << " failed\n";
  return s.failed == 0 ? kExitOk : kExitIo;
}

// ----------------------------------------------------------------- bench

int cmd_bench(int size, int iterations, std::ostream& out) {
  if (size < 8) throw ValidationError("--size must be >= 8");
  if (iterations < 1) throw ValidationError("--iterations must be >= 1");
  const BenchResult r = run_benchmark(size, iterations);
  out << "fovea K=5 " << size << 'x' << size << "x3: " << text::format_fixed(r.fovea_fps, 1) << " fps (target "
      << kFoveaFpsTarget << ") " << (r.fovea_ok() ? "PASS" : "WARN") << '\n';
  out << "gbb sigma=7 " << size << 'x' << size << "x3: " << text::format_fixed(r.gbb_fps, 1) << " fps (target "
      << kGbbFpsTarget << ") " << (r.gbb_ok() ? "PASS" : "WARN") << '\n';
  return kExitOk;
}

int default_jobs() {
  if (const char* env = std::getenv("FOVEAL_PREP_JOBS")) {
    try {
      return text::parse_int(env);
    } catch (const ValidationError&) {
      return 0;  // rejected by --jobs validation
    }
  }
  return 1;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Attention filtering, voting, partitioning and evaluation for two-stream action detection", "foveal"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  FilterArgs filter;
  register_filter(*app.add_subcommand("filter", "apply a crop, GBB or fovea attention filter"), filter);

  PyramidArgs pyramid;
  auto* pyr = app.add_subcommand("pyramid-dump", "write every Gaussian level and Laplacian band as PNG");
  pyr->add_option("--in", pyramid.in, "input PNG")->required();
  pyr->add_option("--out", pyramid.out, "output directory")->required();
  pyr->add_option("--sigma1", pyramid.sigma1)->capture_default_str();
  pyr->add_option("--levels", pyramid.levels)->capture_default_str();

  VoteArgs vote;
  auto* vt = app.add_subcommand("vote", "fuse per-frame scores into segment predictions");
  vt->add_option("--scores", vote.scores, "CSV segment_id,frame_idx,head,class,score")->required();
  vt->add_option("--out", vote.out, "prediction CSV")->required();
  vt->add_option("--threshold", vote.threshold, "vote threshold for hh/ho scores")->capture_default_str();
  vt->add_option("--heads", vote.heads, "head sizes pose,hh,ho (default: inferred)");
  vt->add_option("--boxes", vote.boxes, "CSV segment_id,x1,y1,x2,y2 for detection output");
  vt->add_option("--dets-out", vote.dets_out, "detection CSV for eval");

  PartitionArgs part;
  auto* pt = app.add_subcommand("partition", "build a temporally contiguous train/test partition");
  pt->add_option("--train", part.train, "train-split annotation CSV");
  pt->add_option("--test", part.test, "test-split annotation CSV");
  pt->add_option("--annotations", part.annotations, "single annotation CSV, split by video");
  pt->add_option("--test-fraction", part.test_fraction, "fraction of videos used for test with --annotations");
  pt->add_option("--target", part.target, "records per split")->capture_default_str();
  pt->add_option("--min-test", part.min_test, "minimum test records per retained class")->capture_default_str();
  pt->add_option("--target-scope", part.scope, "per-split or union")->capture_default_str();
  pt->add_option("--label-map", part.label_map, "id,name,type label map");
  pt->add_option("--out", part.out, "output directory")->required();

  EvalArgs eval;
  auto* ev = app.add_subcommand("eval", "per-class AP and mAP");
  ev->add_option("--dets", eval.dets, "CSV segment_id,x1,y1,x2,y2,class_id,score")->required();
  ev->add_option("--gt", eval.gt, "CSV segment_id,x1,y1,x2,y2,class_id")->required();
  ev->add_option("--iou", eval.iou, "IoU threshold")->capture_default_str();
  ev->add_option("--report", eval.report, "write a JSON report");
  ev->add_flag("--eleven-point", eval.eleven_point, "11-point interpolated AP");

  LossArgs loss;
  auto* ls = app.add_subcommand("loss-check", "evaluate the loss and check its gradient on CSV rows");
  ls->add_option("--in", loss.in, "CSV rows of logits then targets")->required();
  ls->add_option("--heads", loss.heads, "head sizes pose,hh,ho")->capture_default_str();
  ls->add_option("--mode", loss.mode, "gb, sigmoids or single")->capture_default_str();
  ls->add_option("--classes", loss.classes, "class count for single mode")->capture_default_str();
  ls->add_option("--step", loss.step, "finite-difference step")->capture_default_str();

  PrepArgs prep;
  prep.jobs = default_jobs();
  auto* pp = app.add_subcommand("prep", "filter every annotated person and write a manifest");
  pp->add_option("--annotations", prep.annotations, "AVA annotation CSV")->required();
  pp->add_option("--frames", prep.frames, "directory of <video>_<timestamp>.png keyframes")->required();
  pp->add_option("--out", prep.out, "output directory")->required();
  pp->add_option("--mode", prep.mode, "crop, gbb or fovea")->capture_default_str();
  pp->add_option("--sigma1", prep.settings.sigma1)->capture_default_str();
  pp->add_option("--levels", prep.settings.levels)->capture_default_str();
  pp->add_option("--sigma", prep.settings.sigma)->capture_default_str();
  pp->add_option("--jobs", prep.jobs, "worker threads (default $FOVEAL_PREP_JOBS or 1)");
  pp->add_option("--label-map", prep.label_map, "id,name,type label map");

  int bench_size = 224;
  int bench_iterations = 50;
  auto* bn = app.add_subcommand("bench", "measure filter throughput");
  bn->add_option("--size", bench_size)->capture_default_str();
  bn->add_option("--iterations", bench_iterations)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (app.got_subcommand("filter")) return cmd_filter(filter, out);
    if (app.got_subcommand("pyramid-dump")) return cmd_pyramid(pyramid, out);
    if (app.got_subcommand("vote")) return cmd_vote(vote, out);
    if (app.got_subcommand("partition")) return cmd_partition(part, out);
    if (app.got_subcommand("eval")) return cmd_eval(eval, out);
    if (app.got_subcommand("loss-check")) return cmd_loss(loss, out);
    if (app.got_subcommand("prep")) return cmd_prep(prep, out, err);
    if (app.got_subcommand("bench")) return cmd_bench(bench_size, bench_iterations, out);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitValidation;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.push_back("foveal");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace foveal::cli
