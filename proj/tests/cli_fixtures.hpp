#pragma once

#include <filesystem>
#include <fstream>
#include <iterator>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "foveal/image_io.hpp"
#include "oracles.hpp"

namespace fixture {

struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};

inline CliResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = foveal::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_file(const std::filesystem::path& p, const std::string& contents) {
  std::ofstream(p, std::ios::binary) << contents;
}

/// relative path -> file bytes
inline std::map<std::string, std::string> tree(const std::filesystem::path& root) {
  std::map<std::string, std::string> files;
  for (const auto& e : std::filesystem::recursive_directory_iterator(root))
    if (e.is_regular_file()) files[std::filesystem::relative(e.path(), root).string()] = read_file(e.path());
  return files;
}

/// Keyframes `<video>_<ts>.png` under root/frames and `annotations` rows in
/// root/ava.csv, several persons per keyframe and several actions per person.
inline void prep_corpus(const std::filesystem::path& root, int annotations, unsigned seed = 3) {
  std::mt19937 rng(seed);
  std::filesystem::create_directories(root / "frames");
  std::uniform_real_distribution<double> corner(0.0, 0.45), extent(0.2, 0.5);
  std::uniform_int_distribution<int> pose(1, 14), other(15, 80);
  std::string csv;
  int written = 0;
  for (int kf = 0; written < annotations; ++kf) {
    const std::string video = "vid" + std::to_string(kf % 3);
    const int ts = 902 + kf / 3;
    foveal::write_image(oracle::random_image(rng, 48, 40, 3),
                        root / "frames" / (video + '_' + std::to_string(ts) + ".png"));
    for (int person = 0; person < 3 && written < annotations; ++person) {
      const double x1 = corner(rng), y1 = corner(rng);
      const double x2 = x1 + extent(rng), y2 = y1 + extent(rng);
      const auto row = [&](int action) {
        std::ostringstream r;
        r << video << ',' << ts << ',' << x1 << ',' << y1 << ',' << x2 << ',' << y2 << ',' << action << ',' << person
          << '\n';
        csv += r.str();
        ++written;
      };
      row(pose(rng));
      if (written < annotations) row(other(rng));
    }
  }
  write_file(root / "ava.csv", csv);
}

}  // namespace fixture
