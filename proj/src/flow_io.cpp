#include "foveal/flow_io.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

namespace foveal {

namespace {

constexpr char kMagic[4] = {'P', 'I', 'E', 'H'};
// Guards against absurd headers before allocating.
constexpr std::int64_t kMaxFlowPixels = std::int64_t{1} << 28;

static_assert(std::endian::native == std::endian::little, ".flo I/O assumes a little-endian host");

template <typename T>
T read_pod(std::istream& in, const std::filesystem::path& path) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!in) throw IoError("truncated .flo file " + path.string());
  return value;
}

}  // namespace

void validate_flow_stack(const FlowStack& stack) {
  if (stack.frames.empty()) return;
  const Image& first = stack.frames.front();
  for (const Image& f : stack.frames) {
    if (f.channels() != 2) throw ValidationError("flow frames must have exactly 2 channels");
    if (f.width() != first.width() || f.height() != first.height())
      throw ValidationError("flow frames in a stack must share dimensions");
  }
}

Image read_flo(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  char magic[4] = {};
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0) throw UnsupportedFormat(path.string() + " is not a .flo file");
  const auto width = read_pod<std::int32_t>(in, path);
  const auto height = read_pod<std::int32_t>(in, path);
  if (width < 1 || height < 1 || std::int64_t{width} * height > kMaxFlowPixels)
    throw UnsupportedFormat("implausible .flo dimensions in " + path.string());

  Image flow(width, height, 2);
  auto samples = flow.data();
  in.read(reinterpret_cast<char*>(samples.data()), static_cast<std::streamsize>(samples.size_bytes()));
  if (!in) throw IoError("truncated .flo file " + path.string());
  return flow;
}

void write_flo(const Image& flow, const std::filesystem::path& path) {
  if (flow.channels() != 2) throw UnsupportedFormat(".flo files hold 2-channel images only");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  const std::int32_t width = flow.width();
  const std::int32_t height = flow.height();
  out.write(kMagic, 4);
  out.write(reinterpret_cast<const char*>(&width), sizeof width);
  out.write(reinterpret_cast<const char*>(&height), sizeof height);
  const auto samples = flow.data();
  out.write(reinterpret_cast<const char*>(samples.data()), static_cast<std::streamsize>(samples.size_bytes()));
  if (!out) throw IoError("error writing " + path.string());
}

FlowStack read_flow_stack(const std::vector<std::filesystem::path>& paths) {
  FlowStack stack;
  stack.frames.reserve(paths.size());
  for (const auto& p : paths) stack.frames.push_back(read_flo(p));
  validate_flow_stack(stack);
  return stack;
}

FlowStack read_flow_stack(const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) throw IoError(dir.string() + " is not a directory");
  std::vector<std::filesystem::path> paths;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".flo") paths.push_back(entry.path());
  std::sort(paths.begin(), paths.end());
  return read_flow_stack(paths);
}

}  // namespace foveal
