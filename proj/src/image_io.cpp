#include "foveal/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <vector>

namespace foveal {

namespace {

void check_png_signature(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::array<unsigned char, 8> sig{};
  in.read(reinterpret_cast<char*>(sig.data()), sig.size());
  if (in.gcount() != static_cast<std::streamsize>(sig.size()) || png_sig_cmp(sig.data(), 0, sig.size()) != 0)
    throw UnsupportedFormat(path.string() + " is not a PNG file");
}

std::uint8_t to_byte(float v) {
  return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0f, 1.0f) * 255.0f));
}

}  // namespace

float quantize8(float v) { return static_cast<float>(to_byte(v)) / 255.0f; }

Image read_image(const std::filesystem::path& path) {
  check_png_signature(path);

  png_image png{};
  png.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&png, path.c_str()))
    throw IoError("cannot decode " + path.string() + ": " + png.message);

  const int channels = (png.format & PNG_FORMAT_FLAG_COLOR) ? 3 : 1;
  png.format = channels == 3 ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  std::vector<std::uint8_t> buffer(PNG_IMAGE_SIZE(png));
  if (!png_image_finish_read(&png, nullptr, buffer.data(), 0, nullptr)) {
    const std::string msg = png.message;
    png_image_free(&png);
    throw IoError("cannot decode " + path.string() + ": " + msg);
  }

  Image image(static_cast<int>(png.width), static_cast<int>(png.height), channels);
  std::transform(buffer.begin(), buffer.end(), image.data().begin(),
                 [](std::uint8_t b) { return static_cast<float>(b) / 255.0f; });
  return image;
}

void write_image(const Image& image, const std::filesystem::path& path) {
  if (image.channels() == 2) throw UnsupportedFormat("2-channel (flow) images cannot be written as PNG");

  std::vector<std::uint8_t> buffer(static_cast<std::size_t>(image.size()));
  std::transform(image.data().begin(), image.data().end(), buffer.begin(), to_byte);

  png_image png{};
  png.version = PNG_IMAGE_VERSION;
  png.width = static_cast<png_uint_32>(image.width());
  png.height = static_cast<png_uint_32>(image.height());
  png.format = image.channels() == 3 ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  if (!png_image_write_to_file(&png, path.c_str(), 0, buffer.data(), 0, nullptr))
    throw IoError("cannot write " + path.string() + ": " + png.message);
}

}  // namespace foveal
