#pragma once

#include <filesystem>

#include "foveal/image.hpp"

namespace foveal {

/// Reads an 8-bit PNG as a 1- or 3-channel image with samples in [0,1].
/// Palette and sub-byte gray images are expanded, 16-bit samples reduced to
/// 8 bits, and alpha is dropped.
/// Throws IoError when the file cannot be read, UnsupportedFormat when it is
/// not a PNG.
Image read_image(const std::filesystem::path& path);

/// Writes a 1- or 3-channel image as 8-bit PNG; samples are clamped to [0,1]
/// and rounded to the nearest of 256 levels.
void write_image(const Image& image, const std::filesystem::path& path);

/// The sample value `v` becomes after an 8-bit write/read round trip.
float quantize8(float v);

}  // namespace foveal
