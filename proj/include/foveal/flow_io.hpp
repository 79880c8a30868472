#pragma once

#include <filesystem>
#include <vector>

#include "foveal/image.hpp"

namespace foveal {

/// Middlebury `.flo`: "PIEH", int32 width, int32 height, then interleaved
/// little-endian float32 (u, v) pairs, row-major.
Image read_flo(const std::filesystem::path& path);
void write_flo(const Image& flow, const std::filesystem::path& path);

/// Loads a stack from explicit frame paths, in order.
FlowStack read_flow_stack(const std::vector<std::filesystem::path>& paths);

/// Loads every `*.flo` in `dir`, sorted by file name.
FlowStack read_flow_stack(const std::filesystem::path& dir);

}  // namespace foveal
