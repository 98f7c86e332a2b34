#pragma once

#include <filesystem>
#include <string>

#include "lph/grid.hpp"

namespace lph {

// ".gfn" container: one line of JSON {"d","n","period","dtype":"c128",
// "layout":"row-major"} followed by raw little-endian interleaved
// float64 re/im pairs in row-major order.
void write_gfn(const std::filesystem::path& path, const GridFunction& f);
GridFunction read_gfn(const std::filesystem::path& path);

}  // namespace lph
