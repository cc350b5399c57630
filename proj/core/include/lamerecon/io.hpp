#pragma once

#include <string>

#include "lamerecon/field.hpp"

namespace lamerecon {

/// Binary field format "LFLD": magic `LFLD1\n`, then little-endian
/// u32 dim, u32 extents[dim], u32 components, u8 complex flag,
/// f64 origin[dim], f64 spacing[dim], then the float64 payload in the
/// Field's native layout (point-major, row-major points with the last
/// axis fastest, components contiguous, complex interleaved re/im).
void write_lfld(const std::string& path, const Field& f);
Field read_lfld(const std::string& path);

/// CSV export (one row per point: coordinates then components), only for
/// grids with at most 256^2 points.
void write_csv(const std::string& path, const Field& f);

/// FNV-1a hash of a file's bytes, for manifests.
std::uint64_t hash_file(const std::string& path);

} // namespace lamerecon
