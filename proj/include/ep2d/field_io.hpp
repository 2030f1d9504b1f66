#pragma once

#include <string>

#include "ep2d/field.hpp"

namespace ep2d {

// Binary dump, little-endian:
//   "EP2D" | u32 version | u32 N | f64 L | f64 a | f64 b | u8 representation
//   then N*N (f64 re, f64 im) row-major.
inline constexpr std::uint32_t kDumpVersion = 1;

void write_field(const std::string& path, const SpectralField& f);
SpectralField read_field(const std::string& path);

}  // namespace ep2d
