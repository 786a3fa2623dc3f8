#pragma once

#include "tmsmooth/image.hpp"

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>

namespace tmsmooth {

//! Parse a P2 (ASCII) or P5 (8-bit binary) graymap. maxval must be in 1..255;
//! samples are taken as-is, without rescaling to 255. Throws PgmError.
Image read_pgm(std::string_view bytes);

//! Serialize with maxval 255. Values are clamped to [0, 255] and rounded half
//! away from zero.
std::string write_pgm(const Image& img, bool binary = true);

Image load_pgm(const std::filesystem::path& path);
void save_pgm(const std::filesystem::path& path, const Image& img, bool binary = true);

//! The clamp-and-round applied on export.
double quantize_8bit(double value);

} // namespace tmsmooth
