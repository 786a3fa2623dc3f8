#pragma once

#include "tmsmooth/image.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace tmsmooth {

struct TrimConfig
{
  double l = 0.15; // trimming fraction in [0, 0.5)
};

//! Number of trimmed observations r = floor(count * l).
std::size_t trim_count(std::size_t count, double l);

struct LtsBlock
{
  std::size_t start; // index into the sorted sample
  std::size_t length;
  double mean;
};

//! Best contiguous block of length values.size() - r in the sorted sample.
//! Ties between blocks go to the smaller start index.
LtsBlock lts_block(std::span<const double> values, std::size_t r);

//! Exact 1-D least-trimmed-squares location with r trimmed observations.
double lts_center(std::span<const double> values, std::size_t r);

struct TrimOutcome
{
  double lts_center = 0.0;
  std::vector<std::size_t> retained; // window entry positions, ascending
  double threshold = 0.0;            // largest retained squared residual
  std::size_t r = 0;

  // mask[k] is true iff entry k is retained
  std::vector<bool> mask(std::size_t window_size) const;
};

//! The LTS-retained subset of a window.
//!
//! Exactly size - r entries are kept. Squared residuals tied at the threshold
//! are resolved by window order: lower (row, col) entries are kept first.
TrimOutcome trim_window(const Window& win, const TrimConfig& cfg);
TrimOutcome trim_values(std::span<const double> values, const TrimConfig& cfg);

} // namespace tmsmooth
