#pragma once

#include "tmsmooth/image.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace tmsmooth {

struct MetricsReport
{
  double mae = 0.0;
  double mse = 0.0;
  std::size_t pixels = 0;
};

//! Mean absolute and mean squared error; throws std::invalid_argument on a
//! size mismatch.
MetricsReport metrics(const Image& truth, const Image& estimate);

struct RegionMetrics
{
  MetricsReport all;
  MetricsReport inside;    // in a jump region, away from its boundary
  MetricsReport outside;   // background, away from any boundary
  MetricsReport near_edge; // within band pixels of a membership change
};

//! Breakdown by region membership (one flag per pixel, row-major). A pixel is
//! near the edge when its (2 band + 1)^2 neighbourhood mixes memberships.
RegionMetrics metrics_by_region(const Image& truth,
                                const Image& estimate,
                                const std::vector<bool>& inside,
                                int band = 2);

//! Relative change in percent, (value - reference) / reference * 100.
double percent_change(double value, double reference);

} // namespace tmsmooth
