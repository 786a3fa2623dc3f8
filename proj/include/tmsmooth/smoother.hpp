#pragma once

#include "tmsmooth/image.hpp"
#include "tmsmooth/mode.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace tmsmooth {

struct SmootherParams
{
  int radius = 2;          // window half-width in pixels; 2 gives 5x5
  std::optional<double> g; // intensity bandwidth; empty means automatic
  double l = 0.15;         // trimming fraction; 0 gives the plain M-smoother
  double tol = 1e-8;
  int max_iter = 200;
  BorderMode border = BorderMode::clip;
  bool uniform_weights = false; // flat spatial weights, for diagnostics

  void validate() const;
};

//! Median over all pixels of the interquartile range of each (clipped)
//! window. Quartiles are the order statistics of rank ceil(k/4) and
//! ceil(3k/4); an even count of IQRs takes the lower middle one.
//! Throws DegenerateScaleError when the result is below 1e-6.
double auto_scale(const Image& img, int radius);

//! Density field of a window: spatial weights K((x0 - x_ij)/h) / (n^2 h^2),
//! restricted to mask when it is non-empty.
DensityField window_field(const Window& win,
                          double g,
                          std::vector<bool> mask = {},
                          bool uniform_weights = false);

struct PixelEstimate
{
  double value = 0.0;
  ModeResult mode;
  std::size_t trimmed = 0;
  bool median_fallback = false; // the field was degenerate
};

//! Estimate at the window center. g must already be resolved.
PixelEstimate estimate_window(const Window& win, const SmootherParams& p, double g);

struct SmoothReport
{
  double g = 0.0;
  bool g_auto = false;
  std::size_t pixels = 0;
  std::size_t trimmed_total = 0;
  std::size_t median_fallbacks = 0;
  std::size_t not_converged = 0;
  std::size_t scan_fallbacks = 0;
  double seconds = 0.0;
};

struct SmoothResult
{
  Image image;
  SmoothReport report;
};

//! TM-smoother over every pixel (M-smoother when p.l == 0).
//!
//! Pixels are independent; threads == 0 picks the hardware concurrency. The
//! output does not depend on the thread count.
SmoothResult smooth(const Image& img, const SmootherParams& p, unsigned threads = 0);

//! Window median, lower middle value on even counts.
Image median_smooth(const Image& img, int radius);

//! Lower-middle order statistic.
double lower_median(std::vector<double> values);

} // namespace tmsmooth
