#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace tmsmooth {

//! Row-major grayscale image with real-valued intensities.
//!
//! Values are nominally on the 0..255 scale but are never clamped here;
//! clamping happens only when exporting to PGM.
class Image
{
public:
  Image() = default;
  Image(int rows, int cols, double fill = 0.0);
  Image(int rows, int cols, std::vector<double> pixels);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return pixels_.size(); }
  bool empty() const noexcept { return pixels_.empty(); }

  bool contains(int row, int col) const noexcept
  {
    return row >= 0 && row < rows_ && col >= 0 && col < cols_;
  }

  double operator()(int row, int col) const { return pixels_[index(row, col)]; }
  double& operator()(int row, int col) { return pixels_[index(row, col)]; }

  // Bounds-checked access; throws std::out_of_range.
  double at(int row, int col) const;

  std::span<const double> pixels() const noexcept { return pixels_; }
  std::span<double> pixels() noexcept { return pixels_; }

  friend bool operator==(const Image&, const Image&) = default;

private:
  std::size_t index(int row, int col) const noexcept
  {
    return static_cast<std::size_t>(row) * static_cast<std::size_t>(cols_) +
           static_cast<std::size_t>(col);
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> pixels_;
};

//! Per-axis pixel counts of the equidistant design on the unit square.
struct GridGeometry
{
  int rows = 1;
  int cols = 1;

  static GridGeometry of(const Image& img) { return {img.rows(), img.cols()}; }
};

//! Design point of pixel (row, col), 0-based: ((row+1/2)/rows, (col+1/2)/cols).
//!
//! The first coordinate follows the row axis. Throws std::out_of_range for
//! indices outside the grid.
std::pair<double, double> design_point(int row, int col, const GridGeometry& geom);

//! Pixel whose design point is nearest to x. On an exact midpoint between two
//! design points the lower index wins.
std::pair<int, int> nearest_pixel(std::pair<double, double> x, const GridGeometry& geom);

enum class BorderMode
{
  clip,      // drop out-of-image positions; border windows shrink
  replicate  // keep the full square, reading the nearest in-image pixel
};

struct WindowEntry
{
  int row;    // may lie outside the image in replicate mode
  int col;
  double value;
  double u_row; // (x0 - x_ij) / h along each axis, in [-1, 1]
  double u_col;
};

//! The index set around a center pixel, with values and normalized offsets.
struct Window
{
  int center_row = 0;
  int center_col = 0;
  int radius = 0;
  double h_row = 0.0; // radius / rows
  double h_col = 0.0; // radius / cols
  std::vector<WindowEntry> entries; // ordered by (row, col)

  std::size_t size() const noexcept { return entries.size(); }
  std::vector<double> values() const;
  // Position of the center pixel in entries.
  std::size_t center_index() const;
};

Window window_at(const Image& img,
                 int center_row,
                 int center_col,
                 int radius,
                 BorderMode border = BorderMode::clip);

} // namespace tmsmooth
