#include "tmsmooth/image.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace tmsmooth {

Image::Image(int rows, int cols, double fill)
  : Image(rows, cols, std::vector<double>(
                        static_cast<std::size_t>(std::max(rows, 0)) *
                          static_cast<std::size_t>(std::max(cols, 0)),
                        fill))
{
}

Image::Image(int rows, int cols, std::vector<double> pixels)
  : rows_(rows)
  , cols_(cols)
  , pixels_(std::move(pixels))
{
  if (rows < 1 || cols < 1)
    throw std::invalid_argument("image dimensions must be positive");
  if (pixels_.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols))
    throw std::invalid_argument("pixel count does not match dimensions");
  for (double v : pixels_)
    if (!std::isfinite(v))
      throw std::invalid_argument("image values must be finite");
}

double Image::at(int row, int col) const
{
  if (!contains(row, col))
    throw std::out_of_range("pixel (" + std::to_string(row) + ", " + std::to_string(col) +
                            ") outside " + std::to_string(rows_) + "x" +
                            std::to_string(cols_) + " image");
  return (*this)(row, col);
}

std::pair<double, double> design_point(int row, int col, const GridGeometry& geom)
{
  if (row < 0 || row >= geom.rows || col < 0 || col >= geom.cols)
    throw std::out_of_range("design index outside grid");
  return {(row + 0.5) / geom.rows, (col + 0.5) / geom.cols};
}

namespace {

int nearest_index(double x, int n)
{
  // x = (i + 1/2)/n  <=>  i = x*n - 1/2; midpoints (integer x*n) go to the lower index
  const double t = x * n;
  const double fl = std::floor(t);
  const int i = static_cast<int>(t == fl ? fl - 1.0 : fl);
  return std::clamp(i, 0, n - 1);
}

} // namespace

std::pair<int, int> nearest_pixel(std::pair<double, double> x, const GridGeometry& geom)
{
  return {nearest_index(x.first, geom.rows), nearest_index(x.second, geom.cols)};
}

std::vector<double> Window::values() const
{
  std::vector<double> out;
  out.reserve(entries.size());
  for (const auto& e : entries)
    out.push_back(e.value);
  return out;
}

std::size_t Window::center_index() const
{
  for (std::size_t k = 0; k < entries.size(); ++k)
    if (entries[k].row == center_row && entries[k].col == center_col)
      return k;
  throw std::logic_error("window has no center entry");
}

Window window_at(const Image& img, int center_row, int center_col, int radius, BorderMode border)
{
  if (!img.contains(center_row, center_col))
    throw std::out_of_range("window center outside image");
  if (radius < 0)
    throw std::invalid_argument("window radius must be non-negative");

  Window win;
  win.center_row = center_row;
  win.center_col = center_col;
  win.radius = radius;
  win.h_row = static_cast<double>(radius) / img.rows();
  win.h_col = static_cast<double>(radius) / img.cols();
  win.entries.reserve(static_cast<std::size_t>(2 * radius + 1) * (2 * radius + 1));

  for (int i = center_row - radius; i <= center_row + radius; ++i) {
    for (int j = center_col - radius; j <= center_col + radius; ++j) {
      double value;
      if (img.contains(i, j)) {
        value = img(i, j);
      } else if (border == BorderMode::replicate) {
        value = img(std::clamp(i, 0, img.rows() - 1), std::clamp(j, 0, img.cols() - 1));
      } else {
        continue;
      }
      // (x0 - x_ij)/h reduces to the index difference over the radius
      const double u_row = radius == 0 ? 0.0 : static_cast<double>(center_row - i) / radius;
      const double u_col = radius == 0 ? 0.0 : static_cast<double>(center_col - j) / radius;
      win.entries.push_back({i, j, value, u_row, u_col});
    }
  }
  return win;
}

} // namespace tmsmooth
