#include "tmsmooth/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tmsmooth {

namespace {

struct Accumulator
{
  double abs_sum = 0.0;
  double sq_sum = 0.0;
  std::size_t n = 0;

  void add(double diff)
  {
    abs_sum += std::abs(diff);
    sq_sum += diff * diff;
    ++n;
  }

  MetricsReport report() const
  {
    if (n == 0)
      return {};
    return {abs_sum / static_cast<double>(n), sq_sum / static_cast<double>(n), n};
  }
};

void check_shape(const Image& a, const Image& b)
{
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("image dimensions differ: " + std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) +
                                "x" + std::to_string(b.cols()));
}

} // namespace

MetricsReport metrics(const Image& truth, const Image& estimate)
{
  check_shape(truth, estimate);
  Accumulator acc;
  for (std::size_t k = 0; k < truth.size(); ++k)
    acc.add(truth.pixels()[k] - estimate.pixels()[k]);
  return acc.report();
}

RegionMetrics metrics_by_region(const Image& truth,
                                const Image& estimate,
                                const std::vector<bool>& inside,
                                int band)
{
  check_shape(truth, estimate);
  if (inside.size() != truth.size())
    throw std::invalid_argument("region mask size does not match the image");

  const int rows = truth.rows();
  const int cols = truth.cols();
  auto flag = [&](int i, int j) { return inside[static_cast<std::size_t>(i) * cols + j]; };

  Accumulator all, in, out, edge;
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      const double diff = truth(i, j) - estimate(i, j);
      all.add(diff);
      bool mixed = false;
      for (int a = std::max(0, i - band); a <= std::min(rows - 1, i + band) && !mixed; ++a)
        for (int b = std::max(0, j - band); b <= std::min(cols - 1, j + band); ++b)
          if (flag(a, b) != flag(i, j)) {
            mixed = true;
            break;
          }
      if (mixed)
        edge.add(diff);
      else if (flag(i, j))
        in.add(diff);
      else
        out.add(diff);
    }
  }
  return {all.report(), in.report(), out.report(), edge.report()};
}

double percent_change(double value, double reference)
{
  if (reference == 0.0)
    return 0.0;
  return (value - reference) / reference * 100.0;
}

} // namespace tmsmooth
