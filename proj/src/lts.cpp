#include "tmsmooth/lts.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace tmsmooth {

std::size_t trim_count(std::size_t count, double l)
{
  if (!(l >= 0.0 && l < 0.5))
    throw std::invalid_argument("trimming fraction must lie in [0, 0.5)");
  // guard against products like 0.2 * 25 landing just below an integer
  return static_cast<std::size_t>(std::floor(static_cast<double>(count) * l + 1e-9));
}

LtsBlock lts_block(std::span<const double> values, std::size_t r)
{
  if (values.empty())
    throw std::invalid_argument("lts of an empty sample");
  if (r >= values.size())
    throw std::invalid_argument("trim count must be smaller than the sample size");

  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t h = sorted.size() - r;

  // Blocks are compared by h * SS = h * sum d^2 - (sum d)^2 with d taken
  // relative to the block's first element. For integer-valued data of
  // moderate range this is exact, so genuine ties compare equal.
  LtsBlock best{0, h, 0.0};
  double best_score = 0.0;
  for (std::size_t start = 0; start + h <= sorted.size(); ++start) {
    const double base = sorted[start];
    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::size_t k = start; k < start + h; ++k) {
      const double d = sorted[k] - base;
      sum += d;
      sum_sq += d * d;
    }
    const double score = static_cast<double>(h) * sum_sq - sum * sum;
    if (start == 0 || score < best_score) {
      best_score = score;
      best = {start, h, base + sum / static_cast<double>(h)};
    }
  }
  return best;
}

double lts_center(std::span<const double> values, std::size_t r)
{
  return lts_block(values, r).mean;
}

std::vector<bool> TrimOutcome::mask(std::size_t window_size) const
{
  std::vector<bool> m(window_size, false);
  for (std::size_t k : retained)
    m.at(k) = true;
  return m;
}

TrimOutcome trim_values(std::span<const double> values, const TrimConfig& cfg)
{
  if (values.empty())
    throw std::invalid_argument("cannot trim an empty window");

  TrimOutcome out;
  out.r = trim_count(values.size(), cfg.l);
  out.lts_center = lts_center(values, out.r);

  std::vector<double> residual(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) {
    const double d = out.lts_center - values[k];
    residual[k] = d * d;
  }

  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return residual[a] < residual[b]; });

  const std::size_t keep = values.size() - out.r;
  out.retained.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(keep));
  out.threshold = residual[order[keep - 1]];
  std::sort(out.retained.begin(), out.retained.end());
  return out;
}

TrimOutcome trim_window(const Window& win, const TrimConfig& cfg)
{
  // window entries are already in (row, col) order
  return trim_values(win.values(), cfg);
}

} // namespace tmsmooth
