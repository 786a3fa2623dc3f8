#pragma once

#include "tmsmooth/image.hpp"

#include <cstdint>
#include <limits>
#include <optional>

namespace tmsmooth {

struct NoiseSpec
{
  double sigma = 0.0;              // background noise standard deviation
  std::optional<double> truncate;  // if set, background noise lies in (-a, a)
  double p_white = 0.0;
  double p_black = 0.0;
  double white = 255.0;
  double black = 0.0;
  std::uint64_t seed = 0;

  void validate() const;
};

//! Counter-based generator: the stream is a pure function of
//! (seed, row, col), so pixels can be drawn in any order.
class PixelRng
{
public:
  using result_type = std::uint64_t;

  PixelRng(std::uint64_t seed, int row, int col);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()();

private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

//! Y = (1 - delta)(m + eps) + delta * outlier, with delta categorical
//! (white w.p. p_white, black w.p. p_black) and eps ~ N(0, sigma^2),
//! rejection-truncated to (-a, a) when requested.
Image add_noise(const Image& img, const NoiseSpec& ns);

} // namespace tmsmooth
