#include "tmsmooth/noise.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace tmsmooth {

namespace {

// splitmix64 finalizer
std::uint64_t mix(std::uint64_t z)
{
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

} // namespace

void NoiseSpec::validate() const
{
  if (!(sigma >= 0.0))
    throw std::invalid_argument("sigma must be non-negative");
  if (!(p_white >= 0.0 && p_black >= 0.0 && p_white + p_black <= 1.0))
    throw std::invalid_argument("outlier probabilities must be non-negative and sum to at most 1");
  if (truncate && !(*truncate > 0.0))
    throw std::invalid_argument("truncation bound must be positive");
}

PixelRng::PixelRng(std::uint64_t seed, int row, int col)
  : key_(mix(mix(mix(seed) ^ static_cast<std::uint32_t>(row)) ^
             (static_cast<std::uint64_t>(static_cast<std::uint32_t>(col)) << 32)))
{
}

PixelRng::result_type PixelRng::operator()()
{
  return mix(key_ + 0x9E3779B97F4A7C15ull * ++counter_);
}

Image add_noise(const Image& img, const NoiseSpec& ns)
{
  ns.validate();
  Image out = img;
  for (int i = 0; i < img.rows(); ++i) {
    for (int j = 0; j < img.cols(); ++j) {
      PixelRng rng(ns.seed, i, j);
      std::uniform_real_distribution<double> unit(0.0, 1.0);
      const double u = unit(rng);
      if (u < ns.p_white) {
        out(i, j) = ns.white;
        continue;
      }
      if (u < ns.p_white + ns.p_black) {
        out(i, j) = ns.black;
        continue;
      }
      double eps = 0.0;
      if (ns.sigma > 0.0) {
        std::normal_distribution<double> normal(0.0, ns.sigma);
        eps = normal(rng);
        if (ns.truncate)
          while (std::abs(eps) >= *ns.truncate)
            eps = normal(rng);
      }
      out(i, j) = img(i, j) + eps;
    }
  }
  return out;
}

} // namespace tmsmooth
