#include "doctest.h"

#include "oracles.hpp"
#include "tmsmooth/errors.hpp"
#include "tmsmooth/lts.hpp"
#include "tmsmooth/scene.hpp"
#include "tmsmooth/smoother.hpp"

#include <numbers>
#include <random>
#include <stdexcept>

using namespace tmsmooth;

namespace {

Image random_image(std::mt19937_64& rng, int rows, int cols)
{
  std::uniform_real_distribution<double> val(0.0, 255.0);
  Image img(rows, cols);
  for (double& v : img.pixels())
    v = val(rng);
  return img;
}

Image wedge_image(double angle_deg, int n)
{
  SceneSpec s;
  s.regions.push_back({Wedge{{0.5, 0.5}, {1.0, 0.3}, angle_deg * std::numbers::pi / 180.0, 2.0}, 255.0});
  return rasterize(s, {n, n});
}

// Quartile IQR of one window by the ceiling-rank rule, written out longhand.
double hand_iqr(std::vector<double> v)
{
  std::sort(v.begin(), v.end());
  const auto k = v.size();
  const std::size_t q1 = (k + 3) / 4; // ceil(k / 4)
  const std::size_t q3 = (3 * k + 3) / 4;
  return v[q3 - 1] - v[q1 - 1];
}

} // namespace

TEST_CASE("parameter validation")
{
  SmootherParams p;
  CHECK_NOTHROW(p.validate());
  p.radius = 0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = {};
  p.l = 0.5;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = {};
  p.g = -1.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("auto scale on a single impulse")
{
  const Image img(3, 3, std::vector<double>{0, 0, 0, 0, 100, 0, 0, 0, 0});
  // every clipped 3x3 window holds the impulse; corner windows have k = 4,
  // edge windows k = 6 and the center window k = 9
  std::vector<double> iqrs;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      std::vector<double> v;
      for (int a = std::max(0, i - 1); a <= std::min(2, i + 1); ++a)
        for (int b = std::max(0, j - 1); b <= std::min(2, j + 1); ++b)
          v.push_back(img(a, b));
      iqrs.push_back(hand_iqr(v));
    }
  std::sort(iqrs.begin(), iqrs.end());
  const double expected = iqrs[(iqrs.size() - 1) / 2];
  // ceil-rank 3 of 4 is a 0, ceil-rank 5 of 6 is a 0, ceil-rank 7 of 9 is a 0
  CHECK(expected == 0.0);
  CHECK_THROWS_AS(auto_scale(img, 1), DegenerateScaleError);
}

TEST_CASE("auto scale matches the longhand rule on random images")
{
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    const Image img = random_image(rng, 7 + trial % 3, 9 - trial % 4);
    std::vector<double> iqrs;
    for (int i = 0; i < img.rows(); ++i)
      for (int j = 0; j < img.cols(); ++j)
        iqrs.push_back(hand_iqr(window_at(img, i, j, 2).values()));
    std::sort(iqrs.begin(), iqrs.end());
    CHECK(auto_scale(img, 2) == iqrs[(iqrs.size() - 1) / 2]);
  }
}

TEST_CASE("constant image: degenerate auto scale, fixed g reproduces it")
{
  const Image img(8, 8, 93.0);
  CHECK_THROWS_AS(auto_scale(img, 2), DegenerateScaleError);
  SmootherParams p;
  CHECK_THROWS_AS(smooth(img, p), DegenerateScaleError);
  p.g = 10.0;
  CHECK(smooth(img, p).image == img);
}

TEST_CASE("trimmed outliers do not move the center estimate")
{
  std::vector<double> v(25, 0.0);
  v[0] = v[7] = v[19] = 1e6;
  const Image img(5, 5, v);
  const Window win = window_at(img, 2, 2, 2);
  SmootherParams p;
  const PixelEstimate est = estimate_window(win, p, 25.0);
  CHECK(est.trimmed == 3);

  // grid-scan oracle on the trimmed field
  const TrimOutcome t = trim_window(win, {0.15});
  const DensityField f = window_field(win, 25.0, t.mask(win.size()));
  oracle::Field o{{}, {}, 25.0};
  for (std::size_t k = 0; k < win.size(); ++k)
    if (t.mask(win.size())[k]) {
      o.values.push_back(f.entries()[k].value);
      o.weights.push_back(f.entries()[k].weight);
    }
  const double ref = o.nearest_mode(0.0, 0.001);
  CHECK(std::abs(est.value - ref) <= 1e-8);
  CHECK(std::abs(est.value) <= 1e-8);
}

TEST_CASE("the start is the untrimmed center even when it is trimmed")
{
  std::vector<double> v(25, 10.0);
  for (int k : {0, 1, 2, 3, 4, 5, 6, 7, 8, 9})
    v[k] = 200.0;
  v[12] = 5e5; // trimmed away, but still the starting point
  const Image img(5, 5, v);
  const Window win = window_at(img, 2, 2, 2);
  const PixelEstimate est = estimate_window(win, SmootherParams{}, 20.0);
  // the start sits far above every retained value, so the closer mode is the upper cluster
  CHECK(est.value == doctest::Approx(200.0).epsilon(1e-9));
  CHECK(est.mode.direction == SearchDirection::both);
}

TEST_CASE("l = 0 is the plain M-smoother, bit for bit")
{
  std::mt19937_64 rng(17);
  const Image img = random_image(rng, 12, 10);
  SmootherParams p;
  p.l = 0.0;
  p.g = 30.0;
  const SmoothResult a = smooth(img, p, 1);
  CHECK(a.report.trimmed_total == 0);

  Image manual(img.rows(), img.cols());
  for (int i = 0; i < img.rows(); ++i)
    for (int j = 0; j < img.cols(); ++j) {
      const Window win = window_at(img, i, j, 2);
      manual(i, j) = nearest_mode(window_field(win, 30.0), img(i, j)).mode;
    }
  CHECK(a.image == manual);

  // trimming r = 0 of a window keeps everything
  SmootherParams tiny = p;
  tiny.l = 0.01; // floor(0.01 * #J) = 0 for every window here
  CHECK(smooth(img, tiny, 1).image == a.image);
}

TEST_CASE("thread count does not change the output")
{
  std::mt19937_64 rng(23);
  const Image img = random_image(rng, 17, 13);
  SmootherParams p;
  const SmoothResult one = smooth(img, p, 1);
  const SmoothResult many = smooth(img, p, 5);
  CHECK(one.image == many.image);
  CHECK(one.report.g == many.report.g);
  CHECK(one.report.trimmed_total == many.report.trimmed_total);
  CHECK(one.report.g_auto);
}

TEST_CASE("translation equivariance with fixed g")
{
  std::mt19937_64 rng(29);
  const Image img = random_image(rng, 10, 10);
  Image shifted = img;
  for (double& v : shifted.pixels())
    v += 128.0;
  for (double l : {0.0, 0.15}) {
    SmootherParams p;
    p.l = l;
    p.g = 40.0;
    const Image a = smooth(img, p).image;
    const Image b = smooth(shifted, p).image;
    for (std::size_t k = 0; k < a.size(); ++k)
      CHECK(b.pixels()[k] - 128.0 == doctest::Approx(a.pixels()[k]).epsilon(1e-9).scale(1.0));
  }
}

TEST_CASE("two-level images with a wide gap are fixed points")
{
  for (double angle : {30.0, 75.0, 90.0, 150.0}) {
    const Image img = wedge_image(angle, 32);
    SmootherParams p;
    p.g = 25.0;
    p.l = 0.0;
    CHECK(smooth(img, p).image == img);
  }
}

TEST_CASE("TM keeps a corner pixel whose level fills more than the trim count")
{
  // minority level occupies 4 > floor(0.15 * 25) = 3 entries of the window
  std::vector<double> v(25, 0.0);
  for (int k : {12, 13, 17, 18})
    v[k] = 255.0;
  const Image img(5, 5, v);
  SmootherParams p;
  p.g = 25.0;
  CHECK(estimate_window(window_at(img, 2, 2, 2), p, 25.0).value == 255.0);

  // three entries are all trimmed and the center is pulled to the background
  v[18] = 0.0;
  const Image lost(5, 5, v);
  CHECK(estimate_window(window_at(lost, 2, 2, 2), p, 25.0).value == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("at most floor(l #J) replacements on a constant window are removed")
{
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> wild(-1e7, 1e7);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> v(25, 42.0);
    const std::size_t r = rng() % 4;
    for (std::size_t k = 0; k < r; ++k)
      v[rng() % 25] = wild(rng);
    const Image img(5, 5, v);
    const PixelEstimate est = estimate_window(window_at(img, 2, 2, 2), SmootherParams{}, 20.0);
    CHECK(std::abs(est.value - 42.0) <= 1e-8);
  }
}

TEST_CASE("replicate borders keep full windows")
{
  std::mt19937_64 rng(37);
  const Image img = random_image(rng, 6, 6);
  SmootherParams p;
  p.g = 50.0;
  p.border = BorderMode::replicate;
  const SmoothResult res = smooth(img, p);
  CHECK(res.report.median_fallbacks == 0);
  CHECK(res.report.trimmed_total == 36 * 3);
}

TEST_CASE("median smoother")
{
  const Image flat(5, 5, 7.0);
  CHECK(median_smooth(flat, 2) == flat);

  Image impulse(7, 7, 0.0);
  impulse(3, 3) = 255.0;
  CHECK(median_smooth(impulse, 2)(3, 3) == 0.0);

  // 2x2 checkerboard, every clipped 3x3 window is the whole image {0,255,255,0}
  const Image board(2, 2, std::vector<double>{0, 255, 255, 0});
  const Image med = median_smooth(board, 1);
  for (double v : med.pixels())
    CHECK(v == 0.0);
  CHECK(lower_median({4, 1, 3, 2}) == 2.0);
  CHECK(lower_median({5}) == 5.0);
}
