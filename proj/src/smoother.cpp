#include "tmsmooth/smoother.hpp"

#include "tmsmooth/errors.hpp"
#include "tmsmooth/kernels.hpp"
#include "tmsmooth/lts.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace tmsmooth {

void SmootherParams::validate() const
{
  if (radius < 1)
    throw std::invalid_argument("window radius must be at least 1");
  if (g && !(*g > 0.0 && std::isfinite(*g)))
    throw std::invalid_argument("intensity bandwidth g must be positive");
  if (!(l >= 0.0 && l < 0.5))
    throw std::invalid_argument("trimming fraction l must lie in [0, 0.5)");
  if (!(tol > 0.0))
    throw std::invalid_argument("tolerance must be positive");
  if (max_iter < 1)
    throw std::invalid_argument("max_iter must be positive");
}

double lower_median(std::vector<double> values)
{
  if (values.empty())
    throw std::invalid_argument("median of an empty sample");
  const std::size_t mid = (values.size() - 1) / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
  return values[mid];
}

namespace {

// 1-based rank ceil(q * k) as a 0-based index, for q in (0, 1]
std::size_t ceil_rank(double q, std::size_t k)
{
  const auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(k) - 1e-12));
  return std::clamp<std::size_t>(rank, 1, k) - 1;
}

} // namespace

double auto_scale(const Image& img, int radius)
{
  if (img.empty())
    throw std::invalid_argument("auto_scale of an empty image");
  if (radius < 0)
    throw std::invalid_argument("window radius must be non-negative");

  std::vector<double> iqrs;
  iqrs.reserve(img.size());
  for (int i = 0; i < img.rows(); ++i) {
    for (int j = 0; j < img.cols(); ++j) {
      auto v = window_at(img, i, j, radius).values();
      std::sort(v.begin(), v.end());
      iqrs.push_back(v[ceil_rank(0.75, v.size())] - v[ceil_rank(0.25, v.size())]);
    }
  }
  const double g = lower_median(std::move(iqrs));
  if (g < 1e-6)
    throw DegenerateScaleError("median window IQR is " + std::to_string(g) +
                               "; the image is (nearly) constant, pass an explicit g");
  return g;
}

DensityField window_field(const Window& win, double g, std::vector<bool> mask, bool uniform_weights)
{
  std::vector<FieldEntry> entries;
  entries.reserve(win.size());
  if (uniform_weights) {
    const double w = 1.0 / static_cast<double>(win.size());
    for (const auto& e : win.entries)
      entries.push_back({e.value, w});
  } else {
    // (1/n^2) K_h(u) = K(u) / (n_row h_row n_col h_col); each n*h is the radius
    const double scale = win.radius == 0 ? 1.0 : 1.0 / (static_cast<double>(win.radius) * win.radius);
    for (const auto& e : win.entries)
      entries.push_back({e.value, scale * kernels::k2(e.u_row, e.u_col)});
  }
  return DensityField(std::move(entries), g, std::move(mask));
}

PixelEstimate estimate_window(const Window& win, const SmootherParams& p, double g)
{
  PixelEstimate out;
  std::vector<bool> mask;
  if (p.l > 0.0) {
    const TrimOutcome trim = trim_window(win, TrimConfig{p.l});
    out.trimmed = trim.r;
    mask = trim.mask(win.size());
  }
  // the start is the untrimmed center observation, even if it was trimmed away
  const double start = win.entries[win.center_index()].value;

  const DensityField field = window_field(win, g, std::move(mask), p.uniform_weights);
  ModeOptions opt;
  opt.tol = p.tol;
  opt.max_iter = p.max_iter;
  try {
    out.mode = nearest_mode(field, start, opt);
    out.value = out.mode.mode;
  } catch (const DegenerateFieldError&) {
    out.median_fallback = true;
    out.value = lower_median(win.values());
  }
  return out;
}

SmoothResult smooth(const Image& img, const SmootherParams& p, unsigned threads)
{
  p.validate();
  const auto t0 = std::chrono::steady_clock::now();

  SmoothResult res;
  res.report.g_auto = !p.g.has_value();
  const double g = p.g ? *p.g : auto_scale(img, p.radius);
  res.report.g = g;
  res.report.pixels = img.size();
  res.image = Image(img.rows(), img.cols());

  if (threads == 0)
    threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(img.rows()));

  struct Counters
  {
    std::size_t trimmed = 0, median = 0, not_converged = 0, scans = 0;
  };
  std::vector<Counters> counters(threads);

  auto work = [&](unsigned worker) {
    Counters& c = counters[worker];
    for (int i = static_cast<int>(worker); i < img.rows(); i += static_cast<int>(threads)) {
      for (int j = 0; j < img.cols(); ++j) {
        const Window win = window_at(img, i, j, p.radius, p.border);
        const PixelEstimate est = estimate_window(win, p, g);
        res.image(i, j) = est.value;
        c.trimmed += est.trimmed;
        if (est.median_fallback) {
          ++c.median;
        } else {
          c.not_converged += est.mode.converged ? 0 : 1;
          c.scans += est.mode.used_fallback ? 1 : 0;
        }
      }
    }
  };

  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w)
      pool.emplace_back(work, w);
  }

  for (const auto& c : counters) {
    res.report.trimmed_total += c.trimmed;
    res.report.median_fallbacks += c.median;
    res.report.not_converged += c.not_converged;
    res.report.scan_fallbacks += c.scans;
  }
  res.report.seconds =
    std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

Image median_smooth(const Image& img, int radius)
{
  if (radius < 0)
    throw std::invalid_argument("window radius must be non-negative");
  Image out(img.rows(), img.cols());
  for (int i = 0; i < img.rows(); ++i)
    for (int j = 0; j < img.cols(); ++j)
      out(i, j) = lower_median(window_at(img, i, j, radius).values());
  return out;
}

} // namespace tmsmooth
