#include "tmsmooth/mode.hpp"

#include "tmsmooth/errors.hpp"
#include "tmsmooth/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>

namespace tmsmooth {

DensityField::DensityField(std::vector<FieldEntry> entries, double g, std::vector<bool> mask)
  : entries_(std::move(entries))
  , mask_(std::move(mask))
  , g_(g)
{
  if (!(g > 0.0) || !std::isfinite(g))
    throw std::invalid_argument("intensity bandwidth g must be positive");
  if (!mask_.empty() && mask_.size() != entries_.size())
    throw std::invalid_argument("mask size does not match entry count");

  for (std::size_t k = 0; k < entries_.size(); ++k) {
    const auto& e = entries_[k];
    if (!(e.weight >= 0.0) || !std::isfinite(e.value))
      throw std::invalid_argument("field entries need finite values and non-negative weights");
    if (!mask_.empty() && !mask_[k])
      continue;
    active_.push_back(e);
    if (e.weight > 0.0) {
      if (!has_mass_) {
        min_value_ = max_value_ = e.value;
        has_mass_ = true;
      } else {
        min_value_ = std::min(min_value_, e.value);
        max_value_ = std::max(max_value_, e.value);
      }
    }
  }
}

double DensityField::value(double y) const
{
  double sum = 0.0;
  for (const auto& e : active_)
    sum += e.weight * kernels::l0((y - e.value) / g_);
  return sum / g_;
}

double DensityField::d1(double y) const
{
  double sum = 0.0;
  for (const auto& e : active_)
    sum += e.weight * kernels::l1((y - e.value) / g_);
  return sum / (g_ * g_);
}

double DensityField::d2(double y) const
{
  double sum = 0.0;
  for (const auto& e : active_)
    sum += e.weight * kernels::l2((y - e.value) / g_);
  return sum / (g_ * g_ * g_);
}

double DensityField::merit(double y) const
{
  static const double edge = kernels::phi(1.0) / kernels::kTruncatedMass;
  double sum = 0.0;
  for (const auto& e : active_) {
    const double v = (y - e.value) / g_;
    if (std::abs(v) < 1.0)
      sum += e.weight * (kernels::l0(v) - edge);
  }
  return sum / g_;
}

const char* to_string(SearchDirection d)
{
  switch (d) {
    case SearchDirection::up:
      return "up";
    case SearchDirection::down:
      return "down";
    case SearchDirection::both:
      return "both";
    case SearchDirection::stay:
      return "stay";
  }
  return "?";
}

namespace {

constexpr double kFixedStep = 1.0 / 8.0; // of g, when the Newton step is unusable
constexpr double kMaxStep = 0.25;        // of g
constexpr double kScanStep = 1.0 / 64.0; // of g
constexpr double kEdgeOffset = 1e-9;     // of g

class Ascent
{
public:
  Ascent(const DensityField& f, const ModeOptions& opt)
    : f_(f)
    , opt_(opt)
  {
  }

  int iterations() const { return iterations_; }
  bool used_fallback() const { return fallback_; }

  // First local maximum reached by climbing from y along dir (+1 / -1).
  std::optional<double> climb(double y, int dir)
  {
    const double g = f_.g();
    const double bound = dir > 0 ? f_.support_upper() : f_.support_lower();
    record(y);

    for (int it = 0; it < opt_.max_iter; ++it) {
      ++iterations_;
      const double d1 = f_.d1(y);
      const double d2 = f_.d2(y);
      const double slope = dir * d1;
      const bool stationary = std::abs(d1) <= opt_.tol;
      if (stationary && d2 < 0.0 && f_.value(y) > 0.0)
        return polish(y);
      if (!stationary && slope < 0.0)
        return std::nullopt;

      double step = (d2 < 0.0 && slope > 0.0) ? -d1 / d2 : dir * kFixedStep * g;
      step = std::clamp(step, -kMaxStep * g, kMaxStep * g);
      if (dir * (y + step - bound) > 0.0)
        step = bound - y;
      if (step == 0.0)
        break;

      // Armijo backtracking on the continuous merit function
      const double m0 = f_.merit(y);
      double alpha = 1.0;
      bool accepted = false;
      for (int bt = 0; bt <= opt_.max_backtracks; ++bt) {
        if (f_.merit(y + alpha * step) >= m0 + opt_.armijo_c1 * alpha * d1 * step) {
          accepted = true;
          break;
        }
        alpha *= opt_.backtrack;
      }
      if (!accepted)
        break;

      const double next = y + alpha * step;
      // never step across a point where the slope turns against dir
      const auto samples = scan_points(y, next, dir);
      double prev = y;
      for (std::size_t k = 0; k < samples.size(); ++k) {
        const double t = samples[k];
        if (dir * f_.d1(t) <= 0.0) {
          if (it == 0 && k == 0 && stationary)
            return std::nullopt;
          return refine(prev, t, dir);
        }
        prev = t;
      }
      y = next;
      record(y);
    }

    // Newton/Armijo did not settle: walk the remaining monotone stretch on a grid
    fallback_ = true;
    double prev = y;
    for (double t : scan_points(y, bound, dir)) {
      ++iterations_;
      if (dir * f_.d1(t) <= 0.0)
        return refine(prev, t, dir);
      prev = t;
    }
    return std::nullopt;
  }

private:
  // Points of (from, to] in walking order: a g/64 grid plus both sides of
  // every kernel edge in between. F' is monotone between edges, so a sign
  // change anywhere shows up between two consecutive points.
  std::vector<double> scan_points(double from, double to, int dir) const
  {
    const double g = f_.g();
    const double lo = std::min(from, to);
    const double hi = std::max(from, to);
    std::vector<double> pts;
    const int pieces = std::max(1, static_cast<int>(std::ceil((hi - lo) / (kScanStep * g))));
    for (int k = 1; k <= pieces; ++k)
      pts.push_back(k == pieces ? to : from + (to - from) * k / pieces);
    const double delta = kEdgeOffset * g;
    for (std::size_t k = 0; k < f_.entries().size(); ++k) {
      if (!f_.mask().empty() && !f_.mask()[k])
        continue;
      const auto& e = f_.entries()[k];
      if (e.weight <= 0.0)
        continue;
      for (double edge : {e.value - g, e.value + g}) {
        if (!(edge > lo && edge < hi))
          continue;
        for (double t : {edge - delta, edge + delta})
          if (t > lo && t < hi)
            pts.push_back(t);
      }
    }
    if (dir > 0)
      std::sort(pts.begin(), pts.end());
    else
      std::sort(pts.begin(), pts.end(), std::greater<>());
    return pts;
  }

  // Zero of F' between a (slope along dir > 0) and b (slope <= 0), located to
  // rounding precision; tol only decides convergence, not where to stop.
  double refine(double a, double b, int dir)
  {
    double x = b;
    for (int it = 0; it < 400; ++it) {
      ++iterations_;
      const double d1 = f_.d1(x);
      if (d1 == 0.0)
        break;
      if (dir * d1 > 0.0)
        a = x;
      else
        b = x;
      const double lo = std::min(a, b);
      const double hi = std::max(a, b);
      if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x))) {
        // a kink of F at a kernel edge: keep the side that still climbs
        x = std::abs(f_.d1(a)) <= std::abs(d1) ? a : x;
        break;
      }
      const double d2 = f_.d2(x);
      const double newton = x - d1 / d2;
      if (d2 < 0.0 && newton > lo && newton < hi) {
        const bool settled = std::abs(newton - x) <= 1e-15 * std::max(1.0, std::abs(x));
        x = newton;
        if (settled)
          break;
      } else {
        x = 0.5 * (lo + hi);
      }
    }
    record(x);
    return x;
  }

  // Newton steps from a point already inside the tol band.
  double polish(double y)
  {
    const double cap = kScanStep * f_.g();
    for (int it = 0; it < 50; ++it) {
      const double d1 = f_.d1(y);
      const double d2 = f_.d2(y);
      if (d1 == 0.0 || !(d2 < 0.0))
        break;
      const double step = -d1 / d2;
      if (std::abs(step) > cap || f_.value(y + step) <= 0.0)
        break;
      y += step;
      if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(y)))
        break;
    }
    record(y);
    return y;
  }

  void record(double y)
  {
    if (opt_.trace)
      opt_.trace->push_back(y);
  }

  const DensityField& f_;
  const ModeOptions& opt_;
  int iterations_ = 0;
  bool fallback_ = false;
};

// Starting point just inside the nearest kernel support met when walking
// from start along dir. The field is monotone there for a full bandwidth.
std::optional<double> support_entry(const DensityField& f, double start, int dir)
{
  std::optional<double> edge;
  const double g = f.g();
  for (std::size_t k = 0; k < f.entries().size(); ++k) {
    if (!f.mask().empty() && !f.mask()[k])
      continue;
    const auto& e = f.entries()[k];
    if (e.weight <= 0.0)
      continue;
    const double b = dir > 0 ? e.value - g : e.value + g;
    if (dir * (b - start) < 0.0)
      continue;
    if (!edge || dir * (b - *edge) < 0.0)
      edge = b;
  }
  if (!edge)
    return std::nullopt;
  return *edge + dir * 0.5 * g;
}

} // namespace

ModeResult nearest_mode(const DensityField& field, double start, const ModeOptions& opt)
{
  if (!(opt.tol > 0.0))
    throw std::invalid_argument("mode tolerance must be positive");
  if (!field.has_mass())
    throw DegenerateFieldError("no retained window entry has positive spatial weight");

  Ascent ascent(field, opt);
  ModeResult res;

  const double f0 = field.value(start);
  const double d1 = field.d1(start);

  std::optional<double> up;
  std::optional<double> down;

  if (f0 > 0.0 && d1 > opt.tol) {
    res.direction = SearchDirection::up;
    up = ascent.climb(start, +1);
  } else if (f0 > 0.0 && d1 < -opt.tol) {
    res.direction = SearchDirection::down;
    down = ascent.climb(start, -1);
  } else if (f0 > 0.0 && field.d2(start) < 0.0) {
    res.direction = SearchDirection::stay;
    res.mode = start;
  } else {
    res.direction = SearchDirection::both;
    if (f0 > 0.0) {
      up = ascent.climb(start, +1);
      down = ascent.climb(start, -1);
    } else {
      if (auto from = support_entry(field, start, +1))
        up = ascent.climb(*from, +1);
      if (auto from = support_entry(field, start, -1))
        down = ascent.climb(*from, -1);
    }
  }

  if (res.direction != SearchDirection::stay) {
    if (up && down) {
      const double du = std::abs(*up - start);
      const double dd = std::abs(*down - start);
      res.mode = dd <= du ? *down : *up;
    } else if (up) {
      res.mode = *up;
    } else if (down) {
      res.mode = *down;
    } else {
      // a degenerate plateau: nothing to climb in either direction
      res.mode = start;
    }
  }

  res.iterations = ascent.iterations();
  res.used_fallback = ascent.used_fallback();
  res.field_value = field.value(res.mode);
  res.converged = std::abs(field.d1(res.mode)) <= opt.tol && res.field_value > 0.0;
  return res;
}

} // namespace tmsmooth
