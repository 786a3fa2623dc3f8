#include "tmsmooth/robustness.hpp"

#include "tmsmooth/kernels.hpp"
#include "tmsmooth/lts.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace tmsmooth {

Interval tm_support_bound(double y_min, double y_max, std::size_t count, std::size_t r_trim, double g)
{
  if (!(y_max >= y_min))
    throw std::invalid_argument("y_max must not be below y_min");
  if (r_trim >= count)
    throw std::invalid_argument("trim count must be smaller than the window size");
  if (!(g > 0.0))
    throw std::invalid_argument("g must be positive");
  const double reach = 2.0 * std::sqrt(static_cast<double>(count - r_trim)) * (y_max - y_min);
  return {y_min - reach - g, y_max + reach + g};
}

const char* to_string(Strategy s)
{
  switch (s) {
    case Strategy::high:
      return "high";
    case Strategy::low:
      return "low";
    case Strategy::center:
      return "center";
    case Strategy::split:
      return "split";
    case Strategy::cluster:
      return "cluster";
    case Strategy::random:
      return "random";
  }
  return "?";
}

std::vector<Strategy> all_strategies()
{
  return {Strategy::high, Strategy::low, Strategy::center,
          Strategy::split, Strategy::cluster, Strategy::random};
}

namespace {

int square_radius(std::size_t n)
{
  const auto side = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
  if (side * side != n || side % 2 == 0)
    throw std::invalid_argument("probe windows must hold an odd square number of values");
  return static_cast<int>(side / 2);
}

// Non-center positions, heaviest spatial weight first.
std::vector<std::size_t> replacement_order(int radius)
{
  const int side = 2 * radius + 1;
  const std::size_t center = static_cast<std::size_t>(radius) * side + radius;
  std::vector<std::size_t> order;
  std::vector<double> weight(static_cast<std::size_t>(side) * side);
  for (int i = 0; i < side; ++i)
    for (int j = 0; j < side; ++j) {
      const std::size_t k = static_cast<std::size_t>(i) * side + j;
      weight[k] = kernels::k2(static_cast<double>(i - radius) / radius,
                              static_cast<double>(j - radius) / radius);
      if (k != center)
        order.push_back(k);
    }
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return weight[a] > weight[b]; });
  return order;
}

class Prober
{
public:
  Prober(std::span<const double> values, const SmootherParams& p)
    : clean_(values.begin(), values.end())
    , params_(p)
    , radius_(square_radius(values.size()))
    , order_(replacement_order(radius_))
    , center_(static_cast<std::size_t>(radius_) * (2 * radius_ + 1) + radius_)
  {
    if (!p.g)
      throw std::invalid_argument("probes need an explicit g");
    clean_estimate_ = window_estimate(clean_, params_);
  }

  double clean_estimate() const { return clean_estimate_; }
  std::size_t size() const { return clean_.size(); }

  double contaminated(Strategy s, std::size_t r, double v) const
  {
    std::vector<double> z = clean_;
    switch (s) {
      case Strategy::high:
      case Strategy::low:
        for (std::size_t k = 0; k < r; ++k)
          z[order_[k]] = s == Strategy::high ? v : -v;
        break;
      case Strategy::center:
        z[center_] = v;
        for (std::size_t k = 0; k + 1 < r; ++k)
          z[order_[k]] = v;
        break;
      case Strategy::split:
        for (std::size_t k = 0; k < r; ++k)
          z[order_[k]] = k % 2 == 0 ? v : -v;
        break;
      case Strategy::cluster:
        for (std::size_t k = 0; k < r; ++k)
          z[order_[k]] = clean_estimate_ + v + 0.1 * (*params_.g) * static_cast<double>(k);
        break;
      case Strategy::random:
        throw std::logic_error("random replacements are drawn by the caller");
    }
    return window_estimate(z, params_);
  }

  double random_trial(std::mt19937_64& rng, std::size_t r, double v) const
  {
    std::vector<double> z = clean_;
    std::vector<std::size_t> idx(z.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::shuffle(idx.begin(), idx.end(), rng);
    std::uniform_real_distribution<double> value(-v, v);
    for (std::size_t k = 0; k < r; ++k)
      z[idx[k]] = value(rng);
    return window_estimate(z, params_);
  }

private:
  std::vector<double> clean_;
  SmootherParams params_;
  int radius_;
  std::vector<std::size_t> order_;
  std::size_t center_;
  double clean_estimate_ = 0.0;
};

} // namespace

double window_estimate(std::span<const double> values, const SmootherParams& p)
{
  if (!p.g)
    throw std::invalid_argument("window_estimate needs an explicit g");
  const int radius = square_radius(values.size());
  const int side = 2 * radius + 1;
  const Image img(side, side, std::vector<double>(values.begin(), values.end()));
  return estimate_window(window_at(img, radius, radius, radius), p, *p.g).value;
}

BiasProbeReport max_bias_probe(std::span<const double> values,
                               std::size_t r,
                               const SmootherParams& p,
                               const ProbeOptions& opt)
{
  if (values.empty())
    throw std::invalid_argument("probe of an empty window");
  if (r >= values.size())
    throw std::invalid_argument("replacement count must be smaller than the window size");

  const Prober prober(values, p);
  BiasProbeReport rep;
  rep.r = r;
  rep.window_size = values.size();
  rep.clean_estimate = prober.clean_estimate();
  rep.magnitudes = opt.magnitudes;

  if (p.l > 0.0) {
    const std::size_t r_trim = trim_count(values.size(), p.l);
    if (r <= r_trim) {
      const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
      rep.bound = tm_support_bound(*lo, *hi, values.size(), r_trim, *p.g);
      rep.bias_bound = std::max(rep.clean_estimate - rep.bound->lo, rep.bound->hi - rep.clean_estimate);
    }
  }

  auto record = [&](Strategy s, std::size_t replaced, double v, double estimate) {
    const double bias = std::abs(estimate - rep.clean_estimate);
    const bool within = !rep.bound || rep.bound->contains(estimate);
    rep.rows.push_back({s, replaced, v, estimate, bias, within});
    rep.worst_bias = std::max(rep.worst_bias, bias);
    if (!within)
      rep.violated = true;
  };

  if (r == 0)
    return rep;

  // "at most r" replacements: every smaller count is part of the search
  const bool with_random =
    std::find(opt.strategies.begin(), opt.strategies.end(), Strategy::random) != opt.strategies.end();
  for (std::size_t rr = 1; rr <= r; ++rr)
    for (Strategy s : opt.strategies) {
      if (s == Strategy::random)
        continue;
      for (double v : opt.magnitudes)
        record(s, rr, v, prober.contaminated(s, rr, v));
    }

  if (with_random && !opt.magnitudes.empty()) {
    std::mt19937_64 rng(opt.seed);
    for (int t = 0; t < opt.random_trials; ++t) {
      const std::size_t rr = 1 + static_cast<std::size_t>(rng() % r);
      const double v = opt.magnitudes[static_cast<std::size_t>(t) % opt.magnitudes.size()];
      record(Strategy::random, rr, v, prober.random_trial(rng, rr, v));
    }
  }

  if (rep.bias_bound && rep.worst_bias > *rep.bias_bound)
    rep.violated = true;
  return rep;
}

BreakdownReport breakdown_estimate(std::span<const double> values,
                                   const SmootherParams& p,
                                   const ProbeOptions& opt)
{
  if (values.empty())
    throw std::invalid_argument("breakdown of an empty window");
  if (!p.g)
    throw std::invalid_argument("breakdown probes need an explicit g");

  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  BreakdownReport out;
  out.threshold = 10.0 * std::max(*hi - *lo, *p.g);
  for (std::size_t r = 1; r < values.size(); ++r) {
    const BiasProbeReport rep = max_bias_probe(values, r, p, opt);
    if (rep.worst_bias > out.threshold) {
      out.r = r;
      out.fraction = static_cast<double>(r) / static_cast<double>(values.size());
      return out;
    }
  }
  return out;
}

std::string probe_csv_header()
{
  return "window,r,strategy,replaced,magnitude,clean_estimate,estimate,bias,bound_lo,bound_hi,within_bound\n";
}

std::string probe_csv_rows(const BiasProbeReport& report, std::size_t window_index)
{
  std::ostringstream out;
  out.precision(17);
  for (const auto& row : report.rows) {
    out << window_index << ',' << report.r << ',' << to_string(row.strategy) << ',' << row.replaced
        << ',' << row.magnitude << ',' << report.clean_estimate << ',' << row.estimate << ','
        << row.bias << ',';
    if (report.bound)
      out << report.bound->lo << ',' << report.bound->hi;
    else
      out << ',';
    out << ',' << (row.within_bound ? 1 : 0) << '\n';
  }
  return out.str();
}

} // namespace tmsmooth
