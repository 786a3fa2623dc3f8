#pragma once

#include "tmsmooth/smoother.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tmsmooth {

struct Interval
{
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double y) const { return y >= lo && y <= hi; }
};

//! Range that any TM estimate can reach when at most r_trim of count window
//! observations are replaced, given the extremes of the unreplaced values:
//! [y_min - 2 sqrt(count - r) R - g, y_max + 2 sqrt(count - r) R + g] with
//! R = y_max - y_min.
Interval tm_support_bound(double y_min, double y_max, std::size_t count, std::size_t r_trim, double g);

enum class Strategy
{
  high,    // replaced values at +V
  low,     // at -V
  center,  // the center observation plus the nearest others, all at +V
  split,   // alternating +V / -V
  cluster, // a tight group just above clean estimate + V
  random   // random positions, uniform values in [-V, V]
};

const char* to_string(Strategy s);
std::vector<Strategy> all_strategies();

//! Estimate at the center of a square window of (2 radius + 1)^2 values
//! listed row-major. p.g must be set.
double window_estimate(std::span<const double> values, const SmootherParams& p);

struct ProbeRow
{
  Strategy strategy;
  std::size_t replaced;
  double magnitude;
  double estimate;
  double bias;
  bool within_bound;
};

struct BiasProbeReport
{
  std::size_t r = 0;
  std::size_t window_size = 0;
  double clean_estimate = 0.0;
  double worst_bias = 0.0;
  std::optional<Interval> bound; // set for TM probes with r <= floor(l #J)
  std::optional<double> bias_bound;
  bool violated = false;
  std::vector<double> magnitudes;
  std::vector<ProbeRow> rows;
};

struct ProbeOptions
{
  std::vector<double> magnitudes{1e3, 1e4, 1e5, 1e6, 1e7, 1e8, 1e9};
  std::vector<Strategy> strategies = all_strategies();
  int random_trials = 64;
  std::uint64_t seed = 0;
};

//! Worst displacement of the window estimate when at most r observations
//! are replaced, over the strategy family and magnitudes. With l > 0 and
//! r <= floor(l #J) every contaminated estimate is also checked against
//! tm_support_bound of the clean values.
BiasProbeReport max_bias_probe(std::span<const double> values,
                               std::size_t r,
                               const SmootherParams& p,
                               const ProbeOptions& opt = {});

struct BreakdownReport
{
  double fraction = 1.0; // smallest r / #J that broke down; 1 if none did
  std::size_t r = 0;     // 0 if no breakdown was seen
  double threshold = 0.0;
};

//! Smallest replacement fraction whose probed bias exceeds ten times the
//! clean spread, max(range, g), at the magnitudes tried.
BreakdownReport breakdown_estimate(std::span<const double> values,
                                   const SmootherParams& p,
                                   const ProbeOptions& opt = {});

std::string probe_csv_header();
std::string probe_csv_rows(const BiasProbeReport& report, std::size_t window_index);

} // namespace tmsmooth
