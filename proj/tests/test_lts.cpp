#include "doctest.h"

#include "oracles.hpp"
#include "tmsmooth/lts.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

using namespace tmsmooth;

namespace {

Window window_of(const std::vector<double>& values, int side)
{
  const Image img(side, side, values);
  return window_at(img, side / 2, side / 2, side / 2);
}

std::vector<double> random_sample(std::mt19937_64& rng, std::size_t n, bool integral)
{
  std::vector<double> v(n);
  std::uniform_int_distribution<int> small(0, 12);
  std::uniform_real_distribution<double> real(-50.0, 300.0);
  std::bernoulli_distribution outlier(0.15);
  for (auto& x : v) {
    x = integral ? small(rng) : real(rng);
    if (outlier(rng))
      x += integral ? 1000 : 1e5;
  }
  return v;
}

} // namespace

TEST_CASE("lts_center basic examples")
{
  CHECK(lts_center(std::vector<double>{0, 0, 0, 100}, 1) == 0.0);
  CHECK(lts_center(std::vector<double>{1, 2, 3}, 0) == 2.0);

  const std::vector<double> v{0, 1, 2, 3, 4, 100, 101};
  // the brute force over every 5-subset agrees that {0..4} is optimal
  const long double best = oracle::lts_subsets_min(v, 5);
  CHECK(static_cast<double>(best) == doctest::Approx(10.0));
  CHECK(lts_center(v, 2) == 2.0);
  CHECK(static_cast<double>(oracle::trimmed_ss(v, 5, 2.0L)) == doctest::Approx(10.0));
}

TEST_CASE("lts_center argument errors")
{
  CHECK_THROWS_AS(lts_center(std::vector<double>{}, 0), std::invalid_argument);
  CHECK_THROWS_AS(lts_center(std::vector<double>{1, 2}, 2), std::invalid_argument);
  CHECK_THROWS_AS(trim_count(10, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(trim_count(10, -0.1), std::invalid_argument);
}

TEST_CASE("block ties go to the lowest start")
{
  // {0,1,2} and {1,2,3} have equal spread
  const LtsBlock b = lts_block(std::vector<double>{3, 2, 1, 0}, 1);
  CHECK(b.start == 0);
  CHECK(b.mean == 1.0);
}

TEST_CASE("trim counts follow floor(l * #J)")
{
  CHECK(trim_count(25, 0.15) == 3);
  CHECK(trim_count(25, 0.2) == 5);
  CHECK(trim_count(9, 0.15) == 1);
  CHECK(trim_count(25, 0.0) == 0);
}

TEST_CASE("5x5 window at l = 0.15 keeps 22")
{
  std::vector<double> v(25);
  for (std::size_t k = 0; k < v.size(); ++k)
    v[k] = static_cast<double>((k * 37) % 11);
  const TrimOutcome t = trim_window(window_of(v, 5), {0.15});
  CHECK(t.r == 3);
  CHECK(t.retained.size() == 22);
}

TEST_CASE("l = 0 retains the whole window")
{
  std::vector<double> v{5, 1, 900, -3, 2, 2, 7, 8, 1};
  const TrimOutcome t = trim_window(window_of(v, 3), {0.0});
  CHECK(t.r == 0);
  CHECK(t.retained.size() == 9);
}

TEST_CASE("huge replacements are trimmed")
{
  std::vector<double> v(25, 0.0);
  v[3] = v[12] = v[20] = 1e6;
  // exhaustive LTS confirms a zero-residual optimum on the 22 zeros
  CHECK(oracle::lts_blocks_exhaustive(v, 3).mean == 0.0);
  const TrimOutcome t = trim_window(window_of(v, 5), {0.15});
  CHECK(t.lts_center == 0.0);
  for (std::size_t k : t.retained)
    CHECK(v[k] == 0.0);
  CHECK(t.threshold == 0.0);
}

TEST_CASE("block and threshold ties")
{
  // blocks starting at 0 and 1 of the sorted sample have equal spread
  const std::vector<double> v{2, 0, 1, 1, 1, 2, 0, 1, 1};
  const TrimOutcome t = trim_values(v, {0.15}); // r = 1, keep 8
  REQUIRE(t.retained.size() == 8);
  CHECK(t.lts_center == 0.875);
  // both 2s sit at the largest residual; the later one (position 5) is dropped
  CHECK(std::find(t.retained.begin(), t.retained.end(), 0) != t.retained.end());
  CHECK(std::find(t.retained.begin(), t.retained.end(), 5) == t.retained.end());
}

TEST_CASE("properties over random windows")
{
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t n = 1 + rng() % 25;
    const bool integral = trial % 2 == 0;
    const auto v = random_sample(rng, n, integral);
    const double l = std::uniform_real_distribution<double>(0.0, 0.49)(rng);
    const TrimOutcome t = trim_values(v, {l});

    CHECK(t.r == trim_count(n, l));
    CHECK(t.retained.size() + t.r == n);

    // excluded residuals dominate retained ones
    const auto mask = t.mask(n);
    double max_in = 0.0;
    double min_out = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n; ++k) {
      const double s = (v[k] - t.lts_center) * (v[k] - t.lts_center);
      if (mask[k])
        max_in = std::max(max_in, s);
      else
        min_out = std::min(min_out, s);
    }
    CHECK(max_in <= t.threshold);
    CHECK(min_out >= t.threshold);

    // the chosen block is optimal among blocks (exact on integer samples)
    const auto ref = oracle::lts_blocks_exhaustive(v, t.r);
    if (integral) {
      CHECK(lts_block(v, t.r).start == ref.start);
      CHECK(t.lts_center == doctest::Approx(ref.mean).epsilon(1e-12));
    } else {
      const long double ss_impl = oracle::trimmed_ss(v, n - t.r, t.lts_center);
      const long double ss_ref = oracle::trimmed_ss(v, n - t.r, ref.mean);
      CHECK(static_cast<double>(ss_impl) <= static_cast<double>(ss_ref) * (1 + 1e-9) + 1e-9);
    }

    if (n <= 12) {
      const long double best = oracle::lts_subsets_min(v, n - t.r);
      const long double got = oracle::trimmed_ss(v, n - t.r, t.lts_center);
      CHECK(static_cast<double>(got) <= static_cast<double>(best) * (1 + 1e-9) + 1e-9);
    }
  }
}

TEST_CASE("translation and scale equivariance")
{
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 2 + rng() % 24;
    const auto v = random_sample(rng, n, true);
    const TrimOutcome base = trim_values(v, {0.15});

    std::vector<double> shifted = v;
    for (auto& x : shifted)
      x += 64.0;
    const TrimOutcome ts = trim_values(shifted, {0.15});
    CHECK(ts.lts_center == doctest::Approx(base.lts_center + 64.0).epsilon(1e-12));
    CHECK(ts.retained == base.retained);

    std::vector<double> scaled = v;
    for (auto& x : scaled)
      x *= 4.0;
    const TrimOutcome tc = trim_values(scaled, {0.15});
    CHECK(tc.lts_center == doctest::Approx(4.0 * base.lts_center).epsilon(1e-12));
    CHECK(tc.retained == base.retained);
  }
}
