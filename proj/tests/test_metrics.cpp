#include "doctest.h"

#include "tmsmooth/metrics.hpp"

#include <random>
#include <stdexcept>

using namespace tmsmooth;

TEST_CASE("metrics arithmetic")
{
  const Image a(1, 2, std::vector<double>{0, 10});
  const Image b(1, 2, std::vector<double>{0, 4});
  const MetricsReport m = metrics(a, b);
  CHECK(m.mae == 3.0);
  CHECK(m.mse == 18.0);
  CHECK(m.pixels == 2);

  const MetricsReport same = metrics(a, a);
  CHECK(same.mae == 0.0);
  CHECK(same.mse == 0.0);

  CHECK_THROWS_AS(metrics(a, Image(2, 1)), std::invalid_argument);
}

TEST_CASE("mae squared never exceeds mse")
{
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> val(-300.0, 300.0);
  for (int trial = 0; trial < 500; ++trial) {
    Image a(4, 6), b(4, 6);
    for (std::size_t k = 0; k < a.size(); ++k) {
      a.pixels()[k] = val(rng);
      b.pixels()[k] = val(rng);
    }
    const MetricsReport m = metrics(a, b);
    CHECK(m.mae >= 0.0);
    CHECK(m.mae * m.mae <= m.mse * (1 + 1e-12));
  }
}

TEST_CASE("region breakdown partitions the pixels")
{
  Image truth(10, 10, 0.0);
  Image est(10, 10, 1.0);
  std::vector<bool> inside(100, false);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 10; ++j)
      inside[i * 10 + j] = true;
  const RegionMetrics r = metrics_by_region(truth, est, inside, 1);
  // rows 4 and 5 touch the membership change
  CHECK(r.near_edge.pixels == 20);
  CHECK(r.inside.pixels == 40);
  CHECK(r.outside.pixels == 40);
  CHECK(r.all.pixels == 100);
  CHECK(r.all.mae == 1.0);
  CHECK_THROWS_AS(metrics_by_region(truth, est, std::vector<bool>(99), 1), std::invalid_argument);
}

TEST_CASE("percent change")
{
  CHECK(percent_change(13.9, 27.8) == doctest::Approx(-50.0));
  CHECK(percent_change(30.0, 20.0) == doctest::Approx(50.0));
}
