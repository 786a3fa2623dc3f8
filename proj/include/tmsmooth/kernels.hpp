#pragma once

#include <cmath>
#include <numbers>

namespace tmsmooth::kernels {

// Mass of the standard normal on (-1, 1), i.e. erf(1/sqrt 2).
inline const double kTruncatedMass = std::erf(1.0 / std::numbers::sqrt2);

inline double phi(double v)
{
  return std::exp(-0.5 * v * v) / std::sqrt(2.0 * std::numbers::pi);
}

// Intensity kernel L: standard normal truncated to the open interval (-1, 1)
// and renormalized to unit mass.
inline double l0(double v)
{
  return std::abs(v) < 1.0 ? phi(v) / kTruncatedMass : 0.0;
}

inline double l1(double v)
{
  return std::abs(v) < 1.0 ? -v * phi(v) / kTruncatedMass : 0.0;
}

inline double l2(double v)
{
  return std::abs(v) < 1.0 ? (v * v - 1.0) * phi(v) / kTruncatedMass : 0.0;
}

//! Spatial product kernel K(u) = L(u1) L(u2) on the closed square [-1, 1]^2.
//!
//! The boundary carries weight so that the outer ring of a (2w+1)^2 window,
//! whose offsets sit at |u| = 1, contributes to the density estimate.
inline double k2(double u_row, double u_col)
{
  if (std::abs(u_row) > 1.0 || std::abs(u_col) > 1.0)
    return 0.0;
  return phi(u_row) * phi(u_col) / (kTruncatedMass * kTruncatedMass);
}

} // namespace tmsmooth::kernels
