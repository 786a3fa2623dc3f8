#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace tmsmooth {

struct FieldEntry
{
  double value;  // observation Y_ij
  double weight; // spatial weight, >= 0
};

//! Weighted kernel density of window intensities, F(y) = sum w_k L_g(y - Y_k),
//! with L_g(v) = L(v/g)/g, restricted to the entries selected by a mask.
//!
//! An empty mask selects every entry (the untrimmed field H); passing the LTS
//! retained mask gives the trimmed field.
class DensityField
{
public:
  DensityField(std::vector<FieldEntry> entries, double g, std::vector<bool> mask = {});

  double value(double y) const;
  double d1(double y) const;
  double d2(double y) const;

  //! Continuous companion of value(): each kernel is lowered by its edge
  //! height so that the truncation jumps vanish. Its derivative equals d1()
  //! wherever d1 is defined, which makes it the ascent merit function.
  double merit(double y) const;

  double g() const noexcept { return g_; }
  const std::vector<FieldEntry>& entries() const noexcept { return entries_; }
  const std::vector<bool>& mask() const noexcept { return mask_; }

  //! True if at least one selected entry has positive weight.
  bool has_mass() const noexcept { return has_mass_; }
  // min / max selected value carrying positive weight; meaningful if has_mass()
  double min_value() const noexcept { return min_value_; }
  double max_value() const noexcept { return max_value_; }
  double support_lower() const noexcept { return min_value_ - g_; }
  double support_upper() const noexcept { return max_value_ + g_; }

private:
  std::vector<FieldEntry> entries_;
  std::vector<bool> mask_;
  std::vector<FieldEntry> active_;
  double g_;
  bool has_mass_ = false;
  double min_value_ = 0.0;
  double max_value_ = 0.0;
};

enum class SearchDirection
{
  up,
  down,
  both,
  stay
};

const char* to_string(SearchDirection d);

struct ModeOptions
{
  double tol = 1e-8;        // on |F'|
  int max_iter = 200;       // Newton/Armijo iterations per ascent
  double armijo_c1 = 1e-4;
  double backtrack = 0.5;
  int max_backtracks = 40;
  std::vector<double>* trace = nullptr; // optional record of ascent iterates
};

struct ModeResult
{
  double mode = 0.0;
  int iterations = 0;
  SearchDirection direction = SearchDirection::stay;
  bool converged = false;
  bool used_fallback = false;
  double field_value = 0.0;
};

//! Local maximum of the field nearest to start in the ascending direction.
//!
//! If the slope at start is positive (negative) the search climbs upward
//! (downward) and stops at the first maximum. At a stationary start that is
//! not a maximum, or where the field vanishes, both directions are searched
//! and the closer maximum wins, the smaller intensity on a tie. Throws
//! DegenerateFieldError if no selected entry has positive weight.
ModeResult nearest_mode(const DensityField& field, double start, const ModeOptions& opt = {});

} // namespace tmsmooth
