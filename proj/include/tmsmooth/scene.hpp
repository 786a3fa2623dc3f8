#pragma once

#include "tmsmooth/image.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace tmsmooth {

// Points live on the unit square; first coordinate is the row axis.
struct Point
{
  double r = 0.0;
  double c = 0.0;
};

//! Cone of opening angle alpha around a bisector, cut off at a radius.
struct Wedge
{
  Point vertex;
  Point bisector{1.0, 0.0}; // normalized on use
  double angle = 1.5707963267948966; // radians, in (0, 2 pi)
  double extent = 2.0;
};

struct Disk
{
  Point center;
  double radius = 0.0;
};

//! Axis-aligned box spanned by two opposite corners.
struct Rect
{
  Point a;
  Point b;
};

struct Polygon
{
  std::vector<Point> vertices;
};

using Shape = std::variant<Wedge, Disk, Rect, Polygon>;

//! Closed-set membership (the boundary belongs to the region).
bool contains(const Shape& shape, Point q);

struct Region
{
  Shape shape;
  double jump = 0.0; // d > 0
};

//! Base intensity mu(x) = offset + slope_r * x_r + slope_c * x_c.
struct BaseField
{
  double offset = 0.0;
  double slope_r = 0.0;
  double slope_c = 0.0;

  double operator()(Point x) const { return offset + slope_r * x.r + slope_c * x.c; }
};

//! m(x) = mu(x) + sum of d_k over the regions D_k containing x.
struct SceneSpec
{
  BaseField base;
  std::vector<Region> regions;

  double value_at(Point x) const;
  void validate() const;
};

//! Sample the scene at every design point, no anti-aliasing.
Image rasterize(const SceneSpec& scene, const GridGeometry& geom);

//! Pixels whose design point lies in at least one region.
std::vector<bool> region_mask(const SceneSpec& scene, const GridGeometry& geom);

std::string describe(const SceneSpec& scene);

} // namespace tmsmooth
