#include "tmsmooth/scene.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace tmsmooth {

namespace {

// slack for points that sit on a boundary up to rounding
constexpr double kEps = 1e-12;

struct Contains
{
  Point q;

  bool operator()(const Wedge& w) const
  {
    const double dr = q.r - w.vertex.r;
    const double dc = q.c - w.vertex.c;
    const double dist = std::hypot(dr, dc);
    if (dist > w.extent + kEps)
      return false;
    if (dist <= kEps)
      return true;
    const double bn = std::hypot(w.bisector.r, w.bisector.c);
    const double br = w.bisector.r / bn;
    const double bc = w.bisector.c / bn;
    const double dot = dr * br + dc * bc;
    const double cross = dr * bc - dc * br;
    const double angle = std::atan2(std::abs(cross), dot); // in [0, pi]
    return angle <= 0.5 * w.angle + kEps;
  }

  bool operator()(const Disk& d) const
  {
    return std::hypot(q.r - d.center.r, q.c - d.center.c) <= d.radius + kEps;
  }

  bool operator()(const Rect& b) const
  {
    const auto [r0, r1] = std::minmax(b.a.r, b.b.r);
    const auto [c0, c1] = std::minmax(b.a.c, b.b.c);
    return q.r >= r0 - kEps && q.r <= r1 + kEps && q.c >= c0 - kEps && q.c <= c1 + kEps;
  }

  bool operator()(const Polygon& p) const
  {
    const auto& v = p.vertices;
    bool inside = false;
    for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
      const Point a = v[j];
      const Point b = v[i];
      // on-edge test keeps the set closed
      const double cross = (b.r - a.r) * (q.c - a.c) - (b.c - a.c) * (q.r - a.r);
      const double len = std::hypot(b.r - a.r, b.c - a.c);
      if (std::abs(cross) <= kEps * std::max(1.0, len) &&
          q.r >= std::min(a.r, b.r) - kEps && q.r <= std::max(a.r, b.r) + kEps &&
          q.c >= std::min(a.c, b.c) - kEps && q.c <= std::max(a.c, b.c) + kEps)
        return true;
      if ((a.c > q.c) != (b.c > q.c)) {
        const double r_at = a.r + (q.c - a.c) * (b.r - a.r) / (b.c - a.c);
        if (q.r < r_at)
          inside = !inside;
      }
    }
    return inside;
  }
};

} // namespace

bool contains(const Shape& shape, Point q)
{
  return std::visit(Contains{q}, shape);
}

double SceneSpec::value_at(Point x) const
{
  double m = base(x);
  for (const auto& region : regions)
    if (contains(region.shape, x))
      m += region.jump;
  return m;
}

void SceneSpec::validate() const
{
  for (const auto& region : regions) {
    if (!(region.jump > 0.0))
      throw std::invalid_argument("region jump heights must be positive");
    if (const auto* w = std::get_if<Wedge>(&region.shape)) {
      if (!(w->angle > 0.0 && w->angle < 2.0 * std::numbers::pi))
        throw std::invalid_argument("wedge angle must lie in (0, 2 pi)");
      if (std::hypot(w->bisector.r, w->bisector.c) == 0.0)
        throw std::invalid_argument("wedge bisector must be non-zero");
      if (!(w->extent > 0.0))
        throw std::invalid_argument("wedge extent must be positive");
    } else if (const auto* d = std::get_if<Disk>(&region.shape)) {
      if (!(d->radius > 0.0))
        throw std::invalid_argument("disk radius must be positive");
    } else if (const auto* p = std::get_if<Polygon>(&region.shape)) {
      if (p->vertices.size() < 3)
        throw std::invalid_argument("polygon needs at least three vertices");
    }
  }
}

Image rasterize(const SceneSpec& scene, const GridGeometry& geom)
{
  scene.validate();
  Image img(geom.rows, geom.cols);
  for (int i = 0; i < geom.rows; ++i)
    for (int j = 0; j < geom.cols; ++j) {
      const auto [xr, xc] = design_point(i, j, geom);
      img(i, j) = scene.value_at({xr, xc});
    }
  return img;
}

std::vector<bool> region_mask(const SceneSpec& scene, const GridGeometry& geom)
{
  std::vector<bool> mask(static_cast<std::size_t>(geom.rows) * geom.cols, false);
  for (int i = 0; i < geom.rows; ++i)
    for (int j = 0; j < geom.cols; ++j) {
      const auto [xr, xc] = design_point(i, j, geom);
      mask[static_cast<std::size_t>(i) * geom.cols + j] =
        std::any_of(scene.regions.begin(), scene.regions.end(),
                    [&](const Region& r) { return contains(r.shape, {xr, xc}); });
    }
  return mask;
}

std::string describe(const SceneSpec& scene)
{
  std::ostringstream out;
  out << "base " << scene.base.offset;
  if (scene.base.slope_r != 0.0 || scene.base.slope_c != 0.0)
    out << " + " << scene.base.slope_r << "*x_r + " << scene.base.slope_c << "*x_c";
  out << ", " << scene.regions.size() << " region(s)";
  for (const auto& region : scene.regions) {
    out << "\n  ";
    std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Wedge>)
          out << "wedge vertex (" << s.vertex.r << ", " << s.vertex.c << ") angle "
              << s.angle * 180.0 / std::numbers::pi << " deg";
        else if constexpr (std::is_same_v<T, Disk>)
          out << "disk center (" << s.center.r << ", " << s.center.c << ") radius " << s.radius;
        else if constexpr (std::is_same_v<T, Rect>)
          out << "rect (" << s.a.r << ", " << s.a.c << ")-(" << s.b.r << ", " << s.b.c << ")";
        else
          out << "polygon with " << s.vertices.size() << " vertices";
      },
      region.shape);
    out << ", jump " << region.jump;
  }
  return out.str();
}

} // namespace tmsmooth
