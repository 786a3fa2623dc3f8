#pragma once

#include "tmsmooth/noise.hpp"
#include "tmsmooth/scene.hpp"

#include <filesystem>
#include <optional>
#include <string_view>

namespace tmsmooth {

//! Plain-text scene and noise description, one `key = values` per line.
//!
//!   # comment
//!   size    = rows [cols]
//!   base    = offset [slope_r slope_c]
//!   wedge   = jump vertex_r vertex_c bisector_r bisector_c angle_deg [extent]
//!   disk    = jump center_r center_c radius
//!   rect    = jump r0 c0 r1 c1
//!   polygon = jump r1 c1 r2 c2 r3 c3 ...
//!   sigma / truncate / p_white / p_black / white / black / seed = number
//!
//! Coordinates are on the unit square, first the row axis. Region keys may
//! repeat; each adds one region.
struct SceneConfig
{
  SceneSpec scene;
  NoiseSpec noise;
  std::optional<int> rows;
  std::optional<int> cols;
};

//! Throws ConfigError naming the offending line.
SceneConfig parse_scene_config(std::string_view text);
SceneConfig load_scene_config(const std::filesystem::path& path);

} // namespace tmsmooth
