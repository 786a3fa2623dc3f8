#include "tmsmooth/config.hpp"

#include "tmsmooth/errors.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

namespace tmsmooth {

namespace {

std::string trim(std::string_view s)
{
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos)
    return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<double> numbers(const std::string& text, int line_no)
{
  std::vector<double> out;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size() || !std::isfinite(v))
      throw ConfigError("line " + std::to_string(line_no) + ": '" + tok + "' is not a number");
    out.push_back(v);
  }
  return out;
}

void expect_count(const std::vector<double>& v, std::size_t lo, std::size_t hi,
                  const std::string& key, int line_no)
{
  if (v.size() < lo || v.size() > hi)
    throw ConfigError("line " + std::to_string(line_no) + ": '" + key + "' takes " +
                      (lo == hi ? std::to_string(lo) : std::to_string(lo) + ".." + std::to_string(hi)) +
                      " values, got " + std::to_string(v.size()));
}

} // namespace

SceneConfig parse_scene_config(std::string_view text)
{
  SceneConfig cfg;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(std::string_view(raw).substr(0, hash));
    if (line.empty())
      continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = values'");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    if (key == "seed") {
      const std::string tok = trim(std::string_view(line).substr(eq + 1));
      std::size_t used = 0;
      try {
        cfg.noise.seed = std::stoull(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (tok.empty() || used != tok.size() || !std::isdigit(static_cast<unsigned char>(tok[0])))
        throw ConfigError("line " + std::to_string(line_no) + ": seed must be an unsigned integer");
      continue;
    }
    const auto v = numbers(line.substr(eq + 1), line_no);
    const auto deg = std::numbers::pi / 180.0;

    if (key == "size") {
      expect_count(v, 1, 2, key, line_no);
      if (v[0] < 1 || (v.size() > 1 && v[1] < 1))
        throw ConfigError("line " + std::to_string(line_no) + ": size must be positive");
      cfg.rows = static_cast<int>(v[0]);
      cfg.cols = static_cast<int>(v.size() > 1 ? v[1] : v[0]);
    } else if (key == "base") {
      if (v.size() != 1 && v.size() != 3)
        throw ConfigError("line " + std::to_string(line_no) + ": 'base' takes 1 or 3 values");
      cfg.scene.base = {v[0], v.size() > 1 ? v[1] : 0.0, v.size() > 1 ? v[2] : 0.0};
    } else if (key == "wedge") {
      expect_count(v, 6, 7, key, line_no);
      Wedge w{{v[1], v[2]}, {v[3], v[4]}, v[5] * deg, v.size() > 6 ? v[6] : 2.0};
      cfg.scene.regions.push_back({w, v[0]});
    } else if (key == "disk") {
      expect_count(v, 4, 4, key, line_no);
      cfg.scene.regions.push_back({Disk{{v[1], v[2]}, v[3]}, v[0]});
    } else if (key == "rect") {
      expect_count(v, 5, 5, key, line_no);
      cfg.scene.regions.push_back({Rect{{v[1], v[2]}, {v[3], v[4]}}, v[0]});
    } else if (key == "polygon") {
      if (v.size() < 7 || v.size() % 2 == 0)
        throw ConfigError("line " + std::to_string(line_no) +
                          ": 'polygon' takes a jump and at least three vertex pairs");
      Polygon p;
      for (std::size_t k = 1; k + 1 < v.size(); k += 2)
        p.vertices.push_back({v[k], v[k + 1]});
      cfg.scene.regions.push_back({p, v[0]});
    } else if (key == "sigma" || key == "truncate" || key == "p_white" || key == "p_black" ||
               key == "white" || key == "black") {
      expect_count(v, 1, 1, key, line_no);
      if (key == "sigma")
        cfg.noise.sigma = v[0];
      else if (key == "truncate")
        cfg.noise.truncate = v[0];
      else if (key == "p_white")
        cfg.noise.p_white = v[0];
      else if (key == "p_black")
        cfg.noise.p_black = v[0];
      else if (key == "white")
        cfg.noise.white = v[0];
      else
        cfg.noise.black = v[0];
    } else {
      throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }

  try {
    cfg.scene.validate();
    cfg.noise.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

SceneConfig load_scene_config(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in)
    throw ConfigError("cannot read scene config " + path.string());
  const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return parse_scene_config(text);
}

} // namespace tmsmooth
