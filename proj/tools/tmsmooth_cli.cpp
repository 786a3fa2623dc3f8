// tmsmooth: synthesize, contaminate, smooth, evaluate and probe grayscale images.

#include "tmsmooth/config.hpp"
#include "tmsmooth/errors.hpp"
#include "tmsmooth/lts.hpp"
#include "tmsmooth/metrics.hpp"
#include "tmsmooth/noise.hpp"
#include "tmsmooth/pgm.hpp"
#include "tmsmooth/robustness.hpp"
#include "tmsmooth/scene.hpp"
#include "tmsmooth/smoother.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace tmsmooth;
using nlohmann::ordered_json;

enum Exit
{
  kOk = 0,
  kUsage = 2,
  kIo = 3,
  kDegenerate = 4
};

void write_text(const std::string& path, const std::string& text)
{
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw std::ios_base::failure("cannot write " + path);
  out << text;
  if (!out)
    throw std::ios_base::failure("write failed for " + path);
}

std::string format_number(double v)
{
  std::ostringstream s;
  s.precision(10);
  s << v;
  return s.str();
}

// ---------------------------------------------------------------------------

struct SynthArgs
{
  std::string config;
  std::string out;
  int size = 0;
  int rows = 0;
  int cols = 0;
  bool ascii = false;
};

void run_synth(const SynthArgs& a)
{
  const SceneConfig cfg = load_scene_config(a.config);
  int rows = cfg.rows.value_or(64);
  int cols = cfg.cols.value_or(rows);
  if (a.size > 0)
    rows = cols = a.size;
  if (a.rows > 0)
    rows = a.rows;
  if (a.cols > 0)
    cols = a.cols;
  const Image img = rasterize(cfg.scene, {rows, cols});
  save_pgm(a.out, img, !a.ascii);
  std::cout << rows << "x" << cols << ", " << describe(cfg.scene) << '\n';
}

struct NoiseArgs
{
  std::string in;
  std::string out;
  std::string config;
  NoiseSpec noise;
  double truncate = 0.0;
  bool ascii = false;
};

void run_noise(const NoiseArgs& a, const CLI::App& sub)
{
  NoiseSpec ns;
  if (!a.config.empty())
    ns = load_scene_config(a.config).noise;
  // explicit flags override the config file
  if (sub.count("--sigma"))
    ns.sigma = a.noise.sigma;
  if (sub.count("--p-white"))
    ns.p_white = a.noise.p_white;
  if (sub.count("--p-black"))
    ns.p_black = a.noise.p_black;
  if (sub.count("--white"))
    ns.white = a.noise.white;
  if (sub.count("--black"))
    ns.black = a.noise.black;
  if (sub.count("--seed"))
    ns.seed = a.noise.seed;
  if (sub.count("--truncate"))
    ns.truncate = a.truncate;
  ns.validate();
  save_pgm(a.out, add_noise(load_pgm(a.in), ns), !a.ascii);
}

struct SmoothArgs
{
  std::string in;
  std::string out;
  std::string report;
  std::string g = "auto";
  double l = 0.15;
  int radius = 2;
  std::string border = "clip";
  double tol = 1e-8;
  int max_iter = 200;
  unsigned threads = 0;
  bool median = false;
  bool ascii = false;
  bool no_timing = false;
};

SmootherParams smoother_params(const std::string& g, double l, int radius, const std::string& border,
                               double tol, int max_iter)
{
  SmootherParams p;
  if (g != "auto") {
    std::size_t used = 0;
    try {
      p.g = std::stod(g, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != g.size())
      throw std::invalid_argument("--g takes 'auto' or a positive number, got '" + g + "'");
  }
  p.l = l;
  p.radius = radius;
  p.border = border == "replicate" ? BorderMode::replicate : BorderMode::clip;
  p.tol = tol;
  p.max_iter = max_iter;
  p.validate();
  return p;
}

void run_smooth(const SmoothArgs& a)
{
  const Image img = load_pgm(a.in);
  ordered_json rep;
  rep["input"] = a.in;
  rep["output"] = a.out;
  rep["rows"] = img.rows();
  rep["cols"] = img.cols();

  if (a.median) {
    if (a.radius < 1)
      throw std::invalid_argument("window radius must be at least 1");
    save_pgm(a.out, median_smooth(img, a.radius), !a.ascii);
    rep["estimator"] = "median";
    rep["radius"] = a.radius;
  } else {
    const SmootherParams p = smoother_params(a.g, a.l, a.radius, a.border, a.tol, a.max_iter);
    const SmoothResult res = smooth(img, p, a.threads);
    save_pgm(a.out, res.image, !a.ascii);
    rep["estimator"] = p.l > 0.0 ? "tm" : "m";
    rep["radius"] = p.radius;
    rep["window"] = 2 * p.radius + 1;
    rep["g"] = res.report.g;
    rep["g_auto"] = res.report.g_auto;
    rep["l"] = p.l;
    rep["trim_per_full_window"] = trim_count(static_cast<std::size_t>((2 * p.radius + 1) * (2 * p.radius + 1)), p.l);
    rep["border"] = a.border;
    rep["tol"] = p.tol;
    rep["max_iter"] = p.max_iter;
    rep["pixels"] = res.report.pixels;
    rep["trimmed_total"] = res.report.trimmed_total;
    rep["median_fallback_pixels"] = res.report.median_fallbacks;
    rep["not_converged_pixels"] = res.report.not_converged;
    rep["scan_fallback_pixels"] = res.report.scan_fallbacks;
    if (!a.no_timing)
      rep["wall_seconds"] = res.report.seconds;
    std::cerr << "g = " << format_number(res.report.g) << (res.report.g_auto ? " (auto)" : "")
              << ", " << res.report.trimmed_total << " trimmed observations\n";
  }
  if (!a.report.empty())
    write_text(a.report, rep.dump(2) + "\n");
}

struct EvalArgs
{
  std::string truth;
  std::vector<std::string> estimates;
  std::string csv = "-";
  std::string scene;
  int band = 2;
};

void run_eval(const EvalArgs& a)
{
  const Image truth = load_pgm(a.truth);
  std::optional<std::vector<bool>> inside;
  if (!a.scene.empty())
    inside = region_mask(load_scene_config(a.scene).scene, GridGeometry::of(truth));

  std::ostringstream out;
  out.precision(10);
  out << "estimate,pixels,mae,mse,mae_change_pct,mse_change_pct";
  if (inside)
    out << ",mae_inside,mse_inside,mae_outside,mse_outside,mae_edge,mse_edge";
  out << '\n';

  std::optional<MetricsReport> reference;
  for (const auto& path : a.estimates) {
    const Image est = load_pgm(path);
    const MetricsReport m = metrics(truth, est);
    if (!reference)
      reference = m;
    out << path << ',' << m.pixels << ',' << m.mae << ',' << m.mse << ','
        << percent_change(m.mae, reference->mae) << ',' << percent_change(m.mse, reference->mse);
    if (inside) {
      const RegionMetrics r = metrics_by_region(truth, est, *inside, a.band);
      for (const auto* part : {&r.inside, &r.outside, &r.near_edge})
        out << ',' << part->mae << ',' << part->mse;
    }
    out << '\n';
  }
  write_text(a.csv, out.str());
}

struct ProbeArgs
{
  std::string in;
  std::string window;
  int row = -1;
  int col = -1;
  int radius = 2;
  std::string g;
  double l = 0.15;
  std::size_t r = 3;
  std::vector<double> magnitudes;
  int trials = 64;
  std::uint64_t seed = 0;
  std::string csv;
  std::string json;
};

std::vector<double> parse_window(const std::string& spec)
{
  std::vector<double> v;
  std::string tok;
  std::istringstream in(spec);
  while (std::getline(in, tok, ',')) {
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    while (used < tok.size() && std::isspace(static_cast<unsigned char>(tok[used])))
      ++used;
    if (used == 0 || used != tok.size())
      throw std::invalid_argument("--window: '" + tok + "' is not a number");
    v.push_back(x);
  }
  return v;
}

void run_probe(const ProbeArgs& a)
{
  std::vector<double> values;
  SmootherParams p;
  p.l = a.l;
  if (!a.window.empty()) {
    values = parse_window(a.window);
    if (a.g.empty() || a.g == "auto")
      throw std::invalid_argument("--window needs an explicit --g");
  } else {
    const Image img = load_pgm(a.in);
    if (!img.contains(a.row, a.col))
      throw std::invalid_argument("--row/--col lie outside the image");
    p.radius = a.radius;
    values = window_at(img, a.row, a.col, a.radius, BorderMode::replicate).values();
    if (a.g.empty() || a.g == "auto")
      p.g = auto_scale(img, a.radius);
  }
  if (!a.g.empty() && a.g != "auto")
    p = smoother_params(a.g, a.l, p.radius, "clip", p.tol, p.max_iter);
  p.validate();

  ProbeOptions opt;
  if (!a.magnitudes.empty())
    opt.magnitudes = a.magnitudes;
  opt.random_trials = a.trials;
  opt.seed = a.seed;

  const BiasProbeReport rep = max_bias_probe(values, a.r, p, opt);
  const BreakdownReport br = breakdown_estimate(values, p, opt);

  if (!a.csv.empty())
    write_text(a.csv, probe_csv_header() + probe_csv_rows(rep, 0));

  ordered_json j;
  j["estimator"] = p.l > 0.0 ? "tm" : "m";
  j["window_size"] = rep.window_size;
  j["g"] = *p.g;
  j["l"] = p.l;
  j["r"] = rep.r;
  j["trim_count"] = trim_count(values.size(), p.l);
  j["clean_estimate"] = rep.clean_estimate;
  j["worst_bias"] = rep.worst_bias;
  if (rep.bound)
    j["bound"] = {rep.bound->lo, rep.bound->hi};
  else
    j["bound"] = nullptr;
  j["violated"] = rep.violated;
  j["magnitudes"] = rep.magnitudes;
  j["breakdown"] = {{"fraction", br.fraction}, {"r", br.r}, {"threshold", br.threshold}};
  if (!a.json.empty())
    write_text(a.json, j.dump(2) + "\n");

  std::cout << "estimator,window_size,r,worst_bias,violated,breakdown_r,breakdown_fraction\n"
            << j["estimator"].get<std::string>() << ',' << rep.window_size << ',' << rep.r << ','
            << format_number(rep.worst_bias) << ',' << (rep.violated ? 1 : 0) << ',' << br.r << ','
            << format_number(br.fraction) << '\n';
}

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Corner-preserving robust smoothing of grayscale images"};
  app.require_subcommand(1);

  SynthArgs synth;
  auto* s = app.add_subcommand("synth", "rasterize a scene config to PGM");
  s->add_option("--config", synth.config, "scene config file")->required();
  s->add_option("--out", synth.out, "output PGM")->required();
  s->add_option("--size", synth.size, "square size, overrides the config")->check(CLI::PositiveNumber);
  s->add_option("--rows", synth.rows)->check(CLI::PositiveNumber);
  s->add_option("--cols", synth.cols)->check(CLI::PositiveNumber);
  s->add_flag("--ascii", synth.ascii, "write P2 instead of P5");

  NoiseArgs noise;
  auto* n = app.add_subcommand("noise", "add Gaussian noise and white/black outliers");
  n->add_option("--in", noise.in)->required();
  n->add_option("--out", noise.out)->required();
  n->add_option("--config", noise.config, "read noise keys from a scene config");
  n->add_option("--sigma", noise.noise.sigma);
  n->add_option("--truncate", noise.truncate, "reject noise draws with |eps| >= a");
  n->add_option("--p-white", noise.noise.p_white);
  n->add_option("--p-black", noise.noise.p_black);
  n->add_option("--white", noise.noise.white);
  n->add_option("--black", noise.noise.black);
  n->add_option("--seed", noise.noise.seed);
  n->add_flag("--ascii", noise.ascii);

  SmoothArgs sm;
  auto* m = app.add_subcommand("smooth", "TM-smoother (M-smoother with --l 0)");
  m->add_option("--in", sm.in)->required();
  m->add_option("--out", sm.out)->required();
  m->add_option("--g", sm.g, "intensity bandwidth or 'auto'")->capture_default_str();
  m->add_option("--l", sm.l, "trimming fraction in [0, 0.5)")->capture_default_str();
  m->add_option("--radius", sm.radius, "window half-width")->capture_default_str();
  m->add_option("--border", sm.border)->check(CLI::IsMember({"clip", "replicate"}))->capture_default_str();
  m->add_option("--tol", sm.tol)->capture_default_str();
  m->add_option("--max-iter", sm.max_iter)->capture_default_str();
  m->add_option("--threads", sm.threads, "0 = all cores");
  m->add_option("--report", sm.report, "JSON run report ('-' for stdout)");
  m->add_flag("--median", sm.median, "window median instead");
  m->add_flag("--ascii", sm.ascii);
  m->add_flag("--no-timing", sm.no_timing, "leave wall time out of the report");

  EvalArgs ev;
  auto* e = app.add_subcommand("eval", "MAE / MSE against a clean image");
  e->add_option("--truth", ev.truth)->required();
  e->add_option("--estimate", ev.estimates, "repeatable; changes are relative to the first")->required();
  e->add_option("--csv", ev.csv, "output CSV ('-' for stdout)")->capture_default_str();
  e->add_option("--scene", ev.scene, "scene config for inside/outside/edge columns");
  e->add_option("--band", ev.band, "edge band in pixels")->capture_default_str();

  ProbeArgs pr;
  auto* p = app.add_subcommand("probe", "bias and breakdown probes on one window");
  auto* src_in = p->add_option("--in", pr.in, "PGM image");
  auto* src_win = p->add_option("--window", pr.window, "comma-separated row-major window values");
  src_in->excludes(src_win);
  p->add_option("--row", pr.row)->needs(src_in);
  p->add_option("--col", pr.col)->needs(src_in);
  p->add_option("--radius", pr.radius)->capture_default_str();
  p->add_option("--g", pr.g, "intensity bandwidth; auto only with --in");
  p->add_option("--l", pr.l)->capture_default_str();
  p->add_option("--r", pr.r, "replacements (at most)")->capture_default_str();
  p->add_option("--magnitudes", pr.magnitudes, "replacement magnitudes")->delimiter(',');
  p->add_option("--trials", pr.trials, "random trials")->capture_default_str();
  p->add_option("--seed", pr.seed);
  p->add_option("--csv", pr.csv, "per-probe CSV ('-' for stdout)");
  p->add_option("--json", pr.json, "JSON summary");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*s)
      run_synth(synth);
    else if (*n)
      run_noise(noise, *n);
    else if (*m)
      run_smooth(sm);
    else if (*e)
      run_eval(ev);
    else if (*p) {
      if (pr.window.empty() && (pr.in.empty() || pr.row < 0 || pr.col < 0))
        throw std::invalid_argument("probe needs --window, or --in with --row and --col");
      run_probe(pr);
    }
  } catch (const DegenerateScaleError& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kDegenerate;
  } catch (const ConfigError& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kUsage;
  } catch (const PgmError& err) {
    std::cerr << "error: " << err.what() << " (byte " << err.offset() << ")\n";
    return kIo;
  } catch (const std::ios_base::failure& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kIo;
  } catch (const std::invalid_argument& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kUsage;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 1;
  }
  return kOk;
}
