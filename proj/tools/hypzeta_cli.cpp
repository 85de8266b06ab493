// Command-line driver: validate, delta, scan, cover, homcount, classes, grid.
#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "hypzeta/error.hpp"
#include "hypzeta/homcount.hpp"
#include "hypzeta/io.hpp"
#include "hypzeta/resonances.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace hypzeta;

namespace {

enum Exit { kOk = 0, kValidation = 1, kParse = 2, kShortfall = 3, kNumerical = 4 };

int exit_code(ErrorCode c) {
  switch (c) {
    case ErrorCode::ParseError:
      return kParse;
    case ErrorCode::InvalidArgument:
    case ErrorCode::NonReducedWord:
    case ErrorCode::BadLetter:
    case ErrorCode::DiscsNotSeparated:
    case ErrorCode::NonElementaryRequired:
    case ErrorCode::InvalidCover:
    case ErrorCode::DomainTooClose:
      return kValidation;
    case ErrorCode::CutoffUncertain:
    case ErrorCode::IncompletePrimitives:
    case ErrorCode::MaxDepth:
      return kShortfall;
    default:
      return kNumerical;
  }
}

struct Common {
  std::string group_file;
  std::string builder;
  std::string params;
  int order = kDefaultOrder;
  std::string out = "out";
  unsigned threads = 0;
};

template <class T>
std::vector<T> parse_list(const std::string& text, const std::string& flag) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::istringstream is(item);
    T v;
    if (!(is >> v) || !(is >> std::ws).eof())
      throw Error(ErrorCode::ParseError, flag + ": cannot parse \"" + item + "\"");
    out.push_back(v);
  }
  if (out.empty()) throw Error(ErrorCode::ParseError, flag + ": empty list");
  return out;
}

void add_common(CLI::App* app, Common& c) {
  auto* g = app->add_option("--group", c.group_file, "group JSON file");
  auto* b = app->add_option("--builder", c.builder, "builder name (three_funnel, cylinder)");
  g->excludes(b);
  app->add_option("--params", c.params, "builder parameters, comma separated");
  app->add_option("--order", c.order, "collocation order per disc")->check(CLI::Range(4, 256));
  app->add_option("--out", c.out, "output directory");
  app->add_option("--threads", c.threads, "worker threads (0 = all cores)");
}

SchottkyGroup resolve_group(const Common& c) {
  if (!c.group_file.empty()) return load_group(c.group_file);
  if (c.builder.empty()) throw Error(ErrorCode::InvalidArgument, "give --group FILE or --builder NAME");
  return make_builder(c.builder, c.params.empty() ? std::vector<double>{} : parse_list<double>(c.params, "--params"));
}

json common_json(const Common& c, const SchottkyGroup& g) {
  json j;
  if (!c.group_file.empty()) j["group_file"] = c.group_file;
  if (!c.builder.empty()) {
    j["builder"] = c.builder;
    j["params"] = c.params;
  }
  j["group"] = group_to_json(g);
  j["order"] = c.order;
  return j;
}

Rect parse_rect(const std::string& text) {
  const auto v = parse_list<double>(text, "--rect");
  if (v.size() != 4) throw Error(ErrorCode::ParseError, "--rect expects re_min,re_max,im_min,im_max");
  Rect r{v[0], v[1], v[2], v[3]};
  r.check();
  return r;
}

ThetaPoint parse_theta(const std::string& text, int rank) {
  auto v = parse_list<double>(text, "--theta");
  if (static_cast<int>(v.size()) != rank)
    throw Error(ErrorCode::ParseError, "--theta expects " + std::to_string(rank) + " components");
  return ThetaPoint(std::move(v));
}

CoverSpec parse_cover(const std::string& text) { return CoverSpec{parse_list<int>(text, "--cover")}; }

std::string cover_tag(const CoverSpec& c) {
  std::string s = "cover";
  for (int n : c.moduli) s += "_" + std::to_string(n);
  return s;
}

json rect_json(const Rect& r) { return {r.re_min, r.re_max, r.im_min, r.im_max}; }

// Window calibration along the coordinates a cover family varies.
WindowCalibration calibrate(const SchottkyGroup& g, double delta, int k, int m, int order, unsigned threads) {
  return calibrate_window(g, delta, calibration_sample(k, g.rank(), m),
                          {0.12, 0.1, 0.09, 0.08, 0.07, 0.06, 0.05, 0.04, 0.03, 0.02, 0.01}, {0.5, 1.0, 1.5},
                          order, threads);
}

json calibration_json(const WindowCalibration& cal, int m) {
  json j{{"eps_star", cal.eps}, {"T_star", cal.height}, {"sample_m", m}, {"candidates", json::array()}};
  for (const auto& e : cal.table) j["candidates"].push_back({{"eps", e.eps}, {"height", e.height}, {"accepted", e.accepted}});
  return j;
}

int cmd_validate(const Common& c) {
  const auto g = resolve_group(c);
  const auto rep = validate(g);
  json j{{"ok", rep.ok()}, {"violations", json::array()}};
  for (const auto& v : rep.violations) {
    j["violations"].push_back(v.describe());
    std::cout << v.describe() << '\n';
  }
  write_json(fs::path(c.out) / "validate.json", j);
  write_json(fs::path(c.out) / "group.json", group_to_json(g));
  std::cout << (rep.ok() ? "valid" : "invalid") << '\n';
  return rep.ok() ? kOk : kValidation;
}

int cmd_delta(const Common& c) {
  const auto g = resolve_group(c);
  const double dp = hausdorff_dimension(g, c.order);
  const double dz = largest_real_zero(g, c.order);
  const double estimate = std::abs(hausdorff_dimension(g, c.order + 8) - dp);
  const double diff = std::abs(dp - dz);
  std::printf("delta_pressure %.15f\ndelta_zero     %.15f\ndifference     %.3e\nerror_estimate %.3e\n", dp, dz, diff,
              estimate);
  json j = common_json(c, g);
  j["delta_pressure"] = dp;
  j["delta_zero"] = dz;
  j["difference"] = diff;
  j["error_estimate"] = estimate;
  write_json(fs::path(c.out) / "delta.json", j);
  return diff < 1e-8 ? kOk : kShortfall;
}

struct ScanArgs {
  std::string rect, theta, cover, window;
  double height = 1.0;
  int sample_m = 50;
};

int cmd_scan(const Common& c, const ScanArgs& a) {
  const auto g = resolve_group(c);
  json summary = common_json(c, g);
  std::vector<ThetaPoint> thetas;
  int k = 1;
  if (!a.cover.empty()) {
    const auto cover = parse_cover(a.cover);
    cover.check(g.rank());
    thetas = character_grid(cover, g.rank());
    k = cover.k();
    summary["cover"] = cover.moduli;
  } else {
    thetas = {a.theta.empty() ? ThetaPoint::zero(g.rank()) : parse_theta(a.theta, g.rank())};
  }
  Rect rect;
  if (!a.rect.empty()) {
    rect = parse_rect(a.rect);
  } else {
    const double delta = hausdorff_dimension(g, c.order);
    StripWindow w{0.0, a.height};
    if (a.window.empty()) {
      const auto cal = calibrate(g, delta, k, a.sample_m, c.order, c.threads);
      if (cal.eps == 0.0) throw Error(ErrorCode::MaxDepth, "no calibrated window");
      w = {cal.eps, cal.height};
      summary["calibration"] = calibration_json(cal, a.sample_m);
    } else {
      w.eps = parse_list<double>(a.window, "--window").front();
    }
    summary["delta"] = delta;
    summary["window"] = {{"eps_star", w.eps}, {"T_star", w.height}};
    rect = w.rect(delta);
  }
  const ResonanceSolver solver(g, c.order);
  std::vector<Resonance> zeros;
  bool complete = true;
  json perturbations = json::array();
  std::vector<std::string> notes;
  for (const auto& th : thetas) {
    Rect r = rect;
    for (int attempt = 0;; ++attempt) {
      try {
        const auto res = solver.find(r, th);
        if (!res.complete) {
          complete = false;
          notes.push_back(res.note);
        }
        zeros.insert(zeros.end(), res.zeros.begin(), res.zeros.end());
        break;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::BoundaryZero || attempt >= 3) throw;
        const double d = 1e-4;
        r = {r.re_min - d, r.re_max + d, r.im_min - d, r.im_max + d};
        perturbations.push_back({{"theta", th.coords()}, {"rect", rect_json(r)}, {"reason", e.what()}});
      }
    }
  }
  summary["rect"] = rect_json(rect);
  summary["perturbations"] = perturbations;
  summary["complete"] = complete;
  summary["notes"] = notes;
  summary["zero_count"] = zeros.size();
  const fs::path csv = fs::path(c.out) / "resonances.csv";
  resonances_csv(zeros, g.rank(), c.order).write(csv);
  write_manifest(csv, "scan", summary);
  write_json(fs::path(c.out) / "scan_summary.json", summary);
  for (const auto& z : zeros) std::printf("%.12f %+.12fi  mult %d\n", z.s.real(), z.s.imag(), z.multiplicity);
  return complete ? kOk : kShortfall;
}

struct CoverArgs {
  std::vector<std::string> covers;
  std::string window;
  double height = 1.0;
  int bins = 8;
  int sample_m = 50;
};

int cmd_cover(const Common& c, const CoverArgs& a) {
  const auto g = resolve_group(c);
  if (a.covers.empty()) throw Error(ErrorCode::InvalidArgument, "give at least one --cover");
  std::vector<CoverSpec> covers;
  for (const auto& s : a.covers) {
    covers.push_back(parse_cover(s));
    covers.back().check(g.rank());
  }
  const double delta = hausdorff_dimension(g, c.order);
  json summary = common_json(c, g);
  summary["delta"] = delta;
  StripWindow w{0.0, a.height};
  if (a.window.empty()) {
    const auto cal = calibrate(g, delta, covers.front().k(), a.sample_m, c.order, c.threads);
    if (cal.eps == 0.0) throw Error(ErrorCode::MaxDepth, "no calibrated window");
    w = {cal.eps, cal.height};
    summary["calibration"] = calibration_json(cal, a.sample_m);
  } else {
    w.eps = parse_list<double>(a.window, "--window").front();
  }
  summary["window"] = {{"eps_star", w.eps}, {"T_star", w.height}};
  summary["covers"] = json::array();
  bool complete = true, all_real = true;
  std::vector<double> strip_ratio, disc_ratio;
  for (const auto& cover : covers) {
    const auto scan = cover_resonances(g, cover, w.rect(delta), c.order, {}, c.threads);
    const double order = static_cast<double>(cover.order());
    int strip = 0, disc = 0;
    bool real = true;
    for (const auto& z : scan.zeros) {
      if (std::abs(z.s - delta) < 0.02) ++disc;
      if (z.s.real() < delta - w.eps || z.s.real() > delta + 1e-6) continue;
      strip += z.multiplicity;
      if (std::abs(z.s.imag()) >= kRealTolerance) real = false;
    }
    const auto hist = histogram_of(scan.zeros, delta - w.eps, delta, a.bins, 1.0 / order);
    const std::string tag = cover_tag(cover);
    json params = summary;
    params.erase("covers");
    params["cover"] = cover.moduli;
    const fs::path rcsv = fs::path(c.out) / (tag + "_resonances.csv");
    const fs::path hcsv = fs::path(c.out) / (tag + "_histogram.csv");
    resonances_csv(scan.zeros, g.rank(), c.order).write(rcsv);
    write_manifest(rcsv, "cover", params);
    histogram_csv(hist).write(hcsv);
    write_manifest(hcsv, "cover", params);
    complete = complete && scan.complete;
    all_real = all_real && real;
    strip_ratio.push_back(strip / order);
    disc_ratio.push_back(disc / order);
    summary["covers"].push_back({{"moduli", cover.moduli},
                                 {"group_order", cover.order()},
                                 {"strip_count", strip},
                                 {"strip_ratio", strip / order},
                                 {"disc_count", disc},
                                 {"disc_ratio", disc / order},
                                 {"all_real", real},
                                 {"complete", scan.complete},
                                 {"notes", scan.notes},
                                 {"histogram_mass", hist.total()}});
    std::printf("%s: |G| %lld strip %d ratio %.5f disc %d real %d\n", tag.c_str(), cover.order(), strip,
                strip / order, disc, real ? 1 : 0);
  }
  auto spread = [](const std::vector<double>& v) {
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return *lo > 0 ? (*hi - *lo) / *lo : std::numeric_limits<double>::infinity();
  };
  summary["strip_ratio_spread"] = spread(strip_ratio);
  const auto [dlo, dhi] = std::minmax_element(disc_ratio.begin(), disc_ratio.end());
  summary["disc_ratio_bounds"] = {*dlo, *dhi};
  summary["all_real"] = all_real;
  summary["complete"] = complete;
  write_json(fs::path(c.out) / "cover_summary.json", summary);
  std::printf("strip ratio spread %.4f\n", spread(strip_ratio));
  return complete ? kOk : kShortfall;
}

struct HomArgs {
  double tmin = 6.0, tmax = 14.0, step = 1.0;
  std::vector<std::string> alphas;
  int terms = 2;
  int budget = 64;
};

int cmd_homcount(const Common& c, const HomArgs& a) {
  const auto g = resolve_group(c);
  const int r = g.rank();
  if (!(a.step > 0.0) || !(a.tmin > 0.0) || a.tmax < a.tmin)
    throw Error(ErrorCode::InvalidArgument, "bad T grid");
  std::vector<double> grid;
  for (int i = 0; a.tmin + i * a.step <= a.tmax + 1e-9; ++i) grid.push_back(a.tmin + i * a.step);
  std::vector<HomologyVector> alphas;
  for (const auto& s : a.alphas) {
    const auto v = parse_list<long>(s, "--alpha");
    if (static_cast<int>(v.size()) != r) throw Error(ErrorCode::ParseError, "--alpha needs rank components");
    alphas.push_back(v);
  }
  if (alphas.empty()) {
    alphas.push_back(HomologyVector(r, 0));
    HomologyVector e1(r, 0);
    e1[0] = 1;
    alphas.push_back(e1);
  }
  PrimitiveTable table;
  try {
    table = enumerate_primitives_by_length(g, grid.back(), a.budget);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::CutoffUncertain)
      std::fprintf(stderr, "certified max T = %.6f\n", certified_length_limit(g, a.budget));
    throw;
  }
  const double delta = hausdorff_dimension(g, c.order);
  std::vector<HomologyCountTable> tables;
  json fits = common_json(c, g);
  fits["delta"] = delta;
  fits["grid"] = grid;
  fits["total_classes"] = table.classes.size();
  fits["alphas"] = json::array();
  for (const auto& alpha : alphas) {
    tables.push_back(homology_table(table, alpha, grid, delta, r));
    json fa{{"alpha", alpha}, {"counts", tables.back().counts}, {"normalized", tables.back().normalized()},
            {"fits", json::array()}};
    for (int n = 0; n <= a.terms; ++n) {
      try {
        const auto f = asymptotic_fit(tables.back(), n);
        fa["fits"].push_back({{"n_terms", n}, {"coefficients", f.coefficients}, {"residual", f.residual},
                              {"condition", f.condition}});
        std::printf("alpha %s n_terms %d c0 %.6f residual %.4f\n", json(alpha).dump().c_str(), n, f.coefficients[0],
                    f.residual);
      } catch (const Error& e) {
        fa["fits"].push_back({{"n_terms", n}, {"error", e.what()}});
      }
    }
    fits["alphas"].push_back(fa);
  }
  const fs::path csv = fs::path(c.out) / "homcount.csv";
  homcount_csv(tables).write(csv);
  json params = common_json(c, g);
  params["grid"] = grid;
  params["budget"] = a.budget;
  write_manifest(csv, "homcount", params);
  write_json(fs::path(c.out) / "homcount_fit.json", fits);
  return kOk;
}

int cmd_classes(const Common& c, int words, double tmax) {
  const auto g = resolve_group(c);
  const auto table = tmax > 0 ? enumerate_primitives_by_length(g, tmax) : enumerate_primitives(g, words);
  const fs::path csv = fs::path(c.out) / "classes.csv";
  classes_csv(table, g.rank()).write(csv);
  json params = common_json(c, g);
  if (tmax > 0) params["tmax"] = tmax; else params["max_word_length"] = words;
  write_manifest(csv, "classes", params);
  std::printf("%zu classes\n", table.classes.size());
  return kOk;
}

int cmd_grid(const Common& c, const std::string& rect_text, const std::string& theta, const std::string& samples) {
  const auto g = resolve_group(c);
  const Rect rect = parse_rect(rect_text);
  const auto th = theta.empty() ? ThetaPoint::zero(g.rank()) : parse_theta(theta, g.rank());
  const auto n = parse_list<int>(samples, "--samples");
  if (n.size() != 2 || n[0] < 1 || n[1] < 1) throw Error(ErrorCode::ParseError, "--samples expects nx,ny");
  const ZetaEvaluator lo(g, c.order), hi(g, c.order + 8);
  std::vector<ZetaGridPoint> pts;
  for (int j = 0; j < n[1]; ++j)
    for (int i = 0; i < n[0]; ++i) {
      const double x = n[0] == 1 ? rect.re_min : rect.re_min + rect.width() * i / (n[0] - 1);
      const double y = n[1] == 1 ? rect.im_min : rect.im_min + rect.height() * j / (n[1] - 1);
      const cplx s{x, y};
      const cplx v = hi(s, th);
      pts.push_back({th, s, {v, std::abs(v - lo(s, th))}});
    }
  const fs::path csv = fs::path(c.out) / "zeta_grid.csv";
  zeta_grid_csv(pts).write(csv);
  json params = common_json(c, g);
  params["rect"] = rect_json(rect);
  params["theta"] = th.coords();
  params["samples"] = n;
  write_manifest(csv, "grid", params);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Resonances and twisted zeta functions of Schottky surfaces"};
  app.require_subcommand(1);
  Common common;

  auto* validate_cmd = app.add_subcommand("validate", "check disc geometry and pairings");
  add_common(validate_cmd, common);

  auto* delta_cmd = app.add_subcommand("delta", "critical exponent by two methods");
  add_common(delta_cmd, common);

  ScanArgs scan;
  auto* scan_cmd = app.add_subcommand("scan", "zeros of the twisted zeta in a rectangle");
  add_common(scan_cmd, common);
  scan_cmd->add_option("--rect", scan.rect, "re_min,re_max,im_min,im_max (default: strip window)");
  auto* th = scan_cmd->add_option("--theta", scan.theta, "character t1,..,tr");
  scan_cmd->add_option("--cover", scan.cover, "scan the character grid of a cover")->excludes(th);
  scan_cmd->add_option("--window", scan.window, "strip width eps0 (default: calibrated)");
  scan_cmd->add_option("--height", scan.height, "strip half height T");
  scan_cmd->add_option("--calibration-m", scan.sample_m, "calibration lattice 1/m");

  CoverArgs cover;
  auto* cover_cmd = app.add_subcommand("cover", "cover resonances, spectral histogram, Weyl counts");
  add_common(cover_cmd, common);
  cover_cmd->add_option("--cover", cover.covers, "moduli N1,..,Nk (repeat for a family)")->required();
  cover_cmd->add_option("--window", cover.window, "strip width eps0 (default: calibrated)");
  cover_cmd->add_option("--height", cover.height, "strip half height T (with --window)");
  cover_cmd->add_option("--bins", cover.bins, "histogram bins")->check(CLI::Range(1, 1000));
  cover_cmd->add_option("--calibration-m", cover.sample_m, "calibration lattice 1/m");

  HomArgs hom;
  auto* hom_cmd = app.add_subcommand("homcount", "geodesic counts per homology class");
  add_common(hom_cmd, common);
  hom_cmd->add_option("--tmax", hom.tmax, "largest length");
  hom_cmd->add_option("--tmin", hom.tmin, "smallest length");
  hom_cmd->add_option("--step", hom.step, "grid step");
  hom_cmd->add_option("--alpha", hom.alphas, "homology class a1,..,ar (repeatable)");
  hom_cmd->add_option("--terms", hom.terms, "largest fit order")->check(CLI::Range(0, 6));
  hom_cmd->add_option("--budget", hom.budget, "word length budget")->check(CLI::Range(1, 256));

  int words = 6;
  double class_tmax = 0.0;
  auto* classes_cmd = app.add_subcommand("classes", "table of primitive classes");
  add_common(classes_cmd, common);
  classes_cmd->add_option("--words", words, "largest word length")->check(CLI::Range(1, 24));
  classes_cmd->add_option("--tmax", class_tmax, "largest geodesic length (overrides --words)");

  std::string grid_rect, grid_theta, grid_samples = "11,11";
  auto* grid_cmd = app.add_subcommand("grid", "zeta values on a rectangular grid");
  add_common(grid_cmd, common);
  grid_cmd->add_option("--rect", grid_rect, "re_min,re_max,im_min,im_max")->required();
  grid_cmd->add_option("--theta", grid_theta, "character t1,..,tr");
  grid_cmd->add_option("--samples", grid_samples, "nx,ny");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kParse;
  }
  try {
    if (*validate_cmd) return cmd_validate(common);
    if (*delta_cmd) return cmd_delta(common);
    if (*scan_cmd) return cmd_scan(common, scan);
    if (*cover_cmd) return cmd_cover(common, cover);
    if (*hom_cmd) return cmd_homcount(common, hom);
    if (*classes_cmd) return cmd_classes(common, words, class_tmax);
    if (*grid_cmd) return cmd_grid(common, grid_rect, grid_theta, grid_samples);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.code());
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidation;
  }
  return kOk;
}
