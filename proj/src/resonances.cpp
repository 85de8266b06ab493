#include "hypzeta/resonances.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

#include "hypzeta/error.hpp"

namespace hypzeta {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Sample {
  cplx z;
  cplx f;
};

class PhaseWalker {
 public:
  PhaseWalker(const HolomorphicFn& f, const ContourOptions& opt, double scale)
      : f_(f), opt_(opt), floor_(opt.boundary_tol * scale) {}

  double segment(const Sample& a, const Sample& b, int depth) const {
    const cplx zm = 0.5 * (a.z + b.z);
    const Sample m{zm, eval(zm)};
    const double d1 = std::arg(m.f / a.f), d2 = std::arg(b.f / m.f);
    // A zero within about one segment length bends f away from its chord;
    // a double zero hugging the edge would otherwise hide a full turn.
    const double bend = std::abs(a.f + b.f - 2.0 * m.f);
    if (std::abs(d1) < opt_.max_phase_step && std::abs(d2) < opt_.max_phase_step &&
        bend <= opt_.linearity_tol * std::min(std::abs(a.f), std::abs(b.f)))
      return d1 + d2;
    if (depth >= opt_.max_refine_depth) throw Error(ErrorCode::BoundaryZero, "phase refinement exhausted near " + describe(a.z));
    return segment(a, m, depth + 1) + segment(m, b, depth + 1);
  }

  cplx eval(cplx z) const {
    const cplx v = f_(z);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw Error(ErrorCode::BoundaryZero, "non-finite determinant at " + describe(z));
    if (std::abs(v) < floor_) throw Error(ErrorCode::BoundaryZero, "determinant vanishes near " + describe(z));
    return v;
  }

  static std::string describe(cplx z) {
    std::ostringstream os;
    os.precision(12);
    os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
    return os.str();
  }

 private:
  const HolomorphicFn& f_;
  const ContourOptions& opt_;
  double floor_;
};

cplx derivative(const HolomorphicFn& f, cplx s) {
  const double h = 1e-6 * (1.0 + std::abs(s));
  return (f(s + h) - f(s - h)) / (2.0 * h);
}

bool theta_less(const ThetaPoint& a, const ThetaPoint& b) {
  return std::lexicographical_compare(a.coords().begin(), a.coords().end(), b.coords().begin(),
                                      b.coords().end());
}

bool zero_less(const Resonance& a, const Resonance& b) {
  if (a.s.imag() != b.s.imag()) return a.s.imag() < b.s.imag();
  return a.s.real() < b.s.real();
}

// Run body(i) for i in [0, n) on a small pool; results land in caller-owned slots.
template <class Body>
void parallel_for(std::size_t n, unsigned threads, Body body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(n);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          body(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

double torus_distance(const ThetaPoint& a, const ThetaPoint& b) {
  double sq = 0.0;
  for (int i = 0; i < a.rank(); ++i) {
    double d = std::abs(a[i] - b[i]);
    d = std::min(d, 1.0 - d);
    sq += d * d;
  }
  return std::sqrt(sq);
}

std::string theta_str(const ThetaPoint& t) {
  std::ostringstream os;
  os.precision(10);
  os << "(";
  for (int i = 0; i < t.rank(); ++i) os << (i ? "," : "") << t[i];
  os << ")";
  return os.str();
}

}  // namespace

void Rect::check() const {
  if (!(re_min < re_max) || !(im_min < im_max))
    throw Error(ErrorCode::InvalidArgument, "degenerate rectangle");
}

int count_zeros(const HolomorphicFn& f, const Rect& rect, const ContourOptions& options) {
  rect.check();
  if (!(options.max_phase_step > 0.0 && options.max_phase_step < std::numbers::pi / 2))
    throw Error(ErrorCode::InvalidArgument, "max_phase_step must lie in (0, pi/2)");
  const int n = std::max(2, options.samples_per_edge);
  const cplx corners[5] = {{rect.re_min, rect.im_min},
                           {rect.re_max, rect.im_min},
                           {rect.re_max, rect.im_max},
                           {rect.re_min, rect.im_max},
                           {rect.re_min, rect.im_min}};
  std::vector<Sample> ring;
  ring.reserve(4 * n + 1);
  for (int e = 0; e < 4; ++e)
    for (int k = 0; k < n; ++k) {
      const cplx z = corners[e] + (corners[e + 1] - corners[e]) * (static_cast<double>(k) / n);
      ring.push_back({z, f(z)});
    }
  double scale = 0.0;
  for (const auto& p : ring) scale = std::max(scale, std::abs(p.f));
  const PhaseWalker walker(f, options, scale);
  for (const auto& p : ring) walker.eval(p.z);  // threshold check on the initial samples
  ring.push_back(ring.front());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < ring.size(); ++i) total += walker.segment(ring[i], ring[i + 1], 0);
  return static_cast<int>(std::lround(total / kTwoPi));
}

double newton_refine(const HolomorphicFn& f, cplx& s, int multiplicity, int max_iterations) {
  double last = std::numeric_limits<double>::infinity();
  int stalls = 0;
  for (int it = 0; it < max_iterations; ++it) {
    const cplx fs = f(s);
    if (fs == cplx{}) return 0.0;
    const cplx d = derivative(f, s);
    if (d == cplx{}) break;
    const cplx step = static_cast<double>(multiplicity) * fs / d;
    s -= step;
    const double size = std::abs(step);
    if (!std::isfinite(size)) throw Error(ErrorCode::NoConvergence, "Newton step diverged");
    if (size <= 1e-15 * (1.0 + std::abs(s))) break;
    // Stop once rounding noise dominates: the step no longer shrinks.
    if (size >= 0.5 * last && size < 1e-11 * (1.0 + std::abs(s)) && ++stalls >= 3) break;
    last = size;
  }
  const cplx d = derivative(f, s);
  return d == cplx{} ? std::numeric_limits<double>::infinity() : std::abs(f(s) / d);
}

ZeroSearch find_zeros(const HolomorphicFn& f, const Rect& rect, const FindOptions& options) {
  struct Cell {
    Rect rect;
    int count;
    int depth;
  };
  ZeroSearch out;
  out.count = count_zeros(f, rect, options.contour);
  std::vector<Cell> stack;
  if (out.count > 0) stack.push_back({rect, out.count, 0});
  static constexpr double kSplits[] = {0.5, 0.5137, 0.4791, 0.5313, 0.4602};

  auto try_newton = [&](const Cell& cell, int m) -> bool {
    cplx s = cell.rect.center();
    double residual;
    try {
      residual = newton_refine(f, s, m, options.max_newton);
    } catch (const Error&) {
      return false;
    }
    const double slack = 1e-12 * (1.0 + std::abs(s));
    if (!cell.rect.contains(s, slack) || !(residual < 1e-9)) return false;
    Resonance z;
    z.s = s;
    z.multiplicity = m;
    z.newton_residual = residual;
    double hw = options.verify_half_width;
    for (int attempt = 0; attempt < 4; ++attempt, hw *= 1.37) {
      try {
        z.winding = count_zeros(f, Rect::around(s, hw), options.contour);
        break;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::BoundaryZero) throw;
        z.winding = -1;
      }
    }
    out.zeros.push_back(z);
    return true;
  };

  while (!stack.empty()) {
    const Cell cell = stack.back();
    stack.pop_back();
    const double size = std::max(cell.rect.width(), cell.rect.height());
    if (cell.count == 1 && try_newton(cell, 1)) continue;
    if (cell.count > 1 && size < options.cluster_size && try_newton(cell, cell.count)) continue;
    if (cell.depth >= options.max_depth) {
      out.complete = false;
      out.note = "MaxDepth: subdivision budget exhausted near " + PhaseWalker::describe(cell.rect.center());
      continue;
    }
    bool split = false;
    for (double frac : kSplits) {
      const double xm = cell.rect.re_min + frac * cell.rect.width();
      const double ym = cell.rect.im_min + (1.0 - frac) * cell.rect.height();
      const Rect kids[4] = {{cell.rect.re_min, xm, cell.rect.im_min, ym},
                            {xm, cell.rect.re_max, cell.rect.im_min, ym},
                            {cell.rect.re_min, xm, ym, cell.rect.im_max},
                            {xm, cell.rect.re_max, ym, cell.rect.im_max}};
      int counts[4];
      try {
        for (int q = 0; q < 4; ++q) counts[q] = count_zeros(f, kids[q], options.contour);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::BoundaryZero) throw;
        continue;
      }
      if (counts[0] + counts[1] + counts[2] + counts[3] != cell.count) continue;
      // Reverse push keeps the traversal order fixed; results are sorted anyway.
      for (int q = 3; q >= 0; --q)
        if (counts[q] > 0) stack.push_back({kids[q], counts[q], cell.depth + 1});
      split = true;
      break;
    }
    if (!split) {
      out.complete = false;
      out.note = "MaxDepth: no admissible split near " + PhaseWalker::describe(cell.rect.center());
    }
  }
  std::sort(out.zeros.begin(), out.zeros.end(), zero_less);
  int total = 0;
  for (const auto& z : out.zeros) total += z.multiplicity;
  if (total != out.count) {
    out.complete = false;
    if (out.note.empty()) out.note = "multiplicity total differs from rect count";
  }
  return out;
}

ResonanceSolver::ResonanceSolver(const SchottkyGroup& group, int order)
    : zeta_(group, order), check_(group, order + 8) {}

HolomorphicFn ResonanceSolver::at(const ThetaPoint& theta) const {
  return [this, theta](cplx s) { return zeta_(s, theta); };
}

int ResonanceSolver::count(const Rect& rect, const ThetaPoint& theta, const ContourOptions& options) const {
  return count_zeros(at(theta), rect, options);
}

double ResonanceSolver::det_error(cplx s, const ThetaPoint& theta) const {
  return std::abs(zeta_(s, theta) - check_(s, theta));
}

ZeroSearch ResonanceSolver::find(const Rect& rect, const ThetaPoint& theta, const FindOptions& options) const {
  ZeroSearch out = find_zeros(at(theta), rect, options);
  for (auto& z : out.zeros) {
    z.theta = theta;
    z.det_error = det_error(z.s, theta);
  }
  return out;
}

int count_zeros(const SchottkyGroup& group, const Rect& rect, const ThetaPoint& theta, int order) {
  const ZetaEvaluator zeta(group, order);
  return count_zeros([&](cplx s) { return zeta(s, theta); }, rect);
}

ZeroSearch find_zeros(const SchottkyGroup& group, const Rect& rect, const ThetaPoint& theta, int order,
                      const FindOptions& options) {
  return ResonanceSolver(group, order).find(rect, theta, options);
}

std::vector<ThetaPoint> straight_path(const std::vector<double>& target, double max_step) {
  if (!(max_step > 0.0)) throw Error(ErrorCode::InvalidArgument, "max_step must be positive");
  double norm = 0.0;
  for (double t : target) norm += t * t;
  norm = std::sqrt(norm);
  const int steps = std::max(1, static_cast<int>(std::ceil(norm / max_step - 1e-12)));
  std::vector<ThetaPoint> path;
  path.reserve(steps + 1);
  for (int k = 0; k <= steps; ++k) {
    std::vector<double> c(target.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = target[i] * k / steps;
    path.emplace_back(std::move(c));
  }
  return path;
}

std::vector<PhiPoint> trace_phi(const ResonanceSolver& solver, const std::vector<ThetaPoint>& path,
                                const PhiOptions& options) {
  if (path.empty() || path.front().distance_to_lattice() > 1e-14)
    throw Error(ErrorCode::InvalidArgument, "path must start at theta = 0");
  for (std::size_t i = 1; i < path.size(); ++i)
    if (torus_distance(path[i - 1], path[i]) > 0.02 + 1e-12)
      throw Error(ErrorCode::InvalidArgument, "path step exceeds 0.02");
  const double delta = options.delta > 0.0 ? options.delta : largest_real_zero(solver.zeta());
  const Rect strip = options.window.rect(delta);
  std::vector<PhiPoint> out;
  out.reserve(path.size());
  double phi = delta;
  for (const auto& theta : path) {
    const auto f = solver.at(theta);
    cplx s{phi, 0.0};
    auto lost = [&](const std::string& why) {
      return Error(ErrorCode::LostZero, why + " at theta = " + theta_str(theta));
    };
    double residual;
    try {
      residual = newton_refine(f, s);
    } catch (const Error&) {
      throw lost("Newton diverged");
    }
    if (!(residual < 1e-9)) throw lost("Newton residual too large");
    if (std::abs(s.imag()) >= 1e-9) throw lost("zero left the real axis");
    if (s.real() > delta + 1e-9) throw lost("zero above delta");
    if (!strip.contains(s)) throw lost("zero left the strip window");
    PhiPoint p{theta, s.real(), 1};
    if (options.check_strip) {
      try {
        p.strip_count = count_zeros(f, strip);
      } catch (const Error& e) {
        throw lost(std::string("strip contour failed (") + e.what() + ")");
      }
      if (p.strip_count != 1) throw lost("strip holds " + std::to_string(p.strip_count) + " zeros");
    }
    phi = s.real();
    out.push_back(p);
  }
  return out;
}

std::vector<PhiPoint> trace_phi(const SchottkyGroup& group, const std::vector<ThetaPoint>& path,
                                const PhiOptions& options) {
  return trace_phi(ResonanceSolver(group, options.order), path, options);
}

double phi_at(const ResonanceSolver& solver, const std::vector<double>& theta, const PhiOptions& options) {
  return trace_phi(solver, straight_path(theta), options).back().phi;
}

HessianResult hessian_phi(const ResonanceSolver& solver, double h, const PhiOptions& options) {
  if (!(h >= 1e-3 && h <= 5e-2)) throw Error(ErrorCode::InvalidArgument, "h must lie in [1e-3, 5e-2]");
  const int r = solver.rank();
  PhiOptions opt = options;
  if (opt.delta <= 0.0) opt.delta = largest_real_zero(solver.zeta());
  const double f0 = opt.delta;
  auto phi = [&](int i, double a, int j, double b) {
    std::vector<double> t(r, 0.0);
    t[i] += a;
    if (j >= 0) t[j] += b;
    return phi_at(solver, t, opt);
  };
  HessianResult out;
  out.hessian = Eigen::MatrixXd::Zero(r, r);
  out.gradient = Eigen::VectorXd::Zero(r);
  for (int i = 0; i < r; ++i) {
    const double fp = phi(i, h, -1, 0), fm = phi(i, -h, -1, 0);
    out.gradient(i) = (fp - fm) / (2 * h);
    out.hessian(i, i) = (fp - 2 * f0 + fm) / (h * h);
    for (int j = i + 1; j < r; ++j) {
      const double v = (phi(i, h, j, h) - phi(i, h, j, -h) - phi(i, -h, j, h) + phi(i, -h, j, -h)) / (4 * h * h);
      out.hessian(i, j) = out.hessian(j, i) = v;
    }
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(out.hessian);
  out.eigenvalues = es.eigenvalues();
  const auto mags = out.eigenvalues.cwiseAbs();
  out.condition = mags.minCoeff() > 0 ? mags.maxCoeff() / mags.minCoeff() : std::numeric_limits<double>::infinity();
  return out;
}

HessianResult hessian_phi(const SchottkyGroup& group, double h, const PhiOptions& options) {
  return hessian_phi(ResonanceSolver(group, options.order), h, options);
}

CoverScan cover_resonances(const SchottkyGroup& group, const CoverSpec& cover, const Rect& rect, int order,
                           const FindOptions& options, unsigned threads) {
  cover.check(group.rank());
  rect.check();
  const auto grid = character_grid(cover, group.rank());
  const ResonanceSolver solver(group, order);
  std::vector<ZeroSearch> parts(grid.size());
  parallel_for(grid.size(), threads, [&](std::size_t i) { parts[i] = solver.find(rect, grid[i], options); });
  CoverScan out;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!parts[i].complete) {
      out.complete = false;
      out.notes.push_back(theta_str(grid[i]) + ": " + parts[i].note);
    }
    out.zeros.insert(out.zeros.end(), parts[i].zeros.begin(), parts[i].zeros.end());
  }
  std::stable_sort(out.zeros.begin(), out.zeros.end(), [](const Resonance& a, const Resonance& b) {
    if (theta_less(a.theta, b.theta)) return true;
    if (theta_less(b.theta, a.theta)) return false;
    return zero_less(a, b);
  });
  return out;
}

double Histogram::total() const {
  double t = 0.0;
  for (double m : mass) t += m;
  return t;
}

Histogram histogram_of(const std::vector<Resonance>& zeros, double lo, double hi, int bins, double weight) {
  if (bins < 1 || !(lo < hi)) throw Error(ErrorCode::InvalidArgument, "bad histogram range");
  Histogram h{lo, hi, std::vector<double>(bins, 0.0)};
  const double slack = 1e-6;
  for (const auto& z : zeros) {
    if (std::abs(z.s.imag()) >= kRealTolerance) continue;
    const double x = z.s.real();
    if (x < lo || x > hi + slack) continue;
    int b = static_cast<int>((x - lo) / (hi - lo) * bins);
    b = std::clamp(b, 0, bins - 1);
    h.mass[b] += weight * z.multiplicity;
    h.points += z.multiplicity;
  }
  return h;
}

Histogram spectral_measure(const SchottkyGroup& group, const CoverSpec& cover, double delta,
                           const StripWindow& window, int bins, int order, unsigned threads) {
  const auto scan = cover_resonances(group, cover, window.rect(delta), order, {}, threads);
  if (!scan.complete) throw Error(ErrorCode::MaxDepth, "cover scan incomplete: " + scan.notes.front());
  return histogram_of(scan.zeros, delta - window.eps, delta, bins, 1.0 / static_cast<double>(cover.order()));
}

WindowCalibration calibrate_window(const SchottkyGroup& group, double delta, const std::vector<ThetaPoint>& thetas,
                                   std::vector<double> eps_candidates, std::vector<double> height_candidates,
                                   int order, unsigned threads) {
  if (eps_candidates.empty() || height_candidates.empty() || thetas.empty())
    throw Error(ErrorCode::InvalidArgument, "calibration needs candidates and a theta sample");
  std::sort(eps_candidates.begin(), eps_candidates.end(), std::greater<>());
  std::sort(height_candidates.begin(), height_candidates.end(), std::greater<>());
  const StripWindow widest{eps_candidates.front(), height_candidates.front()};
  const ResonanceSolver solver(group, order);
  std::vector<ZeroSearch> parts(thetas.size());
  parallel_for(thetas.size(), threads, [&](std::size_t i) { parts[i] = solver.find(widest.rect(delta), thetas[i]); });
  auto passes = [&](double eps, double height) {
    for (std::size_t i = 0; i < thetas.size(); ++i) {
      if (!parts[i].complete) return false;
      int inside = 0;
      for (const auto& z : parts[i].zeros) {
        if (z.s.real() < delta - eps || std::abs(z.s.imag()) > height) continue;
        if (std::abs(z.s.imag()) >= kRealTolerance) return false;
        inside += z.multiplicity;
      }
      if (inside > 1 || (thetas[i].distance_to_lattice() < 1e-14 && inside != 1)) return false;
    }
    return true;
  };
  WindowCalibration out;
  for (double eps : eps_candidates)
    for (double height : height_candidates) {
      const bool ok = passes(eps, height);
      out.table.push_back({eps, height, ok});
      if (ok && out.eps == 0.0) {
        out.eps = eps;
        out.height = height;
      }
    }
  return out;
}

std::vector<ThetaPoint> calibration_sample(int k, int rank, int m) {
  if (k < 1 || k > rank || m < 2) throw Error(ErrorCode::InvalidArgument, "bad calibration sample");
  std::vector<ThetaPoint> out;
  std::vector<int> a(k, 0);
  while (true) {
    if (2 * a[0] <= m) {
      std::vector<double> c(rank, 0.0);
      for (int i = 0; i < k; ++i) c[i] = static_cast<double>(a[i]) / m;
      out.emplace_back(std::move(c));
    }
    int i = k - 1;
    while (i >= 0 && ++a[i] == m) a[i--] = 0;
    if (i < 0) break;
  }
  return out;
}

}  // namespace hypzeta
