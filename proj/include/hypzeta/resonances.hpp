#pragma once

#include <Eigen/Dense>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "hypzeta/zeta.hpp"

namespace hypzeta {

struct Rect {
  double re_min = 0, re_max = 0, im_min = 0, im_max = 0;

  /// Throws InvalidArgument unless re_min < re_max and im_min < im_max.
  void check() const;
  cplx center() const { return {0.5 * (re_min + re_max), 0.5 * (im_min + im_max)}; }
  double width() const { return re_max - re_min; }
  double height() const { return im_max - im_min; }
  bool contains(cplx s, double slack = 0.0) const {
    return s.real() >= re_min - slack && s.real() <= re_max + slack && s.imag() >= im_min - slack &&
           s.imag() <= im_max + slack;
  }
  static Rect around(cplx s, double half_width) {
    return {s.real() - half_width, s.real() + half_width, s.imag() - half_width,
            s.imag() + half_width};
  }
};

using HolomorphicFn = std::function<cplx(cplx)>;

struct ContourOptions {
  int samples_per_edge = 8;
  /// Segments are bisected until the phase increment is below this (< pi/2).
  double max_phase_step = std::numbers::pi / 4;
  /// ... and until |f(a) + f(b) - 2 f(mid)| <= linearity_tol * min(|f(a)|, |f(b)|).
  double linearity_tol = 0.25;
  int max_refine_depth = 28;
  /// |f| below boundary_tol * max|f| on the contour counts as a boundary zero.
  double boundary_tol = 1e-11;
};

/// Winding number of f along the boundary of rect (total multiplicity of
/// zeros inside). Throws BoundaryZero when f (nearly) vanishes on the contour.
int count_zeros(const HolomorphicFn& f, const Rect& rect, const ContourOptions& options = {});

struct Resonance {
  cplx s;
  int multiplicity = 1;
  ThetaPoint theta;
  int winding = 0;             // winding count over a small square around s
  double newton_residual = 0;  // |f / f'| at s
  double det_error = 0;        // order-doubling estimate |det_N - det_{N+8}|
};

struct FindOptions {
  ContourOptions contour;
  int max_depth = 26;
  int max_newton = 80;
  /// Side length below which a rect holding m > 1 zeros is one m-fold zero.
  double cluster_size = 1e-7;
  double verify_half_width = 1e-4;
};

struct ZeroSearch {
  std::vector<Resonance> zeros;
  int count = 0;          // winding count of the whole rect
  bool complete = true;   // false on MaxDepth or multiplicity mismatch
  std::string note;
};

/// Quadrisection until each cell holds at most one zero (or a tight cluster),
/// then Newton with a central-difference derivative. Results are sorted by
/// (Im s, Re s); theta and det_error are left for the caller to fill.
ZeroSearch find_zeros(const HolomorphicFn& f, const Rect& rect, const FindOptions& options = {});

/// Newton refinement s <- s - m f/f'. Returns the final |f/f'|.
double newton_refine(const HolomorphicFn& f, cplx& s, int multiplicity = 1, int max_iterations = 80);

// Group-level wrappers: f(s) = det(I - L_{s,theta}) at the given order.
int count_zeros(const SchottkyGroup& group, const Rect& rect, const ThetaPoint& theta,
                int order = kDefaultOrder);
ZeroSearch find_zeros(const SchottkyGroup& group, const Rect& rect, const ThetaPoint& theta,
                      int order = kDefaultOrder, const FindOptions& options = {});

/// Strip window [delta - eps, delta + right_margin] x [-height, height]. The
/// right edge sits past delta so the leading zero never lies on the contour.
struct StripWindow {
  double eps = 0.05;
  double height = 1.0;
  double right_margin = 0.05;
  Rect rect(double delta) const { return {delta - eps, delta + right_margin, -height, height}; }
};

struct PhiPoint {
  ThetaPoint theta;
  double phi = 0.0;
  int strip_count = 0;
};

struct PhiOptions {
  int order = kDefaultOrder;
  double delta = 0.0;  // leading zero at theta = 0
  StripWindow window;
  bool check_strip = true;
};

/// Determinant evaluators at orders N and N + 8 for one group. The second
/// order only feeds det_error.
class ResonanceSolver {
 public:
  ResonanceSolver(const SchottkyGroup& group, int order = kDefaultOrder);

  int order() const { return zeta_.discretization().order(); }
  int rank() const { return zeta_.discretization().rank(); }
  const ZetaEvaluator& zeta() const { return zeta_; }
  HolomorphicFn at(const ThetaPoint& theta) const;

  int count(const Rect& rect, const ThetaPoint& theta, const ContourOptions& options = {}) const;
  ZeroSearch find(const Rect& rect, const ThetaPoint& theta, const FindOptions& options = {}) const;
  double det_error(cplx s, const ThetaPoint& theta) const;

 private:
  ZetaEvaluator zeta_;
  ZetaEvaluator check_;
};

/// Continuation of the real zero phi(theta) along a path starting at 0 with
/// steps of at most 0.02. Throws LostZero when Newton fails, the zero turns
/// complex, leaves the window, or the strip stops holding exactly one zero.
std::vector<PhiPoint> trace_phi(const SchottkyGroup& group, const std::vector<ThetaPoint>& path,
                                const PhiOptions& options);
std::vector<PhiPoint> trace_phi(const ResonanceSolver& solver, const std::vector<ThetaPoint>& path,
                                const PhiOptions& options);

/// Straight path from 0 to theta (unreduced coordinates) with steps <= max_step.
std::vector<ThetaPoint> straight_path(const std::vector<double>& target, double max_step = 0.02);

/// phi at an unreduced theta near 0, reached by a straight path.
double phi_at(const ResonanceSolver& solver, const std::vector<double>& theta, const PhiOptions& options);

struct HessianResult {
  Eigen::MatrixXd hessian;
  Eigen::VectorXd eigenvalues;  // ascending
  double condition = 0.0;       // |lambda|_max / |lambda|_min
  Eigen::VectorXd gradient;     // central-difference gradient at 0
};

/// Central second differences of phi at theta = 0 with step h in [1e-3, 5e-2].
HessianResult hessian_phi(const SchottkyGroup& group, double h, const PhiOptions& options);
HessianResult hessian_phi(const ResonanceSolver& solver, double h, const PhiOptions& options);

/// Union over the character grid of find_zeros on rect, each tagged with its
/// theta; sorted by theta, then Im s, then Re s.
struct CoverScan {
  std::vector<Resonance> zeros;
  bool complete = true;
  std::vector<std::string> notes;
};
CoverScan cover_resonances(const SchottkyGroup& group, const CoverSpec& cover, const Rect& rect,
                           int order = kDefaultOrder, const FindOptions& options = {},
                           unsigned threads = 0);

struct Histogram {
  double lo = 0.0, hi = 0.0;
  std::vector<double> mass;  // per bin, weighted by 1/|G_j|
  double total() const;
  int points = 0;            // real zeros in [lo, hi]
};

/// Histogram of real cover resonances in [delta - eps0, delta], each weighted
/// 1/|G_j|. Uses the strip window (eps0, height) for the scan.
Histogram spectral_measure(const SchottkyGroup& group, const CoverSpec& cover, double delta,
                           const StripWindow& window, int bins, int order = kDefaultOrder,
                           unsigned threads = 0);
Histogram histogram_of(const std::vector<Resonance>& zeros, double lo, double hi, int bins,
                       double weight);

struct WindowCalibration {
  double eps = 0.0;     // calibrated eps* (0 if no candidate passed)
  double height = 0.0;  // calibrated T*
  struct Entry {
    double eps, height;
    bool accepted;
  };
  std::vector<Entry> table;  // every candidate pair, eps then height descending
};

/// Window (eps*, T*): among the candidate pairs, the largest eps (ties broken
/// by the larger height) such that for every sampled theta the window
/// [delta - eps, delta + 0.05] x [-height, height] holds only real zeros, at
/// most one, and exactly one at theta = 0.
WindowCalibration calibrate_window(const SchottkyGroup& group, double delta,
                                   const std::vector<ThetaPoint>& thetas,
                                   std::vector<double> eps_candidates,
                                   std::vector<double> height_candidates,
                                   int order = kDefaultOrder, unsigned threads = 0);

/// Calibration sample for a cover family: the lattice (a_1/m, ..., a_k/m, 0..)
/// with a_1 in [0, m/2] (theta and -theta give the same zeros).
std::vector<ThetaPoint> calibration_sample(int k, int rank, int m);

/// Size of the Im-part below which a zero counts as real.
constexpr double kRealTolerance = 1e-8;

}  // namespace hypzeta
