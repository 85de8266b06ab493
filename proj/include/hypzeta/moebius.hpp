#pragma once

#include <complex>
#include <utility>

namespace hypzeta {

using cplx = std::complex<double>;

/// Real Moebius map z -> (a z + b) / (c z + d), stored in PSL(2,R) form:
/// determinant scaled to one and sign fixed so that a + d >= 0.
struct Moebius {
  double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

  static Moebius identity() { return {}; }
  /// Rescales an arbitrary matrix with positive determinant.
  static Moebius from_matrix(double a, double b, double c, double d);

  double det() const { return a * d - b * c; }
  double trace() const { return a + d; }

  double apply(double x) const { return (a * x + b) / (c * x + d); }
  cplx apply(cplx z) const { return (a * z + b) / (c * z + d); }

  // Derivatives of the real map; valid away from the pole -d/c.
  double derivative(double x) const {
    const double q = c * x + d;
    return 1.0 / (q * q);
  }
  double second_derivative(double x) const {
    const double q = c * x + d;
    return -2.0 * c / (q * q * q);
  }
  double third_derivative(double x) const {
    const double q = c * x + d;
    return 6.0 * c * c / (q * q * q * q);
  }

  Moebius inverse() const { return sign_normalized(d, -b, -c, a); }

  /// Pole of the map, i.e. the centre of its isometric circle (c != 0).
  double pole() const { return -d / c; }

  /// Sign flip only; for matrices already of unit determinant.
  static Moebius sign_normalized(double a, double b, double c, double d);
  static Moebius normalized(double a, double b, double c, double d);
};

/// Matrix product f * g, i.e. the map z -> f(g(z)).
Moebius compose(const Moebius& f, const Moebius& g);

bool approx_equal(const Moebius& f, const Moebius& g, double tol);

struct FixedPoints {
  double attracting;
  double repelling;
};

/// Real fixed points of a hyperbolic map. Throws NotHyperbolic when
/// |trace| <= 2 and FixedPointAtInfinity when c == 0.
FixedPoints fixed_points(const Moebius& g);

/// Hyperbolic translation length 2 arccosh(|a + d| / 2).
double translation_length(const Moebius& g);

}  // namespace hypzeta
