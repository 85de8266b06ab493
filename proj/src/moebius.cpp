#include "hypzeta/moebius.hpp"

#include <cmath>
#include <string>

#include "hypzeta/error.hpp"

namespace hypzeta {

Moebius Moebius::normalized(double a, double b, double c, double d) {
  double det = a * d - b * c;
  if (!(det > 0.0)) {
    throw Error(ErrorCode::InvalidArgument,
                "Moebius matrix must have positive determinant, got " + std::to_string(det));
  }
  const double k = 1.0 / std::sqrt(det);
  return sign_normalized(a * k, b * k, c * k, d * k);
}

Moebius Moebius::sign_normalized(double a, double b, double c, double d) {
  // PSL(2,R): pick the representative with a + d >= 0 (and c >= 0 when the trace vanishes).
  const double tr = a + d;
  if (tr < 0.0 || (tr == 0.0 && (c < 0.0 || (c == 0.0 && a < 0.0)))) return {-a, -b, -c, -d};
  return {a, b, c, d};
}

Moebius compose(const Moebius& f, const Moebius& g) {
  // Inputs have unit determinant; rescaling by a recomputed product
  // determinant would cancel catastrophically for long words.
  return Moebius::sign_normalized(f.a * g.a + f.b * g.c, f.a * g.b + f.b * g.d,
                                  f.c * g.a + f.d * g.c, f.c * g.b + f.d * g.d);
}

bool approx_equal(const Moebius& f, const Moebius& g, double tol) {
  return std::abs(f.a - g.a) <= tol && std::abs(f.b - g.b) <= tol &&
         std::abs(f.c - g.c) <= tol && std::abs(f.d - g.d) <= tol;
}

namespace {

void require_hyperbolic(const Moebius& g) {
  if (std::abs(g.trace()) <= 2.0 + 1e-12) {
    throw Error(ErrorCode::NotHyperbolic,
                "|trace| = " + std::to_string(std::abs(g.trace())) + " <= 2");
  }
}

}  // namespace

FixedPoints fixed_points(const Moebius& g) {
  require_hyperbolic(g);
  if (g.c == 0.0) {
    throw Error(ErrorCode::FixedPointAtInfinity, "map with c = 0 fixes infinity");
  }
  // c z^2 + (d - a) z - b = 0, solved without cancellation.
  const double p = g.d - g.a;
  const double disc = std::sqrt(p * p + 4.0 * g.b * g.c);
  const double q = -0.5 * (p + std::copysign(disc, p));
  double z1 = q / g.c;
  double z2 = (q != 0.0) ? -g.b / q : (-p + disc) / (2.0 * g.c);
  if (g.derivative(z1) < g.derivative(z2)) return {z1, z2};
  return {z2, z1};
}

double translation_length(const Moebius& g) {
  require_hyperbolic(g);
  return 2.0 * std::acosh(0.5 * std::abs(g.trace()));
}

}  // namespace hypzeta
