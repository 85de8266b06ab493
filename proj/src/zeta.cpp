#include "hypzeta/zeta.hpp"

#include <cmath>

#include "hypzeta/error.hpp"

namespace hypzeta {

long long CoverSpec::order() const {
  long long n = 1;
  for (int m : moduli) n *= m;
  return n;
}

void CoverSpec::check(int rank) const {
  if (k() < 1 || k() > rank) {
    throw Error(ErrorCode::InvalidCover, "cover needs 1 <= k <= rank, got k = " + std::to_string(k()));
  }
  for (int m : moduli) {
    if (m < 2) throw Error(ErrorCode::InvalidCover, "cover moduli must be >= 2, got " + std::to_string(m));
  }
}

bool CoverSpec::in_kernel(const HomologyVector& v) const {
  for (int l = 0; l < k(); ++l)
    if (v[l] % moduli[l] != 0) return false;
  return true;
}

std::vector<ThetaPoint> character_grid(const CoverSpec& cover, int rank) {
  cover.check(rank);
  std::vector<ThetaPoint> grid;
  grid.reserve(static_cast<std::size_t>(cover.order()));
  std::vector<int> b(cover.k(), 0);
  while (true) {
    std::vector<double> t(rank, 0.0);
    for (int l = 0; l < cover.k(); ++l) t[l] = static_cast<double>(b[l]) / cover.moduli[l];
    grid.emplace_back(std::move(t));
    int l = cover.k() - 1;
    while (l >= 0 && ++b[l] == cover.moduli[l]) b[l--] = 0;
    if (l < 0) break;
  }
  return grid;
}

ZetaValue zeta_det(const SchottkyGroup& group, cplx s, const ThetaPoint& theta, int order) {
  const cplx lo = TransferDiscretization(group, order).fredholm_det(s, theta);
  const cplx hi = TransferDiscretization(group, order + 8).fredholm_det(s, theta);
  return {hi, std::abs(hi - lo)};
}

SeriesResult zeta_series(const SchottkyGroup& group, cplx s, const ThetaPoint& theta,
                         const PrimitiveTable& primitives, const SeriesOptions& options) {
  const double sigma = s.real();
  if (sigma - options.delta < options.margin) {
    throw Error(ErrorCode::DomainTooClose, "Re(s) - delta = " + std::to_string(sigma - options.delta) +
                                               " below margin " + std::to_string(options.margin));
  }
  if (!primitives.exhaustive && !primitives.complete_word_length) {
    throw Error(ErrorCode::IncompletePrimitives, "primitive table has no word-length certificate");
  }
  if (options.n_max < 1) throw Error(ErrorCode::InvalidArgument, "n_max must be >= 1");

  cplx log_sum = 0.0;
  double tail = 0.0;
  const int p = options.n_max + 1;
  for (const PrimitiveClass& c : primitives.classes) {
    const cplx chi = character(theta, c.hom);
    cplx chi_n = 1.0;
    for (int n = 1; n <= options.n_max; ++n) {
      chi_n *= chi;
      const double nl = n * c.length;
      log_sum += chi_n * std::exp(-s * nl) / (n * (1.0 - std::exp(-nl)));
    }
    tail += std::exp(-sigma * p * c.length) /
            (p * (1.0 - std::exp(-sigma * c.length)) * (1.0 - std::exp(-c.length)));
  }

  if (!primitives.exhaustive) {
    // Words longer than the certified cutoff: at most (2r-1)^m + 2r - 1 of
    // them at length m, each of geodesic length >= min_length(m).
    const ContractionBound bound = contraction_bound(group);
    const int W = *primitives.complete_word_length;
    const double q = 2.0 * group.rank() - 1.0;
    const double per_letter = bound.min_length(bound.block) / bound.block;
    if (!(per_letter > 0.0) || q * std::exp(-sigma * per_letter) >= 1.0) {
      throw Error(ErrorCode::IncompletePrimitives, "word-length tail does not converge at Re(s) = " +
                                                       std::to_string(sigma));
    }
    double word_tail = 0.0;
    for (int m = W + 1; m < W + 100000; ++m) {
      const double L = bound.min_length(m);
      const double count = std::pow(q, m) + q;
      const double term = count * std::exp(-sigma * L) / (m * (1.0 - std::exp(-L)));
      word_tail += term;
      if (term < 1e-30 * std::max(word_tail, 1e-300) || term < 1e-300) break;
    }
    tail += word_tail;
  }

  const cplx log_value = -log_sum;
  return {std::exp(log_value), log_value, tail};
}

cplx cover_zeta(const SchottkyGroup& group, cplx s, const CoverSpec& cover, int order) {
  const TransferDiscretization disc(group, order);
  cplx product = 1.0;
  for (const ThetaPoint& theta : character_grid(cover, group.rank()))
    product *= disc.fredholm_det(s, theta);
  return product;
}

CylinderZeta::CylinderZeta(const SchottkyGroup& group, int order)
    : disc_(group.rank() == 1 ? TransferDiscretization::single_disc(group, order, 2)
                              : throw Error(ErrorCode::InvalidArgument, "cylinder mode needs rank 1")) {}

cplx CylinderZeta::operator()(cplx s) const { return disc_.fredholm_det(s, ThetaPoint::zero(1)); }

double largest_real_zero(const ZetaEvaluator& zeta) {
  const ThetaPoint zero = ThetaPoint::zero(zeta.discretization().rank());
  auto f = [&](double x) { return zeta(x, zero).real(); };
  double hi = 1.0;
  double fhi = f(hi);
  if (!(fhi > 0.0)) throw Error(ErrorCode::NoBracket, "Z(1, 0) is not positive");
  double lo = hi;
  double flo = fhi;
  const double step = 0.01;
  while (flo > 0.0) {
    hi = lo;
    fhi = flo;
    lo -= step;
    if (lo <= 0.0) throw Error(ErrorCode::NoBracket, "no sign change of Z(s, 0) on (0, 1]");
    flo = f(lo);
  }
  while (hi - lo > 1e-6) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) > 0.0)
      hi = mid;
    else
      lo = mid;
  }
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 30; ++it) {
    const double h = 1e-7;
    const double d = (f(x + h) - f(x - h)) / (2 * h);
    const double dx = f(x) / d;
    x -= dx;
    if (std::abs(dx) < 1e-15) break;
  }
  return x;
}

double largest_real_zero(const SchottkyGroup& group, int order) {
  return largest_real_zero(ZetaEvaluator(group, order));
}

}  // namespace hypzeta
