#pragma once

#include <vector>

#include "hypzeta/geodesics.hpp"
#include "hypzeta/transfer.hpp"

namespace hypzeta {

/// Abelian cover with Galois group Z/N_1 x ... x Z/N_k, k <= r, acting on
/// the first k homology coordinates.
struct CoverSpec {
  std::vector<int> moduli;

  int k() const { return static_cast<int>(moduli.size()); }
  long long order() const;
  /// Throws InvalidCover unless 1 <= k <= rank and every N_l >= 2.
  void check(int rank) const;
  /// pi_j(v) = 0, i.e. v_l = 0 mod N_l for l <= k.
  bool in_kernel(const HomologyVector& v) const;
};

/// Character grid {(b_1/N_1, ..., b_k/N_k, 0, ..., 0)} in lexicographic order.
std::vector<ThetaPoint> character_grid(const CoverSpec& cover, int rank);

struct ZetaValue {
  cplx value;
  double error_estimate = 0.0;  // |det_N - det_{N+8}|
};

/// det(I - L_{s,theta}) at orders N and N + 8; value from the larger order.
ZetaValue zeta_det(const SchottkyGroup& group, cplx s, const ThetaPoint& theta,
                   int order = kDefaultOrder);

/// Fixed-order evaluator for repeated calls (root finding).
class ZetaEvaluator {
 public:
  ZetaEvaluator(const SchottkyGroup& group, int order = kDefaultOrder)
      : disc_(group, order) {}
  explicit ZetaEvaluator(TransferDiscretization disc) : disc_(std::move(disc)) {}

  cplx operator()(cplx s, const ThetaPoint& theta) const { return disc_.fredholm_det(s, theta); }
  const TransferDiscretization& discretization() const { return disc_; }

 private:
  TransferDiscretization disc_;
};

struct SeriesOptions {
  double delta = 0.0;   // critical exponent of the group
  double margin = 0.3;  // required Re(s) - delta
  int n_max = 3;        // largest power of each primitive class
};

struct SeriesResult {
  cplx value;
  cplx log_value;
  /// Bound on |log Z - log_value| from the omitted powers and word lengths.
  double tail_bound = 0.0;
};

/// exp(-sum_{n <= n_max} (1/n) sum_C chi_theta(C^n) e^{-s n l(C)} / (1 - e^{-n l(C)})).
/// Throws DomainTooClose if Re(s) - delta < margin and IncompletePrimitives
/// if the table carries no completeness certificate fit for a tail bound.
SeriesResult zeta_series(const SchottkyGroup& group, cplx s, const ThetaPoint& theta,
                         const PrimitiveTable& primitives, const SeriesOptions& options);

/// Zeta of the abelian cover as a product over the character grid.
cplx cover_zeta(const SchottkyGroup& group, cplx s, const CoverSpec& cover,
                int order = kDefaultOrder);

/// Rank-1 test mode: the single branch gamma_1 acting on its attracting disc,
/// whose determinant is prod_k (1 - e^{-(s+k) l}).
class CylinderZeta {
 public:
  explicit CylinderZeta(const SchottkyGroup& group, int order = kDefaultOrder);
  cplx operator()(cplx s) const;

 private:
  TransferDiscretization disc_;
};

/// Largest real zero of s -> Z(s, 0) in (0, 1), located by a downward scan
/// from s = 1 followed by bisection and Newton.
double largest_real_zero(const ZetaEvaluator& zeta);
double largest_real_zero(const SchottkyGroup& group, int order = kDefaultOrder);

}  // namespace hypzeta
