#pragma once

#include <Eigen/Dense>
#include <vector>

#include "hypzeta/geodesics.hpp"

namespace hypzeta {

/// Exact counts N(alpha, T) of primitive classes with homology alpha and
/// length <= T on an increasing grid of T.
struct HomologyCountTable {
  HomologyVector alpha;
  std::vector<double> T;
  std::vector<long long> counts;
  double delta = 0.0;
  int rank = 0;

  /// N(alpha, T) T^{r/2+1} e^{-delta T}.
  std::vector<double> normalized() const;
};

/// N(alpha, T) from an already enumerated table. Throws CutoffUncertain when
/// the table is not known complete up to T.
long long count_homology(const PrimitiveTable& primitives, const HomologyVector& alpha, double T);
long long count_homology(const SchottkyGroup& group, const HomologyVector& alpha, double T);

/// Table over the grid from one enumeration up to max(grid).
HomologyCountTable homology_table(const PrimitiveTable& primitives, const HomologyVector& alpha,
                                  std::vector<double> grid, double delta, int rank);
HomologyCountTable homology_table(const SchottkyGroup& group, const HomologyVector& alpha,
                                  std::vector<double> grid, double delta);

struct AsymptoticFit {
  std::vector<double> coefficients;  // c_0, ..., c_n
  double residual = 0.0;             // ||A c - y|| / ||y||
  double condition = 0.0;            // of the design matrix
};

/// Least squares of N T^{r/2+1} e^{-delta T} against c_0 + c_1/T + ... + c_n/T^n.
/// Needs at least n + 3 grid points; throws IllConditioned past condition 1e10.
AsymptoticFit asymptotic_fit(const HomologyCountTable& table, int n_terms);

}  // namespace hypzeta
