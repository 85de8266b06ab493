#include "hypzeta/homcount.hpp"

#include <algorithm>
#include <cmath>

#include "hypzeta/error.hpp"

namespace hypzeta {

std::vector<double> HomologyCountTable::normalized() const {
  std::vector<double> out(T.size());
  const double p = rank / 2.0 + 1.0;
  for (std::size_t i = 0; i < T.size(); ++i)
    out[i] = static_cast<double>(counts[i]) * std::pow(T[i], p) * std::exp(-delta * T[i]);
  return out;
}

long long count_homology(const PrimitiveTable& primitives, const HomologyVector& alpha, double T) {
  if (!primitives.exhaustive && T > primitives.complete_geodesic_length + 1e-12)
    throw Error(ErrorCode::CutoffUncertain, "table complete only up to length " +
                                                std::to_string(primitives.complete_geodesic_length));
  long long n = 0;
  for (const auto& c : primitives.classes)
    if (c.length <= T && c.hom == alpha) ++n;
  return n;
}

long long count_homology(const SchottkyGroup& group, const HomologyVector& alpha, double T) {
  if (static_cast<int>(alpha.size()) != group.rank())
    throw Error(ErrorCode::InvalidArgument, "alpha has the wrong rank");
  return count_homology(enumerate_primitives_by_length(group, T), alpha, T);
}

HomologyCountTable homology_table(const PrimitiveTable& primitives, const HomologyVector& alpha,
                                  std::vector<double> grid, double delta, int rank) {
  if (grid.empty()) throw Error(ErrorCode::InvalidArgument, "empty T grid");
  std::sort(grid.begin(), grid.end());
  HomologyCountTable t{alpha, grid, {}, delta, rank};
  for (double T : grid) t.counts.push_back(count_homology(primitives, alpha, T));
  return t;
}

HomologyCountTable homology_table(const SchottkyGroup& group, const HomologyVector& alpha,
                                  std::vector<double> grid, double delta) {
  if (grid.empty()) throw Error(ErrorCode::InvalidArgument, "empty T grid");
  const double tmax = *std::max_element(grid.begin(), grid.end());
  return homology_table(enumerate_primitives_by_length(group, tmax), alpha, std::move(grid), delta,
                        group.rank());
}

AsymptoticFit asymptotic_fit(const HomologyCountTable& table, int n_terms) {
  const int m = static_cast<int>(table.T.size());
  if (n_terms < 0 || m < n_terms + 3)
    throw Error(ErrorCode::InvalidArgument, "asymptotic fit needs at least n_terms + 3 grid points");
  const auto y_values = table.normalized();
  Eigen::MatrixXd A(m, n_terms + 1);
  Eigen::VectorXd y(m);
  for (int i = 0; i < m; ++i) {
    y(i) = y_values[i];
    for (int j = 0; j <= n_terms; ++j) A(i, j) = std::pow(table.T[i], -j);
  }
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  AsymptoticFit fit;
  fit.condition = sv(sv.size() - 1) > 0 ? sv(0) / sv(sv.size() - 1) : std::numeric_limits<double>::infinity();
  if (!(fit.condition <= 1e10)) throw Error(ErrorCode::IllConditioned, "design matrix condition exceeds 1e10");
  const Eigen::VectorXd c = svd.solve(y);
  fit.coefficients.assign(c.data(), c.data() + c.size());
  const double ny = y.norm();
  fit.residual = ny > 0 ? (A * c - y).norm() / ny : 0.0;
  return fit;
}

}  // namespace hypzeta
