#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "hypzeta/moebius.hpp"
#include "hypzeta/schottky.hpp"
#include "hypzeta/words.hpp"

namespace hypzeta {

/// Point on the character torus R^r / Z^r, coordinates kept in [0, 1).
class ThetaPoint {
 public:
  ThetaPoint() = default;
  explicit ThetaPoint(std::vector<double> coords);
  static ThetaPoint zero(int rank) { return ThetaPoint(std::vector<double>(rank, 0.0)); }

  const std::vector<double>& coords() const { return coords_; }
  int rank() const { return static_cast<int>(coords_.size()); }
  double operator[](int i) const { return coords_[i]; }
  ThetaPoint negated() const;
  /// Distance to the nearest lattice point (Euclidean).
  double distance_to_lattice() const;

 private:
  std::vector<double> coords_;
};

/// chi_theta(v) = exp(2 pi i <theta, v>).
cplx character(const ThetaPoint& theta, const HomologyVector& v);

/// Collocation operator matrix for L_{s,theta} at a given order.
struct OperatorMatrix {
  int order = 0;
  std::vector<std::vector<double>> nodes;  // one list per disc
  Eigen::MatrixXcd entries;
  cplx s;
  ThetaPoint theta;
};

/// Chebyshev-Lobatto nodes on [center - radius, center + radius].
std::vector<double> lobatto_nodes(const Disc& disc, int order);

/// s- and theta-independent part of the collocation: nodes, log-derivatives
/// and barycentric interpolation rows of every branch z -> gamma_j(z).
/// Immutable once built and safe to share across threads.
class TransferDiscretization {
 public:
  TransferDiscretization(const SchottkyGroup& group, int order);

  /// Only the block of one disc (rank-1 cylinder mode: the single branch
  /// that maps the chosen disc into itself).
  static TransferDiscretization single_disc(const SchottkyGroup& group, int order, int disc);

  int order() const { return order_; }
  int rank() const { return rank_; }
  Eigen::Index dimension() const { return static_cast<Eigen::Index>(discs_.size()) * order_; }
  const std::vector<std::vector<double>>& nodes() const { return nodes_; }

  Eigen::MatrixXcd matrix(cplx s, const ThetaPoint& theta) const;
  /// theta = 0, real s.
  Eigen::MatrixXd real_matrix(double sigma) const;

  /// det(I - M(s, theta)).
  cplx fredholm_det(cplx s, const ThetaPoint& theta) const;

 private:
  struct Branch {
    int row_block;     // position of the source disc among discs_
    int col_block;     // position of the target disc
    int letter;        // 1..2r
    std::vector<double> log_derivative;  // log gamma_j'(x) at the source nodes
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> interpolation;
  };

  TransferDiscretization() = default;
  void build(const SchottkyGroup& group, std::vector<int> discs);

  int order_ = 0;
  int rank_ = 0;
  std::vector<int> discs_;  // disc labels (1-based) in block order
  std::vector<std::vector<double>> nodes_;
  std::vector<Branch> branches_;
};

OperatorMatrix build_operator(const SchottkyGroup& group, cplx s, const ThetaPoint& theta,
                              int order);

/// det(I - M) by partial-pivot LU.
cplx determinant(const OperatorMatrix& op);
cplx determinant_of(const Eigen::MatrixXcd& m);

struct LeadingEigen {
  double lambda = 0.0;
  Eigen::VectorXd eigenvector;  // positive, max-norm one
  int iterations = 0;
  double residual = 0.0;
};

/// Power iteration for the dominant eigenvalue of L_sigma (theta = 0).
LeadingEigen leading_eigenvalue(const TransferDiscretization& disc, double sigma,
                                int max_iterations = 20000);
LeadingEigen leading_eigenvalue(const SchottkyGroup& group, double sigma, int order = 24);

/// Topological pressure P(sigma) = log of the leading eigenvalue.
double pressure(const TransferDiscretization& disc, double sigma);
double pressure(const SchottkyGroup& group, double sigma, int order = 24);

/// Root of P(sigma) = 0 in (1e-4, 1 - 1e-4). Requires rank >= 2.
double hausdorff_dimension(const TransferDiscretization& disc);
double hausdorff_dimension(const SchottkyGroup& group, int order = 24);

constexpr int kDefaultOrder = 24;

}  // namespace hypzeta
