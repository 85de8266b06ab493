#include "hypzeta/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hypzeta/error.hpp"

namespace hypzeta {

namespace {

double reduce_mod1(double t) {
  double f = t - std::floor(t);
  if (f >= 1.0) f = 0.0;  // t = -tiny
  return f;
}

std::vector<double> barycentric_weights(int n) {
  std::vector<double> w(n);
  for (int k = 0; k < n; ++k) w[k] = (k % 2 == 0) ? 1.0 : -1.0;
  w.front() *= 0.5;
  w.back() *= 0.5;
  return w;
}

// Lagrange cardinal functions of the node set evaluated at y.
void interpolation_row(const std::vector<double>& nodes, const std::vector<double>& w, double y,
                       Eigen::Ref<Eigen::RowVectorXd> row) {
  const int n = static_cast<int>(nodes.size());
  for (int k = 0; k < n; ++k) {
    if (y == nodes[k]) {
      row.setZero();
      row(k) = 1.0;
      return;
    }
  }
  double total = 0.0;
  for (int k = 0; k < n; ++k) {
    row(k) = w[k] / (y - nodes[k]);
    total += row(k);
  }
  row /= total;
}

}  // namespace

ThetaPoint::ThetaPoint(std::vector<double> coords) : coords_(std::move(coords)) {
  for (double& t : coords_) t = reduce_mod1(t);
}

ThetaPoint ThetaPoint::negated() const {
  std::vector<double> c(coords_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = -coords_[i];
  return ThetaPoint(std::move(c));
}

double ThetaPoint::distance_to_lattice() const {
  double s = 0.0;
  for (double t : coords_) {
    const double d = std::min(t, 1.0 - t);
    s += d * d;
  }
  return std::sqrt(s);
}

cplx character(const ThetaPoint& theta, const HomologyVector& v) {
  // Reduce the pairing mod 1 before taking the exponential.
  double phase = 0.0;
  for (int i = 0; i < theta.rank(); ++i) phase += theta[i] * static_cast<double>(v[i]);
  phase -= std::floor(phase);
  return std::polar(1.0, 2.0 * std::numbers::pi * phase);
}

std::vector<double> lobatto_nodes(const Disc& disc, int order) {
  std::vector<double> x(order);
  for (int k = 0; k < order; ++k)
    x[k] = disc.center + disc.radius * std::cos(std::numbers::pi * k / (order - 1));
  return x;
}

TransferDiscretization::TransferDiscretization(const SchottkyGroup& group, int order) {
  order_ = order;
  std::vector<int> all(group.letters());
  for (int k = 0; k < group.letters(); ++k) all[k] = k + 1;
  build(group, std::move(all));
}

TransferDiscretization TransferDiscretization::single_disc(const SchottkyGroup& group, int order,
                                                           int disc) {
  if (disc < 1 || disc > group.letters()) {
    throw Error(ErrorCode::InvalidArgument, "disc index out of range");
  }
  TransferDiscretization t;
  t.order_ = order;
  t.build(group, {disc});
  return t;
}

void TransferDiscretization::build(const SchottkyGroup& group, std::vector<int> discs) {
  if (order_ < 4) throw Error(ErrorCode::InvalidArgument, "collocation order must be >= 4");
  rank_ = group.rank();
  discs_ = std::move(discs);
  const int r = rank_;
  const std::vector<double> w = barycentric_weights(order_);

  std::vector<int> position(group.letters() + 1, -1);
  for (std::size_t b = 0; b < discs_.size(); ++b) {
    position[discs_[b]] = static_cast<int>(b);
    nodes_.push_back(lobatto_nodes(group.disc(discs_[b]), order_));
  }

  for (std::size_t b = 0; b < discs_.size(); ++b) {
    const int i = discs_[b];
    for (int j = 1; j <= group.letters(); ++j) {
      if (j == i) continue;
      const int target = inverse_letter(j, r);  // gamma_j maps D_i into D_{j+r}
      if (position[target] < 0) continue;
      const Moebius& g = group.letter_map(j);
      const Disc& dst = group.disc(target);
      Branch br{static_cast<int>(b), position[target], j, std::vector<double>(order_),
                decltype(Branch::interpolation)(order_, order_)};
      for (int p = 0; p < order_; ++p) {
        const double x = nodes_[b][p];
        const double y = g.apply(x);
        if (!(std::abs(y - dst.center) < dst.radius)) {
          std::ostringstream os;
          os << "gamma_" << j << "(" << x << ") = " << y << " is outside disc " << target;
          throw Error(ErrorCode::NodeEscapes, os.str());
        }
        br.log_derivative[p] = std::log(g.derivative(x));
        interpolation_row(nodes_[br.col_block], w, y, br.interpolation.row(p));
      }
      branches_.push_back(std::move(br));
    }
  }
}

Eigen::MatrixXcd TransferDiscretization::matrix(cplx s, const ThetaPoint& theta) const {
  if (theta.rank() != rank_) throw Error(ErrorCode::InvalidArgument, "theta has wrong rank");
  const Eigen::Index n = dimension();
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(n, n);
  for (const Branch& br : branches_) {
    HomologyVector hom(rank_, 0);
    if (br.letter <= rank_)
      hom[br.letter - 1] = 1;
    else
      hom[br.letter - rank_ - 1] = -1;
    const cplx chi = character(theta, hom);
    for (int p = 0; p < order_; ++p) {
      const cplx weight = std::exp(s * br.log_derivative[p]) * chi;
      M.block(br.row_block * order_ + p, br.col_block * order_, 1, order_) +=
          weight * br.interpolation.row(p).cast<cplx>();
    }
  }
  return M;
}

Eigen::MatrixXd TransferDiscretization::real_matrix(double sigma) const {
  const Eigen::Index n = dimension();
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
  for (const Branch& br : branches_) {
    for (int p = 0; p < order_; ++p) {
      M.block(br.row_block * order_ + p, br.col_block * order_, 1, order_) +=
          std::exp(sigma * br.log_derivative[p]) * br.interpolation.row(p);
    }
  }
  return M;
}

cplx TransferDiscretization::fredholm_det(cplx s, const ThetaPoint& theta) const {
  return determinant_of(matrix(s, theta));
}

cplx determinant_of(const Eigen::MatrixXcd& m) {
  const Eigen::MatrixXcd a = Eigen::MatrixXcd::Identity(m.rows(), m.cols()) - m;
  return a.partialPivLu().determinant();
}

OperatorMatrix build_operator(const SchottkyGroup& group, cplx s, const ThetaPoint& theta,
                              int order) {
  TransferDiscretization disc(group, order);
  return {order, disc.nodes(), disc.matrix(s, theta), s, theta};
}

cplx determinant(const OperatorMatrix& op) { return determinant_of(op.entries); }

LeadingEigen leading_eigenvalue(const TransferDiscretization& disc, double sigma,
                                int max_iterations) {
  const Eigen::MatrixXd M = disc.real_matrix(sigma);
  Eigen::VectorXd v = Eigen::VectorXd::Ones(M.rows());
  LeadingEigen out;
  for (int it = 1; it <= max_iterations; ++it) {
    Eigen::VectorXd w = M * v;
    const double lambda = w.cwiseAbs().maxCoeff();
    w /= lambda;
    const double residual = (M * w - lambda * w).cwiseAbs().maxCoeff() / lambda;
    v = std::move(w);
    if (residual < 1e-13) {
      out.lambda = lambda;
      out.eigenvector = v;
      out.iterations = it;
      out.residual = residual;
      return out;
    }
  }
  throw Error(ErrorCode::NoConvergence,
              "power iteration did not converge at sigma = " + std::to_string(sigma));
}

LeadingEigen leading_eigenvalue(const SchottkyGroup& group, double sigma, int order) {
  return leading_eigenvalue(TransferDiscretization(group, order), sigma);
}

double pressure(const TransferDiscretization& disc, double sigma) {
  return std::log(leading_eigenvalue(disc, sigma).lambda);
}

double pressure(const SchottkyGroup& group, double sigma, int order) {
  return pressure(TransferDiscretization(group, order), sigma);
}

double hausdorff_dimension(const TransferDiscretization& disc) {
  if (disc.rank() < 2) {
    throw Error(ErrorCode::NonElementaryRequired, "Hausdorff dimension needs rank >= 2");
  }
  double lo = 1e-4, hi = 1.0 - 1e-4;
  double plo = pressure(disc, lo), phi = pressure(disc, hi);
  if (!(plo > 0.0 && phi < 0.0)) {
    throw Error(ErrorCode::NoBracket, "pressure does not change sign on (1e-4, 1 - 1e-4)");
  }
  // Bisection down to a small bracket, then safeguarded Newton.
  while (hi - lo > 1e-3) {
    const double mid = 0.5 * (lo + hi);
    const double pm = pressure(disc, mid);
    if (pm > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 50; ++it) {
    const double h = 1e-6;
    const double px = pressure(disc, x);
    const double dp = (pressure(disc, x + h) - pressure(disc, x - h)) / (2 * h);
    double next = x - px / dp;
    if (px > 0.0)
      lo = x;
    else
      hi = x;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) < 1e-15) return next;
    x = next;
  }
  return x;
}

double hausdorff_dimension(const SchottkyGroup& group, int order) {
  return hausdorff_dimension(TransferDiscretization(group, order));
}

}  // namespace hypzeta
