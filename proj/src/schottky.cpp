#include "hypzeta/schottky.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "hypzeta/error.hpp"

namespace hypzeta {

SchottkyGroup::SchottkyGroup(std::vector<Moebius> generators, std::vector<Disc> discs)
    : generators_(std::move(generators)), discs_(std::move(discs)) {
  if (generators_.empty()) throw Error(ErrorCode::InvalidArgument, "rank must be >= 1");
  if (discs_.size() != 2 * generators_.size()) {
    throw Error(ErrorCode::InvalidArgument, "expected " + std::to_string(2 * generators_.size()) +
                                                " discs, got " + std::to_string(discs_.size()));
  }
  letter_maps_.reserve(discs_.size());
  for (const auto& g : generators_) letter_maps_.push_back(g);
  for (const auto& g : generators_) letter_maps_.push_back(g.inverse());
}

std::string Violation::describe() const {
  std::ostringstream os;
  switch (kind) {
    case ViolationKind::BadDisc:
      os << "BadDisc(" << first << ")";
      break;
    case ViolationKind::DiscOverlap:
      os << "DiscOverlap(" << first << "," << second << ")";
      break;
    case ViolationKind::NonUnitDeterminant:
      os << "NonUnitDeterminant(" << first << ") deviation=" << deviation;
      break;
    case ViolationKind::PairingFailure:
      os << "PairingFailure(" << first << "->" << second << ") max_deviation=" << deviation;
      break;
  }
  return os.str();
}

bool ValidationReport::has(ViolationKind kind) const {
  for (const auto& v : violations)
    if (v.kind == kind) return true;
  return false;
}

ValidationReport validate(const SchottkyGroup& group, int samples) {
  ValidationReport report;
  const int r = group.rank();
  const int n = group.letters();
  samples = std::max(samples, 32);

  for (int k = 1; k <= n; ++k) {
    const Disc& D = group.disc(k);
    if (!(D.radius > 0.0) || !std::isfinite(D.center)) {
      report.violations.push_back({ViolationKind::BadDisc, k, 0, D.radius});
    }
  }
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      const Disc& A = group.disc(i);
      const Disc& B = group.disc(j);
      const double gap = std::abs(A.center - B.center) - (A.radius + B.radius);
      if (!(gap > 1e-12)) report.violations.push_back({ViolationKind::DiscOverlap, i, j, gap});
    }
  }
  for (int i = 1; i <= r; ++i) {
    const Moebius& g = group.generators()[i - 1];
    const double dev = std::abs(g.det() - 1.0);
    if (dev > 1e-12) report.violations.push_back({ViolationKind::NonUnitDeterminant, i, 0, dev});
  }
  if (report.has(ViolationKind::BadDisc)) return report;

  for (int i = 1; i <= r; ++i) {
    const Moebius& g = group.generators()[i - 1];
    const Disc& src = group.disc(i);
    const Disc& dst = group.disc(i + r);
    double worst = 0.0;
    bool interior_ok = true;
    for (int k = 0; k < samples; ++k) {
      const double phi = 2.0 * std::numbers::pi * (k + 0.5) / samples;
      const cplx u = std::polar(1.0, phi);
      const cplx w = g.apply(src.center + src.radius * u);
      const double dist = std::abs(w - dst.center);
      const double dev = std::isfinite(dist) ? std::abs(dist - dst.radius) / dst.radius : INFINITY;
      worst = std::max(worst, dev);
      // Interior must land strictly outside the partner disc.
      const cplx wi = g.apply(src.center + 0.5 * src.radius * u);
      const double di = std::abs(wi - dst.center);
      if (std::isfinite(di) && !(di > dst.radius)) interior_ok = false;
    }
    if (worst > 1e-9 || !interior_ok) {
      report.violations.push_back(
          {ViolationKind::PairingFailure, i, i + r, interior_ok ? worst : std::max(worst, 1.0)});
    }
  }
  return report;
}

Moebius symmetric_hyperbolic(double length, double u) {
  const double a = std::cosh(0.5 * length);
  const double c = a / u;
  const double s = std::sinh(0.5 * length);
  return Moebius::normalized(a, s * s / c, c, a);
}

namespace {

Disc isometric_circle(const Moebius& g) { return {-g.d / g.c, 1.0 / std::abs(g.c)}; }

}  // namespace

SchottkyGroup three_funnel(double l1, double l2, double outer_center) {
  if (!(l1 > 0.0) || !(l2 > 0.0) || !(outer_center > 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "three_funnel requires l1, l2 > 0 and outer_center > 1");
  }
  const Moebius g1 = symmetric_hyperbolic(l1, 1.0);
  const Moebius g2 = symmetric_hyperbolic(l2, outer_center);
  std::vector<Disc> discs = {isometric_circle(g1), isometric_circle(g2),
                             isometric_circle(g1.inverse()), isometric_circle(g2.inverse())};
  const double gap = (outer_center - 1.0) - (discs[0].radius + discs[1].radius);
  if (!(gap > 1e-12)) {
    std::ostringstream os;
    os << "isometric circles of lengths (" << l1 << ", " << l2 << ") overlap, gap = " << gap;
    throw Error(ErrorCode::DiscsNotSeparated, os.str());
  }
  return SchottkyGroup({g1, g2}, std::move(discs));
}

SchottkyGroup cylinder(double length) {
  if (!(length > 0.0)) throw Error(ErrorCode::InvalidArgument, "cylinder length must be > 0");
  const Moebius g = symmetric_hyperbolic(length, 1.0);
  return SchottkyGroup({g}, {isometric_circle(g), isometric_circle(g.inverse())});
}

}  // namespace hypzeta
