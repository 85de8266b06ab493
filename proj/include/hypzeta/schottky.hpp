#pragma once

#include <string>
#include <vector>

#include "hypzeta/moebius.hpp"

namespace hypzeta {

/// Euclidean disc orthogonal to the real line.
struct Disc {
  double center = 0.0;
  double radius = 1.0;

  double lo() const { return center - radius; }
  double hi() const { return center + radius; }
  bool contains(double x) const { return std::abs(x - center) < radius; }
};

/// Fuchsian Schottky group of rank r. Letters run over 1..2r; letter r+i is
/// the inverse of generator i, and disc k is the one letter k is attached to:
/// generator i maps the interior of disc i onto the exterior of disc r+i.
class SchottkyGroup {
 public:
  SchottkyGroup(std::vector<Moebius> generators, std::vector<Disc> discs);

  int rank() const { return static_cast<int>(generators_.size()); }
  int letters() const { return 2 * rank(); }

  const std::vector<Moebius>& generators() const { return generators_; }
  const std::vector<Disc>& discs() const { return discs_; }

  /// Map attached to letter k in 1..2r.
  const Moebius& letter_map(int k) const { return letter_maps_[k - 1]; }
  const Disc& disc(int k) const { return discs_[k - 1]; }
  /// Letter of the inverse element: k <-> k +/- r.
  int inverse_letter(int k) const { return k > rank() ? k - rank() : k + rank(); }

 private:
  std::vector<Moebius> generators_;
  std::vector<Disc> discs_;
  std::vector<Moebius> letter_maps_;
};

enum class ViolationKind { BadDisc, DiscOverlap, NonUnitDeterminant, PairingFailure };

struct Violation {
  ViolationKind kind;
  int first = 0;   // disc or generator index (1-based)
  int second = 0;  // partner disc for DiscOverlap / PairingFailure
  double deviation = 0.0;
  std::string describe() const;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  bool has(ViolationKind kind) const;
};

/// Checks disc disjointness, unit determinants and the pairing property
/// gamma_i(D_i) = C \ closure(D_{r+i}) on sampled boundary and interior points.
ValidationReport validate(const SchottkyGroup& group, int samples = 64);

/// Symmetric hyperbolic map with translation length l whose isometric
/// circles are centred at -u and +u.
Moebius symmetric_hyperbolic(double length, double u);

/// Rank-2 group of a three-funnel surface. Generator i has translation length
/// l_i and its isometric circles sit at -u_i, +u_i with u_1 = 1 and
/// u_2 = outer_center; the discs are those isometric circles.
/// Throws DiscsNotSeparated when the circles meet.
SchottkyGroup three_funnel(double l1, double l2, double outer_center = 3.0);

/// Rank-1 group (hyperbolic cylinder) with isometric circles at -1, +1.
SchottkyGroup cylinder(double length);

}  // namespace hypzeta
