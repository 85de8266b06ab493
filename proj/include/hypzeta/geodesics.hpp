#pragma once

#include <optional>
#include <vector>

#include "hypzeta/schottky.hpp"
#include "hypzeta/words.hpp"

namespace hypzeta {

/// Primitive closed geodesic, represented by the canonical (lexicographically
/// minimal) rotation of a cyclically reduced primitive word.
struct PrimitiveClass {
  Word representative;
  double length = 0.0;
  HomologyVector hom;
  int word_length = 0;
};

/// Classes together with the range over which the list is known complete.
struct PrimitiveTable {
  std::vector<PrimitiveClass> classes;
  /// Every class of word length <= this is present.
  std::optional<int> complete_word_length;
  /// Every class of geodesic length <= this is present.
  double complete_geodesic_length = 0.0;
  /// The list is the whole length spectrum (hand-built test tables).
  bool exhaustive = false;
};

/// Bowen-Series map T(x) = gamma_j(x) for x in I_j.
double bowen_series(const SchottkyGroup& group, double x);
/// Index j with x in I_j (closed interval), or nullopt.
std::optional<int> interval_of(const SchottkyGroup& group, double x);

PrimitiveClass make_class(const SchottkyGroup& group, const Word& canonical);

/// All primitive classes of word length <= max_word_length, sorted by
/// (word length, representative). Each orientation is its own class.
PrimitiveTable enumerate_primitives(const SchottkyGroup& group, int max_word_length);

/// Uniform contraction data used to certify length cutoffs.
struct ContractionBound {
  int block = 1;
  double rho1 = 0.0;      // max over letters j, intervals I_i (i != j) of sup gamma_j'
  double rho_block = 0.0;  // same over reduced blocks of length `block`
  /// Lower bound on the geodesic length of any cyclically reduced word of length m.
  double min_length(int word_length) const;
};

ContractionBound contraction_bound(const SchottkyGroup& group, int block = 4);

/// All primitive classes with geodesic length <= max_length, sorted as above.
/// Throws CutoffUncertain when contraction cannot certify a finite word cutoff
/// within max_word_budget.
PrimitiveTable enumerate_primitives_by_length(const SchottkyGroup& group, double max_length,
                                              int max_word_budget = 64);

/// Largest T that enumerate_primitives_by_length can certify with the given
/// word budget (0 when the letters are not uniformly contracting).
double certified_length_limit(const SchottkyGroup& group, int max_word_budget = 64);

/// Class of the inverse word.
PrimitiveClass inverse_class(const SchottkyGroup& group, const PrimitiveClass& c);

struct DistortionReport {
  int word_length = 0;
  double second_over_first = 0.0;  // sup |gamma''/gamma'|
  double third_over_first = 0.0;   // sup |gamma'''/gamma'|
  double derivative_ratio = 0.0;   // sup gamma'(x)/gamma'(y) over x, y in one interval
};

/// Distortion sup-norms over alpha in W_n^j, sampled on each interval I_j.
DistortionReport distortion_report(const SchottkyGroup& group, int n, int samples = 9);

}  // namespace hypzeta
