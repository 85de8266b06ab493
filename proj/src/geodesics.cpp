#include "hypzeta/geodesics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "hypzeta/error.hpp"

namespace hypzeta {

std::optional<int> interval_of(const SchottkyGroup& group, double x) {
  for (int j = 1; j <= group.letters(); ++j) {
    const Disc& D = group.disc(j);
    if (std::abs(x - D.center) <= D.radius) return j;
  }
  return std::nullopt;
}

double bowen_series(const SchottkyGroup& group, double x) {
  const auto j = interval_of(group, x);
  if (!j) throw Error(ErrorCode::OutsideDomain, "x = " + std::to_string(x) + " lies in no I_j");
  return group.letter_map(*j).apply(x);
}

PrimitiveClass make_class(const SchottkyGroup& group, const Word& canonical) {
  PrimitiveClass c;
  c.representative = canonical;
  c.length = translation_length(word_to_map(group, canonical));
  c.hom = homology(canonical, group.rank());
  c.word_length = static_cast<int>(canonical.size());
  return c;
}

namespace {

bool class_order(const PrimitiveClass& x, const PrimitiveClass& y) {
  if (x.word_length != y.word_length) return x.word_length < y.word_length;
  return x.representative < y.representative;
}

// sup of gamma' over the closed interval I_i; the pole lies outside I_i so the
// sup is attained at an endpoint.
double sup_derivative(const Moebius& g, const Disc& D) {
  return std::max(g.derivative(D.lo()), g.derivative(D.hi()));
}

// max over intervals I_i with i != last of sup gamma'.
double sup_derivative_off(const SchottkyGroup& group, const Moebius& g, int last) {
  double s = 0.0;
  for (int i = 1; i <= group.letters(); ++i)
    if (i != last) s = std::max(s, sup_derivative(g, group.disc(i)));
  return s;
}

}  // namespace

double ContractionBound::min_length(int word_length) const {
  if (!(rho1 > 0.0 && rho1 < 1.0 && rho_block > 0.0 && rho_block < 1.0)) return 0.0;
  const int q = word_length / block;
  const int rem = word_length % block;
  return -q * std::log(rho_block) - rem * std::log(rho1);
}

ContractionBound contraction_bound(const SchottkyGroup& group, int block) {
  ContractionBound b;
  b.block = std::max(block, 1);
  for (int j = 1; j <= group.letters(); ++j)
    b.rho1 = std::max(b.rho1, sup_derivative_off(group, group.letter_map(j), j));
  b.rho_block = 0.0;
  for_each_reduced_word(group.rank(), b.block, std::nullopt, [&](const Word& w) {
    const Moebius g = word_to_map(group, w);
    b.rho_block = std::max(b.rho_block, sup_derivative_off(group, g, w.letters.back()));
  });
  // A block bound worse than rho1^block is never useful.
  b.rho_block = std::min(b.rho_block, std::pow(b.rho1, b.block));
  return b;
}

PrimitiveTable enumerate_primitives(const SchottkyGroup& group, int max_word_length) {
  if (max_word_length < 1) throw Error(ErrorCode::InvalidArgument, "max_word_length must be >= 1");
  PrimitiveTable table;
  const int r = group.rank();
  for (int m = 1; m <= max_word_length; ++m) {
    for_each_reduced_word(r, m, std::nullopt, [&](const Word& w) {
      if (is_cyclically_reduced(w, r) && is_canonical_cyclic(w))
        table.classes.push_back(make_class(group, w));
    });
  }
  std::sort(table.classes.begin(), table.classes.end(), class_order);
  table.complete_word_length = max_word_length;
  table.complete_geodesic_length = contraction_bound(group).min_length(max_word_length + 1);
  return table;
}

PrimitiveTable enumerate_primitives_by_length(const SchottkyGroup& group, double max_length,
                                              int max_word_budget) {
  if (!(max_length > 0.0)) throw Error(ErrorCode::InvalidArgument, "max_length must be > 0");
  const ContractionBound bound = contraction_bound(group);
  if (bound.min_length(1) <= 0.0) {
    throw Error(ErrorCode::CutoffUncertain, "letters are not uniformly contracting on the intervals");
  }
  int cutoff = 0;
  while (bound.min_length(cutoff + 1) <= max_length) {
    if (++cutoff > max_word_budget) {
      throw Error(ErrorCode::CutoffUncertain,
                  "word cutoff for T = " + std::to_string(max_length) + " exceeds budget " +
                      std::to_string(max_word_budget));
    }
  }

  const int r = group.rank();
  PrimitiveTable table;
  Word w;
  // Depth-first over reduced prefixes; a prefix p is dropped once
  // -log sup gamma_p' > T, since every cyclic extension is at least that long.
  std::function<void(const Moebius&)> extend = [&](const Moebius& g) {
    const int last = w.letters.back();
    const double s = sup_derivative_off(group, g, last);
    if (-std::log(s) > max_length) return;
    if (is_cyclically_reduced(w, r) && is_canonical_cyclic(w)) {
      const double len = translation_length(g);
      if (len <= max_length) {
        table.classes.push_back({w, len, homology(w, r), static_cast<int>(w.size())});
      }
    }
    if (static_cast<int>(w.size()) >= cutoff) return;
    for (int k = 1; k <= 2 * r; ++k) {
      if (k == inverse_letter(last, r)) continue;
      w.letters.push_back(k);
      extend(compose(g, group.letter_map(k)));
      w.letters.pop_back();
    }
  };
  for (int k = 1; k <= 2 * r; ++k) {
    w.letters = {k};
    extend(group.letter_map(k));
  }
  std::sort(table.classes.begin(), table.classes.end(), class_order);
  table.complete_geodesic_length = max_length;
  return table;
}

double certified_length_limit(const SchottkyGroup& group, int max_word_budget) {
  return std::max(0.0, contraction_bound(group).min_length(max_word_budget + 1));
}

PrimitiveClass inverse_class(const SchottkyGroup& group, const PrimitiveClass& c) {
  return make_class(group, minimal_rotation(inverse_word(c.representative, group.rank())));
}

DistortionReport distortion_report(const SchottkyGroup& group, int n, int samples) {
  if (n < 1 || n > 12) throw Error(ErrorCode::InvalidArgument, "distortion_report needs 1 <= n <= 12");
  DistortionReport rep;
  rep.word_length = n;
  samples = std::max(samples, 2);
  for (int j = 1; j <= group.letters(); ++j) {
    const Disc& D = group.disc(j);
    for_each_reduced_word(group.rank(), n, j, [&](const Word& w) {
      const Moebius g = word_to_map(group, w);
      double dmin = INFINITY, dmax = 0.0;
      for (int k = 0; k < samples; ++k) {
        const double x = D.lo() + (D.hi() - D.lo()) * k / (samples - 1);
        const double d1 = g.derivative(x);
        rep.second_over_first = std::max(rep.second_over_first, std::abs(g.second_derivative(x) / d1));
        rep.third_over_first = std::max(rep.third_over_first, std::abs(g.third_derivative(x) / d1));
        dmin = std::min(dmin, d1);
        dmax = std::max(dmax, d1);
      }
      rep.derivative_ratio = std::max(rep.derivative_ratio, dmax / dmin);
    });
  }
  return rep;
}

}  // namespace hypzeta
