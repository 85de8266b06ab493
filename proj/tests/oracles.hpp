#pragma once

// Brute-force references shared by the unit tests and the acceptance run.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <vector>

#include "hypzeta/geodesics.hpp"
#include "hypzeta/words.hpp"

namespace oracle {

using namespace hypzeta;

// Every sequence in {1..2r}^n, lexicographic.
inline std::vector<std::vector<int>> all_sequences(int r, int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> w(n, 1);
  while (true) {
    out.push_back(w);
    int i = n - 1;
    while (i >= 0 && ++w[i] > 2 * r) w[i--] = 1;
    if (i < 0) break;
  }
  return out;
}

inline bool cancels(int a, int b, int r) { return std::abs(a - b) == r; }

inline bool brute_reduced(const std::vector<int>& w, int r) {
  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    if (cancels(w[i], w[i + 1], r)) return false;
  return true;
}

// Fixed points of T^n by brute force over all itineraries (j_1..j_n). Each
// orbit point y_k = T^k x is the fixed point of the cyclically rotated inverse
// branch; the itinerary is confirmed one T step at a time, since iterating the
// expanding map n times would amplify rounding.
inline std::vector<double> brute_periodic_points(const SchottkyGroup& g, int n) {
  const int L = g.letters();
  auto orbit_point = [&](const std::vector<int>& it, int shift) {
    Moebius branch = Moebius::identity();  // T^n restricted to the cylinder
    for (int k = 0; k < n; ++k) branch = compose(g.letter_map(it[(shift + k) % n]), branch);
    const Moebius inv = branch.inverse();
    double x = g.disc(it[shift]).center;
    for (int k = 0; k < 400; ++k) x = inv.apply(x);
    return x;
  };
  std::vector<double> pts;
  std::vector<int> it(n, 1);
  while (true) {
    std::vector<double> y(n);
    for (int k = 0; k < n; ++k) y[k] = orbit_point(it, k);
    bool ok = true;
    for (int k = 0; k < n && ok; ++k) {
      const auto j = interval_of(g, y[k]);
      ok = std::isfinite(y[k]) && j && *j == it[k] &&
           std::abs(bowen_series(g, y[k]) - y[(k + 1) % n]) < 1e-8 * (1 + std::abs(y[(k + 1) % n]));
    }
    if (ok && std::none_of(pts.begin(), pts.end(), [&](double p) { return std::abs(p - y[0]) < 1e-13; }))
      pts.push_back(y[0]);
    int i = n - 1;
    while (i >= 0 && ++it[i] > L) it[i--] = 1;
    if (i < 0) break;
  }
  return pts;
}

}  // namespace oracle
