#include <algorithm>
#include <set>

#include "hypzeta/schottky.hpp"
#include "hypzeta/words.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace hypzeta;

namespace {

Word random_reduced(int r, int n) {
  std::uniform_int_distribution<int> pick(1, 2 * r);
  Word w;
  while (static_cast<int>(w.size()) < n) {
    const int k = pick(testing::rng());
    if (!w.empty() && oracle::cancels(w.letters.back(), k, r)) continue;
    w.letters.push_back(k);
  }
  return w;
}

}  // namespace

TEST_CASE("reduced word counts against brute enumeration") {
  for (int r = 1; r <= 3; ++r)
    for (int n = 1; n <= (r == 3 ? 6 : 8); ++n) {
      long long reduced = 0, cyclic = 0;
      std::vector<long long> avoid(2 * r + 1, 0);
      std::vector<Word> expected;
      for (const auto& s : oracle::all_sequences(r, n)) {
        if (!oracle::brute_reduced(s, r)) continue;
        ++reduced;
        expected.push_back(Word{s});
        if (n == 1 || !oracle::cancels(s.front(), s.back(), r)) ++cyclic;
        for (int j = 1; j <= 2 * r; ++j)
          if (s.back() != j) ++avoid[j];
      }
      CAPTURE(r);
      CAPTURE(n);
      CHECK(reduced == reduced_word_count(r, n));
      long long formula = 2 * r;
      for (int i = 1; i < n; ++i) formula *= 2 * r - 1;
      CHECK(reduced == formula);
      CHECK(cyclic == cyclically_reduced_word_count(r, n));
      // enumerate_words is exactly the brute list in the same order
      CHECK(enumerate_words(r, n) == expected);
      long long pow = 1;
      for (int i = 0; i < n; ++i) pow *= 2 * r - 1;
      for (int j = 1; j <= 2 * r; ++j) {
        const auto ws = enumerate_words(r, n, j);
        CHECK(static_cast<long long>(ws.size()) == avoid[j]);
        CHECK(avoid[j] == pow);
        CHECK(std::all_of(ws.begin(), ws.end(), [&](const Word& w) { return w.letters.back() != j; }));
      }
    }
  CHECK(enumerate_words(2, 1).size() == 4);
  CHECK(enumerate_words(2, 3).size() == 36);
  CHECK(enumerate_words(2, 3, 1).size() == 27);
}

TEST_CASE("reduction predicates") {
  CHECK(is_reduced(Word{{1, 2, 1}}, 2));
  CHECK_FALSE(is_reduced(Word{{1, 3}}, 2));
  CHECK(is_cyclically_reduced(Word{{1, 2}}, 2));
  CHECK_FALSE(is_cyclically_reduced(Word{{1, 2, 3}}, 2));
  CHECK(is_reduced(Word{}, 2));
}

TEST_CASE("homology projection") {
  CHECK(homology(Word{{1, 2, 3}}, 2) == HomologyVector{0, 1});
  CHECK(homology(Word{}, 2) == HomologyVector{0, 0});
  CHECK(homology(Word{{1, 1, 1}}, 2) == HomologyVector{3, 0});
  CHECK_CODE(homology(Word{{5}}, 2), BadLetter);
  CHECK_CODE(homology(Word{{0}}, 2), BadLetter);
  for (int t = 0; t < 200; ++t) {
    const int r = 1 + t % 3;
    const Word u = random_reduced(r, 1 + t % 7), v = random_reduced(r, 1 + t % 5);
    auto pu = homology(u, r), pv = homology(v, r), puv = homology(concat(u, v), r);
    auto pinv = homology(inverse_word(u, r), r);
    for (int i = 0; i < r; ++i) {
      CHECK(puv[i] == pu[i] + pv[i]);
      CHECK(pinv[i] == -pu[i]);
    }
  }
}

TEST_CASE("word_to_map") {
  const SchottkyGroup g = three_funnel(6.0, 6.0);
  CHECK(approx_equal(word_to_map(g, Word{}), Moebius::identity(), 0.0));
  CHECK(approx_equal(word_to_map(g, Word{{2}}), g.generators()[1], 1e-15));
  CHECK(approx_equal(word_to_map(g, Word{{3}}), g.generators()[0].inverse(), 1e-15));

  // (1,2) by explicit 2x2 multiplication
  const Moebius a = g.generators()[0], b = g.generators()[1];
  const Moebius m = word_to_map(g, Word{{1, 2}});
  const double pa = a.a * b.a + a.b * b.c, pb = a.a * b.b + a.b * b.d, pc = a.c * b.a + a.d * b.c,
               pd = a.c * b.b + a.d * b.d;
  const double sign = pa + pd >= 0 ? 1.0 : -1.0;
  const double scale = std::max({std::abs(pa), std::abs(pb), std::abs(pc), std::abs(pd)});
  CHECK(std::abs(m.a - sign * pa) <= 1e-12 * scale);
  CHECK(std::abs(m.b - sign * pb) <= 1e-12 * scale);
  CHECK(std::abs(m.c - sign * pc) <= 1e-12 * scale);
  CHECK(std::abs(m.d - sign * pd) <= 1e-12 * scale);

  CHECK_CODE(word_to_map(g, Word{{1, 3}}), NonReducedWord);
  CHECK_CODE(word_to_map(g, Word{{1, 7}}), BadLetter);

  for (int t = 0; t < 100; ++t) {
    const Word u = random_reduced(2, 1 + t % 5), v = random_reduced(2, 1 + t % 4);
    if (oracle::cancels(u.letters.back(), v.letters.front(), 2)) continue;
    const Moebius lhs = word_to_map(g, concat(u, v));
    const Moebius rhs = compose(word_to_map(g, u), word_to_map(g, v));
    const double scale = std::max({1.0, std::abs(lhs.a), std::abs(lhs.b), std::abs(lhs.c), std::abs(lhs.d)});
    CHECK(approx_equal(lhs, rhs, 1e-10 * scale));
  }
}

TEST_CASE("rotations, primitivity and canonical representatives") {
  CHECK(minimal_rotation(Word{{2, 1, 3}}) == Word{{1, 3, 2}});
  CHECK(is_primitive(Word{{1, 2}}));
  CHECK_FALSE(is_primitive(Word{{1, 2, 1, 2}}));
  CHECK(is_canonical_cyclic(Word{{1, 1, 2}}));
  CHECK_FALSE(is_canonical_cyclic(Word{{1, 2, 1}}));
  CHECK_FALSE(is_canonical_cyclic(Word{{1, 1}}));

  // Canonical primitive words of length n are one per primitive necklace:
  // brute-force via sets of rotation classes.
  const int r = 2;
  for (int n = 1; n <= 6; ++n) {
    std::set<std::vector<int>> classes;
    long long canonical = 0;
    for (const auto& s : oracle::all_sequences(r, n)) {
      const Word w{s};
      if (!is_cyclically_reduced(w, r)) continue;
      if (is_canonical_cyclic(w)) ++canonical;
      bool periodic = false;
      for (int p = 1; p < n && !periodic; ++p)
        if (n % p == 0 && std::equal(s.begin() + p, s.end(), s.begin())) periodic = true;
      if (periodic) continue;
      std::vector<int> best = s;
      for (int k = 1; k < n; ++k) {
        std::vector<int> rot(s.begin() + k, s.end());
        rot.insert(rot.end(), s.begin(), s.begin() + k);
        best = std::min(best, rot);
      }
      classes.insert(best);
    }
    CAPTURE(n);
    CHECK(canonical == static_cast<long long>(classes.size()));
  }
}
