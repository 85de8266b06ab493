#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hypzeta/moebius.hpp"
#include "hypzeta/schottky.hpp"

namespace hypzeta {

/// Word over the letters 1..2r (letter r+i is the inverse of letter i).
struct Word {
  std::vector<int> letters;

  std::size_t size() const { return letters.size(); }
  bool empty() const { return letters.empty(); }
  auto operator<=>(const Word&) const = default;

  /// Letters joined with '.', e.g. "1.2.4".
  std::string str() const;
};

inline int inverse_letter(int k, int rank) { return k > rank ? k - rank : k + rank; }

bool is_reduced(const Word& w, int rank);
bool is_cyclically_reduced(const Word& w, int rank);

using HomologyVector = std::vector<long>;

/// Abelianization: entry i counts letter i minus letter r+i.
HomologyVector homology(const Word& w, int rank);

/// Map gamma_{w_1} o ... o gamma_{w_n}.
Moebius word_to_map(const SchottkyGroup& group, const Word& w);

Word inverse_word(const Word& w, int rank);
Word concat(const Word& u, const Word& v);

/// Lexicographically smallest cyclic rotation.
Word minimal_rotation(const Word& w);
/// Not a proper power u^m, m >= 2.
bool is_primitive(const Word& w);
/// Primitive and strictly smaller than each of its nontrivial rotations.
bool is_canonical_cyclic(const Word& w);

/// Visits every reduced word of length n in lexicographic order. With
/// forbidden_last set, words ending in that letter are skipped.
void for_each_reduced_word(int rank, int n, std::optional<int> forbidden_last,
                           const std::function<void(const Word&)>& visit);

std::vector<Word> enumerate_words(int rank, int n, std::optional<int> forbidden_last = std::nullopt);

/// Closed-form counts of reduced and cyclically reduced words.
long long reduced_word_count(int rank, int n);
long long cyclically_reduced_word_count(int rank, int n);

void check_letters(const Word& w, int rank);

}  // namespace hypzeta
