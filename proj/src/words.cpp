#include "hypzeta/words.hpp"

#include <algorithm>
#include <sstream>

#include "hypzeta/error.hpp"

namespace hypzeta {

std::string Word::str() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < letters.size(); ++i) os << (i ? "." : "") << letters[i];
  return os.str();
}

void check_letters(const Word& w, int rank) {
  for (int k : w.letters) {
    if (k < 1 || k > 2 * rank) {
      throw Error(ErrorCode::BadLetter,
                  "letter " + std::to_string(k) + " outside 1.." + std::to_string(2 * rank));
    }
  }
}

bool is_reduced(const Word& w, int rank) {
  for (std::size_t i = 1; i < w.size(); ++i)
    if (w.letters[i] == inverse_letter(w.letters[i - 1], rank)) return false;
  return true;
}

bool is_cyclically_reduced(const Word& w, int rank) {
  if (!is_reduced(w, rank)) return false;
  return w.size() < 2 || w.letters.front() != inverse_letter(w.letters.back(), rank);
}

HomologyVector homology(const Word& w, int rank) {
  check_letters(w, rank);
  HomologyVector h(rank, 0);
  for (int k : w.letters) {
    if (k <= rank)
      ++h[k - 1];
    else
      --h[k - rank - 1];
  }
  return h;
}

Moebius word_to_map(const SchottkyGroup& group, const Word& w) {
  check_letters(w, group.rank());
  if (!is_reduced(w, group.rank())) {
    throw Error(ErrorCode::NonReducedWord, "word " + w.str() + " contains a cancelling pair");
  }
  Moebius m = Moebius::identity();
  for (int k : w.letters) m = compose(m, group.letter_map(k));
  return m;
}

Word inverse_word(const Word& w, int rank) {
  Word out;
  out.letters.reserve(w.size());
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
    out.letters.push_back(inverse_letter(*it, rank));
  return out;
}

Word concat(const Word& u, const Word& v) {
  Word out = u;
  out.letters.insert(out.letters.end(), v.letters.begin(), v.letters.end());
  return out;
}

namespace {

// Compares rotation starting at i with rotation starting at j.
int compare_rotations(const std::vector<int>& s, std::size_t i, std::size_t j) {
  const std::size_t n = s.size();
  for (std::size_t k = 0; k < n; ++k) {
    const int a = s[(i + k) % n];
    const int b = s[(j + k) % n];
    if (a != b) return a < b ? -1 : 1;
  }
  return 0;
}

}  // namespace

Word minimal_rotation(const Word& w) {
  const std::size_t n = w.size();
  std::size_t best = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (compare_rotations(w.letters, i, best) < 0) best = i;
  Word out;
  out.letters.reserve(n);
  for (std::size_t k = 0; k < n; ++k) out.letters.push_back(w.letters[(best + k) % n]);
  return out;
}

bool is_primitive(const Word& w) {
  const std::size_t n = w.size();
  if (n == 0) return false;
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p) continue;
    bool periodic = true;
    for (std::size_t k = p; k < n && periodic; ++k) periodic = w.letters[k] == w.letters[k - p];
    if (periodic) return false;
  }
  return true;
}

bool is_canonical_cyclic(const Word& w) {
  const std::size_t n = w.size();
  if (n == 0) return false;
  for (std::size_t i = 1; i < n; ++i)
    if (compare_rotations(w.letters, i, 0) <= 0) return false;
  return true;
}

void for_each_reduced_word(int rank, int n, std::optional<int> forbidden_last,
                           const std::function<void(const Word&)>& visit) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "word length must be >= 1");
  Word w;
  w.letters.assign(n, 0);
  const int L = 2 * rank;
  // Iterative depth-first walk; letters are tried in increasing order.
  std::vector<int> next(n, 1);
  int depth = 0;
  while (depth >= 0) {
    if (next[depth] > L) {
      next[depth] = 1;
      --depth;
      continue;
    }
    const int k = next[depth]++;
    if (depth > 0 && k == inverse_letter(w.letters[depth - 1], rank)) continue;
    w.letters[depth] = k;
    if (depth + 1 == n) {
      if (!forbidden_last || k != *forbidden_last) visit(w);
    } else {
      ++depth;
    }
  }
}

std::vector<Word> enumerate_words(int rank, int n, std::optional<int> forbidden_last) {
  std::vector<Word> out;
  for_each_reduced_word(rank, n, forbidden_last, [&](const Word& w) { out.push_back(w); });
  return out;
}

long long reduced_word_count(int rank, int n) {
  long long c = 2LL * rank;
  for (int i = 1; i < n; ++i) c *= 2LL * rank - 1;
  return c;
}

long long cyclically_reduced_word_count(int rank, int n) {
  // Trace of the n-th power of the non-backtracking transition matrix.
  long long p = 1;
  for (int i = 0; i < n; ++i) p *= 2LL * rank - 1;
  return p + 1 + (rank - 1LL) * (1 + (n % 2 == 0 ? 1 : -1));
}

}  // namespace hypzeta
