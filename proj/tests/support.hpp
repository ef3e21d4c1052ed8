#pragma once

// Shared helpers for the unit and acceptance suites: deterministic random
// word generators and independent brute-force oracles.

#include <cstdint>
#include <random>
#include <vector>

#include "mpalkit/mpalkit.hpp"

namespace mpalkit::test {

using Rng = std::mt19937_64;

inline Word random_positive_word(Rng& rng, std::size_t max_len, long max_term) {
  std::uniform_int_distribution<std::size_t> len_dist(1, max_len);
  std::uniform_int_distribution<long> term_dist(1, max_term);
  std::vector<Integer> t;
  const std::size_t n = len_dist(rng);
  t.reserve(n);
  for (std::size_t i = 0; i < n; ++i) t.emplace_back(term_dist(rng));
  return Word(std::move(t));
}

inline Word random_word_with_zeros(Rng& rng, std::size_t max_len, long max_term) {
  std::uniform_int_distribution<std::size_t> len_dist(1, max_len);
  std::uniform_int_distribution<long> term_dist(0, max_term);
  std::vector<Integer> t;
  const std::size_t n = len_dist(rng);
  t.reserve(n);
  for (std::size_t i = 0; i < n; ++i) t.emplace_back(term_dist(rng));
  return Word(std::move(t));
}

/// Quadratic-time occurrence scan, the oracle for the KMP implementation.
inline std::vector<std::size_t> naive_occurrences(const Word& haystack, const Word& needle) {
  std::vector<std::size_t> hits;
  if (needle.empty() || haystack.size() < needle.size()) return hits;
  for (std::size_t i = 0; i + needle.size() <= haystack.size(); ++i) {
    bool match = true;
    for (std::size_t j = 0; j < needle.size() && match; ++j) match = haystack[i + j] == needle[j];
    if (match) hits.push_back(i);
  }
  return hits;
}

/// Both continued fraction expansions of a rational r >= 1 with all terms
/// >= 1: the Euclidean one and, when admissible, the variant ending
/// (..., a_n - 1, 1).
inline std::vector<Word> cf_expansions(const Rational& r) {
  std::vector<Word> out;
  if (r < 1) return out;
  Integer p = r.get_num(), q = r.get_den();
  std::vector<Integer> terms;
  while (q != 0) {
    const Integer a = floor_div(p, q);
    terms.push_back(a);
    Integer rem = p - a * q;
    p = std::move(q);
    q = std::move(rem);
  }
  Word canonical((std::vector<Integer>(terms)));
  out.push_back(canonical);
  if (terms.back() >= 2) {
    std::vector<Integer> variant(terms);
    variant.back() -= 1;
    variant.emplace_back(1);
    out.push_back(Word(std::move(variant)));
  }
  return out;
}

/// Definitional m-palindromic prefix scan: tests the matrix criterion on
/// every prefix independently (no incremental state, no sieve).
inline std::vector<std::size_t> brute_force_mpal_lengths(const WordStream& s, unsigned m,
                                                         std::size_t max_len) {
  std::vector<std::size_t> lengths;
  for (std::size_t n = 1; n <= max_len; ++n) {
    const Word w = s.prefix(n);
    bool admissible = true;
    for (const Integer& t : w)
      if (t < 1) admissible = false;
    if (admissible && is_m_palindrome(w, m)) lengths.push_back(n);
  }
  return lengths;
}

/// Rational oracle for the criterion: [A] = m [reverse(A)].
inline bool mpal_by_evaluation(const Word& a, unsigned m) {
  return evaluate(a) == evaluate(reverse(a)) * m;
}

/// Enumerates all words of exactly `len` with terms in [1, max_term],
/// calling fn on each.
template <typename Fn>
void for_each_word(std::size_t len, long max_term, const Fn& fn) {
  std::vector<long> terms(len, 1);
  while (true) {
    std::vector<Integer> t(terms.begin(), terms.end());
    fn(Word(std::move(t)));
    std::size_t i = 0;
    while (i < len && terms[i] == max_term) terms[i++] = 1;
    if (i == len) break;
    ++terms[i];
  }
}

}  // namespace mpalkit::test
