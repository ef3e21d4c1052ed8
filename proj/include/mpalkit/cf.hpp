#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mpalkit/errors.hpp"
#include "mpalkit/numeric.hpp"
#include "mpalkit/word.hpp"

namespace mpalkit {

/// 2x2 integer matrix [[a, b], [c, d]]. The product of the single-quotient
/// matrices of a word is [[p_i, p_{i-1}], [q_i, q_{i-1}]].
struct Mat2 {
  Integer a, b, c, d;

  static Mat2 identity() { return {1, 0, 0, 1}; }
  static Mat2 quotient(const Integer& t) { return {t, 1, 1, 0}; }

  Mat2 operator*(const Mat2& r) const {
    return {a * r.a + b * r.c, a * r.b + b * r.d, c * r.a + d * r.c, c * r.b + d * r.d};
  }

  Integer determinant() const { return a * d - b * c; }

  bool operator==(const Mat2&) const = default;
};

namespace detail {

// Balanced fold of quotient matrices over terms [lo, hi). Small ranges use
// the O(1)-extra-op right fold M -> M * Q(t); large ranges split so the
// total big-integer cost is quasi-linear in the bit size of the result.
template <typename TermAt>
Mat2 range_matrix(const TermAt& term_at, std::size_t lo, std::size_t hi) {
  constexpr std::size_t kLeaf = 32;
  if (hi - lo <= kLeaf) {
    Mat2 m = Mat2::identity();
    for (std::size_t i = lo; i < hi; ++i) {
      const Integer t = term_at(i);
      // [[a,b],[c,d]] * [[t,1],[1,0]] = [[a t + b, a], [c t + d, c]]
      Integer na = m.a * t + m.b;
      Integer nc = m.c * t + m.d;
      m.b = std::move(m.a);
      m.d = std::move(m.c);
      m.a = std::move(na);
      m.c = std::move(nc);
    }
    return m;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  return range_matrix(term_at, lo, mid) * range_matrix(term_at, mid, hi);
}

}  // namespace detail

inline Mat2 word_matrix(const Word& a) {
  return detail::range_matrix([&](std::size_t i) -> const Integer& { return a[i]; }, 0, a.size());
}

inline Mat2 word_matrix(std::span<const std::int64_t> terms) {
  return detail::range_matrix([&](std::size_t i) { return Integer(static_cast<long>(terms[i])); }, 0,
                              terms.size());
}

/// Continuant pairs (p_k, q_k) for every prefix of a word, including the
/// virtual index -1 (p_{-1} = 1, q_{-1} = 0) so the recurrence
/// r_k = b_k r_{k-1} + r_{k-2} needs no special cases.
class ConvergentTable {
 public:
  explicit ConvergentTable(Word word) : word_(std::move(word)) {
    p_.reserve(word_.size() + 2);
    q_.reserve(word_.size() + 2);
    p_ = {1};  // index -1
    q_ = {0};
    Integer p_prev = 0, q_prev = 1;  // virtual index -2
    for (std::size_t k = 0; k < word_.size(); ++k) {
      Integer p = word_[k] * p_.back() + p_prev;
      Integer q = word_[k] * q_.back() + q_prev;
      p_prev = p_.back();
      q_prev = q_.back();
      p_.push_back(std::move(p));
      q_.push_back(std::move(q));
    }
  }

  const Word& word() const { return word_; }
  std::size_t length() const { return word_.size(); }

  const Integer& p(std::ptrdiff_t k) const { return p_.at(static_cast<std::size_t>(k + 1)); }
  const Integer& q(std::ptrdiff_t k) const { return q_.at(static_cast<std::size_t>(k + 1)); }

  Rational convergent(std::ptrdiff_t k) const {
    if (q(k) == 0) throw ZeroDenominator("convergent denominator is zero");
    return make_rational(p(k), q(k));
  }

  Rational value() const {
    if (word_.empty()) throw UndefinedValue("value of the empty word");
    return convergent(static_cast<std::ptrdiff_t>(word_.size()) - 1);
  }

 private:
  Word word_;
  std::vector<Integer> p_, q_;
};

inline ConvergentTable convergents(const Word& a) { return ConvergentTable(a); }

/// Membership in N0 x N*: every term after index 0 is >= 1.
inline bool is_standard(const Word& a) {
  for (std::size_t i = 1; i < a.size(); ++i)
    if (a[i] < 1) return false;
  return true;
}

/// Exact value p_i/q_i of a (possibly extended) word.
inline Rational evaluate(const Word& a) {
  if (a.empty()) throw UndefinedValue("value of the empty word");
  const Mat2 m = word_matrix(a);
  if (m.c == 0) throw ZeroDenominator("extended continued fraction has zero denominator");
  return make_rational(m.a, m.c);
}

inline bool is_zero_value(const Rational& r) { return r == 0; }

/// Moebius action of A's matrix on a tail value t:
/// (p_i t + p_{i-1}) / (q_i t + q_{i-1}). Works for Rational tails and for
/// quadratic irrationals (any type with Integer arithmetic and division).
template <typename Tail>
Tail evaluate_with_tail(const Word& a, const Tail& t) {
  const Mat2 m = word_matrix(a);
  Tail den = t * m.c + m.d;
  if (is_zero_value(den)) throw ZeroDenominator("tail evaluation hits a zero denominator");
  Tail num = t * m.a + m.b;
  return num / den;
}

/// Rewrites an extended word to the standard word of equal value: first
/// strip trailing zeros two terms at a time, then collapse interior
/// (x, 0, y) -> (x + y) left to right.
inline Word simplify(const Word& b) {
  if (b.empty()) throw UndefinedValue("cannot simplify the empty word");
  std::vector<Integer> t(b.begin(), b.end());
  while (t.size() >= 3 && t.back() == 0) {
    t.pop_back();
    t.pop_back();
  }
  if (t.size() == 2 && t.back() == 0) throw UndefinedValue("word value is undefined");
  std::vector<Integer> out;
  out.reserve(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] == 0 && !out.empty() && i + 1 < t.size()) {
      out.back() += t[i + 1];
      ++i;
    } else {
      out.push_back(t[i]);
    }
  }
  return Word(std::move(out));
}

}  // namespace mpalkit
