#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mpalkit/cf.hpp"
#include "mpalkit/errors.hpp"
#include "mpalkit/numeric.hpp"
#include "mpalkit/word.hpp"

namespace mpalkit {

/// Element a + b sqrt(d) of a real quadratic field, exact. d is a positive
/// non-square integer; square factors found by trial division are pulled
/// into b at construction so values produced by one computation chain share
/// a radicand. Equality works across radicands regardless. b may be zero
/// for intermediate results; the quadratic-irrational predicates require
/// b != 0.
class QuadraticIrrational {
 public:
  QuadraticIrrational(Rational rational_part, Rational surd_coefficient, Integer radicand)
      : a_(std::move(rational_part)), b_(std::move(surd_coefficient)), d_(std::move(radicand)) {
    if (d_ <= 0) throw InvalidParameters("radicand must be positive");
    extract_square_part();
    if (is_perfect_square(d_)) throw InvalidParameters("radicand must not be a perfect square");
  }

  const Rational& rational_part() const { return a_; }
  const Rational& surd_coefficient() const { return b_; }
  const Integer& radicand() const { return d_; }

  bool is_rational() const { return b_ == 0; }

  QuadraticIrrational conjugate() const { return raw(a_, -b_, d_); }

  /// Sign of a + b sqrt(d), exact.
  int sign() const {
    const int sa = sgn(a_), sb = sgn(b_);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    const Rational lhs = a_ * a_;
    const Rational rhs = b_ * b_ * d_;
    if (lhs == rhs) throw Error("internal: radicand compared equal to a square");
    return lhs > rhs ? sa : sb;
  }

  friend QuadraticIrrational operator-(const QuadraticIrrational& x) {
    return raw(-x.a_, -x.b_, x.d_);
  }
  friend QuadraticIrrational operator+(const QuadraticIrrational& x, const Rational& r) {
    return raw(x.a_ + r, x.b_, x.d_);
  }
  friend QuadraticIrrational operator+(const QuadraticIrrational& x, const Integer& n) {
    return raw(x.a_ + Rational(n), x.b_, x.d_);
  }
  friend QuadraticIrrational operator-(const QuadraticIrrational& x, const Rational& r) {
    return raw(x.a_ - r, x.b_, x.d_);
  }
  friend QuadraticIrrational operator-(const Rational& r, const QuadraticIrrational& x) {
    return raw(r - x.a_, -x.b_, x.d_);
  }
  friend QuadraticIrrational operator*(const QuadraticIrrational& x, const Rational& r) {
    return raw(x.a_ * r, x.b_ * r, x.d_);
  }
  friend QuadraticIrrational operator*(const QuadraticIrrational& x, const Integer& n) {
    return x * Rational(n);
  }
  friend QuadraticIrrational operator/(const QuadraticIrrational& x, const Rational& r) {
    if (r == 0) throw ZeroDenominator();
    return raw(x.a_ / r, x.b_ / r, x.d_);
  }

  friend QuadraticIrrational operator+(const QuadraticIrrational& x, const QuadraticIrrational& y) {
    const Integer d = shared_radicand(x, y);
    return raw(x.a_ + y.a_, x.b_ + y.b_, d);
  }
  friend QuadraticIrrational operator-(const QuadraticIrrational& x, const QuadraticIrrational& y) {
    const Integer d = shared_radicand(x, y);
    return raw(x.a_ - y.a_, x.b_ - y.b_, d);
  }
  friend QuadraticIrrational operator*(const QuadraticIrrational& x, const QuadraticIrrational& y) {
    const Integer d = shared_radicand(x, y);
    return raw(x.a_ * y.a_ + x.b_ * y.b_ * d, x.a_ * y.b_ + x.b_ * y.a_, d);
  }
  friend QuadraticIrrational operator/(const QuadraticIrrational& x, const QuadraticIrrational& y) {
    const Integer d = shared_radicand(x, y);
    const Rational norm = y.a_ * y.a_ - y.b_ * y.b_ * d;
    if (norm == 0) throw ZeroDenominator("division by zero field element");
    return raw((x.a_ * y.a_ - x.b_ * y.b_ * d) / norm, (x.b_ * y.a_ - x.a_ * y.b_) / norm, d);
  }

  /// Field-element equality; radicands may differ by square factors.
  friend bool operator==(const QuadraticIrrational& x, const QuadraticIrrational& y) {
    if (x.a_ != y.a_) return false;
    if (sgn(x.b_) != sgn(y.b_)) return false;
    return x.b_ * x.b_ * x.d_ == y.b_ * y.b_ * y.d_;
  }

  friend int cmp(const QuadraticIrrational& x, const Rational& r) {
    return raw(x.a_ - r, x.b_, x.d_).sign();
  }
  friend bool operator<(const QuadraticIrrational& x, const Rational& r) { return cmp(x, r) < 0; }
  friend bool operator>(const QuadraticIrrational& x, const Rational& r) { return cmp(x, r) > 0; }
  friend bool operator<(const Rational& r, const QuadraticIrrational& x) { return cmp(x, r) > 0; }
  friend bool operator>(const Rational& r, const QuadraticIrrational& x) { return cmp(x, r) < 0; }

  /// Display triple: value = (P + sqrt(D))/Q with Q | D - P^2.
  struct Pdq {
    Integer P, D, Q;
  };

  Pdq pdq() const {
    if (b_ == 0) throw InvalidParameters("rational value has no (P + sqrt(D))/Q form");
    const Integer g = lcm(a_.get_den(), b_.get_den());
    const Integer A = a_.get_num() * (g / a_.get_den());
    const Integer B = b_.get_num() * (g / b_.get_den());
    Integer P, D, Q;
    D = B * B * d_;
    if (B > 0) {
      P = A;
      Q = g;
    } else {
      P = -A;
      Q = -g;
    }
    if ((D - P * P) % Q != 0) {
      const Integer aq = abs(Q);
      P *= aq;
      D *= aq * aq;
      Q *= aq;
    }
    return {P, D, Q};
  }

  /// Minimal polynomial A x^2 + B x + C with A > 0, gcd(A, B, C) = 1.
  struct Poly {
    Integer a, b, c;
  };

  Poly minimal_polynomial() const {
    // x^2 - 2a x + (a^2 - b^2 d) = 0, denominators cleared
    const Rational c1 = -2 * a_;
    const Rational c0 = a_ * a_ - b_ * b_ * d_;
    const Integer den = lcm(c1.get_den(), c0.get_den());
    Integer A = den;
    Integer B = c1.get_num() * (den / c1.get_den());
    Integer C = c0.get_num() * (den / c0.get_den());
    const Integer g = gcd(gcd(A, B), C);
    A /= g;
    B /= g;
    C /= g;
    return {A, B, C};
  }

  std::string str() const {
    const Pdq f = pdq();
    return "(" + f.P.get_str() + "+sqrt(" + f.D.get_str() + "))/" + f.Q.get_str();
  }

  /// Deterministic decimal rendering (display only; predicates are exact).
  std::string decimal(std::size_t digits) const {
    const std::size_t guard = digits + 6;
    const Integer shift = pow_integer(Integer(10), guard);
    const Integer s = isqrt(d_ * shift * shift);
    const Rational approx = a_ + b_ * make_rational(s, shift);
    return decimal_string(approx, digits);
  }

 private:
  struct RawTag {};

  QuadraticIrrational(RawTag, Rational a, Rational b, Integer d)
      : a_(std::move(a)), b_(std::move(b)), d_(std::move(d)) {}

  static QuadraticIrrational raw(Rational a, Rational b, Integer d) {
    return QuadraticIrrational(RawTag{}, std::move(a), std::move(b), std::move(d));
  }

  static Integer shared_radicand(const QuadraticIrrational& x, const QuadraticIrrational& y) {
    if (x.b_ == 0) return y.d_;
    if (y.b_ == 0) return x.d_;
    if (x.d_ != y.d_) throw InvalidParameters("arithmetic across different radicands");
    return x.d_;
  }

  void extract_square_part() {
    Integer factor = 1;
    for (Integer p = 2; p <= 4096 && p * p <= d_; ++p) {
      while (d_ % (p * p) == 0) {
        d_ /= p * p;
        factor *= p;
      }
    }
    if (factor != 1) b_ *= Rational(factor);
  }

  Rational a_, b_;
  Integer d_;
};

inline bool is_zero_value(const QuadraticIrrational& x) {
  return x.surd_coefficient() == 0 && x.rational_part() == 0;
}

inline QuadraticIrrational conjugate(const QuadraticIrrational& x) { return x.conjugate(); }

/// x > 1 with conjugate strictly inside (-1, 0); exact sign tests.
inline bool is_reduced(const QuadraticIrrational& x) {
  if (x.is_rational()) throw InvalidParameters("is_reduced needs an irrational value");
  if (!(x > Rational(1))) return false;
  const QuadraticIrrational c = x.conjugate();
  return c > Rational(-1) && c < Rational(0);
}

enum class ScaleDirection { multiply, divide };

inline QuadraticIrrational scale(const QuadraticIrrational& x, unsigned m, ScaleDirection dir) {
  if (m == 0) throw InvalidParameters("scale factor must be positive");
  const Rational f(static_cast<unsigned long>(m));
  return dir == ScaleDirection::multiply ? x * f : x / f;
}

/// Eventually periodic word U overline(W), canonical: primitive period and
/// minimal preperiod (trailing terms of U equal to the last period term are
/// absorbed by rotating W, so purely periodic inputs in disguise normalize
/// to an empty preperiod).
class EventuallyPeriodicWord {
 public:
  EventuallyPeriodicWord(Word preperiod, Word period)
      : pre_(std::move(preperiod)), period_(std::move(period)) {
    if (period_.empty()) throw EmptyWord("period must be nonempty");
    for (const Integer& t : period_)
      if (t < 1) throw NonStandardWord("period terms must be >= 1");
    if (!is_standard(pre_)) throw NonStandardWord("preperiod must be standard");
    canonicalize();
  }

  /// "U|W" with a possibly empty U, or just "W" for a purely periodic word.
  static EventuallyPeriodicWord parse(std::string_view text) {
    const auto pipe = text.find('|');
    if (pipe == std::string_view::npos) return EventuallyPeriodicWord(Word(), Word::parse(text));
    return EventuallyPeriodicWord(Word::parse(text.substr(0, pipe)), Word::parse(text.substr(pipe + 1)));
  }

  const Word& preperiod() const { return pre_; }
  const Word& period() const { return period_; }
  bool purely_periodic() const { return pre_.empty(); }

  Integer term(std::size_t k) const {
    if (k < pre_.size()) return pre_[k];
    return period_[(k - pre_.size()) % period_.size()];
  }

  WordStream stream() const {
    std::vector<std::int64_t> pre, per;
    const auto to64 = [](const Integer& t) {
      if (!t.fits_slong_p()) throw InvalidParameters("stream terms must fit in 64 bits");
      return static_cast<std::int64_t>(t.get_si());
    };
    for (const Integer& t : pre_) pre.push_back(to64(t));
    for (const Integer& t : period_) per.push_back(to64(t));
    return WordStream("periodic:" + str(), [pre, per](std::vector<std::int64_t>& memo) {
      if (memo.size() < pre.size()) {
        memo.push_back(pre[memo.size()]);
        return;
      }
      memo.push_back(per[(memo.size() - pre.size()) % per.size()]);
    });
  }

  std::string str() const {
    if (pre_.empty()) return period_.str();
    return pre_.str() + "|" + period_.str();
  }

  bool operator==(const EventuallyPeriodicWord&) const = default;

 private:
  void canonicalize() {
    // primitive period
    const std::size_t n = period_.size();
    for (std::size_t len = 1; len <= n / 2; ++len) {
      if (n % len != 0) continue;
      bool repeats = true;
      for (std::size_t i = len; i < n && repeats; ++i) repeats = period_[i] == period_[i % len];
      if (repeats) {
        period_ = period_.prefix(len);
        break;
      }
    }
    // absorb preperiod tail into the period by rotation
    while (!pre_.empty() && pre_[pre_.size() - 1] == period_[period_.size() - 1]) {
      period_ = rotate_left(period_, period_.size() - 1);
      pre_ = drop_last(pre_);
    }
  }

  Word pre_;
  Word period_;
};

/// Exact value of an eventually periodic continued fraction: the purely
/// periodic tail solves q x^2 + (q' - p) x - p' = 0 (positive root), then
/// the preperiod acts by its Moebius map.
inline QuadraticIrrational periodic_value(const EventuallyPeriodicWord& e) {
  const Mat2 w = word_matrix(e.period());
  const Integer& p = w.a;
  const Integer& p1 = w.b;
  const Integer& q = w.c;
  const Integer& q1 = w.d;
  const Integer disc = (p - q1) * (p - q1) + 4 * q * p1;
  if (disc <= 0 || is_perfect_square(disc))
    throw DegeneratePeriod("period solves to a rational value");
  const QuadraticIrrational tail(make_rational(p - q1, 2 * q), make_rational(Integer(1), 2 * q), disc);
  if (e.purely_periodic()) return tail;
  return evaluate_with_tail(e.preperiod(), tail);
}

/// Two-way Galois self-check: empty preperiod iff the value is reduced.
inline bool galois_roundtrip(const EventuallyPeriodicWord& e) {
  return e.purely_periodic() == is_reduced(periodic_value(e));
}

enum class BurgerVerdict { One, Two, None };

struct BurgerSplit {
  BurgerVerdict verdict = BurgerVerdict::None;
  std::size_t repeat = 0;    // j with the witness found inside W^j
  std::size_t rotation = 0;  // left-rotation offset of W^j
  Word first, second;        // the palindromic part(s); second empty for One
};

/// Searches every cyclic rotation of W^j, j <= max_repeat, for a
/// decomposition into one or two symbol-palindromes. One takes priority
/// over Two; the witness is the first found in (j, rotation, split) order.
inline BurgerSplit burger_split(const Word& w, unsigned max_repeat) {
  if (w.empty()) throw NonStandardWord("period must be nonempty");
  for (const Integer& t : w)
    if (t < 1) throw NonStandardWord("period terms must be >= 1");
  if (max_repeat == 0) throw InvalidParameters("max_repeat must be positive");
  for (unsigned j = 1; j <= max_repeat; ++j) {
    const Word v = power(w, static_cast<unsigned long>(j));
    for (std::size_t t = 0; t < v.size(); ++t) {
      const Word r = rotate_left(v, t);
      if (is_palindrome_word(r)) return {BurgerVerdict::One, j, t, r, Word()};
    }
  }
  for (unsigned j = 1; j <= max_repeat; ++j) {
    const Word v = power(w, static_cast<unsigned long>(j));
    for (std::size_t t = 0; t < v.size(); ++t) {
      const Word r = rotate_left(v, t);
      for (std::size_t split = 1; split < r.size(); ++split) {
        const Word head = r.prefix(split);
        const Word tail = reverse(reverse(r).prefix(r.size() - split));
        if (is_palindrome_word(head) && is_palindrome_word(tail))
          return {BurgerVerdict::Two, j, t, head, tail};
      }
    }
  }
  return {};
}

/// Burger's criterion at the given repeat bound: the value of E is
/// equivalent to its algebraic conjugate iff some rotation of a period
/// power decomposes into one or two symbol-palindromes.
inline bool equivalent_to_conjugate(const EventuallyPeriodicWord& e, unsigned max_repeat) {
  return burger_split(e.period(), max_repeat).verdict != BurgerVerdict::None;
}

}  // namespace mpalkit
