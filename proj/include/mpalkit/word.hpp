#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mpalkit/errors.hpp"
#include "mpalkit/numeric.hpp"

namespace mpalkit {

/// A finite sequence of non-negative integer partial quotients. Zeros are
/// permitted everywhere; membership in N0 x N* ("standard") is a separate
/// predicate, see cf.hpp.
class Word {
 public:
  Word() = default;

  explicit Word(std::vector<Integer> terms) : terms_(std::move(terms)) {
    for (const Integer& t : terms_)
      if (t < 0) throw InvalidParameters("word terms must be non-negative");
  }

  Word(std::initializer_list<long> terms) {
    terms_.reserve(terms.size());
    for (long t : terms) {
      if (t < 0) throw InvalidParameters("word terms must be non-negative");
      terms_.emplace_back(t);
    }
  }

  /// Comma separated decimal integers, e.g. "2,1,1,3,1". Spaces are allowed
  /// around terms; the empty string denotes the empty word.
  static Word parse(std::string_view text) {
    std::vector<Integer> terms;
    std::string token;
    auto flush = [&](bool final_token) {
      if (token.empty()) {
        if (!terms.empty() || !final_token) throw ParseError("empty term in word");
        return;
      }
      try {
        Integer t(token);
        if (t < 0) throw ParseError("negative term in word");
        terms.push_back(std::move(t));
      } catch (const std::invalid_argument&) {
        throw ParseError("bad word term: " + token);
      }
      token.clear();
    };
    for (char c : text) {
      if (c == ',') {
        flush(false);
      } else if (c == ' ' || c == '\t') {
        continue;
      } else {
        token += c;
      }
    }
    flush(true);
    return Word(std::move(terms));
  }

  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  const Integer& operator[](std::size_t i) const { return terms_[i]; }
  const std::vector<Integer>& terms() const { return terms_; }

  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }

  bool operator==(const Word&) const = default;

  Word prefix(std::size_t n) const {
    return Word(std::vector<Integer>(terms_.begin(), terms_.begin() + std::min(n, terms_.size())));
  }

  std::string str() const {
    std::string out;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      if (i) out += ',';
      out += terms_[i].get_str();
    }
    return out;
  }

 private:
  std::vector<Integer> terms_;
};

inline Word reverse(const Word& a) {
  std::vector<Integer> t(a.terms().rbegin(), a.terms().rend());
  return Word(std::move(t));
}

inline Word concat(const Word& a, const Word& b) {
  std::vector<Integer> t;
  t.reserve(a.size() + b.size());
  t.insert(t.end(), a.begin(), a.end());
  t.insert(t.end(), b.begin(), b.end());
  return Word(std::move(t));
}

inline Word concat(const Word& a, const Word& b, const Word& c) {
  return concat(concat(a, b), c);
}

/// A with its last `n` terms removed.
inline Word drop_last(const Word& a, std::size_t n = 1) {
  if (a.size() < n) throw InvalidParameters("drop_last past the start of the word");
  return a.prefix(a.size() - n);
}

inline Word rotate_left(const Word& a, std::size_t t) {
  if (a.empty()) return a;
  t %= a.size();
  std::vector<Integer> out;
  out.reserve(a.size());
  out.insert(out.end(), a.begin() + static_cast<std::ptrdiff_t>(t), a.end());
  out.insert(out.end(), a.begin(), a.begin() + static_cast<std::ptrdiff_t>(t));
  return Word(std::move(out));
}

inline Word power(const Word& a, unsigned long k) {
  if (a.empty() && k > 0) throw EmptyWord("power of the empty word");
  std::vector<Integer> out;
  out.reserve(a.size() * k);
  for (unsigned long i = 0; i < k; ++i) out.insert(out.end(), a.begin(), a.end());
  return Word(std::move(out));
}

/// A^x for exact rational x > 0: floor(x) whole copies followed by the
/// prefix of length ceil(frac(x)*|A|).
inline Word power(const Word& a, const Rational& x) {
  if (x <= 0) throw InvalidParameters("word exponent must be positive");
  if (a.empty()) throw EmptyWord("power of the empty word");
  const Integer whole = floor_div(x.get_num(), x.get_den());
  const Integer rem = x.get_num() - whole * x.get_den();  // frac = rem/den
  if (whole > 1'000'000'000L) throw InvalidParameters("word power too large to materialize");
  Word out = power(a, whole.get_ui());
  const Integer extra = ceil_div(rem * Integer(static_cast<unsigned long>(a.size())), x.get_den());
  return concat(out, a.prefix(extra.get_ui()));
}

/// All start indices of (possibly overlapping) occurrences of `needle`,
/// ascending. KMP over exact integer terms.
inline std::vector<std::size_t> occurrences(const Word& haystack, const Word& needle) {
  if (needle.empty()) throw EmptyWord("occurrences of the empty word");
  std::vector<std::size_t> hits;
  if (haystack.size() < needle.size()) return hits;
  const std::size_t m = needle.size();
  std::vector<std::size_t> fail(m, 0);
  for (std::size_t i = 1, k = 0; i < m; ++i) {
    while (k > 0 && needle[i] != needle[k]) k = fail[k - 1];
    if (needle[i] == needle[k]) ++k;
    fail[i] = k;
  }
  for (std::size_t i = 0, k = 0; i < haystack.size(); ++i) {
    while (k > 0 && haystack[i] != needle[k]) k = fail[k - 1];
    if (haystack[i] == needle[k]) ++k;
    if (k == m) {
      hits.push_back(i + 1 - m);
      k = fail[k - 1];
    }
  }
  return hits;
}

/// Symbol-level mirror symmetry, A == reverse(A). The value-level
/// 1-palindrome test lives in mpal.hpp.
inline bool is_palindrome_word(const Word& a) {
  for (std::size_t i = 0, j = a.size(); i + 1 < j; ++i, --j)
    if (a[i] != a[j - 1]) return false;
  return true;
}

/// Deterministic generator of an infinite word. Terms are memoized; the
/// grow callback appends at least one term per call and must be a pure
/// function of the memo contents plus immutable parameters, so that
/// prefix(n) is identical across calls and prefix(n) extends prefix(m)
/// for m < n.
///
/// Stream terms are kept as int64 internally. Every family this library
/// generates stays far below that bound at any depth that fits in memory;
/// generators throw InvalidParameters if a term would not fit. Finite
/// Words remain arbitrary precision.
class WordStream {
 public:
  using Grow = std::function<void(std::vector<std::int64_t>&)>;

  WordStream(std::string name, Grow grow) : name_(std::move(name)), grow_(std::move(grow)) {}

  WordStream(const WordStream&) = delete;
  WordStream& operator=(const WordStream&) = delete;
  WordStream(WordStream&&) = default;
  WordStream& operator=(WordStream&&) = default;

  const std::string& name() const { return name_; }

  std::int64_t term(std::size_t k) const {
    ensure(k + 1);
    return memo_[k];
  }

  Word prefix(std::size_t n) const {
    ensure(n);
    std::vector<Integer> t;
    t.reserve(n);
    for (std::size_t i = 0; i < n; ++i) t.emplace_back(static_cast<long>(memo_[i]));
    return Word(std::move(t));
  }

  /// Fast read-only access; the span is valid until the next growth.
  std::span<const std::int64_t> view(std::size_t n) const {
    ensure(n);
    return std::span<const std::int64_t>(memo_.data(), n);
  }

 private:
  void ensure(std::size_t n) const {
    while (memo_.size() < n) {
      const std::size_t before = memo_.size();
      grow_(memo_);
      if (memo_.size() <= before) throw Error("stream generator failed to make progress");
    }
  }

  std::string name_;
  Grow grow_;
  mutable std::vector<std::int64_t> memo_;
};

}  // namespace mpalkit
