#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "mpalkit/cf.hpp"
#include "mpalkit/errors.hpp"
#include "mpalkit/numeric.hpp"
#include "mpalkit/word.hpp"

namespace mpalkit {

/// Witness of m q_i = p_{i-1} for a word A = (a_0, ..., a_i).
struct MPalCertificate {
  unsigned m = 1;
  Word word;
  Integer p_i, q_i, p_prev;
};

/// m-palindromic prefix lengths of a stream, gap-free, plus the
/// consecutive-length ratios |P_k|/|P_{k+1}| feeding the density estimate.
struct DensityReport {
  unsigned m = 1;
  std::vector<std::size_t> prefix_lengths;
  std::vector<Rational> ratios;
};

namespace detail {

inline void require_m(unsigned m) {
  if (m == 0) throw InvalidParameters("m must be a positive integer");
}

inline void require_positive_terms(const Word& a) {
  if (a.empty()) throw NonStandardWord("word must be nonempty");
  for (const Integer& t : a)
    if (t < 1) throw NonStandardWord("word must have all terms >= 1");
}

inline bool all_terms_positive(const Word& a) {
  for (const Integer& t : a)
    if (t < 1) return false;
  return !a.empty();
}

inline bool criterion(const Mat2& m2, unsigned m) { return m2.c * m == m2.b; }

}  // namespace detail

/// The matrix criterion: A is m-palindromic iff m q_i = p_{i-1}.
/// Requires A in N* (nonempty, all terms >= 1). A single-term word is
/// m-palindromic exactly when m = 1 (the criterion reads m * 1 = 1).
inline bool is_m_palindrome(const Word& a, unsigned m) {
  detail::require_m(m);
  detail::require_positive_terms(a);
  return detail::criterion(word_matrix(a), m);
}

inline std::optional<MPalCertificate> m_pal_certificate(const Word& a, unsigned m) {
  detail::require_m(m);
  detail::require_positive_terms(a);
  Mat2 m2 = word_matrix(a);
  if (!detail::criterion(m2, m)) return std::nullopt;
  return MPalCertificate{m, a, std::move(m2.a), std::move(m2.c), std::move(m2.b)};
}

/// Given m [reverse(A)] = [B] (validated), BA is m-palindromic iff
/// m [a_i, ..., a_1] = [b_0, ..., b_{j-1}].
inline bool check_ba_join(const Word& a, const Word& b, unsigned m) {
  detail::require_m(m);
  detail::require_positive_terms(a);
  detail::require_positive_terms(b);
  if (a.size() < 2 || b.size() < 2)
    throw InvalidParameters("check_ba_join needs |A| >= 2 and |B| >= 2");
  const Rational lhs = evaluate(reverse(a)) * m;
  if (lhs != evaluate(b)) throw HypothesisViolated("m[reverse(A)] != [B]");
  return evaluate(drop_last(reverse(a))) * m == evaluate(drop_last(b));
}

/// A m-palindromic -> A^2 m-palindromic.
inline Word square(const Word& a, unsigned m) {
  detail::require_m(m);
  const std::optional<MPalCertificate> cert = m_pal_certificate(a, m);
  if (!cert) throw NotMPalindrome("square requires an m-palindromic word");
  Word out = concat(a, a);
  Mat2 m2 = word_matrix(a);
  if (!detail::criterion(m2 * m2, m)) throw Error("internal: squaring lemma violated");
  return out;
}

/// A, B m-palindromic -> ABA m-palindromic. Words containing zeros take the
/// extended route: all of [A], [reverse(A)], [B], [reverse(B)] must be
/// defined and positive, and m-palindromicity is the value identity
/// [X] = m [reverse(X)].
inline Word sandwich(const Word& a, const Word& b, unsigned m) {
  detail::require_m(m);
  if (a.empty() || b.empty()) throw NonStandardWord("sandwich needs nonempty words");
  const bool extended = !detail::all_terms_positive(a) || !detail::all_terms_positive(b);
  if (!extended) {
    if (!is_m_palindrome(a, m) || !is_m_palindrome(b, m))
      throw NotMPalindrome("sandwich requires m-palindromic A and B");
    Word out = concat(a, b, a);
    const Mat2 ma = word_matrix(a);
    const Mat2 mb = word_matrix(b);
    if (!detail::criterion(ma * mb * ma, m)) throw Error("internal: sandwich lemma violated");
    return out;
  }
  const auto value = [](const Word& w) -> Rational {
    try {
      return evaluate(w);
    } catch (const Error&) {
      throw UndefinedExtendedValue();
    }
  };
  const Rational va = value(a), var = value(reverse(a));
  const Rational vb = value(b), vbr = value(reverse(b));
  if (va <= 0 || var <= 0 || vb <= 0 || vbr <= 0) throw UndefinedExtendedValue();
  if (va != var * m || vb != vbr * m)
    throw NotMPalindrome("sandwich requires m-palindromic A and B");
  Word out = concat(a, b, a);
  const Rational vo = value(out), vor = value(reverse(out));
  if (vo <= 0 || vor <= 0) throw UndefinedExtendedValue();
  if (vo != vor * m) throw Error("internal: extended sandwich lemma violated");
  return out;
}

namespace detail {

// Exact incremental scan: one continuant pair per row, O(1) big-integer
// operations per term.
inline std::vector<std::size_t> scan_mpal_exact(const WordStream& s, unsigned m, std::size_t max_len) {
  std::vector<std::size_t> lengths;
  if (max_len == 0) return lengths;
  const auto terms = s.view(max_len);
  if (terms[0] < 1) return lengths;  // no prefix lies in N*
  Integer p_cur = 1, p_prev = 0;  // indices -1, -2
  Integer q_cur = 0, q_prev = 1;
  Integer tmp;
  for (std::size_t k = 0; k < max_len; ++k) {
    if (k >= 1 && terms[k] < 1) throw NonStandardWord("stream terms must be >= 1 from index 1 on");
    const long t = static_cast<long>(terms[k]);
    tmp = p_cur * t + p_prev;
    p_prev = std::move(p_cur);
    p_cur = std::move(tmp);
    tmp = q_cur * t + q_prev;
    q_prev = std::move(q_cur);
    q_cur = std::move(tmp);
    if (q_cur * m == p_prev) lengths.push_back(k + 1);
  }
  return lengths;
}

// Modular prefilter for deep scans. A length whose congruence fails for any
// prime is certainly not m-palindromic; surviving candidates are confirmed
// with exact balanced matrix products, so the result is exact.
inline constexpr std::array<std::uint64_t, 4> kScanPrimes = {
    2305843009213693951ull,   // 2^61 - 1
    9223372036854775783ull,   // 2^63 - 25
    18446744069414584321ull,  // 2^64 - 2^32 + 1
    18446744073709551557ull,  // 2^64 - 59
};

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

inline std::uint64_t addmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  const std::uint64_t s = a + b;
  return (s < a || s >= p) ? s - p : s;
}

inline std::vector<std::size_t> scan_mpal_sieved(const WordStream& s, unsigned m, std::size_t max_len) {
  std::vector<std::size_t> candidates;
  if (max_len == 0) return candidates;
  const auto terms = s.view(max_len);
  if (terms[0] < 1) return candidates;

  constexpr std::size_t np = kScanPrimes.size();
  std::array<std::uint64_t, np> pc{}, pp{}, qc{}, qp{};
  for (std::size_t j = 0; j < np; ++j) {
    pc[j] = 1;  // p_{-1}
    pp[j] = 0;  // p_{-2}
    qc[j] = 0;
    qp[j] = 1;
  }
  for (std::size_t k = 0; k < max_len; ++k) {
    if (k >= 1 && terms[k] < 1) throw NonStandardWord("stream terms must be >= 1 from index 1 on");
    const std::uint64_t t = static_cast<std::uint64_t>(terms[k]);
    bool hit = true;
    for (std::size_t j = 0; j < np; ++j) {
      const std::uint64_t P = kScanPrimes[j];
      const std::uint64_t tr = t >= P ? t % P : t;
      const std::uint64_t pn = addmod_u64(mulmod_u64(tr, pc[j], P), pp[j], P);
      pp[j] = pc[j];
      pc[j] = pn;
      const std::uint64_t qn = addmod_u64(mulmod_u64(tr, qc[j], P), qp[j], P);
      qp[j] = qc[j];
      qc[j] = qn;
      if (hit && mulmod_u64(qc[j], m % P, P) != pp[j]) hit = false;
    }
    if (hit) candidates.push_back(k + 1);
  }

  // Exact confirmation, walking candidates with cumulative prefix matrices.
  std::vector<std::size_t> lengths;
  lengths.reserve(candidates.size());
  Mat2 cum = Mat2::identity();
  std::size_t covered = 0;
  for (std::size_t len : candidates) {
    cum = cum * range_matrix([&](std::size_t i) { return Integer(static_cast<long>(terms[i])); },
                             covered, len);
    covered = len;
    if (criterion(cum, m)) lengths.push_back(len);
  }
  return lengths;
}

inline constexpr std::size_t kExactScanLimit = 1u << 16;

}  // namespace detail

/// All m-palindromic prefix lengths <= max_len of a stream, gap-free.
/// Small depths run the exact incremental scan; deep scans use the modular
/// prefilter with exact confirmation (identical output, quasi-linear time).
inline DensityReport mpal_prefixes(const WordStream& s, unsigned m, std::size_t max_len) {
  detail::require_m(m);
  DensityReport report;
  report.m = m;
  report.prefix_lengths = max_len <= detail::kExactScanLimit
                              ? detail::scan_mpal_exact(s, m, max_len)
                              : detail::scan_mpal_sieved(s, m, max_len);
  for (std::size_t k = 0; k + 1 < report.prefix_lengths.size(); ++k)
    report.ratios.push_back(make_rational(Integer(static_cast<unsigned long>(report.prefix_lengths[k])),
                                          Integer(static_cast<unsigned long>(report.prefix_lengths[k + 1]))));
  return report;
}

/// Finite-depth lower estimate of d_m: max of the last `window` ratios.
inline Rational density_estimate(const DensityReport& report, std::size_t window) {
  if (window == 0) throw InvalidParameters("window must be positive");
  if (report.ratios.size() < window)
    throw InsufficientData("density estimate needs at least window+1 m-palindromic prefixes");
  Rational best = report.ratios[report.ratios.size() - window];
  for (std::size_t k = report.ratios.size() - window + 1; k < report.ratios.size(); ++k)
    best = std::max(best, report.ratios[k]);
  return best;
}

}  // namespace mpalkit
