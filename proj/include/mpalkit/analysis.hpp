#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "mpalkit/cf.hpp"
#include "mpalkit/errors.hpp"
#include "mpalkit/mpal.hpp"
#include "mpalkit/numeric.hpp"
#include "mpalkit/quadratic.hpp"
#include "mpalkit/word.hpp"

namespace mpalkit {

/// Closed rational interval; consecutive convergents bracket the stream
/// value, so these enclosures are rigorous.
struct RationalInterval {
  Rational lo, hi;

  Rational width() const { return hi - lo; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  bool contains(const QuadraticIrrational& x) const {
    return cmp(x, lo) >= 0 && cmp(x, hi) <= 0;
  }
};

namespace detail {

inline void require_scan_terms(std::span<const std::int64_t> terms) {
  for (std::size_t i = 1; i < terms.size(); ++i)
    if (terms[i] < 1) throw NonStandardWord("stream terms must be >= 1 from index 1 on");
}

inline unsigned thread_budget() {
  if (const char* env = std::getenv("MPALKIT_THREADS")) {
    const long n = std::atol(env);
    if (n >= 1) return static_cast<unsigned>(n);
  }
  return 1;
}

// floor(x^(1/b))
inline Integer root_lower(const Integer& x, unsigned long b) {
  Integer out;
  mpz_root(out.get_mpz_t(), x.get_mpz_t(), b);
  return out;
}

}  // namespace detail

/// Interval [p_{depth-1}/q_{depth-1}, p_depth/q_depth] (ordered) around the
/// stream value; its exact width is 1/(q_depth q_{depth-1}).
inline RationalInterval enclose(const WordStream& s, std::size_t depth) {
  if (depth < 2) throw InvalidParameters("enclosure needs depth >= 2");
  const auto terms = s.view(depth + 1);
  detail::require_scan_terms(terms);
  Integer p_cur = 1, p_prev = 0, q_cur = 0, q_prev = 1, tmp;
  Rational a, b;
  for (std::size_t k = 0; k <= depth; ++k) {
    const long t = static_cast<long>(terms[k]);
    tmp = p_cur * t + p_prev;
    p_prev = std::move(p_cur);
    p_cur = std::move(tmp);
    tmp = q_cur * t + q_prev;
    q_prev = std::move(q_cur);
    q_cur = std::move(tmp);
  }
  a = make_rational(p_prev, q_prev);  // index depth-1
  b = make_rational(p_cur, q_cur);    // index depth
  return a <= b ? RationalInterval{a, b} : RationalInterval{b, a};
}

/// One certified m-palindromic index of the Schmidt chain. lhs encloses
/// |alpha^2 - m p_i / q_{i-1}|; the certificate compares its upper endpoint
/// against the sound lower endpoint of (1 + 3 alpha)/(q_i q_{i-1}) and
/// against 1/q_{i-1}^w exactly.
struct SchmidtRecord {
  std::size_t index = 0;  // i, 0-based position of the prefix's last term
  Integer p_i, q_i, p_prev, q_prev;
  RationalInterval lhs;
  Rational bound1_lo, bound1_hi;
  bool schmidt_certified = false;
  bool goal_certified = false;
  bool approx_certified = false;
};

struct SchmidtAudit {
  unsigned m = 1;
  Rational w;
  std::size_t depth = 0;
  RationalInterval alpha;
  std::vector<SchmidtRecord> records;
  /// Least audited index from which every later record certifies the goal
  /// inequality; empty when the last record fails it.
  std::optional<std::size_t> stable_from;
};

namespace detail {

// x < q^{-w} with w = a/b > 0, exactly: num(x)^b q^a < den(x)^b.
inline bool below_inverse_power(const Rational& x, const Integer& q, const Rational& w) {
  if (x < 0) throw InvalidParameters("below_inverse_power needs x >= 0");
  if (x == 0) return true;
  const unsigned long b = static_cast<unsigned long>(w.get_den().get_ui());
  const unsigned long a = static_cast<unsigned long>(w.get_num().get_ui());
  return pow_integer(x.get_num(), b) * pow_integer(q, a) < pow_integer(x.get_den(), b);
}

inline RationalInterval abs_interval(const Rational& lo, const Rational& hi) {
  if (lo >= 0) return {lo, hi};
  if (hi <= 0) return {-hi, -lo};
  return {Rational(0), std::max(hi, Rational(-lo))};
}

}  // namespace detail

/// Audits every m-palindromic prefix index i in [1, depth] of the stream.
/// alpha is enclosed once by the convergents at indices depth and depth+1;
/// all arithmetic is exact, so certificates are one-sided and sound.
inline SchmidtAudit schmidt_audit(const WordStream& s, unsigned m, const Rational& w,
                                  std::size_t depth) {
  if (m == 0) throw InvalidParameters("m must be a positive integer");
  if (!(w > make_rational(3, 2) && w < Rational(2)))
    throw InvalidExponent("w must lie strictly between 3/2 and 2");
  if (!w.get_num().fits_ulong_p() || !w.get_den().fits_ulong_p())
    throw InvalidExponent("w numerator and denominator must fit in a machine word");
  if (depth < 2) throw InvalidParameters("audit needs depth >= 2");

  SchmidtAudit audit;
  audit.m = m;
  audit.w = w;
  audit.depth = depth;
  audit.alpha = enclose(s, depth + 1);

  const DensityReport report = mpal_prefixes(s, m, depth + 1);
  const auto terms = s.view(depth + 1);
  std::vector<Integer> p(depth + 2), q(depth + 2);
  p[0] = 1;  // index -1 at slot 0
  q[0] = 0;
  Integer p_m2 = 0, q_m2 = 1;
  for (std::size_t k = 0; k <= depth; ++k) {
    p[k + 1] = terms[k] * p[k] + p_m2;
    q[k + 1] = terms[k] * q[k] + q_m2;
    p_m2 = p[k];
    q_m2 = q[k];
  }

  const Rational& lo = audit.alpha.lo;
  const Rational& hi = audit.alpha.hi;
  const Rational lo2 = lo * lo, hi2 = hi * hi;

  for (std::size_t len : report.prefix_lengths) {
    const std::size_t i = len - 1;
    if (i < 1 || i > depth) continue;
    SchmidtRecord rec;
    rec.index = i;
    rec.p_i = p[i + 1];
    rec.q_i = q[i + 1];
    rec.p_prev = p[i];
    rec.q_prev = q[i];
    const Rational target = make_rational(rec.p_i * m, rec.q_prev);
    rec.lhs = detail::abs_interval(lo2 - target, hi2 - target);
    const Rational denom = make_rational(Integer(1), rec.q_i * rec.q_prev);
    rec.bound1_lo = (1 + 3 * lo) * denom;
    rec.bound1_hi = (1 + 3 * hi) * denom;
    rec.schmidt_certified = rec.lhs.hi < rec.bound1_lo;
    rec.goal_certified = detail::below_inverse_power(rec.lhs.hi, rec.q_prev, w);
    const Rational conv_prev = make_rational(rec.p_prev, rec.q_prev);
    const Rational err = std::max(abs(lo - conv_prev), abs(hi - conv_prev));
    rec.approx_certified = detail::below_inverse_power(err, rec.q_prev, w);
    audit.records.push_back(std::move(rec));
  }

  std::size_t good = 0;
  for (auto it = audit.records.rbegin(); it != audit.records.rend() && it->goal_certified; ++it)
    ++good;
  if (good > 0) audit.stable_from = audit.records[audit.records.size() - good].index;
  return audit;
}

/// A repetition U V^w observed as a prefix of the scanned word. `matched`
/// is |U V^w|; the exponent has granularity 1/|V| per the fractional-power
/// definition.
struct RepetitionEvidence {
  std::size_t period = 0;  // |V|
  std::size_t offset = 0;  // |U|, zero for initial scans
  Rational exponent;       // w
  Rational offset_ratio;   // |U|/|V|
  std::size_t matched = 0;
};

namespace detail {

// match[j] = number of consecutive positions with T[j + t] == T[j + p + t].
inline void fill_period_matches(std::span<const std::int64_t> t, std::size_t p,
                                std::vector<std::size_t>& match) {
  const std::size_t n = t.size();
  match.assign(n, 0);
  if (p >= n) return;
  for (std::size_t j = n - p; j-- > 0;)
    match[j] = t[j] == t[j + p] ? (j + 1 + p < n ? match[j + 1] + 1 : 1) : 0;
}

inline void sort_evidence(std::vector<RepetitionEvidence>& out) {
  std::sort(out.begin(), out.end(), [](const RepetitionEvidence& a, const RepetitionEvidence& b) {
    if (a.exponent != b.exponent) return a.exponent > b.exponent;
    if (a.period != b.period) return a.period < b.period;
    return a.offset < b.offset;
  });
}

template <typename PerPeriod>
void scan_periods(std::size_t max_period, std::size_t depth, const PerPeriod& fn) {
  const unsigned threads = std::min<unsigned>(thread_budget(),
                                              static_cast<unsigned>(std::max<std::size_t>(max_period, 1)));
  if (threads <= 1) {
    std::vector<std::size_t> match;
    for (std::size_t p = 1; p <= max_period && p <= depth; ++p) fn(p, match);
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t]() {
      std::vector<std::size_t> match;
      for (std::size_t p = 1 + t; p <= max_period && p <= depth; p += threads) fn(p, match);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace detail

/// For each period length p <= max_period, the maximal exponent w with
/// V^w a prefix of the depth-prefix, V = first p terms. Sorted by w
/// descending.
inline std::vector<RepetitionEvidence> initial_exponent_scan(const WordStream& s, std::size_t depth,
                                                             std::size_t max_period) {
  if (depth == 0 || max_period == 0) throw InvalidParameters("depth and max_period must be positive");
  const auto terms = s.view(depth);
  detail::require_scan_terms(terms);
  std::vector<RepetitionEvidence> out(std::min(max_period, depth));
  detail::scan_periods(max_period, depth, [&](std::size_t p, std::vector<std::size_t>& match) {
    detail::fill_period_matches(terms, p, match);
    const std::size_t matched = std::min(p + match[0], depth);
    out[p - 1] = RepetitionEvidence{
        p, 0, make_rational(Integer(static_cast<unsigned long>(matched)), Integer(static_cast<unsigned long>(p))),
        Rational(0), matched};
  });
  detail::sort_evidence(out);
  return out;
}

/// Same scan with nonempty offsets U, |U|/|V| <= max_offset_ratio; for each
/// period the best offset is reported. Sorted by w descending.
inline std::vector<RepetitionEvidence> offset_exponent_scan(const WordStream& s, std::size_t depth,
                                                            std::size_t max_period,
                                                            const Rational& max_offset_ratio) {
  if (depth == 0 || max_period == 0) throw InvalidParameters("depth and max_period must be positive");
  if (max_offset_ratio < 0) throw InvalidParameters("offset ratio must be >= 0");
  const auto terms = s.view(depth);
  detail::require_scan_terms(terms);
  std::vector<std::optional<RepetitionEvidence>> best(std::min(max_period, depth));
  detail::scan_periods(max_period, depth, [&](std::size_t p, std::vector<std::size_t>& match) {
    detail::fill_period_matches(terms, p, match);
    const Integer max_u_int =
        floor_div(max_offset_ratio.get_num() * Integer(static_cast<unsigned long>(p)), max_offset_ratio.get_den());
    std::size_t max_u = max_u_int.fits_ulong_p() ? max_u_int.get_ui() : depth;
    max_u = std::min(max_u, depth - std::min(p, depth));
    std::optional<RepetitionEvidence> top;
    for (std::size_t u = 1; u <= max_u; ++u) {
      const std::size_t matched = std::min(p + match[u], depth - u);
      if (!top || matched > top->matched) {
        top = RepetitionEvidence{
            p, u,
            make_rational(Integer(static_cast<unsigned long>(matched)), Integer(static_cast<unsigned long>(p))),
            make_rational(Integer(static_cast<unsigned long>(u)), Integer(static_cast<unsigned long>(p))),
            matched};
      }
    }
    best[p - 1] = top;
  });
  std::vector<RepetitionEvidence> out;
  for (auto& e : best)
    if (e) out.push_back(std::move(*e));
  detail::sort_evidence(out);
  return out;
}

}  // namespace mpalkit
