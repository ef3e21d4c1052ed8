#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mpalkit/cf.hpp"
#include "mpalkit/errors.hpp"
#include "mpalkit/mpal.hpp"
#include "mpalkit/numeric.hpp"
#include "mpalkit/quadratic.hpp"
#include "mpalkit/word.hpp"

namespace mpalkit {

namespace detail {

inline std::int64_t to_int64(const Integer& t) {
  if (!t.fits_slong_p()) throw InvalidParameters("stream terms must fit in 64 bits");
  return static_cast<std::int64_t>(t.get_si());
}

inline std::vector<std::int64_t> to_int64_terms(const Word& w) {
  std::vector<std::int64_t> out;
  out.reserve(w.size());
  for (const Integer& t : w) out.push_back(to_int64(t));
  return out;
}

}  // namespace detail

/// Perturbed-symmetry system: iterating S_{A,k}(Y) = Y A^{n_k} Y from the
/// seed X yields T_{A,k}(X), each a prefix of the next.
struct PerturbedSystem {
  Word insert;                              // A
  Word seed;                                // X
  std::function<std::int64_t(int)> exponent;  // k >= 1 -> n_k, positive, non-decreasing
};

/// |T_{A,k}(X)| via |T_k| = 2 |T_{k-1}| + n_k |A|.
inline Integer perturbed_length(const PerturbedSystem& sys, int k) {
  if (k < 0) throw InvalidParameters("level must be >= 0");
  Integer len(static_cast<unsigned long>(sys.seed.size()));
  for (int j = 1; j <= k; ++j)
    len = 2 * len + Integer(sys.exponent(j)) * Integer(static_cast<unsigned long>(sys.insert.size()));
  return len;
}

/// T_{A,k}(X) materialized.
inline Word perturbed_word(const PerturbedSystem& sys, int k) {
  if (sys.insert.empty() || sys.seed.empty()) throw EmptyWord("perturbed system needs nonempty words");
  Word t = sys.seed;
  std::int64_t prev_n = 0;
  for (int j = 1; j <= k; ++j) {
    const std::int64_t n = sys.exponent(j);
    if (n < 1 || n < prev_n) throw InvalidParameters("exponent schedule must be positive and non-decreasing");
    prev_n = n;
    t = concat(t, power(sys.insert, static_cast<unsigned long>(n)), t);
  }
  return t;
}

/// Stream of T_A(X). Growth appends whole levels; the level is recovered
/// from the memo size, so repeated prefixes are reproducible.
inline WordStream perturbed_stream(PerturbedSystem sys, std::string name = "perturbed") {
  if (sys.insert.empty() || sys.seed.empty()) throw EmptyWord("perturbed system needs nonempty words");
  const auto a = detail::to_int64_terms(sys.insert);
  const auto x = detail::to_int64_terms(sys.seed);
  const auto exponent = sys.exponent;
  return WordStream(std::move(name), [a, x, exponent](std::vector<std::int64_t>& memo) {
    if (memo.empty()) {
      memo = x;
      return;
    }
    Integer len(static_cast<unsigned long>(x.size()));
    int k = 0;
    std::int64_t prev_n = 0;
    while (len < static_cast<unsigned long>(memo.size())) {
      ++k;
      const std::int64_t n = exponent(k);
      if (n < 1 || n < prev_n)
        throw InvalidParameters("exponent schedule must be positive and non-decreasing");
      prev_n = n;
      len = 2 * len + Integer(n) * Integer(static_cast<unsigned long>(a.size()));
    }
    if (len != static_cast<unsigned long>(memo.size()))
      throw Error("internal: perturbed stream memo out of phase");
    const std::int64_t n = exponent(k + 1);
    if (n < 1 || n < prev_n)
      throw InvalidParameters("exponent schedule must be positive and non-decreasing");
    const std::size_t old = memo.size();
    memo.reserve(2 * old + static_cast<std::size_t>(n) * a.size());
    for (std::int64_t i = 0; i < n; ++i) memo.insert(memo.end(), a.begin(), a.end());
    for (std::size_t i = 0; i < old; ++i) memo.push_back(memo[i]);
  });
}

// ---------------------------------------------------------------------------
// The tau_A(B) example: A = (2,1), B = (2,1,1,3,1), n_k = k.

inline PerturbedSystem st_number_system() {
  return {Word{2, 1}, Word{2, 1, 1, 3, 1}, [](int k) { return static_cast<std::int64_t>(k); }};
}

inline WordStream st_number_stream() { return perturbed_stream(st_number_system(), "st_number"); }

inline Word st_t_word(int k) { return perturbed_word(st_number_system(), k); }

inline Integer st_t_length(int k) { return perturbed_length(st_number_system(), k); }

// ---------------------------------------------------------------------------
// The G sequence: C = (1,1,0), D = (2,1), U_k = T_{C,k}(D) with n_k = k;
// G_k = (2, S_{F_k} o ... o S_{F_1}(E)) with E = (1,1,3,1) and
// F_k = (1, 2, ..., 2, 3) carrying k middle 2s. G_k is the simplification
// of U_{k+1}.

inline Word g_f_word(int k) {
  std::vector<Integer> t;
  t.reserve(static_cast<std::size_t>(k) + 2);
  t.emplace_back(1);
  for (int i = 0; i < k; ++i) t.emplace_back(2);
  t.emplace_back(3);
  return Word(std::move(t));
}

inline Word g_u_word(int k) {
  if (k < 1) throw InvalidParameters("U_k needs k >= 1");
  return perturbed_word({Word{1, 1, 0}, Word{2, 1}, [](int j) { return static_cast<std::int64_t>(j); }}, k);
}

inline Word g_word(int k) {
  if (k < 1) throw InvalidParameters("G_k needs k >= 1");
  Word y{1, 1, 3, 1};  // E
  for (int j = 1; j <= k; ++j) y = concat(y, g_f_word(j), y);
  Word g = concat(Word{2}, y);
  if (simplify(g_u_word(k + 1)) != g) throw Error("internal: G_k is not the simplification of U_{k+1}");
  return g;
}

inline Integer g_length(int k) {
  Integer y = 4;
  for (int j = 1; j <= k; ++j) y = 2 * y + (j + 2);
  return y + 1;
}

inline WordStream g_stream() {
  return WordStream("g", [](std::vector<std::int64_t>& memo) {
    if (memo.empty()) {
      memo = {2, 1, 1, 3, 1};  // (2, E)
      return;
    }
    Integer y = 4;
    int k = 0;
    while (y + 1 < static_cast<unsigned long>(memo.size())) {
      ++k;
      y = 2 * y + (k + 2);
    }
    if (y + 1 != static_cast<unsigned long>(memo.size()))
      throw Error("internal: G stream memo out of phase");
    const std::size_t old = memo.size();
    memo.push_back(1);
    for (int i = 0; i < k + 1; ++i) memo.push_back(2);
    memo.push_back(3);
    for (std::size_t i = 1; i < old; ++i) memo.push_back(memo[i]);
  });
}

// ---------------------------------------------------------------------------
// The B_k / T example. B_k is built from the displayed product over the
// schedule l_k; the default schedule takes the minimal l_k with
// |B_k| >= 2^k |T_{k-1}|, i.e. d_k = ceil(2^k |T_{k-1}| / 4).

namespace detail {

struct BkSchedule {
  std::vector<Integer> l;      // l[j] = l_j, j >= 1
  std::vector<Integer> b_len;  // |B_j|, j >= 2
  std::vector<Integer> t_len;  // |T_j|, j >= 2
};

inline void bk_extend_default(BkSchedule& s, int k) {
  if (s.l.empty()) {
    s.l = {Integer(0), Integer(1), Integer(2)};          // 1-based; l_1 = 1, l_2 = 2
    s.b_len = {Integer(0), Integer(0), Integer(4)};      // |B_2| = 4
    s.t_len = {Integer(0), Integer(0), Integer(4)};      // |T_2| = |B_2|
  }
  for (int j = static_cast<int>(s.l.size() - 1) + 1; j <= k; ++j) {
    const Integer d = ceil_div(pow_integer(Integer(2), static_cast<unsigned long>(j)) * s.t_len[j - 1],
                               Integer(4));
    s.l.push_back(s.l[j - 1] + d);
    s.b_len.push_back(4 * d);
    s.t_len.push_back(2 * s.t_len[j - 1] + s.b_len[j]);
  }
}

inline Integer bk_term(const std::vector<Integer>& l, int k, const Integer& idx) {
  const Integer d = l[k] - l[k - 1];
  if (idx < 2 * d) {
    const Integer i = idx / 2 + 1;
    const Integer v = l[k - 1] + i;
    return idx % 2 == 0 ? Integer(2 * v) : v;
  }
  const Integer r = idx - 2 * d;
  const Integer i = r / 2;
  const Integer v = l[k] - i;
  return r % 2 == 0 ? Integer(2 * v) : v;
}

}  // namespace detail

inline std::vector<Integer> bk_default_schedule(int k) {
  if (k < 1) throw InvalidParameters("schedule needs k >= 1");
  detail::BkSchedule s;
  detail::bk_extend_default(s, k);
  return std::vector<Integer>(s.l.begin() + 1, s.l.begin() + 1 + k);
}

/// B_k for an explicit schedule l = (l_1, ..., l_k), strictly increasing.
inline Word bk_word(int k, const std::vector<Integer>& l) {
  if (k < 2) throw InvalidParameters("B_k needs k >= 2");
  if (static_cast<int>(l.size()) < k) throw InvalidParameters("schedule too short");
  if (l[0] < 1) throw ScheduleNotIncreasing("schedule must start at a positive integer");
  for (std::size_t j = 1; j < l.size(); ++j)
    if (l[j] <= l[j - 1]) throw ScheduleNotIncreasing();
  const Integer d = l[k - 1] - l[k - 2];
  const Integer blen = 4 * d;
  if (blen > 50'000'000) throw InvalidParameters("B_k too large to materialize");
  std::vector<Integer> lv(l.begin(), l.end());
  lv.insert(lv.begin(), Integer(0));  // 1-based access
  std::vector<Integer> t;
  t.reserve(blen.get_ui());
  for (Integer idx = 0; idx < blen; ++idx) t.push_back(detail::bk_term(lv, k, idx));
  return Word(std::move(t));
}

inline Word bk_word(int k) { return bk_word(k, bk_default_schedule(k)); }

inline Integer bk_length(int k) {
  detail::BkSchedule s;
  detail::bk_extend_default(s, k);
  return s.b_len[k];
}

inline Integer t_length(int k) {
  if (k < 2) throw InvalidParameters("T_k needs k >= 2");
  detail::BkSchedule s;
  detail::bk_extend_default(s, k);
  return s.t_len[k];
}

/// T_k = S_{B_k} o ... o S_{B_3}(B_2) for an explicit schedule, materialized.
inline Word t_word(int k, const std::vector<Integer>& l) {
  if (k < 3) throw InvalidParameters("T_k needs k >= 3");
  Word t = bk_word(2, l);
  for (int j = 3; j <= k; ++j) t = concat(t, bk_word(j, l), t);
  return t;
}

/// T_k with the default (minimal-growth) schedule.
inline Word t_word(int k) {
  if (k < 3) throw InvalidParameters("T_k needs k >= 3");
  detail::BkSchedule s;
  detail::bk_extend_default(s, k);
  if (s.t_len[k] > 50'000'000) throw InvalidParameters("T_k too large to materialize");
  return t_word(k, std::vector<Integer>(s.l.begin() + 1, s.l.end()));
}

/// Lazy stream of T = lim T_k; terms are resolved by descending the
/// T_k = T_{k-1} B_k T_{k-1} structure, so deep prefixes never materialize
/// a whole B_k.
inline WordStream t_stream() {
  auto state = std::make_shared<detail::BkSchedule>();
  detail::bk_extend_default(*state, 2);
  return WordStream("t", [state](std::vector<std::int64_t>& memo) {
    const std::size_t chunk = 512;
    for (std::size_t c = 0; c < chunk; ++c) {
      Integer idx(static_cast<unsigned long>(memo.size()));
      int k = 2;
      while (state->t_len[static_cast<std::size_t>(k)] <= idx) {
        ++k;
        if (static_cast<std::size_t>(k) >= state->t_len.size()) detail::bk_extend_default(*state, k);
      }
      // idx < |T_k|; descend
      Integer term;
      while (true) {
        if (k == 2) {
          static const std::int64_t b2[4] = {4, 2, 4, 2};
          term = b2[idx.get_ui()];
          break;
        }
        const Integer& tprev = state->t_len[static_cast<std::size_t>(k) - 1];
        const Integer& blen = state->b_len[static_cast<std::size_t>(k)];
        if (idx < tprev) {
          --k;
        } else if (idx < tprev + blen) {
          term = detail::bk_term(state->l, k, idx - tprev);
          break;
        } else {
          idx -= tprev + blen;
          --k;
        }
      }
      memo.push_back(detail::to_int64(term));
    }
  });
}

// ---------------------------------------------------------------------------
// Fibonacci word and the (rm, r)/(sm, s) substitution.

inline Integer fib_number(int n) {
  if (n < 1) throw InvalidParameters("Fibonacci index must be >= 1");
  Integer a = 1, b = 1;  // f_1, f_2
  for (int i = 3; i <= n; ++i) {
    Integer c = a + b;
    a = std::move(b);
    b = std::move(c);
  }
  return n == 1 ? Integer(1) : b;
}

/// S_n over the two-letter alphabet (a, b): S_0 = (a), S_1 = (a, b),
/// S_{n+1} = S_n S_{n-1}.
inline Word fibonacci_word(int n, long a = 1, long b = 2) {
  if (n < 0) throw InvalidParameters("Fibonacci prefix needs n >= 0");
  if (fib_number(n + 2) > 100'000'000) throw InvalidParameters("S_n too large to materialize");
  if (n == 0) return Word{a};
  Word prev{a};
  Word cur{a, b};
  for (int i = 2; i <= n; ++i) {
    Word next = concat(cur, prev);
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

/// S_n* = S_n without its final two terms (n >= 2).
inline Word fibonacci_truncated(int n, long a = 1, long b = 2) {
  if (n < 2) throw InvalidParameters("S_n* needs n >= 2");
  return drop_last(fibonacci_word(n, a, b), 2);
}

/// Substitute a -> (rm, r) and b -> (sm, s) in a two-letter word.
inline Word substitute_ab(const Word& symbols, long a, long b, unsigned m, long r, long s) {
  if (m == 0 || r < 1 || s < 1) throw InvalidParameters("substitution needs m, r, s >= 1");
  if (r == s) throw InvalidParameters("substitution needs r != s");
  std::vector<Integer> out;
  out.reserve(2 * symbols.size());
  const Integer rm = Integer(r) * m, sm = Integer(s) * m;
  for (const Integer& t : symbols) {
    if (t == a) {
      out.push_back(rm);
      out.emplace_back(r);
    } else if (t == b) {
      out.push_back(sm);
      out.emplace_back(s);
    } else {
      throw InvalidParameters("symbol outside the two-letter alphabet");
    }
  }
  return Word(std::move(out));
}

inline Word fib_substituted_truncated(int n, unsigned m, long r, long s) {
  return substitute_ab(fibonacci_truncated(n), 1, 2, m, r, s);
}

/// F(m, r, s): the Fibonacci word with a -> (rm, r), b -> (sm, s).
inline WordStream fib_substituted_stream(unsigned m, long r, long s) {
  if (m == 0 || r < 1 || s < 1) throw InvalidParameters("substitution needs m, r, s >= 1");
  if (r == s) throw InvalidParameters("substitution needs r != s");
  const std::int64_t rm = detail::to_int64(Integer(r) * m);
  const std::int64_t sm = detail::to_int64(Integer(s) * m);
  std::string name = "fib:m=" + std::to_string(m) + ",r=" + std::to_string(r) + ",s=" + std::to_string(s);
  return WordStream(std::move(name), [rm, r, sm, s](std::vector<std::int64_t>& memo) {
    if (memo.empty()) {
      memo = {rm, r, sm, s};  // substituted S_1
      return;
    }
    // memo holds substituted S_n (2 f_{n+2} terms); append substituted
    // S_{n-1}, a prefix of length 2 f_{n+1}.
    unsigned long fa = 1, fb = 2;  // f_{n+1}, f_{n+2}
    while (2 * fb < memo.size()) {
      const unsigned long c = fa + fb;
      fa = fb;
      fb = c;
    }
    if (2 * fb != memo.size()) throw Error("internal: fib stream memo out of phase");
    const std::size_t add = 2 * fa;
    memo.reserve(memo.size() + add);
    for (std::size_t i = 0; i < add; ++i) memo.push_back(memo[i]);
  });
}

// ---------------------------------------------------------------------------
// The quadratic 2-palindrome alpha = [2, overline(1,1,2,2,3)]: the stream,
// the extended words T_k = S_C^k(B) with C = (1,2,2,1,0), B = (2,1), and
// their simplifications (2, D^{n_k}, 1), n_1 = 1, n_i = 2 n_{i-1} + 1.

inline EventuallyPeriodicWord nonequiv_word() {
  return EventuallyPeriodicWord(Word{2}, Word{1, 1, 2, 2, 3});
}

inline WordStream nonequiv_stream() {
  WordStream s = nonequiv_word().stream();
  return WordStream("nonequiv", [inner = std::make_shared<WordStream>(std::move(s))](
                                    std::vector<std::int64_t>& memo) {
    memo.push_back(inner->term(memo.size()));
  });
}

inline Integer nonequiv_nk(int k) {
  if (k < 1) throw InvalidParameters("n_k needs k >= 1");
  return pow_integer(Integer(2), static_cast<unsigned long>(k)) - 1;
}

inline Word nonequiv_t_simplified(int k) {
  const Integer n = nonequiv_nk(k);
  Word d{1, 1, 2, 2, 3};
  return concat(Word{2}, power(d, make_rational(n, Integer(1))), Word{1});
}

inline Word nonequiv_t_word(int k) {
  if (k < 1) throw InvalidParameters("T_k needs k >= 1");
  const Word c{1, 2, 2, 1, 0};
  Word t{2, 1};
  for (int j = 1; j <= k; ++j) t = concat(t, c, t);
  if (simplify(t) != nonequiv_t_simplified(k))
    throw Error("internal: T_k does not simplify to (2, D^{n_k}, 1)");
  return t;
}

// ---------------------------------------------------------------------------
// Stream specs for the CLI: every named family plus periodic words.

struct FamilySpec {
  std::string name;
  std::string args;  // raw text after "name:"

  static FamilySpec parse(std::string_view text) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) return {std::string(text), ""};
    return {std::string(text.substr(0, colon)), std::string(text.substr(colon + 1))};
  }
};

namespace detail {

inline std::map<std::string, std::string> parse_kv(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    const std::string item = text.substr(pos, comma - pos);
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ParseError("expected key=value in stream spec: " + item);
    kv[item.substr(0, eq)] = item.substr(eq + 1);
    pos = comma + 1;
  }
  return kv;
}

}  // namespace detail

/// Builds the stream named by a spec such as "st_number", "g", "t",
/// "nonequiv", "fib:m=2,r=1,s=2" or "periodic:2|1,1,2,2,3".
inline WordStream make_stream(std::string_view spec) {
  const FamilySpec fam = FamilySpec::parse(spec);
  if (fam.name == "st_number" || fam.name == "st") return st_number_stream();
  if (fam.name == "g" || fam.name == "g_sequence") return g_stream();
  if (fam.name == "t") return t_stream();
  if (fam.name == "nonequiv") return nonequiv_stream();
  if (fam.name == "fib" || fam.name == "fibonacci") {
    auto kv = detail::parse_kv(fam.args);
    if (!kv.count("m") || !kv.count("r") || !kv.count("s"))
      throw ParseError("fib stream needs m, r and s");
    const auto num = [](const std::string& text) -> long {
      try {
        std::size_t used = 0;
        const long v = std::stol(text, &used);
        if (used != text.size()) throw ParseError("bad integer: " + text);
        return v;
      } catch (const std::exception&) {
        throw ParseError("bad integer: " + text);
      }
    };
    const long m = num(kv["m"]);
    if (m < 1) throw ParseError("fib stream needs m >= 1");
    return fib_substituted_stream(static_cast<unsigned>(m), num(kv["r"]), num(kv["s"]));
  }
  if (fam.name == "periodic") {
    const EventuallyPeriodicWord e = EventuallyPeriodicWord::parse(fam.args);
    return e.stream();
  }
  throw ParseError("unknown stream family: " + fam.name);
}

}  // namespace mpalkit
