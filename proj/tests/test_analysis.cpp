#include "doctest.h"
#include "support.hpp"

#include <cstdlib>

using namespace mpalkit;

TEST_CASE("enclose: quadratic oracles and monotone width") {
  const WordStream s = EventuallyPeriodicWord::parse("2,1").stream();
  const RationalInterval i10 = enclose(s, 10);
  const QuadraticIrrational sqrt3p1 = periodic_value(EventuallyPeriodicWord::parse("2,1"));
  CHECK(i10.contains(sqrt3p1));
  CHECK(i10.width() < make_rational(1, 10000));

  const WordStream a = EventuallyPeriodicWord::parse("2|1,1,2,2,3").stream();
  const QuadraticIrrational alpha = periodic_value(EventuallyPeriodicWord::parse("2|1,1,2,2,3"));
  CHECK(enclose(a, 12).contains(alpha));

  Rational prev_width;
  for (std::size_t depth = 2; depth <= 12; ++depth) {
    const RationalInterval iv = enclose(a, depth);
    CHECK(iv.contains(alpha));
    if (depth > 2) CHECK(iv.width() < prev_width);
    prev_width = iv.width();
  }

  // exact width is 1/(q_depth q_{depth-1})
  const ConvergentTable t(s.prefix(11));
  CHECK(enclose(s, 10).width() == make_rational(Integer(1), t.q(10) * t.q(9)));

  CHECK_THROWS_AS(enclose(s, 1), InvalidParameters);
}

TEST_CASE("interval soundness on random periodic streams") {
  test::Rng rng(61);
  for (int i = 0; i < 60; ++i) {
    const Word w = test::random_positive_word(rng, 6, 5);
    const EventuallyPeriodicWord e(Word(), w);
    const QuadraticIrrational x = periodic_value(e);
    const WordStream s = e.stream();
    for (std::size_t depth = 2; depth <= 10; depth += 2) CHECK(enclose(s, depth).contains(x));
  }
}

TEST_CASE("schmidt_audit: st_number and periodic families") {
  const WordStream st = st_number_stream();
  const SchmidtAudit audit = schmidt_audit(st, 2, make_rational(8, 5), 200);
  CHECK_FALSE(audit.records.empty());
  for (const auto& rec : audit.records) {
    CHECK(rec.schmidt_certified);
    CHECK(rec.lhs.hi < rec.bound1_lo);
    CHECK(rec.bound1_lo < rec.bound1_hi);
  }
  REQUIRE(audit.stable_from.has_value());
  for (const auto& rec : audit.records) {
    if (rec.index >= *audit.stable_from) {
      CHECK(rec.goal_certified);
      CHECK(rec.approx_certified);
    }
  }

  const WordStream six_three = EventuallyPeriodicWord::parse("6,3").stream();
  const SchmidtAudit audit2 = schmidt_audit(six_three, 2, make_rational(8, 5), 100);
  CHECK(audit2.records.size() == 50);  // even lengths 2..100 -> indices 1..99
  for (const auto& rec : audit2.records) CHECK(rec.schmidt_certified);
  CHECK(audit2.stable_from.has_value());

  const WordStream fives = EventuallyPeriodicWord::parse("5").stream();
  CHECK(schmidt_audit(fives, 2, make_rational(8, 5), 100).records.empty());

  CHECK_THROWS_AS(schmidt_audit(st, 2, make_rational(3, 2), 50), InvalidExponent);
  CHECK_THROWS_AS(schmidt_audit(st, 2, Rational(2), 50), InvalidExponent);
  CHECK_THROWS_AS(schmidt_audit(st, 0, make_rational(8, 5), 50), InvalidParameters);
}

TEST_CASE("initial_exponent_scan: periodic and perturbed streams") {
  const WordStream ones = EventuallyPeriodicWord::parse("1").stream();
  const auto ev = initial_exponent_scan(ones, 50, 3);
  REQUIRE_FALSE(ev.empty());
  CHECK(ev.front().period == 1);
  CHECK(ev.front().exponent == Rational(50));
  CHECK(ev.front().matched == 50);

  // st_number: V = T_1 A^2 of length 16 repeats into the second T_1 copy
  const WordStream st = st_number_stream();
  const auto st_ev = initial_exponent_scan(st, 300, 40);
  bool found = false;
  for (const auto& e : st_ev)
    if (e.period == 16) {
      found = true;
      // T_1 A^2 recurs as T_1 A^3 starts, and B itself begins with A
      CHECK(e.matched == 34);
      CHECK(e.exponent == make_rational(17, 8));
    }
  CHECK(found);

  // every evidence verifies: V^w is a prefix (re-check with power)
  const Word prefix = st.prefix(300);
  for (const auto& e : st_ev) {
    const Word v = prefix.prefix(e.period);
    CHECK(power(v, e.exponent) == prefix.prefix(e.matched));
  }
}

TEST_CASE("offset_exponent_scan: offsets unlock repetition in periodic words") {
  const WordStream s = EventuallyPeriodicWord::parse("3,7").stream();
  const auto ev = offset_exponent_scan(s, 100, 4, Rational(2));
  REQUIRE_FALSE(ev.empty());
  CHECK(ev.front().exponent > Rational(20));

  // evidence verifies by direct prefix comparison
  const Word prefix = s.prefix(100);
  for (const auto& e : ev) {
    const Word u = prefix.prefix(e.offset);
    Word v;
    {
      std::vector<Integer> terms;
      for (std::size_t i = e.offset; i < e.offset + e.period; ++i) terms.push_back(prefix[i]);
      v = Word(std::move(terms));
    }
    CHECK(concat(u, power(v, e.exponent)) == prefix.prefix(e.offset + e.matched));
    CHECK(e.offset_ratio == make_rational(Integer(static_cast<unsigned long>(e.offset)),
                                          Integer(static_cast<unsigned long>(e.period))));
  }
}

TEST_CASE("T stream: the repeated-prefix ratio bound at k = 4") {
  const WordStream t = t_stream();
  const std::size_t t3 = 40, b4 = 640, t4 = 720;
  const auto ev = initial_exponent_scan(t, t4 + 1, t3 + b4);
  bool found = false;
  for (const auto& e : ev)
    if (e.period == t3 + b4) {
      found = true;
      CHECK(e.matched == t4);
      // repeated prefix V' = second T_3 copy; |V'|/|V| <= |T_3|/|B_4| = 1/16
      const Rational excess = make_rational(Integer(static_cast<unsigned long>(e.matched - e.period)),
                                            Integer(static_cast<unsigned long>(e.period)));
      CHECK(excess <= make_rational(1, 16));
    }
  CHECK(found);
}

TEST_CASE("G stream: initial repetitions stay small, offset repetitions verify") {
  // No initial prefix power beyond w = 7/6 at this depth: the first (2,1)
  // never recurs, so V_k^w prefixes with w > 1 stay short.
  const WordStream g = g_stream();
  const auto init = initial_exponent_scan(g, 2000, 400);
  for (const auto& e : init) CHECK(e.exponent <= make_rational(7, 6));

  // After an offset the Y_k F_{k+1} Y_k structure does produce near-squares
  // (F_{k+2} begins like F_{k+1}); every reported repetition must verify by
  // direct prefix comparison.
  const auto ev = offset_exponent_scan(g, 2000, 400, Rational(1));
  const Word prefix = g.prefix(2000);
  bool found_large = false;
  for (const auto& e : ev) {
    if (e.exponent >= make_rational(3, 2)) found_large = true;
    const Word u = prefix.prefix(e.offset);
    std::vector<Integer> vt;
    for (std::size_t i = e.offset; i < e.offset + e.period; ++i) vt.push_back(prefix[i]);
    CHECK(concat(u, power(Word(std::move(vt)), e.exponent)) == prefix.prefix(e.offset + e.matched));
  }
  CHECK(found_large);
}

TEST_CASE("scans are deterministic under MPALKIT_THREADS") {
  const WordStream g = g_stream();
  const auto base = offset_exponent_scan(g, 1500, 123, Rational(1));
  setenv("MPALKIT_THREADS", "4", 1);
  const WordStream g2 = g_stream();
  const auto threaded = offset_exponent_scan(g2, 1500, 123, Rational(1));
  unsetenv("MPALKIT_THREADS");
  REQUIRE(base.size() == threaded.size());
  for (std::size_t i = 0; i < base.size(); ++i) {
    CHECK(base[i].period == threaded[i].period);
    CHECK(base[i].offset == threaded[i].offset);
    CHECK(base[i].exponent == threaded[i].exponent);
  }
}
