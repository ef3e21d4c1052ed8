#include "doctest.h"
#include "support.hpp"

using namespace mpalkit;

TEST_CASE("is_m_palindrome: criterion examples and certificate") {
  const auto cert = m_pal_certificate(Word{2, 1, 1, 3, 1}, 2);
  REQUIRE(cert.has_value());
  CHECK(cert->q_i == 9);
  CHECK(cert->p_prev == 18);
  CHECK(cert->p_i == 23);
  CHECK(cert->q_i * 2 == cert->p_prev);

  CHECK(is_m_palindrome(Word{6, 3}, 2));
  CHECK(evaluate(Word{6, 3}) == evaluate(Word{3, 6}) * 2);  // 19/3 = 2 * 19/6

  for (long a = 1; a <= 9; ++a) {
    CHECK(is_m_palindrome(Word{a}, 1));
    CHECK_FALSE(is_m_palindrome(Word{a}, 2));
  }

  CHECK_THROWS_AS(is_m_palindrome(Word{2, 1}, 0), InvalidParameters);
  CHECK_THROWS_AS(is_m_palindrome(Word{2, 0, 3}, 2), NonStandardWord);
  CHECK_THROWS_AS(is_m_palindrome(Word{0, 1}, 1), NonStandardWord);
  CHECK_THROWS_AS(is_m_palindrome(Word(), 1), NonStandardWord);
}

TEST_CASE("criterion agrees with the rational-evaluation oracle") {
  test::Rng rng(31);
  for (int i = 0; i < 1500; ++i) {
    const Word a = test::random_positive_word(rng, 12, 9);
    for (unsigned m = 1; m <= 5; ++m) CHECK(is_m_palindrome(a, m) == test::mpal_by_evaluation(a, m));
  }
}

TEST_CASE("(mn, n) family is m-palindromic") {
  for (long m = 1; m <= 20; ++m)
    for (long n = 1; n <= 20; ++n) CHECK(is_m_palindrome(Word{m * n, n}, static_cast<unsigned>(m)));
}

TEST_CASE("check_ba_join: examples") {
  CHECK(check_ba_join(Word{2, 2}, Word{4, 1}, 2));
  CHECK(is_m_palindrome(Word{4, 1, 2, 2}, 2));
  CHECK(check_ba_join(Word{1, 2}, Word{2, 1}, 1));
  CHECK(check_ba_join(Word{1, 2}, Word{2, 1}, 1) == is_m_palindrome(Word{2, 1, 1, 2}, 1));
  CHECK_THROWS_AS(check_ba_join(Word{2, 1}, Word{3, 1}, 2), HypothesisViolated);
}

TEST_CASE("check_ba_join agrees with the direct criterion, exhaustively") {
  // For every small A in N* and m, the eligible B are exactly the continued
  // fraction expansions of m [reverse(A)].
  int cases = 0;
  for (std::size_t len = 2; len <= 4; ++len) {
    test::for_each_word(len, 4, [&](const Word& a) {
      for (unsigned m = 1; m <= 3; ++m) {
        const Rational target = evaluate(reverse(a)) * m;
        for (const Word& b : test::cf_expansions(target)) {
          if (b.size() < 2) continue;
          bool positive = true;
          for (const Integer& t : b)
            if (t < 1) positive = false;
          if (!positive) continue;
          ++cases;
          CHECK(check_ba_join(a, b, m) == is_m_palindrome(concat(b, a), m));
        }
      }
    });
  }
  CHECK(cases > 500);
}

TEST_CASE("square: examples and errors") {
  CHECK(square(Word{2, 1}, 2) == Word{2, 1, 2, 1});
  CHECK(is_m_palindrome(Word{2, 1, 2, 1}, 2));
  CHECK(is_m_palindrome(square(Word{6, 3}, 2), 2));
  CHECK(square(Word{1}, 1) == Word{1, 1});
  CHECK_THROWS_AS(square(Word{2, 1}, 3), NotMPalindrome);
}

TEST_CASE("sandwich: standard, extended and trivial examples") {
  const Word aba = sandwich(Word{2, 1}, Word{2, 1, 1, 3, 1}, 2);
  CHECK(aba == Word{2, 1, 2, 1, 1, 3, 1, 2, 1});
  CHECK(is_m_palindrome(aba, 2));

  const Word ext = sandwich(Word{2, 1}, Word{1, 1, 0}, 2);
  CHECK(ext == Word{2, 1, 1, 1, 0, 2, 1});
  CHECK(evaluate(ext) == evaluate(reverse(ext)) * 2);

  CHECK(sandwich(Word{1}, Word{1}, 1) == Word{1, 1, 1});

  CHECK_THROWS_AS(sandwich(Word{2, 1}, Word{3, 1}, 2), NotMPalindrome);
  CHECK_THROWS_AS(sandwich(Word{2, 1}, Word{1, 0}, 2), UndefinedExtendedValue);
}

namespace {

// Pool of certified m-palindromes grown with the construction lemmas.
std::vector<mpalkit::Word> m_pal_pool(mpalkit::test::Rng& rng, unsigned m, std::size_t count) {
  using namespace mpalkit;
  std::vector<Word> pool;
  for (long n = 1; n <= 6; ++n) pool.push_back(Word{static_cast<long>(m) * n, n});
  if (m == 1)
    for (long a = 1; a <= 4; ++a) pool.push_back(Word{a});
  std::uniform_int_distribution<int> op(0, 1);
  while (pool.size() < count) {
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    const Word& a = pool[pick(rng)];
    const Word& b = pool[pick(rng)];
    Word made = op(rng) == 0 ? square(a, m) : sandwich(a, b, m);
    if (made.size() <= 300) pool.push_back(std::move(made));
  }
  return pool;
}

}  // namespace

TEST_CASE("construction lemmas hold on random certified m-palindromes") {
  test::Rng rng(32);
  for (unsigned m = 1; m <= 4; ++m) {
    const auto pool = m_pal_pool(rng, m, 60);
    for (const Word& a : pool) {
      CHECK(is_m_palindrome(a, m));
      CHECK(test::mpal_by_evaluation(a, m));
      // Remark: m [a_i, ..., a_1] = [a_0, ..., a_{i-1}] for |A| >= 2
      if (a.size() >= 2) {
        CHECK(evaluate(drop_last(reverse(a))) * m == evaluate(drop_last(a)));
      }
    }
  }
}

TEST_CASE("mpal_prefixes: examples and gap-freeness") {
  const WordStream six_three = EventuallyPeriodicWord::parse("6,3").stream();
  const DensityReport r = mpal_prefixes(six_three, 2, 8);
  CHECK(r.prefix_lengths == std::vector<std::size_t>{2, 4, 6, 8});

  const WordStream fives = EventuallyPeriodicWord::parse("5").stream();
  CHECK(mpal_prefixes(fives, 2, 50).prefix_lengths.empty());

  const WordStream st = st_number_stream();
  const DensityReport st_report = mpal_prefixes(st, 2, 300);
  CHECK(st_report.prefix_lengths == test::brute_force_mpal_lengths(st, 2, 300));

  const WordStream g = g_stream();
  CHECK(mpal_prefixes(g, 2, 140).prefix_lengths == test::brute_force_mpal_lengths(g, 2, 140));
}

TEST_CASE("sieved scan equals the exact incremental scan") {
  const WordStream fib = fib_substituted_stream(2, 1, 2);
  const std::size_t depth = 80'000;  // above the sieve threshold
  const auto sieved = detail::scan_mpal_sieved(fib, 2, depth);
  const auto exact = detail::scan_mpal_exact(fib, 2, depth);
  CHECK(sieved == exact);
  CHECK_FALSE(sieved.empty());

  const WordStream st = st_number_stream();
  CHECK(detail::scan_mpal_sieved(st, 2, 5'000) == detail::scan_mpal_exact(st, 2, 5'000));
}

TEST_CASE("fib stream prefixes follow 2 f_{n+2} - 4") {
  const WordStream fib = fib_substituted_stream(2, 1, 2);
  const DensityReport r = mpal_prefixes(fib, 2, 1000);
  std::vector<std::size_t> expect;
  for (int n = 2;; ++n) {
    const Integer len = 2 * fib_number(n + 2) - 4;
    if (len > 1000) break;
    expect.push_back(len.get_ui());
  }
  CHECK(r.prefix_lengths == expect);

  // estimate at n = 20 sits within 1e-4 of 1/phi
  const Integer len20 = 2 * fib_number(22) - 4;
  const DensityReport r20 = mpal_prefixes(fib, 2, len20.get_ui());
  const Rational est = density_estimate(r20, 5);
  const QuadraticIrrational inv_phi(make_rational(-1, 2), make_rational(1, 2), 5);
  const QuadraticIrrational diff = est - inv_phi;
  CHECK(diff < make_rational(1, 10000));
  CHECK(diff > make_rational(-1, 10000));
}

TEST_CASE("density_estimate: windowed max and insufficient data") {
  const WordStream six_three = EventuallyPeriodicWord::parse("6,3").stream();
  const DensityReport r = mpal_prefixes(six_three, 2, 50);
  CHECK(r.ratios.front() == make_rational(1, 2));
  CHECK(density_estimate(r, 3) == make_rational(24, 25));
  CHECK(density_estimate(r, 1) == make_rational(24, 25));
  CHECK_THROWS_AS(density_estimate(r, 100), InsufficientData);
  CHECK_THROWS_AS(density_estimate(r, 0), InvalidParameters);
}
