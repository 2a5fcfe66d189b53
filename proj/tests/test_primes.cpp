#include <doctest.h>

#include <numeric>
#include <set>

#include "blobshift/error.hpp"
#include "blobshift/primes.hpp"
#include "support.hpp"

using namespace blobshift;
using namespace blobshift::primes;
using namespace testing_support;

namespace {

const PrimeWindow &million() {
  static const PrimeWindow w = sieve(1'000'000);
  return w;
}

bool naive_composite(std::int64_t n) { return n >= 4 && !naive_prime(n); }

// Trial-division table, built once.
const std::vector<bool> &naive_table() {
  static const std::vector<bool> t = [] {
    std::vector<bool> out(1'000'001);
    for (std::int64_t i = 0; i <= 1'000'000; ++i)
      out[static_cast<std::size_t>(i)] = naive_prime(i);
    return out;
  }();
  return t;
}

Errc code_of(auto &&fn) {
  try {
    fn();
  } catch (const Error &e) {
    return e.code();
  }
  FAIL("expected an error");
  return Errc::InvalidArgument;
}

} // namespace

TEST_SUITE("sieve") {
  TEST_CASE("small windows") {
    auto w = sieve(30);
    CHECK(w.primes == std::vector<std::int64_t>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29});
    CHECK_FALSE(w.is_prime(0));
    CHECK_FALSE(w.is_prime(1));
    CHECK_THROWS_AS(sieve(1), Error);
    CHECK(sieve(2).primes == std::vector<std::int64_t>{2});
  }

  TEST_CASE("prime counting up to a million") {
    const auto &w = million();
    CHECK(w.primes.size() == 78498);
    CHECK(w.bits == serial::sieve(1'000'000).bits);
    const auto &prime = naive_table();
    std::size_t mismatches = 0;
    for (std::int64_t i = 0; i <= 1'000'000; ++i)
      mismatches += w.is_prime(i) != prime[static_cast<std::size_t>(i)];
    CHECK(mismatches == 0);
  }

  TEST_CASE("parallel and serial agree on random limits") {
    for (int trial = 0; trial < 30; ++trial) {
      auto limit = uniform(0, 300000);
      CHECK(sieve(limit).primes == serial::sieve(limit).primes);
    }
  }

  TEST_CASE("limits are enforced") {
    CHECK(code_of([] { sieve(kSieveCap + 1); }) == Errc::SizeLimit);
    CHECK_THROWS_AS(sieve(-1), Error);
  }
}

TEST_SUITE("primality") {
  TEST_CASE("Miller-Rabin against trial division") {
    for (std::int64_t n = 0; n < 5000; ++n)
      CHECK(is_prime_u64(static_cast<std::uint64_t>(n)) == naive_prime(n));
    for (int trial = 0; trial < 2000; ++trial) {
      auto n = uniform(1'000'000'000, 1'000'100'000);
      CHECK(is_prime_u64(static_cast<std::uint64_t>(n)) == naive_prime(n));
    }
    CHECK(is_prime_u64(18446744073709551557ull));
    CHECK_FALSE(is_prime_u64(3215031751ull));
    CHECK_FALSE(is_prime_u64(3825123056546413051ull));
  }

  TEST_CASE("composite starts at four") {
    CHECK_FALSE(is_composite(0));
    CHECK_FALSE(is_composite(1));
    CHECK_FALSE(is_composite(3));
    CHECK(is_composite(4));
    CHECK(is_composite(9));
    CHECK_FALSE(is_composite(97));
  }
}

TEST_SUITE("late language") {
  TEST_CASE("worked windows") {
    auto w = sieve(100);
    CHECK(late_language(w, 1, 0) == std::vector<std::string>{"0", "1"});
    CHECK(late_language(w, 2, 3) == std::vector<std::string>{"00", "01", "10"});
    CHECK(late_language(w, 3, 0) ==
          std::vector<std::string>{"000", "001", "010", "011", "100", "101", "110"});
    CHECK(late_language(w, 3, 3) == std::vector<std::string>{"000", "001", "010", "100", "101"});
  }

  TEST_CASE("matches a direct scan and shrinks as the threshold grows") {
    auto w = sieve(5000);
    for (int trial = 0; trial < 40; ++trial) {
      auto len = static_cast<int>(uniform(1, 10));
      auto t = uniform(0, 4000);
      std::set<std::string> expected;
      for (std::int64_t s = t; s + len <= 5001; ++s) {
        std::string f;
        for (std::int64_t i = s; i < s + len; ++i)
          f += naive_prime(i) ? '1' : '0';
        expected.insert(f);
      }
      auto got = late_language(w, len, t);
      CHECK(got == std::vector<std::string>(expected.begin(), expected.end()));
      auto later = late_language(w, len, t + uniform(0, 500));
      CHECK(std::includes(got.begin(), got.end(), later.begin(), later.end()));
    }
  }

  TEST_CASE("bad lengths and thresholds") {
    auto w = sieve(100);
    CHECK_THROWS_AS(late_language(w, 0, 0), Error);
    CHECK_THROWS_AS(late_language(w, 65, 0), Error);
    CHECK_THROWS_AS(late_language(w, 5, 97), Error);
  }

  TEST_CASE("character pattern") {
    auto p = char_pattern(sieve(20), 10, 14);
    CHECK(p.support() == std::vector<Cell>{Cell{11, 0}, Cell{13, 0}});
  }
}

TEST_SUITE("zero runs") {
  TEST_CASE("worked witnesses") {
    auto three = crt_zero_run(3);
    CHECK(three.injection == std::vector<std::int64_t>{5, 7, 11});
    CHECK(three.k == 20);
    CHECK(three.modulus == 385);
    CHECK(three.verified);
    auto one = crt_zero_run(1);
    CHECK(one.k == 0);
    CHECK(one.start == 10);
    auto two = crt_zero_run(2);
    CHECK(two.k == 20);
    CHECK(two.modulus == 35);
  }

  TEST_CASE("default injections up to ten yield verified runs") {
    for (int n = 1; n <= 10; ++n) {
      auto c = crt_zero_run(n);
      CHECK(c.k >= 0);
      CHECK(c.k < c.modulus);
      for (int i = 0; i < n; ++i)
        CHECK((c.k + i) % c.injection[static_cast<std::size_t>(i)] == 0);
      if (c.modulus <= 10'000'000) {
        std::int64_t k = -1;
        for (std::int64_t x = 0; x < c.modulus && k < 0; ++x) {
          bool ok = true;
          for (int i = 0; i < n && ok; ++i)
            ok = (x + i) % c.injection[static_cast<std::size_t>(i)] == 0;
          if (ok)
            k = x;
        }
        CHECK(c.k == k);
      }
      CHECK(c.modulus == std::accumulate(c.injection.begin(), c.injection.end(), std::int64_t{1},
                                         std::multiplies<>()));
      CHECK(c.verified);
      CHECK((c.start - c.k) % c.modulus == 0);
      CHECK(c.start <= 2 * c.modulus + n);
      for (int i = 0; i < n; ++i)
        CHECK(naive_composite(c.start + i));
    }
  }

  TEST_CASE("custom injections") {
    auto c = crt_zero_run(2, std::vector<std::int64_t>{3, 2});
    CHECK(c.k == 3);
    CHECK(c.modulus == 6);
    CHECK(c.verified);
    CHECK(code_of([] { crt_zero_run(2, std::vector<std::int64_t>{7, 7}); }) == Errc::InjectionNotDistinct);
    CHECK(code_of([] { crt_zero_run(2, std::vector<std::int64_t>{5, 9}); }) == Errc::InjectionNotPrime);
    CHECK(code_of([] { crt_zero_run(2, std::vector<std::int64_t>{5}); }) == Errc::InvalidArgument);
    CHECK_THROWS_AS(crt_zero_run(0), Error);
  }
}

TEST_SUITE("isolated primes") {
  TEST_CASE("first isolated primes") {
    const auto &w = million();
    CHECK(isolated_prime_search(0, w) == 2);
    CHECK(isolated_prime_search(1, w) == 5);
    CHECK(isolated_prime_search(2, w) == 23);
    CHECK(isolated_prime_search(3, w) == 23);
    CHECK(isolated_prime_search(4, w) == 53);
  }

  TEST_CASE("agrees with a direct search") {
    const auto &w = million();
    const auto &prime = naive_table();
    for (int n = 0; n <= 12; ++n) {
      std::optional<std::int64_t> expected;
      for (std::int64_t p = 2; p <= 1'000'000 - n && !expected; ++p) {
        if (!prime[static_cast<std::size_t>(p)])
          continue;
        bool ok = true;
        for (int i = 1; i <= n && ok; ++i)
          ok = p - i >= 4 && !prime[static_cast<std::size_t>(p - i)] && !prime[static_cast<std::size_t>(p + i)];
        if (ok)
          expected = p;
      }
      CHECK(isolated_prime_search(n, w) == expected);
    }
    CHECK_FALSE(isolated_prime_search(5, sieve(50)).has_value());
  }
}

TEST_SUITE("dirichlet") {
  TEST_CASE("worked witnesses") {
    auto one = dirichlet_isolated(1, 1000);
    CHECK(one.offsets == std::vector<std::int64_t>{1, -1});
    CHECK(one.injection == std::vector<std::int64_t>{5, 7});
    CHECK(one.k == 6);
    CHECK(one.modulus == 35);
    CHECK(one.ell == 1);
    CHECK(one.p == 41);
    auto two = dirichlet_isolated(2, 1000);
    CHECK(two.p == 64231);
  }

  TEST_CASE("witnesses replay") {
    for (int n = 1; n <= 4; ++n) {
      auto d = dirichlet_isolated(n, 100000);
      CHECK(std::gcd(d.k, d.modulus) == 1);
      for (std::size_t j = 0; j < d.offsets.size(); ++j)
        CHECK(((d.k - d.offsets[j]) % d.injection[j] + d.injection[j]) % d.injection[j] == 0);
      CHECK(d.p == d.k + d.ell * d.modulus);
      CHECK(is_prime_u64(static_cast<std::uint64_t>(d.p)));
      for (std::int64_t i = 1; i <= n; ++i) {
        CHECK(is_composite(d.p - i));
        CHECK(is_composite(d.p + i));
      }
      for (std::int64_t ell = 0; ell < d.ell; ++ell) {
        auto q = d.k + ell * d.modulus;
        bool ok = is_prime_u64(static_cast<std::uint64_t>(q));
        for (std::int64_t i = 1; i <= n && ok; ++i)
          ok = is_composite(q - i) && is_composite(q + i);
        CHECK_FALSE(ok);
      }
    }
  }

  TEST_CASE("injection errors") {
    CHECK(code_of([] { dirichlet_isolated(1, 10, std::vector<std::int64_t>{5, 5}); }) ==
          Errc::InjectionNotDistinct);
    CHECK(code_of([] { dirichlet_isolated(1, 10, std::vector<std::int64_t>{5, 8}); }) ==
          Errc::InjectionNotPrime);
    CHECK(code_of([] { dirichlet_isolated(2, 10, std::vector<std::int64_t>{3, 5, 7, 11}); }) ==
          Errc::InvalidArgument);
    CHECK(code_of([] { dirichlet_isolated(1, 0); }) == Errc::NoPrimeInRange);
  }
}

TEST_SUITE("gaps") {
  TEST_CASE("worked thresholds") {
    const auto &w = million();
    CHECK(gap_floor(w, 3) == 2);
    CHECK(gap_floor(w, 2) == 1);
    CHECK(gap_floor(w, 900'000) == 2);
    CHECK_THROWS_AS(gap_floor(w, 1'000'000), Error);
  }

  TEST_CASE("matches consecutive differences") {
    auto w = sieve(20000);
    for (int trial = 0; trial < 40; ++trial) {
      auto t = uniform(0, 19000);
      std::int64_t best = -1, prev = -1;
      for (std::int64_t i = t; i <= 20000; ++i)
        if (naive_prime(i)) {
          if (prev >= 0 && (best < 0 || i - prev < best))
            best = i - prev;
          prev = i;
        }
      CHECK(gap_floor(w, t) == best);
    }
  }
}
