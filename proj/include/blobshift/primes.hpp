#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "blobshift/pattern.hpp"

namespace blobshift::primes {

inline constexpr std::int64_t kSieveCap = 100'000'000;

// Characteristic word of the primes on [0, limit].
struct PrimeWindow {
  std::int64_t limit = 0;
  std::vector<std::uint8_t> bits; // bits[i] == 1 iff i is prime
  std::vector<std::int64_t> primes;

  bool is_prime(std::int64_t i) const { return bits[static_cast<std::size_t>(i)] != 0; }
};

// Segmented, OpenMP-parallel over segments. SizeLimit above kSieveCap.
PrimeWindow sieve(std::int64_t limit);

namespace serial {
PrimeWindow sieve(std::int64_t limit);
}

// Deterministic for all 64-bit inputs.
bool is_prime_u64(std::uint64_t n);
// n >= 4 and not prime.
bool is_composite(std::int64_t n);

// Length-ℓ factors of the characteristic word starting at positions >= T,
// as sorted '0'/'1' strings. Requires 1 <= ℓ <= 64 and T + ℓ <= limit + 1.
std::vector<std::string> late_language(const PrimeWindow &w, int length, std::int64_t threshold);

// The window [from, to] of the characteristic word as a 1D pattern placed at `from`.
Pattern char_pattern(const PrimeWindow &w, std::int64_t from, std::int64_t to);

struct CRTWitness {
  int n = 0;
  std::vector<std::int64_t> injection; // φ(0..n-1)
  std::int64_t k = 0;                  // k ≡ -i mod φ(i), 0 <= k < N
  std::int64_t modulus = 0;            // N = ∏ φ(i)
  std::int64_t start = 0;              // least s ≡ k mod N with s + i >= 2φ(i)
  bool verified = false;               // s .. s+n-1 all composite
};

// Default injection: the first n primes from 5 on.
std::vector<std::int64_t> default_injection(int n);

CRTWitness crt_zero_run(int n, std::optional<std::vector<std::int64_t>> injection = std::nullopt);

// Least prime p <= limit - n with p ± 1..n all composite.
std::optional<std::int64_t> isolated_prime_search(int n, const PrimeWindow &w);

struct DirichletWitness {
  int n = 0;
  std::vector<std::int64_t> offsets;   // I = 1, -1, 2, -2, ..., n, -n
  std::vector<std::int64_t> injection; // φ over I in that order
  std::int64_t k = 0;                  // k ≡ i mod φ(i)
  std::int64_t modulus = 0;
  std::int64_t ell = 0;
  std::int64_t p = 0; // prime k + ℓN with p ± 1..n composite
};

// Default injection: the first 2n primes greater than max(2n, 3).
std::vector<std::int64_t> default_dirichlet_injection(int n);

// Scans ℓ = 0..scan_limit; NoPrimeInRange when nothing qualifies.
DirichletWitness dirichlet_isolated(int n, std::int64_t scan_limit,
                                    std::optional<std::vector<std::int64_t>> injection = std::nullopt);

// Smallest difference of consecutive primes that are both >= T.
std::int64_t gap_floor(const PrimeWindow &w, std::int64_t threshold);

} // namespace blobshift::primes
