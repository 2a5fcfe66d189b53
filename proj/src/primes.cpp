#include "blobshift/primes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "blobshift/error.hpp"
#include "blobshift/limits.hpp"

namespace blobshift::primes {

namespace {

void check_limit(std::int64_t limit) {
  if (limit < 2)
    throw Error(Errc::InvalidArgument, "sieve limit must be at least 2");
  if (limit > kSieveCap)
    throw Error(Errc::SizeLimit, "sieve limit " + std::to_string(limit) + " exceeds " +
                                     std::to_string(kSieveCap));
}

std::int64_t isqrt(std::int64_t n) {
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n)
    --r;
  while ((r + 1) * (r + 1) <= n)
    ++r;
  return r;
}

void collect(PrimeWindow &w) {
  for (std::int64_t i = 2; i <= w.limit; ++i)
    if (w.bits[static_cast<std::size_t>(i)])
      w.primes.push_back(i);
}

} // namespace

PrimeWindow serial::sieve(std::int64_t limit) {
  check_limit(limit);
  PrimeWindow w;
  w.limit = limit;
  w.bits.assign(static_cast<std::size_t>(limit) + 1, 1);
  w.bits[0] = w.bits[1] = 0;
  for (std::int64_t p = 2; p * p <= limit; ++p)
    if (w.bits[static_cast<std::size_t>(p)])
      for (std::int64_t q = p * p; q <= limit; q += p)
        w.bits[static_cast<std::size_t>(q)] = 0;
  collect(w);
  return w;
}

PrimeWindow sieve(std::int64_t limit) {
  check_limit(limit);
  const std::int64_t root = isqrt(limit);
  auto base = serial::sieve(std::max<std::int64_t>(root, 2)).primes;

  PrimeWindow w;
  w.limit = limit;
  w.bits.assign(static_cast<std::size_t>(limit) + 1, 1);
  w.bits[0] = w.bits[1] = 0;
  constexpr std::int64_t kSegment = std::int64_t{1} << 18;
  const std::int64_t segments = limit / kSegment + 1;
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t s = 0; s < segments; ++s) {
    const std::int64_t lo = s * kSegment;
    const std::int64_t hi = std::min(limit, lo + kSegment - 1);
    for (auto p : base) {
      if (p * p > hi)
        break;
      std::int64_t first = std::max(p * p, (lo + p - 1) / p * p);
      for (std::int64_t q = first; q <= hi; q += p)
        w.bits[static_cast<std::size_t>(q)] = 0;
    }
  }
  collect(w);
  return w;
}

// ---------------------------------------------------------------------------
// Primality

namespace {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1;
  a %= m;
  while (e) {
    if (e & 1)
      r = mul_mod(r, a, m);
    a = mul_mod(a, a, m);
    e >>= 1;
  }
  return r;
}

} // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2)
    return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0)
      return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    auto x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1)
      continue;
    bool witness = true;
    for (int r = 1; r < s && witness; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1)
        witness = false;
    }
    if (witness)
      return false;
  }
  return true;
}

bool is_composite(std::int64_t n) { return n >= 4 && !is_prime_u64(static_cast<std::uint64_t>(n)); }

// ---------------------------------------------------------------------------
// Languages

std::vector<std::string> late_language(const PrimeWindow &w, int length, std::int64_t threshold) {
  if (length < 1 || length > 64)
    throw Error(Errc::InvalidArgument, "factor length must lie in [1, 64]");
  if (threshold < 0 || threshold + length > w.limit + 1)
    throw Error(Errc::InvalidArgument, "threshold leaves no window of that length");
  const std::uint64_t mask = length == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << length) - 1;
  std::vector<std::uint64_t> found;
  std::uint64_t key = 0;
  auto at = [&](std::int64_t i) -> std::uint64_t { return w.bits[static_cast<std::size_t>(i)]; };
  for (std::int64_t i = threshold; i < threshold + length - 1; ++i)
    key = (key << 1) | at(i);
  if (length <= 24) {
    std::vector<std::uint8_t> seen(std::size_t{1} << length, 0);
    for (std::int64_t end = threshold + length - 1; end <= w.limit; ++end) {
      key = ((key << 1) | at(end)) & mask;
      seen[key] = 1;
    }
    for (std::uint64_t k = 0; k < seen.size(); ++k)
      if (seen[k])
        found.push_back(k);
  } else {
    std::unordered_set<std::uint64_t> seen;
    for (std::int64_t end = threshold + length - 1; end <= w.limit; ++end) {
      key = ((key << 1) | at(end)) & mask;
      seen.insert(key);
    }
    found.assign(seen.begin(), seen.end());
    std::sort(found.begin(), found.end());
  }
  std::vector<std::string> out;
  out.reserve(found.size());
  for (auto k : found) {
    std::string s(static_cast<std::size_t>(length), '0');
    for (int b = 0; b < length; ++b)
      if ((k >> (length - 1 - b)) & 1)
        s[static_cast<std::size_t>(b)] = '1';
    out.push_back(std::move(s));
  }
  return out;
}

Pattern char_pattern(const PrimeWindow &w, std::int64_t from, std::int64_t to) {
  if (from < 0 || to > w.limit || from > to)
    throw Error(Errc::InvalidArgument, "window outside the sieved range");
  std::string word;
  word.reserve(static_cast<std::size_t>(to - from + 1));
  for (std::int64_t i = from; i <= to; ++i)
    word.push_back(w.is_prime(i) ? '1' : '0');
  return Pattern::from_word(word, Alphabet("01"), from);
}

// ---------------------------------------------------------------------------
// CRT runs

namespace {

void check_injection(const std::vector<std::int64_t> &inj, std::size_t want) {
  if (inj.size() != want)
    throw Error(Errc::InvalidArgument,
                "injection needs " + std::to_string(want) + " primes, got " + std::to_string(inj.size()));
  for (auto p : inj)
    if (p < 2 || !is_prime_u64(static_cast<std::uint64_t>(p)))
      throw Error(Errc::InjectionNotPrime, std::to_string(p) + " is not prime");
  auto sorted = inj;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw Error(Errc::InjectionNotDistinct, "injection repeats a prime");
}

std::int64_t mod(std::int64_t a, std::int64_t m) {
  auto r = a % m;
  return r < 0 ? r + m : r;
}

// Inverse of a modulo m for coprime a, m (extended Euclid).
std::int64_t inverse(std::int64_t a, std::int64_t m) {
  std::int64_t t = 0, nt = 1, r = m, nr = mod(a, m);
  while (nr) {
    auto q = r / nr;
    std::tie(t, nt) = std::make_pair(nt, t - q * nt);
    std::tie(r, nr) = std::make_pair(nr, r - q * nr);
  }
  return mod(t, m);
}

// Solves x ≡ residues[i] mod moduli[i] for pairwise coprime moduli.
std::pair<std::int64_t, std::int64_t> crt(const std::vector<std::int64_t> &residues,
                                          const std::vector<std::int64_t> &moduli) {
  std::int64_t x = 0, n = 1;
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    const auto m = moduli[i];
    const auto next = checked_mul(n, m);
    // x + n·t ≡ r (mod m)
    auto t = mul_mod(static_cast<std::uint64_t>(mod(residues[i] - x, m)),
                     static_cast<std::uint64_t>(inverse(n % m, m)), static_cast<std::uint64_t>(m));
    x = static_cast<std::int64_t>((static_cast<unsigned __int128>(n) * t + static_cast<std::uint64_t>(x)) %
                                  static_cast<std::uint64_t>(next));
    n = next;
  }
  return {x, n};
}

std::vector<std::int64_t> primes_above(std::int64_t floor, std::size_t count) {
  std::vector<std::int64_t> out;
  for (std::int64_t p = floor + 1; out.size() < count; ++p)
    if (is_prime_u64(static_cast<std::uint64_t>(p)))
      out.push_back(p);
  return out;
}

} // namespace

std::vector<std::int64_t> default_injection(int n) {
  if (n < 1)
    throw Error(Errc::InvalidArgument, "run length must be at least 1");
  return primes_above(4, static_cast<std::size_t>(n));
}

CRTWitness crt_zero_run(int n, std::optional<std::vector<std::int64_t>> injection) {
  if (n < 1)
    throw Error(Errc::InvalidArgument, "run length must be at least 1");
  CRTWitness w;
  w.n = n;
  w.injection = injection ? *injection : default_injection(n);
  check_injection(w.injection, static_cast<std::size_t>(n));
  std::vector<std::int64_t> residues;
  for (int i = 0; i < n; ++i)
    residues.push_back(mod(-i, w.injection[static_cast<std::size_t>(i)]));
  std::tie(w.k, w.modulus) = crt(residues, w.injection);

  std::int64_t floor = 0;
  for (int i = 0; i < n; ++i)
    floor = std::max(floor, 2 * w.injection[static_cast<std::size_t>(i)] - i);
  std::int64_t start = w.k;
  if (start < floor)
    start = checked_add(start, checked_mul((floor - start + w.modulus - 1) / w.modulus, w.modulus));
  checked_add(start, n);
  w.start = start;
  w.verified = true;
  for (int i = 0; i < n; ++i)
    w.verified = w.verified && is_composite(start + i);
  return w;
}

std::optional<std::int64_t> isolated_prime_search(int n, const PrimeWindow &w) {
  if (n < 0)
    throw Error(Errc::InvalidArgument, "n must be nonnegative");
  for (auto p : w.primes) {
    if (p > w.limit - n)
      break;
    bool ok = true;
    for (int i = 1; i <= n && ok; ++i)
      ok = p - i >= 4 && !w.is_prime(p - i) && !w.is_prime(p + i);
    if (ok)
      return p;
  }
  return std::nullopt;
}

std::vector<std::int64_t> default_dirichlet_injection(int n) {
  if (n < 1)
    throw Error(Errc::InvalidArgument, "n must be at least 1");
  return primes_above(std::max<std::int64_t>(2 * n, 3), static_cast<std::size_t>(2 * n));
}

DirichletWitness dirichlet_isolated(int n, std::int64_t scan_limit,
                                    std::optional<std::vector<std::int64_t>> injection) {
  if (n < 1)
    throw Error(Errc::InvalidArgument, "n must be at least 1");
  if (scan_limit < 0)
    throw Error(Errc::InvalidArgument, "scan limit must be nonnegative");
  DirichletWitness d;
  d.n = n;
  for (std::int64_t i = 1; i <= n; ++i) {
    d.offsets.push_back(i);
    d.offsets.push_back(-i);
  }
  d.injection = injection ? *injection : default_dirichlet_injection(n);
  check_injection(d.injection, d.offsets.size());
  for (auto p : d.injection)
    if (p <= 2 * n)
      throw Error(Errc::InvalidArgument, "injection primes must exceed 2n");
  std::vector<std::int64_t> residues;
  for (std::size_t j = 0; j < d.offsets.size(); ++j)
    residues.push_back(mod(d.offsets[j], d.injection[j]));
  std::tie(d.k, d.modulus) = crt(residues, d.injection);
  if (std::gcd(d.k, d.modulus) != 1)
    throw Error(Errc::InvalidArgument, "k shares a factor with N");

  for (std::int64_t ell = 0; ell <= scan_limit; ++ell) {
    const auto p = checked_add(d.k, checked_mul(ell, d.modulus));
    if (!is_prime_u64(static_cast<std::uint64_t>(p)))
      continue;
    bool ok = true;
    for (std::int64_t i = 1; i <= n && ok; ++i)
      ok = is_composite(p - i) && is_composite(checked_add(p, i));
    if (ok) {
      d.ell = ell;
      d.p = p;
      return d;
    }
  }
  throw Error(Errc::NoPrimeInRange, "no isolated prime k + lN for l <= " + std::to_string(scan_limit));
}

std::int64_t gap_floor(const PrimeWindow &w, std::int64_t threshold) {
  if (threshold >= w.limit)
    throw Error(Errc::InvalidArgument, "threshold must lie below the limit");
  auto it = std::lower_bound(w.primes.begin(), w.primes.end(), threshold);
  if (std::distance(it, w.primes.end()) < 2)
    throw Error(Errc::InvalidArgument, "fewer than two primes above the threshold");
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  for (auto next = std::next(it); next != w.primes.end(); ++it, ++next)
    best = std::min(best, *next - *it);
  return best;
}

} // namespace blobshift::primes
