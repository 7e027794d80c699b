#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace natave {

using u64 = std::uint64_t;
using u32 = std::uint32_t;

inline constexpr std::size_t kDefaultSegmentSize = std::size_t{1} << 22;

struct FactorPair {
  u64 prime;
  u64 exponent;

  friend bool operator==(const FactorPair&, const FactorPair&) = default;
};

// Prime factorization of an integer >= 2: primes strictly increasing,
// all exponents >= 1. The integer 1 has the empty factorization.
using Factorization = std::vector<FactorPair>;

// Smallest-prime-factor table over a segment [lo, hi]. Immutable after
// construction; safe for unrestricted concurrent reads.
class SieveTable {
 public:
  SieveTable(u64 lo, u64 hi);

  u64 lo() const { return lo_; }
  u64 hi() const { return hi_; }
  bool contains(u64 n) const { return n >= lo_ && n <= hi_; }

  // Smallest prime factor of n, for n in [lo, hi] and n >= 2.
  // spf(n) == n exactly when n is prime. spf(1) is the sentinel 1.
  u64 spf(u64 n) const;

  // Base primes up to sqrt(hi) used while marking the segment.
  std::span<const u32> base_primes() const { return base_primes_; }

 private:
  u64 lo_;
  u64 hi_;
  std::vector<u32> small_;  // smallest marking prime, 0 if none <= sqrt(hi)
  std::vector<u32> base_primes_;
};

// Deterministic 64-bit primality test.
bool is_prime(u64 n);

// Direct factorization (trial division + primality early exit). n >= 2.
Factorization factorize(u64 n);

// Factorization using the table for the first smallest-prime lookup when
// n lies inside the segment; falls back to the direct method otherwise.
Factorization factorize(u64 n, const SieveTable& table);

// Streams the factorization of every n in [lo, hi] in increasing order,
// one segment at a time. The span passed to the callback is only valid
// for the duration of the call. Factorization of 1 is the empty span.
void for_each_factorization(
    u64 lo, u64 hi, const std::function<void(u64, std::span<const FactorPair>)>& fn,
    std::size_t segment_size = kDefaultSegmentSize);

// Simple primes-up-to list (Eratosthenes), used for base primes and tests.
std::vector<u32> primes_up_to(u32 limit);

}  // namespace natave
