#include "natave/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace natave {

namespace {

constexpr u64 kMaxSpan = u64{1} << 28;

u64 isqrt(u64 n) {
  u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<unsigned __int128>(a) * b % m);
}

u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1;
  a %= m;
  while (e > 0) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

std::vector<u32> primes_up_to(u32 limit) {
  std::vector<u32> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
  for (u32 i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (u64 j = static_cast<u64>(i) * i; j <= limit; j += i) composite[j] = true;
  }
  return primes;
}

SieveTable::SieveTable(u64 lo, u64 hi) : lo_(lo), hi_(hi) {
  if (lo < 1 || lo > hi) throw std::invalid_argument("SieveTable: need 1 <= lo <= hi");
  u64 span = hi - lo + 1;
  if (span > kMaxSpan) throw std::length_error("SieveTable: segment exceeds memory budget");

  small_.assign(span, 0);
  base_primes_ = primes_up_to(static_cast<u32>(isqrt(hi)));
  for (u32 p : base_primes_) {
    u64 first = std::max<u64>(static_cast<u64>(p) * p, (lo + p - 1) / p * p);
    for (u64 m = first; m <= hi; m += p) {
      u32& slot = small_[m - lo];
      if (slot == 0) slot = p;
    }
  }
}

u64 SieveTable::spf(u64 n) const {
  if (!contains(n)) throw std::out_of_range("SieveTable::spf: n outside segment");
  if (n == 1) return 1;
  u32 s = small_[n - lo_];
  return s == 0 ? n : s;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  // Miller-Rabin with a base set deterministic for all 64-bit inputs.
  u64 d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < r; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

Factorization factorize(u64 n) {
  if (n < 2) throw std::invalid_argument("factorize: need n >= 2");
  Factorization out;
  u64 m = n;
  for (u64 d = 2; d * d <= m; d = (d == 2 ? 3 : d + 2)) {
    if (m % d != 0) continue;
    u64 e = 0;
    while (m % d == 0) {
      m /= d;
      ++e;
    }
    out.push_back({d, e});
    if (m > 1 && is_prime(m)) break;
  }
  if (m > 1) out.push_back({m, 1});
  return out;
}

Factorization factorize(u64 n, const SieveTable& table) {
  if (n < 2) throw std::invalid_argument("factorize: need n >= 2");
  Factorization out;
  u64 m = n;
  while (m > 1 && table.contains(m)) {
    u64 p = table.spf(m);
    u64 e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    out.push_back({p, e});
  }
  if (m > 1) {
    Factorization rest = factorize(m);
    out.insert(out.end(), rest.begin(), rest.end());
  }
  std::sort(out.begin(), out.end(),
            [](const FactorPair& a, const FactorPair& b) { return a.prime < b.prime; });
  return out;
}

void for_each_factorization(u64 lo, u64 hi,
                            const std::function<void(u64, std::span<const FactorPair>)>& fn,
                            std::size_t segment_size) {
  if (lo < 1 || lo > hi) throw std::invalid_argument("for_each_factorization: need 1 <= lo <= hi");
  if (segment_size == 0) throw std::invalid_argument("for_each_factorization: segment_size == 0");

  std::vector<u32> base = primes_up_to(static_cast<u32>(isqrt(hi)));
  std::vector<u64> residual;
  std::vector<std::uint8_t> degree;      // base primes dividing each position
  std::vector<u32> offset;               // position -> slot in the flat arrays
  std::vector<u32> flat_prime;
  std::vector<std::uint8_t> flat_exp;

  for (u64 seg_lo = lo; seg_lo <= hi; seg_lo += segment_size) {
    u64 seg_hi = std::min(hi, seg_lo + segment_size - 1);
    std::size_t span = static_cast<std::size_t>(seg_hi - seg_lo + 1);

    // Pass 1: count base primes per position.
    degree.assign(span, 0);
    for (u32 p : base) {
      for (u64 m = (seg_lo + p - 1) / p * p; m <= seg_hi; m += p) {
        ++degree[m - seg_lo];
      }
    }
    offset.resize(span + 1);
    offset[0] = 0;
    for (std::size_t i = 0; i < span; ++i) offset[i + 1] = offset[i] + degree[i];

    // Pass 2: extract exponents into the flat arrays. Primes are visited in
    // increasing order, so each position's slice ends up sorted by prime.
    residual.resize(span);
    for (std::size_t i = 0; i < span; ++i) residual[i] = seg_lo + i;
    flat_prime.resize(offset[span]);
    flat_exp.resize(offset[span]);
    std::vector<u32> cursor(offset.begin(), offset.end() - 1);
    for (u32 p : base) {
      for (u64 m = (seg_lo + p - 1) / p * p; m <= seg_hi; m += p) {
        std::size_t i = static_cast<std::size_t>(m - seg_lo);
        std::uint8_t e = 0;
        while (residual[i] % p == 0) {
          residual[i] /= p;
          ++e;
        }
        flat_prime[cursor[i]] = p;
        flat_exp[cursor[i]] = e;
        ++cursor[i];
      }
    }

    FactorPair pairs[20];
    for (std::size_t i = 0; i < span; ++i) {
      u64 n = seg_lo + i;
      if (n == 1) {
        fn(n, {});
        continue;
      }
      std::size_t k = 0;
      for (u32 j = offset[i]; j < offset[i + 1]; ++j) {
        pairs[k++] = {flat_prime[j], flat_exp[j]};
      }
      if (residual[i] > 1) pairs[k++] = {residual[i], 1};  // prime > sqrt(hi)
      fn(n, std::span<const FactorPair>(pairs, k));
    }
  }
}

}  // namespace natave
