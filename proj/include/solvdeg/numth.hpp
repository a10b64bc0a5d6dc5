#pragma once
// Integer and prime-set utilities: factorization, pi-parts, Zsigmondy primes.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "solvdeg/error.hpp"

namespace solvdeg::numth {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline constexpr u64 kMaxInput = static_cast<u64>(std::numeric_limits<std::int64_t>::max());

struct Factorization {
  u64 n = 1;
  std::vector<std::pair<u64, unsigned>> factors;  // sorted by prime

  std::vector<u64> primes() const {
    std::vector<u64> out;
    for (const auto& [q, e] : factors) out.push_back(q);
    return out;
  }
};

inline void check_range(u64 n) {
  if (n > kMaxInput) throw Error(Errc::OutOfRange, "input exceeds 2^63-1");
}

inline u64 checked_mul(u64 a, u64 b) {
  u128 r = static_cast<u128>(a) * b;
  if (r > kMaxInput) throw Error(Errc::OutOfRange, "integer overflow in product");
  return static_cast<u64>(r);
}

inline u64 checked_pow(u64 base, unsigned exp) {
  u64 r = 1;
  for (unsigned i = 0; i < exp; ++i) r = checked_mul(r, base);
  return r;
}

// true iff base^exp * factor <= cap, without overflowing
inline bool pow_at_most(u64 base, unsigned exp, u64 cap, u64 factor = 1) {
  u128 r = factor;
  if (r > cap) return false;
  for (unsigned i = 0; i < exp; ++i) {
    r *= base;
    if (r > cap) return false;
  }
  return true;
}

// decimal digits of base^exp * factor; for orders that overflow 64 bits
inline std::string decimal_pow_times(u64 base, unsigned exp, u64 factor = 1) {
  std::vector<std::uint32_t> limbs{0};  // little-endian base 1e9
  auto mul = [&](u64 f) {
    u128 carry = 0;
    for (auto& l : limbs) {
      const u128 t = static_cast<u128>(l) * f + carry;
      l = static_cast<std::uint32_t>(t % 1000000000u);
      carry = t / 1000000000u;
    }
    while (carry) {
      limbs.push_back(static_cast<std::uint32_t>(carry % 1000000000u));
      carry /= 1000000000u;
    }
  };
  limbs[0] = 1;
  for (unsigned i = 0; i < exp; ++i) mul(base);
  mul(factor);
  while (limbs.size() > 1 && limbs.back() == 0) limbs.pop_back();
  std::string out = std::to_string(limbs.back());
  for (std::size_t i = limbs.size() - 1; i-- > 0;) {
    const std::string d = std::to_string(limbs[i]);
    out += std::string(9 - d.size(), '0') + d;
  }
  return out;
}

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

inline u64 powmod(u64 b, u64 e, u64 m) {
  if (m == 1) return 0;
  u64 r = 1;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

/// Modular inverse for gcd(a, m) = 1.
inline u64 invmod(u64 a, u64 m) {
  std::int64_t t = 0, nt = 1;
  std::int64_t r = static_cast<std::int64_t>(m), nr = static_cast<std::int64_t>(a % m);
  while (nr != 0) {
    std::int64_t q = r / nr;
    std::tie(t, nt) = std::make_pair(nt, t - q * nt);
    std::tie(r, nr) = std::make_pair(nr, r - q * nr);
  }
  if (r != 1) throw Error(Errc::DivisionByZero, "element not invertible");
  if (t < 0) t += static_cast<std::int64_t>(m);
  return static_cast<u64>(t);
}

inline Factorization factorize(u64 n) {
  if (n == 0) throw Error(Errc::OutOfRange, "factorize(0)");
  check_range(n);
  Factorization f;
  f.n = n;
  u64 m = n;
  for (u64 d = 2; d <= m / d; d += (d == 2 ? 1 : 2)) {
    if (m % d != 0) continue;
    unsigned e = 0;
    while (m % d == 0) {
      m /= d;
      ++e;
    }
    f.factors.emplace_back(d, e);
  }
  if (m > 1) f.factors.emplace_back(m, 1);
  return f;
}

inline bool is_prime(u64 n) {
  check_range(n);
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (u64 d = 3; d <= n / d; d += 2)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<u64> divisors(u64 n) {
  const Factorization f = factorize(n);
  std::vector<u64> out{1};
  for (const auto& [q, e] : f.factors) {
    const std::size_t sz = out.size();
    u64 pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= q;
      for (std::size_t i = 0; i < sz; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Sorted set of primes; `complemented` flips membership (the set pi').
class PrimeSet {
 public:
  PrimeSet() = default;
  PrimeSet(std::initializer_list<u64> ps) : PrimeSet(std::vector<u64>(ps)) {}
  explicit PrimeSet(std::vector<u64> ps, bool complemented = false)
      : primes_(std::move(ps)), complemented_(complemented) {
    std::sort(primes_.begin(), primes_.end());
    primes_.erase(std::unique(primes_.begin(), primes_.end()), primes_.end());
    for (u64 q : primes_)
      if (!is_prime(q)) throw Error(Errc::InvalidParams, "PrimeSet member is not prime");
  }

  static PrimeSet of_divisors(u64 n) { return PrimeSet(factorize(n).primes()); }

  bool contains(u64 q) const {
    return std::binary_search(primes_.begin(), primes_.end(), q) != complemented_;
  }
  PrimeSet complement() const { return PrimeSet(primes_, !complemented_); }
  PrimeSet united(const PrimeSet& o) const {
    if (complemented_ || o.complemented_)
      throw Error(Errc::InvalidParams, "union of complemented prime sets");
    std::vector<u64> all = primes_;
    all.insert(all.end(), o.primes_.begin(), o.primes_.end());
    return PrimeSet(all);
  }
  const std::vector<u64>& primes() const { return primes_; }
  bool complemented() const { return complemented_; }
  bool empty() const { return primes_.empty() && !complemented_; }
  bool operator==(const PrimeSet&) const = default;

 private:
  std::vector<u64> primes_;
  bool complemented_ = false;
};

/// Largest divisor of n whose prime factors all lie in pi.
inline u64 pi_part(u64 n, const PrimeSet& pi) {
  u64 r = 1;
  for (const auto& [q, e] : factorize(n).factors)
    if (pi.contains(q))
      for (unsigned i = 0; i < e; ++i) r *= q;
  return r;
}

inline u64 lcm(u64 a, u64 b) { return a / std::gcd(a, b) * b; }

/// Primes dividing p^n - 1 but no p^a - 1 with 1 <= a < n.
inline PrimeSet zsigmondy_primes(u64 p, unsigned n) {
  if (!is_prime(p)) throw Error(Errc::InvalidParams, "p must be prime");
  if (n == 0) throw Error(Errc::InvalidParams, "n must be positive");
  const u64 pn1 = checked_pow(p, n) - 1;
  if (pn1 == 0) return {};
  std::vector<u64> out;
  for (u64 q : factorize(pn1).primes()) {
    bool primitive = true;
    for (unsigned a = 1; a < n && primitive; ++a)
      if (powmod(p, a, q) == 1) primitive = false;
    if (primitive) out.push_back(q);
  }
  return PrimeSet(out);
}

inline u64 isqrt(u64 n) {
  u64 r = static_cast<u64>(__builtin_sqrtl(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace solvdeg::numth
