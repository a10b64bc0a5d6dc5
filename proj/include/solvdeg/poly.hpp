#pragma once
// Dense univariate polynomials over GF(m), coefficients constant-term first.

#include <vector>

#include "solvdeg/numth.hpp"

namespace solvdeg::poly {

using u64 = std::uint64_t;
using Poly = std::vector<u64>;

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int degree(const Poly& a) { return static_cast<int>(a.size()) - 1; }

inline Poly sub(Poly a, const Poly& b, u64 m) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + m - b[i]) % m;
  trim(a);
  return a;
}

inline Poly mul(const Poly& a, const Poly& b, u64 m) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % m;
  }
  trim(r);
  return r;
}

/// Quotient and remainder of a by nonzero b.
inline std::pair<Poly, Poly> divmod(Poly a, const Poly& b, u64 m) {
  trim(a);
  if (b.empty()) throw Error(Errc::DivisionByZero, "polynomial division by zero");
  const u64 lead_inv = numth::invmod(b.back(), m);
  if (a.size() < b.size()) return {{}, a};
  Poly q(a.size() - b.size() + 1, 0);
  for (int i = degree(a); i >= degree(b); --i) {
    const u64 c = a[i] * lead_inv % m;
    const std::size_t shift = i - degree(b);
    q[shift] = c;
    if (!c) continue;
    for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] = (a[shift + j] + (m - c) * b[j]) % m;
  }
  trim(a);
  trim(q);
  return {q, a};
}

inline Poly mod(const Poly& a, const Poly& b, u64 m) { return divmod(a, b, m).second; }

inline Poly monic(Poly a, u64 m) {
  trim(a);
  if (a.empty()) return a;
  const u64 inv = numth::invmod(a.back(), m);
  for (auto& c : a) c = c * inv % m;
  return a;
}

inline Poly gcd(Poly a, Poly b, u64 m) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = mod(a, b, m);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a, m);
}

inline Poly powmod(Poly base, u64 e, const Poly& f, u64 m) {
  Poly r{1};
  base = mod(base, f, m);
  while (e) {
    if (e & 1) r = mod(mul(r, base, m), f, m);
    base = mod(mul(base, base, m), f, m);
    e >>= 1;
  }
  return r;
}

/// x^(m^k) mod f by k successive m-th powers.
inline Poly x_pow_frobenius(unsigned k, const Poly& f, u64 m) {
  Poly r = mod(Poly{0, 1}, f, m);
  for (unsigned i = 0; i < k; ++i) r = powmod(r, m, f, m);
  return r;
}

/// Rabin's test for a monic polynomial over GF(m).
inline bool is_irreducible(const Poly& f, u64 m) {
  const int n = degree(f);
  if (n < 1) return false;
  if (n == 1) return true;
  const Poly x{0, 1};
  if (!mod(sub(x_pow_frobenius(n, f, m), x, m), f, m).empty()) return false;
  for (u64 r : numth::factorize(n).primes()) {
    const Poly h = sub(x_pow_frobenius(n / r, f, m), x, m);
    if (degree(gcd(f, h, m)) != 0) return false;
  }
  return true;
}

inline u64 eval(const Poly& a, u64 x, u64 m) {
  u64 r = 0;
  for (auto it = a.rbegin(); it != a.rend(); ++it) r = (r * x + *it) % m;
  return r;
}

namespace detail {
inline void split_roots(const Poly& g, u64 m, std::vector<u64>& out) {
  if (degree(g) <= 0) return;
  if (degree(g) == 1) {
    out.push_back((m - g[0] * numth::invmod(g[1], m) % m) % m);
    return;
  }
  if (m == 2) {
    for (u64 x = 0; x < 2; ++x)
      if (eval(g, x, m) == 0) out.push_back(x);
    return;
  }
  // Deterministic shifts a = 0, 1, 2, ... of the quadratic-residue splitting.
  for (u64 a = 0; a < m; ++a) {
    Poly h = sub(powmod(Poly{a, 1}, (m - 1) / 2, g, m), Poly{1}, m);
    Poly d = gcd(g, h, m);
    if (degree(d) > 0 && degree(d) < degree(g)) {
      split_roots(d, m, out);
      split_roots(divmod(g, d, m).first, m, out);
      return;
    }
  }
  throw Error(Errc::SplitFailure, "root splitting exhausted shifts");
}
}  // namespace detail

/// Distinct roots of f in GF(m), ascending.
inline std::vector<u64> roots(const Poly& f, u64 m) {
  Poly g = monic(f, m);
  if (degree(g) < 1) return {};
  const Poly x{0, 1};
  const Poly xm = sub(powmod(x, m, g, m), x, m);
  g = gcd(g, xm, m);
  std::vector<u64> out;
  detail::split_roots(g, m, out);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace solvdeg::poly
