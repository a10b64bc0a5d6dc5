#pragma once
// Arithmetic in GF(p^n) in a fixed polynomial basis, and GF(p)-linearizations of
// semilinear maps v -> mu * v^(p^i).

#include <memory>
#include <vector>

#include "solvdeg/error.hpp"
#include "solvdeg/modmat.hpp"
#include "solvdeg/numth.hpp"
#include "solvdeg/poly.hpp"

namespace solvdeg::gf {

class GaloisField;
using FieldHandle = std::shared_ptr<const GaloisField>;

struct FieldElem {
  FieldHandle field;
  std::vector<u64> coords;  // polynomial-basis coordinates, entries in [0, p)

  bool is_zero() const {
    for (u64 c : coords)
      if (c) return false;
    return true;
  }
  bool operator==(const FieldElem& o) const { return coords == o.coords; }
  auto operator<=>(const FieldElem& o) const { return coords <=> o.coords; }
};

class GaloisField : public std::enable_shared_from_this<GaloisField> {
  struct Token {};

 public:
  GaloisField(Token, u64 p, poly::Poly modulus) : p_(p), modulus_(std::move(modulus)) {
    n_ = static_cast<unsigned>(modulus_.size() - 1);
    order_ = numth::checked_pow(p_, n_);
    units_ = numth::factorize(order_ - 1);
  }

  /// First monic irreducible of degree n in ascending order of sum c_i p^i.
  static FieldHandle make(u64 p, unsigned n) {
    if (!numth::is_prime(p)) throw Error(Errc::InvalidParams, "field characteristic must be prime");
    if (n == 0) throw Error(Errc::InvalidParams, "field degree must be positive");
    const u64 count = numth::checked_pow(p, n);
    if (count > (u64{1} << 40)) throw Error(Errc::OutOfRange, "field too large");
    for (u64 idx = 0; idx < count; ++idx) {
      poly::Poly f(n + 1, 0);
      u64 t = idx;
      for (unsigned i = 0; i < n; ++i) {
        f[i] = t % p;
        t /= p;
      }
      f[n] = 1;
      if (poly::is_irreducible(f, p)) return build(p, std::move(f));
    }
    throw Error(Errc::InvalidParams, "no irreducible polynomial found");
  }

  static FieldHandle from_modulus(u64 p, poly::Poly modulus) {
    if (!numth::is_prime(p)) throw Error(Errc::InvalidParams, "field characteristic must be prime");
    if (modulus.size() < 2 || modulus.back() != 1)
      throw Error(Errc::InvalidParams, "modulus must be monic of degree >= 1");
    for (u64 c : modulus)
      if (c >= p) throw Error(Errc::InvalidParams, "modulus coefficient out of range");
    if (!poly::is_irreducible(modulus, p)) throw Error(Errc::InvalidParams, "modulus is reducible");
    return build(p, std::move(modulus));
  }

  u64 p() const { return p_; }
  unsigned n() const { return n_; }
  u64 order() const { return order_; }
  const poly::Poly& modulus() const { return modulus_; }
  const numth::Factorization& unit_group_factorization() const { return units_; }

  bool same_as(const GaloisField& o) const { return p_ == o.p_ && modulus_ == o.modulus_; }

  FieldElem zero() const { return {self(), std::vector<u64>(n_, 0)}; }
  FieldElem one() const { return from_int(1); }
  FieldElem from_int(u64 c) const {
    FieldElem x = zero();
    x.coords[0] = c % p_;
    return x;
  }
  FieldElem from_coords(std::vector<u64> c) const {
    if (c.size() != n_) throw Error(Errc::InvalidParams, "coordinate vector has wrong length");
    for (u64 v : c)
      if (v >= p_) throw Error(Errc::InvalidParams, "coordinate out of range");
    return {self(), std::move(c)};
  }
  /// Element with coordinates given by the base-p digits of idx, c0 least significant.
  FieldElem from_index(u64 idx) const {
    FieldElem x = zero();
    for (unsigned i = 0; i < n_; ++i) {
      x.coords[i] = idx % p_;
      idx /= p_;
    }
    return x;
  }
  u64 index_of(const FieldElem& x) const {
    u64 r = 0;
    for (unsigned i = n_; i-- > 0;) r = r * p_ + x.coords[i];
    return r;
  }

  FieldElem add(const FieldElem& x, const FieldElem& y) const {
    check(x), check(y);
    FieldElem r = x;
    for (unsigned i = 0; i < n_; ++i) r.coords[i] = (x.coords[i] + y.coords[i]) % p_;
    return r;
  }
  FieldElem neg(const FieldElem& x) const {
    check(x);
    FieldElem r = x;
    for (auto& c : r.coords) c = (p_ - c) % p_;
    return r;
  }
  FieldElem sub(const FieldElem& x, const FieldElem& y) const { return add(x, neg(y)); }

  FieldElem mul(const FieldElem& x, const FieldElem& y) const {
    check(x), check(y);
    std::vector<u64> prod(2 * n_ - 1, 0);
    for (unsigned i = 0; i < n_; ++i) {
      if (!x.coords[i]) continue;
      for (unsigned j = 0; j < n_; ++j) prod[i + j] = (prod[i + j] + x.coords[i] * y.coords[j]) % p_;
    }
    for (unsigned d = 2 * n_ - 1; d-- > n_;) {
      const u64 c = prod[d];
      if (!c) continue;
      prod[d] = 0;
      for (unsigned k = 0; k < n_; ++k)
        prod[d - n_ + k] = (prod[d - n_ + k] + (p_ - c) * modulus_[k]) % p_;
    }
    prod.resize(n_);
    return {x.field, std::move(prod)};
  }

  FieldElem scale(const FieldElem& x, u64 s) const {
    check(x);
    FieldElem r = x;
    for (auto& c : r.coords) c = c * (s % p_) % p_;
    return r;
  }

  FieldElem pow(const FieldElem& x, u64 e) const {
    FieldElem r = one(), b = x;
    while (e) {
      if (e & 1) r = mul(r, b);
      b = mul(b, b);
      e >>= 1;
    }
    return r;
  }

  FieldElem inv(const FieldElem& x) const {
    check(x);
    if (x.is_zero()) throw Error(Errc::DivisionByZero, "inverse of zero");
    return pow(x, order_ - 2);
  }

  /// x^(p^i), i taken mod n.
  FieldElem frobenius(const FieldElem& x, long long i) const {
    check(x);
    const unsigned k = norm_exp(i);
    if (k == 0) return x;
    return {x.field, frob_[k].apply(x.coords)};
  }

  u64 element_order(const FieldElem& x) const {
    check(x);
    if (x.is_zero()) throw Error(Errc::InvalidParams, "order of zero");
    u64 ord = order_ - 1;
    for (const auto& [q, e] : units_.factors) {
      for (unsigned k = 0; k < e; ++k) {
        if (pow(x, ord / q) == one()) ord /= q;
        else break;
      }
    }
    return ord;
  }

  /// First element of multiplicative order p^n - 1 in index order.
  const FieldElem& primitive_element() const { return primitive_; }

  FieldElem subgroup_generator(u64 d) const {
    if (d == 0 || (order_ - 1) % d != 0)
      throw Error(Errc::InvalidParams, "subgroup order must divide p^n - 1");
    return pow(primitive_, (order_ - 1) / d);
  }

  /// Matrix of v -> mu * v^(p^i) acting on coordinate columns.
  ModMatrix as_linear_map(const FieldElem& mu, long long i) const {
    check(mu);
    if (mu.is_zero()) throw Error(Errc::InvalidParams, "semilinear multiplier must be nonzero");
    ModMatrix m(n_, n_, p_);
    for (unsigned j = 0; j < n_; ++j) {
      FieldElem e = zero();
      e.coords[j] = 1;
      const FieldElem img = mul(mu, frobenius(e, i));
      for (unsigned r = 0; r < n_; ++r) m(r, j) = img.coords[r];
    }
    return m;
  }

  unsigned norm_exp(long long i) const {
    const long long n = n_;
    return static_cast<unsigned>(((i % n) + n) % n);
  }

 private:
  static FieldHandle build(u64 p, poly::Poly f) {
    auto F = std::make_shared<GaloisField>(Token{}, p, std::move(f));
    F->init();
    return F;
  }

  void init() {
    // Frobenius matrices: column j = coords of (x^j)^(p^k).
    ModMatrix f1(n_, n_, p_);
    for (unsigned j = 0; j < n_; ++j) {
      FieldElem e = zero();
      e.coords[j] = 1;
      const FieldElem img = pow(e, p_);
      for (unsigned r = 0; r < n_; ++r) f1(r, j) = img.coords[r];
    }
    frob_.push_back(ModMatrix::identity(n_, p_));
    for (unsigned k = 1; k < n_; ++k) frob_.push_back(f1 * frob_.back());
    for (u64 idx = 1; idx < order_; ++idx) {
      FieldElem x = from_index(idx);
      if (element_order(x) == order_ - 1) {
        primitive_ = std::move(x);
        return;
      }
    }
    throw Error(Errc::InvalidParams, "no primitive element");
  }

  FieldHandle self() const { return shared_from_this(); }

  void check(const FieldElem& x) const {
    if (!x.field || !(x.field.get() == this || x.field->same_as(*this)))
      throw Error(Errc::FieldMismatch, "element belongs to a different field");
  }

  u64 p_;
  unsigned n_ = 0;
  u64 order_ = 0;
  poly::Poly modulus_;
  numth::Factorization units_;
  std::vector<ModMatrix> frob_;
  FieldElem primitive_;
};

inline FieldHandle make_field(u64 p, unsigned n) { return GaloisField::make(p, n); }

inline void require_same(const FieldElem& x, const FieldElem& y) {
  if (!x.field || !y.field || !x.field->same_as(*y.field))
    throw Error(Errc::FieldMismatch, "operands from different fields");
}

inline FieldElem operator+(const FieldElem& x, const FieldElem& y) { require_same(x, y); return x.field->add(x, y); }
inline FieldElem operator-(const FieldElem& x, const FieldElem& y) { require_same(x, y); return x.field->sub(x, y); }
inline FieldElem operator-(const FieldElem& x) { return x.field->neg(x); }
inline FieldElem operator*(const FieldElem& x, const FieldElem& y) { require_same(x, y); return x.field->mul(x, y); }
inline FieldElem inv(const FieldElem& x) { return x.field->inv(x); }
inline FieldElem frobenius(const FieldElem& x, long long i) { return x.field->frobenius(x, i); }
inline u64 element_order(const FieldElem& x) { return x.field->element_order(x); }

/// Null space of a matrix over GF(p).
inline std::vector<std::vector<u64>> kernel(const ModMatrix& m) { return m.kernel(); }

}  // namespace solvdeg::gf
