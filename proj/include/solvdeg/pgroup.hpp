#pragma once
// Class-two p-groups in coordinates: an element is (x, z) where x lives in
// P/P' = GF(p)^xdim and z in P' = Z(P) = GF(p)^zdim, with product
//   (x, z)(x', z') = (x + x', z + z' + beta(x, x'))
// for a bilinear cocycle beta. The Heisenberg group over GF(p^q), the
// extraspecial group built from V and its dual, and central products of the
// latter all have this shape.

#include <optional>
#include <string>
#include <vector>

#include "solvdeg/error.hpp"
#include "solvdeg/gf.hpp"
#include "solvdeg/group.hpp"
#include "solvdeg/modmat.hpp"

namespace solvdeg::pgrp {

using grp::Elem;
using Vec = std::vector<u64>;

enum class Kind { heisenberg, extraspecial_dual, central_product, elementary_abelian };

inline const char* kind_name(Kind k) {
  switch (k) {
    case Kind::heisenberg: return "heisenberg";
    case Kind::extraspecial_dual: return "extraspecial_dual";
    case Kind::central_product: return "central_product";
    case Kind::elementary_abelian: return "elementary_abelian";
  }
  return "?";
}

struct PGroupProfile {
  u64 p = 0;
  unsigned order_exponent = 0;
  unsigned alpha = 0;
  Kind kind = Kind::heisenberg;
};

struct VzCertificate {
  bool holds = false;
  unsigned alpha = 0;
  std::string method;
};

class PGroup {
 public:
  /// Upper unitriangular 3x3 matrices over F; x = (a, b), z = c.
  static PGroup heisenberg(gf::FieldHandle F) {
    if (F->p() == 2) throw Error(Errc::InvalidParams, "Heisenberg construction needs odd p");
    PGroup P;
    P.kind_ = Kind::heisenberg;
    P.p_ = F->p();
    P.field_ = F;
    P.xdim_ = 2 * F->n();
    P.zdim_ = F->n();
    P.init_tensor();
    return P;
  }

  /// (a, alpha, z) with a in V = GF(p)^m, alpha in the dual, and
  /// (a1, al1, z1)(a2, al2, z2) = (a1 + a2, al1 + al2, z1 + z2 + al2(a1)).
  static PGroup extraspecial_dual(u64 p, unsigned m) {
    if (!numth::is_prime(p) || p == 2) throw Error(Errc::InvalidParams, "extraspecial_dual needs an odd prime");
    if (m == 0) throw Error(Errc::InvalidParams, "dimension must be positive");
    PGroup P;
    P.kind_ = Kind::extraspecial_dual;
    P.p_ = p;
    P.blocks_ = {m};
    P.weights_ = {1};
    P.xdim_ = 2 * m;
    P.zdim_ = 1;
    P.init_tensor();
    return P;
  }

  /// Central product identifying Z(P2) with Z(P1) via z2 -> phi * z2. Elements are
  /// stored with the P2 center folded into the shared center coordinate, so
  /// x = (v1, v2, al1, al2).
  static PGroup central_product(const PGroup& P1, const PGroup& P2, u64 phi = 1) {
    auto pairing_kind = [](Kind k) { return k == Kind::extraspecial_dual || k == Kind::central_product; };
    if (!pairing_kind(P1.kind_) || !pairing_kind(P2.kind_) || P1.p_ != P2.p_ || P1.zdim_ != 1 || P2.zdim_ != 1)
      throw Error(Errc::CenterMismatch, "central product needs two factors with center Z_p");
    if (phi % P1.p_ == 0) throw Error(Errc::CenterMismatch, "center identification must be an isomorphism");
    PGroup P;
    P.kind_ = Kind::central_product;
    P.p_ = P1.p_;
    P.blocks_ = P1.blocks_;
    P.weights_ = P1.weights_;
    for (std::size_t i = 0; i < P2.blocks_.size(); ++i) {
      P.blocks_.push_back(P2.blocks_[i]);
      P.weights_.push_back(P2.weights_[i] * (phi % P.p_) % P.p_);
    }
    P.factor_dims_ = {P1.vdim(), P2.vdim()};
    P.xdim_ = P1.xdim_ + P2.xdim_;
    P.zdim_ = 1;
    P.init_tensor();
    return P;
  }

  static PGroup elementary_abelian(u64 p, unsigned d) {
    PGroup P;
    P.kind_ = Kind::elementary_abelian;
    P.p_ = p;
    P.xdim_ = d;
    P.zdim_ = 0;
    P.init_tensor();
    return P;
  }

  Kind kind() const { return kind_; }
  u64 p() const { return p_; }
  unsigned xdim() const { return xdim_; }
  unsigned zdim() const { return zdim_; }
  unsigned dim() const { return xdim_ + zdim_; }
  const gf::FieldHandle& field() const { return field_; }
  /// Dimension of V for the pairing kinds.
  unsigned vdim() const { return xdim_ / 2; }
  const std::vector<unsigned>& blocks() const { return blocks_; }
  const std::vector<u64>& block_weights() const { return weights_; }
  const std::vector<unsigned>& factor_dims() const { return factor_dims_; }
  u64 order() const { return numth::checked_pow(p_, dim()); }

  /// Pairing weight for coordinate i of V.
  u64 weight(unsigned i) const {
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      if (i < blocks_[b]) return weights_[b];
      i -= blocks_[b];
    }
    return 1;
  }

  Vec beta(const Vec& x, const Vec& y) const {
    Vec z(zdim_, 0);
    switch (kind_) {
      case Kind::heisenberg: {
        const unsigned q = field_->n();
        const gf::FieldElem a = field_->from_coords(Vec(x.begin(), x.begin() + q));
        const gf::FieldElem b = field_->from_coords(Vec(y.begin() + q, y.end()));
        z = field_->mul(a, b).coords;
        break;
      }
      case Kind::extraspecial_dual:
      case Kind::central_product: {
        const unsigned m = vdim();
        u64 s = 0;
        for (unsigned i = 0; i < m; ++i) s = (s + weight(i) * (y[m + i] * x[i] % p_)) % p_;
        z[0] = s;
        break;
      }
      case Kind::elementary_abelian: break;
    }
    return z;
  }

  Elem encode(const Vec& x, const Vec& z) const {
    if (x.size() != xdim_ || z.size() != zdim_) throw Error(Errc::KindMismatch, "coordinate length mismatch");
    Elem e;
    e.reserve(dim());
    for (u64 c : x) e.push_back(static_cast<std::uint32_t>(c % p_));
    for (u64 c : z) e.push_back(static_cast<std::uint32_t>(c % p_));
    return e;
  }
  std::pair<Vec, Vec> split(const Elem& e) const {
    if (e.size() < dim()) throw Error(Errc::KindMismatch, "element too short");
    return {Vec(e.begin(), e.begin() + xdim_), Vec(e.begin() + xdim_, e.begin() + dim())};
  }

  Elem identity() const { return Elem(dim(), 0); }

  Elem mul(const Elem& a, const Elem& b) const {
    auto [x, z] = split(a);
    auto [y, w] = split(b);
    const Vec c = beta(x, y);
    Elem r(dim());
    for (unsigned i = 0; i < xdim_; ++i) r[i] = static_cast<std::uint32_t>((x[i] + y[i]) % p_);
    for (unsigned t = 0; t < zdim_; ++t) r[xdim_ + t] = static_cast<std::uint32_t>((z[t] + w[t] + c[t]) % p_);
    return r;
  }

  /// (x, z)^-1 = (-x, -z + beta(x, x)).
  Elem inv(const Elem& a) const {
    auto [x, z] = split(a);
    const Vec c = beta(x, x);
    Elem r(dim());
    for (unsigned i = 0; i < xdim_; ++i) r[i] = static_cast<std::uint32_t>((p_ - x[i]) % p_);
    for (unsigned t = 0; t < zdim_; ++t) r[xdim_ + t] = static_cast<std::uint32_t>((2 * p_ - z[t] + c[t]) % p_);
    return r;
  }

  Elem commutator(const Elem& a, const Elem& b) const { return mul(mul(inv(a), inv(b)), mul(a, b)); }

  Elem power(const Elem& a, u64 k) const {
    Elem r = identity(), b = a;
    while (k) {
      if (k & 1) r = mul(r, b);
      b = mul(b, b);
      k >>= 1;
    }
    return r;
  }

  grp::GroupOps ops() const {
    const PGroup self = *this;
    return {identity(), [self](const Elem& a, const Elem& b) { return self.mul(a, b); },
            [self](const Elem& a) { return self.inv(a); }};
  }

  /// Basis of P/P' lifted with zero center, plus center basis vectors when the
  /// commutators do not already generate the center.
  std::vector<Elem> generators() const {
    std::vector<Elem> g;
    for (unsigned i = 0; i < xdim_; ++i) {
      Vec x(xdim_, 0);
      x[i] = 1;
      g.push_back(encode(x, Vec(zdim_, 0)));
    }
    if (commutator_image_rank() < zdim_)
      for (unsigned t = 0; t < zdim_; ++t) {
        Vec z(zdim_, 0);
        z[t] = 1;
        g.push_back(encode(Vec(xdim_, 0), z));
      }
    return g;
  }

  grp::Group enumerate(std::size_t cap = grp::kDefaultOrderCap) const {
    if (!numth::pow_at_most(p_, dim(), cap))
      throw Error(Errc::ClosureLimitExceeded, "|P| exceeds enumeration cap");
    return grp::Group::closure(ops(), generators(), cap);
  }

  /// Commutator form: B(u, u')_t = sum_ij u_i u'_j T[t][i][j].
  u64 tensor(unsigned t, unsigned i, unsigned j) const { return tensor_[(t * xdim_ + i) * xdim_ + j]; }

  Vec form(const Vec& u, const Vec& v) const {
    Vec r(zdim_, 0);
    for (unsigned t = 0; t < zdim_; ++t)
      for (unsigned i = 0; i < xdim_; ++i) {
        if (!u[i]) continue;
        for (unsigned j = 0; j < xdim_; ++j) r[t] = (r[t] + u[i] * v[j] % p_ * tensor(t, i, j)) % p_;
      }
    return r;
  }

  /// Matrix of u' -> B(u, u').
  ModMatrix form_map(const Vec& u) const {
    ModMatrix m(zdim_, xdim_, p_);
    for (unsigned t = 0; t < zdim_; ++t)
      for (unsigned j = 0; j < xdim_; ++j) {
        u64 s = 0;
        for (unsigned i = 0; i < xdim_; ++i) s = (s + u[i] * tensor(t, i, j)) % p_;
        m(t, j) = s;
      }
    return m;
  }

  std::size_t commutator_image_rank() const {
    if (zdim_ == 0) return 0;
    ModMatrix m(xdim_ * xdim_, zdim_, p_);
    for (unsigned i = 0; i < xdim_; ++i)
      for (unsigned j = 0; j < xdim_; ++j)
        for (unsigned t = 0; t < zdim_; ++t) m(i * xdim_ + j, t) = tensor(t, i, j);
    return m.rank();
  }

  /// {u : B(u, .) = 0}, the image of Z(P) in P/P'.
  std::vector<Vec> radical() const {
    if (zdim_ == 0) {
      std::vector<Vec> all;
      for (unsigned i = 0; i < xdim_; ++i) {
        Vec e(xdim_, 0);
        e[i] = 1;
        all.push_back(e);
      }
      return all;
    }
    ModMatrix m(zdim_ * xdim_, xdim_, p_);
    for (unsigned t = 0; t < zdim_; ++t)
      for (unsigned j = 0; j < xdim_; ++j)
        for (unsigned i = 0; i < xdim_; ++i) m(t * xdim_ + j, i) = tensor(t, i, j);
    return m.kernel();
  }

  /// Some u outside span(W) whose commutator map u' -> B(u, u') is not onto P',
  /// or nullopt when there is none. `method` records how this was decided.
  std::optional<Vec> degenerate_outside(const std::vector<Vec>& W, std::string* method = nullptr,
                                        u64 enumeration_limit = 20'000'000) const {
    for (const auto& r : radical())
      if (!in_span(W, r, p_)) {
        if (method) *method = "radical";
        return r;
      }
    if (zdim_ <= 1 || kind_ == Kind::heisenberg) {
      // Rank of u' -> B(u, u') is 0 or full: zdim 1, or an F-bilinear form with values in F.
      if (method) *method = zdim_ <= 1 ? "radical (one-dimensional center)" : "radical (F-bilinear form)";
      return std::nullopt;
    }
    if (numth::checked_pow(p_, xdim_) > enumeration_limit)
      throw Error(Errc::UnsupportedKind, "commutator form too large to enumerate");
    if (method) *method = "enumeration";
    const u64 total = numth::checked_pow(p_, xdim_);
    for (u64 idx = 1; idx < total; ++idx) {
      Vec u(xdim_);
      u64 t = idx;
      for (unsigned i = 0; i < xdim_; ++i) {
        u[i] = t % p_;
        t /= p_;
      }
      if (in_span(W, u, p_)) continue;
      if (form_map(u).rank() < zdim_) return u;
    }
    return std::nullopt;
  }

  unsigned alpha() const { return xdim_ / 2; }

  PGroupProfile profile() const { return {p_, dim(), alpha(), kind_}; }

  /// cd(P) = {1, p^alpha} via the vanishing-off-center criterion: P' = Z(P) and
  /// every x outside Z(P) has y -> [x, y] onto P'.
  VzCertificate vz_certificate() const {
    if (zdim_ == 0 || commutator_image_rank() != zdim_ || !radical().empty())
      throw Error(Errc::UnsupportedKind, "P' = Z(P) fails for this group");
    VzCertificate c;
    const auto bad = degenerate_outside({}, &c.method);
    c.holds = !bad.has_value();
    if (xdim_ % 2 != 0) c.holds = false;
    c.alpha = xdim_ / 2;
    return c;
  }

  /// Embeddings of the central-product factors (each given in its own coordinates).
  Elem embed_first(const Elem& e1) const { return embed_factor(e1, 0); }
  Elem embed_second(const Elem& e2) const { return embed_factor(e2, 1); }

 private:
  Elem embed_factor(const Elem& e, unsigned which) const {
    if (kind_ != Kind::central_product) throw Error(Errc::KindMismatch, "not a central product");
    const unsigned m1 = factor_dims_[0], m2 = factor_dims_[1], m = m1 + m2;
    const unsigned mf = which == 0 ? m1 : m2;
    if (e.size() != 2 * mf + 1) throw Error(Errc::KindMismatch, "factor element has wrong length");
    Vec x(xdim_, 0);
    const unsigned off = which == 0 ? 0 : m1;
    for (unsigned i = 0; i < mf; ++i) {
      x[off + i] = e[i];
      x[m + off + i] = e[mf + i];
    }
    // The factor's own center coordinate is scaled by the block weight of that factor.
    u64 z = e[2 * mf];
    if (which == 1) z = z * weight(m1) % p_;
    return encode(x, Vec{z});
  }

  void init_tensor() {
    tensor_.assign(static_cast<std::size_t>(zdim_) * xdim_ * xdim_, 0);
    for (unsigned i = 0; i < xdim_; ++i)
      for (unsigned j = 0; j < xdim_; ++j) {
        Vec ei(xdim_, 0), ej(xdim_, 0);
        ei[i] = 1;
        ej[j] = 1;
        const Elem c = commutator(encode(ei, Vec(zdim_, 0)), encode(ej, Vec(zdim_, 0)));
        for (unsigned t = 0; t < zdim_; ++t) tensor_[(t * xdim_ + i) * xdim_ + j] = c[xdim_ + t];
      }
  }

  Kind kind_ = Kind::elementary_abelian;
  u64 p_ = 2;
  unsigned xdim_ = 0, zdim_ = 0;
  gf::FieldHandle field_;
  std::vector<unsigned> blocks_;
  std::vector<u64> weights_;
  std::vector<unsigned> factor_dims_;
  std::vector<u64> tensor_;
};

}  // namespace solvdeg::pgrp
