#pragma once
// Structured automorphisms of the coordinate p-groups, the acting group H,
// fixed points by linear algebra, and the semidirect product P x| H.
//
// Convention: H multiplies by composition, (f g)(x) = f(g(x)), so apply() is a
// left action and the semidirect product is (x1, h1)(x2, h2) = (x1 h1(x2), h1 h2).

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "solvdeg/error.hpp"
#include "solvdeg/gf.hpp"
#include "solvdeg/group.hpp"
#include "solvdeg/modmat.hpp"
#include "solvdeg/pgroup.hpp"

namespace solvdeg::act {

using grp::Elem;
using grp::Index;
using pgrp::PGroup;
using pgrp::Vec;

/// (a, b, c) -> (u a^(p^i), v b^(p^i), uv c^(p^i)) on the Heisenberg group.
struct HeisAut {
  gf::FieldElem u, v;
  unsigned i = 0;
  bool operator==(const HeisAut& o) const { return u == o.u && v == o.v && i == o.i; }
};

/// (v, alpha, z) -> (M v, Mhat alpha, z_mult z) on the pairing groups.
struct EsAut {
  ModMatrix M, Mhat;
  u64 z_mult = 1;
  bool operator==(const EsAut& o) const { return M == o.M && Mhat == o.Mhat && z_mult == o.z_mult; }
};

using Aut = std::variant<HeisAut, EsAut>;

/// Block-diagonal GF(p)-linear form of an automorphism: x -> A x, z -> Z z.
struct LinearAut {
  ModMatrix A, Z;
  Vec apply_x(const Vec& x) const { return A.apply(x); }
  Vec apply_z(const Vec& z) const { return Z.rows() ? Z.apply(z) : Vec{}; }
};

// ---- constructors ----------------------------------------------------------

inline HeisAut heis_aut(const gf::FieldElem& u, const gf::FieldElem& v, long long i) {
  gf::require_same(u, v);
  if (u.is_zero() || v.is_zero()) throw Error(Errc::InvalidParams, "multipliers must be nonzero");
  return {u, v, u.field->norm_exp(i)};
}

inline HeisAut heis_identity(const gf::FieldHandle& F) { return {F->one(), F->one(), 0}; }

inline EsAut es_aut(ModMatrix M, ModMatrix Mhat, u64 z_mult) {
  if (M.rows() != M.cols() || Mhat.rows() != Mhat.cols() || M.rows() != Mhat.rows() || M.mod() != Mhat.mod())
    throw Error(Errc::InvalidParams, "EsAut matrices must be square of equal size");
  return {std::move(M), std::move(Mhat), z_mult % M.mod()};
}

/// delta acting on V by M and on the dual by alpha -> alpha o M^-1, scaled so the
/// pairing picks up z_mult.
inline EsAut es_dual(const ModMatrix& M, u64 z_mult = 1) {
  const ModMatrix Mhat = M.inverse().transpose().scaled(z_mult);
  return es_aut(M, Mhat, z_mult);
}

inline EsAut es_identity(u64 p, unsigned m) {
  return es_aut(ModMatrix::identity(m, p), ModMatrix::identity(m, p), 1);
}

/// (v, alpha, z) -> (x v, x alpha, x^2 z).
inline EsAut es_scalar(u64 p, unsigned m, u64 x) {
  return es_aut(ModMatrix::scalar(m, x, p), ModMatrix::scalar(m, x, p), x % p * (x % p) % p);
}

/// (v, alpha, z) -> (zeta v, alpha, zeta z).
inline EsAut es_zeta(u64 p, unsigned m, u64 zeta) {
  return es_aut(ModMatrix::scalar(m, zeta, p), ModMatrix::identity(m, p), zeta);
}

/// v -> mu v^(p^i) on V = F, with the induced dual action.
inline EsAut es_semilinear(const gf::FieldHandle& F, const gf::FieldElem& mu, long long i) {
  return es_dual(F->as_linear_map(mu, i));
}

/// Acts on the two central-product factors independently; z multipliers must agree.
inline EsAut es_block(const EsAut& a, const EsAut& b) {
  if (a.z_mult != b.z_mult)
    throw Error(Errc::CenterMismatch, "factor automorphisms disagree on the shared center");
  return es_aut(ModMatrix::block_diag(a.M, b.M), ModMatrix::block_diag(a.Mhat, b.Mhat), a.z_mult);
}

// ---- algebra ---------------------------------------------------------------

namespace detail {
inline void same_target(const HeisAut& f, const HeisAut& g) {
  if (!f.u.field || !g.u.field || !f.u.field->same_as(*g.u.field))
    throw Error(Errc::TargetMismatch, "automorphisms of different Heisenberg groups");
}
inline void same_target(const EsAut& f, const EsAut& g) {
  if (f.M.rows() != g.M.rows() || f.M.mod() != g.M.mod())
    throw Error(Errc::TargetMismatch, "automorphisms of different extraspecial groups");
}
}  // namespace detail

inline HeisAut compose(const HeisAut& f, const HeisAut& g) {
  detail::same_target(f, g);
  const auto& F = f.u.field;
  return {F->mul(f.u, F->frobenius(g.u, f.i)), F->mul(f.v, F->frobenius(g.v, f.i)), F->norm_exp(f.i + g.i)};
}

inline EsAut compose(const EsAut& f, const EsAut& g) {
  detail::same_target(f, g);
  return {f.M * g.M, f.Mhat * g.Mhat, f.z_mult * g.z_mult % f.M.mod()};
}

inline Aut compose(const Aut& f, const Aut& g) {
  if (f.index() != g.index()) throw Error(Errc::TargetMismatch, "automorphisms of different kinds");
  if (auto* h = std::get_if<HeisAut>(&f)) return compose(*h, std::get<HeisAut>(g));
  return compose(std::get<EsAut>(f), std::get<EsAut>(g));
}

inline HeisAut invert(const HeisAut& f) {
  const auto& F = f.u.field;
  const long long back = -static_cast<long long>(f.i);
  return {F->frobenius(F->inv(f.u), back), F->frobenius(F->inv(f.v), back), F->norm_exp(back)};
}

inline EsAut invert(const EsAut& f) {
  if (f.z_mult == 0) throw Error(Errc::DivisionByZero, "z multiplier is zero");
  return {f.M.inverse(), f.Mhat.inverse(), numth::invmod(f.z_mult, f.M.mod())};
}

inline Aut invert(const Aut& f) {
  return std::visit([](const auto& a) -> Aut { return invert(a); }, f);
}

inline Aut identity_like(const Aut& f) {
  if (auto* h = std::get_if<HeisAut>(&f)) return heis_identity(h->u.field);
  const auto& e = std::get<EsAut>(f);
  return es_identity(e.M.mod(), static_cast<unsigned>(e.M.rows()));
}

inline Aut power(const Aut& f, u64 k) {
  Aut r = identity_like(f), b = f;
  while (k) {
    if (k & 1) r = compose(r, b);
    b = compose(b, b);
    k >>= 1;
  }
  return r;
}

inline bool is_identity(const Aut& f) { return f == identity_like(f); }

// ---- action on P -----------------------------------------------------------

inline void check_target(const Aut& f, const PGroup& P) {
  if (auto* h = std::get_if<HeisAut>(&f)) {
    if (P.kind() != pgrp::Kind::heisenberg || !P.field()->same_as(*h->u.field))
      throw Error(Errc::KindMismatch, "Heisenberg automorphism applied to another group");
    return;
  }
  const auto& e = std::get<EsAut>(f);
  const bool pairing = P.kind() == pgrp::Kind::extraspecial_dual || P.kind() == pgrp::Kind::central_product;
  if (!pairing || e.M.rows() != P.vdim() || e.M.mod() != P.p())
    throw Error(Errc::KindMismatch, "pairing automorphism applied to another group");
}

/// Structured image, computed from the automorphism data rather than the linearization.
inline Elem apply(const Aut& f, const PGroup& P, const Elem& g) {
  check_target(f, P);
  auto [x, z] = P.split(g);
  if (auto* h = std::get_if<HeisAut>(&f)) {
    const auto& F = P.field();
    const unsigned q = F->n();
    const auto a = F->from_coords(Vec(x.begin(), x.begin() + q));
    const auto b = F->from_coords(Vec(x.begin() + q, x.end()));
    const auto c = F->from_coords(z);
    const auto a2 = F->mul(h->u, F->frobenius(a, h->i));
    const auto b2 = F->mul(h->v, F->frobenius(b, h->i));
    const auto c2 = F->mul(F->mul(h->u, h->v), F->frobenius(c, h->i));
    Vec nx = a2.coords;
    nx.insert(nx.end(), b2.coords.begin(), b2.coords.end());
    return P.encode(nx, c2.coords);
  }
  const auto& e = std::get<EsAut>(f);
  const unsigned m = P.vdim();
  Vec v = e.M.apply(Vec(x.begin(), x.begin() + m));
  const Vec al = e.Mhat.apply(Vec(x.begin() + m, x.end()));
  v.insert(v.end(), al.begin(), al.end());
  return P.encode(v, Vec{z[0] * e.z_mult % P.p()});
}

inline LinearAut linearize(const Aut& f, const PGroup& P) {
  check_target(f, P);
  if (auto* h = std::get_if<HeisAut>(&f)) {
    const auto& F = P.field();
    return {ModMatrix::block_diag(F->as_linear_map(h->u, h->i), F->as_linear_map(h->v, h->i)),
            F->as_linear_map(F->mul(h->u, h->v), h->i)};
  }
  const auto& e = std::get<EsAut>(f);
  return {ModMatrix::block_diag(e.M, e.Mhat), ModMatrix::scalar(1, e.z_mult, P.p())};
}

inline Elem apply(const LinearAut& L, const PGroup& P, const Elem& g) {
  auto [x, z] = P.split(g);
  return P.encode(L.apply_x(x), L.apply_z(z));
}

/// Weighted pairing form Phi = diag(w) on V.
inline ModMatrix pairing_form(const PGroup& P) {
  ModMatrix W(P.vdim(), P.vdim(), P.p());
  for (unsigned i = 0; i < P.vdim(); ++i) W(i, i) = P.weight(i);
  return W;
}

/// Exact structural condition: Heisenberg multipliers nonzero; for the pairing
/// groups Mhat^T Phi M = z_mult Phi with M, Mhat invertible.
inline bool structurally_valid(const Aut& f, const PGroup& P) {
  check_target(f, P);
  if (auto* h = std::get_if<HeisAut>(&f)) return !h->u.is_zero() && !h->v.is_zero();
  const auto& e = std::get<EsAut>(f);
  if (e.z_mult % P.p() == 0) return false;
  try {
    (void)e.M.inverse();
    (void)e.Mhat.inverse();
  } catch (const Error&) {
    return false;
  }
  const ModMatrix Phi = pairing_form(P);
  return e.Mhat.transpose() * Phi * e.M == Phi.scaled(e.z_mult);
}

struct AutCheck {
  bool structural = false;
  bool sampled = false;
  std::size_t samples = 0;
  std::optional<std::pair<Elem, Elem>> witness;  // f(xy) != f(x) f(y)
  bool ok() const { return structural && sampled; }
};

inline Elem random_element(const PGroup& P, std::mt19937_64& rng) {
  std::uniform_int_distribution<u64> d(0, P.p() - 1);
  Elem e(P.dim());
  for (auto& c : e) c = static_cast<std::uint32_t>(d(rng));
  return e;
}

inline AutCheck check_automorphism(const Aut& f, const PGroup& P, std::size_t samples = 1000,
                                   std::uint64_t seed = 0x5eed) {
  AutCheck r;
  r.structural = structurally_valid(f, P);
  r.sampled = true;
  std::mt19937_64 rng(seed);
  for (std::size_t k = 0; k < samples; ++k) {
    const Elem x = random_element(P, rng), y = random_element(P, rng);
    ++r.samples;
    if (apply(f, P, P.mul(x, y)) != P.mul(apply(f, P, x), apply(f, P, y))) {
      r.sampled = false;
      r.witness = {x, y};
      break;
    }
  }
  return r;
}

// ---- canonical encoding ----------------------------------------------------

inline Elem encode(const Aut& f) {
  Elem e;
  if (auto* h = std::get_if<HeisAut>(&f)) {
    for (u64 c : h->u.coords) e.push_back(static_cast<std::uint32_t>(c));
    for (u64 c : h->v.coords) e.push_back(static_cast<std::uint32_t>(c));
    e.push_back(h->i);
    return e;
  }
  const auto& a = std::get<EsAut>(f);
  for (std::size_t i = 0; i < a.M.rows(); ++i)
    for (std::size_t j = 0; j < a.M.cols(); ++j) e.push_back(static_cast<std::uint32_t>(a.M(i, j)));
  for (std::size_t i = 0; i < a.Mhat.rows(); ++i)
    for (std::size_t j = 0; j < a.Mhat.cols(); ++j) e.push_back(static_cast<std::uint32_t>(a.Mhat(i, j)));
  e.push_back(static_cast<std::uint32_t>(a.z_mult));
  return e;
}

/// Inverse of encode() for automorphisms of P.
inline Aut decode(const Elem& e, const PGroup& P) {
  if (P.kind() == pgrp::Kind::heisenberg) {
    const auto& F = P.field();
    const unsigned q = F->n();
    if (e.size() != 2 * q + 1) throw Error(Errc::ParseError, "bad Heisenberg automorphism code");
    return HeisAut{F->from_coords(Vec(e.begin(), e.begin() + q)), F->from_coords(Vec(e.begin() + q, e.begin() + 2 * q)),
                   e[2 * q]};
  }
  const unsigned m = P.vdim();
  if (e.size() != 2 * m * m + 1) throw Error(Errc::ParseError, "bad pairing automorphism code");
  ModMatrix M(m, m, P.p()), N(m, m, P.p());
  for (unsigned i = 0; i < m; ++i)
    for (unsigned j = 0; j < m; ++j) {
      M(i, j) = e[i * m + j];
      N(i, j) = e[m * m + i * m + j];
    }
  return EsAut{M, N, e[2 * m * m]};
}

// ---- the acting group H ----------------------------------------------------

struct ActingGroup {
  grp::Group group;
  std::vector<Aut> auts;       // parallel to group elements
  std::vector<LinearAut> lin;  // parallel to group elements
  std::vector<std::pair<std::string, Aut>> named;

  std::size_t order() const { return group.order(); }
  std::optional<Index> find(const Aut& f) const { return group.find(encode(f)); }
  Index label(const std::string& name) const {
    for (const auto& [n, f] : named)
      if (n == name) return group.index(encode(f));
    throw Error(Errc::InvalidParams, "no generator named " + name);
  }
};

inline ActingGroup make_acting_group(const PGroup& P, std::vector<std::pair<std::string, Aut>> gens,
                                     std::size_t cap = grp::kDefaultOrderCap) {
  for (const auto& [n, f] : gens) check_target(f, P);
  const Aut id = P.kind() == pgrp::Kind::heisenberg ? Aut{heis_identity(P.field())}
                                                    : Aut{es_identity(P.p(), P.vdim())};
  const PGroup proto = P;
  grp::GroupOps ops{encode(id),
                    [proto](const Elem& a, const Elem& b) {
                      return encode(compose(decode(a, proto), decode(b, proto)));
                    },
                    [proto](const Elem& a) { return encode(invert(decode(a, proto))); }};
  std::vector<Elem> codes;
  for (const auto& [n, f] : gens) codes.push_back(encode(f));
  ActingGroup H;
  H.group = grp::Group::closure(ops, codes, cap);
  H.named = std::move(gens);
  H.auts.reserve(H.order());
  H.lin.reserve(H.order());
  for (Index i = 0; i < H.order(); ++i) {
    H.auts.push_back(decode(H.group.elem(i), P));
    H.lin.push_back(linearize(H.auts.back(), P));
  }
  return H;
}

// ---- fixed points ----------------------------------------------------------

/// Coordinate subgroup {(x, z) : x in span(x), z in span(z)} of P. Fixed-point
/// sets of the block-diagonal actions have this shape.
struct CoordSubgroup {
  std::vector<Vec> x;  // echelon basis in P/P'
  std::vector<Vec> z;  // echelon basis in P'
  std::size_t dim() const { return x.size() + z.size(); }
  bool contains_derived(const PGroup& P) const { return z.size() == P.zdim(); }
};

inline CoordSubgroup whole_coords(const PGroup& P) {
  CoordSubgroup S;
  for (unsigned i = 0; i < P.xdim(); ++i) {
    Vec e(P.xdim(), 0);
    e[i] = 1;
    S.x.push_back(e);
  }
  for (unsigned t = 0; t < P.zdim(); ++t) {
    Vec e(P.zdim(), 0);
    e[t] = 1;
    S.z.push_back(e);
  }
  return S;
}

inline CoordSubgroup derived_coords(const PGroup& P) {
  CoordSubgroup S = whole_coords(P);
  S.x.clear();
  return S;
}

inline bool contains(const CoordSubgroup& S, const PGroup& P, const Elem& g) {
  auto [x, z] = P.split(g);
  return in_span(S.x, x, P.p()) && in_span(S.z, z, P.p());
}

namespace detail {
/// Basis of the common kernel of the stacked maps (A_k - I).
inline std::vector<Vec> common_fixed(const std::vector<const ModMatrix*>& maps, std::size_t dim, u64 p) {
  if (dim == 0) return {};
  std::vector<ModMatrix> blocks;
  for (const auto* A : maps) blocks.push_back(*A - ModMatrix::identity(dim, p));
  if (blocks.empty()) return ModMatrix(1, dim, p).kernel();
  return span_basis(ModMatrix::vstack(blocks, dim, p).kernel(), dim, p);
}

/// Basis of {c : (A - I) W^T c = 0}, mapped back into span(W).
inline std::vector<Vec> fixed_inside(const ModMatrix& A, const std::vector<Vec>& W, u64 p) {
  if (W.empty()) return {};
  const std::size_t n = A.rows();
  ModMatrix B(n, W.size(), p);
  const ModMatrix AI = A - ModMatrix::identity(n, p);
  for (std::size_t k = 0; k < W.size(); ++k) {
    const Vec col = AI.apply(W[k]);
    for (std::size_t i = 0; i < n; ++i) B(i, k) = col[i];
  }
  std::vector<Vec> out;
  for (const auto& c : B.kernel()) {
    Vec v(n, 0);
    for (std::size_t k = 0; k < W.size(); ++k)
      for (std::size_t i = 0; i < n; ++i) v[i] = (v[i] + c[k] * W[k][i]) % p;
    out.push_back(v);
  }
  return span_basis(out, n, p);
}
}  // namespace detail

inline CoordSubgroup fixed_subgroup(const LinearAut& L, const PGroup& P) {
  return {detail::common_fixed({&L.A}, P.xdim(), P.p()), detail::common_fixed({&L.Z}, P.zdim(), P.p())};
}

inline CoordSubgroup fixed_subgroup(const Aut& f, const PGroup& P) { return fixed_subgroup(linearize(f, P), P); }

/// Fixed points of L inside the coordinate subgroup D.
inline CoordSubgroup fixed_in(const LinearAut& L, const PGroup& P, const CoordSubgroup& D) {
  return {detail::fixed_inside(L.A, D.x, P.p()), P.zdim() ? detail::fixed_inside(L.Z, D.z, P.p()) : std::vector<Vec>{}};
}

inline bool is_invariant(const LinearAut& L, const PGroup& P, const CoordSubgroup& D) {
  for (const auto& w : D.x)
    if (!in_span(D.x, L.apply_x(w), P.p())) return false;
  for (const auto& w : D.z)
    if (!in_span(D.z, L.apply_z(w), P.p())) return false;
  return true;
}

/// Fixed points of L on P/D for D >= P', as vectors of P/P' independent modulo D.
/// P/D is coordinatized as (P/P') / (D/P').
inline std::vector<Vec> fixed_subgroup_mod(const LinearAut& L, const PGroup& P, const CoordSubgroup& D) {
  if (!D.contains_derived(P)) throw Error(Errc::InvalidParams, "quotient coordinates need P' <= D");
  if (!is_invariant(L, P, D)) throw Error(Errc::NotInvariant, "D is not stable under the automorphism");
  const std::size_t n = P.xdim();
  const u64 p = P.p();
  // solve (A - I) x = W^T c
  ModMatrix B(n, n + D.x.size(), p);
  const ModMatrix AI = L.A - ModMatrix::identity(n, p);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) B(i, j) = AI(i, j);
    for (std::size_t k = 0; k < D.x.size(); ++k) B(i, n + k) = (p - D.x[k][i]) % p;
  }
  std::vector<Vec> basis = D.x, out;
  for (const auto& sol : B.kernel()) {
    Vec x(sol.begin(), sol.begin() + n);
    if (in_span(basis, x, p)) continue;
    basis.push_back(x);
    out.push_back(x);
  }
  return out;
}

enum class Target { P, P_mod_D, D };

inline const char* target_name(Target t) {
  switch (t) {
    case Target::P: return "P";
    case Target::P_mod_D: return "P/D";
    case Target::D: return "D";
  }
  return "?";
}

struct FrobeniusResult {
  bool holds = true;
  std::size_t checked = 0;
  std::optional<Index> h;
  std::optional<Elem> witness;  // nonzero fixed element (coset representative for P/D)
};

/// Every h != 1 accepted by `only` fixes no nonidentity element of the target.
inline FrobeniusResult frobenius_certificate(const ActingGroup& H, const PGroup& P, Target t,
                                             const CoordSubgroup* D = nullptr,
                                             const std::function<bool(Index)>& only = nullptr) {
  if (t != Target::P && !D) throw Error(Errc::InvalidParams, "target needs D");
  FrobeniusResult r;
  for (Index h = 0; h < H.order(); ++h) {
    if (h == H.group.identity() || (only && !only(h))) continue;
    ++r.checked;
    const LinearAut& L = H.lin[h];
    std::optional<Elem> w;
    if (t == Target::P_mod_D) {
      const auto fx = fixed_subgroup_mod(L, P, *D);
      if (!fx.empty()) w = P.encode(fx.front(), Vec(P.zdim(), 0));
    } else {
      const CoordSubgroup fx = t == Target::P ? fixed_subgroup(L, P) : fixed_in(L, P, *D);
      if (!fx.x.empty()) w = P.encode(fx.x.front(), Vec(P.zdim(), 0));
      else if (!fx.z.empty()) w = P.encode(Vec(P.xdim(), 0), fx.z.front());
    }
    if (w) {
      r.holds = false;
      r.h = h;
      r.witness = std::move(w);
      return r;
    }
  }
  return r;
}

/// C = C_H(P'): elements acting trivially on the z-coordinates.
inline grp::Subgroup centralizer_C(const ActingGroup& H) {
  std::vector<Index> mem;
  for (Index h = 0; h < H.order(); ++h)
    if (H.lin[h].Z.is_identity()) mem.push_back(h);
  return grp::from_members(H.group, std::move(mem));
}

/// Kernel of the action of H on P.
inline grp::Subgroup action_kernel(const ActingGroup& H) {
  std::vector<Index> mem;
  for (Index h = 0; h < H.order(); ++h)
    if (H.lin[h].A.is_identity() && H.lin[h].Z.is_identity()) mem.push_back(h);
  return grp::from_members(H.group, std::move(mem));
}

/// D = C_P(C), the common fixed points of the generators of C.
inline CoordSubgroup centralized_D(const ActingGroup& H, const grp::Subgroup& C, const PGroup& P) {
  std::vector<const ModMatrix*> ax, az;
  for (Index c : C.gens) {
    ax.push_back(&H.lin[c].A);
    az.push_back(&H.lin[c].Z);
  }
  return {detail::common_fixed(ax, P.xdim(), P.p()), detail::common_fixed(az, P.zdim(), P.p())};
}

/// Enumerate a coordinate subgroup as a group (throws if it is not closed).
inline grp::Group enumerate(const CoordSubgroup& S, const PGroup& P, std::size_t cap = grp::kDefaultOrderCap) {
  std::vector<Elem> gens;
  for (const auto& x : S.x) gens.push_back(P.encode(x, Vec(P.zdim(), 0)));
  for (const auto& z : S.z) gens.push_back(P.encode(Vec(P.xdim(), 0), z));
  if (S.dim() > 40 || numth::checked_pow(P.p(), static_cast<unsigned>(S.dim())) > cap)
    throw Error(Errc::ClosureLimitExceeded, "subgroup exceeds enumeration cap");
  auto G = grp::Group::closure(P.ops(), gens, cap);
  if (G.order() != numth::checked_pow(P.p(), static_cast<unsigned>(S.dim())))
    throw Error(Errc::NotInvariant, "coordinate set is not a subgroup");
  return G;
}

// ---- semidirect product ----------------------------------------------------

/// Elements are P coordinates followed by the index of h in H.
class Semidirect {
 public:
  Semidirect(PGroup P, ActingGroup H) : P_(std::move(P)), H_(std::move(H)) {
    if (H_.order() % P_.p() == 0) throw Error(Errc::InvalidParams, "p divides |H|");
  }

  const PGroup& P() const { return P_; }
  const ActingGroup& H() const { return H_; }
  u64 order() const { return numth::checked_mul(P_.order(), H_.order()); }

  Elem make(const Elem& x, Index h) const {
    Elem e = x;
    e.push_back(h);
    return e;
  }
  Elem embed_p(const Elem& x) const { return make(x, H_.group.identity()); }
  Elem embed_h(Index h) const { return make(P_.identity(), h); }
  Elem p_part(const Elem& g) const { return Elem(g.begin(), g.begin() + P_.dim()); }
  Index h_part(const Elem& g) const { return g.back(); }

  Elem mul(const Elem& a, const Elem& b) const {
    const Index h1 = h_part(a), h2 = h_part(b);
    return make(P_.mul(p_part(a), act::apply(H_.lin[h1], P_, p_part(b))), H_.group.mul(h1, h2));
  }
  Elem inv(const Elem& a) const {
    const Index hi = H_.group.inv(h_part(a));
    return make(act::apply(H_.lin[hi], P_, P_.inv(p_part(a))), hi);
  }

  grp::GroupOps ops() const {
    auto self = std::make_shared<const Semidirect>(*this);
    return {embed_p(P_.identity()), [self](const Elem& a, const Elem& b) { return self->mul(a, b); },
            [self](const Elem& a) { return self->inv(a); }};
  }

  std::vector<Elem> generators() const {
    std::vector<Elem> g;
    for (const auto& x : P_.generators()) g.push_back(embed_p(x));
    for (const auto& [n, f] : H_.named) g.push_back(embed_h(H_.group.index(encode(f))));
    return g;
  }

  grp::Group enumerate(std::size_t cap = grp::kDefaultOrderCap) const {
    if (!numth::pow_at_most(P_.p(), P_.dim(), cap, H_.order()))
      throw Error(Errc::ClosureLimitExceeded, "|G| exceeds enumeration cap");
    return grp::Group::closure(ops(), generators(), cap);
  }

 private:
  PGroup P_;
  ActingGroup H_;
};

}  // namespace solvdeg::act
