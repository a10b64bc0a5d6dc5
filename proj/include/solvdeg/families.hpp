#pragma once
// The seven constructions, the hypothesis certificate, predictions from
// the closed-form degree formulas, and cross-validation against the oracle.

#include <algorithm>
#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "solvdeg/action.hpp"
#include "solvdeg/chardeg.hpp"
#include "solvdeg/error.hpp"
#include "solvdeg/gf.hpp"
#include "solvdeg/group.hpp"
#include "solvdeg/numth.hpp"
#include "solvdeg/pgroup.hpp"

namespace solvdeg::fam {

using act::Aut;
using grp::Index;
using numth::PrimeSet;
using pgrp::PGroup;

enum class Family { one, two, three, four, five, no_prime, fitting_two };

inline const std::vector<std::pair<Family, const char*>>& family_names() {
  static const std::vector<std::pair<Family, const char*>> names = {
      {Family::one, "one"},   {Family::two, "two"},           {Family::three, "three"},
      {Family::four, "four"}, {Family::five, "five"},         {Family::no_prime, "no_prime"},
      {Family::fitting_two, "fitting_two"}};
  return names;
}

inline const char* family_name(Family f) {
  for (const auto& [k, n] : family_names())
    if (k == f) return n;
  return "?";
}

inline Family parse_family(const std::string& s) {
  for (const auto& [k, n] : family_names())
    if (s == n) return k;
  throw Error(Errc::InvalidParams, "unknown family '" + s + "'");
}

struct FamilyParams {
  Family family = Family::one;
  u64 p = 0;
  std::optional<u64> q, r, n, m;
  bool operator==(const FamilyParams&) const = default;
};

inline FamilyParams preset(Family f) {
  switch (f) {
    case Family::one: return {f, 7, 3, {}, {}, {}};
    case Family::two: return {f, 7, 3, 2, {}, {}};
    case Family::three: return {f, 7, 3, {}, {}, {}};
    case Family::four: return {f, 7, 2, 3, {}, {}};
    case Family::five: return {f, 7, 3, {}, 4, {}};
    case Family::no_prime: return {f, 11, {}, {}, 5, 5};
    case Family::fitting_two: return {f, 3, {}, {}, {}, {}};
  }
  return {};
}

inline std::vector<FamilyParams> presets() {
  std::vector<FamilyParams> out;
  for (const auto& [f, n] : family_names()) out.push_back(preset(f));
  return out;
}

inline std::string describe(const FamilyParams& fp) {
  std::string s = std::string(family_name(fp.family)) + "(p=" + std::to_string(fp.p);
  if (fp.q) s += ",q=" + std::to_string(*fp.q);
  if (fp.r) s += ",r=" + std::to_string(*fp.r);
  if (fp.n) s += ",n=" + std::to_string(*fp.n);
  if (fp.m) s += ",m=" + std::to_string(*fp.m);
  return s + ")";
}

namespace detail {
inline void require(bool ok, const std::string& clause) {
  if (!ok) throw Error(Errc::InvalidParams, clause);
}
inline u64 need(const std::optional<u64>& v, const char* name) {
  if (!v) throw Error(Errc::InvalidParams, std::string(name) + " is required");
  return *v;
}
}  // namespace detail

/// Check the hypothesis clauses; the message names the violated clause.
inline void validate(const FamilyParams& fp) {
  using detail::need;
  using detail::require;
  const u64 p = fp.p;
  require(numth::is_prime(p), "p must be prime");
  switch (fp.family) {
    case Family::one:
    case Family::two:
    case Family::three:
    case Family::five: {
      const u64 q = need(fp.q, "q");
      require(numth::is_prime(q) && q != 2, "q must be an odd prime");
      require((p - 1) % q == 0, "q must divide p-1");
      if (fp.family == Family::two) {
        const u64 r = need(fp.r, "r");
        require(r > 1, "r must be greater than 1");
        require((p - 1) % r == 0, "r must divide p-1");
        require(std::gcd(r, q) == 1, "r must be coprime to q");
      }
      if (fp.family == Family::five) require(need(fp.n, "n") > q, "n must exceed q");
      break;
    }
    case Family::four: {
      const u64 q = need(fp.q, "q"), r = need(fp.r, "r");
      require(numth::is_prime(q), "q must be prime");
      require((p - 1) % q == 0, "q must divide p-1");
      require(r > 1 && r % 2 == 1, "r must be an odd integer greater than 1");
      require((p - 1) % r == 0, "r must divide p-1");
      require(std::gcd(r, q) == 1, "r must be coprime to q");
      break;
    }
    case Family::no_prime: {
      const u64 n = need(fp.n, "n");
      require(n > 1 && n % 2 == 1, "n must be an odd integer greater than 1");
      for (u64 s : numth::factorize(n).primes()) require((p - 1) % s == 0, "every prime divisor of n must divide p-1");
      const u64 m = fp.m.value_or(n);
      require(m % n == 0, "n must divide m");
      require((n * (p - 1)) % m == 0, "m must divide n(p-1)");
      break;
    }
    case Family::fitting_two:
      require(p % 8 == 3, "p must be congruent to 3 mod 8");
      break;
  }
}

struct BuildCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct NoPrimeSearch {
  std::vector<u64> rho;
  u64 K_order = 0;
  u64 m = 0;
  u64 mu_exponent = 0;  // mu = g^e for the primitive element g
  unsigned galois = 0;  // N = <mu sigma^j>
  u64 candidates = 0;   // candidates examined
};

struct Instance {
  FamilyParams params;
  gf::FieldHandle field;
  PGroup P;
  act::ActingGroup H;
  std::vector<BuildCheck> build_checks;
  std::vector<std::string> flags;
  std::optional<NoPrimeSearch> search;

  u64 order() const { return numth::checked_mul(P.order(), H.order()); }
  bool order_at_most(u64 cap) const { return numth::pow_at_most(P.p(), P.dim(), cap, H.order()); }
  std::string order_string() const { return numth::decimal_pow_times(P.p(), P.dim(), H.order()); }
  act::Semidirect semidirect() const { return act::Semidirect(P, H); }
};

namespace detail {
inline u64 prime_field_element_of_order(u64 p, u64 d) {
  const auto Fp = gf::make_field(p, 1);
  return Fp->subgroup_generator(d).coords[0];
}

inline bool in_galois_zero(const Aut& f) {
  const auto* h = std::get_if<act::HeisAut>(&f);
  return h && h->i == 0;
}
}  // namespace detail

/// cd(H) = {1, a} for H inside Gamma(F) acting on the Heisenberg group, via the
/// orbit criterion: with A = H intersected with the multiplications (abelian,
/// normal, H/A cyclic) every character of A extends to its stabilizer, so cd(H)
/// is the set of H-orbit sizes on Irr(A). Requires A cyclic. Returns nullopt when
/// not applicable.
inline std::optional<std::vector<u64>> cd_by_orbits(const act::ActingGroup& H) {
  if (H.auts.empty() || !std::holds_alternative<act::HeisAut>(H.auts.front())) return std::nullopt;
  std::vector<Index> A;
  std::optional<Index> t;
  unsigned best = ~0u;
  for (Index h = 0; h < H.order(); ++h) {
    const unsigned i = std::get<act::HeisAut>(H.auts[h]).i;
    if (i == 0) A.push_back(h);
    else if (i < best) {
      best = i;
      t = h;
    }
  }
  const u64 a = A.size();
  if (!t) return std::vector<u64>{1};
  // a generator of A
  std::optional<Index> g;
  for (Index x : A)
    if (grp::element_order(H.group, x) == a) {
      g = x;
      break;
    }
  if (!g) return std::nullopt;
  const Index c = H.group.conj(*g, H.group.inv(*t));  // t g t^-1
  std::optional<u64> e;
  Index y = H.group.identity();
  for (u64 k = 0; k < a && !e; ++k) {
    if (y == c) e = k;
    y = H.group.mul(y, *g);
  }
  if (!e) return std::nullopt;
  std::vector<u64> sizes;
  for (u64 d : numth::divisors(a)) {
    u64 o = 1, v = *e % d;
    if (d > 1) {
      u64 w = v;
      while (w % d != 1 % d) {
        w = w * v % d;
        ++o;
      }
    }
    sizes.push_back(o);
  }
  std::sort(sizes.begin(), sizes.end());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
  return sizes;
}

struct CdH {
  std::vector<u64> degrees;  // degree set
  std::string method;
};

inline CdH character_degrees_of(const act::ActingGroup& H, std::size_t class_cap = chardeg::kDefaultClassCap) {
  if (H.group.classes().count() <= class_cap) return {chardeg::degrees(H.group, class_cap).degree_set, "dixon"};
  if (auto o = cd_by_orbits(H)) return {*o, "orbit"};
  throw Error(Errc::ClassCapExceeded, "H has too many classes for the oracle and no orbit criterion applies");
}

namespace detail {
inline std::vector<std::pair<std::string, Aut>> no_prime_generators(const PGroup& P, const FamilyParams& fp,
                                                                    NoPrimeSearch& S) {
  const auto& F = P.field();
  const u64 p = fp.p, n = *fp.n, m = fp.m.value_or(n);
  const u64 N = F->order() - 1;
  const auto rho = numth::zsigmondy_primes(p, static_cast<unsigned>(n));
  S.rho = rho.primes();
  S.K_order = numth::pi_part(N, rho);
  S.m = m;
  const auto kappa = F->subgroup_generator(S.K_order);
  const Aut K = act::heis_aut(kappa, kappa, 0);
  const auto g = F->primitive_element();
  auto mu = F->one();
  for (u64 e = 1; e < N; ++e) {
    mu = F->mul(mu, g);
    for (unsigned j = 1; j < n; ++j) {
      ++S.candidates;
      const u64 s = n / std::gcd<u64>(j, n);
      // nu^s = (w, w, 0) with w = g^(e * sum_t p^(jt)); its order is read off the exponent
      u64 ew = 0;
      for (u64 t = 0; t < s; ++t) ew = (ew + numth::powmod(p, j * t, N)) % N;
      ew = numth::mulmod(e % N, ew, N);
      if (s * (N / std::gcd(N, ew)) != m) continue;
      const Aut nu = act::heis_aut(mu, mu, j);
      // cheap prefilter: <nu> must already act Frobeniusly
      auto Nh = act::make_acting_group(P, {{"nu", nu}});
      if (!act::frobenius_certificate(Nh, P, act::Target::P).holds) continue;
      auto H = act::make_acting_group(P, {{"kappa", K}, {"nu", nu}});
      if (H.order() != S.K_order * m) continue;
      if (!grp::is_nilpotent(Nh.group)) continue;
      if (!act::frobenius_certificate(H, P, act::Target::P).holds) continue;
      const auto cd = character_degrees_of(H).degrees;
      if (cd != std::vector<u64>{1, n}) continue;
      S.mu_exponent = e;
      S.galois = j;
      return {{"kappa", K}, {"nu", nu}};
    }
  }
  throw Error(Errc::SearchFailed, "no subgroup N of order " + std::to_string(m) +
                                      " in the semilinear group gives a Frobenius action with cd(NK) = {1, n}");
}
}  // namespace detail

/// Assemble an instance from P and named generators (used by build and by
/// loading serialized documents).
inline Instance assemble(const FamilyParams& fp, const PGroup& P, std::vector<std::pair<std::string, Aut>> gens,
                         std::size_t h_cap = grp::kDefaultOrderCap) {
  Instance I;
  I.params = fp;
  I.P = P;
  I.field = P.field();
  I.H = act::make_acting_group(P, std::move(gens), h_cap);
  if (fp.family == Family::five && fp.n && fp.q)
    I.flags.push_back("p2_order_corrected: second factor has order p^(2(n-q)+1)");
  if (fp.family == Family::no_prime && fp.m && fp.n && *fp.m != *fp.n)
    I.flags.push_back("no_prime_m_clause: m accepted via n | m | n(p-1) with runtime validation");
  return I;
}

inline Instance build(const FamilyParams& fp, std::size_t h_cap = grp::kDefaultOrderCap) {
  validate(fp);
  const u64 p = fp.p;
  std::vector<std::pair<std::string, Aut>> gens;
  std::optional<PGroup> P;
  gf::FieldHandle F;
  std::vector<BuildCheck> checks;
  std::optional<NoPrimeSearch> search;
  switch (fp.family) {
    case Family::one:
    case Family::two: {
      const u64 q = *fp.q;
      F = gf::make_field(p, static_cast<unsigned>(q));
      P = PGroup::heisenberg(F);
      const u64 N = F->order() - 1;
      const auto gamma = F->subgroup_generator(numth::pi_part(N / (p - 1), PrimeSet{q}.complement()));
      const auto lambda = F->subgroup_generator(numth::pi_part(N, PrimeSet{q}));
      gens.push_back({"gamma", act::heis_aut(gamma, gamma, 0)});
      gens.push_back({"lambda_sigma", act::heis_aut(lambda, lambda, 1)});
      if (fp.family == Family::two) {
        const u64 r = *fp.r;
        const auto K = act::make_acting_group(*P, gens, h_cap);
        const auto eta = F->subgroup_generator(r);
        gens.push_back({"eta", act::heis_aut(eta, F->inv(eta), 0)});
        const auto H = act::make_acting_group(*P, gens, h_cap);
        checks.push_back({"eta_meets_K_trivially", H.order() == K.order() * r,
                          "|H| = " + std::to_string(H.order()) + ", |K| * r = " + std::to_string(K.order() * r)});
      }
      break;
    }
    case Family::three:
    case Family::four:
    case Family::five: {
      const u64 q = *fp.q;
      const unsigned qd = static_cast<unsigned>(q);
      F = gf::make_field(p, qd);
      const u64 N = F->order() - 1;
      const auto lambda = F->subgroup_generator(numth::pi_part(N, PrimeSet{q}));
      if (fp.family == Family::four) {
        const u64 r = *fp.r;
        P = PGroup::extraspecial_dual(p, qd);
        const auto gamma = F->subgroup_generator(numth::pi_part(N, PrimeSet::of_divisors(q * r).complement()));
        const u64 x = detail::prime_field_element_of_order(p, r);
        gens.push_back({"gamma", act::es_semilinear(F, gamma, 0)});
        gens.push_back({"lambda_sigma", act::es_semilinear(F, lambda, 1)});
        gens.push_back({"xi", act::es_scalar(p, qd, x)});
        break;
      }
      const auto gamma = F->subgroup_generator(numth::pi_part(N, PrimeSet{q}.complement()));
      const u64 x = detail::prime_field_element_of_order(p, q);
      const auto g1 = act::es_semilinear(F, gamma, 0);
      const auto g2 = act::compose(act::es_semilinear(F, lambda, 1), act::es_scalar(p, qd, x));
      if (fp.family == Family::three) {
        P = PGroup::extraspecial_dual(p, qd);
        gens.push_back({"gamma", g1});
        gens.push_back({"lambda_xi_sigma", g2});
      } else {
        const unsigned d2 = static_cast<unsigned>(*fp.n - q);
        P = PGroup::central_product(PGroup::extraspecial_dual(p, qd), PGroup::extraspecial_dual(p, d2));
        gens.push_back({"gamma", act::es_block(g1, act::es_identity(p, d2))});
        gens.push_back({"lambda_xi_sigma", act::es_block(g2, act::es_scalar(p, d2, x))});
      }
      break;
    }
    case Family::no_prime: {
      F = gf::make_field(p, static_cast<unsigned>(*fp.n));
      P = PGroup::heisenberg(F);
      NoPrimeSearch S;
      gens = detail::no_prime_generators(*P, fp, S);
      search = S;
      break;
    }
    case Family::fitting_two: {
      F = gf::make_field(p, 2);
      P = PGroup::extraspecial_dual(p, 2);
      const auto lambda = F->subgroup_generator(8);
      gens.push_back({"zeta_lambda2", act::compose(act::es_zeta(p, 2, p - 1),
                                                   act::es_semilinear(F, F->mul(lambda, lambda), 0))});
      gens.push_back({"lambda_sigma", act::es_semilinear(F, lambda, 1)});
      break;
    }
  }
  Instance I = assemble(fp, *P, std::move(gens), h_cap);
  I.field = F;
  I.build_checks = std::move(checks);
  I.search = search;
  return I;
}

// ---- predictions -----------------------------------------------------------

struct Prediction {
  unsigned dl = 4;
  std::optional<unsigned> fh;
  std::vector<u64> cd;  // ascending
  bool operator==(const Prediction&) const = default;
};

inline std::vector<u64> sorted_set(std::vector<u64> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

/// Closed-form degree sets and Fitting heights, per family.
inline Prediction theorem_profile(const FamilyParams& fp) {
  validate(fp);
  using numth::checked_mul;
  using numth::checked_pow;
  using numth::pi_part;
  const u64 p = fp.p;
  Prediction r;
  r.fh = 3;
  switch (fp.family) {
    case Family::one:
    case Family::two: {
      const u64 q = *fp.q;
      const u64 pq = checked_pow(p, static_cast<unsigned>(q));
      const u64 X = pi_part((pq - 1) / (p - 1), PrimeSet{q}.complement()) * pi_part(p - 1, PrimeSet{q}) * q;
      if (fp.family == Family::one) r.cd = {1, q, X, checked_mul(pq, X)};
      else r.cd = {1, q, checked_mul(X, *fp.r), checked_mul(pq, X)};
      break;
    }
    case Family::three:
    case Family::five: {
      const u64 q = *fp.q;
      const u64 pq = checked_pow(p, static_cast<unsigned>(q));
      const u64 Y = pi_part(pq - 1, PrimeSet{q}.complement()) * pi_part(p - 1, PrimeSet{q}) * q;
      const u64 top = fp.family == Family::three ? pq : checked_pow(p, static_cast<unsigned>(*fp.n));
      r.cd = {1, q, Y, checked_mul(top, q)};
      break;
    }
    case Family::four: {
      const u64 q = *fp.q, rr = *fp.r;
      const u64 pq = checked_pow(p, static_cast<unsigned>(q));
      const u64 Z = pi_part(pq - 1, PrimeSet::of_divisors(q * rr).complement()) * pi_part(p - 1, PrimeSet{q}) * q * rr;
      r.cd = {1, q, Z, checked_mul(pq, rr)};
      break;
    }
    case Family::no_prime: {
      const u64 n = *fp.n, m = fp.m.value_or(n);
      const u64 pn = checked_pow(p, static_cast<unsigned>(n));
      const u64 k = pi_part(pn - 1, numth::zsigmondy_primes(p, static_cast<unsigned>(n)));
      r.cd = {1, n, checked_mul(k, m), checked_mul(pn, checked_mul(k, m))};
      break;
    }
    case Family::fitting_two:
      r.cd = {1, 2, 8, checked_mul(2, checked_mul(p, p))};
      r.fh = 2;
      break;
  }
  r.cd = sorted_set(r.cd);
  return r;
}

// ---- the certificate -------------------------------------------------------

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
  std::vector<u64> witness;  // coordinates of an offending element, when there is one
};

struct CertOptions {
  std::size_t max_order = grp::kDefaultOrderCap;  // enumeration cap for P and its subgroups
  std::size_t max_classes = chardeg::kDefaultClassCap;
  std::size_t aut_samples = 1000;
  // Dixon splitting is quartic in the class count; past this the form-based check is used
  std::size_t direct_ramification_classes = 400;
};

struct Certificate {
  std::vector<Check> checks;
  int case_tag = 0;  // 1 or 2 once dispatched
  u64 H_order = 0;
  u64 C_order = 0;
  unsigned D_dim = 0;  // |D| = p^D_dim
  unsigned derived_dim = 0;
  u64 a = 0;
  unsigned alpha = 0;
  std::vector<u64> cd_H;
  std::string cd_H_method;
  std::string ramification_method;
  bool H_derived_in_C = false;
  std::optional<Prediction> prediction;

  bool passed() const {
    if (checks.empty() || case_tag == 0) return false;
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
  }
  const Check* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

namespace detail {
inline std::vector<u64> to_u64(const grp::Elem& e) { return {e.begin(), e.end()}; }
}  // namespace detail

struct RamificationVerdict {
  bool holds = false;
  std::string method;
  std::vector<u64> witness;
};

/// Nonlinear characters of P fully ramified over D, by the character check on the
/// enumerated groups.
inline RamificationVerdict ramification_direct(const PGroup& P, const act::CoordSubgroup& D,
                                               const CertOptions& opt = {}) {
  RamificationVerdict v;
  v.method = "direct";
  const auto Pg = P.enumerate(opt.max_order);
  const auto mc = chardeg::compute_characters(Pg, 0, opt.max_classes);
  const auto Dg = act::enumerate(D, P, opt.max_order);
  const auto md = chardeg::compute_characters(Dg, mc.modulus(), opt.max_classes);
  v.holds = true;
  for (std::size_t chi = 0; chi < mc.chars.size(); ++chi) {
    if (mc.chars[chi].degree == 1) continue;
    if (!chardeg::is_fully_ramified(mc, chi, md)) {
      v.holds = false;
      v.witness = {chi, mc.chars[chi].degree};
      break;
    }
  }
  return v;
}

/// Structural form: |C_P(x)| = |P:P'| for all x outside D (commutator-form rank)
/// and conjugation by P preserves every conjugacy class of D, so each theta in
/// Irr(D) is P-invariant.
inline RamificationVerdict ramification_structural(const PGroup& P, const act::CoordSubgroup& D,
                                                   u64 enumeration_limit = 20'000'000) {
  RamificationVerdict v;
  v.method = "structural";
  const u64 p = P.p();
  if (!D.contains_derived(P)) {
    // some central element lies outside D and has |C_P(x)| = |P|
    for (unsigned t = 0; t < P.zdim(); ++t) {
      pgrp::Vec z(P.zdim(), 0);
      z[t] = 1;
      if (!in_span(D.z, z, p)) {
        v.witness = detail::to_u64(P.encode(pgrp::Vec(P.xdim(), 0), z));
        return v;
      }
    }
  }
  std::string how;
  if (auto bad = P.degenerate_outside(D.x, &how, enumeration_limit)) {
    v.method += " (" + how + ")";
    v.witness = detail::to_u64(P.encode(*bad, pgrp::Vec(P.zdim(), 0)));
    return v;
  }
  v.method += " (" + how + ")";
  // class invariance: B(u, e_g) must lie in B(u, D) for every u in D/P' and generator e_g
  const std::size_t dd = D.x.size();
  if (numth::checked_pow(p, static_cast<unsigned>(dd)) > enumeration_limit)
    throw Error(Errc::UnsupportedKind, "D too large for the invariance check");
  const u64 total = numth::checked_pow(p, static_cast<unsigned>(dd));
  for (u64 idx = 1; idx < total; ++idx) {
    pgrp::Vec u(P.xdim(), 0);
    u64 t = idx;
    for (std::size_t k = 0; k < dd; ++k) {
      const u64 c = t % p;
      t /= p;
      for (unsigned i = 0; i < P.xdim(); ++i) u[i] = (u[i] + c * D.x[k][i]) % p;
    }
    std::vector<pgrp::Vec> image;
    for (const auto& w : D.x) image.push_back(P.form(u, w));
    image = span_basis(image, P.zdim(), p);
    for (unsigned g = 0; g < P.xdim(); ++g) {
      pgrp::Vec e(P.xdim(), 0);
      e[g] = 1;
      if (!in_span(image, P.form(u, e), p)) {
        v.witness = detail::to_u64(P.encode(u, pgrp::Vec(P.zdim(), 0)));
        return v;
      }
    }
  }
  v.holds = true;
  return v;
}

inline unsigned fitting_height_by_rule(const act::ActingGroup& H) {
  return 1 + grp::fitting_height(H.group);
}

inline Certificate lemma_certificate(const Instance& I, const CertOptions& opt = {}) {
  Certificate cert;
  const PGroup& P = I.P;
  const auto& H = I.H;
  const u64 p = P.p();
  cert.H_order = H.order();
  auto add = [&](std::string name, bool ok, std::string detail = {}, std::vector<u64> w = {}) {
    cert.checks.push_back({std::move(name), ok, std::move(detail), std::move(w)});
    return ok;
  };
  for (const auto& b : I.build_checks) add("build:" + b.name, b.passed, b.detail);

  // generators are automorphisms
  bool auts_ok = true;
  for (const auto& [name, f] : H.named) {
    const auto chk = act::check_automorphism(f, P, opt.aut_samples);
    if (!chk.ok()) {
      std::vector<u64> w;
      if (chk.witness) {
        w = detail::to_u64(chk.witness->first);
        const auto y = detail::to_u64(chk.witness->second);
        w.insert(w.end(), y.begin(), y.end());
      }
      auts_ok = add("automorphism", false,
                    name + (chk.structural ? ": not a homomorphism on sampled pair" : ": structural identity fails"), w);
      break;
    }
  }
  if (auts_ok) add("automorphism", true, std::to_string(H.named.size()) + " generators");

  // cd(P) = {1, p^alpha}
  try {
    const auto vz = P.vz_certificate();
    cert.alpha = vz.alpha;
    add("cd_P", vz.holds, "alpha = " + std::to_string(vz.alpha) + " via " + vz.method);
  } catch (const Error& e) {
    add("cd_P", false, e.what());
  }

  add("p_coprime_to_H", H.order() % p != 0, "|H| = " + std::to_string(H.order()));

  try {
    const auto cdh = character_degrees_of(H, opt.max_classes);
    cert.cd_H = cdh.degrees;
    cert.cd_H_method = cdh.method;
    const bool two = cdh.degrees.size() == 2;
    if (two) cert.a = cdh.degrees[1];
    std::string s;
    for (u64 d : cdh.degrees) s += (s.empty() ? "" : ",") + std::to_string(d);
    add("cd_H", two, "cd(H) = {" + s + "} via " + cdh.method);
  } catch (const Error& e) {
    add("cd_H", false, e.what());
  }

  const auto C = act::centralizer_C(H);
  const auto D = act::centralized_D(H, C, P);
  cert.C_order = C.order();
  cert.D_dim = static_cast<unsigned>(D.dim());
  cert.derived_dim = P.zdim();
  {
    const auto Hd = grp::commutator_subgroup(H.group, grp::whole(H.group), grp::whole(H.group));
    cert.H_derived_in_C = grp::is_subset(Hd, C);
  }

  if (C.order() == 1) {
    cert.case_tag = 1;
    const auto fr = act::frobenius_certificate(H, P, act::Target::P);
    add("frobenius_on_P", fr.holds, std::to_string(fr.checked) + " nonidentity elements",
        fr.witness ? detail::to_u64(*fr.witness) : std::vector<u64>{});
  } else {
    cert.case_tag = 2;
    add("C_abelian", grp::is_abelian(H.group, C), "|C| = " + std::to_string(C.order()));
    const bool proper = D.dim() < P.dim();
    add("D_proper", proper, "|D| = p^" + std::to_string(D.dim()));
    if (proper && D.contains_derived(P)) {
      const auto fr = act::frobenius_certificate(H, P, act::Target::P_mod_D, &D);
      add("frobenius_on_P_mod_D", fr.holds, std::to_string(fr.checked) + " nonidentity elements",
          fr.witness ? detail::to_u64(*fr.witness) : std::vector<u64>{});
    } else {
      add("frobenius_on_P_mod_D", false, "P/D not defined in quotient coordinates");
    }
    try {
      // |Irr(P)| >= |P:P'|, so the class cap rules out the direct check early
      const bool small = numth::pow_at_most(p, P.dim(), opt.max_order) &&
                         numth::checked_pow(p, P.xdim()) <=
                             std::min(opt.max_classes, opt.direct_ramification_classes);
      RamificationVerdict rv;
      if (small) {
        try {
          rv = ramification_direct(P, D, opt);
        } catch (const Error& e) {
          if (e.code() != Errc::ClassCapExceeded) throw;
          rv = ramification_structural(P, D);
        }
      } else {
        rv = ramification_structural(P, D);
      }
      cert.ramification_method = rv.method;
      add("fully_ramified", rv.holds, rv.method, rv.witness);
    } catch (const Error& e) {
      add("fully_ramified", false, e.what());
    }
    const auto notC = [&C](Index h) { return !C.contains(h); };
    const auto fd = act::frobenius_certificate(H, P, act::Target::D, &D, notC);
    add("H_mod_C_frobenius_on_D", fd.holds, std::to_string(fd.checked) + " elements outside C",
        fd.witness ? detail::to_u64(*fd.witness) : std::vector<u64>{});
    if (D.dim() > P.zdim())
      add("index_H_C_equals_a", cert.a != 0 && H.order() / C.order() == cert.a,
          "|H:C| = " + std::to_string(H.order() / C.order()) + ", a = " + std::to_string(cert.a));
  }

  if (cert.passed()) {
    Prediction pr;
    const u64 top = numth::checked_mul(H.order() / C.order(), numth::checked_pow(p, cert.alpha));
    pr.cd = sorted_set({1, cert.a, H.order(), top});
    if (act::action_kernel(H).order() == 1) pr.fh = fitting_height_by_rule(H);
    cert.prediction = pr;
  }
  return cert;
}

// ---- oracle ----------------------------------------------------------------

enum class OracleStatus { verified, failed, skipped };

inline const char* oracle_status_name(OracleStatus s) {
  switch (s) {
    case OracleStatus::verified: return "VERIFIED";
    case OracleStatus::failed: return "FAILED";
    case OracleStatus::skipped: return "SKIPPED_ORACLE";
  }
  return "?";
}

struct OracleResult {
  OracleStatus status = OracleStatus::skipped;
  std::string reason;
  std::vector<u64> degrees;  // multiset, ascending
  std::vector<u64> degree_set;
  unsigned dl = 0;
  unsigned fh = 0;
  u64 modulus = 0;
  std::size_t class_count = 0;
  std::vector<std::string> diffs;
  double seconds = 0;
};

/// Enumerate G = P x| H and compute degrees, derived length and Fitting height.
inline OracleResult run_oracle(const Instance& I, const CertOptions& opt = {}) {
  OracleResult r;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    if (!I.order_at_most(opt.max_order)) {
      r.reason = "|G| = " + I.order_string() + " exceeds max order " +
                 std::to_string(opt.max_order);
      return r;
    }
    const auto G = I.semidirect().enumerate(opt.max_order);
    if (G.classes().count() > opt.max_classes) {
      r.reason = std::to_string(G.classes().count()) + " classes exceed max classes " + std::to_string(opt.max_classes);
      return r;
    }
    const auto rep = chardeg::degrees(G, opt.max_classes);
    r.degrees = rep.degrees;
    r.degree_set = rep.degree_set;
    r.modulus = rep.modulus;
    r.class_count = rep.class_count;
    r.dl = grp::derived_length(G);
    r.fh = grp::fitting_height(G);
    r.status = OracleStatus::verified;
  } catch (const Error& e) {
    r.status = OracleStatus::skipped;
    r.reason = e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

/// Compare oracle output against a prediction; sets status to FAILED on any mismatch.
inline void compare(OracleResult& r, const Prediction& pr) {
  if (r.status != OracleStatus::verified) return;
  auto join = [](const std::vector<u64>& v) {
    std::string s;
    for (u64 x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
    return "{" + s + "}";
  };
  if (r.degree_set != pr.cd) r.diffs.push_back("cd: oracle " + join(r.degree_set) + " vs predicted " + join(pr.cd));
  if (r.dl != pr.dl) r.diffs.push_back("dl: oracle " + std::to_string(r.dl) + " vs predicted " + std::to_string(pr.dl));
  if (pr.fh && r.fh != *pr.fh)
    r.diffs.push_back("fh: oracle " + std::to_string(r.fh) + " vs predicted " + std::to_string(*pr.fh));
  if (!r.diffs.empty()) r.status = OracleStatus::failed;
}

inline OracleResult verify_against_oracle(const Instance& I, const Certificate& cert, const CertOptions& opt = {}) {
  OracleResult r;
  if (!cert.passed() || !cert.prediction) {
    r.status = OracleStatus::failed;
    r.reason = "certificate did not pass";
    return r;
  }
  r = run_oracle(I, opt);
  compare(r, *cert.prediction);
  return r;
}

}  // namespace solvdeg::fam
