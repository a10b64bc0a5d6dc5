#pragma once
// Character degrees by the class-algebra method over GF(l): central characters are
// the simultaneous eigenvectors of the class matrices, and each degree is recovered
// exactly from sum_k w(k) w(k^-1) / |K_k| = |G| / d^2 because l > |G|.

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "solvdeg/group.hpp"
#include "solvdeg/modmat.hpp"
#include "solvdeg/numth.hpp"
#include "solvdeg/poly.hpp"

namespace solvdeg::chardeg {

using grp::Group;
using grp::Index;

inline constexpr std::size_t kDefaultClassCap = 3000;

/// Smallest prime l with l = 1 mod exponent and l > order.
inline u64 choose_modulus(u64 order, u64 exponent) {
  if (exponent == 0) throw Error(Errc::InvalidParams, "exponent must be positive");
  u64 l = (order / exponent) * exponent + 1;
  while (l <= order) l += exponent;
  for (;; l += exponent)
    if (numth::is_prime(l)) return l;
}

inline u64 choose_modulus(const Group& G) { return choose_modulus(G.order(), grp::exponent(G)); }

/// Class matrices M_i[j][c] = a[i][j][c] = #{x in K_i : x^-1 z_c in K_j}, built on
/// first use so only the matrices the splitting touches are ever stored.
class ClassAlgebra {
 public:
  ClassAlgebra() = default;
  ClassAlgebra(Group G, u64 ell) : group_(std::move(G)), ell(ell) {
    classes = &group_.classes();
    group_order = group_.order();
    k = classes->count();
    cache_ = std::make_shared<Cache>();
    cache_->mats.resize(k);
  }

  const grp::ConjClasses* classes = nullptr;
  u64 group_order = 0;
  std::size_t k = 0;
  u64 ell = 0;

  const std::vector<std::uint32_t>& matrix(std::size_t i) const {
    std::lock_guard<std::mutex> lock(cache_->mu);
    auto& M = cache_->mats[i];
    if (M.empty()) M = build(i);
    return M;
  }

  // uncached; the splitting loop reads each matrix once
  std::vector<std::uint32_t> build(std::size_t i) const {
    std::vector<std::uint32_t> M(k * k, 0);
    const auto& cc = *classes;
    for (std::size_t c = 0; c < k; ++c) {
      const Index z = cc.reps[c];
      for (Index x : cc.members[i]) ++M[cc.class_of[group_.mul(group_.inv(x), z)] * k + c];
    }
    return M;
  }

  u64 at(std::size_t i, std::size_t j, std::size_t c) const { return matrix(i)[j * k + c]; }

  // row j of M_i alone: |K_c| a_ijc = |K_j| #{x in K_i : x y_j in K_c}, one pass over K_i
  std::vector<u64> row(std::size_t i, std::size_t j) const {
    const auto& cc = *classes;
    std::vector<u64> cnt(k, 0);
    const Index y = cc.reps[j];
    for (Index x : cc.members[i]) ++cnt[cc.class_of[group_.mul(x, y)]];
    for (std::size_t c = 0; c < k; ++c) {
      if (!cnt[c]) continue;
      const u64 t = cnt[c] * cc.sizes[j];
      if (t % cc.sizes[c]) throw Error(Errc::SplitFailure, "class structure constant is not integral");
      cnt[c] = t / cc.sizes[c];
    }
    return cnt;
  }

 private:
  struct Cache {
    std::mutex mu;
    std::vector<std::vector<std::uint32_t>> mats;
  };
  Group group_;
  std::shared_ptr<Cache> cache_;
};

inline ClassAlgebra class_constants(const Group& G, u64 ell = 0,
                                    std::size_t class_cap = kDefaultClassCap) {
  if (!G.valid()) throw Error(Errc::NotEnumerated, "group is not enumerated");
  const auto& cc = G.classes();
  if (cc.count() > class_cap)
    throw Error(Errc::ClassCapExceeded, std::to_string(cc.count()) + " classes exceed cap " +
                                            std::to_string(class_cap));
  return ClassAlgebra(G, ell ? ell : choose_modulus(G));
}

struct CentralCharacter {
  std::vector<u64> omega;  // indexed by class id, omega[identity class] = 1
  u64 degree = 0;
};

namespace detail {

inline poly::Poly charpoly(ModMatrix H) {
  const std::size_t n = H.rows();
  const u64 m = H.mod();
  for (std::size_t c = 1; c + 1 < n; ++c) {
    std::size_t i = c;
    while (i < n && H(i, c - 1) == 0) ++i;
    if (i == n) continue;
    if (i != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(H(i, j), H(c, j));
      for (std::size_t j = 0; j < n; ++j) std::swap(H(j, i), H(j, c));
    }
    const u64 inv = numth::invmod(H(c, c - 1), m);
    for (std::size_t r = c + 1; r < n; ++r) {
      const u64 u = H(r, c - 1) * inv % m;
      if (!u) continue;
      for (std::size_t j = 0; j < n; ++j) H(r, j) = (H(r, j) + (m - u) * H(c, j)) % m;
      for (std::size_t j = 0; j < n; ++j) H(j, c) = (H(j, c) + u * H(j, r)) % m;
    }
  }
  std::vector<poly::Poly> p(n + 1);
  p[0] = {1};
  for (std::size_t k = 0; k < n; ++k) {
    poly::Poly next = poly::mul(poly::Poly{(m - H(k, k)) % m, 1}, p[k], m);
    u64 t = 1;
    for (std::size_t i = k; i-- > 0;) {
      t = t * H(i + 1, i) % m;
      const u64 coef = H(i, k) * t % m;
      if (!coef) continue;
      next = poly::sub(next, poly::mul(poly::Poly{coef}, p[i], m), m);
    }
    p[k + 1] = std::move(next);
  }
  return p[n];
}

using Basis = std::vector<std::vector<u64>>;

inline Basis rref_basis(const Basis& vecs, std::size_t dim, u64 m) { return span_basis(vecs, dim, m); }

inline std::vector<std::size_t> pivots_of(const Basis& b) {
  std::vector<std::size_t> piv;
  for (const auto& row : b) {
    std::size_t j = 0;
    while (row[j] == 0) ++j;
    piv.push_back(j);
  }
  return piv;
}

}  // namespace detail

/// Simultaneous eigenvectors of the class matrices, split in ascending class order.
inline std::vector<CentralCharacter> central_characters(const ClassAlgebra& A) {
  using detail::Basis;
  const std::size_t k = A.k;
  const u64 m = A.ell;
  const auto& cc = *A.classes;
  std::vector<Basis> spaces;
  {
    Basis full(k, std::vector<u64>(k, 0));
    for (std::size_t i = 0; i < k; ++i) full[i][i] = 1;
    spaces.push_back(std::move(full));
  }
  auto all_split = [&] {
    return std::all_of(spaces.begin(), spaces.end(), [](const Basis& b) { return b.size() == 1; });
  };
  for (std::size_t i = 0; i < k && !all_split(); ++i) {
    std::vector<Basis> next;
    // only the pivot rows of unsplit spaces are read
    std::unordered_map<std::size_t, std::vector<u64>> rows;
    auto row = [&](std::size_t j) -> const std::vector<u64>& {
      auto it = rows.find(j);
      if (it == rows.end()) it = rows.emplace(j, A.row(i, j)).first;
      return it->second;
    };
    for (auto& S : spaces) {
      const std::size_t d = S.size();
      if (d == 1) {
        next.push_back(std::move(S));
        continue;
      }
      const auto piv = detail::pivots_of(S);
      ModMatrix B(d, d, m);
      for (std::size_t s = 0; s < d; ++s) {
        const auto& Mj = row(piv[s]);
        for (std::size_t t = 0; t < d; ++t) {
          u64 y = 0;
          for (std::size_t c = 0; c < k; ++c)
            if (S[t][c] && Mj[c]) y = (y + (Mj[c] % m) * S[t][c]) % m;
          B(s, t) = y;
        }
      }
      const auto eig = poly::roots(detail::charpoly(B), m);
      if (eig.size() <= 1) {
        next.push_back(std::move(S));
        continue;
      }
      std::size_t total = 0;
      for (u64 r : eig) {
        const auto ker = (B - ModMatrix::scalar(d, r, m)).kernel();
        Basis sub;
        for (const auto& coords : ker) {
          std::vector<u64> v(k, 0);
          for (std::size_t t = 0; t < d; ++t)
            if (coords[t])
              for (std::size_t c = 0; c < k; ++c) v[c] = (v[c] + coords[t] * S[t][c]) % m;
          sub.push_back(std::move(v));
        }
        total += sub.size();
        next.push_back(detail::rref_basis(sub, k, m));
      }
      if (total != d) throw Error(Errc::SplitFailure, "class matrix not diagonalizable over GF(l)");
    }
    spaces = std::move(next);
  }
  if (!all_split()) throw Error(Errc::SplitFailure, "eigenspaces did not split to dimension 1");

  std::vector<CentralCharacter> out;
  for (const auto& S : spaces) {
    std::vector<u64> w = S.front();
    const u64 w0 = w[cc.identity_class];
    if (!w0) throw Error(Errc::SplitFailure, "eigenvector vanishes at the identity class");
    const u64 inv0 = numth::invmod(w0, m);
    for (auto& x : w) x = x * inv0 % m;
    u64 s = 0;
    for (std::size_t c = 0; c < k; ++c)
      s = (s + w[c] * w[cc.inverse_class[c]] % m * numth::invmod(cc.sizes[c] % m, m)) % m;
    if (!s) throw Error(Errc::SplitFailure, "zero degree norm");
    const u64 d2 = (A.group_order % m) * numth::invmod(s, m) % m;
    const u64 d = numth::isqrt(d2);
    if (d * d != d2 || d2 > A.group_order || A.group_order % d != 0)
      throw Error(Errc::SplitFailure, "degree residue is not a valid square");
    out.push_back({std::move(w), d});
  }
  std::sort(out.begin(), out.end(), [](const CentralCharacter& a, const CentralCharacter& b) {
    return a.degree != b.degree ? a.degree < b.degree : a.omega < b.omega;
  });
  return out;
}

struct DegreeReport {
  std::vector<u64> degrees;     // ascending multiset
  std::vector<u64> degree_set;  // ascending, distinct
  u64 linear_count = 0;
  u64 modulus = 0;
  std::size_t class_count = 0;
};

inline DegreeReport make_report(const std::vector<CentralCharacter>& chars, u64 order, u64 ell) {
  DegreeReport r;
  r.modulus = ell;
  r.class_count = chars.size();
  u64 sum = 0;
  for (const auto& c : chars) {
    r.degrees.push_back(c.degree);
    sum += c.degree * c.degree;
    if (c.degree == 1) ++r.linear_count;
  }
  std::sort(r.degrees.begin(), r.degrees.end());
  r.degree_set = r.degrees;
  r.degree_set.erase(std::unique(r.degree_set.begin(), r.degree_set.end()), r.degree_set.end());
  if (sum != order) throw Error(Errc::SplitFailure, "sum of squared degrees differs from |G|");
  return r;
}

/// Enumerated group together with its central characters over GF(l).
struct ModularCharacters {
  Group group;
  ClassAlgebra algebra;
  std::vector<CentralCharacter> chars;

  /// chi(g) = d * omega(class(g)) / |K(g)| mod l.
  u64 value(std::size_t chi, Index g) const {
    const auto& cc = group.classes();
    const std::size_t c = cc.class_of[g];
    const u64 m = algebra.ell;
    return chars[chi].degree % m * chars[chi].omega[c] % m * numth::invmod(cc.sizes[c] % m, m) % m;
  }
  u64 modulus() const { return algebra.ell; }
};

inline ModularCharacters compute_characters(const Group& G, u64 ell = 0,
                                            std::size_t class_cap = kDefaultClassCap) {
  ModularCharacters mc;
  mc.group = G;
  mc.algebra = class_constants(mc.group, ell, class_cap);
  mc.chars = central_characters(mc.algebra);
  return mc;
}

inline DegreeReport degrees(const Group& G, std::size_t class_cap = kDefaultClassCap) {
  const auto mc = compute_characters(G, 0, class_cap);
  return make_report(mc.chars, G.order(), mc.modulus());
}

namespace detail {
inline void check_pair(const ModularCharacters& P, const ModularCharacters& D) {
  if (P.modulus() != D.modulus())
    throw Error(Errc::ModulusMismatch, "subgroup characters use a different modulus");
  if (P.modulus() <= P.group.order())
    throw Error(Errc::ModulusMismatch, "modulus must exceed |P|");
}
inline u64 recover(u64 residue, u64 bound, const char* what) {
  if (residue > bound) throw Error(Errc::SplitFailure, std::string(what) + " out of range");
  return residue;
}
}  // namespace detail

/// <chi_D, chi_D> recovered as an integer in [1, |P:D|].
inline u64 restriction_norm(const ModularCharacters& P, std::size_t chi, const ModularCharacters& D) {
  detail::check_pair(P, D);
  const u64 m = P.modulus();
  u64 s = 0;
  for (const auto& e : D.group.elements()) {
    const Index x = P.group.index(e);
    s = (s + P.value(chi, x) * P.value(chi, P.group.inv(x))) % m;
  }
  s = s * numth::invmod(D.group.order() % m, m) % m;
  return detail::recover(s, P.group.order() / D.group.order(), "restriction norm");
}

/// <chi_D, theta> for every theta in Irr(D), in D's character order.
inline std::vector<u64> constituent_multiplicities(const ModularCharacters& P, std::size_t chi,
                                                   const ModularCharacters& D) {
  detail::check_pair(P, D);
  const u64 m = P.modulus();
  const u64 inv_d = numth::invmod(D.group.order() % m, m);
  std::vector<u64> out;
  for (std::size_t th = 0; th < D.chars.size(); ++th) {
    u64 s = 0;
    for (Index y = 0; y < D.group.order(); ++y) {
      const Index x = P.group.index(D.group.elem(y));
      s = (s + P.value(chi, x) * D.value(th, D.group.inv(y))) % m;
    }
    out.push_back(detail::recover(s * inv_d % m, P.chars[chi].degree, "multiplicity"));
  }
  return out;
}

inline bool is_fully_ramified(const ModularCharacters& P, std::size_t chi, const ModularCharacters& D) {
  const u64 index = P.group.order() / D.group.order();
  if (restriction_norm(P, chi, D) != index) return false;
  const auto mult = constituent_multiplicities(P, chi, D);
  return std::count_if(mult.begin(), mult.end(), [](u64 x) { return x != 0; }) == 1;
}

}  // namespace solvdeg::chardeg
