#pragma once
// Finite groups over canonical-form elements: closure enumeration, conjugacy
// classes, commutator series, Fitting subgroup and quotients.
//
// Conventions: [x, y] = x^-1 y^-1 x y; conjugation x^g = g^-1 x g. Elements are
// kept sorted lexicographically by their encoding, so index order is the fixed
// total order on elements.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <unordered_map>
#include <vector>

#include "solvdeg/error.hpp"
#include "solvdeg/numth.hpp"

namespace solvdeg::grp {

using Elem = std::vector<std::uint32_t>;
using Index = std::uint32_t;

struct ElemHash {
  std::size_t operator()(const Elem& e) const noexcept {
    std::size_t h = 0xcbf29ce484222325ull;
    for (auto x : e) {
      h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      h *= 0x100000001b3ull;
    }
    return h;
  }
};

struct GroupOps {
  Elem identity;
  std::function<Elem(const Elem&, const Elem&)> mul;
  std::function<Elem(const Elem&)> inv;
};

inline constexpr std::size_t kDefaultOrderCap = 2'000'000;
inline constexpr std::size_t kTableLimit = 2048;

struct ConjClasses {
  std::vector<Index> reps;           // minimal element of each class
  std::vector<std::size_t> sizes;
  std::vector<std::uint32_t> class_of;  // element index -> class id
  std::vector<std::uint32_t> inverse_class;
  std::vector<std::vector<Index>> members;
  std::uint32_t identity_class = 0;

  std::size_t count() const { return reps.size(); }
};

/// An enumerated finite group. Immutable; copies share storage.
class Group {
  struct Impl {
    GroupOps ops;
    std::vector<Elem> elems;
    std::unordered_map<Elem, Index, ElemHash> index;
    std::vector<Index> gens;
    std::vector<Index> inv;
    std::vector<Index> table;
    Index identity = 0;
    mutable std::once_flag classes_once;
    mutable std::shared_ptr<const ConjClasses> classes;
  };

 public:
  Group() = default;

  /// Breadth-first closure of `gens` under right multiplication.
  static Group closure(GroupOps ops, const std::vector<Elem>& gens,
                       std::size_t cap = kDefaultOrderCap) {
    std::unordered_map<Elem, Index, ElemHash> seen;
    std::vector<Elem> order;
    seen.emplace(ops.identity, 0);
    order.push_back(ops.identity);
    for (std::size_t head = 0; head < order.size(); ++head) {
      for (const auto& g : gens) {
        Elem y = ops.mul(order[head], g);
        if (seen.count(y)) continue;
        if (order.size() >= cap)
          throw Error(Errc::ClosureLimitExceeded, "closure exceeds cap " + std::to_string(cap));
        seen.emplace(y, static_cast<Index>(order.size()));
        order.push_back(std::move(y));
      }
    }
    std::sort(order.begin(), order.end());
    auto impl = std::make_shared<Impl>();
    impl->ops = std::move(ops);
    impl->elems = std::move(order);
    impl->index.reserve(impl->elems.size());
    for (Index i = 0; i < impl->elems.size(); ++i) impl->index.emplace(impl->elems[i], i);
    impl->identity = impl->index.at(impl->ops.identity);
    for (const auto& g : gens) {
      const Index gi = impl->index.at(g);
      if (gi != impl->identity && std::find(impl->gens.begin(), impl->gens.end(), gi) == impl->gens.end())
        impl->gens.push_back(gi);
    }
    const std::size_t n = impl->elems.size();
    if (n <= kTableLimit) {
      impl->table.resize(n * n);
      for (Index a = 0; a < n; ++a)
        for (Index b = 0; b < n; ++b)
          impl->table[a * n + b] = impl->index.at(impl->ops.mul(impl->elems[a], impl->elems[b]));
    }
    impl->inv.resize(n);
    for (Index a = 0; a < n; ++a) impl->inv[a] = impl->index.at(impl->ops.inv(impl->elems[a]));
    Group G;
    G.impl_ = std::move(impl);
    return G;
  }

  bool valid() const { return static_cast<bool>(impl_); }
  std::size_t order() const { return impl_->elems.size(); }
  const Elem& elem(Index i) const { return impl_->elems[i]; }
  const std::vector<Elem>& elements() const { return impl_->elems; }
  const GroupOps& ops() const { return impl_->ops; }
  Index identity() const { return impl_->identity; }
  const std::vector<Index>& generators() const { return impl_->gens; }

  std::optional<Index> find(const Elem& e) const {
    auto it = impl_->index.find(e);
    if (it == impl_->index.end()) return std::nullopt;
    return it->second;
  }
  Index index(const Elem& e) const {
    auto it = impl_->index.find(e);
    if (it == impl_->index.end()) throw Error(Errc::InvalidParams, "element not in group");
    return it->second;
  }

  Index mul(Index a, Index b) const {
    if (!impl_->table.empty()) return impl_->table[static_cast<std::size_t>(a) * order() + b];
    return impl_->index.at(impl_->ops.mul(impl_->elems[a], impl_->elems[b]));
  }
  Index inv(Index a) const { return impl_->inv[a]; }
  Index conj(Index x, Index g) const { return mul(mul(inv(g), x), g); }
  Index commutator(Index x, Index y) const { return mul(mul(inv(x), inv(y)), mul(x, y)); }

  Index power(Index x, std::uint64_t k) const {
    Index r = identity(), b = x;
    while (k) {
      if (k & 1) r = mul(r, b);
      b = mul(b, b);
      k >>= 1;
    }
    return r;
  }

  const ConjClasses& classes() const;

 private:
  std::shared_ptr<const Impl> impl_;
};

/// A subgroup of an enumerated group: sorted member indices plus generators.
struct Subgroup {
  std::vector<Index> members;
  std::vector<Index> gens;
  std::vector<char> mask;

  std::size_t order() const { return members.size(); }
  bool contains(Index i) const { return mask[i] != 0; }
  bool operator==(const Subgroup& o) const { return members == o.members; }
};

namespace detail {
inline Subgroup bfs(const Group& G, std::vector<Index> gens) {
  Subgroup S;
  S.mask.assign(G.order(), 0);
  S.mask[G.identity()] = 1;
  S.members.push_back(G.identity());
  for (std::size_t head = 0; head < S.members.size(); ++head)
    for (Index g : gens) {
      const Index y = G.mul(S.members[head], g);
      if (!S.mask[y]) {
        S.mask[y] = 1;
        S.members.push_back(y);
      }
    }
  std::sort(S.members.begin(), S.members.end());
  S.gens = std::move(gens);
  return S;
}
}  // namespace detail

inline Subgroup trivial(const Group& G) { return detail::bfs(G, {}); }
inline Subgroup whole(const Group& G) {
  Subgroup S;
  S.members.resize(G.order());
  std::iota(S.members.begin(), S.members.end(), Index{0});
  S.mask.assign(G.order(), 1);
  S.gens = G.generators();
  return S;
}

/// Subgroup generated by `gens`; redundant generators are dropped.
inline Subgroup generate(const Group& G, const std::vector<Index>& gens) {
  Subgroup S = trivial(G);
  for (Index g : gens) {
    if (S.contains(g)) continue;
    auto ng = S.gens;
    ng.push_back(g);
    S = detail::bfs(G, std::move(ng));
  }
  return S;
}

inline Subgroup extend(const Group& G, const Subgroup& S, Index g) {
  if (S.contains(g)) return S;
  auto ng = S.gens;
  ng.push_back(g);
  return detail::bfs(G, std::move(ng));
}

inline Subgroup from_members(const Group& G, std::vector<Index> members) {
  std::sort(members.begin(), members.end());
  Subgroup S = generate(G, members);
  if (S.members != members) throw Error(Errc::InvalidParams, "member set is not a subgroup");
  return S;
}

inline bool is_subset(const Subgroup& A, const Subgroup& B) {
  for (Index a : A.members)
    if (!B.contains(a)) return false;
  return true;
}

/// Smallest subgroup containing X and normalized by U.
inline Subgroup normal_closure(const Group& G, const Subgroup& U, const std::vector<Index>& X) {
  Subgroup S = generate(G, X);
  bool changed = true;
  while (changed) {
    changed = false;
    const auto sg = S.gens;
    for (Index s : sg)
      for (Index u : U.gens) {
        const Index c = G.conj(s, u);
        if (!S.contains(c)) {
          S = extend(G, S, c);
          changed = true;
        }
      }
  }
  return S;
}

inline Subgroup normal_closure(const Group& G, const std::vector<Index>& X) {
  return normal_closure(G, whole(G), X);
}

inline bool is_normal(const Group& G, const Subgroup& N, const Subgroup& U) {
  for (Index n : N.gens)
    for (Index u : U.gens)
      if (!N.contains(G.conj(n, u))) return false;
  return true;
}
inline bool is_normal(const Group& G, const Subgroup& N) { return is_normal(G, N, whole(G)); }

/// [A, B] as the normal closure in <A, B> of the generator commutators.
inline Subgroup commutator_subgroup(const Group& G, const Subgroup& A, const Subgroup& B) {
  std::vector<Index> comms;
  for (Index a : A.gens)
    for (Index b : B.gens) {
      const Index c = G.commutator(a, b);
      if (c != G.identity()) comms.push_back(c);
    }
  Subgroup U;
  if (is_subset(A, B)) U = B;
  else if (is_subset(B, A)) U = A;
  else {
    auto all = A.gens;
    all.insert(all.end(), B.gens.begin(), B.gens.end());
    U = generate(G, all);
  }
  return normal_closure(G, U, comms);
}

inline bool is_abelian(const Group& G, const Subgroup& S) {
  for (Index a : S.gens)
    for (Index b : S.gens)
      if (G.mul(a, b) != G.mul(b, a)) return false;
  return true;
}

/// G = G^(0) > G' > G'' > ... > 1.
inline std::vector<Subgroup> derived_series(const Group& G, const Subgroup& S) {
  std::vector<Subgroup> series{S};
  while (series.back().order() > 1) {
    Subgroup next = commutator_subgroup(G, series.back(), series.back());
    if (next.order() == series.back().order())
      throw Error(Errc::InvalidParams, "derived series stabilizes above 1 (group not solvable)");
    series.push_back(std::move(next));
  }
  return series;
}
inline std::vector<Subgroup> derived_series(const Group& G) { return derived_series(G, whole(G)); }

inline unsigned derived_length(const Group& G) {
  return static_cast<unsigned>(derived_series(G).size() - 1);
}

inline std::vector<Subgroup> lower_central_series(const Group& G, const Subgroup& S) {
  std::vector<Subgroup> series{S};
  while (series.back().order() > 1) {
    Subgroup next = commutator_subgroup(G, series.back(), S);
    if (next.order() == series.back().order()) break;
    series.push_back(std::move(next));
  }
  return series;
}
inline std::vector<Subgroup> lower_central_series(const Group& G) {
  return lower_central_series(G, whole(G));
}

inline bool is_nilpotent(const Group& G, const Subgroup& S) {
  return lower_central_series(G, S).back().order() == 1;
}
inline bool is_nilpotent(const Group& G) { return is_nilpotent(G, whole(G)); }

inline std::uint64_t element_order(const Group& G, Index x) {
  std::uint64_t k = 1;
  for (Index y = x; y != G.identity(); y = G.mul(y, x)) ++k;
  return k;
}

inline const ConjClasses& Group::classes() const {
  std::call_once(impl_->classes_once, [this] {
    const std::size_t n = order();
    auto cc = std::make_shared<ConjClasses>();
    constexpr std::uint32_t kUnset = ~std::uint32_t{0};
    std::vector<std::uint32_t> raw(n, kUnset);
    std::vector<std::vector<Index>> orbits;
    for (Index x = 0; x < n; ++x) {
      if (raw[x] != kUnset) continue;
      const auto id = static_cast<std::uint32_t>(orbits.size());
      std::vector<Index> orbit{x};
      raw[x] = id;
      for (std::size_t h = 0; h < orbit.size(); ++h)
        for (Index g : generators()) {
          const Index y = conj(orbit[h], g);
          if (raw[y] == kUnset) {
            raw[y] = id;
            orbit.push_back(y);
          }
        }
      std::sort(orbit.begin(), orbit.end());
      orbits.push_back(std::move(orbit));
    }
    // Order classes by (size, minimal element).
    std::vector<std::uint32_t> perm(orbits.size());
    std::iota(perm.begin(), perm.end(), 0u);
    std::sort(perm.begin(), perm.end(), [&](auto a, auto b) {
      if (orbits[a].size() != orbits[b].size()) return orbits[a].size() < orbits[b].size();
      return orbits[a].front() < orbits[b].front();
    });
    std::vector<std::uint32_t> rank(orbits.size());
    for (std::uint32_t k = 0; k < perm.size(); ++k) rank[perm[k]] = k;
    cc->class_of.resize(n);
    for (Index x = 0; x < n; ++x) cc->class_of[x] = rank[raw[x]];
    for (auto k : perm) {
      cc->reps.push_back(orbits[k].front());
      cc->sizes.push_back(orbits[k].size());
      cc->members.push_back(std::move(orbits[k]));
    }
    cc->inverse_class.resize(cc->reps.size());
    for (std::size_t k = 0; k < cc->reps.size(); ++k)
      cc->inverse_class[k] = cc->class_of[inv(cc->reps[k])];
    cc->identity_class = cc->class_of[identity()];
    impl_->classes = std::move(cc);
  });
  return *impl_->classes;
}

inline const ConjClasses& conjugacy_classes(const Group& G) { return G.classes(); }

inline std::uint64_t exponent(const Group& G) {
  std::uint64_t e = 1;
  for (Index r : G.classes().reps) e = numth::lcm(e, element_order(G, r));
  return e;
}

inline Subgroup center(const Group& G) {
  std::vector<Index> z;
  for (Index x = 0; x < G.order(); ++x) {
    bool central = true;
    for (Index g : G.generators())
      if (G.mul(x, g) != G.mul(g, x)) {
        central = false;
        break;
      }
    if (central) z.push_back(x);
  }
  return from_members(G, z);
}

inline std::uint64_t centralizer_order(const Group& G, Index x) {
  const auto& cc = G.classes();
  return G.order() / cc.sizes[cc.class_of[x]];
}

namespace detail {
/// <X> by breadth-first search, or nullopt once it exceeds `limit` elements.
inline std::optional<Subgroup> bounded_generate(const Group& G, const std::vector<Index>& X, std::size_t limit) {
  Subgroup S;
  S.mask.assign(G.order(), 0);
  S.mask[G.identity()] = 1;
  S.members.push_back(G.identity());
  for (std::size_t head = 0; head < S.members.size(); ++head)
    for (Index g : X) {
      const Index y = G.mul(S.members[head], g);
      if (S.mask[y]) continue;
      if (S.members.size() >= limit) return std::nullopt;
      S.mask[y] = 1;
      S.members.push_back(y);
    }
  std::sort(S.members.begin(), S.members.end());
  S.gens = X;
  return S;
}
}  // namespace detail

/// Largest normal nilpotent subgroup, as the product of the O_q(G). A q-element
/// lies in O_q(G) exactly when its conjugacy class generates a q-group.
inline Subgroup fitting_subgroup(const Group& G) {
  const auto& cc = G.classes();
  const auto fact = numth::factorize(G.order());
  Subgroup F = trivial(G);
  for (Index r : cc.reps) {
    if (F.contains(r)) continue;
    const std::uint64_t o = element_order(G, r);
    for (const auto& [q, e] : fact.factors) {
      if (o % q) continue;
      std::uint64_t qpart = 1, gq = 1;
      while (o % (qpart * q) == 0) qpart *= q;
      for (unsigned k = 0; k < e; ++k) gq *= q;
      const Index y = G.power(r, o / qpart);
      if (F.contains(y)) continue;
      const auto& cls = cc.members[cc.class_of[y]];
      if (cls.size() >= gq) continue;
      auto N = detail::bounded_generate(G, cls, gq);
      if (!N) continue;
      auto gens = F.gens;
      gens.insert(gens.end(), cls.begin(), cls.end());
      F = generate(G, gens);
    }
  }
  return F;
}

/// Subgroup S viewed as a group in its own right (same element encoding).
inline Group as_group(const Group& G, const Subgroup& S) {
  std::vector<Elem> gens;
  for (Index g : S.gens) gens.push_back(G.elem(g));
  return Group::closure(G.ops(), gens, S.order() + 1);
}

/// G/N with each coset represented by its minimal element.
inline Group quotient(const Group& G, const Subgroup& N) {
  if (!is_normal(G, N)) throw Error(Errc::NotNormal, "quotient by a non-normal subgroup");
  constexpr Index kUnset = ~Index{0};
  auto rep = std::make_shared<std::vector<Index>>(G.order(), kUnset);
  for (Index x = 0; x < G.order(); ++x) {
    if ((*rep)[x] != kUnset) continue;
    for (Index n : N.members) (*rep)[G.mul(x, n)] = x;
  }
  GroupOps ops;
  ops.identity = G.elem((*rep)[G.identity()]);
  ops.mul = [G, rep](const Elem& a, const Elem& b) {
    return G.elem((*rep)[G.mul(G.index(a), G.index(b))]);
  };
  ops.inv = [G, rep](const Elem& a) { return G.elem((*rep)[G.inv(G.index(a))]); };
  std::vector<Elem> gens;
  for (Index g : G.generators()) gens.push_back(G.elem((*rep)[g]));
  return Group::closure(std::move(ops), gens, G.order() / N.order() + 1);
}

inline unsigned fitting_height(const Group& G0) {
  unsigned h = 0;
  Group G = G0;
  while (G.order() > 1) {
    Subgroup F = fitting_subgroup(G);
    G = quotient(G, F);
    ++h;
  }
  return h;
}

}  // namespace solvdeg::grp
