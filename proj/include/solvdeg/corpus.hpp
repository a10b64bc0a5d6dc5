#pragma once
// Small reference groups: cyclic, permutation groups, Q8 as 2x2 matrices over
// GF(3), and the two 27-element p-groups. Shared by tests, selftest and acceptance.

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "solvdeg/gf.hpp"
#include "solvdeg/group.hpp"
#include "solvdeg/pgroup.hpp"

namespace solvdeg::corpus {

using solvdeg::grp::Elem;
using solvdeg::grp::Group;
using solvdeg::grp::GroupOps;

inline Group cyclic(std::uint32_t n) {
  GroupOps ops{Elem{0}, [n](const Elem& a, const Elem& b) { return Elem{(a[0] + b[0]) % n}; },
               [n](const Elem& a) { return Elem{(n - a[0]) % n}; }};
  return Group::closure(ops, n > 1 ? std::vector<Elem>{Elem{1}} : std::vector<Elem>{});
}

inline GroupOps perm_ops(std::size_t deg) {
  Elem id(deg);
  std::iota(id.begin(), id.end(), 0u);
  // (ab)(i) = b(a(i)): apply a first.
  return {id,
          [](const Elem& a, const Elem& b) {
            Elem r(a.size());
            for (std::size_t i = 0; i < a.size(); ++i) r[i] = b[a[i]];
            return r;
          },
          [](const Elem& a) {
            Elem r(a.size());
            for (std::size_t i = 0; i < a.size(); ++i) r[a[i]] = static_cast<std::uint32_t>(i);
            return r;
          }};
}

inline Group perm_group(std::size_t deg, std::vector<Elem> gens) { return Group::closure(perm_ops(deg), gens); }

inline Group s3() { return perm_group(3, {{1, 0, 2}, {1, 2, 0}}); }
inline Group s4() { return perm_group(4, {{1, 0, 2, 3}, {1, 2, 3, 0}}); }
inline Group d4() { return perm_group(4, {{1, 2, 3, 0}, {0, 3, 2, 1}}); }
inline Group klein() { return perm_group(4, {{1, 0, 3, 2}, {2, 3, 0, 1}}); }
inline Group a4() { return perm_group(4, {{1, 2, 0, 3}, {1, 0, 3, 2}}); }

inline GroupOps mat2_ops(std::uint32_t p) {
  return {Elem{1, 0, 0, 1},
          [p](const Elem& a, const Elem& b) {
            return Elem{(a[0] * b[0] + a[1] * b[2]) % p, (a[0] * b[1] + a[1] * b[3]) % p,
                        (a[2] * b[0] + a[3] * b[2]) % p, (a[2] * b[1] + a[3] * b[3]) % p};
          },
          [p](const Elem& a) {
            // det is a unit; inverse = adj / det
            const std::uint32_t det = (a[0] * a[3] + p * p - a[1] * a[2]) % p;
            std::uint32_t inv = 1;
            while (inv * det % p != 1) ++inv;
            return Elem{a[3] * inv % p, (p - a[1]) * inv % p, (p - a[2]) * inv % p, a[0] * inv % p};
          }};
}

inline Group q8() { return Group::closure(mat2_ops(3), {{0, 2, 1, 0}, {1, 1, 1, 2}}); }

inline Group extraspecial27() { return pgrp::PGroup::extraspecial_dual(3, 1).enumerate(); }
inline Group heisenberg_gf3() { return pgrp::PGroup::heisenberg(gf::make_field(3, 1)).enumerate(); }

struct Entry {
  std::string name;
  Group group;
  std::vector<std::uint64_t> degrees;  // expected multiset, ascending
};

/// Groups with known degree multisets.
inline std::vector<Entry> degree_corpus() {
  std::vector<Entry> out;
  for (std::uint32_t n = 1; n <= 12; ++n)
    out.push_back({"Z" + std::to_string(n), cyclic(n), std::vector<std::uint64_t>(n, 1)});
  out.push_back({"klein", klein(), {1, 1, 1, 1}});
  out.push_back({"S3", s3(), {1, 1, 2}});
  out.push_back({"D4", d4(), {1, 1, 1, 1, 2}});
  out.push_back({"Q8", q8(), {1, 1, 1, 1, 2}});
  std::vector<std::uint64_t> p27(9, 1);
  p27.push_back(3);
  p27.push_back(3);
  out.push_back({"extraspecial27", extraspecial27(), p27});
  out.push_back({"heisenberg_GF3", heisenberg_gf3(), p27});
  return out;
}

}  // namespace solvdeg::corpus
