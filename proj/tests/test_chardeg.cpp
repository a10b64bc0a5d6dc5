#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "solvdeg/chardeg.hpp"
#include "solvdeg/pgroup.hpp"

using namespace solvdeg;
using namespace solvdeg::grp;
using namespace solvdeg::chardeg;
using V = std::vector<u64>;

namespace {
Group es27() { return pgrp::PGroup::extraspecial_dual(3, 1).enumerate(); }
Group heis3() { return pgrp::PGroup::heisenberg(gf::make_field(3, 1)).enumerate(); }
Group trivial_group() { return Group::closure(fixtures::perm_ops(2), {}); }

void check_characters(const Group& G) {
  const auto mc = compute_characters(G);
  const auto& A = mc.algebra;
  const u64 m = A.ell;
  EXPECT_EQ(mc.chars.size(), G.classes().count());
  for (const auto& c : mc.chars) {
    EXPECT_EQ(c.omega[G.classes().identity_class], 1u);
    for (std::size_t i = 0; i < A.k; ++i)
      for (std::size_t j = 0; j < A.k; ++j) {
        u64 s = 0;
        for (std::size_t k = 0; k < A.k; ++k) s = (s + A.at(i, j, k) % m * c.omega[k]) % m;
        EXPECT_EQ(c.omega[i] * c.omega[j] % m, s);
      }
  }
  const auto rep = make_report(mc.chars, G.order(), m);
  EXPECT_EQ(rep.linear_count, G.order() / commutator_subgroup(G, whole(G), whole(G)).order());
  EXPECT_EQ(rep.degree_set.front(), 1u);
}
}  // namespace

TEST(ClassConstants, Examples) {
  const auto T = trivial_group();
  const auto A = class_constants(T);
  EXPECT_EQ(A.k, 1u);
  EXPECT_EQ(A.at(0, 0, 0), 1u);
  const auto C = fixtures::cyclic(6);
  const auto B = class_constants(C);
  for (std::size_t i = 0; i < B.k; ++i)
    for (std::size_t j = 0; j < B.k; ++j)
      for (std::size_t c = 0; c < B.k; ++c) EXPECT_LE(B.at(i, j, c), 1u);
}

TEST(ClassConstants, RowSumIdentityAndBruteForce) {
  for (const auto& G : {fixtures::q8(), fixtures::s4(), heis3()}) {
    const auto A = class_constants(G);
    const auto& cc = G.classes();
    for (std::size_t i = 0; i < A.k; ++i)
      for (std::size_t j = 0; j < A.k; ++j) {
        u64 s = 0;
        for (std::size_t k = 0; k < A.k; ++k) s += A.at(i, j, k) * cc.sizes[k];
        EXPECT_EQ(s, cc.sizes[i] * cc.sizes[j]);
      }
    // brute-force recount over all pairs for one target class
    const std::size_t k = A.k - 1;
    const Index z = cc.reps[k];
    std::vector<u64> cnt(A.k * A.k, 0);
    for (Index x = 0; x < G.order(); ++x)
      for (Index y = 0; y < G.order(); ++y)
        if (G.mul(x, y) == z) ++cnt[cc.class_of[x] * A.k + cc.class_of[y]];
    for (std::size_t i = 0; i < A.k; ++i)
      for (std::size_t j = 0; j < A.k; ++j) EXPECT_EQ(A.at(i, j, k), cnt[i * A.k + j]);
  }
}

TEST(ClassConstants, SingleRowsMatchFullMatrix) {
  for (const auto& G : {fixtures::s4(), fixtures::q8(), heis3()}) {
    const auto A = class_constants(G);
    for (std::size_t i = 0; i < A.k; ++i)
      for (std::size_t j = 0; j < A.k; ++j) {
        const auto r = A.row(i, j);
        for (std::size_t c = 0; c < A.k; ++c) EXPECT_EQ(r[c], A.at(i, j, c));
      }
  }
}

TEST(ClassConstants, CapEnforced) { EXPECT_THROW(class_constants(fixtures::cyclic(50), 0, 10), Error); }

TEST(Modulus, Examples) {
  EXPECT_EQ(choose_modulus(fixtures::cyclic(2)), 3u);
  EXPECT_EQ(choose_modulus(trivial_group()), 2u);
  EXPECT_EQ(choose_modulus(1944, 24), 1993u);
  const u64 l = choose_modulus(fixtures::q8());
  EXPECT_EQ(l, 13u);
}

TEST(Degrees, Corpus) {
  EXPECT_EQ(degrees(fixtures::cyclic(7)).degrees, V(7, 1));
  EXPECT_EQ(degrees(fixtures::klein()).degrees, V(4, 1));
  EXPECT_EQ(degrees(fixtures::s3()).degrees, (V{1, 1, 2}));
  EXPECT_EQ(degrees(fixtures::d4()).degrees, (V{1, 1, 1, 1, 2}));
  const auto q = degrees(fixtures::q8());
  EXPECT_EQ(q.degrees, (V{1, 1, 1, 1, 2}));
  EXPECT_EQ(q.degree_set, (V{1, 2}));
  V es(9, 1);
  es.push_back(3);
  es.push_back(3);
  EXPECT_EQ(degrees(es27()).degrees, es);
  EXPECT_EQ(degrees(heis3()).degrees, es);
  EXPECT_EQ(degrees(fixtures::s4()).degrees, (V{1, 1, 2, 3, 3}));
  EXPECT_EQ(degrees(fixtures::a4()).degrees, (V{1, 1, 1, 3}));
  EXPECT_EQ(degrees(trivial_group()).degrees, (V{1}));
}

TEST(Degrees, HomomorphismAndLinearCount) {
  for (const auto& G : {fixtures::q8(), fixtures::s4(), es27(), fixtures::d4()}) check_characters(G);
}

TEST(Ramification, Examples) {
  const auto P = es27();
  const auto mc = compute_characters(P);
  const auto whole_p = compute_characters(P, mc.modulus());
  const auto Zg = as_group(P, center(P));
  const auto mz = compute_characters(Zg, mc.modulus());
  for (std::size_t chi = 0; chi < mc.chars.size(); ++chi) {
    EXPECT_EQ(restriction_norm(mc, chi, whole_p), 1u);
    EXPECT_TRUE(is_fully_ramified(mc, chi, whole_p));
    if (mc.chars[chi].degree == 3) {
      EXPECT_EQ(restriction_norm(mc, chi, mz), 9u);
      EXPECT_TRUE(is_fully_ramified(mc, chi, mz));
      const auto mult = constituent_multiplicities(mc, chi, mz);
      EXPECT_EQ(std::count(mult.begin(), mult.end(), 3u), 1);
    } else {
      EXPECT_EQ(restriction_norm(mc, chi, mz), 1u);
      EXPECT_FALSE(is_fully_ramified(mc, chi, mz));
    }
  }
}

TEST(Ramification, ModulusMismatch) {
  const auto P = es27();
  const auto mc = compute_characters(P);
  const auto mz = compute_characters(as_group(P, center(P)));
  EXPECT_THROW(restriction_norm(mc, 0, mz), Error);
}
