#include <gtest/gtest.h>

#include "solvdeg/families.hpp"

using namespace solvdeg;
using namespace solvdeg::fam;
using act::Aut;
using pgrp::PGroup;
using pgrp::Vec;
using V = std::vector<u64>;

namespace {

FamilyParams P_(Family f, u64 p, std::optional<u64> q = {}, std::optional<u64> r = {}, std::optional<u64> n = {},
                std::optional<u64> m = {}) {
  return {f, p, q, r, n, m};
}

std::string invalid_message(const FamilyParams& fp) {
  try {
    validate(fp);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::InvalidParams);
    return e.what();
  }
  return "";
}

bool check_failed(const Certificate& c, const std::string& name) {
  const auto* ch = c.find(name);
  return ch && !ch->passed;
}

Instance mutate(const Instance& I, std::vector<std::pair<std::string, Aut>> extra) {
  auto g = I.H.named;
  for (auto& e : extra) g.push_back(std::move(e));
  return assemble(I.params, I.P, std::move(g));
}

act::CoordSubgroup coords(std::vector<Vec> x, std::vector<Vec> z) { return {std::move(x), std::move(z)}; }

}  // namespace

TEST(Validate, ClauseMessages) {
  EXPECT_NE(invalid_message(P_(Family::one, 5, 3)).find("q must divide p-1"), std::string::npos);
  EXPECT_NE(invalid_message(P_(Family::one, 7, 2)).find("q must be an odd prime"), std::string::npos);
  EXPECT_NE(invalid_message(P_(Family::one, 9, 3)).find("p must be prime"), std::string::npos);
  EXPECT_NE(invalid_message(P_(Family::two, 7, 3, 3)).find("coprime"), std::string::npos);
  EXPECT_NE(invalid_message(P_(Family::two, 7, 3, 4)).find("r must divide p-1"), std::string::npos);
  EXPECT_NE(invalid_message(P_(Family::four, 7, 2, 2)).find("odd"), std::string::npos);
  EXPECT_NE(invalid_message(P_(Family::five, 7, 3, {}, 3)).find("n must exceed q"), std::string::npos);
  EXPECT_NE(invalid_message(P_(Family::no_prime, 11, {}, {}, 4)).find("odd"), std::string::npos);
  EXPECT_NE(invalid_message(P_(Family::no_prime, 7, {}, {}, 5)).find("prime divisor of n"), std::string::npos);
  EXPECT_NE(invalid_message(P_(Family::no_prime, 11, {}, {}, 5, 15)).find("m"), std::string::npos);
  EXPECT_NE(invalid_message(P_(Family::fitting_two, 5)).find("3 mod 8"), std::string::npos);
  EXPECT_NE(invalid_message(P_(Family::one, 7)).find("q"), std::string::npos);
  for (const auto& fp : presets()) EXPECT_NO_THROW(validate(fp)) << describe(fp);
  EXPECT_NO_THROW(validate(P_(Family::four, 7, 2, 3)));  // q = 2 allowed for this family
}

TEST(Validate, FamilyNamesRoundTrip) {
  for (const auto& [f, name] : family_names()) EXPECT_EQ(parse_family(name), f);
  EXPECT_THROW(parse_family("six"), Error);
}

TEST(ClosedFormProfile, Examples) {
  EXPECT_EQ(theorem_profile(preset(Family::one)).cd, (V{1, 3, 171, 58653}));
  EXPECT_EQ(theorem_profile(preset(Family::two)).cd, (V{1, 3, 342, 58653}));
  EXPECT_EQ(theorem_profile(preset(Family::three)).cd, (V{1, 3, 342, 1029}));
  EXPECT_EQ(theorem_profile(preset(Family::five)).cd, (V{1, 3, 342, 7203}));
  EXPECT_EQ(theorem_profile(preset(Family::fitting_two)).cd, (V{1, 2, 8, 18}));
  EXPECT_EQ(theorem_profile(P_(Family::fitting_two, 11)).cd, (V{1, 2, 8, 242}));
  EXPECT_EQ(theorem_profile(preset(Family::fitting_two)).fh, 2u);
  EXPECT_EQ(theorem_profile(preset(Family::one)).dl, 4u);
}

TEST(Build, Orders) {
  const auto ft = build(preset(Family::fitting_two));
  EXPECT_EQ(ft.P.order(), 243u);
  EXPECT_EQ(ft.H.order(), 8u);
  EXPECT_EQ(ft.order_string(), "1944");
  const auto one = build(preset(Family::one));
  EXPECT_EQ(one.H.order(), 171u);
  EXPECT_EQ(one.order_string(), "6900466797");
  EXPECT_FALSE(one.order_at_most(2'000'000));
  const auto five = build(preset(Family::five));
  EXPECT_EQ(five.P.dim(), 9u);
  ASSERT_FALSE(five.flags.empty());
  EXPECT_NE(five.flags.front().find("p2_order_corrected"), std::string::npos);
  const auto two = build(preset(Family::two));
  ASSERT_EQ(two.build_checks.size(), 1u);
  EXPECT_TRUE(two.build_checks[0].passed);
}

TEST(Certificate, PresetsPass) {
  for (auto f : {Family::one, Family::two, Family::three, Family::five, Family::fitting_two}) {
    const auto fp = preset(f);
    const auto I = build(fp);
    const auto c = lemma_certificate(I);
    EXPECT_TRUE(c.passed()) << describe(fp);
    ASSERT_TRUE(c.prediction.has_value()) << describe(fp);
    EXPECT_EQ(c.prediction->cd, theorem_profile(fp).cd) << describe(fp);
    EXPECT_EQ(c.prediction->dl, 4u);
  }
}

TEST(Certificate, CaseDispatch) {
  const auto one = lemma_certificate(build(preset(Family::one)));
  EXPECT_EQ(one.case_tag, 1);
  EXPECT_EQ(one.C_order, 1u);
  const auto five = lemma_certificate(build(preset(Family::five)));
  EXPECT_EQ(five.case_tag, 2);
  EXPECT_EQ(five.D_dim, 3u);
  EXPECT_EQ(five.derived_dim, 1u);
  EXPECT_EQ(five.H_order / five.C_order, 3u);
  EXPECT_EQ(five.a, 3u);
  ASSERT_NE(five.find("index_H_C_equals_a"), nullptr);
  const auto ft = lemma_certificate(build(preset(Family::fitting_two)));
  EXPECT_EQ(ft.case_tag, 2);
  EXPECT_EQ(ft.C_order, 4u);
  EXPECT_EQ(ft.prediction->fh, 2u);
}

TEST(Certificate, FamilyFourHypothesesFail) {
  // p = 7: gamma is trivial and H is abelian
  const auto c7 = lemma_certificate(build(preset(Family::four)));
  EXPECT_FALSE(c7.passed());
  EXPECT_TRUE(check_failed(c7, "cd_H"));
  EXPECT_EQ(c7.cd_H, (V{1}));
  // p = 13: cd(H) = {1, 2} but C = <gamma, lambda sigma> is not abelian
  const auto c13 = lemma_certificate(build(P_(Family::four, 13, 2, 3)));
  EXPECT_FALSE(c13.passed());
  EXPECT_FALSE(check_failed(c13, "cd_H"));
  EXPECT_TRUE(check_failed(c13, "C_abelian"));
  EXPECT_EQ(c13.C_order, 56u);
}

// ---- one mutation per hypothesis check ------------------------------------------

TEST(Mutation, BuildCheck) {
  auto I = build(preset(Family::two));
  I.build_checks[0].passed = false;
  const auto c = lemma_certificate(I);
  EXPECT_FALSE(c.passed());
  EXPECT_TRUE(check_failed(c, "build:eta_meets_K_trivially"));
}

TEST(Mutation, Automorphism) {
  const auto I = build(preset(Family::fitting_two));
  auto g = I.H.named;
  std::get<act::EsAut>(g[0].second).z_mult = 1;
  const auto c = lemma_certificate(assemble(I.params, I.P, g));
  EXPECT_FALSE(c.passed());
  ASSERT_TRUE(check_failed(c, "automorphism"));
  EXPECT_FALSE(c.find("automorphism")->witness.empty());
}

TEST(Mutation, CdP) {
  // the three pairing kinds are always VZ; the check itself rejects anything else
  EXPECT_THROW(PGroup::elementary_abelian(7, 4).vz_certificate(), Error);
}

TEST(Mutation, PCoprimeToH) {
  const auto F = gf::make_field(3, 3);
  const auto P = PGroup::heisenberg(F);
  const auto c = lemma_certificate(assemble(preset(Family::one), P, {{"sigma", act::heis_aut(F->one(), F->one(), 1)}}));
  EXPECT_FALSE(c.passed());
  EXPECT_TRUE(check_failed(c, "p_coprime_to_H"));
}

TEST(Mutation, CdH) {
  // dropping lambda sigma leaves an abelian H
  const auto I = build(preset(Family::one));
  const auto c = lemma_certificate(assemble(I.params, I.P, {I.H.named[0]}));
  EXPECT_FALSE(c.passed());
  EXPECT_TRUE(check_failed(c, "cd_H"));
}

TEST(Mutation, FrobeniusOnP) {
  const auto I = build(preset(Family::one));
  const auto& F = I.P.field();
  // x -> (u x, v y) with u = 1 fixes every (a, 0, 0); P' is still moved, so C = 1
  const auto c = lemma_certificate(assemble(I.params, I.P, {{"fixes_a", act::heis_aut(F->one(), F->subgroup_generator(3), 0)}}));
  EXPECT_FALSE(c.passed());
  EXPECT_EQ(c.case_tag, 1);
  ASSERT_TRUE(check_failed(c, "frobenius_on_P"));
  EXPECT_FALSE(c.find("frobenius_on_P")->witness.empty());
}

TEST(Mutation, CAbelian) {
  const auto c = lemma_certificate(build(P_(Family::four, 13, 2, 3)));
  EXPECT_TRUE(check_failed(c, "C_abelian"));
}

TEST(Mutation, DProper) {
  // with a faithful H the check cannot fail; the trivial C shows the failing shape
  const auto I = build(preset(Family::fitting_two));
  const auto D = act::centralized_D(I.H, grp::trivial(I.H.group), I.P);
  EXPECT_EQ(D.dim(), I.P.dim());
}

TEST(Mutation, FrobeniusOnPModD) {
  const auto I = build(preset(Family::fitting_two));
  std::vector<std::pair<std::string, Aut>> g;
  g.push_back({"lambda_sigma", I.H.named[1].second});
  g.push_back({"t", act::es_aut(ModMatrix::identity(2, 3), ModMatrix::scalar(2, 2, 3), 2)});
  const auto c = lemma_certificate(assemble(I.params, I.P, g));
  EXPECT_FALSE(c.passed());
  ASSERT_TRUE(check_failed(c, "frobenius_on_P_mod_D"));
  EXPECT_FALSE(c.find("frobenius_on_P_mod_D")->witness.empty());
}

TEST(Mutation, FullyRamified) {
  // maximal abelian D = <x, z> in 3^{1+2}: the degree-3 characters restrict to D
  // as sums of distinct linear characters
  const auto P = PGroup::extraspecial_dual(3, 1);
  const auto D = coords({{1, 0}}, {{1}});
  EXPECT_FALSE(ramification_direct(P, D).holds);
  EXPECT_FALSE(ramification_structural(P, D).holds);
}

TEST(Mutation, HModCFrobeniusOnD) {
  const auto I = build(preset(Family::two));
  const auto& F = I.P.field();
  const auto c = lemma_certificate(mutate(I, {{"sigma", act::heis_aut(F->one(), F->one(), 1)}}));
  EXPECT_FALSE(c.passed());
  EXPECT_TRUE(check_failed(c, "H_mod_C_frobenius_on_D"));
}

TEST(Mutation, IndexHC) {
  // a central involution inverting P' doubles |H:C| and leaves a = 3
  const auto I = build(preset(Family::five));
  const auto c = lemma_certificate(mutate(I, {{"s", act::es_dual(ModMatrix::identity(I.P.vdim(), 7), 6)}}));
  EXPECT_FALSE(c.passed());
  EXPECT_EQ(c.a, 3u);
  EXPECT_EQ(c.H_order / c.C_order, 6u);
  EXPECT_TRUE(check_failed(c, "index_H_C_equals_a"));
}

// ---- ramification: direct vs structural --------------------------------------------

TEST(Ramification, DirectMatchesStructural) {
  const std::vector<PGroup> ps{PGroup::extraspecial_dual(3, 1), PGroup::heisenberg(gf::make_field(3, 1)),
                               PGroup::extraspecial_dual(3, 2), PGroup::heisenberg(gf::make_field(3, 2))};
  for (const auto& P : ps) {
    std::vector<act::CoordSubgroup> Ds{act::derived_coords(P), act::whole_coords(P)};
    if (P.xdim() == 2) Ds.push_back(coords({{1, 0}}, act::derived_coords(P).z));
    if (P.xdim() == 4 && P.zdim() == 1) {
      Ds.push_back(coords({{1, 0, 0, 0}, {0, 0, 1, 0}}, {{1}}));  // nondegenerate plane
      Ds.push_back(coords({{1, 0, 0, 0}, {0, 1, 0, 0}}, {{1}}));  // isotropic plane
    }
    for (const auto& D : Ds) {
      const auto d = ramification_direct(P, D), s = ramification_structural(P, D);
      EXPECT_EQ(d.holds, s.holds) << pgrp::kind_name(P.kind()) << " dim " << P.dim() << " D " << D.dim();
    }
    EXPECT_TRUE(ramification_direct(P, act::derived_coords(P)).holds);
    EXPECT_TRUE(ramification_direct(P, act::whole_coords(P)).holds);
  }
}

// ---- cd(H): orbit criterion vs Dixon --------------------------------------------------

TEST(CdH, OrbitCriterionMatchesDixon) {
  for (const auto& fp : {preset(Family::one), preset(Family::two), P_(Family::one, 13, 3), P_(Family::two, 13, 3, 2)}) {
    const auto I = build(fp);
    const auto o = cd_by_orbits(I.H);
    ASSERT_TRUE(o.has_value()) << describe(fp);
    EXPECT_EQ(*o, chardeg::degrees(I.H.group).degree_set) << describe(fp);
  }
}

TEST(CdH, DixonForPresets) {
  for (const auto& fp : presets()) {
    if (fp.family == Family::no_prime || fp.family == Family::four) continue;
    const auto I = build(fp);
    const u64 q = fp.family == Family::fitting_two ? 2 : *fp.q;
    EXPECT_EQ(character_degrees_of(I.H).degrees, (V{1, q})) << describe(fp);
  }
}

// ---- oracle ---------------------------------------------------------------------

TEST(Oracle, FittingTwoVerified) {
  const auto I = build(preset(Family::fitting_two));
  const auto c = lemma_certificate(I);
  const auto o = verify_against_oracle(I, c);
  EXPECT_EQ(o.status, OracleStatus::verified);
  EXPECT_EQ(o.degree_set, (V{1, 2, 8, 18}));
  EXPECT_EQ(o.dl, 4u);
  EXPECT_EQ(o.fh, 2u);
  u64 sq = 0;
  for (u64 d : o.degrees) sq += d * d;
  EXPECT_EQ(sq, 1944u);
}

TEST(Oracle, SkippedAboveCap) {
  const auto I = build(preset(Family::one));
  const auto o = verify_against_oracle(I, lemma_certificate(I));
  EXPECT_EQ(o.status, OracleStatus::skipped);
  EXPECT_NE(o.reason.find("6900466797"), std::string::npos);
}

TEST(Oracle, CompareReportsDiffs) {
  OracleResult r;
  r.status = OracleStatus::verified;
  r.degree_set = {1, 2, 8, 18};
  r.dl = 4;
  r.fh = 2;
  Prediction pr;
  pr.cd = {1, 2, 8, 19};
  pr.fh = 3;
  compare(r, pr);
  EXPECT_EQ(r.status, OracleStatus::failed);
  EXPECT_EQ(r.diffs.size(), 2u);
}

TEST(NoPrime, SearchFailsForMEqualN) {
  try {
    build(preset(Family::no_prime));
    FAIL() << "expected SearchFailed";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::SearchFailed);
  }
}
