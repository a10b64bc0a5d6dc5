#pragma once

// JSON documents for built groups and certification reports.
// Keys come out sorted (nlohmann::json uses std::map), arrays are emitted in a
// fixed order, and wall-clock data only ever appears under "timings".

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "solvdeg/families.hpp"

namespace solvdeg::io {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;
inline constexpr u64 kSafeInteger = u64{1} << 53;

// integers past 2^53 are written as decimal strings
inline json big(u64 x) { return x <= kSafeInteger ? json(x) : json(std::to_string(x)); }

inline u64 read_u64(const json& j, const char* what) {
  try {
    if (j.is_number_unsigned()) return j.get<u64>();
    if (j.is_number_integer() && j.get<std::int64_t>() >= 0) return static_cast<u64>(j.get<std::int64_t>());
    if (j.is_string()) {
      const auto s = j.get<std::string>();
      std::size_t pos = 0;
      const u64 v = std::stoull(s, &pos);
      if (pos == s.size() && !s.empty() && s[0] != '-') return v;
    }
  } catch (const std::exception&) {
  }
  throw Error(Errc::ParseError, std::string("expected a non-negative integer for ") + what);
}

inline const json& need(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(Errc::ParseError, std::string("missing key '") + key + "'");
  return j.at(key);
}

inline std::vector<u64> read_u64s(const json& j, const char* what) {
  if (!j.is_array()) throw Error(Errc::ParseError, std::string(what) + " must be an array");
  std::vector<u64> out;
  for (const auto& x : j) out.push_back(read_u64(x, what));
  return out;
}

inline json big_array(const std::vector<u64>& v) {
  json a = json::array();
  for (u64 x : v) a.push_back(big(x));
  return a;
}

// ---- field -------------------------------------------------------------

inline json to_json(const gf::FieldHandle& F) {
  if (!F) return nullptr;
  return {{"p", F->p()}, {"n", F->n()}, {"modulus", F->modulus()}};
}

inline gf::FieldHandle field_from_json(const json& j) {
  if (j.is_null()) return nullptr;
  const u64 p = read_u64(need(j, "p"), "field.p");
  const u64 n = read_u64(need(j, "n"), "field.n");
  auto mod = read_u64s(need(j, "modulus"), "field.modulus");
  if (mod.size() != n + 1) throw Error(Errc::ParseError, "field modulus has wrong degree");
  return gf::GaloisField::from_modulus(p, poly::Poly(mod.begin(), mod.end()));
}

// ---- P descriptor ----------------------------------------------------

inline json to_json(const pgrp::PGroup& P) {
  json j = {{"kind", pgrp::kind_name(P.kind())}, {"p", P.p()}};
  switch (P.kind()) {
    case pgrp::Kind::heisenberg: j["field"] = to_json(P.field()); break;
    case pgrp::Kind::extraspecial_dual: j["dim"] = P.vdim(); break;
    case pgrp::Kind::elementary_abelian: j["dim"] = P.xdim(); break;
    case pgrp::Kind::central_product: {
      json f = json::array();
      for (std::size_t i = 0; i < P.blocks().size(); ++i)
        f.push_back({{"kind", "extraspecial_dual"}, {"dim", P.blocks()[i]}, {"weight", P.block_weights()[i]}});
      j["factors"] = f;
      break;
    }
  }
  return j;
}

inline pgrp::PGroup pgroup_from_json(const json& j) {
  const auto kind = need(j, "kind").get<std::string>();
  const u64 p = read_u64(need(j, "p"), "P.p");
  auto udim = [&](const json& x) { return static_cast<unsigned>(read_u64(need(x, "dim"), "P.dim")); };
  if (kind == "heisenberg") {
    auto F = field_from_json(need(j, "field"));
    if (!F || F->p() != p) throw Error(Errc::ParseError, "Heisenberg field does not match p");
    return pgrp::PGroup::heisenberg(F);
  }
  if (kind == "extraspecial_dual") return pgrp::PGroup::extraspecial_dual(p, udim(j));
  if (kind == "elementary_abelian") return pgrp::PGroup::elementary_abelian(p, udim(j));
  if (kind == "central_product") {
    const auto& f = need(j, "factors");
    if (!f.is_array() || f.size() < 2) throw Error(Errc::ParseError, "central product needs two or more factors");
    if (read_u64(need(f[0], "weight"), "weight") % p != 1)
      throw Error(Errc::ParseError, "first central factor must have weight 1");
    auto P = pgrp::PGroup::extraspecial_dual(p, udim(f[0]));
    for (std::size_t i = 1; i < f.size(); ++i)
      P = pgrp::PGroup::central_product(P, pgrp::PGroup::extraspecial_dual(p, udim(f[i])),
                                        read_u64(need(f[i], "weight"), "weight"));
    return P;
  }
  throw Error(Errc::ParseError, "unknown P kind '" + kind + "'");
}

// ---- automorphisms ----------------------------------------------------

inline json matrix_rows(const ModMatrix& M) {
  json rows = json::array();
  for (std::size_t r = 0; r < M.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < M.cols(); ++c) row.push_back(M(r, c));
    rows.push_back(row);
  }
  return rows;
}

inline ModMatrix matrix_from_rows(const json& j, std::size_t n, u64 p, const char* what) {
  if (!j.is_array() || j.size() != n) throw Error(Errc::ParseError, std::string(what) + " has wrong row count");
  ModMatrix M(n, n, p);
  for (std::size_t r = 0; r < n; ++r) {
    const auto row = read_u64s(j[r], what);
    if (row.size() != n) throw Error(Errc::ParseError, std::string(what) + " has wrong column count");
    for (std::size_t c = 0; c < n; ++c) {
      if (row[c] >= p) throw Error(Errc::ParseError, std::string(what) + " entry out of range");
      M(r, c) = row[c];
    }
  }
  return M;
}

inline json to_json(const act::Aut& f) {
  if (const auto* h = std::get_if<act::HeisAut>(&f))
    return {{"type", "heisenberg"}, {"u", h->u.coords}, {"v", h->v.coords}, {"i", h->i}};
  const auto& e = std::get<act::EsAut>(f);
  // Mhat is redundant for genuine automorphisms but keeps corrupted inputs representable
  return {{"type", "pairing"}, {"M", matrix_rows(e.M)}, {"Mhat", matrix_rows(e.Mhat)}, {"z_mult", e.z_mult}};
}

inline act::Aut aut_from_json(const json& j, const pgrp::PGroup& P) {
  const auto type = need(j, "type").get<std::string>();
  if (type == "heisenberg") {
    if (P.kind() != pgrp::Kind::heisenberg) throw Error(Errc::ParseError, "Heisenberg automorphism on another kind");
    const auto& F = P.field();
    return act::HeisAut{F->from_coords(read_u64s(need(j, "u"), "u")), F->from_coords(read_u64s(need(j, "v"), "v")),
                        static_cast<unsigned>(read_u64(need(j, "i"), "i") % F->n())};
  }
  if (type == "pairing") {
    const std::size_t m = P.vdim();
    act::EsAut e;
    e.M = matrix_from_rows(need(j, "M"), m, P.p(), "M");
    e.z_mult = read_u64(need(j, "z_mult"), "z_mult") % P.p();
    if (e.z_mult == 0) throw Error(Errc::ParseError, "z_mult must be a unit");
    if (j.contains("Mhat")) {
      e.Mhat = matrix_from_rows(j.at("Mhat"), m, P.p(), "Mhat");
    } else {
      e = act::es_dual(e.M, e.z_mult);
    }
    if (e.M.rank() != m || e.Mhat.rank() != m) throw Error(Errc::ParseError, "automorphism matrix is singular");
    return e;
  }
  throw Error(Errc::ParseError, "unknown automorphism type '" + type + "'");
}

// ---- parameters ---------------------------------------------------------

inline json to_json(const fam::FamilyParams& fp) {
  json j = {{"family", fam::family_name(fp.family)}, {"p", fp.p}};
  if (fp.q) j["q"] = *fp.q;
  if (fp.r) j["r"] = *fp.r;
  if (fp.n) j["n"] = *fp.n;
  if (fp.m) j["m"] = *fp.m;
  return j;
}

inline fam::FamilyParams params_from_json(const json& j) {
  fam::FamilyParams fp;
  fp.family = fam::parse_family(need(j, "family").get<std::string>());
  fp.p = read_u64(need(j, "p"), "p");
  auto opt = [&](const char* k) -> std::optional<u64> {
    if (j.contains(k) && !j.at(k).is_null()) return read_u64(j.at(k), k);
    return std::nullopt;
  };
  fp.q = opt("q");
  fp.r = opt("r");
  fp.n = opt("n");
  fp.m = opt("m");
  return fp;
}

// ---- group document ------------------------------------------------------

struct Caps {
  u64 max_order = grp::kDefaultOrderCap;
  u64 max_classes = chardeg::kDefaultClassCap;
  bool operator==(const Caps&) const = default;
};

inline json to_json(const Caps& c) { return {{"max_order", c.max_order}, {"max_classes", c.max_classes}}; }

inline Caps caps_from_json(const json& j) {
  Caps c;
  if (j.is_null()) return c;
  c.max_order = read_u64(need(j, "max_order"), "max_order");
  c.max_classes = read_u64(need(j, "max_classes"), "max_classes");
  return c;
}

inline json group_document(const fam::Instance& I, const Caps& caps = {}) {
  json gens = json::array();
  for (const auto& [name, f] : I.H.named) gens.push_back({{"name", name}, {"aut", to_json(f)}});
  json checks = json::array();
  for (const auto& c : I.build_checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  json j = {{"schema_version", kSchemaVersion},
            {"document", "group"},
            {"params", to_json(I.params)},
            {"field", to_json(I.field)},
            {"P", to_json(I.P)},
            {"H", {{"generators", gens}, {"order", big(I.H.order())}}},
            {"caps", to_json(caps)},
            {"build_checks", checks},
            {"flags", I.flags}};
  j["orders"] = {{"P", numth::decimal_pow_times(I.P.p(), I.P.dim())},
                 {"P_exponent", I.P.dim()},
                 {"H", std::to_string(I.H.order())},
                 {"G", I.order_string()}};
  if (I.search) {
    const auto& s = *I.search;
    j["search"] = {{"rho", s.rho},
                   {"K_order", big(s.K_order)},
                   {"m", s.m},
                   {"mu_exponent", big(s.mu_exponent)},
                   {"galois", s.galois},
                   {"candidates", big(s.candidates)}};
  }
  return j;
}

struct LoadedGroup {
  fam::Instance instance;
  Caps caps;
};

inline LoadedGroup load_group(const json& j, std::size_t h_cap = grp::kDefaultOrderCap) {
  try {
    if (read_u64(need(j, "schema_version"), "schema_version") != kSchemaVersion)
      throw Error(Errc::ParseError, "unsupported schema_version");
    LoadedGroup out;
    const auto fp = params_from_json(need(j, "params"));
    const auto P = pgroup_from_json(need(j, "P"));
    std::vector<std::pair<std::string, act::Aut>> gens;
    for (const auto& g : need(need(j, "H"), "generators"))
      gens.push_back({need(g, "name").get<std::string>(), aut_from_json(need(g, "aut"), P)});
    out.instance = fam::assemble(fp, P, std::move(gens), h_cap);
    auto F = field_from_json(need(j, "field"));
    if (F && P.field() && F->same_as(*P.field())) F = P.field();
    out.instance.field = F;
    out.instance.flags = need(j, "flags").get<std::vector<std::string>>();
    for (const auto& c : need(j, "build_checks"))
      out.instance.build_checks.push_back(
          {need(c, "name").get<std::string>(), need(c, "passed").get<bool>(), need(c, "detail").get<std::string>()});
    if (j.contains("search")) {
      const auto& s = j.at("search");
      fam::NoPrimeSearch S;
      S.rho = read_u64s(need(s, "rho"), "rho");
      S.K_order = read_u64(need(s, "K_order"), "K_order");
      S.m = read_u64(need(s, "m"), "m");
      S.mu_exponent = read_u64(need(s, "mu_exponent"), "mu_exponent");
      S.galois = static_cast<unsigned>(read_u64(need(s, "galois"), "galois"));
      S.candidates = read_u64(need(s, "candidates"), "candidates");
      out.instance.search = S;
    }
    out.caps = caps_from_json(j.value("caps", json(nullptr)));
    return out;
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, e.what());
  }
}

inline LoadedGroup parse_group(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, e.what());
  }
  return load_group(j);
}

// ---- report document --------------------------------------------------------

enum class Status { pass, fail, pass_cert_only };

inline const char* status_name(Status s) {
  switch (s) {
    case Status::pass: return "PASS";
    case Status::fail: return "FAIL";
    case Status::pass_cert_only: return "PASS_CERT_ONLY";
  }
  return "?";
}

inline json to_json(const fam::Certificate& c) {
  json checks = json::array();
  for (const auto& ch : c.checks) {
    json x = {{"name", ch.name}, {"verdict", ch.passed ? "PASS" : "FAIL"}, {"detail", ch.detail}};
    if (!ch.witness.empty()) x["witness"] = big_array(ch.witness);
    checks.push_back(x);
  }
  json j = {{"case", c.case_tag},
            {"checks", checks},
            {"H_order", std::to_string(c.H_order)},
            {"C_order", std::to_string(c.C_order)},
            {"D_exponent", c.D_dim},
            {"derived_exponent", c.derived_dim},
            {"a", c.a},
            {"alpha", c.alpha},
            {"cd_H", big_array(c.cd_H)},
            {"cd_H_method", c.cd_H_method},
            {"ramification_method", c.ramification_method},
            {"H_derived_in_C", c.H_derived_in_C},
            {"passed", c.passed()}};
  return j;
}

inline json to_json(const fam::Prediction& pr) {
  return {{"dl", pr.dl}, {"fitting_height", pr.fh ? json(*pr.fh) : json(nullptr)}, {"cd", big_array(pr.cd)}};
}

inline json to_json(const fam::OracleResult& r) {
  json j = {{"status", fam::oracle_status_name(r.status)}, {"reason", r.reason}};
  if (r.status != fam::OracleStatus::skipped && !r.degrees.empty()) {
    j["degrees"] = big_array(r.degrees);
    j["cd"] = big_array(r.degree_set);
    j["dl"] = r.dl;
    j["fitting_height"] = r.fh;
    j["modulus"] = r.modulus;
    j["class_count"] = r.class_count;
  }
  j["diffs"] = r.diffs;
  return j;
}

struct Report {
  fam::FamilyParams params;
  std::string G_order;
  std::optional<fam::Certificate> certificate;
  std::optional<fam::OracleResult> oracle;
  std::vector<std::string> flags;
  Status status = Status::fail;
  double certify_seconds = 0;
};

/// PASS needs a passing certificate and, when the oracle ran, agreement with it.
inline Status overall_status(const std::optional<fam::Certificate>& c, const std::optional<fam::OracleResult>& o) {
  if (c && !c->passed()) return Status::fail;
  if (o) {
    if (o->status == fam::OracleStatus::failed) return Status::fail;
    if (o->status == fam::OracleStatus::skipped) return c ? Status::pass_cert_only : Status::fail;
    return Status::pass;
  }
  return c ? Status::pass : Status::fail;
}

inline json report_document(const Report& r) {
  json j = {{"schema_version", kSchemaVersion},
            {"document", "report"},
            {"params", to_json(r.params)},
            {"G_order", r.G_order},
            {"flags", r.flags},
            {"status", status_name(r.status)}};
  j["certificate"] = r.certificate ? to_json(*r.certificate) : json(nullptr);
  j["predictions"] = r.certificate && r.certificate->prediction ? to_json(*r.certificate->prediction) : json(nullptr);
  j["oracle"] = r.oracle ? to_json(*r.oracle) : json(nullptr);
  json t = json::object();
  if (r.certificate) t["certify_seconds"] = r.certify_seconds;
  if (r.oracle) t["oracle_seconds"] = r.oracle->seconds;
  j["timings"] = t;
  return j;
}

/// Everything but the timings block, for byte-level comparisons.
inline json canonical(json j) {
  j.erase("timings");
  return j;
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace solvdeg::io
