// solvdeg: build, certify and cross-check the dl-4 / four-degree families.
// Exit codes: 0 success, 1 verification failure, 2 invalid input, 3 resource cap.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "solvdeg.hpp"

using namespace solvdeg;

namespace {

enum Exit { kOk = 0, kFail = 1, kInput = 2, kCap = 3 };

struct GroupSource {
  std::string in;
  std::string family;
  u64 p = 0;
  std::optional<u64> q, r, n, m;

  void attach(CLI::App* sub) {
    sub->add_option("--in", in, "group document written by 'build'");
    std::vector<std::string> names;
    for (const auto& [f, name] : fam::family_names()) names.push_back(name);
    sub->add_option("--family", family, "family name")->check(CLI::IsMember(names));
    sub->add_option("--p", p, "prime p");
    sub->add_option("--q", q, "parameter q");
    sub->add_option("--r", r, "parameter r");
    sub->add_option("--n", n, "parameter n");
    sub->add_option("--m", m, "parameter m (no_prime)");
  }

  fam::FamilyParams params() const {
    if (family.empty()) throw Error(Errc::InvalidParams, "give --in FILE or --family NAME");
    fam::FamilyParams fp = fam::preset(fam::parse_family(family));
    if (p) {
      // explicit p: only the flags given count, no preset leftovers
      fp = {fp.family, p, q, r, n, m};
    } else {
      if (q) fp.q = q;
      if (r) fp.r = r;
      if (n) fp.n = n;
      if (m) fp.m = m;
    }
    return fp;
  }
};

struct Caps {
  u64 max_order = grp::kDefaultOrderCap;
  u64 max_classes = chardeg::kDefaultClassCap;
  std::size_t aut_samples = 1000;

  void attach(CLI::App* sub) {
    sub->add_option("--max-order", max_order, "enumeration cap")->capture_default_str();
    sub->add_option("--max-classes", max_classes, "class count cap")->capture_default_str();
  }
  fam::CertOptions options() const {
    fam::CertOptions o;
    o.max_order = max_order;
    o.max_classes = max_classes;
    o.aut_samples = aut_samples;
    return o;
  }
};

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(Errc::ParseError, "cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw Error(Errc::InvalidParams, "cannot write " + path);
  f << text;
}

fam::Instance load(const GroupSource& src, u64 h_cap) {
  if (!src.in.empty()) {
    auto L = io::load_group(io::json::parse(read_file(src.in)), h_cap);
    return std::move(L.instance);
  }
  return fam::build(src.params(), h_cap);
}

std::string setstr(const std::vector<u64>& v) { return check::join(v); }

void print_certificate(const fam::Certificate& c) {
  std::cout << "certificate: " << (c.passed() ? "PASS" : "FAIL") << " (case " << c.case_tag << ")\n";
  for (const auto& ch : c.checks) {
    std::cout << "  " << (ch.passed ? "ok   " : "FAIL ") << ch.name << ": " << ch.detail;
    if (!ch.passed && !ch.witness.empty()) {
      std::cout << " witness [";
      for (std::size_t i = 0; i < ch.witness.size(); ++i) std::cout << (i ? " " : "") << ch.witness[i];
      std::cout << "]";
    }
    std::cout << "\n";
  }
  if (c.prediction)
    std::cout << "predicted: cd " << setstr(c.prediction->cd) << ", dl " << c.prediction->dl << ", fh "
              << (c.prediction->fh ? std::to_string(*c.prediction->fh) : "?") << "\n";
}

void print_oracle(const fam::OracleResult& o) {
  std::cout << "oracle: " << fam::oracle_status_name(o.status);
  if (!o.reason.empty()) std::cout << " (" << o.reason << ")";
  std::cout << "\n";
  if (!o.degrees.empty())
    std::cout << "  cd " << setstr(o.degree_set) << ", " << o.class_count << " classes, dl " << o.dl << ", fh " << o.fh
              << "\n";
  for (const auto& d : o.diffs) std::cout << "  diff: " << d << "\n";
}

int exit_for(io::Status s) { return s == io::Status::fail ? kFail : kOk; }

int emit(const io::Report& r, const std::string& out) {
  std::cout << "status: " << io::status_name(r.status) << "\n";
  if (!out.empty()) write_file(out, io::dump(io::report_document(r)));
  return exit_for(r.status);
}

template <class F>
int guarded(F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code()) {
      case Errc::ClosureLimitExceeded:
      case Errc::ClassCapExceeded:
      case Errc::OutOfRange: return kCap;
      case Errc::SearchFailed: return kFail;
      default: return kInput;
    }
  } catch (const io::json::exception& e) {
    std::cerr << "error: ParseError: " << e.what() << "\n";
    return kInput;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solvable groups with derived length 4 and four character degrees"};
  app.require_subcommand(1);

  // build
  GroupSource b_src;
  Caps b_caps;
  std::string b_out;
  auto* build = app.add_subcommand("build", "construct an instance and write its group document");
  b_src.attach(build);
  b_caps.attach(build);
  build->add_option("--out", b_out, "output file");

  // certify
  GroupSource c_src;
  Caps c_caps;
  std::string c_out;
  auto* certify = app.add_subcommand("certify", "check the structural hypotheses and predict the degrees");
  c_src.attach(certify);
  c_caps.attach(certify);
  certify->add_option("--out", c_out, "report file");
  certify->add_option("--aut-samples", c_caps.aut_samples, "random products per generator")->capture_default_str();

  // oracle
  GroupSource o_src;
  Caps o_caps;
  std::string o_out;
  auto* oracle = app.add_subcommand("oracle", "enumerate G and compute its degrees with Dixon's method");
  o_src.attach(oracle);
  o_caps.attach(oracle);
  oracle->add_option("--out", o_out, "report file");

  // verify
  GroupSource v_src;
  Caps v_caps;
  std::string v_out;
  auto* verify = app.add_subcommand("verify", "certify, run the oracle, compare");
  v_src.attach(verify);
  v_caps.attach(verify);
  verify->add_option("--out", v_out, "report file");
  verify->add_option("--aut-samples", v_caps.aut_samples, "random products per generator")->capture_default_str();

  // selftest
  std::vector<std::string> s_filter;
  bool s_break = false;
  auto* selftest = app.add_subcommand("selftest", "run the property suites");
  selftest->add_option("--filter", s_filter, "suite names to run");
  selftest->add_flag("--break-composition", s_break, "test hook: use a non-associative product")->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kInput;
  }

  if (build->parsed()) {
    return guarded([&] {
      if (!b_src.in.empty()) throw Error(Errc::InvalidParams, "build takes family flags, not --in");
      const auto fp = b_src.params();
      const auto I = fam::build(fp);
      std::cout << fam::describe(fp) << ": |P| = " << I.P.p() << "^" << I.P.dim() << ", |H| = " << I.H.order()
                << ", |G| = " << I.order_string() << "\n";
      for (const auto& c : I.build_checks) std::cout << "  build check " << c.name << ": " << (c.passed ? "ok" : "FAIL") << "\n";
      for (const auto& f : I.flags) std::cout << "  flag " << f << "\n";
      if (!b_out.empty()) write_file(b_out, io::dump(io::group_document(I, {b_caps.max_order, b_caps.max_classes})));
      return kOk;
    });
  }

  if (certify->parsed() || verify->parsed()) {
    const bool full = verify->parsed();
    const auto& src = full ? v_src : c_src;
    const auto& caps = full ? v_caps : c_caps;
    const auto& out = full ? v_out : c_out;
    return guarded([&] {
      const auto I = load(src, caps.max_order);
      const auto opt = caps.options();
      io::Report r;
      r.params = I.params;
      r.G_order = I.order_string();
      r.flags = I.flags;
      std::cout << fam::describe(I.params) << ": |G| = " << r.G_order << "\n";
      const auto t0 = std::chrono::steady_clock::now();
      r.certificate = fam::lemma_certificate(I, opt);
      r.certify_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      print_certificate(*r.certificate);
      if (full) {
        r.oracle = fam::verify_against_oracle(I, *r.certificate, opt);
        print_oracle(*r.oracle);
      }
      r.status = io::overall_status(r.certificate, r.oracle);
      return emit(r, out);
    });
  }

  if (oracle->parsed()) {
    return guarded([&] {
      const auto I = load(o_src, o_caps.max_order);
      io::Report r;
      r.params = I.params;
      r.G_order = I.order_string();
      r.flags = I.flags;
      std::cout << fam::describe(I.params) << ": |G| = " << r.G_order << "\n";
      auto o = fam::run_oracle(I, o_caps.options());
      // no certificate here: compare against the closed-form profile instead
      const auto th = fam::theorem_profile(I.params);
      fam::compare(o, th);
      std::cout << "closed form: cd " << setstr(th.cd) << "\n";
      print_oracle(o);
      r.oracle = o;
      if (o.status == fam::OracleStatus::skipped) {
        r.status = io::Status::fail;
        if (!o_out.empty()) write_file(o_out, io::dump(io::report_document(r)));
        std::cout << "status: SKIPPED_ORACLE\n";
        return static_cast<int>(kCap);
      }
      r.status = o.status == fam::OracleStatus::verified ? io::Status::pass : io::Status::fail;
      return emit(r, o_out);
    });
  }

  if (selftest->parsed()) {
    check::Options opt;
    opt.break_composition = s_break;
    bool all = true;
    std::size_t ran = 0;
    for (const auto& reg : check::suites()) {
      if (!s_filter.empty() && std::find(s_filter.begin(), s_filter.end(), reg.name) == s_filter.end()) continue;
      ++ran;
      const auto t0 = std::chrono::steady_clock::now();
      check::Suite s;
      try {
        s = reg.run(opt);
      } catch (const std::exception& e) {
        s.name = reg.name;
        s.add("suite", false, e.what());
      }
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      std::printf("%-11s %-5s %7.2fs\n", reg.name, s.passed() ? "PASS" : "FAIL", secs);
      for (const auto& l : s.lines)
        std::printf("    %-5s %-42s %s\n", l.ok ? "ok" : "FAIL", l.label.c_str(), l.detail.c_str());
      all = all && s.passed();
    }
    if (ran == 0) {
      std::cerr << "error: no suite matches the filter\n";
      return kInput;
    }
    return all ? kOk : kFail;
  }
  return kInput;
}
