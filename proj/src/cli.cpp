#include "fraisse/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include "fraisse/amalgamation.hpp"
#include "fraisse/doubled_cover.hpp"
#include "fraisse/errors.hpp"
#include "fraisse/generic.hpp"
#include "fraisse/reduct.hpp"
#include "fraisse/text_format.hpp"
#include "fraisse/types.hpp"
#include "fraisse/zero_one.hpp"

namespace fraisse::cli {

std::string digest(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) h = (h ^ c) * 0x100000001b3ull;
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

// ---------------------------------------------------------------------------
// Report plumbing

struct Session {
  std::ostream& out;
  std::string command;
  std::uint64_t seed = 1;
  bool csv = false;
  std::vector<std::pair<std::string, std::string>> inputs;

  std::string read(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    inputs.emplace_back(path, digest(buf.str()));
    return buf.str();
  }

  Document document(const std::string& path) {
    const std::string text = read(path);
    return parse_document(std::string_view(text));
  }

  void header() {
    out << "# fraisse " << kVersion << '\n';
    out << "# command " << command << '\n';
    out << "# seed " << seed << '\n';
    if (inputs.empty()) out << "# input none\n";
    for (const auto& [path, d] : inputs) out << "# input " << path << " fnv1a64=" << d << '\n';
  }
};

using Row = std::vector<std::string>;

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

void table(std::ostream& out, bool csv, const Row& head, const std::vector<Row>& rows) {
  if (csv) {
    auto line = [&](const Row& r) {
      for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << csv_field(r[i]);
      out << '\n';
    };
    line(head);
    for (const auto& r : rows) line(r);
    return;
  }
  std::vector<std::size_t> width(head.size());
  for (std::size_t i = 0; i < head.size(); ++i) width[i] = head[i].size();
  for (const auto& r : rows)
    for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
  auto line = [&](const Row& r) {
    std::string s;
    for (std::size_t i = 0; i < r.size(); ++i) {
      s += r[i];
      if (i + 1 < r.size()) s += std::string(width[i] - r[i].size() + 2, ' ');
    }
    out << s << '\n';
  };
  line(head);
  for (const auto& r : rows) line(r);
}

template <class Seq>
std::string join(const Seq& xs, const char* sep = ",") {
  std::ostringstream s;
  bool first = true;
  for (const auto& x : xs) {
    if (!first) s << sep;
    s << x;
    first = false;
  }
  return s.str();
}

std::string fixed(double x, int digits = 4) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

const char* verdict_word(Verdict3 v) {
  switch (v) {
    case Verdict3::Yes: return "yes";
    case Verdict3::No: return "no";
    default: return "inconclusive";
  }
}

int verdict_code(Verdict3 v) {
  switch (v) {
    case Verdict3::Yes: return kOk;
    case Verdict3::No: return kNegative;
    default: return kInconclusive;
  }
}

// ---------------------------------------------------------------------------
// Inputs

P2Spec load_p2(Session& s, const std::string& path) {
  const Document doc = s.document(path);
  if (!doc.has_p2) throw InputError(path + ": no p2 section");
  auto members = doc.p2_members();
  if (members.empty() && doc.vocabularies.empty()) throw InputError(path + ": no vocabulary");
  Vocabulary v = members.empty() ? doc.vocabularies.front() : members.front().vocab();
  return P2Spec(std::move(v), std::move(members));
}

Structure load_structure(Session& s, const std::string& path, const std::string& name) {
  const Document doc = s.document(path);
  if (!name.empty()) return doc.find(name).structure;
  auto plain = doc.plain_structures();
  if (plain.empty()) throw InputError(path + ": no structure");
  return plain.front();
}

struct ClassOpts {
  std::string p2, list;
  std::size_t size_bound = 4;
};

void add_class_options(CLI::App* sc, ClassOpts& o) {
  auto* p = sc->add_option("--p2", o.p2, "P2 set; the class is its RP2");
  auto* l = sc->add_option("--class", o.list, "file whose plain structures list the class members");
  p->excludes(l);
}

ClassSpec load_class(Session& s, const ClassOpts& o) {
  if (!o.p2.empty()) return P2Class{load_p2(s, o.p2), o.size_bound};
  if (o.list.empty()) throw InputError("one of --p2 or --class is required");
  return ExplicitList{s.document(o.list).plain_structures(), o.size_bound};
}

struct OracleOpts {
  std::string p2;
  std::size_t points = 16;
  std::size_t level = 2;
  std::size_t extra = 0;
  std::size_t passes = 1;
  std::size_t sat_budget = 200000;
};

void add_oracle_options(CLI::App* sc, OracleOpts& o) {
  sc->add_option("--points", o.points, "random points before saturation")->capture_default_str();
  sc->add_option("--saturate", o.level, "saturation level (0 for none)")->capture_default_str();
  sc->add_option("--extra", o.extra, "random points added after saturation")->capture_default_str();
  sc->add_option("--sat-budget", o.sat_budget, "cap on points added by saturation")->capture_default_str();
}

/// Builds the oracle and prints its summary; empty when saturation failed.
std::optional<GenericOracle> build_oracle(Session& s, const P2Spec& p2, const OracleOpts& o) {
  GenericOracle g(p2, s.seed);
  g.add_random_points(o.points);
  for (std::size_t pass = 0; o.level > 0 && pass < o.passes; ++pass) {
    auto rep = g.saturate(o.level, o.sat_budget);
    s.out << "# saturation pass " << pass + 1 << " level " << o.level << ": " << (rep.saturated ? "ok" : "failed")
          << ", added " << rep.points_added << ", missing " << rep.missing_after << '\n';
    if (!rep.saturated) return std::nullopt;
  }
  g.add_random_points(o.extra);
  s.out << "# oracle size " << g.size() << " core " << g.core_size() << '\n';
  return g;
}

// ---------------------------------------------------------------------------
// Structural commands

int cmd_check_adequate(Session& s, const std::string& path) {
  const P2Spec p2 = load_p2(s, path);
  s.header();
  auto rep = check_1_adequate(p2);
  s.out << "members " << p2.members.size() << '\n';
  s.out << "verdict " << (rep.holds ? "holds" : "fails") << '\n';
  if (!rep.reason.empty()) s.out << "reason " << rep.reason << '\n';
  if (rep.failing_pair)
    s.out << "failing-points " << rep.failing_pair->first << ' ' << rep.failing_pair->second << '\n';
  return rep.holds ? kOk : kNegative;
}

int cmd_check_hp(Session& s, const ClassOpts& o) {
  const ClassSpec spec = load_class(s, o);
  s.header();
  auto rep = check_hp(spec, o.size_bound);
  s.out << "bound " << rep.bound << '\n';
  s.out << "members-checked " << rep.members_checked << '\n';
  s.out << "verdict " << (rep.holds ? "holds" : "fails") << '\n';
  if (rep.violation) {
    write_structure(s.out, "outside", rep.violation->first);
    write_structure(s.out, "member", rep.violation->second);
  }
  return rep.holds ? kOk : kNegative;
}

int cmd_check_ap(Session& s, const ClassOpts& o, std::size_t amalgam_bound) {
  const ClassSpec spec = load_class(s, o);
  s.header();
  auto rep = check_ap(spec, amalgam_bound);
  s.out << "size-bound " << rep.size_bound << '\n';
  s.out << "amalgam-bound " << rep.amalgam_bound << '\n';
  s.out << "triples-checked " << rep.triples_checked << '\n';
  s.out << "verdict " << to_string(rep.verdict) << '\n';
  if (!rep.note.empty()) s.out << "note " << rep.note << '\n';
  if (rep.counterexample) {
    const auto& c = *rep.counterexample;
    write_structure(s.out, "A", c.a);
    write_structure(s.out, "B", c.b);
    write_structure(s.out, "C", c.c);
    s.out << "f_B " << join(c.f_b.map) << '\n';
    s.out << "f_C " << join(c.f_c.map) << '\n';
  }
  switch (rep.verdict) {
    case APVerdict::Holds: return kOk;
    case APVerdict::Fails: return kNegative;
    default: return kInconclusive;
  }
}

int cmd_enum(Session& s, const std::string& path, std::size_t n) {
  const P2Spec p2 = load_p2(s, path);
  s.header();
  auto reps = enumerate_rp2(p2, n);
  s.out << "size " << n << " iso-types " << reps.size() << '\n';
  write_vocabulary(s.out, p2.vocab);
  for (std::size_t i = 0; i < reps.size(); ++i)
    write_structure(s.out, "rp2_" + std::to_string(n) + "_" + std::to_string(i), reps[i]);
  return kOk;
}

int cmd_gen(Session& s, const OracleOpts& o, const std::string& transcript) {
  const P2Spec p2 = load_p2(s, o.p2);
  s.header();
  auto g = build_oracle(s, p2, o);
  if (!g) return kInconclusive;
  write_vocabulary(s.out, p2.vocab);
  write_structure(s.out, "approximation", g->current());
  if (transcript.empty()) {
    for (const auto& step : g->log()) s.out << "# step " << step.str() << '\n';
  } else {
    std::ofstream t(transcript);
    if (!t) throw InputError("cannot write '" + transcript + "'");
    for (const auto& step : g->log()) t << step.str() << '\n';
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// Type and acl commands

struct SourceOpts {
  std::string input, name;
  bool assume_saturated = false;
  OracleOpts oracle;
};

void add_source_options(CLI::App* sc, SourceOpts& o) {
  auto* in = sc->add_option("--input", o.input, "structure file (first plain structure unless --name)");
  sc->add_option("--name", o.name, "structure name inside --input");
  auto* p2 = sc->add_option("--p2", o.oracle.p2, "P2 set; analyse a generated oracle instead");
  in->excludes(p2);
  add_oracle_options(sc, o.oracle);
}

/// Either a fixed structure from a file or a generated oracle.
struct Source {
  std::optional<Structure> fixed;
  std::optional<GenericOracle> oracle;
  bool failed = false;

  const Structure& structure() const { return fixed ? *fixed : oracle->current(); }
};

Source load_source(Session& s, const SourceOpts& o) {
  Source src;
  if (!o.input.empty()) {
    src.fixed = load_structure(s, o.input, o.name);
    s.header();
    return src;
  }
  if (o.oracle.p2.empty()) throw InputError("one of --input or --p2 is required");
  const P2Spec p2 = load_p2(s, o.oracle.p2);
  s.header();
  src.oracle = build_oracle(s, p2, o.oracle);
  src.failed = !src.oracle;
  return src;
}

std::vector<Element> context_universe(const Source& src) {
  const std::size_t n = src.fixed ? src.fixed->size() : src.oracle->core_size();
  if (n > 64) throw InputError("acl contexts are limited to 64 elements");
  std::vector<Element> u(n);
  for (Element i = 0; i < n; ++i) u[i] = i;
  return u;
}

AclContext make_context(Source& src, const SourceOpts& o, std::size_t d, std::size_t budget) {
  if (src.oracle) return oracle_acl_context(*src.oracle, d, budget);
  const bool ok = o.assume_saturated;
  return static_acl_context(structure_typer(*src.fixed), context_universe(src), d,
                            [ok](std::size_t) { return ok; });
}

int cmd_types(Session& s, const SourceOpts& o, std::size_t n, const std::vector<Element>& params, bool distinct) {
  Source src = load_source(s, o);
  if (src.failed) return kInconclusive;
  for (Element p : params)
    if (p >= src.structure().size()) throw InputError("parameter " + std::to_string(p) + " outside the universe");
  auto census = enumerate_types(src.structure(), n, params, distinct);
  s.out << "arity " << n << " params " << (params.empty() ? "-" : join(params)) << " distinct "
        << yes_no(distinct) << '\n';
  s.out << "types " << census.entries.size() << " tuples " << census.total() << '\n';
  std::vector<Row> rows;
  for (const auto& [id, count] : census.entries) rows.push_back({id.str(), std::to_string(count)});
  table(s.out, s.csv, {"type", "count"}, rows);
  return kOk;
}

int cmd_acl(Session& s, const SourceOpts& o, const std::vector<Element>& base, std::size_t d, std::size_t budget) {
  Source src = load_source(s, o);
  if (src.failed) return kInconclusive;
  for (Element b : base)
    if (b >= src.structure().size()) throw InputError("base element " + std::to_string(b) + " outside the universe");
  AclReport rep;
  if (src.oracle) {
    rep = acl_approx(*src.oracle, base, d, budget);
  } else {
    std::vector<Element> all(src.fixed->size());
    for (Element i = 0; i < all.size(); ++i) all[i] = i;
    rep = acl_scan(structure_typer(*src.fixed), base, d, o.assume_saturated, all);
  }
  s.out << "base " << (base.empty() ? "-" : join(base)) << " d " << d << '\n';
  std::vector<Row> rows;
  for (const auto& e : rep.entries)
    rows.push_back({std::to_string(e.element), std::to_string(e.realizations), to_string(e.verdict)});
  table(s.out, s.csv, {"element", "realizations", "verdict"}, rows);
  const auto closure = rep.closure();
  s.out << "acl " << (closure.empty() ? "-" : join(closure)) << '\n';
  s.out << "inconclusive " << rep.inconclusive() << '\n';
  return rep.inconclusive() ? kInconclusive : kOk;
}

int cmd_triviality(Session& s, const SourceOpts& o, std::size_t max_b, std::size_t d, std::size_t budget) {
  Source src = load_source(s, o);
  if (src.failed) return kInconclusive;
  AclContext ctx = make_context(src, o, d, budget);
  auto rep = check_triviality(ctx, max_b);
  s.out << "universe " << ctx.universe().size() << " max-b " << max_b << " d " << d << '\n';
  s.out << "bases-checked " << rep.bases_checked << '\n';
  s.out << "inconclusive-entries " << rep.inconclusive_entries << '\n';
  s.out << "trivial " << verdict_word(rep.verdict) << '\n';
  if (rep.counterexample)
    s.out << "counterexample " << rep.counterexample->first << " over " << join(rep.counterexample->second) << '\n';
  return verdict_code(rep.verdict);
}

int cmd_degenerate(Session& s, const SourceOpts& o, std::size_t rho, std::size_t max_a, std::size_t max_b,
                   std::size_t max_c, std::size_t d, std::size_t budget) {
  Source src = load_source(s, o);
  if (src.failed) return kInconclusive;
  AclContext ctx = make_context(src, o, d, budget);
  auto rep = check_degenerate_dependence(ctx, rho, max_a, max_b, max_c);
  s.out << "universe " << ctx.universe().size() << " rho " << rho << " sizes " << max_a << ',' << max_b << ','
        << max_c << '\n';
  s.out << "cases-checked " << rep.cases_checked << '\n';
  s.out << "dependences " << rep.dependences << '\n';
  s.out << "inconclusive-entries " << rep.inconclusive_entries << '\n';
  s.out << (rho - 1) << "-degenerate " << verdict_word(rep.verdict) << '\n';
  if (rep.counterexample) {
    auto show = [](const std::vector<Element>& v) { return v.empty() ? std::string("-") : join(v); };
    s.out << "counterexample A " << show(rep.counterexample->a) << " B " << show(rep.counterexample->b) << " C "
          << show(rep.counterexample->c) << '\n';
  }
  return verdict_code(rep.verdict);
}

// ---------------------------------------------------------------------------
// Doubled cover walkthrough

/// Empty, point, non-edge and edge over one symmetric loop-free symbol E.
P2Spec fixed_random_graph_p2() {
  const Vocabulary v({{"E", 2}}, "graph");
  Structure edge(v, 2);
  edge.set_edge(0, 0, 1);
  return P2Spec(v, {Structure(v, 0), Structure(v, 1), Structure(v, 2), edge});
}

struct Ex412Opts {
  std::size_t base_size = 32;
  std::size_t level = 3;
  std::string check = "all";
  std::size_t trials = 200;
  std::size_t claim2_n = 2;
  std::size_t reduct_nmax = 4;
  std::size_t sat_budget = 500000;
  std::string emit_dir;
  std::size_t emit_nmax = 3;
};

std::string show_tuple(const std::vector<Element>& t) { return "(" + join(t) + ")"; }

void write_file(const std::filesystem::path& p, const std::function<void(std::ostream&)>& body) {
  std::ofstream f(p);
  if (!f) throw InputError("cannot write '" + p.string() + "'");
  body(f);
}

int cmd_example412(Session& s, const Ex412Opts& o) {
  s.header();
  const bool all = o.check == "all";
  auto want = [&](const char* c) { return all || o.check == c; };

  GenericOracle f(fixed_random_graph_p2(), s.seed);
  f.add_random_points(o.base_size);
  auto sat = f.saturate(o.level, o.sat_budget);
  s.out << "base F size " << f.size() << " core " << f.core_size() << " saturation " << o.level << ' '
        << (sat.saturated ? "ok" : "failed") << '\n';
  if (!sat.saturated) return kInconclusive;
  const DoubledStructure d = build_double(f);
  const QuotientGeometry q = quotient(d);
  s.out << "cover M size " << d.m.size() << " classes " << q.size() << '\n';

  bool failed = false, inconclusive = false;
  auto pair_line = [&](const char* name, const PairViolation& v) {
    s.out << name << ' ' << (v.holds ? "holds" : "fails");
    if (v.violation) s.out << " at (" << v.violation->first << ',' << v.violation->second << ')';
    s.out << '\n';
    failed = failed || !v.holds;
  };
  if (want("claim1")) pair_line("claim1", verify_claim1(d));
  if (want("edef")) pair_line("edef", e_definability_check(d));
  if (want("claim2")) {
    try {
      auto r = verify_claim2(d, o.claim2_n, o.trials, s.seed);
      const bool ok = r.successes + r.skipped == r.trials && r.skipped == 0;
      s.out << "claim2 n " << r.n << " trials " << r.trials << " successes " << r.successes << " skipped "
            << r.skipped << ' ' << (ok ? "holds" : r.failure ? "fails" : "inconclusive") << '\n';
      if (r.failure)
        s.out << "claim2-failure " << show_tuple(r.failure->first) << " -> " << show_tuple(r.failure->second) << '\n';
      failed = failed || r.failure.has_value();
      inconclusive = inconclusive || (!r.failure && r.skipped > 0);
    } catch (const SaturationError& e) {
      s.out << "claim2 inconclusive: " << e.what() << '\n';
      inconclusive = true;
    }
  }
  if (want("claim3")) {
    auto r = verify_claim3(q);
    s.out << "claim3 " << (r.holds ? "holds" : "fails") << " pairs " << r.pairs_checked;
    if (r.violation) s.out << " at (" << r.violation->first << ',' << r.violation->second << ')';
    s.out << '\n';
    failed = failed || !r.holds;
  }
  if (want("separation")) {
    try {
      auto w = three_type_separation(q);
      s.out << "separation g " << show_tuple(w.g) << " h " << show_tuple(w.h) << " pairwise-equal "
            << yes_no(w.pairwise_equal) << " triple-distinct " << yes_no(w.triple_distinct) << '\n';
      failed = failed || !(w.pairwise_equal && w.triple_distinct);
    } catch (const NotFoundError& e) {
      s.out << "separation inconclusive: " << e.what() << '\n';
      inconclusive = true;
    }
  }
  if (want("reduct")) {
    const std::size_t core = f.core_size();
    const auto g = restrict_carrier(typed_universe(q.typer(), o.reduct_nmax, "G"), core);
    const auto g0 = restrict_carrier(typed_universe(q.binary_typer(), o.reduct_nmax, "G0"), core);
    const auto gs0 = restrict_carrier(typed_universe(quotient_star(d).binary_typer(), o.reduct_nmax, "G*0"), core);
    auto weak = is_reduct(g0, g, std::min<std::size_t>(3, o.reduct_nmax));
    auto strong = is_reduct(gs0, g, o.reduct_nmax);
    s.out << "reduct G over G0: " << weak.describe() << '\n';
    s.out << "reduct G over G*0: " << strong.describe() << '\n';
    failed = failed || weak.holds || !strong.holds;
  }

  if (!o.emit_dir.empty()) {
    namespace fs = std::filesystem;
    const fs::path dir(o.emit_dir);
    fs::create_directories(dir);
    write_file(dir / "F.txt", [&](std::ostream& os) {
      write_vocabulary(os, d.base.vocab());
      write_structure(os, "F", d.base);
    });
    write_file(dir / "M.txt", [&](std::ostream& os) {
      write_vocabulary(os, d.m.vocab());
      write_structure(os, "M", d.m);
    });
    const Structure star = build_expansion_star(d);
    write_file(dir / "Mstar.txt", [&](std::ostream& os) {
      write_vocabulary(os, star.vocab());
      write_structure(os, "Mstar", star);
    });
    write_file(dir / "quotient.txt", [&](std::ostream& os) {
      os << "# class rep partner\n";
      for (std::size_t c = 0; c < q.size(); ++c) os << c << ' ' << q.rep(c) << ' ' << q.partner(q.rep(c)) << '\n';
    });
    const std::size_t core = f.core_size();
    const std::string prov = "saturation " + std::to_string(o.level) + " seed " + std::to_string(s.seed);
    write_file(dir / "G.types", [&](std::ostream& os) {
      write_typed_universe(os, restrict_carrier(typed_universe(q.typer(), o.emit_nmax, "G " + prov), core));
    });
    write_file(dir / "G0.types", [&](std::ostream& os) {
      write_typed_universe(os, restrict_carrier(typed_universe(q.binary_typer(), o.emit_nmax, "G0 " + prov), core));
    });
    write_file(dir / "Gstar0.types", [&](std::ostream& os) {
      write_typed_universe(
          os, restrict_carrier(typed_universe(quotient_star(d).binary_typer(), o.emit_nmax, "G*0 " + prov), core));
    });
    s.out << "emitted F.txt M.txt Mstar.txt quotient.txt G.types G0.types Gstar0.types\n";
  }
  return failed ? kNegative : inconclusive ? kInconclusive : kOk;
}

// ---------------------------------------------------------------------------
// Zero-one and reduct

int cmd_zeroone(Session& s, const std::string& path, const std::vector<std::string>& axiom_texts,
                std::optional<std::size_t> all_k, const std::vector<std::size_t>& sizes, std::size_t trials) {
  const P2Spec p2 = load_p2(s, path);
  std::vector<AxiomSpec> axioms;
  for (const auto& t : axiom_texts) axioms.push_back(parse_axiom(t, p2.vocab));
  if (axiom_texts.empty() && !all_k) all_k = 2;
  if (all_k) {
    auto rep = check_1_adequate(p2);
    if (!rep.holds) throw AdequacyError("P2 set is not 1-adequate: " + rep.reason);
    for (auto& a : all_extension_axioms(PatternTable(p2), *all_k)) axioms.push_back(std::move(a));
  }
  s.header();
  for (const auto& a : axioms) s.out << "# axiom " << format_axiom(a, p2.vocab) << '\n';
  auto rep = convergence_report(p2, axioms, sizes, trials, s.seed);
  std::vector<Row> rows;
  for (const auto& r : rep.rows) {
    auto [lo, hi] = r.wilson();
    rows.push_back({std::to_string(r.n), std::to_string(r.trials), std::to_string(r.successes), fixed(r.estimate()),
                    fixed(lo), fixed(hi)});
  }
  table(s.out, s.csv, {"n", "trials", "successes", "estimate", "wilson_lo", "wilson_hi"}, rows);
  s.out << "# monotone " << yes_no(rep.monotone) << '\n';
  s.out << "# incompatible " << yes_no(rep.incompatible) << '\n';
  return rep.monotone && !rep.incompatible ? kOk : kNegative;
}

int cmd_reduct(Session& s, const std::string& source, const std::string& target, std::size_t nmax) {
  std::istringstream src_text(s.read(source));
  std::istringstream tgt_text(s.read(target));
  const auto a = read_typed_universe(src_text);
  const auto b = read_typed_universe(tgt_text);
  s.header();
  if (!a.provenance.empty()) s.out << "# source provenance " << a.provenance << '\n';
  if (!b.provenance.empty()) s.out << "# target provenance " << b.provenance << '\n';
  auto rep = is_reduct(a, b, nmax);
  s.out << "carrier " << a.carrier << '\n';
  s.out << "verdict " << rep.describe() << '\n';
  return rep.holds ? kOk : kNegative;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite relational structures, amalgamation classes and binary random structures"};
  app.name(args.empty() ? "fraisse" : std::filesystem::path(args[0]).filename().string());
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  std::optional<std::uint64_t> seed_opt;
  std::string format = "text";
  auto common = [&](CLI::App* sc) {
    sc->add_option("--seed", seed_opt, "64-bit seed (default FRAISSE_SEED, else 1)");
    sc->add_option("--format", format, "report format")->check(CLI::IsMember({"text", "csv"}))->capture_default_str();
  };
  std::map<CLI::App*, std::function<int(Session&)>> handlers;

  std::string p2_path;
  auto* adequate = app.add_subcommand("check-adequate", "Decide 1-adequacy of a P2 set of 1- and 2-structures");
  adequate->add_option("--p2", p2_path, "P2 file")->required();
  common(adequate);
  handlers[adequate] = [&](Session& s) { return cmd_check_adequate(s, p2_path); };

  ClassOpts hp_opts;
  auto* hp = app.add_subcommand("check-hp", "Bounded check of the hereditary property of a class");
  add_class_options(hp, hp_opts);
  hp->add_option("--bound", hp_opts.size_bound, "largest member size examined")->capture_default_str();
  common(hp);
  handlers[hp] = [&](Session& s) { return cmd_check_hp(s, hp_opts); };

  ClassOpts ap_opts;
  std::size_t amalgam_bound = 8;
  auto* ap = app.add_subcommand("check-ap", "Bounded search for amalgams of every base triple (amalgamation property)");
  add_class_options(ap, ap_opts);
  ap->add_option("--size-bound", ap_opts.size_bound, "largest A, B, C examined")->capture_default_str();
  ap->add_option("--amalgam-bound", amalgam_bound, "largest amalgam searched")->capture_default_str();
  common(ap);
  handlers[ap] = [&](Session& s) { return cmd_check_ap(s, ap_opts, amalgam_bound); };

  std::size_t enum_size = 2;
  auto* en = app.add_subcommand("enum", "Enumerate the isomorphism types of RP2 of a given size");
  en->add_option("--p2", p2_path, "P2 file")->required();
  en->add_option("--size", enum_size, "structure size")->capture_default_str();
  common(en);
  handlers[en] = [&](Session& s) { return cmd_enum(s, p2_path, enum_size); };

  OracleOpts gen_opts;
  std::string transcript;
  auto* gen = app.add_subcommand("gen", "Grow a finite approximation of the binary random structure by extension axioms");
  gen->add_option("--p2", gen_opts.p2, "P2 file")->required();
  add_oracle_options(gen, gen_opts);
  gen->add_option("--passes", gen_opts.passes, "saturation rounds")->capture_default_str();
  gen->add_option("--transcript", transcript, "write the extension log here instead of inline");
  common(gen);
  handlers[gen] = [&](Session& s) { return cmd_gen(s, gen_opts, transcript); };

  SourceOpts src_opts;
  std::size_t types_n = 2;
  std::vector<Element> params;
  bool distinct = false;
  auto* ty = app.add_subcommand("types", "Census of quantifier-free types of n-tuples over parameters");
  add_source_options(ty, src_opts);
  ty->add_option("--n", types_n, "tuple length")->capture_default_str();
  ty->add_option("--params", params, "parameters, comma separated")->delimiter(',');
  ty->add_flag("--distinct", distinct, "only tuples of distinct entries");
  common(ty);
  handlers[ty] = [&](Session& s) { return cmd_types(s, src_opts, types_n, params, distinct); };

  std::vector<Element> base;
  std::size_t dup = 5, budget = 500;
  auto acl_common = [&](CLI::App* sc) {
    add_source_options(sc, src_opts);
    sc->add_option("--d", dup, "realizations needed to call a type non-algebraic")->capture_default_str();
    sc->add_option("--budget", budget, "extension points allowed for duplication")->capture_default_str();
    sc->add_flag("--assume-saturated", src_opts.assume_saturated, "trust small counts in a fixed structure");
    common(sc);
  };
  auto* acl = app.add_subcommand("acl", "Algebraic closure of a base by counting realizations of types");
  acl->add_option("--base", base, "base elements, comma separated")->delimiter(',');
  acl_common(acl);
  handlers[acl] = [&](Session& s) { return cmd_acl(s, src_opts, base, dup, budget); };

  std::size_t max_a = 3, max_b = 3, max_c = 3, rho = 2;
  auto* triv = app.add_subcommand("triviality", "Check that acl of a set is the union of acl of its points");
  triv->add_option("--max-b", max_b, "largest base size")->capture_default_str();
  acl_common(triv);
  handlers[triv] = [&](Session& s) { return cmd_triviality(s, src_opts, max_b, dup, budget); };

  auto* deg = app.add_subcommand("degenerate", "Check that acl dependence is witnessed by rho - 1 elements");
  deg->add_option("--rho", rho, "degree bound rho")->capture_default_str();
  deg->add_option("--max-a", max_a, "largest A")->capture_default_str();
  deg->add_option("--max-b", max_b, "largest B")->capture_default_str();
  deg->add_option("--max-c", max_c, "largest C")->capture_default_str();
  acl_common(deg);
  handlers[deg] = [&](Session& s) { return cmd_degenerate(s, src_opts, rho, max_a, max_b, max_c, dup, budget); };

  Ex412Opts ex;
  auto* ex412 = app.add_subcommand(
      "example412", "Doubled cover of the random graph: pairing, quotient geometry, type separation and reducts");
  ex412->add_option("--base-size", ex.base_size, "random points of F before saturation")->capture_default_str();
  ex412->add_option("--saturate", ex.level, "saturation level of F")->capture_default_str();
  ex412->add_option("--check", ex.check, "which check to run")
      ->check(CLI::IsMember({"all", "claim1", "claim2", "claim3", "edef", "separation", "reduct"}))
      ->capture_default_str();
  ex412->add_option("--trials", ex.trials, "sampled partial isomorphisms for claim2")->capture_default_str();
  ex412->add_option("--claim2-n", ex.claim2_n, "partial isomorphism size for claim2")->capture_default_str();
  ex412->add_option("--reduct-nmax", ex.reduct_nmax, "largest arity for the reduct check")->capture_default_str();
  ex412->add_option("--sat-budget", ex.sat_budget, "cap on points added by saturation")->capture_default_str();
  ex412->add_option("--emit-structures", ex.emit_dir, "write F, M, M*, the quotient and type tables here");
  ex412->add_option("--emit-nmax", ex.emit_nmax, "largest arity in emitted type tables")->capture_default_str();
  common(ex412);
  handlers[ex412] = [&](Session& s) { return cmd_example412(s, ex); };

  std::vector<std::string> axioms;
  std::optional<std::size_t> all_k;
  std::vector<std::size_t> sizes{10, 20, 50, 100, 200};
  std::size_t trials = 200;
  auto* zo = app.add_subcommand("zeroone", "Monte Carlo probability of extension axioms in uniform random members of RP2");
  zo->add_option("--p2", p2_path, "P2 file")->required();
  zo->add_option("--axiom", axioms, "axiom 'ext k: L1 | L2 [; new F] [; base P1 | P2]' (repeatable)");
  zo->add_option("--all", all_k, "add every k-parameter extension axiom (default 2 without --axiom)");
  zo->add_option("--sizes", sizes, "structure sizes, comma separated")->delimiter(',')->capture_default_str();
  zo->add_option("--trials", trials, "samples per size")->capture_default_str();
  common(zo);
  handlers[zo] = [&](Session& s) { return cmd_zeroone(s, p2_path, axioms, all_k, sizes, trials); };

  std::string source, target;
  std::size_t nmax = 3;
  auto* red = app.add_subcommand("reduct", "Bounded-arity reduct check by refinement of type partitions");
  red->add_option("--source", source, "typed-universe table of the richer structure")->required();
  red->add_option("--target", target, "typed-universe table of the candidate reduct")->required();
  red->add_option("--nmax", nmax, "largest arity checked")->capture_default_str();
  common(red);
  handlers[red] = [&](Session& s) { return cmd_reduct(s, source, target, nmax); };

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  std::uint64_t seed = 1;
  if (seed_opt) {
    seed = *seed_opt;
  } else if (const char* env = std::getenv("FRAISSE_SEED")) {
    try {
      std::size_t used = 0;
      seed = std::stoull(env, &used);
      if (env[used] != '\0') throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      err << "error: FRAISSE_SEED is not a 64-bit integer\n";
      return kUsage;
    }
  }

  for (auto& [sc, handler] : handlers) {
    if (!sc->parsed()) continue;
    Session session{out, sc->get_name(), seed, format == "csv", {}};
    try {
      return handler(session);
    } catch (const SaturationError& e) {
      err << "inconclusive: " << e.what() << '\n';
      return kInconclusive;
    } catch (const Error& e) {
      err << "error: " << e.what() << '\n';
      return kUsage;
    } catch (const std::filesystem::filesystem_error& e) {
      err << "error: " << e.what() << '\n';
      return kUsage;
    }
  }
  return kUsage;
}

}  // namespace fraisse::cli
