#include "fraisse/zero_one.hpp"

#include "fraisse/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace fraisse {

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (trial + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

Structure sample_uniform(const PatternTable& table, std::size_t n, std::mt19937_64& rng) {
  Structure s(table.vocab(), n);
  const auto& points = table.points();
  std::vector<PointPattern> pt(n);
  for (Element x = 0; x < n; ++x) {
    pt[x] = points[rng() % points.size()];
    apply_point_pattern(s, x, pt[x]);
  }
  for (Element x = 0; x < n; ++x)
    for (Element y = x + 1; y < n; ++y) {
      const auto& options = table.links(pt[x], pt[y]);
      apply_link_pattern(s, x, y, options[rng() % options.size()]);
    }
  return s;
}

Structure sample_uniform(const P2Spec& p2, std::size_t n, std::uint64_t seed) {
  auto rep = check_1_adequate(p2);
  if (!rep.holds) throw AdequacyError("P2 set is not 1-adequate: " + rep.reason);
  PatternTable table(p2);
  std::mt19937_64 rng(seed);
  return sample_uniform(table, n, rng);
}

// ---------------------------------------------------------------------------
// Axiom text

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i)
    if (i == s.size() || s[i] == sep) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  return out;
}

std::vector<std::string> words(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
      if (!cur.empty()) out.push_back(std::move(cur)), cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

[[noreturn]] void bad(const std::string& what) { throw ParseError(0, "axiom: " + what); }

std::size_t symbol(const Vocabulary& v, const std::string& name) {
  auto i = v.find(name);
  if (!i) bad("unknown symbol '" + name + "'");
  return *i;
}

LinkPattern parse_link(const std::string& text, const Vocabulary& v) {
  if (text == "-") return 0;
  LinkPattern l = 0;
  auto toks = words(text);
  if (toks.empty()) bad("empty link");
  for (auto tok : toks) {
    char dir = 0;
    if (tok.back() == '>' || tok.back() == '<') dir = tok.back(), tok.pop_back();
    const std::size_t k = symbol(v, tok);
    if (v[k].arity != 2) bad("'" + tok + "' is not binary");
    if (dir != '<') l |= LinkPattern{1} << (2 * k);
    if (dir != '>') l |= LinkPattern{1} << (2 * k + 1);
  }
  return l;
}

PointPattern parse_point(const std::string& text, const Vocabulary& v) {
  if (text == "-") return 0;
  PointPattern p = 0;
  auto toks = words(text);
  if (toks.empty()) bad("empty point pattern");
  for (const auto& tok : toks) p |= PointPattern{1} << symbol(v, tok);
  return p;
}

std::string show_link(LinkPattern l, const Vocabulary& v) {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k) {
    const bool fwd = (l >> (2 * k)) & 1u, back = (l >> (2 * k + 1)) & 1u;
    if (!fwd && !back) continue;
    if (!out.empty()) out += ' ';
    out += v[k].name;
    if (fwd && !back) out += '>';
    if (back && !fwd) out += '<';
  }
  return out.empty() ? "-" : out;
}

std::string show_point(PointPattern p, const Vocabulary& v) {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k)
    if ((p >> k) & 1u) out += (out.empty() ? "" : " ") + v[k].name;
  return out.empty() ? "-" : out;
}

}  // namespace

AxiomSpec parse_axiom(std::string_view text, const Vocabulary& vocab) {
  const std::string t = trim(text);
  if (t.rfind("ext", 0) != 0) bad("must start with 'ext'");
  const auto colon = t.find(':');
  if (colon == std::string::npos) bad("missing ':'");
  AxiomSpec ax;
  try {
    std::size_t used = 0;
    const std::string count = trim(std::string_view(t).substr(3, colon - 3));
    ax.k = std::stoul(count, &used);
    if (used != count.size()) bad("bad parameter count");
  } catch (const std::logic_error&) {
    bad("bad parameter count");
  }
  auto sections = split(std::string_view(t).substr(colon + 1), ';');
  const std::string& link_part = sections[0];
  if (ax.k == 0) {
    if (!link_part.empty()) bad("links given for k = 0");
  } else {
    auto parts = split(link_part, '|');
    if (parts.size() != ax.k) bad("expected " + std::to_string(ax.k) + " links");
    for (const auto& p : parts) ax.links.push_back(parse_link(p, vocab));
  }
  for (std::size_t i = 1; i < sections.size(); ++i) {
    const std::string& sec = sections[i];
    if (sec.rfind("new", 0) == 0) {
      ax.point = parse_point(trim(std::string_view(sec).substr(3)), vocab);
    } else if (sec.rfind("base", 0) == 0) {
      auto parts = split(std::string_view(sec).substr(4), '|');
      if (parts.size() != ax.k) bad("expected " + std::to_string(ax.k) + " base patterns");
      std::vector<PointPattern> pts;
      for (const auto& p : parts) pts.push_back(parse_point(p, vocab));
      ax.base_points = std::move(pts);
    } else {
      bad("unknown section '" + sec + "'");
    }
  }
  return ax;
}

std::string format_axiom(const AxiomSpec& ax, const Vocabulary& vocab) {
  std::ostringstream out;
  out << "ext " << ax.k << ":";
  for (std::size_t i = 0; i < ax.links.size(); ++i) out << (i ? " | " : " ") << show_link(ax.links[i], vocab);
  if (ax.point) out << "; new " << show_point(ax.point, vocab);
  if (ax.base_points) {
    out << "; base";
    for (std::size_t i = 0; i < ax.base_points->size(); ++i)
      out << (i ? " | " : " ") << show_point((*ax.base_points)[i], vocab);
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Evaluation

bool axiom_holds(const Structure& s, const AxiomSpec& ax) {
  if (ax.links.size() != ax.k) throw InputError("axiom needs one link per parameter");
  const std::size_t n = s.size();
  if (ax.k > n) return true;
  const std::size_t words_per = (n + 63) / 64;
  using Bits = std::vector<std::uint64_t>;
  auto set_bit = [](Bits& b, Element x) { b[x / 64] |= std::uint64_t{1} << (x % 64); };

  std::vector<PointPattern> pt(n);
  Bits target(words_per, 0);
  for (Element x = 0; x < n; ++x) {
    pt[x] = point_pattern(s, x);
    if (pt[x] == ax.point) set_bit(target, x);
  }
  // For each parameter position i and base point x: witnesses w with link(x, w) = links[i].
  std::vector<LinkPattern> distinct_links(ax.links);
  std::sort(distinct_links.begin(), distinct_links.end());
  distinct_links.erase(std::unique(distinct_links.begin(), distinct_links.end()), distinct_links.end());
  std::vector<std::vector<Bits>> by_link(distinct_links.size(), std::vector<Bits>(n, Bits(words_per, 0)));
  for (Element x = 0; x < n; ++x)
    for (Element w = 0; w < n; ++w) {
      if (w == x) continue;
      const LinkPattern l = link_pattern(s, x, w);
      auto it = std::lower_bound(distinct_links.begin(), distinct_links.end(), l);
      if (it != distinct_links.end() && *it == l) set_bit(by_link[it - distinct_links.begin()][x], w);
    }
  std::vector<std::size_t> link_slot(ax.k);
  for (std::size_t i = 0; i < ax.k; ++i)
    link_slot[i] = std::lower_bound(distinct_links.begin(), distinct_links.end(), ax.links[i]) - distinct_links.begin();

  std::vector<Element> chosen;
  std::vector<Bits> running(ax.k + 1, target);
  // by_link never contains x itself, so chosen points drop out of the
  // witness set automatically.
  auto rec = [&](auto&& self, std::size_t i) -> bool {
    if (i == ax.k) {
      for (std::uint64_t w : running[i])
        if (w) return true;
      return false;
    }
    for (Element x = 0; x < n; ++x) {
      if (std::find(chosen.begin(), chosen.end(), x) != chosen.end()) continue;
      if (ax.base_points && pt[x] != (*ax.base_points)[i]) continue;
      const Bits& b = by_link[link_slot[i]][x];
      for (std::size_t w = 0; w < words_per; ++w) running[i + 1][w] = running[i][w] & b[w];
      chosen.push_back(x);
      const bool ok = self(self, i + 1);
      chosen.pop_back();
      if (!ok) return false;
    }
    return true;
  };
  return rec(rec, 0);
}

bool axiom_compatible(const PatternTable& table, const AxiomSpec& ax) {
  if (!table.point_permitted(ax.point)) return false;
  for (std::size_t i = 0; i < ax.k; ++i) {
    bool ok = false;
    if (ax.base_points) {
      ok = table.point_permitted((*ax.base_points)[i]) &&
           table.link_permitted((*ax.base_points)[i], ax.point, ax.links[i]);
    } else {
      for (PointPattern p : table.points()) ok = ok || table.link_permitted(p, ax.point, ax.links[i]);
    }
    if (!ok) return false;
  }
  return true;
}

std::vector<AxiomSpec> all_extension_axioms(const PatternTable& table, std::size_t k) {
  std::vector<AxiomSpec> out;
  const auto& points = table.points();
  std::vector<std::size_t> base(k, 0);
  while (true) {
    std::vector<PointPattern> bp(k);
    for (std::size_t i = 0; i < k; ++i) bp[i] = points[base[i]];
    for (PointPattern p : points) {
      std::vector<AxiomSpec> partial(1);
      partial[0].k = k;
      partial[0].point = p;
      partial[0].base_points = bp;
      for (std::size_t i = 0; i < k; ++i) {
        std::vector<AxiomSpec> next;
        for (const auto& a : partial)
          for (LinkPattern l : table.links(bp[i], p)) {
            next.push_back(a);
            next.back().links.push_back(l);
          }
        partial = std::move(next);
      }
      for (auto& a : partial) out.push_back(std::move(a));
    }
    std::size_t i = k;
    while (i > 0 && ++base[i - 1] == points.size()) base[--i] = 0;
    if (i == 0) break;
  }
  return out;
}

std::pair<double, double> ProbEstimate::wilson() const {
  if (trials == 0) return {0.0, 1.0};
  constexpr double z = 1.959963984540054;
  const double nn = double(trials), p = estimate();
  const double denom = 1.0 + z * z / nn;
  const double center = (p + z * z / (2 * nn)) / denom;
  const double half = z / denom * std::sqrt(p * (1 - p) / nn + z * z / (4 * nn * nn));
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

ProbEstimate estimate_probability(const P2Spec& p2, const std::vector<AxiomSpec>& axioms, std::size_t n,
                                  std::size_t trials, std::uint64_t seed) {
  auto rep = check_1_adequate(p2);
  if (!rep.holds) throw AdequacyError("P2 set is not 1-adequate: " + rep.reason);
  const PatternTable table(p2);
  ProbEstimate est;
  est.n = n;
  est.trials = trials;
  est.seed = seed;
  for (std::size_t t = 0; t < trials; ++t) {
    std::mt19937_64 rng(trial_seed(seed, t));
    const Structure s = sample_uniform(table, n, rng);
    bool all = true;
    for (const auto& ax : axioms) {
      all = axiom_holds(s, ax);
      if (!all) break;
    }
    if (all) ++est.successes;
  }
  return est;
}

ConvergenceReport convergence_report(const P2Spec& p2, const std::vector<AxiomSpec>& axioms,
                                     const std::vector<std::size_t>& sizes, std::size_t trials,
                                     std::uint64_t seed) {
  if (sizes.empty()) throw InputError("convergence report needs at least one size");
  ConvergenceReport rep;
  const PatternTable table(p2);
  for (const auto& ax : axioms) rep.incompatible = rep.incompatible || !axiom_compatible(table, ax);
  for (std::size_t n : sizes) rep.rows.push_back(estimate_probability(p2, axioms, n, trials, seed));
  for (std::size_t i = 0; i < rep.rows.size(); ++i)
    for (std::size_t j = i + 1; j < rep.rows.size(); ++j)
      if (rep.rows[j].estimate() < rep.rows[i].estimate() && rep.rows[j].wilson().second < rep.rows[i].wilson().first)
        rep.monotone = false;
  return rep;
}

}  // namespace fraisse
