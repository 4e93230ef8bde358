#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "fraisse/errors.hpp"
#include "fraisse/zero_one.hpp"

using namespace fraisse;
using namespace fixtures;

namespace {

constexpr LinkPattern kEdge = 0b11;

/// Direct reading for graphs: every k distinct vertices have a vertex
/// outside them adjacent exactly where links[i] says.
bool naive_graph_axiom(const Structure& s, const AxiomSpec& ax) {
  const std::size_t n = s.size();
  if (ax.k > n) return true;
  std::vector<Element> t(ax.k);
  bool ok = true;
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (!ok) return;
    if (i == ax.k) {
      bool found = false;
      for (Element w = 0; w < n && !found; ++w) {
        if (std::find(t.begin(), t.end(), w) != t.end()) continue;
        bool match = true;
        for (std::size_t j = 0; j < ax.k; ++j)
          match = match && (s.holds(0, {t[j], w}) == (ax.links[j] == kEdge));
        found = match;
      }
      ok = found;
      return;
    }
    for (Element x = 0; x < n; ++x) {
      if (std::find(t.begin(), t.begin() + i, x) != t.begin() + i) continue;
      t[i] = x;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  return ok;
}

std::vector<AxiomSpec> two_parameter_graph_axioms() {
  const PatternTable table(random_graph_p2());
  return all_extension_axioms(table, 2);
}

}  // namespace

TEST_CASE("uniform samples are deterministic and lie in the class") {
  const auto p2 = random_graph_p2();
  const auto a = sample_uniform(p2, 30, 7);
  CHECK(a == sample_uniform(p2, 30, 7));
  CHECK_FALSE(a == sample_uniform(p2, 30, 8));
  CHECK(in_rp2(p2, a));
  CHECK(trial_seed(1, 0) != trial_seed(1, 1));
  CHECK(trial_seed(1, 0) != trial_seed(2, 0));
}

TEST_CASE("edge density of uniform graphs is one half") {
  const std::size_t n = 120;
  const auto s = sample_uniform(random_graph_p2(), n, 42);
  const double pairs = n * (n - 1) / 2.0;
  const double edges = s.relation(0).count() / 2.0;
  CHECK(std::abs(edges - pairs / 2) < 3 * std::sqrt(pairs / 4));
}

TEST_CASE("sampling rejects a non-adequate P2 set") {
  P2Spec bad(graph_vocab(), {empty(), edge()});
  CHECK_THROWS_AS(sample_uniform(bad, 5, 1), AdequacyError);
}

TEST_CASE("axiom text round trip") {
  const auto v = graph_vocab();
  const auto ax = parse_axiom("ext 2: E | -", v);
  CHECK(ax.k == 2);
  CHECK(ax.links == std::vector<LinkPattern>{kEdge, 0});
  CHECK(ax.point == 0);
  CHECK_FALSE(ax.base_points);
  CHECK(format_axiom(ax, v) == "ext 2: E | -");

  const auto dir = parse_axiom("ext 1: E>; base -", v);
  CHECK(dir.links == std::vector<LinkPattern>{0b01});
  CHECK(format_axiom(dir, v) == "ext 1: E>; base -");
  CHECK(parse_axiom("ext 0:", v).k == 0);

  CHECK_THROWS_AS(parse_axiom("ext 2: E", v), ParseError);
  CHECK_THROWS_AS(parse_axiom("ext 1: F", v), ParseError);
  CHECK_THROWS_AS(parse_axiom("ext x: E", v), ParseError);
  CHECK_THROWS_AS(parse_axiom("exists 1: E", v), ParseError);
  CHECK_THROWS_AS(parse_axiom("ext 1: E; colour red", v), ParseError);
}

TEST_CASE("common-neighbour axiom on small graphs") {
  const auto ax = parse_axiom("ext 2: E | E", graph_vocab());
  CHECK(axiom_holds(triangle(), ax));
  CHECK_FALSE(axiom_holds(path3(), ax));
  CHECK(axiom_holds(empty(), ax));
  CHECK(axiom_holds(point(), ax));
  // K4: any two vertices have both others as common neighbours.
  CHECK(axiom_holds(graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}), ax));
}

TEST_CASE("axiom evaluation agrees with the direct reading") {
  const auto axioms = two_parameter_graph_axioms();
  REQUIRE(axioms.size() == 4);
  std::vector<AxiomSpec> all = axioms;
  all.push_back(parse_axiom("ext 1: E", graph_vocab()));
  all.push_back(parse_axiom("ext 3: E | - | E", graph_vocab()));
  for (std::size_t n = 0; n <= 5; ++n)
    for (const auto& g : all_graphs(n))
      for (const auto& ax : all) REQUIRE(axiom_holds(g, ax) == naive_graph_axiom(g, ax));
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const auto g = random_graph(6 + rng() % 5, rng);
    for (const auto& ax : all) REQUIRE(axiom_holds(g, ax) == naive_graph_axiom(g, ax));
  }
}

TEST_CASE("base point patterns restrict the quantifier") {
  // Unary colour P with a free edge relation: only P-points need a witness.
  Vocabulary v({{"P", 1}, {"E", 2}}, "coloured");
  auto pt = [&](bool p) {
    Structure s(v, 1);
    if (p) s.set(0, {0});
    return s;
  };
  auto pair = [&](bool p, bool q, bool e) {
    Structure s(v, 2);
    if (p) s.set(0, {0});
    if (q) s.set(0, {1});
    if (e) s.set_edge(1, 0, 1);
    return s;
  };
  std::vector<Structure> members{Structure(v, 0), pt(false), pt(true)};
  for (bool p : {false, true})
    for (bool q : {false, true})
      for (bool e : {false, true}) members.push_back(pair(p, q, e));
  const P2Spec p2(v, members);
  Structure s(v, 3);
  s.set(0, {0});
  s.set_edge(1, 0, 1);
  auto pinned = parse_axiom("ext 1: E; base P", v);
  auto open = parse_axiom("ext 1: E", v);
  CHECK(axiom_holds(s, pinned));
  CHECK_FALSE(axiom_holds(s, open));
  const PatternTable table(p2);
  CHECK(axiom_compatible(table, pinned));
  CHECK(all_extension_axioms(table, 1).size() == 2 * 2 * 2);
}

TEST_CASE("incompatible axioms are flagged") {
  const PatternTable table(random_graph_p2());
  CHECK(axiom_compatible(table, parse_axiom("ext 2: E | -", graph_vocab())));
  CHECK_FALSE(axiom_compatible(table, parse_axiom("ext 1: E>", graph_vocab())));
  CHECK_FALSE(axiom_compatible(table, parse_axiom("ext 1: E; new E", graph_vocab())));
  const auto rep = convergence_report(random_graph_p2(), {parse_axiom("ext 1: E>", graph_vocab())}, {8}, 20, 1);
  CHECK(rep.incompatible);
  CHECK(rep.rows[0].successes == 0);
}

TEST_CASE("probability estimates") {
  const auto p2 = random_graph_p2();
  const auto axioms = two_parameter_graph_axioms();
  const auto none = estimate_probability(p2, axioms, 0, 10, 5);
  CHECK(none.successes == 10);
  const auto small = estimate_probability(p2, axioms, 4, 100, 5);
  CHECK(small.estimate() < 0.5);
  const auto big = estimate_probability(p2, axioms, 120, 30, 5);
  CHECK(big.estimate() > 0.9);
  CHECK(estimate_probability(p2, axioms, 30, 40, 9).successes ==
        estimate_probability(p2, axioms, 30, 40, 9).successes);

  ProbEstimate e;
  e.trials = 100;
  e.successes = 50;
  auto [lo, hi] = e.wilson();
  CHECK(lo == doctest::Approx(0.4038).epsilon(0.001));
  CHECK(hi == doctest::Approx(0.5962).epsilon(0.001));
  e.successes = 100;
  CHECK(e.wilson().second == doctest::Approx(1.0));
}

TEST_CASE("convergence report over sizes") {
  const auto rep = convergence_report(random_graph_p2(), two_parameter_graph_axioms(), {10, 40, 100}, 40, 11);
  REQUIRE(rep.rows.size() == 3);
  CHECK(rep.monotone);
  CHECK_FALSE(rep.incompatible);
  CHECK(rep.rows[0].estimate() <= rep.rows[2].estimate());
  const auto single = convergence_report(random_graph_p2(), two_parameter_graph_axioms(), {20}, 10, 11);
  CHECK(single.rows.size() == 1);
  CHECK(single.monotone);
  CHECK_THROWS_AS(convergence_report(random_graph_p2(), {}, {}, 10, 1), InputError);
}
