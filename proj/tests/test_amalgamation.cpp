#include <doctest.h>

#include "fixtures.hpp"
#include "fraisse/amalgamation.hpp"
#include "oracles.hpp"

using namespace fraisse;
using namespace fixtures;

namespace {

Vocabulary unary_vocab() { return Vocabulary({{"P", 1}}, "unary"); }

Structure marked(std::size_t n, std::initializer_list<Element> marks) {
  Structure s(unary_vocab(), n);
  for (Element x : marks) s.set(0, {x});
  return s;
}

/// Isomorphism classes among all labelled graphs on n vertices, by brute force.
std::size_t brute_iso_classes(std::size_t n) {
  std::vector<Structure> reps;
  for (const auto& g : all_graphs(n)) {
    bool seen = false;
    for (const auto& r : reps) seen = seen || oracles::isomorphic(g, r);
    if (!seen) reps.push_back(g);
  }
  return reps.size();
}

Vocabulary digraph_vocab() { return Vocabulary({{"R", 2}}, "digraph"); }

Structure digraph(std::size_t n, std::initializer_list<std::pair<Element, Element>> arcs) {
  Structure s(digraph_vocab(), n);
  for (auto [a, b] : arcs) s.set(0, {a, b});
  return s;
}

}  // namespace

TEST_CASE("P2Spec validation") {
  CHECK_THROWS_AS(P2Spec(graph_vocab(), {triangle()}), Error);
  CHECK_THROWS_AS(P2Spec(graph_vocab(), {marked(1, {})}), VocabularyError);
}

TEST_CASE("check_1_adequate") {
  SUBCASE("random graph P2 holds") {
    auto r = check_1_adequate(random_graph_p2());
    CHECK(r.holds);
    CHECK(r.witnesses.size() == 1);
  }
  SUBCASE("unary pair with only the PP 2-structure fails") {
    P2Spec p2(unary_vocab(), {marked(0, {}), marked(1, {0}), marked(1, {}), marked(2, {0, 1})});
    auto r = check_1_adequate(p2);
    CHECK_FALSE(r.holds);
    REQUIRE(r.failing_pair.has_value());
    CHECK(r.failing_pair->first == 0);
    CHECK(r.failing_pair->second == 0);
  }
  SUBCASE("no 2-structure fails") {
    CHECK_FALSE(check_1_adequate(P2Spec(graph_vocab(), {empty(), point()})).holds);
  }
  SUBCASE("missing the empty structure fails HP") {
    CHECK_FALSE(check_1_adequate(P2Spec(graph_vocab(), {point(), non_edge(), edge()})).holds);
  }
  SUBCASE("tournament P2 holds") {
    P2Spec p2(digraph_vocab(), {digraph(0, {}), digraph(1, {}), digraph(2, {{0, 1}})});
    CHECK(check_1_adequate(p2).holds);
  }
}

TEST_CASE("in_rp2") {
  const auto p2 = random_graph_p2();
  std::mt19937_64 rng(2);
  for (int i = 0; i < 20; ++i) CHECK(in_rp2(p2, random_graph(rng() % 9, rng)));
  Structure arc(graph_vocab(), 2);
  arc.set(0, {0, 1});
  CHECK_FALSE(in_rp2(p2, arc));
  Structure loop(graph_vocab(), 1);
  loop.set(0, {0, 0});
  CHECK_FALSE(in_rp2(p2, loop));
  CHECK(in_rp2(p2, empty()));
  CHECK_THROWS_AS(in_rp2(p2, marked(1, {})), VocabularyError);
}

TEST_CASE("enumerate_rp2 matches brute force") {
  const auto p2 = random_graph_p2();
  CHECK(enumerate_rp2(p2, 0).size() == 1);
  auto two = enumerate_rp2(p2, 2);
  REQUIRE(two.size() == 2);
  CHECK(((is_isomorphic(two[0], edge()) && is_isomorphic(two[1], non_edge())) ||
         (is_isomorphic(two[1], edge()) && is_isomorphic(two[0], non_edge()))));
  for (std::size_t n = 1; n <= 5; ++n) CHECK(enumerate_rp2(p2, n).size() == brute_iso_classes(n));
}

TEST_CASE("enumerate_rp2 is closed under substructures") {
  P2Spec p2(digraph_vocab(), {digraph(0, {}), digraph(1, {}), digraph(2, {{0, 1}}), digraph(2, {})});
  std::set<TypeId> smaller;
  for (std::size_t n = 0; n <= 4; ++n) {
    auto level = enumerate_rp2(p2, n);
    for (const auto& s : level) {
      CHECK(in_rp2(p2, s));
      if (n == 0) continue;
      for (const auto& sub : age(s, n - 1)) CHECK(smaller.count(canonical_key(sub)) == 1);
    }
    for (const auto& s : level) smaller.insert(canonical_key(s));
  }
}

TEST_CASE("age") {
  CHECK(age(triangle(), 2).size() == 3);
  auto p = age(path3(), 3);
  CHECK(p.size() == 5);
  CHECK(age(triangle(), 0).size() == 1);
  // Subsets of a member of RP2 stay in RP2.
  const auto p2 = random_graph_p2();
  std::mt19937_64 rng(9);
  for (int i = 0; i < 10; ++i)
    for (const auto& a : age(random_graph(6, rng), 4)) CHECK(in_rp2(p2, a));
}

TEST_CASE("check_hp") {
  CHECK(check_hp(P2Class{random_graph_p2(), 4}, 4).holds);
  auto only_triangle = check_hp(ExplicitList{{triangle()}, 3}, 3);
  CHECK_FALSE(only_triangle.holds);
  REQUIRE(only_triangle.violation.has_value());
  CHECK(is_isomorphic(only_triangle.violation->first, edge()).has_value());
  std::vector<Structure> graphs;
  for (std::size_t n = 0; n <= 4; ++n)
    for (auto& g : enumerate_rp2(random_graph_p2(), n)) graphs.push_back(g);
  CHECK(check_hp(ExplicitList{graphs, 4}, 4).holds);
}

TEST_CASE("check_ap on graphs") {
  auto r = check_ap(P2Class{random_graph_p2(), 4}, 8);
  CHECK(r.verdict == APVerdict::Holds);
  CHECK(r.triples_checked > 0);
}

TEST_CASE("check_ap fails for complete-or-edgeless graphs") {
  std::vector<Structure> members = {empty(), point(), edge(), non_edge(), triangle(), graph(3, {})};
  auto r = check_ap(ExplicitList{members, 3}, 6);
  REQUIRE(r.verdict == APVerdict::Fails);
  REQUIRE(r.counterexample.has_value());
  const auto& cx = *r.counterexample;
  CHECK(cx.a.size() == 1);
  const bool edge_then_non = is_isomorphic(cx.b, edge()) && is_isomorphic(cx.c, non_edge());
  const bool non_then_edge = is_isomorphic(cx.b, non_edge()) && is_isomorphic(cx.c, edge());
  CHECK((edge_then_non || non_then_edge));
}

TEST_CASE("check_ap edge cases") {
  CHECK(check_ap(ExplicitList{{empty()}, 2}, 2).verdict == APVerdict::Holds);
  // Amalgam bound below |B|+|C|-|A| cannot be decisive.
  std::vector<Structure> members = {empty(), point(), edge(), non_edge(), triangle(), graph(3, {})};
  CHECK(check_ap(ExplicitList{members, 3}, 2).verdict != APVerdict::Fails);
}

TEST_CASE("adequate P2 classes have HP and AP") {
  std::vector<P2Spec> specs = {
      random_graph_p2(),
      P2Spec(digraph_vocab(), {digraph(0, {}), digraph(1, {}), digraph(2, {{0, 1}})}),
      P2Spec(unary_vocab(), {marked(0, {}), marked(1, {}), marked(1, {0}), marked(2, {}),
                             marked(2, {0}), marked(2, {0, 1})}),
  };
  for (const auto& p2 : specs) {
    REQUIRE(check_1_adequate(p2).holds);
    CHECK(check_hp(P2Class{p2, 4}, 4).holds);
    CHECK(check_ap(P2Class{p2, 3}, 6).verdict == APVerdict::Holds);
  }
}
