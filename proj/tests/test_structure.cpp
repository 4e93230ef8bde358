#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "fraisse/structure.hpp"
#include "oracles.hpp"

using namespace fraisse;
using namespace fixtures;

TEST_CASE("vocabulary invariants") {
  Vocabulary v({{"P", 1}, {"E", 2}});
  CHECK(v.rho() == 2);
  CHECK(v.binary());
  CHECK(v.index_of("E") == 1);
  CHECK_THROWS_AS(v.index_of("R"), VocabularyError);
  CHECK_THROWS_AS(Vocabulary({{"E", 2}, {"E", 1}}), VocabularyError);
  CHECK_THROWS_AS(Vocabulary({{"Z", 0}}), VocabularyError);
  CHECK_FALSE(Vocabulary({{"T", 3}}).binary());
}

TEST_CASE("structure rejects bad tuples") {
  Structure s(graph_vocab(), 2);
  CHECK_THROWS_AS(s.set(0, {0, 2}), InvalidSubsetError);
  CHECK_THROWS_AS(s.set(0, {0}), VocabularyError);
  Structure e(graph_vocab(), 0);
  CHECK(e.size() == 0);
}

TEST_CASE("relations survive growth") {
  Structure s(graph_vocab(), 3);
  s.set_edge(0, 0, 2);
  for (int i = 0; i < 40; ++i) s.add_element();
  CHECK(s.size() == 43);
  CHECK(s.holds(0, {0, 2}));
  CHECK(s.holds(0, {2, 0}));
  CHECK_FALSE(s.holds(0, {0, 1}));
  CHECK(s.relation(0).count() == 2);
}

TEST_CASE("induced_substructure") {
  SUBCASE("edge pair, both elements") {
    auto ind = induced_substructure(edge(), std::vector<Element>{1, 0});
    CHECK(ind.structure == edge());
    CHECK(ind.index_map == std::vector<Element>{0, 1});
  }
  SUBCASE("empty subset") {
    auto ind = induced_substructure(triangle(), std::vector<Element>{});
    CHECK(ind.structure.size() == 0);
  }
  SUBCASE("triangle, every pair is an edge") {
    for (Element a = 0; a < 3; ++a)
      for (Element b = a + 1; b < 3; ++b)
        CHECK(induced_substructure(triangle(), std::vector<Element>{a, b}).structure == edge());
  }
  SUBCASE("out of range") {
    CHECK_THROWS_AS(induced_substructure(triangle(), std::vector<Element>{0, 3}), InvalidSubsetError);
  }
  SUBCASE("ternary relation restricted") {
    Structure t(Vocabulary({{"T", 3}}), 4);
    t.set(0, {0, 1, 3});
    t.set(0, {0, 1, 2});
    auto ind = induced_substructure(t, std::vector<Element>{0, 1, 3});
    CHECK(ind.structure.relation(0).tuples() == std::vector<Tuple>{{0, 1, 2}});
  }
}

TEST_CASE("induced substructures compose") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    Structure s = random_graph(7, rng);
    std::vector<Element> b, a;
    for (Element x = 0; x < 7; ++x)
      if (rng() & 1) b.push_back(x);
    for (Element x : b)
      if (rng() & 1) a.push_back(x);
    auto outer = induced_substructure(s, b);
    std::vector<Element> a_image;
    for (Element x : a)
      a_image.push_back(static_cast<Element>(
          std::find(outer.index_map.begin(), outer.index_map.end(), x) - outer.index_map.begin()));
    auto twice = induced_substructure(outer.structure, a_image).structure;
    CHECK(is_isomorphic(twice, induced_substructure(s, a).structure).has_value());
  }
}

TEST_CASE("reducts and expansions") {
  Vocabulary v({{"E", 2}, {"P", 1}});
  Structure s(v, 3);
  s.set_edge(0, 0, 1);
  s.set(1, {2});
  const std::vector<std::string> keep_e = {"E"};
  Structure plain = reduct_to(s, keep_e);
  CHECK(plain.vocab() == graph_vocab());
  CHECK(plain.relation(0).count() == 2);

  const std::vector<std::string> all = {"E", "P"};
  CHECK(reduct_to(s, all) == s);
  const std::vector<std::string> bad = {"Q"};
  CHECK_THROWS_AS(reduct_to(s, bad), VocabularyError);

  std::vector<std::pair<std::string, std::vector<Element>>> marks = {{"P", {0}}};
  Structure marked = expand_with_marks(point(), marks);
  CHECK(marked.vocab().size() == 2);
  CHECK(marked.holds(1, {0}));
  CHECK(expand_with_marks(triangle(), {}) == triangle());
  std::vector<std::pair<std::string, std::vector<Element>>> clash = {{"E", {0}}};
  CHECK_THROWS_AS(expand_with_marks(triangle(), clash), VocabularyError);
  std::vector<std::pair<std::string, std::vector<Element>>> twice = {{"Q", {0}}, {"Q", {1}}};
  CHECK_THROWS_AS(expand_with_marks(triangle(), twice), VocabularyError);
  CHECK(reduct_to(expand_with_marks(triangle(), marks), keep_e) == triangle());
}

TEST_CASE("find_embeddings") {
  CHECK(find_embeddings(edge(), triangle(), 100).size() == 6);
  CHECK(find_embeddings(edge(), triangle(), 4).size() == 4);
  auto from_empty = find_embeddings(empty(), triangle(), 100);
  REQUIRE(from_empty.size() == 1);
  CHECK(from_empty[0].map.empty());
  CHECK(find_embeddings(triangle(), path3(), 100).empty());
  // Lexicographic order.
  auto embs = find_embeddings(edge(), triangle(), 100);
  CHECK(std::is_sorted(embs.begin(), embs.end()));
  CHECK_THROWS_AS(find_embeddings(edge(), Structure(Vocabulary({{"P", 1}}), 2), 1), VocabularyError);
}

TEST_CASE("embeddings compose") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    Structure a = random_graph(2 + rng() % 2, rng);
    Structure b = random_graph(4, rng);
    Structure c = random_graph(6, rng);
    for (const auto& f : find_embeddings(a, b, 5))
      for (const auto& g : find_embeddings(b, c, 5)) {
        std::vector<Element> h;
        for (Element x : f.map) h.push_back(g.map[x]);
        CHECK(is_embedding(a, c, h));
      }
  }
}

TEST_CASE("is_isomorphic") {
  CHECK_FALSE(is_isomorphic(non_edge(), edge()).has_value());
  auto id = is_isomorphic(triangle(), triangle());
  REQUIRE(id.has_value());
  CHECK(is_embedding(triangle(), triangle(), id->map));
  Structure p102 = graph(3, {{1, 0}, {0, 2}});
  auto w = is_isomorphic(path3(), p102);
  REQUIRE(w.has_value());
  CHECK(is_embedding(path3(), p102, w->map));
  CHECK(is_isomorphic(p102, path3()).has_value());
}

TEST_CASE("is_isomorphic with a ternary symbol") {
  Vocabulary v({{"T", 3}});
  Structure a(v, 3), b(v, 3), c(v, 3);
  a.set(0, {0, 1, 2});
  b.set(0, {2, 0, 1});
  c.set(0, {0, 0, 1});
  CHECK(is_isomorphic(a, b).has_value());
  CHECK_FALSE(is_isomorphic(a, c).has_value());
}

TEST_CASE("is_isomorphic agrees with brute force, sizes up to 7") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = rng() % 8;
    Structure a = random_graph(n, rng);
    // Half the time b is a relabelling of a.
    Structure b = a;
    if (rng() & 1) {
      std::vector<Element> perm(n);
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      b = Structure(graph_vocab(), n);
      for (const auto& t : a.relation(0).tuples()) b.set(0, {perm[t[0]], perm[t[1]]});
    } else {
      b = random_graph(n, rng);
    }
    auto w = is_isomorphic(a, b);
    CHECK(w.has_value() == oracles::isomorphic(a, b));
    CHECK(is_isomorphic(b, a).has_value() == w.has_value());
    if (w) CHECK(oracles::preserves(a, b, w->map));
  }
}

TEST_CASE("tuple_type") {
  CHECK(tuple_type(triangle(), {0, 1}) == tuple_type(triangle(), {1, 2}));
  CHECK(tuple_type(path3(), {0, 2}) != tuple_type(path3(), {0, 1}));
  CHECK(tuple_type(path3(), {1, 1}) != tuple_type(path3(), {1, 2}));
  CHECK_THROWS_AS(tuple_type(path3(), {0, 3}), InvalidSubsetError);
  const auto t = tuple_type(path3(), {2, 1, 2});
  CHECK(TypeId::parse(t.str()) == t);
}

TEST_CASE("tuple_type is automorphism invariant (exhaustive, n <= 6)") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + rng() % 6;
    Structure s = random_graph(n, rng);
    auto autos = automorphisms(s);
    REQUIRE_FALSE(autos.empty());
    for (const auto& g : autos)
      for (const auto& t : oracles::all_tuples(n, 2)) {
        Tuple img = {g.map[t[0]], g.map[t[1]]};
        CHECK(tuple_type(s, t) == tuple_type(s, img));
      }
  }
}

TEST_CASE("canonical_key separates isomorphism classes") {
  // 11 graphs on 4 vertices up to isomorphism.
  std::set<TypeId> keys;
  for (const auto& g : all_graphs(4)) keys.insert(canonical_key(g));
  CHECK(keys.size() == 11);
  std::set<TypeId> keys5;
  for (const auto& g : all_graphs(5)) keys5.insert(canonical_key(g));
  CHECK(keys5.size() == 34);
}
