#include <doctest.h>

#include <sstream>

#include "fixtures.hpp"
#include "fraisse/doubled_cover.hpp"
#include "fraisse/errors.hpp"
#include "fraisse/reduct.hpp"
#include "fraisse/subsets.hpp"

using namespace fraisse;
using namespace fixtures;

namespace {

GenericOracle base_graph(std::uint64_t seed, std::size_t points, std::size_t level) {
  auto o = new_generic(random_graph_p2(), seed);
  o.add_random_points(points);
  REQUIRE(o.saturate(level, 100000).saturated);
  return o;
}

/// Graph with a unary colour on some vertices.
Structure coloured(std::size_t n, std::uint64_t seed) {
  Vocabulary v({{"P", 1}, {"E", 2}}, "coloured");
  Structure s(v, n);
  std::mt19937_64 rng(seed);
  for (Element a = 0; a < n; ++a) {
    if (rng() % 3 == 0) s.set(0, {a});
    for (Element b = a + 1; b < n; ++b)
      if (rng() & 1) s.set_edge(1, a, b);
  }
  return s;
}

/// All n-tuples whose target type is in `ids`.
std::vector<Tuple> class_union(const TypedUniverse& u, std::size_t n, const std::vector<TypeId>& ids) {
  std::vector<Tuple> rel;
  for_each_tuple(u.carrier, static_cast<unsigned>(n), [&](std::span<const Element> t) {
    if (std::find(ids.begin(), ids.end(), u.typer.type_of(t)) != ids.end()) rel.emplace_back(t.begin(), t.end());
    return true;
  });
  return rel;
}

std::vector<TypeId> classes(const TypedUniverse& u, std::size_t n) {
  std::vector<TypeId> ids;
  for (const auto& [id, count] : enumerate_types(u.typer, n, {}, false).entries) ids.push_back(id);
  return ids;
}

}  // namespace

TEST_CASE("refinement is reflexive and follows reducts") {
  const Structure s = coloured(9, 1);
  const std::vector<std::string> keep_e = {"E"};
  const auto full = typed_universe(s, 3);
  const auto graph_part = typed_universe(reduct_to(s, keep_e), 3);
  const auto bare = typed_universe(reduct_to(s, std::vector<std::string>{}), 3);
  for (std::size_t n = 0; n <= 3; ++n) {
    CHECK(partition_refines(full, full, n).refines);
    CHECK(partition_refines(full, graph_part, n).refines);
    CHECK(partition_refines(graph_part, bare, n).refines);
    CHECK(partition_refines(full, bare, n).refines);
  }
  CHECK(is_reduct(full, graph_part, 3).holds);
  CHECK(is_reduct(full, graph_part, 3).describe() == "reduct (up to 3)");

  auto back = is_reduct(graph_part, full, 3);
  CHECK_FALSE(back.holds);
  REQUIRE(back.failing_arity);
  CHECK(*back.failing_arity == 1);
  REQUIRE(back.counterexample);
  auto [a, b] = *back.counterexample;
  CHECK(graph_part.typer.type_of(a) == graph_part.typer.type_of(b));
  CHECK(full.typer.type_of(a) != full.typer.type_of(b));
}

TEST_CASE("refinement input errors") {
  const auto a = typed_universe(coloured(5, 2), 2);
  const auto b = typed_universe(coloured(6, 2), 2);
  CHECK_THROWS_AS(partition_refines(a, b, 2), InputError);
  CHECK_THROWS_AS(partition_refines(a, a, 3), InputError);
  CHECK_THROWS_AS(restrict_carrier(a, 6), InputError);
  CHECK(restrict_carrier(b, 5).carrier == 5);
}

TEST_CASE("definable unions of type classes") {
  const Structure g = graph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
  const auto u = typed_universe(g, 2);
  std::vector<Tuple> edges;
  for (const auto& t : g.relation(0).tuples()) edges.push_back(t);
  auto ids = definable_as_union(u, 2, edges);
  REQUIRE(ids);
  REQUIRE(ids->size() == 1);
  CHECK(ids->front() == tuple_type(g, Tuple{0, 1}));
  CHECK_FALSE(definable_as_union(u, 2, {{0, 1}}));
  CHECK(definable_as_union(u, 2, {})->empty());
  CHECK_THROWS_AS(definable_as_union(u, 2, {{0, 9}}), InputError);

  // Round trip over every set of 2-classes of a coloured graph.
  const auto c = typed_universe(coloured(7, 3), 2);
  const auto all = classes(c, 2);
  REQUIRE(all.size() <= 16);
  for (std::uint32_t mask = 0; mask < (1u << all.size()); ++mask) {
    std::vector<TypeId> pick;
    for (std::size_t i = 0; i < all.size(); ++i)
      if ((mask >> i) & 1) pick.push_back(all[i]);
    auto got = definable_as_union(c, 2, class_union(c, 2, pick));
    REQUIRE(got);
    CHECK(*got == pick);
  }
}

TEST_CASE("reducts make target classes definable") {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const Structure s = coloured(6 + seed * 2, seed);
    const auto source = typed_universe(s, 3);
    const auto target = typed_universe(reduct_to(s, std::vector<std::string>{"E"}), 3);
    REQUIRE(is_reduct(source, target, 3).holds);
    for (std::size_t n = 1; n <= 3; ++n)
      for (const auto& id : classes(target, n)) CHECK(definable_as_union(source, n, class_union(target, n, {id})));
  }
}

TEST_CASE("typed-universe text round trip") {
  const auto u = typed_universe(coloured(4, 5), 2, "exact");
  std::ostringstream out;
  write_typed_universe(out, u);
  std::istringstream in(out.str());
  const auto v = read_typed_universe(in);
  CHECK(v.carrier == 4);
  CHECK(v.n_max == 2);
  CHECK(v.provenance == "exact");
  for (std::size_t n = 1; n <= 2; ++n)
    for_each_tuple(4, static_cast<unsigned>(n), [&](std::span<const Element> t) {
      CHECK(u.typer.type_of(t) == v.typer.type_of(t));
      return true;
    });
  CHECK(partition_refines(u, v, 2).refines);
  CHECK(partition_refines(v, u, 2).refines);

  std::string text = out.str();
  std::istringstream truncated(text.substr(0, text.rfind("3 3 :")));
  CHECK_THROWS_AS(read_typed_universe(truncated), ParseError);
  std::istringstream bad_head("typed-world 4 2\n");
  CHECK_THROWS_AS(read_typed_universe(bad_head), ParseError);
  std::istringstream bad_entry("typed-universe 2 1\narity 1\n0 : 1.0\n5 : 1.0\n");
  CHECK_THROWS_AS(read_typed_universe(bad_entry), ParseError);
  CHECK_THROWS_AS(load_typed_universe("/nonexistent/universe.txt"), InputError);
}

TEST_CASE("quotient reducts of the doubled cover") {
  auto o = base_graph(21, 12, 3);
  const auto d = build_double(o);
  const std::size_t core = o.core_size();
  const auto q = quotient(d);
  const auto g = restrict_carrier(typed_universe(q.typer(), 4, "G"), core);
  const auto g0 = restrict_carrier(typed_universe(q.binary_typer(), 4, "G0"), core);
  const auto gs0 = restrict_carrier(typed_universe(quotient_star(d).binary_typer(), 4, "G*0"), core);

  auto weak = is_reduct(g0, g, 3);
  CHECK_FALSE(weak.holds);
  REQUIRE(weak.failing_arity);
  CHECK(*weak.failing_arity == 3);

  auto w = three_type_separation(q);
  CHECK(g0.typer.type_of(w.g) == g0.typer.type_of(w.h));
  CHECK(g.typer.type_of(w.g) != g.typer.type_of(w.h));

  CHECK(is_reduct(gs0, g, 4).holds);

  // The path-configuration class of G is a union of G*0 classes.
  const auto path_class = g.typer.type_of(w.g);
  auto ids = definable_as_union(gs0, 3, class_union(g, 3, {path_class}));
  REQUIRE(ids);
  CHECK(ids->size() >= 1);
}
