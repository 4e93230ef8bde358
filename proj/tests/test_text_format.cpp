#include <doctest.h>

#include <sstream>

#include "fixtures.hpp"
#include "fraisse/text_format.hpp"

using namespace fraisse;

namespace {

const char* kGraphs = R"(# random graph P2
vocab graph
rel E 2

structure tri over graph
size 3
E: 0 1; 1 0; 1 2; 2 1; 0 2; 2 0

p2
structure e0 over graph
size 0
structure e1 over graph
size 1
structure e2 over graph
size 2
structure e3 over graph
size 2
E: 0 1; 1 0
)";

}  // namespace

TEST_CASE("parse a document with a p2 section") {
  Document d = parse_document(std::string_view(kGraphs));
  REQUIRE(d.vocabularies.size() == 1);
  CHECK(d.vocabularies[0] == fixtures::graph_vocab());
  CHECK(d.has_p2);
  CHECK(d.structures.size() == 5);
  CHECK(d.find("tri").structure == fixtures::triangle());
  CHECK(d.p2_members().size() == 4);
  CHECK(d.plain_structures().size() == 1);
  CHECK_THROWS_AS(d.find("missing"), Error);
}

TEST_CASE("round trip through the writer") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 20; ++i) {
    Structure s = fixtures::random_graph(1 + rng() % 6, rng);
    std::ostringstream out;
    write_vocabulary(out, s.vocab());
    write_structure(out, "g", s);
    Document d = parse_document(std::string_view(out.str()));
    CHECK(d.find("g").structure == s);
  }
  Vocabulary v({{"P", 1}, {"T", 3}}, "mixed");
  Structure s(v, 3);
  s.set(0, {2});
  s.set(1, {0, 2, 1});
  std::ostringstream out;
  write_vocabulary(out, v);
  write_structure(out, "m", s);
  CHECK(parse_document(std::string_view(out.str())).find("m").structure == s);
}

TEST_CASE("parse errors carry line numbers") {
  auto line_of = [](const char* text) {
    try {
      parse_document(std::string_view(text));
    } catch (const ParseError& e) {
      return e.line();
    }
    return std::size_t{0};
  };
  CHECK(line_of("vocab g\nrel E 2\nstructure s over h\n") == 3);
  CHECK(line_of("vocab g\nrel E 2\nstructure s over g\nsize 2\nE: 0 5\n") == 5);
  CHECK(line_of("vocab g\nrel E 2\nstructure s over g\nsize 2\nE: 0\n") == 5);
  CHECK(line_of("vocab g\nrel E two\n") == 2);
  CHECK(line_of("bogus\n") == 1);
}

TEST_CASE("missing file") {
  CHECK_THROWS_AS(load_document("/nonexistent/file.txt"), InputError);
}
