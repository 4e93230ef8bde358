#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fraisse/errors.hpp"

namespace fraisse {

using Element = std::uint32_t;
using Tuple = std::vector<Element>;

struct Symbol {
  std::string name;
  unsigned arity = 1;

  friend bool operator==(const Symbol&, const Symbol&) = default;
};

/// Finite relational vocabulary. Symbol order is significant: relation
/// tables of a structure are indexed by position in this list.
class Vocabulary {
 public:
  Vocabulary() = default;
  explicit Vocabulary(std::vector<Symbol> symbols, std::string name = {});

  const std::string& name() const { return name_; }
  const std::vector<Symbol>& symbols() const { return symbols_; }
  std::size_t size() const { return symbols_.size(); }
  const Symbol& operator[](std::size_t i) const { return symbols_[i]; }

  /// Maximal arity; 0 for the empty vocabulary.
  unsigned rho() const { return rho_; }
  bool binary() const { return rho_ <= 2; }

  std::optional<std::size_t> find(std::string_view symbol) const;
  /// Throws VocabularyError for unknown names.
  std::size_t index_of(std::string_view symbol) const;

  /// Name is a label only; two vocabularies are equal when their symbol
  /// lists are.
  friend bool operator==(const Vocabulary& a, const Vocabulary& b) {
    return a.symbols_ == b.symbols_;
  }

 private:
  std::vector<Symbol> symbols_;
  std::string name_;
  unsigned rho_ = 0;
};

/// Interpretation of one symbol. Arity 1 and 2 use dense bitmaps so
/// lookups stay O(1) on the oracle-sized structures; higher arities keep a
/// sorted tuple set.
class Relation {
 public:
  Relation(unsigned arity, std::size_t universe);

  unsigned arity() const { return arity_; }
  bool holds(std::span<const Element> t) const;
  bool holds1(Element a) const { return dense_[a] != 0; }
  bool holds2(Element a, Element b) const { return dense_[a * stride_ + b] != 0; }
  void set(std::span<const Element> t, bool value);

  void grow(std::size_t universe);
  std::size_t count() const;
  /// Tuples in lexicographic order.
  std::vector<Tuple> tuples() const;

  friend bool operator==(const Relation& a, const Relation& b);

 private:
  unsigned arity_;
  std::size_t n_ = 0;
  std::size_t stride_ = 0;
  std::vector<std::uint8_t> dense_;
  std::set<Tuple> sparse_;
};

/// A finite structure with universe {0, ..., n-1}.
class Structure {
 public:
  Structure() = default;
  Structure(Vocabulary vocab, std::size_t size);
  /// Takes ownership of prebuilt tables; one per symbol, arities must match.
  Structure(Vocabulary vocab, std::size_t size, std::vector<Relation> tables);

  const Vocabulary& vocab() const { return vocab_; }
  std::size_t size() const { return size_; }

  const Relation& relation(std::size_t symbol) const { return tables_[symbol]; }
  const Relation& relation(std::string_view symbol) const;

  bool holds(std::size_t symbol, std::span<const Element> t) const;
  bool holds(std::size_t symbol, std::initializer_list<Element> t) const {
    return holds(symbol, std::span<const Element>(t.begin(), t.size()));
  }

  /// Entries are range- and arity-checked (InvalidSubsetError / VocabularyError).
  void set(std::size_t symbol, std::span<const Element> t, bool value = true);
  void set(std::size_t symbol, std::initializer_list<Element> t, bool value = true) {
    set(symbol, std::span<const Element>(t.begin(), t.size()), value);
  }
  void set(std::string_view symbol, std::initializer_list<Element> t, bool value = true) {
    set(vocab_.index_of(symbol), t, value);
  }
  /// Makes a symmetric binary fact: both (a,b) and (b,a).
  void set_edge(std::size_t symbol, Element a, Element b, bool value = true);

  /// Appends a fresh element with no facts. Existing facts are untouched.
  Element add_element();

  friend bool operator==(const Structure& a, const Structure& b);

 private:
  void check_tuple(std::size_t symbol, std::span<const Element> t) const;

  Vocabulary vocab_;
  std::size_t size_ = 0;
  std::vector<Relation> tables_;
};

/// Canonical, totally ordered key. Used both for types of ordered tuples and
/// for isomorphism classes of whole structures.
struct TypeId {
  std::vector<std::uint32_t> code;

  std::string str() const;
  static TypeId parse(std::string_view text);

  friend bool operator==(const TypeId&, const TypeId&) = default;
  friend auto operator<=>(const TypeId&, const TypeId&) = default;
};

struct TypeIdHash {
  std::size_t operator()(const TypeId& t) const noexcept;
};

/// Injective map from the universe of a source structure into a target.
struct Embedding {
  std::vector<Element> map;

  friend bool operator==(const Embedding&, const Embedding&) = default;
  friend auto operator<=>(const Embedding&, const Embedding&) = default;
};

struct Induced {
  Structure structure;
  /// new index -> original element
  std::vector<Element> index_map;
};

Induced induced_substructure(const Structure& s, std::span<const Element> subset);
Structure reduct_to(const Structure& s, std::span<const std::string> keep);
Structure expand_with_marks(const Structure& s,
                            std::span<const std::pair<std::string, std::vector<Element>>> marks);
/// Adds one relation per entry, interpreted by the given tuples.
struct NewRelation {
  std::string name;
  unsigned arity;
  std::vector<Tuple> tuples;
};
Structure expand_with_relations(const Structure& s, std::span<const NewRelation> relations);

/// Checks that `map` is an embedding of `a` into `b`.
bool is_embedding(const Structure& a, const Structure& b, std::span<const Element> map);

/// Embeddings in lexicographic order of the map, at most `limit` of them.
std::vector<Embedding> find_embeddings(const Structure& a, const Structure& b,
                                       std::size_t limit);
std::optional<Embedding> is_isomorphic(const Structure& a, const Structure& b);

/// Quantifier-free type of an ordered tuple: its equality pattern plus the
/// facts holding among its distinct entries, indexed by first occurrence.
TypeId tuple_type(const Structure& s, std::span<const Element> tup);
inline TypeId tuple_type(const Structure& s, std::initializer_list<Element> tup) {
  return tuple_type(s, std::span<const Element>(tup.begin(), tup.size()));
}
/// Same as tuple_type but writes into `out` (cleared first) and skips range
/// checks. For hot loops.
void tuple_type_into(const Structure& s, std::span<const Element> tup,
                     std::vector<std::uint32_t>& out);

/// Isomorphism-invariant key of the whole structure: minimal tuple_type over
/// the orderings reached by individualization-refinement.
TypeId canonical_key(const Structure& s);

/// All automorphisms, lexicographic.
std::vector<Embedding> automorphisms(const Structure& s);

}  // namespace fraisse
