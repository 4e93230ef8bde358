#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fraisse/structure.hpp"
#include "fraisse/types.hpp"

namespace fraisse {

/// Tuple types of every arity up to n_max over {0..carrier-1}.
struct TypedUniverse {
  std::size_t carrier = 0;
  std::size_t n_max = 0;
  TupleTyper typer;
  /// Where the types came from, e.g. the saturation level of the source.
  std::string provenance;
};

TypedUniverse typed_universe(const TupleTyper& typer, std::size_t n_max, std::string provenance = {});
TypedUniverse typed_universe(const Structure& s, std::size_t n_max, std::string provenance = {});
/// Same types on the first `carrier` elements. Throws InputError if larger.
TypedUniverse restrict_carrier(const TypedUniverse& u, std::size_t carrier);

/// Text table: a `typed-universe <carrier> <nmax>` header, an optional
/// `provenance` line, then per arity an `arity n` line followed by one
/// `<entries> : <type key>` line for every n-tuple.
void write_typed_universe(std::ostream& out, const TypedUniverse& u);
/// Throws ParseError on malformed or incomplete tables.
TypedUniverse read_typed_universe(std::istream& in);
TypedUniverse load_typed_universe(const std::string& path);

struct RefinementReport {
  bool refines = true;
  std::size_t arity = 0;
  std::size_t tuples_checked = 0;
  /// Tuples with equal source type and different target type.
  std::optional<std::pair<Tuple, Tuple>> counterexample;
};

/// Equal source types imply equal target types on all n-tuples. Throws
/// InputError on a carrier mismatch or n above either n_max.
RefinementReport partition_refines(const TypedUniverse& source, const TypedUniverse& target, std::size_t n);

/// Source types whose classes union to exactly `relation` (n-tuples), sorted;
/// none if the relation splits a class.
std::optional<std::vector<TypeId>> definable_as_union(const TypedUniverse& source, std::size_t n,
                                                      const std::vector<Tuple>& relation);

struct ReductReport {
  bool holds = true;
  std::size_t n_max = 0;
  std::optional<std::size_t> failing_arity;
  std::optional<std::pair<Tuple, Tuple>> counterexample;
  std::string source_provenance, target_provenance;

  std::string describe() const;
};

ReductReport is_reduct(const TypedUniverse& source, const TypedUniverse& target, std::size_t n_max);

}  // namespace fraisse
