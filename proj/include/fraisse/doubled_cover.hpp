#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fraisse/generic.hpp"
#include "fraisse/structure.hpp"
#include "fraisse/types.hpp"

namespace fraisse {

/// Doubled cover of a graph F: universe F x {0,1} with (a,i) stored as
/// 2a+i. Same-level pairs copy F, cross-level pairs copy its complement
/// (so (a,0) and (a,1) are adjacent).
struct DoubledStructure {
  Structure base;
  Structure m;
  /// u -> u', the other element over the same base point.
  std::vector<Element> partner;
  std::vector<Element> half0, half1;
  /// Saturation of F when it came from an oracle; guarantees apply to base
  /// elements below base_core.
  std::optional<std::size_t> base_saturation;
  std::size_t base_core = 0;
};

/// Throws InputError unless f has one binary symbol, symmetric and loop-free.
DoubledStructure build_double(const Structure& f);
DoubledStructure build_double(const GenericOracle& f);

struct PairViolation {
  bool holds = true;
  std::optional<std::pair<Element, Element>> violation;
};

/// Compares "x = y or no common neighbour" with the pairing on every pair.
PairViolation e_definability_check(const DoubledStructure& d);

/// For distinct u, v: u~v iff u'~v' iff u!~v' iff u'!~v.
PairViolation verify_claim1(const DoubledStructure& d);

struct Claim2Report {
  std::size_t n = 0;
  std::size_t trials = 0;
  std::size_t successes = 0;
  /// Trials without a matching second tuple (not counted as failures).
  std::size_t skipped = 0;
  /// First failing trial: (u_1..u_{n+1}, v_1..v_n).
  std::optional<std::pair<Tuple, Tuple>> failure;
};

/// Samples pair-closed partial isomorphisms u_i -> v_i on n elements of M0
/// over the core, a new u_{n+1} in M0, and searches M0 for v_{n+1}.
/// Throws SaturationError unless F is saturated to level n+1.
Claim2Report verify_claim2(const DoubledStructure& d, std::size_t n, std::size_t trials, std::uint64_t seed);

/// Pairing classes of a structure with a fixed-point-free involution.
/// reps[i] is the designated element of class i; class i is
/// {reps[i], partner[reps[i]]}.
class QuotientGeometry {
 public:
  /// Throws InputError unless partner is a fixed-point-free involution.
  /// Classes are ordered by their smaller element, which becomes the rep.
  QuotientGeometry(Structure m, std::vector<Element> partner);
  /// Explicit reps (one per class).
  QuotientGeometry(Structure m, std::vector<Element> partner, std::vector<Element> reps);

  const Structure& structure() const { return m_; }
  std::size_t size() const { return reps_.size(); }
  Element rep(std::size_t g) const { return reps_[g]; }
  Element partner(Element u) const { return partner_[u]; }
  std::size_t class_of(Element u) const { return class_of_[u]; }

  /// Type of a tuple of classes: the least tuple_type of (u1,u1',u2,u2',..)
  /// over all choices of which element of each class comes first.
  TypeId pair_type(std::span<const Element> classes) const;

  /// Types of the quotient structure (every arity).
  TupleTyper typer() const;
  /// Types of its reduct to relations of arity <= 2: the family of
  /// pair_type over single entries and ordered pairs of entries.
  TupleTyper binary_typer() const;

 private:
  void index();

  Structure m_;
  std::vector<Element> partner_;
  std::vector<Element> reps_;
  std::vector<std::size_t> class_of_;
};

QuotientGeometry quotient(const DoubledStructure& d);

struct Claim3Report {
  bool holds = true;
  std::size_t pairs_checked = 0;
  /// Ordered class pair whose type differs from the reference pair (0, 1),
  /// or whose case-analysis map is not a partial isomorphism.
  std::optional<std::pair<std::size_t, std::size_t>> violation;
};

/// All ordered pairs of distinct classes have one pair_type, and the map
/// chosen by the four-case analysis on designated reps witnesses it.
Claim3Report verify_claim3(const QuotientGeometry& q);

struct SeparationWitness {
  /// Classes over an induced path u1~u2, u1~u3, u2!~u3 of designated reps.
  std::vector<Element> g;
  /// Classes over a triangle of designated reps.
  std::vector<Element> h;
  bool pairwise_equal = false;
  bool triple_distinct = false;
};

/// Throws NotFoundError naming the missing configuration.
SeparationWitness three_type_separation(const QuotientGeometry& q);

/// M with a unary mark "M0" on the first half.
Structure build_expansion_star(const DoubledStructure& d);
QuotientGeometry quotient_star(const DoubledStructure& d);

/// M with the pairing added as a binary symbol "pair".
Structure pair_structure(const DoubledStructure& d);

}  // namespace fraisse
