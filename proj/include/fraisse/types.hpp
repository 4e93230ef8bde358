#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fraisse/generic.hpp"
#include "fraisse/structure.hpp"

namespace fraisse {

/// Assigns a TypeId to every ordered tuple over a carrier {0..carrier-1}.
struct TupleTyper {
  std::size_t carrier = 0;
  std::function<TypeId(std::span<const Element>)> type_of;
};

/// Types by tuple_type in a copy of s.
TupleTyper structure_typer(Structure s);

struct TypeCensus {
  std::size_t arity = 0;
  std::vector<Element> params;
  bool distinct = false;
  /// Sorted by TypeId.
  std::vector<std::pair<TypeId, std::size_t>> entries;

  std::size_t total() const;
};

/// Types every n-tuple t (distinct entries if requested) by type(params + t).
TypeCensus enumerate_types(const TupleTyper& typer, std::size_t n, const std::vector<Element>& params,
                           bool distinct);
TypeCensus enumerate_types(const Structure& s, std::size_t n, const std::vector<Element>& params,
                           bool distinct);

struct PairDeterminacy {
  bool determined = true;
  /// Tuples with equal pairwise types and different full types.
  std::optional<std::pair<Tuple, Tuple>> counterexample;
  std::size_t tuples_checked = 0;
};

/// Searches tuples of n distinct entries (drawn from `allowed`, default the
/// whole carrier) whose pairwise types agree but whose n-types differ.
PairDeterminacy types_determined_by_pairs(const TupleTyper& typer, std::size_t n,
                                          const std::optional<std::vector<Element>>& allowed = {});

enum class AclVerdict { Algebraic, NonAlgebraic, Inconclusive };
const char* to_string(AclVerdict v);

struct AclEntry {
  Element element;
  std::size_t realizations;
  AclVerdict verdict;
};

struct AclReport {
  std::vector<Element> base;
  std::size_t d = 0;
  std::vector<AclEntry> entries;

  /// Elements with verdict Algebraic, sorted.
  std::vector<Element> closure() const;
  std::size_t inconclusive() const;
  std::optional<AclVerdict> verdict_of(Element a) const;
};

/// Counts realizations of each candidate's type over `base` in a fixed
/// structure. Fewer than d realizations gives Algebraic when saturation_ok,
/// Inconclusive otherwise. Elements of the base are always algebraic.
AclReport acl_scan(const TupleTyper& typer, const std::vector<Element>& base, std::size_t d,
                   bool saturation_ok, const std::vector<Element>& candidates);

/// acl over a growing oracle. Types with fewer than d realizations are
/// duplicated by extension while budget remains; `budget` is decremented by
/// the points added. Candidates are the core elements (all elements when
/// unsaturated). Every type of a point outside the base can be realized
/// again by extension, so non-base elements come out NonAlgebraic, or
/// Inconclusive once the budget is spent.
AclReport acl_approx(GenericOracle& o, const std::vector<Element>& base, std::size_t d,
                     std::size_t& budget);

/// Memoized acl over a fixed universe of candidate elements.
class AclContext {
 public:
  using Compute = std::function<AclReport(const std::vector<Element>& base)>;
  AclContext(std::vector<Element> universe, Compute compute);

  const std::vector<Element>& universe() const { return universe_; }
  /// base is sorted and deduplicated before lookup.
  const AclReport& acl(std::vector<Element> base);
  bool algebraic(Element a, std::vector<Element> base);
  std::size_t computed() const { return cache_.size(); }

 private:
  std::vector<Element> universe_;
  Compute compute_;
  std::map<std::vector<Element>, AclReport> cache_;
};

/// Static context: acl_scan over `universe` candidates; saturation_ok(k)
/// says whether bases of size k meet the saturation precondition.
AclContext static_acl_context(TupleTyper typer, std::vector<Element> universe, std::size_t d,
                              std::function<bool(std::size_t)> saturation_ok);
/// Oracle context over the core, sharing one extension budget.
AclContext oracle_acl_context(GenericOracle& o, std::size_t d, std::size_t budget);

enum class Verdict3 { Yes, No, Inconclusive };

struct TrivialityReport {
  Verdict3 verdict = Verdict3::Yes;
  /// (a, B): a algebraic over B but over no singleton of B.
  std::optional<std::pair<Element, std::vector<Element>>> counterexample;
  std::size_t bases_checked = 0;
  std::size_t inconclusive_entries = 0;
};

/// Over every nonempty B of size <= max_b drawn from the context universe.
TrivialityReport check_triviality(AclContext& ctx, std::size_t max_b);

struct DegeneracyReport {
  Verdict3 verdict = Verdict3::Yes;
  std::size_t degree = 0;
  struct Witness {
    std::vector<Element> a, b, c;
  };
  /// A dependence A on B over C with no witness B0 of size <= degree.
  std::optional<Witness> counterexample;
  std::size_t cases_checked = 0;
  std::size_t dependences = 0;
  std::size_t inconclusive_entries = 0;
};

/// Dependence of A on B over C means some a in A lies in acl(B u C) but not
/// in acl(C). Checks that every dependence is witnessed by some B0 within B
/// of size <= rho - 1. A, B, C range over subsets of the context universe
/// with B and C disjoint and sizes bounded by max_a, max_b, max_c.
DegeneracyReport check_degenerate_dependence(AclContext& ctx, std::size_t rho, std::size_t max_a,
                                             std::size_t max_b, std::size_t max_c);

}  // namespace fraisse
