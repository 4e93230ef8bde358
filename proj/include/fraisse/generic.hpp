#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "fraisse/amalgamation.hpp"
#include "fraisse/structure.hpp"

namespace fraisse {

/// One-point extension over an ordered base. links[i] is the link pattern
/// oriented from base[i] to the new point.
struct ExtensionType {
  std::vector<Element> base;
  std::vector<LinkPattern> links;
  PointPattern point = 0;
};

struct ExtensionStep {
  Element element;
  /// Empty base for a fully random point.
  ExtensionType type;
  bool random = false;

  std::string str() const;
};

struct SaturationReport {
  bool saturated = false;
  std::size_t level = 0;
  std::size_t core_size = 0;
  std::size_t points_added = 0;
  std::size_t subsets_checked = 0;
  /// Extension types found unrealized by the final verification scan.
  std::size_t missing_after = 0;
};

/// Seeded finite approximation of the limit of RP2. Grows only by appending
/// points; existing facts never change.
class GenericOracle {
 public:
  /// Throws AdequacyError unless p2 is 1-adequate.
  GenericOracle(P2Spec p2, std::uint64_t seed);

  const P2Spec& p2() const { return p2_; }
  const PatternTable& table() const { return table_; }
  const Structure& current() const { return current_; }
  std::size_t size() const { return current_.size(); }
  std::uint64_t seed() const { return seed_; }
  const std::vector<ExtensionStep>& log() const { return log_; }

  /// Level of the last successful saturate; guarantees apply to elements
  /// below core_size().
  std::optional<std::size_t> saturation_level() const { return level_; }
  std::size_t core_size() const { return core_; }

  /// Throws ExtensionError when tau is not permitted or its base is invalid.
  Element extend_one_point(const ExtensionType& tau);
  Element add_random_point();
  void add_random_points(std::size_t n);

  /// One pass over every subset of the current universe of size <= k.
  SaturationReport saturate(std::size_t k, std::size_t new_point_budget);

  /// Point pattern of an existing element.
  PointPattern point_of(Element x) const { return point_pattern(current_, x); }

 private:
  Element append(PointPattern p);
  LinkPattern random_link(PointPattern from, PointPattern to);

  P2Spec p2_;
  PatternTable table_;
  Structure current_;
  std::uint64_t seed_;
  std::mt19937_64 rng_;
  std::vector<ExtensionStep> log_;
  std::optional<std::size_t> level_;
  std::size_t core_ = 0;
};

GenericOracle new_generic(const P2Spec& p2, std::uint64_t seed);

/// Every extension type over `base` (distinct elements) permitted by the
/// table, in a fixed order.
std::vector<ExtensionType> compatible_extensions(const PatternTable& table, const Structure& s,
                                                 const std::vector<Element>& base);

/// Whether some element outside `tau.base` realizes tau in s.
bool realized(const Structure& s, const ExtensionType& tau);

/// Counts (subset, extension type) pairs over subsets of {0..scope-1} of
/// size <= k that have no realization in s. Exhaustive.
std::size_t unrealized_extensions(const PatternTable& table, const Structure& s, std::size_t scope,
                                  std::size_t k);

struct BackAndForthResult {
  bool equivalent = false;
  std::size_t rounds = 0;
  /// When not equivalent: the first spoiler move whose class has no answer.
  /// side 0 plays in a, side 1 in b. An empty move means the structures
  /// already differ before any move (only possible for k = 0 with one side
  /// empty and the other not).
  int side = 0;
  std::optional<Element> move;
  std::string describe() const;
};

/// k-round extension game. Positions are compared by their extension
/// classes: class_0(t) records tp(t) and the set of tp(t x), and class_r(t)
/// records tp(t) and the set of class_{r-1}(t x).
BackAndForthResult back_and_forth(const Structure& a, const Structure& b, std::size_t k);

struct HomogeneityReport {
  std::size_t m = 0;
  std::size_t trials = 0;
  std::size_t successes = 0;
  /// Trials where no second tuple of the same type was found.
  std::size_t skipped = 0;
  double rate() const { return trials == skipped ? 1.0 : double(successes) / double(trials - skipped); }
};

/// Samples pairs of same-type m-tuples from the core and checks that the
/// partial isomorphism extends one point forth and back for every core
/// element. Throws SaturationError unless the level is at least m.
HomogeneityReport homogeneity_probe(const GenericOracle& o, std::size_t m, std::size_t trials,
                                    std::uint64_t seed);

}  // namespace fraisse
