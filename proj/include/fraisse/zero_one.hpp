#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "fraisse/amalgamation.hpp"
#include "fraisse/structure.hpp"

namespace fraisse {

/// Per-trial seed derived from (seed, trial) with splitmix64.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial);

/// Uniform labelled member of RP2: each point pattern and each pair's link
/// drawn independently and uniformly among permitted options.
Structure sample_uniform(const PatternTable& table, std::size_t n, std::mt19937_64& rng);
/// Throws AdequacyError unless p2 is 1-adequate.
Structure sample_uniform(const P2Spec& p2, std::size_t n, std::uint64_t seed);

/// "For all distinct x_1..x_k (with the given point patterns, if any) there
/// is w outside them with point pattern `point` and link links[i] from x_i."
struct AxiomSpec {
  std::size_t k = 0;
  std::vector<LinkPattern> links;
  PointPattern point = 0;
  std::optional<std::vector<PointPattern>> base_points;
};

/// Mini-format: `ext k: L1 | L2 | ... [; new F] [; base P1 | P2 ...]`.
/// A link is `-` or space-separated tokens `R` (both directions), `R>`
/// (base to new), `R<` (new to base). Point facts are `-` or symbol names
/// (unary facts, or loops of binary symbols). Throws ParseError (line 0).
AxiomSpec parse_axiom(std::string_view text, const Vocabulary& vocab);
std::string format_axiom(const AxiomSpec& ax, const Vocabulary& vocab);

bool axiom_holds(const Structure& s, const AxiomSpec& ax);
bool axiom_compatible(const PatternTable& table, const AxiomSpec& ax);

/// Every compatible k-parameter axiom with base point patterns pinned.
std::vector<AxiomSpec> all_extension_axioms(const PatternTable& table, std::size_t k);

struct ProbEstimate {
  std::size_t n = 0;
  std::size_t trials = 0;
  std::size_t successes = 0;
  std::uint64_t seed = 0;

  double estimate() const { return trials ? double(successes) / double(trials) : 0.0; }
  /// Wilson score interval at 95%.
  std::pair<double, double> wilson() const;
};

/// Fraction of samples satisfying every axiom in the list.
ProbEstimate estimate_probability(const P2Spec& p2, const std::vector<AxiomSpec>& axioms, std::size_t n,
                                  std::size_t trials, std::uint64_t seed);

struct ConvergenceReport {
  std::vector<ProbEstimate> rows;
  /// No later size falls below an earlier one with disjoint intervals.
  bool monotone = true;
  bool incompatible = false;
};

ConvergenceReport convergence_report(const P2Spec& p2, const std::vector<AxiomSpec>& axioms,
                                     const std::vector<std::size_t>& sizes, std::size_t trials,
                                     std::uint64_t seed);

}  // namespace fraisse
