#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fraisse/structure.hpp"

namespace fraisse {

/// Permitted 1- and 2-structures over a binary vocabulary.
struct P2Spec {
  Vocabulary vocab;
  std::vector<Structure> members;

  /// Validates sizes (at most 2) and that every member uses `vocab`.
  P2Spec(Vocabulary vocab, std::vector<Structure> members);
};

// A point pattern packs the facts of a single element: bit k is the unary
// fact of symbol k, or the loop R_k(x, x) for a binary symbol k.
// A link pattern packs the facts between two distinct elements (x, y):
// bit 2k is R_k(x, y), bit 2k+1 is R_k(y, x). Unary symbols leave their
// link bits clear.
using PointPattern = std::uint32_t;
using LinkPattern = std::uint64_t;

PointPattern point_pattern(const Structure& s, Element x);
LinkPattern link_pattern(const Structure& s, Element x, Element y);
void apply_point_pattern(Structure& s, Element x, PointPattern p);
void apply_link_pattern(Structure& s, Element x, Element y, LinkPattern l);
LinkPattern reverse_link(LinkPattern l);

/// Compiled view of a P2 set: which point patterns occur, and for each
/// ordered pair of point patterns which link patterns yield a member.
class PatternTable {
 public:
  /// Throws VocabularyError for non-binary vocabularies or more than 32 symbols.
  explicit PatternTable(const P2Spec& p2);

  const Vocabulary& vocab() const { return vocab_; }
  const std::vector<PointPattern>& points() const { return points_; }
  bool point_permitted(PointPattern p) const;
  /// Links oriented from an element with pattern `from` to one with `to`.
  const std::vector<LinkPattern>& links(PointPattern from, PointPattern to) const;
  bool link_permitted(PointPattern from, PointPattern to, LinkPattern l) const;
  /// Every syntactically possible link pattern of the vocabulary.
  std::vector<LinkPattern> all_links() const;

  /// Membership in RP2: every point and every pair is permitted.
  bool admits(const Structure& s) const;

 private:
  Vocabulary vocab_;
  std::vector<PointPattern> points_;
  std::map<std::pair<PointPattern, PointPattern>, std::vector<LinkPattern>> links_;
  std::vector<LinkPattern> none_;
};

struct AdequacyWitness {
  PointPattern first;
  PointPattern second;
  std::size_t member;  // index into P2Spec::members
};

struct AdequacyReport {
  bool holds = false;
  std::string reason;
  /// One entry per unordered pair of permitted 1-structures.
  std::vector<AdequacyWitness> witnesses;
  std::optional<std::pair<PointPattern, PointPattern>> failing_pair;
};

AdequacyReport check_1_adequate(const P2Spec& p2);

/// Throws VocabularyError when `s` is over another vocabulary.
bool in_rp2(const P2Spec& p2, const Structure& s);

/// Members of RP2 with exactly n elements, one per isomorphism type, sorted
/// by canonical key.
std::vector<Structure> enumerate_rp2(const P2Spec& p2, std::size_t n);

/// Isomorphism types of induced substructures of size <= k, sorted by size
/// then canonical key.
std::vector<Structure> age(const Structure& s, std::size_t k);

struct ExplicitList {
  std::vector<Structure> structures;
  std::size_t size_bound = 0;
};

struct P2Class {
  P2Spec p2;
  std::size_t size_bound = 0;
};

/// A class of finite structures, closed under isomorphism. Checks over either
/// variant only look at members of size <= size_bound.
using ClassSpec = std::variant<ExplicitList, P2Class>;

struct HPReport {
  bool holds = true;
  /// (A, B) with A an induced substructure of member B and A outside the class.
  std::optional<std::pair<Structure, Structure>> violation;
  std::size_t bound = 0;
  std::size_t members_checked = 0;
};

HPReport check_hp(const ClassSpec& spec, std::size_t bound);

enum class APVerdict { Holds, Fails, Inconclusive };
const char* to_string(APVerdict v);

struct APCounterexample {
  Structure a, b, c;
  Embedding f_b, f_c;
};

struct APReport {
  APVerdict verdict = APVerdict::Holds;
  std::optional<APCounterexample> counterexample;
  std::size_t amalgam_bound = 0;
  std::size_t size_bound = 0;
  std::size_t triples_checked = 0;
  std::string note;
};

/// Searches every base triple (A, B, C) with embeddings f_B, f_C among class
/// members up to the size bound, and every amalgam D of size <= amalgam_bound
/// (images of B\A and C\A may overlap).
APReport check_ap(const ClassSpec& spec, std::size_t amalgam_bound);

}  // namespace fraisse
