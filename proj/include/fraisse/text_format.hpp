#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "fraisse/structure.hpp"

namespace fraisse {

// Line-oriented text format:
//
//   vocab graph
//   rel E 2
//   p2                       # optional: later structures are P2 members
//   structure edge over graph
//   size 2
//   E: 0 1; 1 0
//
// Blank lines and '#' comments are ignored.

struct NamedStructure {
  std::string name;
  Structure structure;
  bool p2_member = false;
};

struct Document {
  std::vector<Vocabulary> vocabularies;
  std::vector<NamedStructure> structures;
  bool has_p2 = false;

  /// Throws Error when no structure carries that name.
  const NamedStructure& find(std::string_view name) const;
  std::vector<Structure> p2_members() const;
  /// Structures declared outside the p2 section.
  std::vector<Structure> plain_structures() const;
};

Document parse_document(std::istream& in);
Document parse_document(std::string_view text);
/// Throws InputError when the file cannot be opened.
Document load_document(const std::filesystem::path& path);

void write_vocabulary(std::ostream& out, const Vocabulary& vocab);
void write_structure(std::ostream& out, std::string_view name, const Structure& s);

}  // namespace fraisse
