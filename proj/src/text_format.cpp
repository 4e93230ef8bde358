#include "fraisse/text_format.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace fraisse {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> words(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::optional<std::uint64_t> to_uint(std::string_view w) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(w.data(), w.data() + w.size(), v);
  if (ec != std::errc() || p != w.data() + w.size()) return std::nullopt;
  return v;
}

struct PendingStructure {
  std::string name;
  const Vocabulary* vocab = nullptr;
  std::optional<Structure> structure;
  bool p2 = false;
  std::size_t line = 0;
};

}  // namespace

const NamedStructure& Document::find(std::string_view name) const {
  for (const auto& s : structures)
    if (s.name == name) return s;
  throw Error("no structure named '" + std::string(name) + "'");
}

std::vector<Structure> Document::p2_members() const {
  std::vector<Structure> out;
  for (const auto& s : structures)
    if (s.p2_member) out.push_back(s.structure);
  return out;
}

std::vector<Structure> Document::plain_structures() const {
  std::vector<Structure> out;
  for (const auto& s : structures)
    if (!s.p2_member) out.push_back(s.structure);
  return out;
}

Document parse_document(std::istream& in) {
  Document doc;
  std::map<std::string, std::size_t> vocab_index;
  std::optional<std::pair<std::string, std::vector<Symbol>>> open_vocab;
  std::optional<PendingStructure> open_struct;
  bool in_p2 = false;
  std::size_t lineno = 0;

  auto close_vocab = [&] {
    if (!open_vocab) return;
    doc.vocabularies.emplace_back(std::move(open_vocab->second), open_vocab->first);
    vocab_index[open_vocab->first] = doc.vocabularies.size() - 1;
    open_vocab.reset();
  };
  auto close_struct = [&] {
    if (!open_struct) return;
    if (!open_struct->structure) throw ParseError(open_struct->line, "structure '" + open_struct->name + "' has no size line");
    doc.structures.push_back({open_struct->name, std::move(*open_struct->structure), open_struct->p2});
    open_struct.reset();
  };

  std::string raw;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto w = words(line);
    const std::string_view head = w[0];
    try {
      if (head == "vocab") {
        if (w.size() != 2) throw ParseError(lineno, "expected 'vocab <name>'");
        close_struct();
        close_vocab();
        if (vocab_index.count(std::string(w[1]))) throw ParseError(lineno, "duplicate vocabulary '" + std::string(w[1]) + "'");
        open_vocab.emplace(std::string(w[1]), std::vector<Symbol>{});
      } else if (head == "rel") {
        if (!open_vocab) throw ParseError(lineno, "'rel' outside a vocab block");
        if (w.size() != 3) throw ParseError(lineno, "expected 'rel <symbol> <arity>'");
        auto arity = to_uint(w[2]);
        if (!arity || *arity == 0) throw ParseError(lineno, "bad arity '" + std::string(w[2]) + "'");
        open_vocab->second.push_back({std::string(w[1]), static_cast<unsigned>(*arity)});
      } else if (head == "p2") {
        if (w.size() != 1) throw ParseError(lineno, "unexpected tokens after 'p2'");
        close_struct();
        close_vocab();
        in_p2 = true;
        doc.has_p2 = true;
      } else if (head == "structure") {
        if (w.size() != 4 || w[2] != "over") throw ParseError(lineno, "expected 'structure <name> over <vocab>'");
        close_struct();
        close_vocab();
        auto it = vocab_index.find(std::string(w[3]));
        if (it == vocab_index.end()) throw ParseError(lineno, "unknown vocabulary '" + std::string(w[3]) + "'");
        for (const auto& s : doc.structures)
          if (s.name == w[1]) throw ParseError(lineno, "duplicate structure '" + std::string(w[1]) + "'");
        open_struct.emplace();
        open_struct->name = std::string(w[1]);
        open_struct->vocab = &doc.vocabularies[it->second];
        open_struct->p2 = in_p2;
        open_struct->line = lineno;
      } else if (head == "size") {
        if (!open_struct) throw ParseError(lineno, "'size' outside a structure block");
        if (open_struct->structure) throw ParseError(lineno, "size given twice");
        if (w.size() != 2) throw ParseError(lineno, "expected 'size <n>'");
        auto n = to_uint(w[1]);
        if (!n) throw ParseError(lineno, "bad size '" + std::string(w[1]) + "'");
        open_struct->structure.emplace(*open_struct->vocab, static_cast<std::size_t>(*n));
      } else if (head.back() == ':' || line.find(':') != std::string_view::npos) {
        if (!open_struct) throw ParseError(lineno, "relation line outside a structure block");
        if (!open_struct->structure) throw ParseError(lineno, "relation line before 'size'");
        const auto colon = line.find(':');
        const std::string symbol(trim(line.substr(0, colon)));
        auto sym = open_struct->vocab->find(symbol);
        if (!sym) throw ParseError(lineno, "unknown symbol '" + symbol + "'");
        std::string_view rest = line.substr(colon + 1);
        while (!rest.empty()) {
          auto semi = rest.find(';');
          std::string_view item = trim(rest.substr(0, semi));
          rest = semi == std::string_view::npos ? std::string_view{} : rest.substr(semi + 1);
          if (item.empty()) continue;
          Tuple t;
          for (auto tok : words(item)) {
            auto v = to_uint(tok);
            if (!v) throw ParseError(lineno, "bad element '" + std::string(tok) + "'");
            t.push_back(static_cast<Element>(*v));
          }
          open_struct->structure->set(*sym, t);
        }
      } else {
        throw ParseError(lineno, "unrecognised line '" + std::string(line) + "'");
      }
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(lineno, e.what());
    }
  }
  try {
    close_struct();
    close_vocab();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(lineno, e.what());
  }
  return doc;
}

Document parse_document(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_document(in);
}

Document load_document(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  return parse_document(in);
}

void write_vocabulary(std::ostream& out, const Vocabulary& vocab) {
  out << "vocab " << (vocab.name().empty() ? "V" : vocab.name()) << '\n';
  for (const auto& sym : vocab.symbols()) out << "rel " << sym.name << ' ' << sym.arity << '\n';
}

void write_structure(std::ostream& out, std::string_view name, const Structure& s) {
  out << "structure " << name << " over " << (s.vocab().name().empty() ? "V" : s.vocab().name())
      << '\n';
  out << "size " << s.size() << '\n';
  for (std::size_t sym = 0; sym < s.vocab().size(); ++sym) {
    auto tuples = s.relation(sym).tuples();
    if (tuples.empty()) continue;
    out << s.vocab()[sym].name << ':';
    for (std::size_t i = 0; i < tuples.size(); ++i) {
      out << (i ? "; " : " ");
      for (std::size_t j = 0; j < tuples[i].size(); ++j) out << (j ? " " : "") << tuples[i][j];
    }
    out << '\n';
  }
}

}  // namespace fraisse
