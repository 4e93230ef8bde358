#include "fraisse/structure.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <unordered_set>

namespace fraisse {

// ---------------------------------------------------------------------------
// Vocabulary

Vocabulary::Vocabulary(std::vector<Symbol> symbols, std::string name)
    : symbols_(std::move(symbols)), name_(std::move(name)) {
  std::unordered_set<std::string> seen;
  for (const auto& sym : symbols_) {
    if (sym.name.empty()) throw VocabularyError("empty symbol name");
    if (sym.arity == 0) throw VocabularyError("symbol '" + sym.name + "' has arity 0");
    if (!seen.insert(sym.name).second)
      throw VocabularyError("duplicate symbol '" + sym.name + "'");
    rho_ = std::max(rho_, sym.arity);
  }
}

std::optional<std::size_t> Vocabulary::find(std::string_view symbol) const {
  for (std::size_t i = 0; i < symbols_.size(); ++i)
    if (symbols_[i].name == symbol) return i;
  return std::nullopt;
}

std::size_t Vocabulary::index_of(std::string_view symbol) const {
  if (auto i = find(symbol)) return *i;
  throw VocabularyError("unknown symbol '" + std::string(symbol) + "'");
}

// ---------------------------------------------------------------------------
// Relation

Relation::Relation(unsigned arity, std::size_t universe) : arity_(arity) {
  if (arity == 0) throw VocabularyError("relation of arity 0");
  grow(universe);
}

bool Relation::holds(std::span<const Element> t) const {
  switch (arity_) {
    case 1:
      return holds1(t[0]);
    case 2:
      return holds2(t[0], t[1]);
    default:
      return sparse_.count(Tuple(t.begin(), t.end())) != 0;
  }
}

void Relation::set(std::span<const Element> t, bool value) {
  switch (arity_) {
    case 1:
      dense_[t[0]] = value;
      break;
    case 2:
      dense_[t[0] * stride_ + t[1]] = value;
      break;
    default:
      if (value)
        sparse_.insert(Tuple(t.begin(), t.end()));
      else
        sparse_.erase(Tuple(t.begin(), t.end()));
  }
}

void Relation::grow(std::size_t universe) {
  if (universe <= stride_) {
    n_ = std::max(n_, universe);
    return;
  }
  std::size_t cap = std::max<std::size_t>({universe, 2 * stride_, 4});
  if (arity_ == 1) {
    dense_.resize(cap, 0);
  } else if (arity_ == 2) {
    std::vector<std::uint8_t> next(cap * cap, 0);
    for (std::size_t a = 0; a < n_; ++a)
      std::copy_n(dense_.begin() + static_cast<std::ptrdiff_t>(a * stride_), n_,
                  next.begin() + static_cast<std::ptrdiff_t>(a * cap));
    dense_ = std::move(next);
  }
  stride_ = cap;
  n_ = universe;
}

std::size_t Relation::count() const {
  if (arity_ == 1) return static_cast<std::size_t>(std::count(dense_.begin(), dense_.begin() + static_cast<std::ptrdiff_t>(n_), 1));
  if (arity_ == 2) {
    std::size_t c = 0;
    for (std::size_t a = 0; a < n_; ++a)
      for (std::size_t b = 0; b < n_; ++b) c += dense_[a * stride_ + b];
    return c;
  }
  return sparse_.size();
}

std::vector<Tuple> Relation::tuples() const {
  std::vector<Tuple> out;
  if (arity_ == 1) {
    for (Element a = 0; a < n_; ++a)
      if (holds1(a)) out.push_back({a});
  } else if (arity_ == 2) {
    for (Element a = 0; a < n_; ++a)
      for (Element b = 0; b < n_; ++b)
        if (holds2(a, b)) out.push_back({a, b});
  } else {
    out.assign(sparse_.begin(), sparse_.end());
  }
  return out;
}

bool operator==(const Relation& a, const Relation& b) {
  if (a.arity_ != b.arity_ || a.n_ != b.n_) return false;
  if (a.arity_ == 1) {
    for (Element x = 0; x < a.n_; ++x)
      if (a.holds1(x) != b.holds1(x)) return false;
    return true;
  }
  if (a.arity_ == 2) {
    for (Element x = 0; x < a.n_; ++x)
      for (Element y = 0; y < a.n_; ++y)
        if (a.holds2(x, y) != b.holds2(x, y)) return false;
    return true;
  }
  return a.sparse_ == b.sparse_;
}

// ---------------------------------------------------------------------------
// Structure

Structure::Structure(Vocabulary vocab, std::size_t size) : vocab_(std::move(vocab)), size_(size) {
  tables_.reserve(vocab_.size());
  for (const auto& sym : vocab_.symbols()) tables_.emplace_back(sym.arity, size_);
}

Structure::Structure(Vocabulary vocab, std::size_t size, std::vector<Relation> tables)
    : vocab_(std::move(vocab)), size_(size), tables_(std::move(tables)) {
  if (tables_.size() != vocab_.size()) throw VocabularyError("table count does not match vocabulary");
  for (std::size_t i = 0; i < tables_.size(); ++i) {
    if (tables_[i].arity() != vocab_[i].arity)
      throw VocabularyError("table arity mismatch for '" + vocab_[i].name + "'");
    tables_[i].grow(size_);
  }
}

const Relation& Structure::relation(std::string_view symbol) const {
  return tables_[vocab_.index_of(symbol)];
}

void Structure::check_tuple(std::size_t symbol, std::span<const Element> t) const {
  if (symbol >= tables_.size()) throw VocabularyError("symbol index out of range");
  if (t.size() != vocab_[symbol].arity)
    throw VocabularyError("tuple of length " + std::to_string(t.size()) + " for symbol '" +
                          vocab_[symbol].name + "' of arity " +
                          std::to_string(vocab_[symbol].arity));
  for (Element e : t)
    if (e >= size_)
      throw InvalidSubsetError("element " + std::to_string(e) + " outside universe of size " +
                               std::to_string(size_));
}

bool Structure::holds(std::size_t symbol, std::span<const Element> t) const {
  check_tuple(symbol, t);
  return tables_[symbol].holds(t);
}

void Structure::set(std::size_t symbol, std::span<const Element> t, bool value) {
  check_tuple(symbol, t);
  tables_[symbol].set(t, value);
}

void Structure::set_edge(std::size_t symbol, Element a, Element b, bool value) {
  set(symbol, {a, b}, value);
  set(symbol, {b, a}, value);
}

Element Structure::add_element() {
  ++size_;
  for (auto& t : tables_) t.grow(size_);
  return static_cast<Element>(size_ - 1);
}

bool operator==(const Structure& a, const Structure& b) {
  return a.vocab_ == b.vocab_ && a.size_ == b.size_ && a.tables_ == b.tables_;
}

// ---------------------------------------------------------------------------
// TypeId

std::string TypeId::str() const {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (std::size_t i = 0; i < code.size(); ++i) {
    if (i) out.push_back('.');
    std::uint32_t w = code[i];
    char buf[8];
    int len = 0;
    do {
      buf[len++] = kHex[w & 0xf];
      w >>= 4;
    } while (w);
    while (len) out.push_back(buf[--len]);
  }
  return out;
}

TypeId TypeId::parse(std::string_view text) {
  TypeId t;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t dot = text.find('.', pos);
    if (dot == std::string_view::npos) dot = text.size();
    std::string_view part = text.substr(pos, dot - pos);
    std::uint32_t w = 0;
    auto [p, ec] = std::from_chars(part.data(), part.data() + part.size(), w, 16);
    if (ec != std::errc() || p != part.data() + part.size() || part.empty())
      throw Error("malformed type key '" + std::string(text) + "'");
    t.code.push_back(w);
    pos = dot + 1;
  }
  return t;
}

std::size_t TypeIdHash::operator()(const TypeId& t) const noexcept {
  std::uint64_t h = 1469598103934665603ull;
  for (auto w : t.code) {
    h ^= w;
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

// ---------------------------------------------------------------------------
// Substructures, reducts, expansions

Induced induced_substructure(const Structure& s, std::span<const Element> subset) {
  std::vector<Element> keep(subset.begin(), subset.end());
  for (Element e : keep)
    if (e >= s.size())
      throw InvalidSubsetError("element " + std::to_string(e) + " outside universe of size " +
                               std::to_string(s.size()));
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());

  const std::size_t k = keep.size();
  Structure out(s.vocab(), k);
  constexpr Element kAbsent = std::numeric_limits<Element>::max();
  std::vector<Element> to_new;
  for (std::size_t sym = 0; sym < s.vocab().size(); ++sym) {
    const Relation& r = s.relation(sym);
    if (r.arity() == 1) {
      for (Element i = 0; i < k; ++i)
        if (r.holds1(keep[i])) out.set(sym, {i});
    } else if (r.arity() == 2) {
      for (Element i = 0; i < k; ++i)
        for (Element j = 0; j < k; ++j)
          if (r.holds2(keep[i], keep[j])) out.set(sym, {i, j});
    } else {
      if (to_new.empty()) {
        to_new.assign(s.size(), kAbsent);
        for (Element i = 0; i < k; ++i) to_new[keep[i]] = i;
      }
      for (const auto& t : r.tuples()) {
        Tuple mapped;
        mapped.reserve(t.size());
        for (Element e : t) {
          if (to_new[e] == kAbsent) break;
          mapped.push_back(to_new[e]);
        }
        if (mapped.size() == t.size()) out.set(sym, mapped);
      }
    }
  }
  return {std::move(out), std::move(keep)};
}

Structure reduct_to(const Structure& s, std::span<const std::string> keep) {
  std::vector<bool> kept(s.vocab().size(), false);
  for (const auto& name : keep) kept[s.vocab().index_of(name)] = true;
  std::vector<Symbol> syms;
  std::vector<Relation> tables;
  for (std::size_t i = 0; i < kept.size(); ++i) {
    if (!kept[i]) continue;
    syms.push_back(s.vocab()[i]);
    tables.push_back(s.relation(i));
  }
  return Structure(Vocabulary(std::move(syms), s.vocab().name()), s.size(), std::move(tables));
}

Structure expand_with_relations(const Structure& s, std::span<const NewRelation> relations) {
  std::vector<Symbol> syms = s.vocab().symbols();
  std::vector<Relation> tables;
  for (std::size_t i = 0; i < s.vocab().size(); ++i) tables.push_back(s.relation(i));
  for (const auto& rel : relations) {
    if (s.vocab().find(rel.name))
      throw VocabularyError("symbol '" + rel.name + "' already in vocabulary");
    syms.push_back({rel.name, rel.arity});
    tables.emplace_back(rel.arity, s.size());
  }
  // Vocabulary constructor rejects clashes among the new names.
  Vocabulary vocab(std::move(syms), s.vocab().name());
  Structure out(std::move(vocab), s.size(), std::move(tables));
  std::size_t sym = s.vocab().size();
  for (const auto& rel : relations) {
    for (const auto& t : rel.tuples) out.set(sym, t);
    ++sym;
  }
  return out;
}

Structure expand_with_marks(const Structure& s,
                            std::span<const std::pair<std::string, std::vector<Element>>> marks) {
  std::vector<NewRelation> rels;
  for (const auto& [name, elems] : marks) {
    NewRelation r{name, 1, {}};
    for (Element e : elems) r.tuples.push_back({e});
    rels.push_back(std::move(r));
  }
  return expand_with_relations(s, rels);
}

// ---------------------------------------------------------------------------
// Tuple types

namespace {

class BitSink {
 public:
  explicit BitSink(std::vector<std::uint32_t>& out) : out_(out) {}
  void push(bool bit) {
    if (fill_ == 32) flush();
    if (bit) word_ |= (1u << fill_);
    ++fill_;
  }
  void finish() {
    if (fill_) flush();
  }

 private:
  void flush() {
    out_.push_back(word_);
    word_ = 0;
    fill_ = 0;
  }
  std::vector<std::uint32_t>& out_;
  std::uint32_t word_ = 0;
  unsigned fill_ = 0;
};

}  // namespace

void tuple_type_into(const Structure& s, std::span<const Element> tup,
                     std::vector<std::uint32_t>& out) {
  out.clear();
  out.push_back(static_cast<std::uint32_t>(tup.size()));
  // Distinct entries in order of first occurrence; small, so linear search.
  Element distinct_buf[16];
  std::vector<Element> distinct_heap;
  Element* distinct = distinct_buf;
  std::size_t c = 0;
  if (tup.size() > 16) {
    distinct_heap.resize(tup.size());
    distinct = distinct_heap.data();
  }
  for (Element e : tup) {
    std::size_t idx = 0;
    while (idx < c && distinct[idx] != e) ++idx;
    if (idx == c) distinct[c++] = e;
    out.push_back(static_cast<std::uint32_t>(idx));
  }

  BitSink bits(out);
  Tuple scratch;
  for (std::size_t sym = 0; sym < s.vocab().size(); ++sym) {
    const Relation& r = s.relation(sym);
    const unsigned arity = r.arity();
    if (arity == 1) {
      for (std::size_t i = 0; i < c; ++i) bits.push(r.holds1(distinct[i]));
    } else if (arity == 2) {
      for (std::size_t i = 0; i < c; ++i)
        for (std::size_t j = 0; j < c; ++j) bits.push(r.holds2(distinct[i], distinct[j]));
    } else {
      if (c == 0) continue;
      std::vector<std::size_t> idx(arity, 0);
      scratch.assign(arity, 0);
      while (true) {
        for (unsigned p = 0; p < arity; ++p) scratch[p] = distinct[idx[p]];
        bits.push(r.holds(scratch));
        unsigned p = arity;
        while (p > 0) {
          --p;
          if (++idx[p] < c) break;
          idx[p] = 0;
          if (p == 0) goto done;
        }
      }
    done:;
    }
  }
  bits.finish();
}

TypeId tuple_type(const Structure& s, std::span<const Element> tup) {
  for (Element e : tup)
    if (e >= s.size())
      throw InvalidSubsetError("tuple entry " + std::to_string(e) + " outside universe of size " +
                               std::to_string(s.size()));
  TypeId t;
  tuple_type_into(s, tup, t.code);
  return t;
}

// ---------------------------------------------------------------------------
// Embeddings

namespace {

void require_same_vocab(const Structure& a, const Structure& b) {
  if (!(a.vocab() == b.vocab())) throw VocabularyError("structures over different vocabularies");
}

// Calls f on every tuple of length `arity` over {0..top} that contains `top`.
template <class F>
bool for_tuples_containing(unsigned arity, Element top, F&& f) {
  std::vector<Element> t(arity, 0);
  while (true) {
    if (std::find(t.begin(), t.end(), top) != t.end())
      if (!f(std::span<const Element>(t))) return false;
    unsigned p = arity;
    while (true) {
      if (p == 0) return true;
      --p;
      if (++t[p] <= top) break;
      t[p] = 0;
    }
  }
}

// Checks every fact among positions 0..i of the partial map (only tuples
// that involve position i; earlier ones were checked before).
bool consistent_at(const Structure& a, const Structure& b, const std::vector<Element>& map,
                   Element i) {
  for (std::size_t sym = 0; sym < a.vocab().size(); ++sym) {
    const Relation& ra = a.relation(sym);
    const Relation& rb = b.relation(sym);
    if (ra.arity() == 1) {
      if (ra.holds1(i) != rb.holds1(map[i])) return false;
    } else if (ra.arity() == 2) {
      if (ra.holds2(i, i) != rb.holds2(map[i], map[i])) return false;
      for (Element j = 0; j < i; ++j) {
        if (ra.holds2(i, j) != rb.holds2(map[i], map[j])) return false;
        if (ra.holds2(j, i) != rb.holds2(map[j], map[i])) return false;
      }
    } else {
      Tuple mapped(ra.arity());
      bool ok = for_tuples_containing(ra.arity(), i, [&](std::span<const Element> t) {
        for (std::size_t p = 0; p < t.size(); ++p) mapped[p] = map[t[p]];
        return ra.holds(t) == rb.holds(mapped);
      });
      if (!ok) return false;
    }
  }
  return true;
}

}  // namespace

bool is_embedding(const Structure& a, const Structure& b, std::span<const Element> map) {
  if (!(a.vocab() == b.vocab())) return false;
  if (map.size() != a.size()) return false;
  std::vector<bool> used(b.size(), false);
  for (Element e : map) {
    if (e >= b.size() || used[e]) return false;
    used[e] = true;
  }
  std::vector<Element> m(map.begin(), map.end());
  for (Element i = 0; i < a.size(); ++i)
    if (!consistent_at(a, b, m, i)) return false;
  return true;
}

std::vector<Embedding> find_embeddings(const Structure& a, const Structure& b,
                                       std::size_t limit) {
  require_same_vocab(a, b);
  std::vector<Embedding> out;
  if (limit == 0) return out;
  if (a.size() > b.size()) return out;

  std::vector<TypeId> type_a(a.size()), type_b(b.size());
  for (Element v = 0; v < a.size(); ++v) type_a[v] = tuple_type(a, {v});
  for (Element w = 0; w < b.size(); ++w) type_b[w] = tuple_type(b, {w});

  std::vector<Element> map(a.size());
  std::vector<bool> used(b.size(), false);
  std::function<bool(Element)> extend = [&](Element i) -> bool {
    if (i == a.size()) {
      out.push_back({map});
      return out.size() < limit;
    }
    for (Element w = 0; w < b.size(); ++w) {
      if (used[w] || type_a[i] != type_b[w]) continue;
      map[i] = w;
      if (!consistent_at(a, b, map, i)) continue;
      used[w] = true;
      bool more = extend(i + 1);
      used[w] = false;
      if (!more) return false;
    }
    return true;
  };
  extend(0);
  return out;
}

// ---------------------------------------------------------------------------
// Refinement shared by isomorphism testing and canonical keys

namespace {

/// Pair-type ranks: rank[v * n + w] is the rank of tuple_type(s, (v, w)),
/// the diagonal holds 1-types. Ranks come from a shared dictionary so they
/// are comparable across structures.
struct PairTable {
  std::size_t n = 0;
  std::vector<std::uint32_t> rank;
  std::uint32_t at(Element v, Element w) const { return rank[v * n + w]; }
};

std::vector<PairTable> pair_tables(std::span<const Structure* const> structs) {
  std::map<TypeId, std::uint32_t> dict;
  std::vector<std::vector<TypeId>> raw(structs.size());
  for (std::size_t k = 0; k < structs.size(); ++k) {
    const Structure& s = *structs[k];
    const std::size_t n = s.size();
    raw[k].resize(n * n);
    for (Element v = 0; v < n; ++v)
      for (Element w = 0; w < n; ++w) {
        TypeId t = v == w ? tuple_type(s, {v}) : tuple_type(s, {v, w});
        dict.emplace(t, 0);
        raw[k][v * n + w] = std::move(t);
      }
  }
  // Ranks follow key order, so they are isomorphism-invariant.
  std::uint32_t r = 0;
  for (auto& [key, rank] : dict) rank = r++;
  std::vector<PairTable> out(structs.size());
  for (std::size_t k = 0; k < structs.size(); ++k) {
    out[k].n = structs[k]->size();
    out[k].rank.resize(raw[k].size());
    for (std::size_t i = 0; i < raw[k].size(); ++i) out[k].rank[i] = dict[raw[k][i]];
  }
  return out;
}

using Colors = std::vector<std::uint32_t>;

/// Iterated colour refinement run jointly over several structures so the
/// resulting colours are comparable. Colours are ranks of sorted signatures.
void refine(std::span<const PairTable> tables, std::vector<Colors>& colors) {
  std::size_t classes = 0;
  {
    std::set<std::uint32_t> distinct;
    for (const auto& c : colors) distinct.insert(c.begin(), c.end());
    classes = distinct.size();
  }
  while (true) {
    std::vector<std::vector<std::vector<std::uint64_t>>> sigs(tables.size());
    std::map<std::vector<std::uint64_t>, std::uint32_t> dict;
    for (std::size_t k = 0; k < tables.size(); ++k) {
      const auto& pt = tables[k];
      sigs[k].resize(pt.n);
      for (Element v = 0; v < pt.n; ++v) {
        auto& sig = sigs[k][v];
        sig.reserve(pt.n + 1);
        for (Element w = 0; w < pt.n; ++w)
          if (w != v)
            sig.push_back((static_cast<std::uint64_t>(colors[k][w]) << 32) | pt.at(v, w));
        std::sort(sig.begin(), sig.end());
        sig.insert(sig.begin(), (static_cast<std::uint64_t>(colors[k][v]) << 32) | pt.at(v, v));
        dict.emplace(sig, 0);
      }
    }
    std::uint32_t r = 0;
    for (auto& [sig, rank] : dict) rank = r++;
    for (std::size_t k = 0; k < tables.size(); ++k)
      for (Element v = 0; v < tables[k].n; ++v) colors[k][v] = dict[sigs[k][v]];
    if (dict.size() == classes) return;
    classes = dict.size();
  }
}

}  // namespace

std::optional<Embedding> is_isomorphic(const Structure& a, const Structure& b) {
  require_same_vocab(a, b);
  if (a.size() != b.size()) return std::nullopt;
  for (std::size_t sym = 0; sym < a.vocab().size(); ++sym)
    if (a.relation(sym).count() != b.relation(sym).count()) return std::nullopt;
  const std::size_t n = a.size();
  if (n == 0) return Embedding{};

  const Structure* both[] = {&a, &b};
  auto tables = pair_tables(both);
  std::vector<Colors> colors(2);
  for (std::size_t k = 0; k < 2; ++k) {
    colors[k].resize(n);
    for (Element v = 0; v < n; ++v) colors[k][v] = tables[k].at(v, v);
  }
  refine(tables, colors);

  auto hist_a = colors[0], hist_b = colors[1];
  std::sort(hist_a.begin(), hist_a.end());
  std::sort(hist_b.begin(), hist_b.end());
  if (hist_a != hist_b) return std::nullopt;

  // Assign source vertices from the rarest colour class first.
  std::map<std::uint32_t, std::size_t> cell_size;
  for (auto c : colors[0]) ++cell_size[c];
  std::vector<Element> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Element x, Element y) {
    return cell_size[colors[0][x]] < cell_size[colors[0][y]];
  });

  const bool needs_full_check = a.vocab().rho() > 2;
  std::vector<Element> map(n, 0);
  std::vector<bool> used(n, false);
  std::function<bool(std::size_t)> assign = [&](std::size_t depth) -> bool {
    if (depth == n) return !needs_full_check || is_embedding(a, b, map);
    const Element v = order[depth];
    for (Element w = 0; w < n; ++w) {
      if (used[w] || colors[1][w] != colors[0][v]) continue;
      bool ok = true;
      for (std::size_t d = 0; d < depth && ok; ++d) {
        const Element u = order[d];
        ok = tables[0].at(v, u) == tables[1].at(w, map[u]) &&
             tables[0].at(u, v) == tables[1].at(map[u], w);
      }
      if (!ok) continue;
      map[v] = w;
      used[w] = true;
      if (assign(depth + 1)) return true;
      used[w] = false;
    }
    return false;
  };
  if (!assign(0)) return std::nullopt;
  return Embedding{map};
}

TypeId canonical_key(const Structure& s) {
  const std::size_t n = s.size();
  if (n == 0) return tuple_type(s, std::span<const Element>{});
  const Structure* one[] = {&s};
  auto tables = pair_tables(one);
  std::vector<Colors> start(1, Colors(n));
  for (Element v = 0; v < n; ++v) start[0][v] = tables[0].at(v, v);

  std::optional<TypeId> best;
  std::vector<std::uint32_t> scratch;
  std::function<void(std::vector<Colors>)> search = [&](std::vector<Colors> colors) {
    refine(tables, colors);
    const Colors& c = colors[0];
    std::map<std::uint32_t, std::vector<Element>> cells;
    for (Element v = 0; v < n; ++v) cells[c[v]].push_back(v);
    if (cells.size() == n) {
      std::vector<Element> ordering(n);
      for (Element v = 0; v < n; ++v) ordering[c[v]] = v;
      tuple_type_into(s, ordering, scratch);
      if (!best || scratch < best->code) best = TypeId{scratch};
      return;
    }
    // Refinement output colours are 0..k-1, so the first non-singleton cell
    // in colour order is an invariant choice.
    for (const auto& [color, cell] : cells) {
      if (cell.size() < 2) continue;
      for (Element pick : cell) {
        std::vector<Colors> next(1, Colors(n));
        for (Element v = 0; v < n; ++v) next[0][v] = 2 * c[v] + (c[v] == color && v != pick ? 1 : 0);
        search(std::move(next));
      }
      return;
    }
  };
  search(std::move(start));
  return *best;
}

std::vector<Embedding> automorphisms(const Structure& s) {
  return find_embeddings(s, s, std::numeric_limits<std::size_t>::max());
}

}  // namespace fraisse
