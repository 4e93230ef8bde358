#include "fraisse/amalgamation.hpp"
#include "fraisse/subsets.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <set>

namespace fraisse {

P2Spec::P2Spec(Vocabulary v, std::vector<Structure> ms) : vocab(std::move(v)), members(std::move(ms)) {
  for (const auto& m : members) {
    if (!(m.vocab() == vocab)) throw VocabularyError("P2 member over a different vocabulary");
    if (m.size() > 2) throw InputError("P2 member of size " + std::to_string(m.size()) + " (at most 2 allowed)");
  }
}

// ---------------------------------------------------------------------------
// Patterns

PointPattern point_pattern(const Structure& s, Element x) {
  PointPattern p = 0;
  for (std::size_t k = 0; k < s.vocab().size(); ++k) {
    const Relation& r = s.relation(k);
    bool bit = r.arity() == 1 ? r.holds1(x) : r.holds2(x, x);
    if (bit) p |= PointPattern{1} << k;
  }
  return p;
}

LinkPattern link_pattern(const Structure& s, Element x, Element y) {
  LinkPattern l = 0;
  for (std::size_t k = 0; k < s.vocab().size(); ++k) {
    const Relation& r = s.relation(k);
    if (r.arity() != 2) continue;
    if (r.holds2(x, y)) l |= LinkPattern{1} << (2 * k);
    if (r.holds2(y, x)) l |= LinkPattern{1} << (2 * k + 1);
  }
  return l;
}

void apply_point_pattern(Structure& s, Element x, PointPattern p) {
  for (std::size_t k = 0; k < s.vocab().size(); ++k) {
    const bool bit = (p >> k) & 1u;
    if (s.vocab()[k].arity == 1)
      s.set(k, {x}, bit);
    else
      s.set(k, {x, x}, bit);
  }
}

void apply_link_pattern(Structure& s, Element x, Element y, LinkPattern l) {
  for (std::size_t k = 0; k < s.vocab().size(); ++k) {
    if (s.vocab()[k].arity != 2) continue;
    s.set(k, {x, y}, (l >> (2 * k)) & 1u);
    s.set(k, {y, x}, (l >> (2 * k + 1)) & 1u);
  }
}

LinkPattern reverse_link(LinkPattern l) {
  constexpr LinkPattern kEven = 0x5555555555555555ull;
  return ((l & kEven) << 1) | ((l >> 1) & kEven);
}

PatternTable::PatternTable(const P2Spec& p2) : vocab_(p2.vocab) {
  if (!vocab_.binary()) throw VocabularyError("P2 sets need a binary vocabulary");
  if (vocab_.size() > 32) throw VocabularyError("at most 32 symbols supported in P2 sets");
  std::set<PointPattern> pts;
  std::map<std::pair<PointPattern, PointPattern>, std::set<LinkPattern>> links;
  for (const auto& m : p2.members) {
    if (m.size() == 1) pts.insert(point_pattern(m, 0));
    if (m.size() == 2) {
      const PointPattern p0 = point_pattern(m, 0), p1 = point_pattern(m, 1);
      const LinkPattern l = link_pattern(m, 0, 1);
      links[{p0, p1}].insert(l);
      links[{p1, p0}].insert(reverse_link(l));
    }
  }
  points_.assign(pts.begin(), pts.end());
  for (auto& [key, set] : links) links_[key].assign(set.begin(), set.end());
}

bool PatternTable::point_permitted(PointPattern p) const {
  return std::binary_search(points_.begin(), points_.end(), p);
}

const std::vector<LinkPattern>& PatternTable::links(PointPattern from, PointPattern to) const {
  auto it = links_.find({from, to});
  return it == links_.end() ? none_ : it->second;
}

bool PatternTable::link_permitted(PointPattern from, PointPattern to, LinkPattern l) const {
  const auto& ls = links(from, to);
  return std::binary_search(ls.begin(), ls.end(), l);
}

std::vector<LinkPattern> PatternTable::all_links() const {
  LinkPattern mask = 0;
  for (std::size_t k = 0; k < vocab_.size(); ++k)
    if (vocab_[k].arity == 2) mask |= LinkPattern{3} << (2 * k);
  // Enumerate submasks of `mask` in increasing order.
  std::vector<LinkPattern> out;
  LinkPattern sub = 0;
  do {
    out.push_back(sub);
    sub = (sub - mask) & mask;
  } while (sub != 0);
  return out;
}

bool PatternTable::admits(const Structure& s) const {
  const std::size_t n = s.size();
  std::vector<PointPattern> pts(n);
  for (Element x = 0; x < n; ++x) {
    pts[x] = point_pattern(s, x);
    if (!point_permitted(pts[x])) return false;
  }
  for (Element x = 0; x < n; ++x)
    for (Element y = x + 1; y < n; ++y)
      if (!link_permitted(pts[x], pts[y], link_pattern(s, x, y))) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Adequacy and RP2 membership

AdequacyReport check_1_adequate(const P2Spec& p2) {
  AdequacyReport rep;
  if (!p2.vocab.binary()) {
    rep.reason = "vocabulary is not binary";
    return rep;
  }
  std::set<TypeId> keys;
  for (const auto& m : p2.members) keys.insert(canonical_key(m));

  for (std::size_t i = 0; i < p2.members.size(); ++i) {
    const Structure& m = p2.members[i];
    std::vector<std::vector<Element>> subsets = {{}};
    if (m.size() == 2) subsets.push_back({0}), subsets.push_back({1});
    for (const auto& sub : subsets) {
      if (!keys.count(canonical_key(induced_substructure(m, sub).structure))) {
        rep.reason = "not hereditary: member " + std::to_string(i) + " has a " +
                     std::to_string(sub.size()) + "-substructure outside P2";
        return rep;
      }
    }
  }
  if (!keys.count(canonical_key(Structure(p2.vocab, 0)))) {
    rep.reason = "not hereditary: the empty structure is missing";
    return rep;
  }
  if (std::none_of(p2.members.begin(), p2.members.end(), [](const Structure& m) { return m.size() == 2; })) {
    rep.reason = "P2 contains no 2-structure";
    return rep;
  }

  const PatternTable table(p2);
  const auto& pts = table.points();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i; j < pts.size(); ++j) {
      std::optional<std::size_t> witness;
      for (std::size_t k = 0; k < p2.members.size() && !witness; ++k) {
        const Structure& m = p2.members[k];
        if (m.size() != 2) continue;
        const PointPattern a = point_pattern(m, 0), b = point_pattern(m, 1);
        if ((a == pts[i] && b == pts[j]) || (a == pts[j] && b == pts[i])) witness = k;
      }
      if (!witness) {
        rep.failing_pair = {pts[i], pts[j]};
        rep.reason = "no 2-structure embeds the 1-structures with patterns " +
                     std::to_string(pts[i]) + " and " + std::to_string(pts[j]);
        return rep;
      }
      rep.witnesses.push_back({pts[i], pts[j], *witness});
    }
  }
  rep.holds = true;
  return rep;
}

bool in_rp2(const P2Spec& p2, const Structure& s) {
  if (!(s.vocab() == p2.vocab)) throw VocabularyError("structure and P2 set use different vocabularies");
  return PatternTable(p2).admits(s);
}

std::vector<Structure> enumerate_rp2(const P2Spec& p2, std::size_t n) {
  const PatternTable table(p2);
  std::map<TypeId, Structure> found;
  Structure s(p2.vocab, n);
  std::vector<PointPattern> pts(n);

  // Pairs (x, y), x < y, in a fixed order for the link stage.
  std::vector<std::pair<Element, Element>> pairs;
  for (Element y = 0; y < n; ++y)
    for (Element x = 0; x < y; ++x) pairs.emplace_back(x, y);

  std::function<void(std::size_t)> choose_links = [&](std::size_t idx) {
    if (idx == pairs.size()) {
      TypeId key = canonical_key(s);
      found.try_emplace(std::move(key), s);
      return;
    }
    auto [x, y] = pairs[idx];
    for (LinkPattern l : table.links(pts[x], pts[y])) {
      apply_link_pattern(s, x, y, l);
      choose_links(idx + 1);
    }
  };
  std::function<void(Element)> choose_points = [&](Element x) {
    if (x == n) {
      choose_links(0);
      return;
    }
    for (PointPattern p : table.points()) {
      // Patterns are assigned in non-decreasing order; any labelled member is
      // isomorphic to one with sorted point patterns.
      if (x > 0 && p < pts[x - 1]) continue;
      pts[x] = p;
      apply_point_pattern(s, x, p);
      choose_points(x + 1);
    }
  };
  choose_points(0);

  std::vector<Structure> out;
  for (auto& [key, st] : found) out.push_back(std::move(st));
  return out;
}

// ---------------------------------------------------------------------------
// Ages


std::vector<Structure> age(const Structure& s, std::size_t k) {
  std::vector<Structure> out;
  for (std::size_t size = 0; size <= std::min(k, s.size()); ++size) {
    std::map<TypeId, Structure> layer;
    for_each_subset_of_size(s.size(), size, [&](std::span<const Element> sub) {
      Structure sub_s = induced_substructure(s, sub).structure;
      TypeId key = canonical_key(sub_s);
      layer.try_emplace(std::move(key), std::move(sub_s));
    });
    for (auto& [key, st] : layer) out.push_back(std::move(st));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Class views

namespace {

class ClassView {
 public:
  ClassView(const ClassSpec& spec, std::size_t bound) {
    if (const auto* list = std::get_if<ExplicitList>(&spec)) {
      size_bound_ = list->size_bound;
      std::map<TypeId, Structure> uniq;
      for (const auto& st : list->structures) {
        if (st.size() > size_bound_) continue;
        if (!vocab_) vocab_ = st.vocab();
        TypeId key = canonical_key(st);
        keys_.insert(key);
        uniq.try_emplace(std::move(key), st);
      }
      for (auto& [key, st] : uniq)
        if (st.size() <= bound) members_.push_back(st);
      std::stable_sort(members_.begin(), members_.end(),
                       [](const Structure& a, const Structure& b) { return a.size() < b.size(); });
    } else {
      const auto& cls = std::get<P2Class>(spec);
      size_bound_ = cls.size_bound;
      vocab_ = cls.p2.vocab;
      table_.emplace(cls.p2);
      for (std::size_t n = 0; n <= std::min(bound, size_bound_); ++n)
        for (auto& st : enumerate_rp2(cls.p2, n)) members_.push_back(std::move(st));
    }
  }

  const std::vector<Structure>& members() const { return members_; }
  std::size_t size_bound() const { return size_bound_; }
  const std::optional<PatternTable>& table() const { return table_; }

  bool contains(const Structure& s) const {
    if (table_) return table_->admits(s);
    if (s.size() > size_bound_) return false;
    if (vocab_ && !(s.vocab() == *vocab_)) return false;
    return keys_.count(canonical_key(s)) != 0;
  }

 private:
  std::vector<Structure> members_;
  std::set<TypeId> keys_;
  std::optional<Vocabulary> vocab_;
  std::optional<PatternTable> table_;
  std::size_t size_bound_ = 0;
};

}  // namespace

HPReport check_hp(const ClassSpec& spec, std::size_t bound) {
  ClassView view(spec, bound);
  HPReport rep;
  rep.bound = std::min(bound, view.size_bound());
  for (const auto& b : view.members()) {
    ++rep.members_checked;
    // Larger substructures first, so the reported violation is the
    // closest missing piece.
    for (std::size_t k = b.size(); k-- > 0;) {
      bool violated = false;
      for_each_subset_of_size(b.size(), k, [&](std::span<const Element> sub) {
        if (violated) return;
        Structure a = induced_substructure(b, sub).structure;
        if (!view.contains(a)) {
          rep.holds = false;
          rep.violation = {std::move(a), b};
          violated = true;
        }
      });
      if (violated) return rep;
    }
  }
  return rep;
}

const char* to_string(APVerdict v) {
  switch (v) {
    case APVerdict::Holds:
      return "holds";
    case APVerdict::Fails:
      return "fails";
    case APVerdict::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

namespace {

constexpr std::size_t kMaxCompletions = std::size_t{1} << 22;

enum class Amalgam { Found, None, Capped };

/// Searches amalgams of one base triple. B is embedded into D as the
/// identity; C's elements outside f_C(A) are identified with unused
/// elements of B or appended as new elements.
Amalgam search_amalgam(const ClassView& view, const Structure& a, const Structure& b,
                       const Structure& c, const Embedding& fb, const Embedding& fc,
                       std::size_t amalgam_bound) {
  constexpr Element kUnset = std::numeric_limits<Element>::max();
  const std::size_t nb = b.size(), nc = c.size();
  std::vector<Element> gc(nc, kUnset);
  std::vector<bool> b_in_base(nb, false);
  for (Element i = 0; i < a.size(); ++i) {
    gc[fc.map[i]] = fb.map[i];
    b_in_base[fb.map[i]] = true;
  }
  std::vector<Element> c_rest;
  for (Element x = 0; x < nc; ++x)
    if (gc[x] == kUnset) c_rest.push_back(x);
  std::vector<Element> b_rest;
  for (Element y = 0; y < nb; ++y)
    if (!b_in_base[y]) b_rest.push_back(y);

  // All partial injections c_rest -> b_rest; kUnset marks "new element".
  std::vector<std::vector<Element>> idents;
  {
    std::vector<Element> cur(c_rest.size(), kUnset);
    std::vector<bool> used(nb, false);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (i == c_rest.size()) {
        idents.push_back(cur);
        return;
      }
      cur[i] = kUnset;
      rec(i + 1);
      for (Element y : b_rest) {
        if (used[y]) continue;
        used[y] = true;
        cur[i] = y;
        rec(i + 1);
        used[y] = false;
      }
      cur[i] = kUnset;
    };
    rec(0);
    auto merged = [&](const std::vector<Element>& v) {
      return std::count_if(v.begin(), v.end(), [&](Element e) { return e != kUnset; });
    };
    std::stable_sort(idents.begin(), idents.end(),
                     [&](const auto& x, const auto& y) { return merged(x) < merged(y); });
  }

  const Vocabulary& vocab = b.vocab();
  const bool binary = vocab.binary();
  bool capped = false;

  for (const auto& ident : idents) {
    std::vector<Element> g = gc;
    std::size_t dsize = nb;
    for (std::size_t i = 0; i < c_rest.size(); ++i)
      g[c_rest[i]] = ident[i] == kUnset ? static_cast<Element>(dsize++) : ident[i];
    if (dsize > amalgam_bound) continue;

    // Facts of C that land entirely inside B must agree with B.
    bool conflict = false;
    for (std::size_t sym = 0; sym < vocab.size() && !conflict; ++sym) {
      const Relation& rc = c.relation(sym);
      const Relation& rb = b.relation(sym);
      std::vector<Element> mapped(rc.arity());
      for_each_tuple(nc, rc.arity(), [&](std::span<const Element> t) {
        bool inside = true;
        for (std::size_t p = 0; p < t.size(); ++p) {
          mapped[p] = g[t[p]];
          inside = inside && mapped[p] < nb;
        }
        if (inside && rc.holds(t) != rb.holds(mapped)) conflict = true;
        return !conflict;
      });
    }
    if (conflict) continue;

    Structure d(vocab, dsize);
    for (std::size_t sym = 0; sym < vocab.size(); ++sym) {
      for (const auto& t : b.relation(sym).tuples()) d.set(sym, t);
      for (const auto& t : c.relation(sym).tuples()) {
        Tuple m(t.size());
        for (std::size_t p = 0; p < t.size(); ++p) m[p] = g[t[p]];
        d.set(sym, m);
      }
    }

    // Elements of D outside g_C(C) come only from B; new elements only from C.
    std::vector<bool> in_c_image(dsize, false);
    for (Element x = 0; x < nc; ++x) in_c_image[g[x]] = true;
    std::vector<Element> only_b, only_c;
    for (Element y = 0; y < nb; ++y)
      if (!in_c_image[y]) only_b.push_back(y);
    for (Element y = static_cast<Element>(nb); y < dsize; ++y) only_c.push_back(y);

    // Undetermined facts: tuples mixing only_b and only_c elements.
    struct Slot {
      std::size_t sym;  // unused for binary link slots
      Tuple tuple;
      std::vector<LinkPattern> options;
    };
    std::vector<Slot> slots;
    if (binary) {
      const auto& table = view.table();
      std::vector<LinkPattern> every;
      if (!table) every = PatternTable(P2Spec(vocab, {})).all_links();
      for (Element x : only_b)
        for (Element y : only_c) {
          Slot s{0, {x, y}, {}};
          s.options = table ? table->links(point_pattern(d, x), point_pattern(d, y)) : every;
          slots.push_back(std::move(s));
        }
    } else {
      std::vector<bool> is_b(dsize, false), is_c(dsize, false);
      for (Element x : only_b) is_b[x] = true;
      for (Element y : only_c) is_c[y] = true;
      for (std::size_t sym = 0; sym < vocab.size(); ++sym) {
        for_each_tuple(dsize, vocab[sym].arity, [&](std::span<const Element> t) {
          bool hb = false, hc = false;
          for (Element e : t) hb |= is_b[e], hc |= is_c[e];
          if (hb && hc) slots.push_back({sym, Tuple(t.begin(), t.end()), {0, 1}});
          return true;
        });
      }
    }

    std::size_t total = 1;
    bool empty_choice = false;
    for (const auto& s : slots) {
      if (s.options.empty()) empty_choice = true;
      total = total > kMaxCompletions / std::max<std::size_t>(s.options.size(), 1) ? kMaxCompletions + 1
                                                                                   : total * s.options.size();
    }
    if (empty_choice) continue;
    if (total > kMaxCompletions) {
      capped = true;
      continue;
    }

    std::vector<std::size_t> choice(slots.size(), 0);
    auto apply = [&](std::size_t i) {
      const Slot& s = slots[i];
      if (binary)
        apply_link_pattern(d, s.tuple[0], s.tuple[1], s.options[choice[i]]);
      else
        d.set(s.sym, s.tuple, s.options[choice[i]] != 0);
    };
    for (std::size_t i = 0; i < slots.size(); ++i) apply(i);
    while (true) {
      if (view.contains(d)) return Amalgam::Found;
      std::size_t i = slots.size();
      bool done = true;
      while (i > 0) {
        --i;
        if (++choice[i] < slots[i].options.size()) {
          apply(i);
          done = false;
          break;
        }
        choice[i] = 0;
        apply(i);
      }
      if (done) break;
    }
  }
  return capped ? Amalgam::Capped : Amalgam::None;
}

}  // namespace

APReport check_ap(const ClassSpec& spec, std::size_t amalgam_bound) {
  const std::size_t bound = std::visit([](const auto& s) { return s.size_bound; }, spec);
  ClassView view(spec, bound);
  APReport rep;
  rep.amalgam_bound = amalgam_bound;
  rep.size_bound = view.size_bound();
  rep.note = "bounded search: members up to size " + std::to_string(rep.size_bound) +
             ", amalgams up to size " + std::to_string(amalgam_bound);

  std::vector<const Structure*> bases;
  for (const auto& m : view.members()) bases.push_back(&m);
  std::stable_sort(bases.begin(), bases.end(),
                   [](const Structure* x, const Structure* y) { return x->size() > y->size(); });

  bool inconclusive = false;
  const auto unlimited = std::numeric_limits<std::size_t>::max();
  for (const Structure* a : bases) {
    for (const auto& b : view.members()) {
      if (b.size() < a->size()) continue;
      auto fbs = find_embeddings(*a, b, unlimited);
      if (fbs.empty()) continue;
      for (const auto& c : view.members()) {
        if (c.size() < a->size()) continue;
        auto fcs = find_embeddings(*a, c, unlimited);
        for (const auto& fb : fbs) {
          for (const auto& fc : fcs) {
            ++rep.triples_checked;
            const Amalgam res = search_amalgam(view, *a, b, c, fb, fc, amalgam_bound);
            if (res == Amalgam::Found) continue;
            const bool free_reachable = amalgam_bound + a->size() >= b.size() + c.size();
            if (res == Amalgam::Capped || !free_reachable) {
              inconclusive = true;
              continue;
            }
            rep.verdict = APVerdict::Fails;
            rep.counterexample = APCounterexample{*a, b, c, fb, fc};
            return rep;
          }
        }
      }
    }
  }
  if (inconclusive) rep.verdict = APVerdict::Inconclusive;
  return rep;
}

}  // namespace fraisse
