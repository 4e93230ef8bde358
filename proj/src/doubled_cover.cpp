#include "fraisse/doubled_cover.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <random>

namespace fraisse {

namespace {

void require_graph(const Structure& f) {
  if (f.vocab().size() != 1 || f.vocab()[0].arity != 2)
    throw InputError("doubled cover needs a graph: exactly one binary symbol");
  for (Element a = 0; a < f.size(); ++a) {
    if (f.holds(0, {a, a})) throw InputError("doubled cover needs a loop-free graph");
    for (Element b = a + 1; b < f.size(); ++b)
      if (f.holds(0, {a, b}) != f.holds(0, {b, a})) throw InputError("doubled cover needs a symmetric graph");
  }
}

}  // namespace

DoubledStructure build_double(const Structure& f) {
  require_graph(f);
  DoubledStructure d;
  d.base = f;
  const std::size_t n = f.size();
  d.m = Structure(f.vocab(), 2 * n);
  d.partner.resize(2 * n);
  for (Element a = 0; a < n; ++a) {
    d.partner[2 * a] = 2 * a + 1;
    d.partner[2 * a + 1] = 2 * a;
    d.half0.push_back(2 * a);
    d.half1.push_back(2 * a + 1);
    d.m.set_edge(0, 2 * a, 2 * a + 1);
    for (Element b = a + 1; b < n; ++b) {
      if (f.holds(0, {a, b})) {
        d.m.set_edge(0, 2 * a, 2 * b);
        d.m.set_edge(0, 2 * a + 1, 2 * b + 1);
      } else {
        d.m.set_edge(0, 2 * a, 2 * b + 1);
        d.m.set_edge(0, 2 * a + 1, 2 * b);
      }
    }
  }
  d.base_core = n;
  return d;
}

DoubledStructure build_double(const GenericOracle& f) {
  DoubledStructure d = build_double(f.current());
  d.base_saturation = f.saturation_level();
  d.base_core = f.saturation_level() ? f.core_size() : f.size();
  return d;
}

PairViolation e_definability_check(const DoubledStructure& d) {
  PairViolation rep;
  const Structure& m = d.m;
  const std::size_t n = m.size();
  const std::size_t words = (n + 63) / 64;
  std::vector<std::vector<std::uint64_t>> nbr(n, std::vector<std::uint64_t>(words, 0));
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y)
      if (m.relation(0).holds2(x, y)) nbr[x][y / 64] |= std::uint64_t{1} << (y % 64);
  for (Element x = 0; x < n; ++x)
    for (Element y = x + 1; y < n; ++y) {
      bool common = false;
      for (std::size_t w = 0; w < words && !common; ++w) common = (nbr[x][w] & nbr[y][w]) != 0;
      if (!common != (d.partner[x] == y)) {
        rep.holds = false;
        rep.violation = std::make_pair(x, y);
        return rep;
      }
    }
  return rep;
}

PairViolation verify_claim1(const DoubledStructure& d) {
  PairViolation rep;
  const Relation& adj = d.m.relation(0);
  const auto& p = d.partner;
  for (Element u = 0; u < d.m.size(); ++u)
    for (Element v = 0; v < d.m.size(); ++v) {
      if (u == v) continue;
      const bool a = adj.holds2(u, v);
      if (adj.holds2(p[u], p[v]) != a || adj.holds2(u, p[v]) == a || adj.holds2(p[u], v) == a) {
        rep.holds = false;
        rep.violation = std::make_pair(u, v);
        return rep;
      }
    }
  return rep;
}

Claim2Report verify_claim2(const DoubledStructure& d, std::size_t n, std::size_t trials, std::uint64_t seed) {
  if (!d.base_saturation || *d.base_saturation < n + 1)
    throw SaturationError("partial-isomorphism extension check needs the base saturated to level " + std::to_string(n + 1));
  Claim2Report rep;
  rep.n = n;
  rep.trials = trials;
  const std::size_t core = d.base_core;
  const std::size_t fsize = d.base.size();
  std::mt19937_64 rng(seed);

  // (w_1..w_k, w'_1..w'_k) for base points a_i, using (a,0) = 2a.
  auto closed = [&](const std::vector<Element>& base_points) {
    Tuple t;
    for (Element a : base_points) t.push_back(2 * a);
    for (Element a : base_points) t.push_back(d.partner[2 * a]);
    return t;
  };
  auto sample = [&](std::vector<Element>& out, std::size_t k) {
    out.clear();
    while (out.size() < k) {
      const Element a = static_cast<Element>(rng() % core);
      if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(a);
    }
  };

  std::vector<Element> u, v;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    if (n + 1 > core) {
      ++rep.skipped;
      continue;
    }
    sample(u, n + 1);
    const Element next = u.back();
    u.pop_back();
    const TypeId tu = tuple_type(d.m, closed(u));
    bool matched = false;
    for (int attempt = 0; attempt < 1000 && !matched; ++attempt) {
      sample(v, n);
      matched = tuple_type(d.m, closed(v)) == tu;
    }
    if (!matched) {
      ++rep.skipped;
      continue;
    }
    u.push_back(next);
    const TypeId target = tuple_type(d.m, closed(u));
    bool found = false;
    v.push_back(0);
    for (Element b = 0; b < fsize && !found; ++b) {
      v.back() = b;
      found = tuple_type(d.m, closed(v)) == target;
    }
    v.pop_back();
    if (found) {
      ++rep.successes;
    } else if (!rep.failure) {
      Tuple tu_full, tv_full;
      for (Element a : u) tu_full.push_back(2 * a);
      for (Element a : v) tv_full.push_back(2 * a);
      rep.failure = std::make_pair(tu_full, tv_full);
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Quotient

QuotientGeometry::QuotientGeometry(Structure m, std::vector<Element> partner)
    : m_(std::move(m)), partner_(std::move(partner)) {
  if (partner_.size() != m_.size()) throw InputError("pairing must cover the universe");
  for (Element u = 0; u < partner_.size(); ++u)
    if (partner_[u] < partner_.size() && u < partner_[u]) reps_.push_back(u);
  index();
}

QuotientGeometry::QuotientGeometry(Structure m, std::vector<Element> partner, std::vector<Element> reps)
    : m_(std::move(m)), partner_(std::move(partner)), reps_(std::move(reps)) {
  if (partner_.size() != m_.size()) throw InputError("pairing must cover the universe");
  index();
}

void QuotientGeometry::index() {
  const std::size_t n = partner_.size();
  for (Element u = 0; u < n; ++u) {
    if (partner_[u] >= n || partner_[u] == u || partner_[partner_[u]] != u)
      throw InputError("pairing must be a fixed-point-free involution");
  }
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  class_of_.assign(n, kNone);
  for (std::size_t g = 0; g < reps_.size(); ++g) {
    const Element r = reps_[g];
    if (r >= n || class_of_[r] != kNone) throw InputError("each class needs exactly one representative");
    class_of_[r] = class_of_[partner_[r]] = g;
  }
  if (2 * reps_.size() != n) throw InputError("each class needs exactly one representative");
}

TypeId QuotientGeometry::pair_type(std::span<const Element> classes) const {
  std::vector<Element> distinct;
  std::vector<std::size_t> slot(classes.size());
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (classes[i] >= reps_.size()) throw InvalidSubsetError("class index out of range");
    auto it = std::find(distinct.begin(), distinct.end(), classes[i]);
    slot[i] = static_cast<std::size_t>(it - distinct.begin());
    if (it == distinct.end()) distinct.push_back(classes[i]);
  }
  if (distinct.size() > 20) throw InputError("pair_type supports at most 20 distinct classes");
  Tuple t(2 * classes.size());
  std::vector<std::uint32_t> code, best;
  for (std::uint32_t mask = 0; mask < (1u << distinct.size()); ++mask) {
    for (std::size_t i = 0; i < classes.size(); ++i) {
      const Element r = reps_[classes[i]];
      const Element first = (mask >> slot[i]) & 1u ? partner_[r] : r;
      t[2 * i] = first;
      t[2 * i + 1] = partner_[first];
    }
    tuple_type_into(m_, t, code);
    if (mask == 0 || code < best) best = code;
  }
  return TypeId{std::move(best)};
}

TupleTyper QuotientGeometry::typer() const {
  auto self = std::make_shared<const QuotientGeometry>(*this);
  return {size(), [self](std::span<const Element> t) { return self->pair_type(t); }};
}

TupleTyper QuotientGeometry::binary_typer() const {
  auto self = std::make_shared<const QuotientGeometry>(*this);
  auto cache = std::make_shared<std::map<std::pair<Element, Element>, std::vector<std::uint32_t>>>();
  auto piece = [self, cache](Element a, Element b) -> const std::vector<std::uint32_t>& {
    auto it = cache->find({a, b});
    if (it == cache->end()) {
      const Element pair[2] = {a, b};
      const std::size_t len = a == b ? 1 : 2;
      it = cache->emplace(std::make_pair(a, b), self->pair_type(std::span<const Element>(pair, len)).code).first;
    }
    return it->second;
  };
  return {size(), [piece](std::span<const Element> t) {
            std::vector<std::uint32_t> code;
            code.push_back(static_cast<std::uint32_t>(t.size()));
            for (std::size_t i = 0; i < t.size(); ++i)
              code.push_back(static_cast<std::uint32_t>(std::find(t.begin(), t.end(), t[i]) - t.begin()));
            for (std::size_t i = 0; i < t.size(); ++i)
              for (std::size_t j = 0; j < t.size(); ++j) {
                if (i != j && t[i] == t[j]) continue;
                const auto& p = piece(t[i], t[j]);
                code.push_back(static_cast<std::uint32_t>(p.size()));
                code.insert(code.end(), p.begin(), p.end());
              }
            return TypeId{std::move(code)};
          }};
}

QuotientGeometry quotient(const DoubledStructure& d) { return QuotientGeometry(d.m, d.partner); }

Claim3Report verify_claim3(const QuotientGeometry& q) {
  Claim3Report rep;
  if (q.size() < 2) return rep;
  const Structure& m = q.structure();
  const Relation& adj = m.relation(0);
  const Element u1 = q.rep(0), u2 = q.rep(1);
  const bool u_adjacent = adj.holds2(u1, u2);
  const TypeId reference = q.pair_type(std::vector<Element>{0, 1});
  const TypeId u_config = tuple_type(m, {u1, u2, q.partner(u1), q.partner(u2)});
  for (Element g1 = 0; g1 < q.size(); ++g1)
    for (Element g2 = 0; g2 < q.size(); ++g2) {
      if (g1 == g2) continue;
      ++rep.pairs_checked;
      const Element v1 = q.rep(g1), v2 = q.rep(g2);
      // Cases (1)/(2) map u_i to v_i; cases (3)/(4) send u_2 to v_2'.
      const Element w2 = adj.holds2(v1, v2) == u_adjacent ? v2 : q.partner(v2);
      const bool witnessed = tuple_type(m, {v1, w2, q.partner(v1), q.partner(w2)}) == u_config;
      if (!witnessed || q.pair_type(std::vector<Element>{g1, g2}) != reference) {
        rep.holds = false;
        rep.violation = std::make_pair(g1, g2);
        return rep;
      }
    }
  return rep;
}

SeparationWitness three_type_separation(const QuotientGeometry& q) {
  const Relation& adj = q.structure().relation(0);
  const std::size_t n = q.size();
  auto linked = [&](Element a, Element b) { return adj.holds2(q.rep(a), q.rep(b)); };
  SeparationWitness w;
  for (Element a = 0; a < n && w.g.empty(); ++a)
    for (Element b = 0; b < n && w.g.empty(); ++b)
      for (Element c = b + 1; c < n && w.g.empty(); ++c)
        if (a != b && a != c && linked(a, b) && linked(a, c) && !linked(b, c)) w.g = {a, b, c};
  if (w.g.empty()) throw NotFoundError("no induced path u1~u2, u1~u3, u2!~u3 among designated representatives");
  for (Element a = 0; a < n && w.h.empty(); ++a)
    for (Element b = a + 1; b < n && w.h.empty(); ++b)
      for (Element c = b + 1; c < n && w.h.empty(); ++c)
        if (linked(a, b) && linked(a, c) && linked(b, c)) w.h = {a, b, c};
  if (w.h.empty()) throw NotFoundError("no triangle among designated representatives");

  w.pairwise_equal = true;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      if (i != j)
        w.pairwise_equal = w.pairwise_equal && q.pair_type(std::vector<Element>{w.g[i], w.g[j]}) ==
                                                   q.pair_type(std::vector<Element>{w.h[i], w.h[j]});
  w.triple_distinct = q.pair_type(w.g) != q.pair_type(w.h);
  return w;
}

Structure build_expansion_star(const DoubledStructure& d) {
  const std::vector<std::pair<std::string, std::vector<Element>>> marks = {{"M0", d.half0}};
  return expand_with_marks(d.m, marks);
}

QuotientGeometry quotient_star(const DoubledStructure& d) {
  return QuotientGeometry(build_expansion_star(d), d.partner);
}

Structure pair_structure(const DoubledStructure& d) {
  NewRelation rel{"pair", 2, {}};
  for (Element u = 0; u < d.partner.size(); ++u) rel.tuples.push_back({u, d.partner[u]});
  return expand_with_relations(d.m, std::span<const NewRelation>(&rel, 1));
}

}  // namespace fraisse
