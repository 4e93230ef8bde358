#include "fraisse/generic.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_set>

#include "fraisse/subsets.hpp"

namespace fraisse {

std::string ExtensionStep::str() const {
  std::ostringstream out;
  out << (random ? "random " : "extend ") << element << " point " << std::hex << type.point;
  if (!type.base.empty()) {
    out << std::dec << " base";
    for (std::size_t i = 0; i < type.base.size(); ++i) out << (i ? "," : " ") << type.base[i];
    out << " links" << std::hex;
    for (std::size_t i = 0; i < type.links.size(); ++i) out << (i ? "," : " ") << type.links[i];
  }
  return out.str();
}

namespace {

const P2Spec& require_adequate(const P2Spec& p2) {
  auto rep = check_1_adequate(p2);
  if (!rep.holds) throw AdequacyError("P2 set is not 1-adequate: " + rep.reason);
  return p2;
}

}  // namespace

GenericOracle::GenericOracle(P2Spec p2, std::uint64_t seed)
    : p2_(require_adequate(p2)),
      table_(p2_),
      current_(p2_.vocab, 0),
      seed_(seed),
      rng_(seed) {}

GenericOracle new_generic(const P2Spec& p2, std::uint64_t seed) { return GenericOracle(p2, seed); }

Element GenericOracle::append(PointPattern p) {
  const Element e = current_.add_element();
  apply_point_pattern(current_, e, p);
  return e;
}

LinkPattern GenericOracle::random_link(PointPattern from, PointPattern to) {
  const auto& options = table_.links(from, to);
  return options[rng_() % options.size()];
}

Element GenericOracle::extend_one_point(const ExtensionType& tau) {
  if (tau.links.size() != tau.base.size()) throw ExtensionError("one link pattern per base element required");
  if (!table_.point_permitted(tau.point)) throw ExtensionError("point pattern not permitted");
  std::vector<int> slot(current_.size(), -1);
  for (std::size_t i = 0; i < tau.base.size(); ++i) {
    const Element b = tau.base[i];
    if (b >= current_.size()) throw ExtensionError("base element out of range");
    if (slot[b] >= 0) throw ExtensionError("repeated base element");
    slot[b] = static_cast<int>(i);
    if (!table_.link_permitted(point_of(b), tau.point, tau.links[i]))
      throw ExtensionError("link pattern to base element " + std::to_string(b) + " not permitted");
  }
  const std::size_t n = current_.size();
  std::vector<PointPattern> pts(n);
  for (Element y = 0; y < n; ++y) pts[y] = point_of(y);
  const Element e = append(tau.point);
  for (Element y = 0; y < n; ++y) {
    const LinkPattern l = slot[y] >= 0 ? tau.links[slot[y]] : random_link(pts[y], tau.point);
    apply_link_pattern(current_, y, e, l);
  }
  log_.push_back({e, tau, false});
  return e;
}

Element GenericOracle::add_random_point() {
  const auto& pts = table_.points();
  ExtensionType tau;
  tau.point = pts[rng_() % pts.size()];
  const Element e = extend_one_point(tau);
  log_.back().random = true;
  return e;
}

void GenericOracle::add_random_points(std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) add_random_point();
}

SaturationReport GenericOracle::saturate(std::size_t k, std::size_t new_point_budget) {
  SaturationReport rep;
  rep.level = k;
  const std::size_t scope = current_.size();
  rep.core_size = scope;

  const auto& points = table_.points();
  const std::uint64_t np = points.size();
  std::uint64_t radix = 1;
  for (PointPattern p : points)
    for (PointPattern q : points) radix = std::max<std::uint64_t>(radix, table_.links(p, q).size());
  {
    long double capacity = np;
    for (std::size_t i = 0; i < k; ++i) capacity *= radix;
    if (capacity > 9.0e18L) throw SaturationError("too many extension types to index at this level");
  }
  auto point_index = [&](PointPattern p) {
    return static_cast<std::uint64_t>(std::lower_bound(points.begin(), points.end(), p) - points.begin());
  };
  auto link_index = [&](PointPattern from, PointPattern to, LinkPattern l) {
    const auto& ls = table_.links(from, to);
    return static_cast<std::uint64_t>(std::lower_bound(ls.begin(), ls.end(), l) - ls.begin());
  };

  bool exhausted = false;
  std::unordered_set<std::uint64_t> seen;
  std::vector<std::uint32_t> range(k);
  std::vector<std::uint32_t> digit(k);
  for (std::size_t j = 0; j <= k && !exhausted; ++j) {
    for_each_subset_of_size(scope, j, [&](std::span<const Element> base) {
      if (exhausted) return;
      ++rep.subsets_checked;
      seen.clear();
      std::vector<PointPattern> base_pts(j);
      for (std::size_t i = 0; i < j; ++i) base_pts[i] = point_of(base[i]);
      for (Element x = 0; x < current_.size(); ++x) {
        if (std::find(base.begin(), base.end(), x) != base.end()) continue;
        const PointPattern px = point_of(x);
        std::uint64_t code = point_index(px);
        for (std::size_t i = 0; i < j; ++i)
          code = code * radix + link_index(base_pts[i], px, link_pattern(current_, base[i], x));
        seen.insert(code);
      }
      for (std::uint64_t pi = 0; pi < np; ++pi) {
        const PointPattern p = points[pi];
        bool empty = false;
        for (std::size_t i = 0; i < j; ++i) {
          range[i] = static_cast<std::uint32_t>(table_.links(base_pts[i], p).size());
          empty = empty || range[i] == 0;
          digit[i] = 0;
        }
        if (empty) continue;
        while (true) {
          std::uint64_t code = pi;
          for (std::size_t i = 0; i < j; ++i) code = code * radix + digit[i];
          if (!seen.count(code)) {
            if (rep.points_added >= new_point_budget) {
              exhausted = true;
              return;
            }
            ExtensionType tau;
            tau.base.assign(base.begin(), base.end());
            tau.point = p;
            for (std::size_t i = 0; i < j; ++i) tau.links.push_back(table_.links(base_pts[i], p)[digit[i]]);
            extend_one_point(tau);
            ++rep.points_added;
          }
          std::size_t i = j;
          while (i > 0 && ++digit[i - 1] == range[i - 1]) digit[--i] = 0;
          if (i == 0) break;
        }
      }
    });
  }

  rep.missing_after = unrealized_extensions(table_, current_, scope, k);
  rep.saturated = !exhausted && rep.missing_after == 0;
  if (rep.saturated) {
    level_ = k;
    core_ = scope;
  }
  return rep;
}

std::vector<ExtensionType> compatible_extensions(const PatternTable& table, const Structure& s,
                                                 const std::vector<Element>& base) {
  std::vector<ExtensionType> out;
  std::vector<PointPattern> base_pts;
  for (Element b : base) base_pts.push_back(point_pattern(s, b));
  for (PointPattern p : table.points()) {
    std::vector<ExtensionType> partial(1);
    partial[0].base = base;
    partial[0].point = p;
    for (std::size_t i = 0; i < base.size(); ++i) {
      std::vector<ExtensionType> next;
      for (const auto& t : partial)
        for (LinkPattern l : table.links(base_pts[i], p)) {
          next.push_back(t);
          next.back().links.push_back(l);
        }
      partial = std::move(next);
    }
    for (auto& t : partial) out.push_back(std::move(t));
  }
  return out;
}

bool realized(const Structure& s, const ExtensionType& tau) {
  for (Element x = 0; x < s.size(); ++x) {
    if (std::find(tau.base.begin(), tau.base.end(), x) != tau.base.end()) continue;
    if (point_pattern(s, x) != tau.point) continue;
    bool ok = true;
    for (std::size_t i = 0; i < tau.base.size() && ok; ++i)
      ok = link_pattern(s, tau.base[i], x) == tau.links[i];
    if (ok) return true;
  }
  return false;
}

std::size_t unrealized_extensions(const PatternTable& table, const Structure& s, std::size_t scope,
                                  std::size_t k) {
  std::size_t missing = 0;
  for (std::size_t j = 0; j <= k; ++j)
    for_each_subset_of_size(scope, j, [&](std::span<const Element> sub) {
      const std::vector<Element> base(sub.begin(), sub.end());
      for (const auto& tau : compatible_extensions(table, s, base))
        if (!realized(s, tau)) ++missing;
    });
  return missing;
}

// ---------------------------------------------------------------------------
// Extension game

namespace {

class ClassInterner {
 public:
  std::uint32_t intern(std::vector<std::uint32_t>&& key) {
    auto [it, inserted] = ids_.try_emplace(std::move(key), static_cast<std::uint32_t>(ids_.size()));
    return it->second;
  }

 private:
  std::map<std::vector<std::uint32_t>, std::uint32_t> ids_;
};

class GameClasses {
 public:
  GameClasses(ClassInterner& types, ClassInterner& classes) : types_(types), classes_(classes) {}

  std::uint32_t type_id(const Structure& s, std::vector<Element>& t) {
    tuple_type_into(s, t, scratch_);
    return types_.intern(std::vector<std::uint32_t>(scratch_));
  }

  /// class_r of the tuple t in s.
  std::uint32_t cls(const Structure& s, std::vector<Element>& t, std::size_t r) {
    std::vector<std::uint32_t> children;
    children.reserve(s.size());
    for (Element x = 0; x < s.size(); ++x) {
      t.push_back(x);
      children.push_back(r == 0 ? type_id(s, t) : cls(s, t, r - 1));
      t.pop_back();
    }
    std::sort(children.begin(), children.end());
    children.erase(std::unique(children.begin(), children.end()), children.end());
    std::vector<std::uint32_t> key;
    key.reserve(children.size() + 2);
    key.push_back(static_cast<std::uint32_t>(r));
    key.push_back(type_id(s, t));
    key.insert(key.end(), children.begin(), children.end());
    return classes_.intern(std::move(key));
  }

  /// Classes reached by each single spoiler move from the empty position.
  std::vector<std::uint32_t> first_moves(const Structure& s, std::size_t k) {
    std::vector<std::uint32_t> out;
    std::vector<Element> t;
    for (Element x = 0; x < s.size(); ++x) {
      t.assign(1, x);
      out.push_back(k == 0 ? type_id(s, t) : cls(s, t, k - 1));
    }
    return out;
  }

 private:
  ClassInterner& types_;
  ClassInterner& classes_;
  std::vector<std::uint32_t> scratch_;
};

}  // namespace

std::string BackAndForthResult::describe() const {
  std::ostringstream out;
  if (equivalent) {
    out << rounds << "-equivalent";
  } else {
    out << "distinguished in " << rounds << " rounds: spoiler picks element " << *move << " in "
        << (side == 0 ? "a" : "b") << "; no answer in " << (side == 0 ? "b" : "a")
        << " has the same extension class";
  }
  return out.str();
}

BackAndForthResult back_and_forth(const Structure& a, const Structure& b, std::size_t k) {
  if (!(a.vocab() == b.vocab())) throw VocabularyError("back_and_forth needs a common vocabulary");
  BackAndForthResult res;
  res.rounds = k;
  ClassInterner types, classes;
  GameClasses game(types, classes);
  const auto ma = game.first_moves(a, k);
  const auto mb = game.first_moves(b, k);
  std::unordered_set<std::uint32_t> sa(ma.begin(), ma.end()), sb(mb.begin(), mb.end());
  for (Element x = 0; x < ma.size(); ++x)
    if (!sb.count(ma[x])) {
      res.side = 0;
      res.move = x;
      return res;
    }
  for (Element x = 0; x < mb.size(); ++x)
    if (!sa.count(mb[x])) {
      res.side = 1;
      res.move = x;
      return res;
    }
  res.equivalent = true;
  return res;
}

// ---------------------------------------------------------------------------
// Homogeneity probe

HomogeneityReport homogeneity_probe(const GenericOracle& o, std::size_t m, std::size_t trials,
                                    std::uint64_t seed) {
  if (!o.saturation_level() || *o.saturation_level() < m)
    throw SaturationError("homogeneity probe needs saturation level >= " + std::to_string(m));
  HomogeneityReport rep;
  rep.m = m;
  rep.trials = trials;
  const Structure& s = o.current();
  const std::size_t core = o.core_size();
  std::mt19937_64 rng(seed);

  auto sample = [&](std::vector<Element>& t) {
    t.clear();
    while (t.size() < m) {
      const Element x = static_cast<Element>(rng() % core);
      if (std::find(t.begin(), t.end(), x) == t.end()) t.push_back(x);
    }
  };
  // Types of t x for every x in the structure.
  auto extensions = [&](std::vector<Element> t) {
    std::unordered_set<TypeId, TypeIdHash> out;
    t.push_back(0);
    for (Element x = 0; x < s.size(); ++x) {
      t.back() = x;
      out.insert(tuple_type(s, t));
    }
    return out;
  };
  // Every core element's extension of `from` has a match over `to`.
  auto extends = [&](const std::vector<Element>& from, const std::vector<Element>& to) {
    const auto options = extensions(to);
    std::vector<Element> t = from;
    t.push_back(0);
    for (Element c = 0; c < core; ++c) {
      t.back() = c;
      if (!options.count(tuple_type(s, t))) return false;
    }
    return true;
  };

  std::vector<Element> a, b;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    if (m > core) {
      ++rep.skipped;
      continue;
    }
    sample(a);
    const TypeId ta = tuple_type(s, a);
    bool found = false;
    for (int attempt = 0; attempt < 500 && !found; ++attempt) {
      sample(b);
      found = tuple_type(s, b) == ta;
    }
    if (!found) {
      ++rep.skipped;
      continue;
    }
    if (extends(a, b) && extends(b, a)) ++rep.successes;
  }
  return rep;
}

}  // namespace fraisse
