#include "fraisse/types.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <unordered_map>

#include "fraisse/subsets.hpp"

namespace fraisse {

TupleTyper structure_typer(Structure s) {
  auto shared = std::make_shared<const Structure>(std::move(s));
  return {shared->size(), [shared](std::span<const Element> t) { return tuple_type(*shared, t); }};
}

std::size_t TypeCensus::total() const {
  std::size_t sum = 0;
  for (const auto& e : entries) sum += e.second;
  return sum;
}

TypeCensus enumerate_types(const TupleTyper& typer, std::size_t n, const std::vector<Element>& params,
                           bool distinct) {
  TypeCensus c;
  c.arity = n;
  c.params = params;
  c.distinct = distinct;
  for (Element p : params)
    if (p >= typer.carrier) throw InvalidSubsetError("parameter outside the universe");
  std::map<TypeId, std::size_t> counts;
  std::vector<Element> full(params);
  full.resize(params.size() + n);
  for_each_tuple(typer.carrier, static_cast<unsigned>(n), [&](std::span<const Element> t) {
    if (distinct)
      for (std::size_t i = 0; i < t.size(); ++i)
        for (std::size_t j = i + 1; j < t.size(); ++j)
          if (t[i] == t[j]) return true;
    std::copy(t.begin(), t.end(), full.begin() + params.size());
    ++counts[typer.type_of(full)];
    return true;
  });
  c.entries.assign(counts.begin(), counts.end());
  return c;
}

TypeCensus enumerate_types(const Structure& s, std::size_t n, const std::vector<Element>& params,
                           bool distinct) {
  return enumerate_types(structure_typer(s), n, params, distinct);
}

PairDeterminacy types_determined_by_pairs(const TupleTyper& typer, std::size_t n,
                                          const std::optional<std::vector<Element>>& allowed) {
  PairDeterminacy rep;
  std::vector<Element> pool;
  if (allowed) {
    pool = *allowed;
  } else {
    pool.resize(typer.carrier);
    for (Element x = 0; x < typer.carrier; ++x) pool[x] = x;
  }
  std::unordered_map<TypeId, std::uint32_t, TypeIdHash> pair_ids;
  std::map<std::vector<std::uint32_t>, std::pair<Tuple, TypeId>> seen;
  Tuple t(n);
  Tuple pair(2);
  for_each_tuple(pool.size(), static_cast<unsigned>(n), [&](std::span<const Element> idx) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (idx[i] == idx[j]) return true;
    for (std::size_t i = 0; i < n; ++i) t[i] = pool[idx[i]];
    ++rep.tuples_checked;
    std::vector<std::uint32_t> key;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        pair[0] = t[i];
        pair[1] = t[j];
        auto [it, _] = pair_ids.try_emplace(typer.type_of(pair), static_cast<std::uint32_t>(pair_ids.size()));
        key.push_back(it->second);
      }
    TypeId full = typer.type_of(t);
    auto [it, inserted] = seen.try_emplace(std::move(key), t, full);
    if (!inserted && it->second.second != full) {
      rep.determined = false;
      rep.counterexample = std::make_pair(it->second.first, t);
      return false;
    }
    return true;
  });
  return rep;
}

const char* to_string(AclVerdict v) {
  switch (v) {
    case AclVerdict::Algebraic:
      return "algebraic";
    case AclVerdict::NonAlgebraic:
      return "non-algebraic";
    case AclVerdict::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

std::vector<Element> AclReport::closure() const {
  std::vector<Element> out;
  for (const auto& e : entries)
    if (e.verdict == AclVerdict::Algebraic) out.push_back(e.element);
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t AclReport::inconclusive() const {
  return std::count_if(entries.begin(), entries.end(),
                       [](const AclEntry& e) { return e.verdict == AclVerdict::Inconclusive; });
}

std::optional<AclVerdict> AclReport::verdict_of(Element a) const {
  for (const auto& e : entries)
    if (e.element == a) return e.verdict;
  return std::nullopt;
}

namespace {

bool contains(const std::vector<Element>& v, Element x) { return std::find(v.begin(), v.end(), x) != v.end(); }

}  // namespace

AclReport acl_scan(const TupleTyper& typer, const std::vector<Element>& base, std::size_t d,
                   bool saturation_ok, const std::vector<Element>& candidates) {
  AclReport rep;
  rep.base = base;
  rep.d = d;
  std::vector<Element> t(base);
  t.push_back(0);
  std::vector<TypeId> type_of(typer.carrier);
  std::unordered_map<TypeId, std::size_t, TypeIdHash> counts;
  for (Element x = 0; x < typer.carrier; ++x) {
    t.back() = x;
    type_of[x] = typer.type_of(t);
    ++counts[type_of[x]];
  }
  for (Element a : candidates) {
    if (a >= typer.carrier) throw InvalidSubsetError("candidate outside the universe");
    if (contains(base, a)) {
      rep.entries.push_back({a, 1, AclVerdict::Algebraic});
      continue;
    }
    const std::size_t c = counts[type_of[a]];
    const AclVerdict v = c >= d ? AclVerdict::NonAlgebraic
                         : saturation_ok ? AclVerdict::Algebraic
                                         : AclVerdict::Inconclusive;
    rep.entries.push_back({a, c, v});
  }
  return rep;
}

AclReport acl_approx(GenericOracle& o, const std::vector<Element>& base, std::size_t d,
                     std::size_t& budget) {
  AclReport rep;
  rep.base = base;
  rep.d = d;
  for (Element b : base)
    if (b >= o.size()) throw InvalidSubsetError("base element outside the oracle");
  const std::size_t core = o.saturation_level() ? o.core_size() : o.size();

  // Realization counts keyed by (point, links to base).
  auto signature = [&](Element x) {
    std::vector<std::uint64_t> sig;
    sig.reserve(base.size() + 1);
    sig.push_back(o.point_of(x));
    for (Element b : base) sig.push_back(link_pattern(o.current(), b, x));
    return sig;
  };
  std::map<std::vector<std::uint64_t>, std::size_t> counts;
  for (Element x = 0; x < o.size(); ++x)
    if (!contains(base, x)) ++counts[signature(x)];

  for (Element a = 0; a < core; ++a) {
    if (contains(base, a)) {
      rep.entries.push_back({a, 1, AclVerdict::Algebraic});
      continue;
    }
    const auto sig = signature(a);
    std::size_t& c = counts[sig];
    if (c < d) {
      ExtensionType tau;
      tau.base = base;
      tau.point = static_cast<PointPattern>(sig[0]);
      tau.links.assign(sig.begin() + 1, sig.end());
      while (c < d && budget > 0) {
        o.extend_one_point(tau);
        --budget;
        ++c;
      }
    }
    // Extension can always add realizations of a non-base type, so a
    // shortfall only means the budget ran out.
    rep.entries.push_back({a, c, c >= d ? AclVerdict::NonAlgebraic : AclVerdict::Inconclusive});
  }
  return rep;
}

AclContext::AclContext(std::vector<Element> universe, Compute compute)
    : universe_(std::move(universe)), compute_(std::move(compute)) {}

const AclReport& AclContext::acl(std::vector<Element> base) {
  std::sort(base.begin(), base.end());
  base.erase(std::unique(base.begin(), base.end()), base.end());
  auto it = cache_.find(base);
  if (it == cache_.end()) it = cache_.emplace(base, compute_(base)).first;
  return it->second;
}

bool AclContext::algebraic(Element a, std::vector<Element> base) {
  return acl(std::move(base)).verdict_of(a) == AclVerdict::Algebraic;
}

AclContext static_acl_context(TupleTyper typer, std::vector<Element> universe, std::size_t d,
                              std::function<bool(std::size_t)> saturation_ok) {
  auto shared = std::make_shared<TupleTyper>(std::move(typer));
  auto cands = std::make_shared<std::vector<Element>>(universe);
  return AclContext(std::move(universe), [shared, cands, d, saturation_ok](const std::vector<Element>& base) {
    return acl_scan(*shared, base, d, saturation_ok(base.size()), *cands);
  });
}

AclContext oracle_acl_context(GenericOracle& o, std::size_t d, std::size_t budget) {
  const std::size_t core = o.saturation_level() ? o.core_size() : o.size();
  std::vector<Element> universe(core);
  for (Element x = 0; x < core; ++x) universe[x] = x;
  auto remaining = std::make_shared<std::size_t>(budget);
  return AclContext(std::move(universe), [&o, d, remaining](const std::vector<Element>& base) {
    return acl_approx(o, base, d, *remaining);
  });
}

TrivialityReport check_triviality(AclContext& ctx, std::size_t max_b) {
  TrivialityReport rep;
  const auto& u = ctx.universe();
  for (std::size_t size = 1; size <= max_b && !rep.counterexample; ++size) {
    for_each_subset_of_size(u.size(), size, [&](std::span<const Element> idx) {
      if (rep.counterexample) return;
      std::vector<Element> b;
      for (Element i : idx) b.push_back(u[i]);
      ++rep.bases_checked;
      const AclReport report = ctx.acl(b);
      rep.inconclusive_entries += report.inconclusive();
      for (Element a : report.closure()) {
        bool single = false;
        for (Element x : b) single = single || ctx.algebraic(a, {x});
        if (!single) {
          rep.counterexample = std::make_pair(a, b);
          return;
        }
      }
    });
  }
  rep.verdict = rep.counterexample           ? Verdict3::No
                : rep.inconclusive_entries > 0 ? Verdict3::Inconclusive
                                               : Verdict3::Yes;
  return rep;
}

DegeneracyReport check_degenerate_dependence(AclContext& ctx, std::size_t rho, std::size_t max_a,
                                             std::size_t max_b, std::size_t max_c) {
  DegeneracyReport rep;
  rep.degree = rho == 0 ? 0 : rho - 1;
  const auto& u = ctx.universe();
  if (u.size() > 64) throw InputError("degenerate dependence check supports at most 64 candidates");
  using Mask = std::uint64_t;
  auto elements = [&](std::span<const Element> idx) {
    std::vector<Element> out;
    for (Element i : idx) out.push_back(u[i]);
    return out;
  };
  // Bitmasks over universe positions of elements algebraic / inconclusive over a base.
  auto masks = [&](const std::vector<Element>& base) {
    const AclReport& r = ctx.acl(base);
    Mask alg = 0, inc = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      auto v = r.verdict_of(u[i]);
      if (v == AclVerdict::Algebraic) alg |= Mask{1} << i;
      if (v == AclVerdict::Inconclusive) inc |= Mask{1} << i;
    }
    return std::make_pair(alg, inc);
  };
  auto join = [](std::vector<Element> x, const std::vector<Element>& y) {
    x.insert(x.end(), y.begin(), y.end());
    return x;
  };

  for (std::size_t cs = 0; cs <= max_c && !rep.counterexample; ++cs)
    for_each_subset_of_size(u.size(), cs, [&](std::span<const Element> cidx) {
      if (rep.counterexample) return;
      const std::vector<Element> c = elements(cidx);
      const Mask c_mask = [&] {
        Mask m = 0;
        for (Element i : cidx) m |= Mask{1} << i;
        return m;
      }();
      const auto [alg_c, inc_c] = masks(c);
      for (std::size_t bs = 1; bs <= max_b && !rep.counterexample; ++bs)
        for_each_subset_of_size(u.size(), bs, [&](std::span<const Element> bidx) {
          if (rep.counterexample) return;
          for (Element i : bidx)
            if ((c_mask >> i) & 1) return;
          const std::vector<Element> b = elements(bidx);
          const auto [alg_bc, inc_bc] = masks(join(b, c));
          const Mask dependent = alg_bc & ~alg_c;
          const Mask unsure = (inc_bc | inc_c) & ~dependent;
          Mask witnessed = 0;
          for (std::size_t ws = 1; ws <= std::min(rep.degree, bs); ++ws)
            for_each_subset_of_size(bs, ws, [&](std::span<const Element> widx) {
              std::vector<Element> b0;
              for (Element i : widx) b0.push_back(b[i]);
              witnessed |= masks(join(b0, c)).first & ~alg_c;
            });
          for (std::size_t as = 1; as <= max_a && !rep.counterexample; ++as)
            for_each_subset_of_size(u.size(), as, [&](std::span<const Element> aidx) {
              if (rep.counterexample) return;
              ++rep.cases_checked;
              Mask a_mask = 0;
              for (Element i : aidx) a_mask |= Mask{1} << i;
              if (a_mask & dependent) {
                ++rep.dependences;
                if (!(a_mask & witnessed)) rep.counterexample = DegeneracyReport::Witness{elements(aidx), b, c};
              } else if (a_mask & unsure) {
                ++rep.inconclusive_entries;
              }
            });
        });
    });
  rep.verdict = rep.counterexample           ? Verdict3::No
                : rep.inconclusive_entries > 0 ? Verdict3::Inconclusive
                                               : Verdict3::Yes;
  return rep;
}

}  // namespace fraisse
