#include "fraisse/reduct.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "fraisse/errors.hpp"
#include "fraisse/subsets.hpp"

namespace fraisse {

TypedUniverse typed_universe(const TupleTyper& typer, std::size_t n_max, std::string provenance) {
  return {typer.carrier, n_max, typer, std::move(provenance)};
}

TypedUniverse typed_universe(const Structure& s, std::size_t n_max, std::string provenance) {
  return typed_universe(structure_typer(s), n_max, std::move(provenance));
}

TypedUniverse restrict_carrier(const TypedUniverse& u, std::size_t carrier) {
  if (carrier > u.carrier)
    throw InputError("cannot restrict a carrier of " + std::to_string(u.carrier) + " to " + std::to_string(carrier));
  TypedUniverse r = u;
  r.carrier = carrier;
  r.typer.carrier = carrier;
  return r;
}

// ---------------------------------------------------------------------------
// Text table

void write_typed_universe(std::ostream& out, const TypedUniverse& u) {
  out << "typed-universe " << u.carrier << ' ' << u.n_max << '\n';
  if (!u.provenance.empty()) out << "provenance " << u.provenance << '\n';
  for (std::size_t n = 1; n <= u.n_max; ++n) {
    out << "arity " << n << '\n';
    for_each_tuple(u.carrier, static_cast<unsigned>(n), [&](std::span<const Element> t) {
      for (Element x : t) out << x << ' ';
      out << ": " << u.typer.type_of(t).str() << '\n';
      return true;
    });
  }
}

namespace {

std::size_t tuple_index(std::span<const Element> t, std::size_t carrier) {
  std::size_t i = 0;
  for (Element x : t) i = i * carrier + x;
  return i;
}

std::size_t power(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= b;
  return r;
}

}  // namespace

TypedUniverse read_typed_universe(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  auto next = [&]() -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      return true;
    }
    return false;
  };
  if (!next()) throw ParseError(lineno, "empty typed-universe table");
  std::istringstream head(line);
  std::string word;
  TypedUniverse u;
  if (!(head >> word >> u.carrier >> u.n_max) || word != "typed-universe")
    throw ParseError(lineno, "expected 'typed-universe <carrier> <nmax>'");
  if (u.n_max > 0 && power(u.carrier, u.n_max) > (std::size_t{1} << 26))
    throw ParseError(lineno, "typed-universe table too large");

  auto tables = std::make_shared<std::vector<std::vector<std::optional<TypeId>>>>(u.n_max + 1);
  for (std::size_t n = 1; n <= u.n_max; ++n) (*tables)[n].resize(power(u.carrier, n));
  std::size_t arity = 0;
  while (next()) {
    if (line.rfind("provenance ", 0) == 0) {
      u.provenance = line.substr(11);
      continue;
    }
    if (line.rfind("arity ", 0) == 0) {
      std::istringstream ls(line.substr(6));
      if (!(ls >> arity) || arity == 0 || arity > u.n_max) throw ParseError(lineno, "bad arity line");
      continue;
    }
    const auto colon = line.find(':');
    if (colon == std::string::npos || arity == 0) throw ParseError(lineno, "expected '<tuple> : <type key>'");
    std::istringstream ts(line.substr(0, colon));
    Tuple t;
    for (long long x; ts >> x;) {
      if (x < 0 || static_cast<std::size_t>(x) >= u.carrier) throw ParseError(lineno, "entry out of range");
      t.push_back(static_cast<Element>(x));
    }
    if (!ts.eof() || t.size() != arity) throw ParseError(lineno, "tuple does not have arity " + std::to_string(arity));
    std::string key = line.substr(colon + 1);
    key.erase(0, key.find_first_not_of(" \t"));
    key.erase(key.find_last_not_of(" \t\r") + 1);
    auto& slot = (*tables)[arity][tuple_index(t, u.carrier)];
    if (slot) throw ParseError(lineno, "duplicate tuple");
    try {
      slot = TypeId::parse(key);
    } catch (const Error& e) {
      throw ParseError(lineno, e.what());
    }
  }
  for (std::size_t n = 1; n <= u.n_max; ++n)
    for (const auto& slot : (*tables)[n])
      if (!slot) throw ParseError(lineno, "arity " + std::to_string(n) + " table is incomplete");

  const std::size_t carrier = u.carrier;
  u.typer.carrier = carrier;
  u.typer.type_of = [tables, carrier](std::span<const Element> t) -> TypeId {
    if (t.empty() || t.size() >= tables->size()) throw InputError("arity outside the typed-universe table");
    return *(*tables)[t.size()][tuple_index(t, carrier)];
  };
  return u;
}

TypedUniverse load_typed_universe(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  return read_typed_universe(in);
}

// ---------------------------------------------------------------------------
// Refinement

RefinementReport partition_refines(const TypedUniverse& source, const TypedUniverse& target, std::size_t n) {
  if (source.carrier != target.carrier)
    throw InputError("carrier mismatch: " + std::to_string(source.carrier) + " vs " + std::to_string(target.carrier));
  if (n > source.n_max || n > target.n_max) throw InputError("arity " + std::to_string(n) + " exceeds n_max");
  RefinementReport rep;
  rep.arity = n;
  std::unordered_map<TypeId, std::pair<TypeId, Tuple>, TypeIdHash> seen;
  for_each_tuple(source.carrier, static_cast<unsigned>(n), [&](std::span<const Element> t) {
    ++rep.tuples_checked;
    TypeId s = source.typer.type_of(t);
    TypeId g = target.typer.type_of(t);
    auto [it, fresh] = seen.try_emplace(std::move(s), g, Tuple(t.begin(), t.end()));
    if (!fresh && it->second.first != g) {
      rep.refines = false;
      rep.counterexample = std::make_pair(it->second.second, Tuple(t.begin(), t.end()));
      return false;
    }
    return true;
  });
  return rep;
}

std::optional<std::vector<TypeId>> definable_as_union(const TypedUniverse& source, std::size_t n,
                                                      const std::vector<Tuple>& relation) {
  std::vector<bool> member(power(source.carrier, n), false);
  for (const auto& t : relation) {
    if (t.size() != n) throw InputError("relation tuple has the wrong arity");
    for (Element x : t)
      if (x >= source.carrier) throw InputError("relation tuple outside the carrier");
    member[tuple_index(t, source.carrier)] = true;
  }
  std::map<TypeId, bool> inside;
  bool split = false;
  for_each_tuple(source.carrier, static_cast<unsigned>(n), [&](std::span<const Element> t) {
    const bool in = member[tuple_index(t, source.carrier)];
    auto [it, fresh] = inside.try_emplace(source.typer.type_of(t), in);
    if (!fresh && it->second != in) split = true;
    return !split;
  });
  if (split) return std::nullopt;
  std::vector<TypeId> out;
  for (const auto& [id, in] : inside)
    if (in) out.push_back(id);
  return out;
}

ReductReport is_reduct(const TypedUniverse& source, const TypedUniverse& target, std::size_t n_max) {
  ReductReport rep;
  rep.n_max = n_max;
  rep.source_provenance = source.provenance;
  rep.target_provenance = target.provenance;
  for (std::size_t n = 1; n <= n_max; ++n) {
    auto r = partition_refines(source, target, n);
    if (!r.refines) {
      rep.holds = false;
      rep.failing_arity = n;
      rep.counterexample = r.counterexample;
      break;
    }
  }
  return rep;
}

std::string ReductReport::describe() const {
  std::ostringstream out;
  auto show = [&](const Tuple& t) {
    out << '(';
    for (std::size_t i = 0; i < t.size(); ++i) out << (i ? "," : "") << t[i];
    out << ')';
  };
  if (holds) {
    out << "reduct (up to " << n_max << ")";
  } else {
    out << "not a reduct: fails at arity " << *failing_arity;
    if (counterexample) {
      out << ", ";
      show(counterexample->first);
      out << " and ";
      show(counterexample->second);
      out << " agree in the source and differ in the target";
    }
  }
  return out.str();
}

}  // namespace fraisse
