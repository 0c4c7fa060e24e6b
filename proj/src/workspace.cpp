#include "catsite/workspace.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace catsite {

namespace {

// ---------------------------------------------------------------------------
// Shape checks. Anything failing here is a malformed document.

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw ParseError(where + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(where + ": missing field '" + key + "'");
  return *it;
}

const Json* optional_field(const Json& j, const char* key) {
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

std::string as_string(const Json& j, const std::string& where) {
  if (!j.is_string()) throw ParseError(where + ": expected a string");
  return j.get<std::string>();
}

long long as_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ParseError(where + ": expected an integer");
  return j.get<long long>();
}

std::size_t as_size(const Json& j, const std::string& where) {
  const long long v = as_int(j, where);
  if (v < 0) throw ParseError(where + ": expected a non-negative integer");
  return static_cast<std::size_t>(v);
}

const Json& as_array(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an array");
  return j;
}

const Json& as_object(const Json& j, const std::string& where) {
  if (!j.is_object()) throw ParseError(where + ": expected an object");
  return j;
}

std::vector<std::string> string_list(const Json& j, const std::string& where) {
  std::vector<std::string> out;
  for (const auto& e : as_array(j, where)) out.push_back(as_string(e, where));
  return out;
}

void only_keys(const Json& j, std::initializer_list<const char*> keys, const std::string& where) {
  for (const auto& [k, v] : as_object(j, where).items()) {
    if (std::none_of(keys.begin(), keys.end(), [&](const char* key) { return k == key; }))
      throw ParseError(where + ": unknown field '" + k + "'");
  }
}

std::string entity_name(const Json& j, const std::string& kind, std::size_t i) {
  return as_string(field(j, "name", kind + " #" + std::to_string(i)), kind + " #" + std::to_string(i));
}

// ---------------------------------------------------------------------------
// Name resolution. Failures here are semantic and become violations.

ObjId object_in(const FinCat& c, const std::string& name, const std::string& where) {
  auto x = c.find_object(name);
  if (!x) throw Error(where + ": unknown object '" + name + "'");
  return *x;
}

MorId morphism_in(const FinCat& c, const std::string& name, const std::string& where) {
  auto f = c.find_morphism(name);
  if (!f) throw Error(where + ": unknown morphism '" + name + "'");
  return *f;
}

template <class T>
const T* find_named(const std::vector<T>& items, const std::string& name) {
  for (const auto& item : items)
    if (item.name == name) return &item;
  return nullptr;
}

CatPtr share(FinCat c) { return std::make_shared<const FinCat>(std::move(c)); }

FinCat thickened_delooping(const FiniteGroup& g, int copies) {
  if (copies < 1) throw Error("thickened delooping needs at least one copy");
  FinCat c;
  for (int i = 0; i < copies; ++i) c.add_object("x" + std::to_string(i));
  const int e = g.identity();
  // arrow[i][j][a]
  std::vector<std::vector<std::vector<MorId>>> arrow(copies, std::vector<std::vector<MorId>>(copies));
  for (int i = 0; i < copies; ++i) {
    for (int j = 0; j < copies; ++j) {
      for (int a = 0; a < g.order(); ++a) {
        arrow[i][j].push_back(i == j && a == e ? c.identity(i)
                                               : c.add_morphism(g.elements[a] + ":" + std::to_string(i) + "->" +
                                                                    std::to_string(j),
                                                                i, j));
      }
    }
  }
  for (int i = 0; i < copies; ++i)
    for (int j = 0; j < copies; ++j)
      for (int l = 0; l < copies; ++l)
        for (int a = 0; a < g.order(); ++a)
          for (int b = 0; b < g.order(); ++b) c.set_compose(arrow[j][l][b], arrow[i][j][a], arrow[i][l][g.mul(b, a)]);
  return c;
}

FinCat parse_category(const Json& j, const std::string& where) {
  only_keys(j,
            {"name", "description", "terminal", "discrete", "poset", "delooping", "thickened", "objects", "morphisms",
             "identities", "compose"},
            where);
  if (optional_field(j, "terminal")) return terminal_category();
  if (const Json* d = optional_field(j, "discrete")) return discrete_category(string_list(*d, where + ".discrete"));
  if (const Json* p = optional_field(j, "poset")) {
    const std::string w = where + ".poset";
    std::vector<std::pair<std::string, std::string>> leq;
    if (const Json* l = optional_field(as_object(*p, w), "leq")) {
      for (const auto& pair : as_array(*l, w + ".leq")) {
        const auto names = string_list(pair, w + ".leq");
        if (names.size() != 2) throw ParseError(w + ".leq: expected pairs");
        leq.emplace_back(names[0], names[1]);
      }
    }
    return poset_category(string_list(field(*p, "elements", w), w + ".elements"), leq);
  }
  if (const Json* d = optional_field(j, "delooping")) {
    const std::string w = where + ".delooping";
    only_keys(*d, {"group", "object"}, w);
    const Json* obj = optional_field(*d, "object");
    return delooping(named_group(as_string(field(*d, "group", w), w)), obj ? as_string(*obj, w) : "*");
  }
  if (const Json* t = optional_field(j, "thickened")) {
    const std::string w = where + ".thickened";
    only_keys(*t, {"group", "copies"}, w);
    return thickened_delooping(named_group(as_string(field(*t, "group", w), w)),
                               static_cast<int>(as_int(field(*t, "copies", w), w)));
  }

  FinCat c;
  for (const auto& name : string_list(field(j, "objects", where), where + ".objects")) c.add_object(name);
  if (const Json* ms = optional_field(j, "morphisms")) {
    for (const auto& m : as_array(*ms, where + ".morphisms")) {
      const std::string w = where + ".morphisms";
      c.add_morphism(as_string(field(m, "name", w), w), object_in(c, as_string(field(m, "dom", w), w), w),
                     object_in(c, as_string(field(m, "cod", w), w), w));
    }
  }
  if (const Json* ids = optional_field(j, "identities")) {
    for (const auto& [obj, mor] : as_object(*ids, where + ".identities").items())
      c.set_identity(object_in(c, obj, where), morphism_in(c, as_string(mor, where), where));
  }
  if (const Json* table = optional_field(j, "compose")) {
    for (const auto& entry : as_array(*table, where + ".compose")) {
      const auto names = string_list(entry, where + ".compose");
      if (names.size() != 3) throw ParseError(where + ".compose: expected [g, f, g∘f] triples");
      const MorId g = morphism_in(c, names[0], where), f = morphism_in(c, names[1], where);
      if (c.cod(f) != c.dom(g)) throw Error(where + ": " + names[0] + " and " + names[1] + " are not composable");
      c.set_compose(g, f, morphism_in(c, names[2], where));
    }
  }
  c.fill_identity_compositions();
  return c;
}

Json save_category(const FinCat& c) {
  const auto n = static_cast<ObjId>(c.object_count());
  Json objects = Json::array();
  for (ObjId x = 0; x < n; ++x) {
    objects.push_back(c.object_name(x));
    const auto& m = c.morphism(x);
    if (m.name != "id_" + c.object_name(x) || m.dom != x || m.cod != x)
      throw Error("category cannot be written in explicit form");
  }
  Json morphisms = Json::array();
  for (MorId f = n; f < static_cast<MorId>(c.morphism_count()); ++f) {
    morphisms.push_back({{"name", c.morphism_name(f)},
                         {"dom", c.object_name(c.dom(f))},
                         {"cod", c.object_name(c.cod(f))}});
  }
  Json identities = Json::object();
  for (ObjId x = 0; x < n; ++x)
    if (c.identity(x) != x) identities[c.object_name(x)] = c.morphism_name(c.identity(x));
  Json compose = Json::array();
  for (MorId g = 0; g < static_cast<MorId>(c.morphism_count()); ++g) {
    for (MorId f : c.arrows_into(c.dom(g))) {
      const MorId gf = c.compose(g, f);
      if (gf == kNone) continue;
      if ((c.identity(c.cod(f)) == g && gf == f) || (c.identity(c.dom(g)) == f && gf == g)) continue;
      compose.push_back({c.morphism_name(g), c.morphism_name(f), c.morphism_name(gf)});
    }
  }
  Json out = {{"objects", objects}, {"morphisms", morphisms}};
  if (!identities.empty()) out["identities"] = identities;
  out["compose"] = compose;
  return out;
}

std::vector<MorId> morphism_list(const FinCat& c, const Json& j, const std::string& where) {
  std::vector<MorId> out;
  for (const auto& name : string_list(j, where)) out.push_back(morphism_in(c, name, where));
  return out;
}

Json name_list(const FinCat& c, const std::vector<MorId>& arrows) {
  Json out = Json::array();
  for (MorId f : arrows) out.push_back(c.morphism_name(f));
  return out;
}

// {"object": ..., "arrows": [...]}, with the arrows closed under precomposition.
Sieve parse_sieve(const FinCat& c, const Json& j, const std::string& where, bool generate) {
  only_keys(j, {"object", "arrows"}, where);
  const ObjId base = object_in(c, as_string(field(j, "object", where), where), where);
  const auto arrows = morphism_list(c, field(j, "arrows", where), where + ".arrows");
  if (generate) return generate_sieve(c, Cover{base, arrows});
  return make_sieve(c, base, arrows);
}

Json save_sieve(const FinCat& c, const Sieve& s) {
  return {{"object", c.object_name(s.base)}, {"arrows", name_list(c, s.arrows)}};
}

Square parse_square(const FinCat& c, const Json& j, const std::string& where) {
  only_keys(j, {"top", "left", "right", "bottom"}, where);
  auto get = [&](const char* key) { return morphism_in(c, as_string(field(j, key, where), where), where); };
  return Square{get("top"), get("left"), get("right"), get("bottom")};
}

Json save_square(const FinCat& c, const Square& s) {
  return {{"top", c.morphism_name(s.top)},
          {"left", c.morphism_name(s.left)},
          {"right", c.morphism_name(s.right)},
          {"bottom", c.morphism_name(s.bottom)}};
}

Presheaf parse_presheaf(CatPtr base, const Json& j, const std::string& where) {
  only_keys(j, {"name", "description", "category", "constant", "representable", "sizes", "restrictions", "labels"},
            where);
  const FinCat& c = *base;
  if (const Json* k = optional_field(j, "constant")) {
    return constant_presheaf(base, static_cast<int>(as_size(*k, where + ".constant")));
  }
  if (const Json* r = optional_field(j, "representable")) {
    return representable(base, object_in(c, as_string(*r, where), where));
  }
  Presheaf p{base, std::vector<int>(c.object_count(), -1), {}, {}};
  for (const auto& [obj, n] : as_object(field(j, "sizes", where), where + ".sizes").items())
    p.sizes[object_in(c, obj, where)] = static_cast<int>(as_size(n, where + ".sizes"));
  for (ObjId u = 0; u < static_cast<ObjId>(c.object_count()); ++u)
    if (p.sizes[u] < 0) throw Error(where + ": no size for object '" + c.object_name(u) + "'");
  p.restriction.assign(c.morphism_count(), {});
  fill_identity_restrictions(p);
  std::vector<bool> seen(c.morphism_count(), false);
  if (const Json* rs = optional_field(j, "restrictions")) {
    for (const auto& [mor, map] : as_object(*rs, where + ".restrictions").items()) {
      const MorId f = morphism_in(c, mor, where);
      seen[f] = true;
      p.restriction[f].clear();
      for (const auto& v : as_array(map, where + ".restrictions")) {
        p.restriction[f].push_back(static_cast<int>(as_int(v, where + ".restrictions")));
      }
    }
  }
  for (MorId f = 0; f < static_cast<MorId>(c.morphism_count()); ++f) {
    if (!seen[f] && !c.is_identity(f) && p.sizes[c.cod(f)] > 0)
      throw Error(where + ": no restriction along '" + c.morphism_name(f) + "'");
    if (!seen[f] && !c.is_identity(f)) p.restriction[f].clear();
  }
  if (const Json* ls = optional_field(j, "labels")) {
    p.labels.assign(c.object_count(), {});
    for (const auto& [obj, names] : as_object(*ls, where + ".labels").items())
      p.labels[object_in(c, obj, where)] = string_list(names, where + ".labels");
  }
  return p;
}

Json save_presheaf(const Presheaf& p) {
  const FinCat& c = *p.base;
  Json sizes = Json::object();
  for (ObjId u = 0; u < static_cast<ObjId>(c.object_count()); ++u) sizes[c.object_name(u)] = p.sizes[u];
  Json restrictions = Json::object();
  for (MorId f = 0; f < static_cast<MorId>(c.morphism_count()); ++f)
    if (!c.is_identity(f)) restrictions[c.morphism_name(f)] = p.restriction[f];
  Json out = {{"sizes", sizes}, {"restrictions", restrictions}};
  if (!p.labels.empty()) {
    Json labels = Json::object();
    for (ObjId u = 0; u < static_cast<ObjId>(c.object_count()); ++u) labels[c.object_name(u)] = p.labels[u];
    out["labels"] = labels;
  }
  return out;
}

void parse_bounds(const Json& j, Bounds& b) {
  const std::string w = "bounds";
  only_keys(j,
            {"sieves", "hom", "samples", "fibre", "candidates", "witt_primes", "witt_length", "witt_rings",
             "witt_ring_length", "witt_ring_size"},
            w);
  auto size = [&](const char* key, std::size_t& out) {
    if (const Json* v = optional_field(j, key)) out = as_size(*v, w + "." + key);
  };
  auto integer = [&](const char* key, int& out) {
    if (const Json* v = optional_field(j, key)) out = static_cast<int>(as_size(*v, w + "." + key));
  };
  auto ints = [&](const char* key, std::vector<int>& out) {
    if (const Json* v = optional_field(j, key)) {
      out.clear();
      for (const auto& e : as_array(*v, w + "." + key)) out.push_back(static_cast<int>(as_size(e, w + "." + key)));
    }
  };
  size("sieves", b.sieves);
  size("hom", b.hom);
  size("samples", b.samples);
  integer("fibre", b.fibre);
  size("candidates", b.candidates);
  ints("witt_primes", b.witt_primes);
  integer("witt_length", b.witt_length);
  ints("witt_rings", b.witt_rings);
  integer("witt_ring_length", b.witt_ring_length);
  size("witt_ring_size", b.witt_ring_size);
}

Json save_bounds(const Bounds& b) {
  return {{"sieves", b.sieves},
          {"hom", b.hom},
          {"samples", b.samples},
          {"fibre", b.fibre},
          {"candidates", b.candidates},
          {"witt_primes", b.witt_primes},
          {"witt_length", b.witt_length},
          {"witt_rings", b.witt_rings},
          {"witt_ring_length", b.witt_ring_length},
          {"witt_ring_size", b.witt_ring_size}};
}

const Json& section(const Json& doc, const char* key) {
  static const Json empty = Json::array();
  const Json* s = optional_field(doc, key);
  return s ? as_array(*s, key) : empty;
}

// Runs `build` for one entity; an Error becomes a violation and the entity
// is skipped. ParseError propagates.
template <class F>
bool attempt(Report& report, const std::string& where, F&& build) {
  try {
    build();
    return true;
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    report.add(where + ": " + e.what());
    return false;
  }
}

void check_unique(Report& report, const std::string& kind, const std::vector<std::string>& names) {
  std::set<std::string> seen;
  for (const auto& n : names)
    if (!seen.insert(n).second) report.add(kind + " '" + n + "' is declared twice");
}

}  // namespace

FiniteGroup named_group(const std::string& name) {
  if (name == "S3") return symmetric_group3();
  if (name == "C2xC2" || name == "V4") return klein_group();
  if (name.size() > 1 && name[0] == 'C' && std::all_of(name.begin() + 1, name.end(), [](unsigned char ch) { return std::isdigit(ch) != 0; })) {
    const int n = std::stoi(name.substr(1));
    if (n >= 1 && n <= 64) return cyclic_group(n);
  }
  throw Error("unknown group '" + name + "'");
}

#define CATSITE_LOOKUP(Type, method, member, kind)                        \
  const Type& Workspace::method(const std::string& name) const {          \
    if (const auto* item = find_named(member, name)) return *item;        \
    throw Error(std::string("unknown ") + kind + " '" + name + "'");      \
  }

CATSITE_LOOKUP(NamedFunctor, functor, functors, "functor")
CATSITE_LOOKUP(NamedSquares, square_set, squares, "square set")
CATSITE_LOOKUP(NamedCovers, cover_set, covers, "cover set")
CATSITE_LOOKUP(NamedTopology, topology, topologies, "topology")
CATSITE_LOOKUP(NamedPresheaf, presheaf, presheaves, "presheaf")
CATSITE_LOOKUP(NamedPoint, point, points, "point")

#undef CATSITE_LOOKUP

CatPtr Workspace::category(const std::string& name) const {
  if (const auto* item = find_named(categories, name)) return item->category;
  throw Error("unknown category '" + name + "'");
}

LoadResult load_workspace(const Json& doc) {
  only_keys(doc,
            {"description", "categories", "functors", "squares", "covers", "topologies", "presheaves", "points",
             "bounds"},
            "workspace");
  LoadResult out;
  Workspace& ws = out.workspace;
  Report& report = out.report;
  auto names_of = [](const Json& list, const std::string& kind) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < list.size(); ++i) names.push_back(entity_name(list[i], kind, i));
    return names;
  };

  const Json& categories = section(doc, "categories");
  check_unique(report, "category", names_of(categories, "category"));
  for (std::size_t i = 0; i < categories.size(); ++i) {
    const std::string name = entity_name(categories[i], "category", i);
    const std::string where = "category '" + name + "'";
    attempt(report, where, [&] {
      FinCat c = parse_category(categories[i], where);
      c.fill_identity_compositions();
      if (auto r = validate_category(c); !r.ok()) {
        report.append(r, where + ": ");
        return;
      }
      ws.categories.push_back({name, share(std::move(c))});
    });
  }

  const Json& squares = section(doc, "squares");
  check_unique(report, "square set", names_of(squares, "square set"));
  for (std::size_t i = 0; i < squares.size(); ++i) {
    const Json& j = squares[i];
    const std::string name = entity_name(j, "square set", i);
    const std::string where = "square set '" + name + "'";
    only_keys(j, {"name", "description", "category", "unions", "monos"}, where);
    const std::string cat = as_string(field(j, "category", where), where);
    attempt(report, where, [&] {
      const CatPtr c = ws.category(cat);
      NamedSquares s{name, cat, {}};
      if (const Json* u = optional_field(j, "unions"))
        for (const auto& sq : as_array(*u, where + ".unions")) s.squares.unions.push_back(parse_square(*c, sq, where));
      if (const Json* m = optional_field(j, "monos")) s.squares.monos = morphism_list(*c, *m, where + ".monos");
      if (auto r = validate_designated(*c, s.squares); !r.ok()) {
        report.append(r, where + ": ");
        return;
      }
      ws.squares.push_back(std::move(s));
    });
  }

  const Json& covers = section(doc, "covers");
  check_unique(report, "cover set", names_of(covers, "cover set"));
  for (std::size_t i = 0; i < covers.size(); ++i) {
    const Json& j = covers[i];
    const std::string name = entity_name(j, "cover set", i);
    const std::string where = "cover set '" + name + "'";
    only_keys(j, {"name", "description", "category", "covers"}, where);
    const std::string cat = as_string(field(j, "category", where), where);
    attempt(report, where, [&] {
      const CatPtr c = ws.category(cat);
      NamedCovers s{name, cat, {}};
      s.pretopology.covers.resize(c->object_count());
      for (const auto& cover : as_array(field(j, "covers", where), where + ".covers")) {
        only_keys(cover, {"object", "family"}, where + ".covers");
        const ObjId base = object_in(*c, as_string(field(cover, "object", where), where), where);
        const auto family = morphism_list(*c, field(cover, "family", where), where + ".family");
        for (MorId f : family)
          if (c->cod(f) != base) throw Error(c->morphism_name(f) + " does not end at " + c->object_name(base));
        s.pretopology.covers[base].push_back({base, family});
      }
      if (auto r = validate_pretopology(*c, s.pretopology); !r.ok()) {
        report.append(r, where + ": ");
        return;
      }
      ws.covers.push_back(std::move(s));
    });
  }

  const Json& topologies = section(doc, "topologies");
  check_unique(report, "topology", names_of(topologies, "topology"));
  for (std::size_t i = 0; i < topologies.size(); ++i) {
    const Json& j = topologies[i];
    const std::string name = entity_name(j, "topology", i);
    const std::string where = "topology '" + name + "'";
    only_keys(j, {"name", "description", "category", "seeds", "from_covers", "sieves"}, where);
    const std::string cat = as_string(field(j, "category", where), where);
    attempt(report, where, [&] {
      const CatPtr c = ws.category(cat);
      NamedTopology t{name, cat, {}, {}, {}};
      if (const Json* seeds = optional_field(j, "seeds"))
        for (const auto& s : as_array(*seeds, where + ".seeds")) t.seeds.push_back(parse_sieve(*c, s, where, true));
      std::vector<Sieve> generators = t.seeds;
      if (const Json* fc = optional_field(j, "from_covers")) {
        t.from_covers = as_string(*fc, where);
        const auto& covers_entry = ws.cover_set(*t.from_covers);
        if (covers_entry.category != cat) throw Error("cover set '" + *t.from_covers + "' is on another category");
        for (const auto& s : covering_sieves(pretopology_to_topology(*c, covers_entry.pretopology)))
          generators.push_back(s);
      }
      const Topology generated = generate_topology(*c, generators);
      if (const Json* sieves = optional_field(j, "sieves")) {
        t.topology.covering.assign(c->object_count(), {});
        for (const auto& s : as_array(*sieves, where + ".sieves")) {
          const Sieve sieve = parse_sieve(*c, s, where, false);
          t.topology.covering[sieve.base].insert(sieve);
        }
        if (auto check = is_topology(*c, t.topology); !check.holds) {
          report.add(where + ": " + check.violation);
          return;
        }
        if ((optional_field(j, "seeds") || t.from_covers) && t.topology != generated) {
          report.add(where + ": explicit sieves differ from the topology generated by its seeds");
          return;
        }
      } else {
        t.topology = generated;
      }
      ws.topologies.push_back(std::move(t));
    });
  }

  const Json& presheaves = section(doc, "presheaves");
  check_unique(report, "presheaf", names_of(presheaves, "presheaf"));
  for (std::size_t i = 0; i < presheaves.size(); ++i) {
    const Json& j = presheaves[i];
    const std::string name = entity_name(j, "presheaf", i);
    const std::string where = "presheaf '" + name + "'";
    const std::string cat = as_string(field(j, "category", where), where);
    attempt(report, where, [&] {
      Presheaf p = parse_presheaf(ws.category(cat), j, where);
      if (auto r = validate_presheaf(p); !r.ok()) {
        report.append(r, where + ": ");
        return;
      }
      ws.presheaves.push_back({name, cat, std::move(p)});
    });
  }

  const Json& points = section(doc, "points");
  check_unique(report, "point", names_of(points, "point"));
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Json& j = points[i];
    const std::string name = entity_name(j, "point", i);
    const std::string where = "point '" + name + "'";
    only_keys(j, {"name", "description", "category", "topology", "object"}, where);
    const std::string cat = as_string(field(j, "category", where), where);
    const std::string top = as_string(field(j, "topology", where), where);
    const std::string obj = as_string(field(j, "object", where), where);
    attempt(report, where, [&] {
      const CatPtr c = ws.category(cat);
      if (ws.topology(top).category != cat) throw Error("topology '" + top + "' is on another category");
      ws.points.push_back({name, cat, top, object_in(*c, obj, where)});
    });
  }

  const Json& functors = section(doc, "functors");
  check_unique(report, "functor", names_of(functors, "functor"));
  for (std::size_t i = 0; i < functors.size(); ++i) {
    const Json& j = functors[i];
    const std::string name = entity_name(j, "functor", i);
    const std::string where = "functor '" + name + "'";
    only_keys(j,
              {"name", "description", "source", "target", "objects", "morphisms", "topology", "squares", "point"},
              where);
    const std::string src = as_string(field(j, "source", where), where);
    const std::string tgt = as_string(field(j, "target", where), where);
    attempt(report, where, [&] {
      NamedFunctor nf{name, src, tgt, {}, {}, {}, {}, {}};
      Functor& F = nf.functor;
      F.source = ws.category(src);
      F.target = ws.category(tgt);
      const FinCat& C = *F.source;
      const FinCat& D = *F.target;
      F.on_objects.assign(C.object_count(), kNone);
      for (const auto& [x, y] : as_object(field(j, "objects", where), where + ".objects").items())
        F.on_objects[object_in(C, x, where)] = object_in(D, as_string(y, where), where);
      for (ObjId x = 0; x < static_cast<ObjId>(C.object_count()); ++x)
        if (F.on_objects[x] == kNone) throw Error("no image for object '" + C.object_name(x) + "'");
      F.on_morphisms.assign(C.morphism_count(), kNone);
      if (const Json* ms = optional_field(j, "morphisms"))
        for (const auto& [f, g] : as_object(*ms, where + ".morphisms").items())
          F.on_morphisms[morphism_in(C, f, where)] = morphism_in(D, as_string(g, where), where);
      for (MorId f = 0; f < static_cast<MorId>(C.morphism_count()); ++f) {
        if (F.on_morphisms[f] != kNone) continue;
        const ObjId a = F.on_objects[C.dom(f)], b = F.on_objects[C.cod(f)];
        if (C.is_identity(f)) {
          F.on_morphisms[f] = D.identity(a);
        } else if (D.hom(a, b).size() == 1) {
          F.on_morphisms[f] = D.hom(a, b).front();
        } else {
          throw Error("image of '" + C.morphism_name(f) + "' is not determined by the object map");
        }
      }
      if (auto r = validate_functor(F); !r.ok()) {
        report.append(r, where + ": ");
        return;
      }
      if (const Json* t = optional_field(j, "topology")) {
        nf.topology = as_string(*t, where);
        if (ws.topology(*nf.topology).category != src)
          throw Error("topology '" + *nf.topology + "' is not on the source");
      }
      if (const Json* sq = optional_field(j, "squares")) {
        only_keys(*sq, {"source", "target"}, where + ".squares");
        nf.source_squares = as_string(field(*sq, "source", where), where);
        nf.target_squares = as_string(field(*sq, "target", where), where);
        if (ws.square_set(*nf.source_squares).category != src)
          throw Error("square set '" + *nf.source_squares + "' is not on the source");
        if (ws.square_set(*nf.target_squares).category != tgt)
          throw Error("square set '" + *nf.target_squares + "' is not on the target");
      }
      if (const Json* p = optional_field(j, "point")) {
        nf.point = as_string(*p, where);
        const auto& pt = ws.point(*nf.point);
        if (pt.category != src) throw Error("point '" + *nf.point + "' is not on the source");
        if (nf.topology && pt.topology != *nf.topology)
          throw Error("point '" + *nf.point + "' uses a different topology");
      }
      ws.functors.push_back(std::move(nf));
    });
  }

  if (const Json* b = optional_field(doc, "bounds")) parse_bounds(*b, ws.bounds);
  return out;
}

LoadResult load_workspace_text(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.what());
  }
  return load_workspace(doc);
}

LoadResult load_workspace_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return load_workspace_text(text.str());
}

Json save_workspace(const Workspace& ws) {
  Json doc = Json::object();

  Json categories = Json::array();
  for (const auto& c : ws.categories) {
    Json j = {{"name", c.name}};
    j.update(save_category(*c.category));
    categories.push_back(j);
  }
  doc["categories"] = categories;

  Json functors = Json::array();
  for (const auto& f : ws.functors) {
    const FinCat& C = *f.functor.source;
    const FinCat& D = *f.functor.target;
    Json objects = Json::object(), morphisms = Json::object();
    for (ObjId x = 0; x < static_cast<ObjId>(C.object_count()); ++x)
      objects[C.object_name(x)] = D.object_name(f.functor.obj(x));
    for (MorId m = 0; m < static_cast<MorId>(C.morphism_count()); ++m)
      morphisms[C.morphism_name(m)] = D.morphism_name(f.functor.mor(m));
    Json j = {{"name", f.name}, {"source", f.source}, {"target", f.target}, {"objects", objects},
              {"morphisms", morphisms}};
    if (f.topology) j["topology"] = *f.topology;
    if (f.source_squares) j["squares"] = {{"source", *f.source_squares}, {"target", *f.target_squares}};
    if (f.point) j["point"] = *f.point;
    functors.push_back(j);
  }
  doc["functors"] = functors;

  Json squares = Json::array();
  for (const auto& s : ws.squares) {
    const FinCat& c = *ws.category(s.category);
    Json unions = Json::array();
    for (const auto& sq : s.squares.unions) unions.push_back(save_square(c, sq));
    squares.push_back(
        {{"name", s.name}, {"category", s.category}, {"unions", unions}, {"monos", name_list(c, s.squares.monos)}});
  }
  doc["squares"] = squares;

  Json covers = Json::array();
  for (const auto& s : ws.covers) {
    const FinCat& c = *ws.category(s.category);
    Json list = Json::array();
    for (const auto& per_object : s.pretopology.covers)
      for (const auto& cover : per_object)
        list.push_back({{"object", c.object_name(cover.base)}, {"family", name_list(c, cover.family)}});
    covers.push_back({{"name", s.name}, {"category", s.category}, {"covers", list}});
  }
  doc["covers"] = covers;

  Json topologies = Json::array();
  for (const auto& t : ws.topologies) {
    const FinCat& c = *ws.category(t.category);
    Json j = {{"name", t.name}, {"category", t.category}};
    if (!t.seeds.empty()) {
      Json seeds = Json::array();
      for (const auto& s : t.seeds) seeds.push_back(save_sieve(c, s));
      j["seeds"] = seeds;
    }
    if (t.from_covers) j["from_covers"] = *t.from_covers;
    Json sieves = Json::array();
    for (const auto& s : covering_sieves(t.topology)) sieves.push_back(save_sieve(c, s));
    j["sieves"] = sieves;
    topologies.push_back(j);
  }
  doc["topologies"] = topologies;

  Json presheaves = Json::array();
  for (const auto& p : ws.presheaves) {
    Json j = {{"name", p.name}, {"category", p.category}};
    j.update(save_presheaf(p.presheaf));
    presheaves.push_back(j);
  }
  doc["presheaves"] = presheaves;

  Json points = Json::array();
  for (const auto& p : ws.points) {
    points.push_back({{"name", p.name},
                      {"category", p.category},
                      {"topology", p.topology},
                      {"object", ws.category(p.category)->object_name(p.object)}});
  }
  doc["points"] = points;
  doc["bounds"] = save_bounds(ws.bounds);
  return doc;
}

namespace {

bool same_square(const Square& a, const Square& b) {
  return a.top == b.top && a.left == b.left && a.right == b.right && a.bottom == b.bottom;
}

bool same_covers(const Pretopology& a, const Pretopology& b) {
  if (a.covers.size() != b.covers.size()) return false;
  for (std::size_t u = 0; u < a.covers.size(); ++u) {
    if (a.covers[u].size() != b.covers[u].size()) return false;
    for (std::size_t i = 0; i < a.covers[u].size(); ++i)
      if (a.covers[u][i].base != b.covers[u][i].base || a.covers[u][i].family != b.covers[u][i].family) return false;
  }
  return true;
}

template <class T, class Eq>
bool same_list(const std::vector<T>& a, const std::vector<T>& b, Eq eq) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), eq);
}

}  // namespace

bool equivalent(const Workspace& a, const Workspace& b) {
  auto categories = [](const NamedCategory& x, const NamedCategory& y) {
    return x.name == y.name && *x.category == *y.category;
  };
  auto functors = [](const NamedFunctor& x, const NamedFunctor& y) {
    return x.name == y.name && x.source == y.source && x.target == y.target &&
           x.functor.on_objects == y.functor.on_objects && x.functor.on_morphisms == y.functor.on_morphisms &&
           x.topology == y.topology && x.source_squares == y.source_squares &&
           x.target_squares == y.target_squares && x.point == y.point;
  };
  auto squares = [](const NamedSquares& x, const NamedSquares& y) {
    return x.name == y.name && x.category == y.category && x.squares.monos == y.squares.monos &&
           same_list(x.squares.unions, y.squares.unions, same_square);
  };
  auto covers = [](const NamedCovers& x, const NamedCovers& y) {
    return x.name == y.name && x.category == y.category && same_covers(x.pretopology, y.pretopology);
  };
  auto topologies = [](const NamedTopology& x, const NamedTopology& y) {
    return x.name == y.name && x.category == y.category && x.seeds == y.seeds && x.from_covers == y.from_covers &&
           x.topology == y.topology;
  };
  auto presheaves = [](const NamedPresheaf& x, const NamedPresheaf& y) {
    return x.name == y.name && x.category == y.category && x.presheaf.sizes == y.presheaf.sizes &&
           x.presheaf.restriction == y.presheaf.restriction && x.presheaf.labels == y.presheaf.labels;
  };
  auto points = [](const NamedPoint& x, const NamedPoint& y) {
    return x.name == y.name && x.category == y.category && x.topology == y.topology && x.object == y.object;
  };
  const Bounds& p = a.bounds;
  const Bounds& q = b.bounds;
  const bool bounds = p.sieves == q.sieves && p.hom == q.hom && p.samples == q.samples && p.fibre == q.fibre &&
                      p.candidates == q.candidates && p.witt_primes == q.witt_primes &&
                      p.witt_length == q.witt_length && p.witt_rings == q.witt_rings &&
                      p.witt_ring_length == q.witt_ring_length && p.witt_ring_size == q.witt_ring_size;
  return bounds && same_list(a.categories, b.categories, categories) &&
         same_list(a.functors, b.functors, functors) && same_list(a.squares, b.squares, squares) &&
         same_list(a.covers, b.covers, covers) && same_list(a.topologies, b.topologies, topologies) &&
         same_list(a.presheaves, b.presheaves, presheaves) && same_list(a.points, b.points, points);
}

}  // namespace catsite
