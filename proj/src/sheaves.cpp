#include "catsite/sheaves.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "search.hpp"

namespace catsite {

std::string Presheaf::label(ObjId u, int x) const {
  if (u < static_cast<ObjId>(labels.size()) && x < static_cast<int>(labels[u].size())) return labels[u][x];
  return std::to_string(x);
}

int Presheaf::total_size() const { return std::accumulate(sizes.begin(), sizes.end(), 0); }

Report validate_presheaf(const Presheaf& p) {
  Report r;
  if (!p.base) {
    r.add("presheaf has no base category");
    return r;
  }
  const FinCat& c = *p.base;
  if (p.sizes.size() != c.object_count() || p.restriction.size() != c.morphism_count()) {
    r.add("presheaf does not assign data to every object and morphism");
    return r;
  }
  for (MorId f = 0; f < static_cast<MorId>(c.morphism_count()); ++f) {
    const auto& map = p.restriction[f];
    if (static_cast<int>(map.size()) != p.size(c.cod(f)) ||
        std::any_of(map.begin(), map.end(), [&](int v) { return v < 0 || v >= p.size(c.dom(f)); })) {
      r.add("restriction along " + c.morphism_name(f) + " is not a function P(" + c.object_name(c.cod(f)) +
            ") -> P(" + c.object_name(c.dom(f)) + ")");
    }
  }
  if (!r.ok()) return r;
  for (ObjId u = 0; u < static_cast<ObjId>(c.object_count()); ++u) {
    const auto& map = p.restriction[c.identity(u)];
    for (int x = 0; x < p.size(u); ++x) {
      if (map[x] != x) {
        r.add("restriction along the identity of " + c.object_name(u) + " is not the identity");
        break;
      }
    }
  }
  for (MorId f = 0; f < static_cast<MorId>(c.morphism_count()); ++f) {
    for (MorId g : c.arrows_from(c.cod(f))) {
      const MorId gf = c.compose(g, f);
      for (int x = 0; x < p.size(c.cod(g)); ++x) {
        if (p.restrict(gf, x) != p.restrict(f, p.restrict(g, x))) {
          r.add("contravariance fails at " + c.morphism_name(g) + "∘" + c.morphism_name(f));
          break;
        }
      }
    }
  }
  return r;
}

void fill_identity_restrictions(Presheaf& p) {
  const FinCat& c = *p.base;
  p.restriction.resize(c.morphism_count());
  for (ObjId u = 0; u < static_cast<ObjId>(c.object_count()); ++u) {
    auto& map = p.restriction[c.identity(u)];
    map.resize(p.size(u));
    std::iota(map.begin(), map.end(), 0);
  }
}

Presheaf constant_presheaf(CatPtr base, int n) {
  Presheaf p{base, std::vector<int>(base->object_count(), n), {}, {}};
  std::vector<int> id(n);
  std::iota(id.begin(), id.end(), 0);
  p.restriction.assign(base->morphism_count(), id);
  return p;
}

Presheaf empty_presheaf(CatPtr base) { return constant_presheaf(std::move(base), 0); }

Presheaf representable(CatPtr base, ObjId x) {
  const FinCat& c = *base;
  Presheaf p{base, {}, {}, {}};
  p.labels.resize(c.object_count());
  for (ObjId u = 0; u < static_cast<ObjId>(c.object_count()); ++u) {
    p.sizes.push_back(static_cast<int>(c.hom(u, x).size()));
    for (MorId h : c.hom(u, x)) p.labels[u].push_back(c.morphism_name(h));
  }
  p.restriction.resize(c.morphism_count());
  for (MorId f = 0; f < static_cast<MorId>(c.morphism_count()); ++f) {
    const auto& from = c.hom(c.cod(f), x);
    const auto& to = c.hom(c.dom(f), x);
    for (MorId h : from) {
      const MorId hf = c.compose(h, f);
      p.restriction[f].push_back(static_cast<int>(std::find(to.begin(), to.end(), hf) - to.begin()));
    }
  }
  return p;
}

bool is_natural(const Presheaf& p, const Presheaf& q, const NatTrans& a) {
  const FinCat& c = *p.base;
  if (a.components.size() != c.object_count()) return false;
  for (ObjId u = 0; u < static_cast<ObjId>(c.object_count()); ++u) {
    if (static_cast<int>(a.components[u].size()) != p.size(u)) return false;
    for (int v : a.components[u])
      if (v < 0 || v >= q.size(u)) return false;
  }
  for (MorId f = 0; f < static_cast<MorId>(c.morphism_count()); ++f) {
    const ObjId u = c.cod(f), v = c.dom(f);
    for (int x = 0; x < p.size(u); ++x) {
      if (a.components[v][p.restrict(f, x)] != q.restrict(f, a.components[u][x])) return false;
    }
  }
  return true;
}

bool is_iso(const NatTrans& a, const Presheaf& p, const Presheaf& q) {
  for (std::size_t u = 0; u < a.components.size(); ++u) {
    if (p.sizes[u] != q.sizes[u]) return false;
    std::set<int> image(a.components[u].begin(), a.components[u].end());
    if (static_cast<int>(image.size()) != q.sizes[u]) return false;
  }
  return true;
}

NatTrans identity_nat(const Presheaf& p) {
  NatTrans a;
  for (int n : p.sizes) {
    a.components.emplace_back(n);
    std::iota(a.components.back().begin(), a.components.back().end(), 0);
  }
  return a;
}

NatTrans yoneda(const Presheaf& p, ObjId u, int x) {
  const FinCat& c = *p.base;
  NatTrans a;
  for (ObjId v = 0; v < static_cast<ObjId>(c.object_count()); ++v) {
    a.components.emplace_back();
    for (MorId h : c.hom(v, u)) a.components.back().push_back(p.restrict(h, x));
  }
  return a;
}

NatTrans compose(const NatTrans& b, const NatTrans& a) {
  NatTrans c;
  for (std::size_t u = 0; u < a.components.size(); ++u) {
    c.components.emplace_back();
    for (int x : a.components[u]) c.components.back().push_back(b.components[u][x]);
  }
  return c;
}

namespace {

// Variables are (object, element of P) pairs; edges force naturality along
// each non-identity morphism.
struct NatTransProblem {
  std::vector<std::pair<ObjId, int>> vars;
  std::vector<int> offset;
  std::vector<int> domain;
  std::vector<std::vector<detail::Edge>> edges;
  std::vector<int> groups;

  NatTransProblem(const Presheaf& p, const Presheaf& q, bool bijective) {
    const FinCat& c = *p.base;
    const auto n = static_cast<ObjId>(c.object_count());
    offset.resize(n + 1, 0);
    for (ObjId u = 0; u < n; ++u) {
      offset[u + 1] = offset[u] + p.size(u);
      for (int x = 0; x < p.size(u); ++x) {
        vars.emplace_back(u, x);
        domain.push_back(q.size(u));
        groups.push_back(u);
      }
    }
    edges.resize(vars.size());
    for (MorId f = 0; f < static_cast<MorId>(c.morphism_count()); ++f) {
      if (c.is_identity(f)) continue;
      const ObjId u = c.cod(f), v = c.dom(f);
      for (int x = 0; x < p.size(u); ++x) {
        edges[offset[u] + x].push_back({offset[v] + p.restrict(f, x), &q.restriction[f]});
      }
    }
    if (!bijective) groups.clear();
  }

  NatTrans decode(const std::vector<int>& values, const Presheaf& p) const {
    NatTrans a;
    a.components.resize(p.sizes.size());
    for (std::size_t u = 0; u < p.sizes.size(); ++u)
      a.components[u].assign(values.begin() + offset[u], values.begin() + offset[u + 1]);
    return a;
  }
};

}  // namespace

std::vector<NatTrans> enumerate_nat_trans(const Presheaf& p, const Presheaf& q, std::size_t bound) {
  NatTransProblem problem(p, q, false);
  detail::PropagationSearch search(problem.domain, problem.edges);
  std::vector<NatTrans> out;
  search.run([&](const std::vector<int>& values) {
    out.push_back(problem.decode(values, p));
    if (out.size() > bound) throw BoundExceeded("natural transformation enumeration", bound);
    return true;
  });
  return out;
}

std::size_t count_nat_trans(const Presheaf& p, const Presheaf& q) {
  NatTransProblem problem(p, q, false);
  detail::PropagationSearch search(problem.domain, problem.edges);
  std::size_t count = 0;
  search.run([&](const std::vector<int>&) {
    ++count;
    return true;
  });
  return count;
}

std::optional<NatTrans> find_isomorphism(const Presheaf& p, const Presheaf& q) {
  if (p.sizes != q.sizes) return std::nullopt;
  NatTransProblem problem(p, q, true);
  detail::PropagationSearch search(problem.domain, problem.edges, problem.groups,
                                   static_cast<int>(p.sizes.size()));
  std::optional<NatTrans> found;
  search.run([&](const std::vector<int>& values) {
    found = problem.decode(values, p);
    return false;
  });
  return found;
}

std::vector<std::vector<int>> matching_families(const Presheaf& p, const Sieve& s) {
  const FinCat& c = *p.base;
  const std::size_t k = s.arrows.size();
  std::vector<int> domain;
  std::vector<std::vector<detail::Edge>> edges(k);
  for (std::size_t i = 0; i < k; ++i) {
    const MorId a = s.arrows[i];
    domain.push_back(p.size(c.dom(a)));
    for (MorId g : c.arrows_into(c.dom(a))) {
      if (c.is_identity(g)) continue;
      const MorId ag = c.compose(a, g);
      const auto j = static_cast<int>(std::lower_bound(s.arrows.begin(), s.arrows.end(), ag) - s.arrows.begin());
      edges[i].push_back({j, &p.restriction[g]});
    }
  }
  std::vector<std::vector<int>> out;
  detail::PropagationSearch search(domain, edges);
  search.run([&](const std::vector<int>& values) {
    out.push_back(values);
    return true;
  });
  return out;
}

int count_amalgamations(const Presheaf& p, const MatchingFamily& family) {
  int count = 0;
  for (int x = 0; x < p.size(family.sieve.base); ++x) {
    bool ok = true;
    for (std::size_t i = 0; i < family.sieve.arrows.size() && ok; ++i) {
      ok = p.restrict(family.sieve.arrows[i], x) == family.choice[i];
    }
    if (ok) ++count;
  }
  return count;
}

SheafCheck check_sheaf_at(const Presheaf& p, const Sieve& s) {
  std::map<std::vector<int>, int> hits;
  for (int x = 0; x < p.size(s.base); ++x) {
    std::vector<int> restricted;
    for (MorId a : s.arrows) restricted.push_back(p.restrict(a, x));
    ++hits[restricted];
  }
  for (auto& family : matching_families(p, s)) {
    auto it = hits.find(family);
    const int count = it == hits.end() ? 0 : it->second;
    if (count != 1) return {false, SheafCounterexample{{s, std::move(family)}, count}};
  }
  return {};
}

SheafCheck check_sheaf(const Presheaf& p, const Topology& j) {
  for (const auto& per : j.covering) {
    for (const auto& s : per) {
      if (auto check = check_sheaf_at(p, s); !check.holds) return check;
    }
  }
  return {};
}

bool is_sheaf(const Presheaf& p, const Topology& j) { return check_sheaf(p, j).holds; }

bool check_refinement_equivalence(const FinCat& c, const Presheaf& p, const Cover& d, const Cover& e) {
  if (d.base != e.base) throw Error("refinement: covers on different objects");
  for (MorId m : e.family) {
    bool factors = false;
    for (MorId phi : d.family) {
      for (MorId h : c.hom(c.dom(m), c.dom(phi))) {
        if (c.compose(phi, h) == m) {
          factors = true;
          break;
        }
      }
      if (factors) break;
    }
    if (!factors) throw Error("refinement: " + c.morphism_name(m) + " does not factor through the coarser cover");
  }
  return check_sheaf_at(p, generate_sieve(c, d)).holds == check_sheaf_at(p, generate_sieve(c, e)).holds;
}

Sieve smallest_cover(const FinCat& c, const Topology& j, ObjId u) {
  Sieve s = maximal_sieve(c, u);
  for (const auto& t : j.covering.at(u)) s = intersect(s, t);
  return s;
}

namespace {

struct PlusData {
  Sheafification result;
  std::vector<Sieve> sieves;
  std::vector<std::map<std::vector<int>, int>> index;
};

PlusData plus_data(const Presheaf& p, const Topology& j) {
  const FinCat& c = *p.base;
  const auto n = static_cast<ObjId>(c.object_count());
  PlusData d;
  Presheaf& out = d.result.sheaf;
  out.base = p.base;
  out.sizes.resize(n);
  d.index.resize(n);
  std::vector<std::vector<std::vector<int>>> families(n);
  for (ObjId u = 0; u < n; ++u) {
    d.sieves.push_back(smallest_cover(c, j, u));
    families[u] = matching_families(p, d.sieves[u]);
    for (int i = 0; i < static_cast<int>(families[u].size()); ++i) d.index[u][families[u][i]] = i;
    out.sizes[u] = static_cast<int>(families[u].size());
  }
  out.restriction.resize(c.morphism_count());
  for (MorId g = 0; g < static_cast<MorId>(c.morphism_count()); ++g) {
    const ObjId u = c.cod(g), v = c.dom(g);
    const auto& su = d.sieves[u].arrows;
    for (const auto& x : families[u]) {
      std::vector<int> y;
      for (MorId h : d.sieves[v].arrows) {
        const MorId gh = c.compose(g, h);
        y.push_back(x[std::lower_bound(su.begin(), su.end(), gh) - su.begin()]);
      }
      out.restriction[g].push_back(d.index[v].at(y));
    }
  }
  NatTrans& unit = d.result.unit;
  unit.components.resize(n);
  for (ObjId u = 0; u < n; ++u) {
    for (int x = 0; x < p.size(u); ++x) {
      std::vector<int> family;
      for (MorId a : d.sieves[u].arrows) family.push_back(p.restrict(a, x));
      unit.components[u].push_back(d.index[u].at(family));
    }
  }
  return d;
}

}  // namespace

Sheafification plus_construction(const Presheaf& p, const Topology& j) { return plus_data(p, j).result; }

Sheafification sheafify(const Presheaf& p, const Topology& j) {
  const Sheafification once = plus_construction(p, j);
  Sheafification twice = plus_construction(once.sheaf, j);
  twice.unit = compose(twice.unit, once.unit);
  return twice;
}

NatTrans sheafify_map(const Presheaf& p, const Presheaf& q, const NatTrans& a, const Topology& j) {
  const FinCat& c = *p.base;
  auto step = [&](const Presheaf& from, const Presheaf& to, const NatTrans& alpha) {
    const PlusData dp = plus_data(from, j);
    const PlusData dq = plus_data(to, j);
    NatTrans out;
    out.components.resize(c.object_count());
    for (ObjId u = 0; u < static_cast<ObjId>(c.object_count()); ++u) {
      out.components[u].resize(dp.index[u].size());
      const auto& arrows = dp.sieves[u].arrows;
      for (const auto& [family, i] : dp.index[u]) {
        std::vector<int> mapped;
        for (std::size_t k = 0; k < family.size(); ++k) {
          mapped.push_back(alpha.components[c.dom(arrows[k])][family[k]]);
        }
        out.components[u][i] = dq.index[u].at(mapped);
      }
    }
    return std::make_tuple(dp.result.sheaf, dq.result.sheaf, out);
  };
  auto [p1, q1, a1] = step(p, q, a);
  auto [p2, q2, a2] = step(p1, q1, a1);
  return a2;
}

Coproduct coproduct(const std::vector<Presheaf>& parts) {
  if (parts.empty()) throw Error("coproduct of no presheaves needs a base; use empty_presheaf");
  const CatPtr base = parts.front().base;
  const FinCat& c = *base;
  Coproduct out;
  out.object.base = base;
  out.object.sizes.assign(c.object_count(), 0);
  out.object.restriction.resize(c.morphism_count());
  std::vector<std::vector<int>> offset(parts.size(), std::vector<int>(c.object_count(), 0));
  for (std::size_t k = 0; k < parts.size(); ++k) {
    for (ObjId u = 0; u < static_cast<ObjId>(c.object_count()); ++u) {
      offset[k][u] = out.object.sizes[u];
      out.object.sizes[u] += parts[k].size(u);
    }
  }
  for (MorId f = 0; f < static_cast<MorId>(c.morphism_count()); ++f) {
    for (std::size_t k = 0; k < parts.size(); ++k) {
      for (int x : parts[k].restriction[f]) out.object.restriction[f].push_back(x + offset[k][c.dom(f)]);
    }
  }
  for (std::size_t k = 0; k < parts.size(); ++k) {
    NatTrans inj;
    for (ObjId u = 0; u < static_cast<ObjId>(c.object_count()); ++u) {
      inj.components.emplace_back(parts[k].size(u));
      std::iota(inj.components.back().begin(), inj.components.back().end(), offset[k][u]);
    }
    out.injections.push_back(std::move(inj));
  }
  return out;
}

Presheaf product(const Presheaf& p, const Presheaf& q) {
  const FinCat& c = *p.base;
  Presheaf out{p.base, {}, {}, {}};
  for (ObjId u = 0; u < static_cast<ObjId>(c.object_count()); ++u) out.sizes.push_back(p.size(u) * q.size(u));
  out.restriction.resize(c.morphism_count());
  for (MorId f = 0; f < static_cast<MorId>(c.morphism_count()); ++f) {
    const int qd = q.size(c.dom(f));
    for (int x = 0; x < p.size(c.cod(f)); ++x)
      for (int y = 0; y < q.size(c.cod(f)); ++y)
        out.restriction[f].push_back(p.restrict(f, x) * qd + q.restrict(f, y));
  }
  return out;
}

std::pair<Presheaf, NatTrans> subpresheaf(const Presheaf& p, const std::vector<std::vector<int>>& keep) {
  const FinCat& c = *p.base;
  Presheaf out{p.base, {}, {}, {}};
  NatTrans inclusion;
  std::vector<std::vector<int>> position(c.object_count());
  out.labels.resize(c.object_count());
  inclusion.components.resize(c.object_count());
  for (ObjId u = 0; u < static_cast<ObjId>(c.object_count()); ++u) {
    position[u].assign(p.size(u), -1);
    auto elems = keep[u];
    std::sort(elems.begin(), elems.end());
    for (int x : elems) {
      position[u][x] = static_cast<int>(inclusion.components[u].size());
      inclusion.components[u].push_back(x);
      out.labels[u].push_back(p.label(u, x));
    }
    out.sizes.push_back(static_cast<int>(inclusion.components[u].size()));
  }
  out.restriction.resize(c.morphism_count());
  for (MorId f = 0; f < static_cast<MorId>(c.morphism_count()); ++f) {
    for (int x : inclusion.components[c.cod(f)]) {
      const int y = position[c.dom(f)][p.restrict(f, x)];
      if (y < 0) throw Error("subpresheaf: element set not closed under restriction");
      out.restriction[f].push_back(y);
    }
  }
  return {out, inclusion};
}

std::pair<Presheaf, NatTrans> equalizer(const Presheaf& p, const Presheaf&, const NatTrans& a, const NatTrans& b) {
  std::vector<std::vector<int>> keep(p.sizes.size());
  for (std::size_t u = 0; u < p.sizes.size(); ++u)
    for (int x = 0; x < p.sizes[u]; ++x)
      if (a.components[u][x] == b.components[u][x]) keep[u].push_back(x);
  return subpresheaf(p, keep);
}

std::pair<Presheaf, NatTrans> coequalizer(const Presheaf& p, const Presheaf& q, const NatTrans& a,
                                          const NatTrans& b) {
  const FinCat& c = *q.base;
  Presheaf out{q.base, {}, {}, {}};
  NatTrans projection;
  for (ObjId u = 0; u < static_cast<ObjId>(c.object_count()); ++u) {
    std::vector<int> parent(q.size(u));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (int x = 0; x < p.size(u); ++x) parent[find(a.components[u][x])] = find(b.components[u][x]);
    std::map<int, int> cls;
    projection.components.emplace_back();
    for (int y = 0; y < q.size(u); ++y) {
      auto [it, fresh] = cls.emplace(find(y), static_cast<int>(cls.size()));
      projection.components.back().push_back(it->second);
    }
    out.sizes.push_back(static_cast<int>(cls.size()));
  }
  out.restriction.resize(c.morphism_count());
  for (MorId f = 0; f < static_cast<MorId>(c.morphism_count()); ++f) {
    out.restriction[f].assign(out.size(c.cod(f)), -1);
    for (int y = 0; y < q.size(c.cod(f)); ++y) {
      out.restriction[f][projection.components[c.cod(f)][y]] =
          projection.components[c.dom(f)][q.restrict(f, y)];
    }
  }
  return {out, projection};
}

std::pair<Presheaf, NatTrans> image(const Presheaf& p, const Presheaf& q, const NatTrans& a) {
  std::vector<std::vector<int>> keep(q.sizes.size());
  for (std::size_t u = 0; u < q.sizes.size(); ++u) {
    std::set<int> hit(a.components[u].begin(), a.components[u].end());
    keep[u].assign(hit.begin(), hit.end());
  }
  (void)p;
  return subpresheaf(q, keep);
}

}  // namespace catsite
