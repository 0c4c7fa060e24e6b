#include "catsite/galois.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>

#include "search.hpp"

namespace catsite {

namespace {

// Objects where a sheaf is forced to be a singleton.
std::vector<bool> degenerate_objects(const Site& site) {
  const auto& c = *site.category;
  std::vector<bool> out(c.object_count());
  for (ObjId u = 0; u < static_cast<ObjId>(c.object_count()); ++u)
    out[u] = site.topology.covers(empty_sieve(u));
  return out;
}

bool bijective(const std::vector<int>& map, int target_size) {
  if (static_cast<int>(map.size()) != target_size) return false;
  std::vector<char> hit(target_size, 0);
  for (int y : map) {
    if (y < 0 || y >= target_size || hit[y]) return false;
    hit[y] = 1;
  }
  return true;
}

using Perm = std::vector<int>;

Perm identity_perm(int n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

Perm inverse_perm(const Perm& p) {
  Perm q(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) q[p[i]] = static_cast<int>(i);
  return q;
}

// s∘t
Perm after(const Perm& s, const Perm& t) {
  Perm out(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) out[i] = s[t[i]];
  return out;
}

std::vector<Perm> all_perms(int n) {
  std::vector<Perm> out;
  Perm p = identity_perm(n);
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// Restriction maps of a locally constant presheaf of constant fibre size n,
// as permutations of 0..n-1 subject to A(g∘f) = A(f)∘A(g).
class PermutationSearch {
 public:
  struct Relation {
    MorId g, f, h;
  };

  PermutationSearch(int n, std::size_t morphisms, std::vector<Relation> relations)
      : n_(n), value_(morphisms), relations_(std::move(relations)), touching_(morphisms) {
    for (std::size_t r = 0; r < relations_.size(); ++r) {
      touching_[relations_[r].g].push_back(r);
      touching_[relations_[r].f].push_back(r);
      touching_[relations_[r].h].push_back(r);
    }
  }

  bool fix(MorId m, Perm p) { return assign(m, std::move(p)); }

  template <class Visit>
  void run(const std::vector<MorId>& free, Visit&& visit) {
    const auto perms = all_perms(n_);
    search(free, 0, perms, visit);
  }

  const std::vector<Perm>& values() const { return value_; }

 private:
  template <class Visit>
  void search(const std::vector<MorId>& free, std::size_t i, const std::vector<Perm>& perms, Visit& visit) {
    while (i < free.size() && !value_[free[i]].empty()) ++i;
    if (i == free.size()) {
      visit(value_);
      return;
    }
    for (const Perm& p : perms) {
      const std::size_t mark = trail_.size();
      if (assign(free[i], p)) search(free, i + 1, perms, visit);
      undo(mark);
    }
  }

  bool assign(MorId m, Perm p) {
    std::vector<std::pair<MorId, Perm>> stack;
    stack.emplace_back(m, std::move(p));
    while (!stack.empty()) {
      auto [var, val] = std::move(stack.back());
      stack.pop_back();
      if (!value_[var].empty()) {
        if (value_[var] != val) return false;
        continue;
      }
      value_[var] = std::move(val);
      trail_.push_back(var);
      for (std::size_t r : touching_[var]) {
        const auto& [g, f, h] = relations_[r];
        const Perm &vg = value_[g], &vf = value_[f], &vh = value_[h];
        const int known = !vg.empty() + !vf.empty() + !vh.empty();
        if (known == 3) {
          if (after(vf, vg) != vh) return false;
        } else if (known == 2) {
          if (vh.empty())
            stack.emplace_back(h, after(vf, vg));
          else if (vf.empty())
            stack.emplace_back(f, after(vh, inverse_perm(vg)));
          else
            stack.emplace_back(g, after(inverse_perm(vf), vh));
        }
      }
    }
    return true;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      value_[trail_.back()].clear();
      trail_.pop_back();
    }
  }

  int n_;
  std::vector<Perm> value_;
  std::vector<Relation> relations_;
  std::vector<std::vector<std::size_t>> touching_;
  std::vector<MorId> trail_;
};

int find_root(std::vector<int>& parent, int x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

}  // namespace

bool is_initial(const Presheaf& a, const Site& site) {
  const auto degenerate = degenerate_objects(site);
  for (ObjId u = 0; u < static_cast<ObjId>(a.sizes.size()); ++u)
    if (!degenerate[u] && a.size(u) > 0) return false;
  return true;
}

std::vector<Presheaf> decompose(const Presheaf& a, const Site& site) {
  const auto& c = *site.category;
  const auto degenerate = degenerate_objects(site);
  const auto n = static_cast<ObjId>(c.object_count());

  // Complemented subsheaves correspond to maps into 1 ⊔ 1 = a(2).
  const auto two = sheafify(constant_presheaf(site.category, 2), site.topology);
  std::vector<std::vector<char>> sets;
  for (const auto& chi : enumerate_nat_trans(a, two.sheaf)) {
    std::vector<char> in;
    for (ObjId u = 0; u < n; ++u) {
      if (degenerate[u]) continue;
      for (int x = 0; x < a.size(u); ++x) in.push_back(chi.components[u][x] == two.unit.components[u][1]);
    }
    if (std::find(in.begin(), in.end(), 1) != in.end()) sets.push_back(std::move(in));
  }
  std::sort(sets.begin(), sets.end());
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());

  auto contained = [](const std::vector<char>& s, const std::vector<char>& t) {
    for (std::size_t i = 0; i < s.size(); ++i)
      if (s[i] && !t[i]) return false;
    return true;
  };
  std::vector<Presheaf> out;
  for (const auto& s : sets) {
    bool atom = true;
    for (const auto& t : sets)
      if (t != s && contained(t, s)) atom = false;
    if (!atom) continue;
    std::vector<std::vector<int>> keep(n);
    std::size_t i = 0;
    for (ObjId u = 0; u < n; ++u)
      for (int x = 0; x < a.size(u); ++x)
        if (degenerate[u] || s[i++]) keep[u].push_back(x);
    out.push_back(subpresheaf(a, keep).first);
  }
  return out;
}

bool is_connected(const Presheaf& a, const Site& site) { return decompose(a, site).size() == 1; }

bool is_locally_constant(const Presheaf& a, const Site& site) {
  const auto& c = *site.category;
  const auto degenerate = degenerate_objects(site);
  for (MorId f = 0; f < static_cast<MorId>(c.morphism_count()); ++f) {
    if (degenerate[c.dom(f)] || degenerate[c.cod(f)]) continue;
    if (!bijective(a.restriction[f], a.size(c.dom(f)))) return false;
  }
  return true;
}

std::vector<Presheaf> connected_locally_constant(const Site& site, const FibreFunctor& fibre,
                                                 const GaloisBounds& bounds) {
  const auto& c = *site.category;
  const auto degenerate = degenerate_objects(site);
  const auto objects = static_cast<ObjId>(c.object_count());
  const auto morphisms = static_cast<MorId>(c.morphism_count());
  if (fibre.object < 0 || fibre.object >= objects) throw Error("fibre object out of range");
  if (degenerate[fibre.object])
    throw Error("fibre object " + c.object_name(fibre.object) + " is covered by the empty sieve");

  // Spanning tree of the non-degenerate objects, rooted at the fibre object.
  std::vector<char> seen(objects, 0);
  std::vector<MorId> tree;
  std::queue<ObjId> queue;
  queue.push(fibre.object);
  seen[fibre.object] = 1;
  while (!queue.empty()) {
    const ObjId u = queue.front();
    queue.pop();
    for (MorId f = 0; f < morphisms; ++f) {
      const ObjId a = c.dom(f), b = c.cod(f);
      if (degenerate[a] || degenerate[b]) continue;
      const ObjId other = a == u ? b : b == u ? a : kNone;
      if (other == kNone || seen[other]) continue;
      seen[other] = 1;
      tree.push_back(f);
      queue.push(other);
    }
  }
  for (ObjId u = 0; u < objects; ++u)
    if (!degenerate[u] && !seen[u])
      throw Error("object " + c.object_name(u) + " is not connected to the fibre object " +
                  c.object_name(fibre.object));

  auto live = [&](MorId f) { return !degenerate[c.dom(f)] && !degenerate[c.cod(f)]; };
  std::vector<PermutationSearch::Relation> relations;
  for (MorId g = 0; g < morphisms; ++g)
    for (MorId f : c.arrows_into(c.dom(g)))
      if (live(g) && live(f)) relations.push_back({g, f, c.compose(g, f)});
  std::vector<MorId> free;
  for (MorId f = 0; f < morphisms; ++f)
    if (live(f) && !c.is_identity(f) && std::find(tree.begin(), tree.end(), f) == tree.end()) free.push_back(f);

  std::vector<Presheaf> found;
  std::size_t candidates = 0;
  for (int n = 1; n <= bounds.fibre; ++n) {
    PermutationSearch search(n, morphisms, relations);
    bool consistent = true;
    for (ObjId u = 0; u < objects; ++u)
      if (!degenerate[u]) consistent = consistent && search.fix(c.identity(u), identity_perm(n));
    for (MorId f : tree) consistent = consistent && search.fix(f, identity_perm(n));
    if (!consistent) continue;
    const std::size_t first_of_size = found.size();
    search.run(free, [&](const std::vector<Perm>& value) {
      if (++candidates > bounds.candidates) throw BoundExceeded("locally constant candidate count", bounds.candidates);
      // Orbits of the fibre; every object is identified with the fibre
      // object along the tree.
      std::vector<int> parent(n);
      std::iota(parent.begin(), parent.end(), 0);
      for (MorId f : free)
        for (int x = 0; x < n; ++x) parent[find_root(parent, x)] = find_root(parent, value[f][x]);
      for (int x = 0; x < n; ++x)
        if (find_root(parent, x) != find_root(parent, 0)) return;

      Presheaf a{site.category, std::vector<int>(objects), std::vector<std::vector<int>>(morphisms), {}};
      for (ObjId u = 0; u < objects; ++u) a.sizes[u] = degenerate[u] ? 1 : n;
      for (MorId f = 0; f < morphisms; ++f)
        a.restriction[f] = live(f) ? value[f] : std::vector<int>(a.sizes[c.cod(f)], 0);
      if (!is_sheaf(a, site.topology)) return;
      for (std::size_t k = first_of_size; k < found.size(); ++k)
        if (find_isomorphism(found[k], a)) return;
      found.push_back(std::move(a));
    });
  }
  return found;
}

std::optional<NormalObject> as_normal(const Presheaf& a, const Site& site, const FibreFunctor& fibre) {
  if (is_initial(a, site) || !is_connected(a, site)) return std::nullopt;
  auto endos = enumerate_nat_trans(a, a);
  if (static_cast<int>(endos.size()) != fibre(a)) return std::nullopt;
  for (const auto& e : endos)
    if (!is_iso(e, a, a)) return std::nullopt;

  const NatTrans id = identity_nat(a);
  std::stable_partition(endos.begin(), endos.end(), [&](const NatTrans& e) { return e == id; });
  std::map<NatTrans, int> index;
  for (std::size_t i = 0; i < endos.size(); ++i) index[endos[i]] = static_cast<int>(i);

  NormalObject out{a, endos, {}};
  const int order = static_cast<int>(endos.size());
  out.group.table.assign(order, std::vector<int>(order));
  for (int i = 0; i < order; ++i) {
    out.group.elements.push_back(i == 0 ? "id" : "a" + std::to_string(i));
    for (int j = 0; j < order; ++j) out.group.table[i][j] = index.at(compose(endos[i], endos[j]));
  }
  return out;
}

std::vector<NormalObject> find_normal_objects(const Site& site, const FibreFunctor& fibre,
                                              const GaloisBounds& bounds) {
  std::vector<NormalObject> out;
  for (const auto& a : connected_locally_constant(site, fibre, bounds))
    if (auto n = as_normal(a, site, fibre)) out.push_back(std::move(*n));
  return out;
}

FundamentalGroup fundamental_group(const Site& site, const FibreFunctor& fibre, const GaloisBounds& bounds) {
  const auto connected = connected_locally_constant(site, fibre, bounds);
  FundamentalGroup out;
  for (const auto& a : connected)
    if (auto n = as_normal(a, site, fibre)) out.normals.push_back(std::move(*n));
  const std::size_t k = out.normals.size();

  for (const auto& n : out.normals) {
    bool dominates = true;
    for (const auto& a : connected) dominates = dominates && count_nat_trans(n.object, a) > 0;
    out.cofinal = out.cofinal || dominates;
  }

  // Level i: fibre permutations commuting with Aut(N_i).
  std::vector<std::vector<Perm>> level(k);
  for (std::size_t i = 0; i < k; ++i) {
    const auto& n = out.normals[i];
    for (const Perm& s : all_perms(fibre(n.object))) {
      bool commutes = true;
      for (const auto& a : n.automorphisms) commutes = commutes && after(s, fibre(a)) == after(fibre(a), s);
      if (commutes) level[i].push_back(s);
    }
  }
  // Fibre components of the maps N_i -> N_j, i != j.
  std::vector<std::vector<std::vector<Perm>>> maps(k, std::vector<std::vector<Perm>>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (i != j)
        for (const auto& m : enumerate_nat_trans(out.normals[i].object, out.normals[j].object))
          maps[i][j].push_back(fibre(m));

  std::vector<std::vector<int>> tuples;  // indices into level[i]
  std::vector<int> choice(k);
  auto extend = [&](auto&& self, std::size_t i) -> void {
    if (i == k) {
      tuples.push_back(choice);
      return;
    }
    for (std::size_t c = 0; c < level[i].size(); ++c) {
      choice[i] = static_cast<int>(c);
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) {
        const Perm &si = level[i][c], &sj = level[j][choice[j]];
        for (const Perm& m : maps[i][j]) ok = ok && after(sj, m) == after(m, si);
        for (const Perm& m : maps[j][i]) ok = ok && after(si, m) == after(m, sj);
      }
      if (ok) self(self, i + 1);
    }
  };
  extend(extend, 0);

  std::map<std::vector<int>, int> tuple_index;
  for (std::size_t t = 0; t < tuples.size(); ++t) tuple_index[tuples[t]] = static_cast<int>(t);
  std::vector<std::map<Perm, int>> level_index(k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t c = 0; c < level[i].size(); ++c) level_index[i][level[i][c]] = static_cast<int>(c);

  const int order = static_cast<int>(tuples.size());
  out.group.table.assign(order, std::vector<int>(order));
  for (int s = 0; s < order; ++s) {
    out.group.elements.push_back("g" + std::to_string(s));
    for (int t = 0; t < order; ++t) {
      std::vector<int> prod(k);
      for (std::size_t i = 0; i < k; ++i)
        prod[i] = level_index[i].at(after(level[i][tuples[s][i]], level[i][tuples[t][i]]));
      out.group.table[s][t] = tuple_index.at(prod);
    }
  }
  if (k == 0) {
    // No normal objects within the bound: the empty limit is trivial.
    out.group = {{"g0"}, {{0}}};
  }

  for (std::size_t i = 0; i < k; ++i) {
    TowerLevel t;
    t.normal = i;
    const int m = static_cast<int>(level[i].size());
    t.group.table.assign(m, std::vector<int>(m));
    for (int a = 0; a < m; ++a) {
      t.group.elements.push_back("s" + std::to_string(a));
      for (int b = 0; b < m; ++b) t.group.table[a][b] = level_index[i].at(after(level[i][a], level[i][b]));
    }
    for (const auto& tuple : tuples) t.projection.push_back(tuple[i]);
    out.tower.push_back(std::move(t));
  }
  return out;
}

bool Pi1Comparison::preconditions_hold() const {
  return std::all_of(preconditions.begin(), preconditions.end(), [](const Precondition& p) { return p.holds; });
}

Pi1Comparison check_pi1_isomorphism(const Functor& F, const Topology& j, const FibreFunctor& fibre,
                                    const GaloisBounds& bounds, const std::optional<AdhesionData>& squares) {
  Pi1Comparison out;
  const Site source{F.source, j};
  const Site target{F.target, build_adhesive_site(F, j)};
  const FibreFunctor image_fibre{F.obj(fibre.object)};

  if (squares) {
    const auto report = check_adhesion(F, squares->source, squares->target);
    out.preconditions.push_back(
        {"geometrically adhesive", report.adhesive(), report.witnesses.empty() ? "" : report.witnesses.front().detail});
  }

  std::vector<Presheaf> source_lcf, target_lcf;
  Precondition galois{"Galois fibre functor on the source", true, ""};
  try {
    source_lcf = connected_locally_constant(source, fibre, bounds);
    const auto exact = fibre_is_exact(source, fibre, source_lcf, 2);
    const auto reflects = fibre_reflects_isos(source, fibre, source_lcf);
    galois.holds = exact.holds && reflects.holds;
    galois.detail = exact.holds ? reflects.witness : exact.witness;
  } catch (const BoundExceeded&) {
    throw;
  } catch (const Error& e) {
    galois = {galois.name, false, e.what()};
  }
  out.preconditions.push_back(galois);

  Precondition faithful{"pullback fully faithful on locally constant sheaves", true, ""};
  try {
    target_lcf = connected_locally_constant(target, image_fibre, bounds);
    const auto full = pullback_full_on(F, target_lcf);
    const auto faith = pullback_faithful_on(F, target_lcf);
    faithful.holds = full.holds && faith.holds;
    faithful.detail = full.holds ? faith.witness : full.witness;
  } catch (const BoundExceeded&) {
    throw;
  } catch (const Error& e) {
    faithful = {faithful.name, false, e.what()};
  }
  out.preconditions.push_back(faithful);

  const bool linked = image_is_connected(F);
  out.preconditions.push_back(
      {"every target object has an arrow to or from the image", linked, linked ? "" : "isolated target object"});

  if (!out.preconditions_hold()) return out;
  out.source = fundamental_group(source, fibre, bounds);
  out.target = fundamental_group(target, image_fibre, bounds);
  out.isomorphism = find_group_isomorphism(out.source->group, out.target->group);
  out.holds = out.isomorphism.has_value();
  return out;
}

FibreCheck fibre_is_exact(const Site& site, const FibreFunctor& fibre, const std::vector<Presheaf>& sheaves,
                          std::size_t samples) {
  const auto& j = site.topology;
  const ObjId x = fibre.object;
  auto fail = [](std::string what) { return FibreCheck{false, std::move(what)}; };
  for (std::size_t p = 0; p < sheaves.size(); ++p) {
    for (std::size_t q = 0; q < sheaves.size(); ++q) {
      const Presheaf &P = sheaves[p], &Q = sheaves[q];
      const std::string pair = " on fixtures " + std::to_string(p) + ", " + std::to_string(q);
      if (product(P, Q).size(x) != fibre(P) * fibre(Q)) return fail("product" + pair);
      if (fibre(sheafify(coproduct({P, Q}).object, j).sheaf) != fibre(P) + fibre(Q)) return fail("coproduct" + pair);

      auto maps = enumerate_nat_trans(P, Q);
      if (maps.size() > samples) maps.resize(samples);
      for (const auto& a : maps) {
        for (const auto& b : maps) {
          int agree = 0;
          std::vector<int> parent(fibre(Q));
          std::iota(parent.begin(), parent.end(), 0);
          for (int e = 0; e < fibre(P); ++e) {
            agree += fibre(a)[e] == fibre(b)[e];
            parent[find_root(parent, fibre(a)[e])] = find_root(parent, fibre(b)[e]);
          }
          int classes = 0;
          for (int e = 0; e < fibre(Q); ++e) classes += find_root(parent, e) == e;
          if (fibre(equalizer(P, Q, a, b).first) != agree) return fail("equalizer" + pair);
          if (fibre(sheafify(coequalizer(P, Q, a, b).first, j).sheaf) != classes) return fail("coequalizer" + pair);
        }
      }
    }
  }
  return {};
}

FibreCheck fibre_reflects_isos(const Site& site, const FibreFunctor& fibre, const std::vector<Presheaf>& sheaves) {
  (void)site;
  for (std::size_t p = 0; p < sheaves.size(); ++p)
    for (std::size_t q = 0; q < sheaves.size(); ++q)
      for (const auto& a : enumerate_nat_trans(sheaves[p], sheaves[q]))
        if (bijective(fibre(a), fibre(sheaves[q])) && !is_iso(a, sheaves[p], sheaves[q]))
          return {false, "map " + std::to_string(p) + " -> " + std::to_string(q) +
                             " is bijective on fibres but not invertible"};
  return {};
}

// ---------------------------------------------------------------------------
// G-sets

Report validate_gset(const FiniteGroup& g, const GSet& x) {
  Report r;
  if (static_cast<int>(x.act.size()) != g.order()) {
    r.add("action table has " + std::to_string(x.act.size()) + " rows for a group of order " +
          std::to_string(g.order()));
    return r;
  }
  for (int a = 0; a < g.order(); ++a)
    if (!bijective(x.act[a], x.size)) r.add("element " + g.elements[a] + " does not act by a permutation");
  if (!r.ok()) return r;
  if (x.act[g.identity()] != identity_perm(x.size)) r.add("identity acts nontrivially");
  for (int a = 0; a < g.order(); ++a)
    for (int b = 0; b < g.order(); ++b)
      if (after(x.act[a], x.act[b]) != x.act[g.mul(a, b)])
        r.add("action of " + g.elements[a] + "·" + g.elements[b] + " is not the composite");
  return r;
}

GSet regular_gset(const FiniteGroup& g) { return {g.order(), g.table}; }

std::vector<std::vector<int>> equivariant_maps(const FiniteGroup& g, const GSet& a, const GSet& b) {
  std::vector<std::vector<detail::Edge>> edges(a.size);
  for (int e = 0; e < g.order(); ++e)
    for (int x = 0; x < a.size; ++x) edges[x].push_back({a.act[e][x], &b.act[e]});
  detail::PropagationSearch search(std::vector<int>(a.size, b.size), std::move(edges));
  std::vector<std::vector<int>> out;
  search.run([&](const std::vector<int>& v) {
    out.push_back(v);
    return true;
  });
  return out;
}

GSet transport(const FiniteGroup& g, const FiniteGroup& h, const GroupMap& iso, const GSet& x) {
  if (!is_isomorphism(g, h, iso)) throw Error("transport along a map that is not a group isomorphism");
  GSet out{x.size, std::vector<std::vector<int>>(h.order())};
  for (int a = 0; a < g.order(); ++a) out.act[iso[a]] = x.act[a];
  return out;
}

GroupMap inverse_map(const GroupMap& iso) {
  GroupMap inv(iso.size());
  for (std::size_t a = 0; a < iso.size(); ++a) inv[iso[a]] = static_cast<int>(a);
  return inv;
}

std::vector<int> canonical_subgroup(const FiniteGroup& g, std::vector<int> subgroup) {
  std::sort(subgroup.begin(), subgroup.end());
  std::vector<int> best = subgroup;
  for (int k = 0; k < g.order(); ++k) {
    std::vector<int> conj;
    for (int s : subgroup) conj.push_back(g.mul(g.mul(k, s), g.inverse(k)));
    std::sort(conj.begin(), conj.end());
    best = std::min(best, conj);
  }
  return best;
}

std::vector<std::pair<int, std::vector<int>>> orbit_types(const FiniteGroup& g, const GSet& x) {
  std::vector<char> done(x.size, 0);
  std::vector<std::pair<int, std::vector<int>>> out;
  for (int r = 0; r < x.size; ++r) {
    if (done[r]) continue;
    std::set<int> orbit;
    std::vector<int> stabilizer;
    for (int a = 0; a < g.order(); ++a) {
      orbit.insert(x.act[a][r]);
      if (x.act[a][r] == r) stabilizer.push_back(a);
    }
    for (int y : orbit) done[y] = 1;
    out.emplace_back(static_cast<int>(orbit.size()), canonical_subgroup(g, stabilizer));
  }
  std::sort(out.begin(), out.end());
  return out;
}

Presheaf gset_presheaf(const FiniteGroup& g, CatPtr delooping, const GSet& x) {
  const auto& c = *delooping;
  if (c.object_count() != 1 || static_cast<int>(c.morphism_count()) != g.order())
    throw Error("category is not a delooping of a group of order " + std::to_string(g.order()));
  Presheaf p{delooping, {x.size}, std::vector<std::vector<int>>(c.morphism_count()), {}};
  for (MorId f = 0; f < static_cast<MorId>(c.morphism_count()); ++f) {
    int a = g.identity();
    if (!c.is_identity(f)) {
      const auto it = std::find(g.elements.begin(), g.elements.end(), c.morphism_name(f));
      if (it == g.elements.end()) throw Error("morphism " + c.morphism_name(f) + " is not a group element");
      a = static_cast<int>(it - g.elements.begin());
    }
    p.restriction[f] = x.act[g.inverse(a)];
  }
  return p;
}

}  // namespace catsite
