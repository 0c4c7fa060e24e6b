#pragma once

// Small categories, sites and presheaves shared by the unit tests.

#include <random>
#include <string>
#include <vector>

#include "catsite/fincat.hpp"
#include "catsite/group.hpp"
#include "catsite/sheaves.hpp"
#include "catsite/sites.hpp"

namespace fixtures {

using namespace catsite;

/// Opens of the discrete two-point space: empty, U0, U1, X.
inline CatPtr two_point_opens() {
  return std::make_shared<const FinCat>(poset_category(
      {"empty", "U0", "U1", "X"}, {{"empty", "U0"}, {"empty", "U1"}, {"U0", "X"}, {"U1", "X"}}));
}

/// Jointly surjective covers: {U0, U1} covers X and the empty family covers empty.
inline Topology open_cover_topology(const FinCat& c) {
  return generate_topology(c, {Sieve{c.object("empty"), {}},
                               generate_sieve(c, {c.object("X"), {c.morphism_id("U0<=X"), c.morphism_id("U1<=X")}})});
}

/// Functor into a category with at most one arrow between any two objects,
/// given by the target object name of each source object.
inline Functor poset_functor(CatPtr src, CatPtr tgt, const std::vector<std::string>& images) {
  Functor F{src, tgt, {}, {}};
  for (const auto& name : images) F.on_objects.push_back(tgt->object(name));
  for (MorId f = 0; f < static_cast<MorId>(src->morphism_count()); ++f)
    F.on_morphisms.push_back(tgt->hom(F.obj(src->dom(f)), F.obj(src->cod(f))).front());
  return F;
}

/// Functor out of the terminal category picking `object`.
inline Functor point(CatPtr tgt, const std::string& object) {
  auto one = std::make_shared<const FinCat>(terminal_category());
  return Functor{one, tgt, {tgt->object(object)}, {tgt->identity(tgt->object(object))}};
}

/// The union square of the two-point space and its legs as designated monos.
inline DesignatedSquares open_gluing(const FinCat& c, const std::string& e, const std::string& a,
                                     const std::string& b, const std::string& u) {
  auto arrow = [&](const std::string& x, const std::string& y) { return c.morphism_id(x + "<=" + y); };
  DesignatedSquares d;
  d.unions.push_back({arrow(e, a), arrow(e, b), arrow(a, u), arrow(b, u)});
  d.monos = {arrow(e, a), arrow(e, b), arrow(a, u), arrow(b, u)};
  return d;
}

inline FinCat random_poset(std::mt19937& rng, int n, double density = 0.35) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("p" + std::to_string(i));
  std::vector<std::pair<std::string, std::string>> leq;
  std::bernoulli_distribution edge(density);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (edge(rng)) leq.emplace_back(names[i], names[j]);
  return poset_category(names, leq);
}

inline Topology random_topology(std::mt19937& rng, const FinCat& c, int seeds) {
  std::vector<Sieve> chosen;
  for (int k = 0; k < seeds; ++k) {
    const ObjId u = std::uniform_int_distribution<ObjId>(0, static_cast<ObjId>(c.object_count()) - 1)(rng);
    const auto sieves = all_sieves(c, u);
    chosen.push_back(sieves[std::uniform_int_distribution<std::size_t>(0, sieves.size() - 1)(rng)]);
  }
  return generate_topology(c, chosen);
}

/// A coproduct of random representables and constants, quotiented by a few
/// random element identifications.
inline Presheaf random_presheaf(std::mt19937& rng, CatPtr base, int parts = 3, int glue = 2) {
  const auto n = static_cast<ObjId>(base->object_count());
  std::uniform_int_distribution<ObjId> pick(0, n - 1);
  std::vector<Presheaf> pieces;
  for (int k = 0; k < parts; ++k) {
    if (std::bernoulli_distribution(0.25)(rng))
      pieces.push_back(constant_presheaf(base, 1));
    else
      pieces.push_back(representable(base, pick(rng)));
  }
  Presheaf p = coproduct(pieces).object;
  for (int k = 0; k < glue; ++k) {
    const ObjId u = pick(rng);
    if (p.size(u) < 2) continue;
    std::uniform_int_distribution<int> elem(0, p.size(u) - 1);
    const Presheaf yu = representable(base, u);
    p = coequalizer(yu, p, yoneda(p, u, elem(rng)), yoneda(p, u, elem(rng))).first;
  }
  return p;
}

/// k isomorphic copies x0..x(k-1) of the delooping of g: one arrow
/// "a:i->j" per element a and pair (i, j). Equivalent to the delooping.
inline CatPtr thickened_delooping(const FiniteGroup& g, int k) {
  FinCat c;
  for (int i = 0; i < k; ++i) c.add_object("x" + std::to_string(i));
  const int e = g.identity();
  auto id = [&](int i, int j, int a) { return (i * k + j) * g.order() + a; };
  std::vector<MorId> arrows(static_cast<std::size_t>(k * k * g.order()));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      for (int a = 0; a < g.order(); ++a)
        arrows[id(i, j, a)] = i == j && a == e ? c.identity(i)
                                               : c.add_morphism(g.elements[a] + ":" + std::to_string(i) + "->" +
                                                                    std::to_string(j),
                                                                i, j);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      for (int l = 0; l < k; ++l)
        for (int a = 0; a < g.order(); ++a)
          for (int b = 0; b < g.order(); ++b) c.set_compose(arrows[id(j, l, b)], arrows[id(i, j, a)], arrows[id(i, l, g.mul(b, a))]);
  return std::make_shared<const FinCat>(std::move(c));
}

/// B(C2) on X plus an object Y with hom(Y, X) = {u, su} and nothing else.
inline CatPtr delooping_with_tail() {
  FinCat c;
  const ObjId x = c.add_object("X");
  const ObjId y = c.add_object("Y");
  const MorId s = c.add_morphism("s", x, x);
  const MorId u = c.add_morphism("u", y, x);
  const MorId su = c.add_morphism("su", y, x);
  c.set_compose(s, s, c.identity(x));
  c.set_compose(s, u, su);
  c.set_compose(s, su, u);
  c.fill_identity_compositions();
  return std::make_shared<const FinCat>(std::move(c));
}

/// Functor from the delooping of g sending element a to `images[a]`.
inline Functor from_delooping(CatPtr src, CatPtr tgt, const std::string& object,
                              const std::vector<std::string>& images) {
  Functor F{src, tgt, {tgt->object(object)}, {}};
  for (MorId f = 0; f < static_cast<MorId>(src->morphism_count()); ++f) F.on_morphisms.push_back(tgt->morphism_id(images[f]));
  return F;
}

}  // namespace fixtures
