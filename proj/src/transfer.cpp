#include "catsite/transfer.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

#include "search.hpp"

namespace catsite {

namespace {

std::string square_text(const FinCat& c, const Square& s) {
  return "(" + c.morphism_name(s.top) + ", " + c.morphism_name(s.left) + ", " + c.morphism_name(s.right) + ", " +
         c.morphism_name(s.bottom) + ")";
}

}  // namespace

AdhesiveReport check_adhesion(const Functor& F, const DesignatedSquares& src, const DesignatedSquares& tgt) {
  const FinCat& c = *F.source;
  const FinCat& d = *F.target;
  AdhesiveReport r;
  for (const Square& s : src.unions) {
    const Square t = map_square(F, s);
    const bool pullback = verify_square(d, t, SquareMode::pullback).holds;
    const bool pushout = verify_square(d, t, SquareMode::pushout).holds;
    if (!pullback) {
      r.preserves_intersections = false;
      r.witnesses.push_back({"intersections", s, "image " + square_text(d, t) + " is not a pullback"});
    }
    if (!pullback || !pushout) {
      r.preserves_unions = false;
      r.witnesses.push_back({"unions", s,
                             "image " + square_text(d, t) + " is not a " + (pullback ? "pushout" : "pullback")});
    }
  }
  for (MorId m : src.monos) {
    const MorId fm = F.mor(m);
    if (!d.is_identity(fm) && std::find(tgt.monos.begin(), tgt.monos.end(), fm) == tgt.monos.end()) {
      r.preserves_designated_monos = false;
      r.witnesses.push_back({"monos", Square{m}, c.morphism_name(m) + " maps to " + d.morphism_name(fm)});
    }
  }
  for (const Square& s : all_pushout_squares(c)) {
    const Square t = map_square(F, s);
    if (!verify_square(d, t, SquareMode::pushout).holds) {
      r.preserves_all_pushouts = false;
      r.witnesses.push_back({"pushouts", s, "image " + square_text(d, t) + " is not a pushout"});
    }
  }
  return r;
}

Cover image_cover(const Functor& F, const Cover& c) {
  Cover out{F.obj(c.base), {}};
  for (MorId f : c.family) out.family.push_back(F.mor(f));
  return out;
}

Topology build_adhesive_site(const Functor& F, const Topology& j) {
  std::vector<Sieve> seeds;
  for (const auto& per : j.covering)
    for (const Sieve& s : per) seeds.push_back(generate_sieve(*F.target, image_cover(F, {s.base, s.arrows})));
  return generate_topology(*F.target, seeds);
}

Pretopology image_pretopology(const Functor& F, const Pretopology& tau) {
  const FinCat& d = *F.target;
  Pretopology out;
  out.covers.resize(d.object_count());
  for (ObjId v = 0; v < static_cast<ObjId>(d.object_count()); ++v) out.covers[v].push_back({v, {d.identity(v)}});
  for (const auto& per : tau.covers)
    for (const Cover& cover : per) {
      Cover image = image_cover(F, cover);
      out.covers[image.base].push_back(std::move(image));
    }
  return out;
}

CoverReflection is_cover_reflecting(const Functor& F, const Topology& j, const Topology& k) {
  const FinCat& c = *F.source;
  for (ObjId u = 0; u < static_cast<ObjId>(c.object_count()); ++u) {
    for (const Sieve& t : k.covering[F.obj(u)]) {
      const bool refined = std::any_of(j.covering[u].begin(), j.covering[u].end(), [&](const Sieve& s) {
        return std::all_of(s.arrows.begin(), s.arrows.end(), [&](MorId f) { return t.contains(F.mor(f)); });
      });
      if (!refined) return {false, std::make_pair(u, t)};
    }
  }
  return {};
}

bool sheaf_on_image_covers(const Functor& F, const Topology& j, const Presheaf& g) {
  for (const auto& per : j.covering)
    for (const Sieve& s : per)
      if (!check_sheaf_at(g, generate_sieve(*F.target, image_cover(F, {s.base, s.arrows}))).holds) return false;
  return true;
}

Presheaf pullback_presheaf(const Functor& F, const Presheaf& g) {
  const FinCat& c = *F.source;
  Presheaf out{F.source, {}, {}, {}};
  const bool labelled = !g.labels.empty();
  for (ObjId u = 0; u < static_cast<ObjId>(c.object_count()); ++u) {
    out.sizes.push_back(g.size(F.obj(u)));
    if (labelled) out.labels.push_back(g.labels[F.obj(u)]);
  }
  for (MorId f = 0; f < static_cast<MorId>(c.morphism_count()); ++f) out.restriction.push_back(g.restriction[F.mor(f)]);
  return out;
}

NatTrans pullback_map(const Functor& F, const NatTrans& a) {
  NatTrans out;
  for (ObjId u = 0; u < static_cast<ObjId>(F.source->object_count()); ++u)
    out.components.push_back(a.components[F.obj(u)]);
  return out;
}

namespace {

// Elements (U, g: V -> FU, x in P(U)) of the coproduct presenting (F_! P)(V),
// grouped into classes.
struct LanData {
  Presheaf object;
  std::vector<std::map<std::tuple<ObjId, MorId, int>, int>> cls;

  int at(ObjId v, ObjId u, MorId g, int x) const {
    auto it = cls[v].find({u, g, x});
    return it == cls[v].end() ? -1 : it->second;
  }
};

LanData lan_data(const Functor& F, const Presheaf& p, const std::vector<bool>* objects = nullptr) {
  const FinCat& c = *F.source;
  const FinCat& d = *F.target;
  const auto nc = static_cast<ObjId>(c.object_count());
  const auto nd = static_cast<ObjId>(d.object_count());
  auto used = [&](ObjId u) { return !objects || (*objects)[u]; };

  LanData out;
  out.object.base = F.target;
  out.cls.resize(nd);
  std::vector<std::vector<std::tuple<ObjId, MorId, int>>> reps(nd);
  for (ObjId v = 0; v < nd; ++v) {
    std::vector<std::tuple<ObjId, MorId, int>> elems;
    std::map<std::tuple<ObjId, MorId, int>, int> index;
    for (ObjId u = 0; u < nc; ++u) {
      if (!used(u)) continue;
      for (MorId g : d.hom(v, F.obj(u)))
        for (int x = 0; x < p.size(u); ++x) {
          index[{u, g, x}] = static_cast<int>(elems.size());
          elems.emplace_back(u, g, x);
        }
    }
    std::vector<int> parent(elems.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int i) {
      while (parent[i] != i) i = parent[i] = parent[parent[i]];
      return i;
    };
    // (U, F(h) ∘ g, x) ~ (U', g, P(h) x) for h: U' -> U.
    for (MorId h = 0; h < static_cast<MorId>(c.morphism_count()); ++h) {
      const ObjId u = c.cod(h), u2 = c.dom(h);
      if (c.is_identity(h) || !used(u) || !used(u2)) continue;
      for (MorId g : d.hom(v, F.obj(u2))) {
        const MorId fg = d.compose(F.mor(h), g);
        for (int x = 0; x < p.size(u); ++x)
          parent[find(index.at({u, fg, x}))] = find(index.at({u2, g, p.restrict(h, x)}));
      }
    }
    std::map<int, int> number;
    for (std::size_t i = 0; i < elems.size(); ++i) {
      auto [it, fresh] = number.emplace(find(static_cast<int>(i)), static_cast<int>(number.size()));
      if (fresh) reps[v].push_back(elems[i]);
      out.cls[v][elems[i]] = it->second;
    }
    out.object.sizes.push_back(static_cast<int>(number.size()));
  }
  out.object.restriction.resize(d.morphism_count());
  for (MorId k = 0; k < static_cast<MorId>(d.morphism_count()); ++k) {
    const ObjId v = d.cod(k), v2 = d.dom(k);
    for (const auto& [u, g, x] : reps[v]) out.object.restriction[k].push_back(out.at(v2, u, d.compose(g, k), x));
  }
  return out;
}

NatTrans lan_unit_from(const Functor& F, const Presheaf& p, const LanData& data) {
  const FinCat& c = *F.source;
  NatTrans unit;
  for (ObjId u = 0; u < static_cast<ObjId>(c.object_count()); ++u) {
    unit.components.emplace_back();
    const ObjId fu = F.obj(u);
    for (int x = 0; x < p.size(u); ++x)
      unit.components.back().push_back(data.at(fu, u, F.target->identity(fu), x));
  }
  return unit;
}

}  // namespace

Presheaf lan_presheaf(const Functor& F, const Presheaf& p) { return lan_data(F, p).object; }

Extension lan_presheaf_restricted(const Functor& F, const Presheaf& p, const std::vector<bool>& objects) {
  LanData data = lan_data(F, p, &objects);
  NatTrans unit = lan_unit_from(F, p, data);
  return {std::move(data.object), std::move(unit)};
}

NatTrans lan_map(const Functor& F, const Presheaf& p, const Presheaf& q, const NatTrans& a) {
  const LanData dp = lan_data(F, p), dq = lan_data(F, q);
  NatTrans out;
  for (std::size_t v = 0; v < dp.cls.size(); ++v) {
    out.components.emplace_back(dp.object.sizes[v], -1);
    for (const auto& [key, k] : dp.cls[v]) {
      const auto& [u, g, x] = key;
      out.components[v][k] = dq.at(static_cast<ObjId>(v), u, g, a.components[u][x]);
    }
  }
  return out;
}

NatTrans lan_unit(const Functor& F, const Presheaf& p) { return lan_unit_from(F, p, lan_data(F, p)); }

NatTrans lan_counit(const Functor& F, const Presheaf& g) {
  const LanData data = lan_data(F, pullback_presheaf(F, g));
  NatTrans out;
  for (std::size_t v = 0; v < data.cls.size(); ++v) {
    out.components.emplace_back(data.object.sizes[v], -1);
    for (const auto& [key, k] : data.cls[v]) {
      const auto& [u, h, y] = key;
      out.components[v][k] = g.restrict(h, y);
    }
  }
  return out;
}

Presheaf lan_sheaf(const Functor& F, const Presheaf& p, const Topology& k) {
  return sheafify(lan_presheaf(F, p), k).sheaf;
}

namespace {

// Compatible families over the slots (U, g: FU -> V).
struct RanData {
  Presheaf object;
  std::vector<std::map<std::pair<ObjId, MorId>, int>> slot;
  std::vector<std::vector<std::vector<int>>> families;
  std::vector<std::map<std::vector<int>, int>> index;
};

RanData ran_data(const Functor& F, const Presheaf& p) {
  const FinCat& c = *F.source;
  const FinCat& d = *F.target;
  const auto nd = static_cast<ObjId>(d.object_count());
  RanData out;
  out.object.base = F.target;
  out.slot.resize(nd);
  out.families.resize(nd);
  out.index.resize(nd);
  for (ObjId v = 0; v < nd; ++v) {
    std::vector<int> domain;
    std::vector<std::pair<ObjId, MorId>> slots;
    for (ObjId u = 0; u < static_cast<ObjId>(c.object_count()); ++u)
      for (MorId g : d.hom(F.obj(u), v)) {
        out.slot[v][{u, g}] = static_cast<int>(slots.size());
        slots.emplace_back(u, g);
        domain.push_back(p.size(u));
      }
    std::vector<std::vector<detail::Edge>> edges(slots.size());
    for (std::size_t i = 0; i < slots.size(); ++i) {
      const auto [u, g] = slots[i];
      for (MorId h : c.arrows_into(u)) {
        if (c.is_identity(h)) continue;
        edges[i].push_back({out.slot[v].at({c.dom(h), d.compose(g, F.mor(h))}), &p.restriction[h]});
      }
    }
    detail::PropagationSearch search(domain, edges);
    search.run([&](const std::vector<int>& values) {
      out.index[v][values] = static_cast<int>(out.families[v].size());
      out.families[v].push_back(values);
      return true;
    });
    out.object.sizes.push_back(static_cast<int>(out.families[v].size()));
  }
  out.object.restriction.resize(d.morphism_count());
  for (MorId k = 0; k < static_cast<MorId>(d.morphism_count()); ++k) {
    const ObjId v = d.cod(k), v2 = d.dom(k);
    for (const auto& x : out.families[v]) {
      std::vector<int> y(out.slot[v2].size());
      for (const auto& [key, i] : out.slot[v2]) y[i] = x[out.slot[v].at({key.first, d.compose(k, key.second)})];
      out.object.restriction[k].push_back(out.index[v2].at(y));
    }
  }
  return out;
}

}  // namespace

Presheaf ran_presheaf(const Functor& F, const Presheaf& p) { return ran_data(F, p).object; }

NatTrans ran_map(const Functor& F, const Presheaf& p, const Presheaf& q, const NatTrans& a) {
  const RanData dp = ran_data(F, p), dq = ran_data(F, q);
  NatTrans out;
  for (std::size_t v = 0; v < dp.families.size(); ++v) {
    out.components.emplace_back();
    for (const auto& x : dp.families[v]) {
      std::vector<int> y(x.size());
      for (const auto& [key, i] : dp.slot[v]) y[i] = a.components[key.first][x[i]];
      out.components.back().push_back(dq.index[v].at(y));
    }
  }
  return out;
}

NatTrans ran_unit(const Functor& F, const Presheaf& g) {
  const RanData data = ran_data(F, pullback_presheaf(F, g));
  NatTrans out;
  for (ObjId v = 0; v < static_cast<ObjId>(data.families.size()); ++v) {
    out.components.emplace_back();
    for (int y = 0; y < g.size(v); ++y) {
      std::vector<int> family(data.slot[v].size());
      for (const auto& [key, i] : data.slot[v]) family[i] = g.restrict(key.second, y);
      out.components.back().push_back(data.index[v].at(family));
    }
  }
  return out;
}

NatTrans ran_counit(const Functor& F, const Presheaf& p) {
  const RanData data = ran_data(F, p);
  NatTrans out;
  for (ObjId u = 0; u < static_cast<ObjId>(F.source->object_count()); ++u) {
    const ObjId fu = F.obj(u);
    const int i = data.slot[fu].at({u, F.target->identity(fu)});
    out.components.emplace_back();
    for (const auto& x : data.families[fu]) out.components.back().push_back(x[i]);
  }
  return out;
}

PresheafFunctor pullback_functor(const Functor& F) {
  return {[F](const Presheaf& g) { return pullback_presheaf(F, g); },
          [F](const Presheaf&, const Presheaf&, const NatTrans& a) { return pullback_map(F, a); }};
}

Adjunction identity_adjunction() {
  const PresheafFunctor id{[](const Presheaf& p) { return p; },
                           [](const Presheaf&, const Presheaf&, const NatTrans& a) { return a; }};
  return {id, id, [](const Presheaf& p) { return identity_nat(p); }};
}

Adjunction lan_adjunction(const Functor& F) {
  return {{[F](const Presheaf& p) { return lan_presheaf(F, p); },
           [F](const Presheaf& p, const Presheaf& q, const NatTrans& a) { return lan_map(F, p, q, a); }},
          pullback_functor(F),
          [F](const Presheaf& p) { return lan_unit(F, p); }};
}

Adjunction ran_adjunction(const Functor& F) {
  return {pullback_functor(F),
          {[F](const Presheaf& p) { return ran_presheaf(F, p); },
           [F](const Presheaf& p, const Presheaf& q, const NatTrans& a) { return ran_map(F, p, q, a); }},
          [F](const Presheaf& g) { return ran_unit(F, g); }};
}

Adjunction lan_sheaf_adjunction(const Functor& F, const Topology& k) {
  return {{[F, k](const Presheaf& p) { return lan_sheaf(F, p, k); },
           [F, k](const Presheaf& p, const Presheaf& q, const NatTrans& a) {
             return sheafify_map(lan_presheaf(F, p), lan_presheaf(F, q), lan_map(F, p, q, a), k);
           }},
          pullback_functor(F),
          [F, k](const Presheaf& p) {
            const auto a = sheafify(lan_presheaf(F, p), k);
            return compose(pullback_map(F, a.unit), lan_unit(F, p));
          }};
}

Adjunction compose(const Adjunction& second, const Adjunction& first) {
  Adjunction out;
  out.left.on_objects = [=](const Presheaf& p) { return second.left.on_objects(first.left.on_objects(p)); };
  out.left.on_maps = [=](const Presheaf& p, const Presheaf& q, const NatTrans& a) {
    return second.left.on_maps(first.left.on_objects(p), first.left.on_objects(q), first.left.on_maps(p, q, a));
  };
  out.right.on_objects = [=](const Presheaf& p) { return first.right.on_objects(second.right.on_objects(p)); };
  out.right.on_maps = [=](const Presheaf& p, const Presheaf& q, const NatTrans& a) {
    return first.right.on_maps(second.right.on_objects(p), second.right.on_objects(q),
                               second.right.on_maps(p, q, a));
  };
  out.unit = [=](const Presheaf& p) {
    const Presheaf l1 = first.left.on_objects(p);
    const Presheaf r2l2l1 = second.right.on_objects(second.left.on_objects(l1));
    return compose(first.right.on_maps(l1, r2l2l1, second.unit(l1)), first.unit(p));
  };
  return out;
}

AdjunctionCheck verify_adjunction(const Adjunction& adj, const std::vector<Presheaf>& left_fixtures,
                                  const std::vector<Presheaf>& right_fixtures, AdjunctionOptions options) {
  AdjunctionCheck check;
  auto fail = [&](std::string why) {
    check.holds = false;
    check.witness = std::move(why);
    return check;
  };
  std::vector<Presheaf> lp, rq;
  std::vector<NatTrans> units;
  for (const auto& p : left_fixtures) {
    lp.push_back(adj.left.on_objects(p));
    units.push_back(adj.unit(p));
  }
  for (const auto& q : right_fixtures) rq.push_back(adj.right.on_objects(q));

  for (std::size_t i = 0; i < left_fixtures.size(); ++i) {
    const Presheaf& p = left_fixtures[i];
    const Presheaf rlp = adj.right.on_objects(lp[i]);
    if (!is_natural(p, rlp, units[i])) return fail("unit at left fixture " + std::to_string(i) + " is not natural");
    for (std::size_t j = 0; j < right_fixtures.size(); ++j) {
      const Presheaf& q = right_fixtures[j];
      const std::string pair = "pair (" + std::to_string(i) + ", " + std::to_string(j) + ")";
      const auto lhs = enumerate_nat_trans(lp[i], q, options.hom_bound);
      const std::size_t rhs = count_nat_trans(p, rq[j]);
      auto phi = [&](const NatTrans& beta) { return compose(adj.right.on_maps(lp[i], q, beta), units[i]); };
      std::set<NatTrans> image;
      for (const auto& beta : lhs) {
        NatTrans t = phi(beta);
        if (!is_natural(p, rq[j], t)) return fail(pair + ": transposed map is not natural");
        image.insert(std::move(t));
      }
      if (image.size() != lhs.size())
        return fail(pair + ": transposition is not injective (" + std::to_string(lhs.size()) + " maps, " +
                    std::to_string(image.size()) + " images)");
      if (image.size() != rhs)
        return fail(pair + ": |Hom(LP, Q)| = " + std::to_string(lhs.size()) + " but |Hom(P, RQ)| = " +
                    std::to_string(rhs));

      const std::size_t samples = std::min(lhs.size(), options.naturality_samples);
      // Naturality in P along maps P' -> P between fixtures.
      for (std::size_t i2 = 0; i2 < left_fixtures.size(); ++i2) {
        const auto maps = enumerate_nat_trans(left_fixtures[i2], p, options.hom_bound);
        for (std::size_t m = 0; m < std::min(maps.size(), options.naturality_samples); ++m) {
          const NatTrans lm = adj.left.on_maps(left_fixtures[i2], p, maps[m]);
          for (std::size_t b = 0; b < samples; ++b) {
            const NatTrans lhs_t = compose(adj.right.on_maps(lp[i2], q, compose(lhs[b], lm)), units[i2]);
            if (lhs_t != compose(phi(lhs[b]), maps[m])) return fail(pair + ": transposition not natural in P");
          }
        }
      }
      // Naturality in Q along maps Q -> Q' between fixtures.
      for (std::size_t j2 = 0; j2 < right_fixtures.size(); ++j2) {
        const auto maps = enumerate_nat_trans(q, right_fixtures[j2], options.hom_bound);
        for (std::size_t m = 0; m < std::min(maps.size(), options.naturality_samples); ++m) {
          const NatTrans rm = adj.right.on_maps(q, right_fixtures[j2], maps[m]);
          for (std::size_t b = 0; b < samples; ++b) {
            const NatTrans lhs_t = compose(adj.right.on_maps(lp[i], right_fixtures[j2], compose(maps[m], lhs[b])),
                                           units[i]);
            if (lhs_t != compose(rm, phi(lhs[b]))) return fail(pair + ": transposition not natural in Q");
          }
        }
      }
      ++check.pairs_checked;
    }
  }
  return check;
}

namespace {

template <class Test>
PullbackPropertyCheck over_pairs(const std::vector<Presheaf>& fixtures, Test test) {
  for (std::size_t i = 0; i < fixtures.size(); ++i)
    for (std::size_t j = 0; j < fixtures.size(); ++j)
      if (auto why = test(fixtures[i], fixtures[j]))
        return {false, "fixtures (" + std::to_string(i) + ", " + std::to_string(j) + "): " + *why};
  return {};
}

std::set<NatTrans> pulled_maps(const Functor& F, const std::vector<NatTrans>& maps) {
  std::set<NatTrans> out;
  for (const auto& a : maps) out.insert(pullback_map(F, a));
  return out;
}

bool isomorphic(const Presheaf& a, const Presheaf& b) { return find_isomorphism(a, b).has_value(); }

}  // namespace

PullbackPropertyCheck pullback_faithful_on(const Functor& F, const std::vector<Presheaf>& fixtures) {
  return over_pairs(fixtures, [&](const Presheaf& g, const Presheaf& h) -> std::optional<std::string> {
    const auto maps = enumerate_nat_trans(g, h);
    const auto pulled = pulled_maps(F, maps);
    if (pulled.size() == maps.size()) return std::nullopt;
    return std::to_string(maps.size()) + " maps become " + std::to_string(pulled.size());
  });
}

PullbackPropertyCheck pullback_full_on(const Functor& F, const std::vector<Presheaf>& fixtures) {
  return over_pairs(fixtures, [&](const Presheaf& g, const Presheaf& h) -> std::optional<std::string> {
    const auto pulled = pulled_maps(F, enumerate_nat_trans(g, h));
    const std::size_t all = count_nat_trans(pullback_presheaf(F, g), pullback_presheaf(F, h));
    if (pulled.size() == all) return std::nullopt;
    return std::to_string(all) + " maps after pullback, " + std::to_string(pulled.size()) + " in the image";
  });
}

PullbackPropertyCheck pullback_reflects_isos_on(const Functor& F, const std::vector<Presheaf>& fixtures) {
  return over_pairs(fixtures, [&](const Presheaf& g, const Presheaf& h) -> std::optional<std::string> {
    if (isomorphic(pullback_presheaf(F, g), pullback_presheaf(F, h)) && !isomorphic(g, h))
      return std::string("pullbacks are isomorphic but the presheaves are not");
    return std::nullopt;
  });
}

PullbackPropertyCheck pullback_exact_on(const Functor& F, const std::vector<Presheaf>& fixtures,
                                        std::size_t samples) {
  return over_pairs(fixtures, [&](const Presheaf& g, const Presheaf& h) -> std::optional<std::string> {
    const Presheaf fg = pullback_presheaf(F, g), fh = pullback_presheaf(F, h);
    if (!isomorphic(pullback_presheaf(F, product(g, h)), product(fg, fh))) return std::string("product");
    if (!isomorphic(pullback_presheaf(F, coproduct({g, h}).object), coproduct({fg, fh}).object))
      return std::string("coproduct");
    const auto maps = enumerate_nat_trans(g, h);
    const std::size_t n = std::min(maps.size(), samples);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        const NatTrans fa = pullback_map(F, maps[a]), fb = pullback_map(F, maps[b]);
        if (!isomorphic(pullback_presheaf(F, equalizer(g, h, maps[a], maps[b]).first),
                        equalizer(fg, fh, fa, fb).first))
          return std::string("equalizer");
        if (!isomorphic(pullback_presheaf(F, coequalizer(g, h, maps[a], maps[b]).first),
                        coequalizer(fg, fh, fa, fb).first))
          return std::string("coequalizer");
      }
    }
    return std::nullopt;
  });
}

bool image_is_connected(const Functor& F) {
  const FinCat& d = *F.target;
  for (ObjId v = 0; v < static_cast<ObjId>(d.object_count()); ++v) {
    bool linked = false;
    for (ObjId x = 0; x < static_cast<ObjId>(F.source->object_count()) && !linked; ++x)
      linked = !d.hom(v, F.obj(x)).empty() || !d.hom(F.obj(x), v).empty();
    if (!linked) return false;
  }
  return true;
}

}  // namespace catsite
