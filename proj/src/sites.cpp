#include "catsite/sites.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>

namespace catsite {

bool Sieve::contains(MorId f) const { return std::binary_search(arrows.begin(), arrows.end(), f); }

Sieve maximal_sieve(const FinCat& c, ObjId u) {
  Sieve s{u, c.arrows_into(u)};
  std::sort(s.arrows.begin(), s.arrows.end());
  return s;
}

Sieve empty_sieve(ObjId u) { return Sieve{u, {}}; }

bool is_sieve(const FinCat& c, const Sieve& s) {
  if (!std::is_sorted(s.arrows.begin(), s.arrows.end())) return false;
  for (MorId f : s.arrows) {
    if (f < 0 || f >= static_cast<MorId>(c.morphism_count()) || c.cod(f) != s.base) return false;
    for (MorId g : c.arrows_into(c.dom(f))) {
      if (!s.contains(c.compose(f, g))) return false;
    }
  }
  return true;
}

bool is_subsieve(const Sieve& a, const Sieve& b) {
  return a.base == b.base &&
         std::includes(b.arrows.begin(), b.arrows.end(), a.arrows.begin(), a.arrows.end());
}

Sieve intersect(const Sieve& a, const Sieve& b) {
  if (a.base != b.base) throw Error("intersect: sieves on different objects");
  Sieve s{a.base, {}};
  std::set_intersection(a.arrows.begin(), a.arrows.end(), b.arrows.begin(), b.arrows.end(),
                        std::back_inserter(s.arrows));
  return s;
}

Sieve make_sieve(const FinCat& c, ObjId base, std::vector<MorId> arrows) {
  std::sort(arrows.begin(), arrows.end());
  arrows.erase(std::unique(arrows.begin(), arrows.end()), arrows.end());
  Sieve s{base, std::move(arrows)};
  if (!is_sieve(c, s)) throw Error("not a sieve on " + c.object_name(base) + ": " + describe(c, s));
  return s;
}

Sieve generate_sieve(const FinCat& c, const Cover& cover) {
  std::set<MorId> arrows;
  for (MorId phi : cover.family) {
    if (phi < 0 || phi >= static_cast<MorId>(c.morphism_count())) {
      throw Error("cover refers to an unknown morphism");
    }
    if (c.cod(phi) != cover.base) {
      throw Error("cover member " + c.morphism_name(phi) + " does not end at " +
                  c.object_name(cover.base));
    }
    for (MorId psi : c.arrows_into(c.dom(phi))) arrows.insert(c.compose(phi, psi));
  }
  return Sieve{cover.base, {arrows.begin(), arrows.end()}};
}

Sieve pullback_sieve(const FinCat& c, const Sieve& s, MorId g) {
  if (c.cod(g) != s.base) throw Error("pullback_sieve: " + c.morphism_name(g) + " does not end at the sieve's base");
  Sieve out{c.dom(g), {}};
  for (MorId h : c.arrows_into(c.dom(g))) {
    if (s.contains(c.compose(g, h))) out.arrows.push_back(h);
  }
  std::sort(out.arrows.begin(), out.arrows.end());
  return out;
}

std::vector<Sieve> all_sieves(const FinCat& c, ObjId u, std::size_t bound) {
  std::vector<MorId> arrows = c.arrows_into(u);
  std::sort(arrows.begin(), arrows.end());
  const std::size_t m = arrows.size();
  std::map<MorId, std::size_t> pos;
  for (std::size_t i = 0; i < m; ++i) pos[arrows[i]] = i;

  // below[i]: arrows forced in when i is in; above[i]: forced out when i is out.
  std::vector<std::vector<std::size_t>> below(m), above(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (MorId g : c.arrows_into(c.dom(arrows[i]))) {
      const std::size_t j = pos.at(c.compose(arrows[i], g));
      below[i].push_back(j);
      above[j].push_back(i);
    }
  }

  std::vector<Sieve> out;
  std::vector<int> state(m, 0);  // 0 unknown, 1 in, -1 out
  std::function<void(std::size_t)> search = [&](std::size_t i) {
    while (i < m && state[i] != 0) ++i;
    if (i == m) {
      Sieve s{u, {}};
      for (std::size_t k = 0; k < m; ++k)
        if (state[k] == 1) s.arrows.push_back(arrows[k]);
      out.push_back(std::move(s));
      if (out.size() > bound) throw BoundExceeded("sieve enumeration on " + c.object_name(u), bound);
      return;
    }
    for (int choice : {-1, 1}) {
      const auto& forced = choice == 1 ? below[i] : above[i];
      if (std::any_of(forced.begin(), forced.end(), [&](std::size_t k) { return state[k] == -choice; })) {
        continue;
      }
      std::vector<std::size_t> changed;
      for (std::size_t k : forced) {
        if (state[k] == 0) {
          state[k] = choice;
          changed.push_back(k);
        }
      }
      search(i + 1);
      for (std::size_t k : changed) state[k] = 0;
    }
  };
  search(0);
  std::sort(out.begin(), out.end());
  return out;
}

Topology trivial_topology(const FinCat& c) {
  Topology j;
  j.covering.resize(c.object_count());
  for (ObjId u = 0; u < static_cast<ObjId>(c.object_count()); ++u) {
    j.covering[u].insert(maximal_sieve(c, u));
  }
  return j;
}

namespace {

// All sieves of a category, indexed per object, with pullback and inclusion tables.
struct SieveLattice {
  const FinCat& cat;
  std::vector<std::vector<Sieve>> sieves;
  std::vector<std::map<Sieve, int>> index;
  // pullback[u][i][k]: index of (arrows_into(u)[k])* sieves[u][i] on its domain.
  std::vector<std::vector<std::vector<int>>> pullback;
  std::vector<std::vector<std::vector<int>>> supersets;

  explicit SieveLattice(const FinCat& c) : cat(c) {
    const auto n = static_cast<ObjId>(c.object_count());
    sieves.resize(n);
    index.resize(n);
    for (ObjId u = 0; u < n; ++u) {
      sieves[u] = all_sieves(c, u);
      for (int i = 0; i < static_cast<int>(sieves[u].size()); ++i) index[u][sieves[u][i]] = i;
    }
    pullback.resize(n);
    supersets.resize(n);
    for (ObjId u = 0; u < n; ++u) {
      const auto& into = c.arrows_into(u);
      pullback[u].resize(sieves[u].size());
      supersets[u].resize(sieves[u].size());
      for (int i = 0; i < static_cast<int>(sieves[u].size()); ++i) {
        for (MorId g : into) pullback[u][i].push_back(index[c.dom(g)].at(pullback_sieve(c, sieves[u][i], g)));
        for (int k = 0; k < static_cast<int>(sieves[u].size()); ++k) {
          if (k != i && is_subsieve(sieves[u][i], sieves[u][k])) supersets[u][i].push_back(k);
        }
      }
    }
  }
};

}  // namespace

Topology generate_topology(const FinCat& c, const std::vector<Sieve>& seeds, SaturationOptions options) {
  const SieveLattice lat(c);
  const auto n = static_cast<ObjId>(c.object_count());
  std::vector<std::vector<char>> in(n);
  for (ObjId u = 0; u < n; ++u) {
    in[u].assign(lat.sieves[u].size(), 0);
    in[u][lat.index[u].at(maximal_sieve(c, u))] = 1;
  }
  for (const auto& s : seeds) {
    if (s.base < 0 || s.base >= n || !is_sieve(c, s)) throw Error("seed is not a sieve: " + describe(c, s));
    in[s.base][lat.index[s.base].at(s)] = 1;
  }

  std::vector<ObjId> objects(n);
  for (ObjId u = 0; u < n; ++u) objects[u] = u;
  std::vector<int> rules{0, 1, 2};
  std::mt19937_64 rng(options.shuffle_seed.value_or(0));

  bool changed = true;
  auto add = [&](ObjId u, int i) {
    if (!in[u][i]) {
      in[u][i] = 1;
      changed = true;
    }
  };

  while (changed) {
    changed = false;
    if (options.shuffle_seed) {
      std::shuffle(objects.begin(), objects.end(), rng);
      std::shuffle(rules.begin(), rules.end(), rng);
    }
    for (int rule : rules) {
      for (ObjId u : objects) {
        const auto& into = c.arrows_into(u);
        const int count = static_cast<int>(lat.sieves[u].size());
        for (int i = 0; i < count; ++i) {
          if (rule == 0 && in[u][i]) {
            for (int k : lat.supersets[u][i]) add(u, k);
          } else if (rule == 1 && in[u][i]) {
            for (std::size_t k = 0; k < into.size(); ++k) add(c.dom(into[k]), lat.pullback[u][i][k]);
          } else if (rule == 2 && !in[u][i]) {
            // Local character: R = sieves[u][i] is covering if some covering S
            // has f*R covering for every f in S.
            for (int s = 0; s < count && !in[u][i]; ++s) {
              if (!in[u][s]) continue;
              bool all = true;
              for (std::size_t k = 0; k < into.size() && all; ++k) {
                if (lat.sieves[u][s].contains(into[k])) {
                  all = in[c.dom(into[k])][lat.pullback[u][i][k]] != 0;
                }
              }
              if (all) add(u, i);
            }
          }
        }
      }
    }
  }

  Topology j;
  j.covering.resize(n);
  for (ObjId u = 0; u < n; ++u)
    for (int i = 0; i < static_cast<int>(lat.sieves[u].size()); ++i)
      if (in[u][i]) j.covering[u].insert(lat.sieves[u][i]);
  return j;
}

TopologyCheck is_topology(const FinCat& c, const Topology& j) {
  const auto n = static_cast<ObjId>(c.object_count());
  if (static_cast<ObjId>(j.covering.size()) != n) return {false, "topology does not cover every object"};
  for (ObjId u = 0; u < n; ++u) {
    for (const auto& s : j.covering[u]) {
      if (s.base != u || !is_sieve(c, s)) return {false, "non-sieve in J(" + c.object_name(u) + "): " + describe(c, s)};
    }
    if (!j.covers(maximal_sieve(c, u))) return {false, "missing maximal sieve on " + c.object_name(u)};
  }
  for (ObjId u = 0; u < n; ++u) {
    for (const auto& s : j.covering[u]) {
      for (MorId g : c.arrows_into(u)) {
        const Sieve pulled = pullback_sieve(c, s, g);
        if (!j.covers(pulled)) {
          return {false, "base change fails: " + c.morphism_name(g) + "* of " + describe(c, s) +
                             " = " + describe(c, pulled) + " is not covering"};
        }
      }
    }
  }
  for (ObjId u = 0; u < n; ++u) {
    const auto sieves = all_sieves(c, u);
    for (const auto& r : sieves) {
      const bool covering = j.covers(r);
      for (const auto& s : j.covering[u]) {
        if (!covering && is_subsieve(s, r)) {
          return {false, "upward closure fails: " + describe(c, r) + " contains covering " + describe(c, s)};
        }
        if (covering) continue;
        bool local = true;
        for (MorId f : s.arrows) {
          if (!j.covers(pullback_sieve(c, r, f))) {
            local = false;
            break;
          }
        }
        if (local) {
          return {false, "local character fails: " + describe(c, r) + " is locally covering along " +
                             describe(c, s) + " but not covering"};
        }
      }
    }
  }
  return {};
}

TopologyCheck check_minimality(const FinCat& c, const std::vector<Sieve>& seeds, const Topology& j) {
  for (ObjId u = 0; u < static_cast<ObjId>(j.covering.size()); ++u) {
    for (const auto& s : j.covering[u]) {
      if (s == maximal_sieve(c, u) || std::find(seeds.begin(), seeds.end(), s) != seeds.end()) continue;
      Topology smaller = j;
      smaller.covering[u].erase(s);
      if (is_topology(c, smaller).holds) return {false, describe(c, s) + " is removable"};
    }
  }
  return {};
}

std::vector<Sieve> covering_sieves(const Topology& j) {
  std::vector<Sieve> out;
  for (const auto& per : j.covering) out.insert(out.end(), per.begin(), per.end());
  return out;
}

namespace {

bool family_present(const FinCat& c, const std::vector<Cover>& covers, const Sieve& generated) {
  return std::any_of(covers.begin(), covers.end(),
                     [&](const Cover& d) { return generate_sieve(c, d) == generated; });
}

std::string family_name(const FinCat& c, const Cover& cover) {
  std::string s = "{";
  for (std::size_t i = 0; i < cover.family.size(); ++i) {
    if (i) s += ", ";
    s += c.morphism_name(cover.family[i]);
  }
  return s + "} on " + c.object_name(cover.base);
}

}  // namespace

Report validate_pretopology(const FinCat& c, const Pretopology& tau) {
  Report r;
  const auto n = static_cast<ObjId>(c.object_count());
  if (static_cast<ObjId>(tau.covers.size()) != n) {
    r.add("pretopology does not assign covers to every object");
    return r;
  }
  for (ObjId u = 0; u < n; ++u) {
    bool has_identity = false;
    for (const auto& cover : tau.covers[u]) {
      if (cover.base != u) {
        r.add("cover " + family_name(c, cover) + " listed under " + c.object_name(u));
        continue;
      }
      for (MorId f : cover.family) {
        if (c.cod(f) != u) r.add("cover " + family_name(c, cover) + " has a member with the wrong codomain");
      }
      if (cover.family.size() == 1 && cover.family.front() == c.identity(u)) has_identity = true;
    }
    if (!has_identity) r.add("identity cover missing on " + c.object_name(u));
  }
  if (!r.ok()) return r;

  // Stability, only where every needed pullback exists.
  for (ObjId u = 0; u < n; ++u) {
    for (const auto& cover : tau.covers[u]) {
      for (MorId g : c.arrows_into(u)) {
        Cover pulled{c.dom(g), {}};
        bool exists = true;
        for (MorId phi : cover.family) {
          auto sq = find_pullback(c, phi, g);
          if (!sq) {
            exists = false;
            break;
          }
          pulled.family.push_back(sq->left);
        }
        if (exists && !family_present(c, tau.covers[c.dom(g)], generate_sieve(c, pulled))) {
          r.add("stability fails: pullback of " + family_name(c, cover) + " along " + c.morphism_name(g) +
                " is not a cover");
        }
      }
    }
  }

  // Transitivity: every choice of covers of the members composes to a cover.
  for (ObjId u = 0; u < n; ++u) {
    for (const auto& cover : tau.covers[u]) {
      std::vector<std::size_t> choice(cover.family.size(), 0);
      bool done = false;
      while (!done) {
        bool feasible = true;
        Cover composite{u, {}};
        for (std::size_t i = 0; i < cover.family.size(); ++i) {
          const auto& options = tau.covers[c.dom(cover.family[i])];
          if (options.empty()) {
            feasible = false;
            break;
          }
          for (MorId psi : options[choice[i]].family) composite.family.push_back(c.compose(cover.family[i], psi));
        }
        if (!feasible) break;
        if (!family_present(c, tau.covers[u], generate_sieve(c, composite))) {
          r.add("transitivity fails: refinement of " + family_name(c, cover) + " gives " +
                family_name(c, composite) + ", which is not a cover");
          break;
        }
        std::size_t i = 0;
        for (; i < choice.size(); ++i) {
          if (++choice[i] < tau.covers[c.dom(cover.family[i])].size()) break;
          choice[i] = 0;
        }
        done = i == choice.size();
      }
    }
  }
  return r;
}

Topology pretopology_to_topology(const FinCat& c, const Pretopology& tau) {
  std::vector<Sieve> seeds;
  for (const auto& per : tau.covers)
    for (const auto& cover : per) seeds.push_back(generate_sieve(c, cover));
  return generate_topology(c, seeds);
}

std::string describe(const FinCat& c, const Sieve& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.arrows.size(); ++i) {
    if (i) out += ", ";
    out += c.morphism_name(s.arrows[i]);
  }
  return out + "} on " + c.object_name(s.base);
}

}  // namespace catsite
