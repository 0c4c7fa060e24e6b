// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "catsite/commands.hpp"
#include "catsite/galois.hpp"
#include "catsite/transfer.hpp"
#include "catsite/witt.hpp"
#include "fixtures.hpp"

using namespace catsite;

namespace {

const std::string kFixtures = CATSITE_FIXTURE_DIR;

struct Outcome {
  bool pass = true;
  std::string detail;
  std::size_t checks = 0;
  void require(bool ok, const std::string& what) {
    ++checks;
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

Workspace load(const std::string& name) {
  auto loaded = load_workspace_file(kFixtures + "/" + name);
  if (!loaded.report.ok()) throw Error(name + ": " + loaded.report.violations.front());
  return loaded.workspace;
}

std::vector<Workspace> corpus() {
  std::vector<Workspace> out{load("sites.json"), load("galois.json")};
  for (const auto& c : replicate_cases()) out.push_back(load("replicate/" + c + ".json"));
  return out;
}

std::vector<Sieve> generators_of(const Workspace& ws, const NamedTopology& t) {
  auto gens = t.seeds;
  if (t.from_covers)
    for (const auto& s : covering_sieves(
             pretopology_to_topology(*ws.category(t.category), ws.cover_set(*t.from_covers).pretopology)))
      gens.push_back(s);
  return gens;
}

// --------------------------------------------------------------------------
// 1. Topology generation

Outcome topology_generation() {
  Outcome o;
  auto check = [&](const FinCat& c, const std::vector<Sieve>& seeds, const std::string& name) {
    o.require(c.object_count() <= 8 && c.morphism_count() <= 40, name + ": fixture exceeds the size limits");
    const Topology j = generate_topology(c, seeds);
    o.require(is_topology(c, j).holds, name + ": not a topology");
    const auto minimal = check_minimality(c, seeds, j);
    o.require(minimal.holds, name + ": " + minimal.violation);
  };
  for (const auto& ws : corpus())
    for (const auto& t : ws.topologies) check(*ws.category(t.category), generators_of(ws, t), t.name);

  std::mt19937 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const FinCat c = fixtures::random_poset(rng, 3 + trial % 6, 0.3);
    std::vector<Sieve> seeds;
    for (int k = 0; k < 1 + trial % 3; ++k) {
      const ObjId u = std::uniform_int_distribution<ObjId>(0, static_cast<ObjId>(c.object_count()) - 1)(rng);
      const auto all = all_sieves(c, u);
      seeds.push_back(all[std::uniform_int_distribution<std::size_t>(0, all.size() - 1)(rng)]);
    }
    check(c, seeds, "random poset " + std::to_string(trial));
  }
  if (o.pass) o.detail = "corpus topologies and 40 random posets";
  return o;
}

// --------------------------------------------------------------------------
// 2. Sheaf machinery

// Matching families by backtracking over the sieve's arrows, checking
// compatibility on every assigned pair; sheaf iff each has one amalgamation.
bool oracle_is_sheaf_at(const Presheaf& p, const Sieve& s) {
  const FinCat& c = *p.base;
  // Arrows with many factorizations first, so later choices are forced early.
  auto through = [&](MorId f) {
    int k = 0;
    for (MorId h : c.arrows_into(c.dom(f))) k += s.contains(c.compose(f, h));
    return k;
  };
  std::vector<MorId> arrows = s.arrows;
  std::stable_sort(arrows.begin(), arrows.end(), [&](MorId a, MorId b) { return through(a) > through(b); });
  const std::size_t n = arrows.size();
  std::vector<int> x(n, -1);
  std::vector<int> value(c.morphism_count(), -1);

  auto consistent = [&](std::size_t i) {
    const MorId f = arrows[i];
    for (MorId h : c.arrows_into(c.dom(f))) {
      const int fh = value[c.compose(f, h)];
      if (fh >= 0 && p.restrict(h, x[i]) != fh) return false;
    }
    for (std::size_t k = 0; k < i; ++k)
      for (MorId h : c.arrows_into(c.dom(arrows[k])))
        if (c.compose(arrows[k], h) == f && p.restrict(h, x[k]) != x[i]) return false;
    return true;
  };

  bool ok = true;
  std::function<void(std::size_t)> go = [&](std::size_t i) {
    if (!ok) return;
    if (i == n) {
      int amalgamations = 0;
      for (int e = 0; e < p.size(s.base); ++e) {
        bool match = true;
        for (std::size_t k = 0; k < n && match; ++k) match = p.restrict(arrows[k], e) == x[k];
        amalgamations += match;
      }
      ok = amalgamations == 1;
      return;
    }
    for (int v = 0; v < p.size(c.dom(arrows[i])); ++v) {
      x[i] = v;
      value[arrows[i]] = v;
      if (consistent(i)) go(i + 1);
    }
    x[i] = -1;
    value[arrows[i]] = -1;
  };
  go(0);
  return ok;
}

bool oracle_is_sheaf(const Presheaf& p, const Topology& j) {
  for (const auto& per_object : j.covering)
    for (const auto& s : per_object)
      if (!oracle_is_sheaf_at(p, s)) return false;
  return true;
}

std::vector<Presheaf> presheaf_fixtures(const Workspace& ws, const std::string& category, std::mt19937& rng,
                                        int random) {
  const CatPtr c = ws.category(category);
  std::vector<Presheaf> out{constant_presheaf(c, 1), constant_presheaf(c, 2), empty_presheaf(c)};
  for (ObjId x = 0; x < static_cast<ObjId>(c->object_count()); ++x) out.push_back(representable(c, x));
  for (const auto& p : ws.presheaves)
    if (p.category == category) out.push_back(p.presheaf);
  if (c->morphism_count() <= 12)
    for (int k = 0; k < random; ++k) out.push_back(fixtures::random_presheaf(rng, c, 2, k % 3));
  return out;
}

Outcome sheaf_machinery() {
  Outcome o;
  std::mt19937 rng(5);
  std::size_t pairs = 0;
  for (const auto& ws : corpus()) {
    for (const auto& t : ws.topologies) {
      for (const auto& p : presheaf_fixtures(ws, t.category, rng, 6)) {
        ++pairs;
        const bool verdict = check_sheaf(p, t.topology).holds;
        o.require(verdict == oracle_is_sheaf(p, t.topology), t.name + ": check_sheaf disagrees with the oracle");
        const auto a = sheafify(p, t.topology).sheaf;
        o.require(check_sheaf(a, t.topology).holds, t.name + ": sheafification is not a sheaf");
      }
      // Refinement: a family and the same family extended by composites
      // generate one sieve, so the verdicts must agree.
      const FinCat& c = *ws.category(t.category);
      for (const auto& s : covering_sieves(t.topology)) {
        if (s.empty()) continue;
        Cover d{s.base, s.arrows};
        Cover e = d;
        for (MorId f : s.arrows)
          for (MorId h : c.arrows_into(c.dom(f))) e.family.push_back(c.compose(f, h));
        for (const auto& p : presheaf_fixtures(ws, t.category, rng, 2))
          o.require(check_refinement_equivalence(c, p, d, e), t.name + ": refinement equivalence fails");
      }
    }
  }
  o.detail = o.pass ? std::to_string(pairs) + " presheaf/topology pairs" : o.detail;
  return o;
}

// --------------------------------------------------------------------------
// 3. Adhesive-site properties

Outcome adhesive_sites() {
  Outcome o;
  std::mt19937 rng(8);
  std::size_t functors = 0;
  for (const auto& ws : corpus()) {
    for (const auto& f : ws.functors) {
      if (!f.topology) continue;
      ++functors;
      const auto& t = ws.topology(*f.topology);
      const Topology k = build_adhesive_site(f.functor, t.topology);
      o.require(is_cover_reflecting(f.functor, t.topology, k).holds, f.name + ": not cover reflecting");
      if (t.from_covers && t.seeds.empty()) {
        const auto& tau = ws.cover_set(*t.from_covers).pretopology;
        o.require(pretopology_to_topology(*f.functor.target, image_pretopology(f.functor, tau)) == k,
                  f.name + ": pretopology and sieve paths differ");
      }
      for (const auto& g : presheaf_fixtures(ws, f.target, rng, 4)) {
        const auto sheaf = sheafify(g, k).sheaf;
        o.require(check_sheaf(pullback_presheaf(f.functor, sheaf), t.topology).holds,
                  f.name + ": pullback of a sheaf is not a sheaf");
      }
    }
  }
  if (o.pass) o.detail = std::to_string(functors) + " site maps";
  return o;
}

// --------------------------------------------------------------------------
// 4. Adjoint triple

Outcome adjoint_triple() {
  Outcome o;
  std::mt19937 rng(13);
  std::size_t pairs = 0;
  for (const auto& ws : corpus()) {
    for (const auto& f : ws.functors) {
      const auto source = presheaf_fixtures(ws, f.source, rng, 3);
      const auto target = presheaf_fixtures(ws, f.target, rng, 3);
      const auto lan = verify_adjunction(lan_adjunction(f.functor), source, target);
      const auto ran = verify_adjunction(ran_adjunction(f.functor), target, source);
      o.require(lan.holds, f.name + ": Lan ⊣ pullback fails: " + lan.witness);
      o.require(ran.holds, f.name + ": pullback ⊣ Ran fails: " + ran.witness);
      pairs += lan.pairs_checked + ran.pairs_checked;
    }
  }
  if (o.pass) o.detail = std::to_string(pairs) + " fixture pairs";
  return o;
}

// --------------------------------------------------------------------------
// 5. Galois layer

Outcome galois_layer() {
  Outcome o;
  for (const std::string g : {"C2", "C3", "C2xC2", "S3"}) {
    const FiniteGroup group = named_group(g);
    const auto c = std::make_shared<const FinCat>(delooping(group));
    const auto pi1 = fundamental_group(Site{c, trivial_topology(*c)}, FibreFunctor{0});
    o.require(pi1.group.order() == group.order(), "B(" + g + "): wrong order");
    o.require(find_group_isomorphism(pi1.group, group).has_value(), "B(" + g + "): no isomorphism");
  }
  std::size_t compared = 0;
  const Workspace ws = load("galois.json");
  for (const auto& f : ws.functors) {
    if (!f.topology || !f.point) continue;
    const auto& j = ws.topology(*f.topology).topology;
    const FibreFunctor fibre{ws.point(*f.point).object};
    const auto cmp = check_pi1_isomorphism(f.functor, j, fibre);
    if (cmp.preconditions_hold()) {
      ++compared;
      o.require(cmp.holds, f.name + ": fundamental groups differ");
    }
    const Site source{f.functor.source, j};
    const Site target{f.functor.target, build_adhesive_site(f.functor, j)};
    const FibreFunctor image_fibre{f.functor.obj(fibre.object)};
    for (const auto& a : connected_locally_constant(source, fibre)) {
      const auto fa = lan_sheaf(f.functor, a, target.topology);
      o.require(!is_initial(fa, target) && is_connected(fa, target), f.name + ": F_! of a connected object splits");
    }
    for (const auto& n : find_normal_objects(source, fibre))
      o.require(as_normal(lan_sheaf(f.functor, n.object, target.topology), target, image_fibre).has_value(),
                f.name + ": F_! of a normal object is not normal");
  }
  o.require(compared > 0, "no fixture satisfies the comparison preconditions");
  if (o.pass) o.detail = "4 groups, " + std::to_string(compared) + " comparisons";
  return o;
}

// --------------------------------------------------------------------------
// 6. Witt layer

std::vector<mpz_class> ghost_oracle(int p, const std::vector<mpz_class>& a) {
  std::vector<mpz_class> w;
  for (std::size_t k = 0; k < a.size(); ++k) {
    mpz_class sum = 0;
    for (std::size_t i = 0; i <= k; ++i) {
      mpz_class pi, power;
      mpz_ui_pow_ui(pi.get_mpz_t(), p, i);
      unsigned long e = 1;
      for (std::size_t s = i; s < k; ++s) e *= p;
      mpz_pow_ui(power.get_mpz_t(), a[i].get_mpz_t(), e);
      sum += pi * power;
    }
    w.push_back(sum);
  }
  return w;
}

Outcome witt_layer() {
  Outcome o;
  for (int p : {2, 3, 5}) {
    for (int n = 1; n <= 4; ++n) {
      try {
        o.require(check_ghost_compatibility(derive_structure_polynomials(p, n)),
                  "ghost compatibility fails at p=" + std::to_string(p));
      } catch (const Error& e) {
        o.require(false, e.what());
      }
    }
  }
  std::mt19937 rng(17);
  std::uniform_int_distribution<long> coord(-20, 20);
  int samples = 0;
  for (int p : {2, 3, 5}) {
    for (int n = 1; n <= 4; ++n) {
      for (int s = 0; s < 90; ++s, ++samples) {
        std::vector<mpz_class> x, y;
        for (int k = 0; k < n; ++k) {
          x.push_back(coord(rng));
          y.push_back(coord(rng));
        }
        const auto a = make_witt(p, x), b = make_witt(p, y);
        const auto ga = ghost_oracle(p, x), gb = ghost_oracle(p, y);
        const auto gs = ghost_oracle(p, witt_add(a, b).coords), gm = ghost_oracle(p, witt_mul(a, b).coords);
        for (int k = 0; k < n; ++k) {
          o.require(gs[k] == ga[k] + gb[k], "ghost is not additive");
          o.require(gm[k] == ga[k] * gb[k], "ghost is not multiplicative");
        }
        if (n >= 2)
          o.require(frobenius(verschiebung(a)) == truncate(witt_mul(witt_integer(p, n, p), a), n - 1), "FV != p");
        o.require(teichmuller(p, n, x[0] * y[0]) == witt_mul(teichmuller(p, n, x[0]), teichmuller(p, n, y[0])),
                  "Teichmüller is not multiplicative");
      }
    }
  }
  for (int m : {2, 3, 4}) {
    for (int p : {2, 3}) {
      for (int n = 1; n <= 3; ++n) {
        const auto r = validate_ring(greenberg_affine(p, n, integers_mod(m)));
        o.require(r.ok(), "W_" + std::to_string(n) + "(Z/" + std::to_string(m) + ") fails the ring axioms");
      }
    }
  }
  o.require(check_extension_ring_rule().holds(), "extension ring rule fails");
  if (o.pass) o.detail = std::to_string(samples) + " sampled vector pairs";
  return o;
}

// --------------------------------------------------------------------------
// 7. Replication through the command-line tool

Outcome replication() {
  Outcome o;
  for (const auto& name : replicate_cases()) {
    const std::string cmd = std::string(CATSITE_TOOL) + " replicate " + name + " > /dev/null";
    const int status = std::system(cmd.c_str());
    o.require(WIFEXITED(status) && WEXITSTATUS(status) == 0, name + " did not reproduce");
  }
  if (o.pass) o.detail = "4 cases";
  return o;
}

struct Criterion {
  int number;
  std::string title;
  double limit_seconds;
  Outcome (*run)();
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "topology generation soundness and minimality", 60, topology_generation},
      {2, "sheaf checks, sheafification and refinement", 0, sheaf_machinery},
      {3, "adhesive-site properties", 0, adhesive_sites},
      {4, "adjoint triple", 120, adjoint_triple},
      {5, "Galois layer", 0, galois_layer},
      {6, "Witt layer", 60, witt_layer},
      {7, "counter-example replication", 0, replication},
  };
  bool all = true;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_seconds > 0 && seconds > c.limit_seconds) {
      o.pass = false;
      o.detail = "took longer than " + std::to_string(static_cast<int>(c.limit_seconds)) + " s";
    }
    char time[32];
    std::snprintf(time, sizeof time, "%.2f s", seconds);
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c.number << ": " << c.title << " (" << o.detail
              << ", " << o.checks << " checks, " << time << ")" << std::endl;
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
