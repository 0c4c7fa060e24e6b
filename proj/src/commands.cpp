#include "catsite/commands.hpp"

#include <cstdlib>
#include <map>

#include "catsite/galois.hpp"
#include "catsite/transfer.hpp"
#include "catsite/witt.hpp"

#ifndef CATSITE_FIXTURE_DIR
#define CATSITE_FIXTURE_DIR "fixtures"
#endif

namespace catsite {

namespace {

Json sieve_json(const FinCat& c, const Sieve& s) {
  Json arrows = Json::array();
  for (MorId f : s.arrows) arrows.push_back(c.morphism_name(f));
  return {{"object", c.object_name(s.base)}, {"arrows", arrows}};
}

Json sieves_json(const FinCat& c, const std::vector<Sieve>& sieves) {
  Json out = Json::array();
  for (const auto& s : sieves) out.push_back(sieve_json(c, s));
  return out;
}

Json square_json(const FinCat& c, const Square& s) {
  auto name = [&](MorId f) { return f == kNone ? Json(nullptr) : Json(c.morphism_name(f)); };
  return {{"top", name(s.top)}, {"left", name(s.left)}, {"right", name(s.right)}, {"bottom", name(s.bottom)}};
}

Json violations_json(const Report& r) {
  Json out = Json::array();
  for (const auto& v : r.violations) out.push_back(v);
  return out;
}

Json group_json(const FiniteGroup& g) {
  return {{"order", g.order()}, {"elements", g.elements}, {"table", g.table}};
}

Json adhesion_json(const FinCat& source, const AdhesiveReport& r) {
  Json witnesses = Json::array();
  for (const auto& w : r.witnesses)
    witnesses.push_back({{"property", w.property}, {"square", square_json(source, w.square)}, {"detail", w.detail}});
  return {{"adhesive", r.adhesive()},
          {"preserves_unions", r.preserves_unions},
          {"preserves_intersections", r.preserves_intersections},
          {"preserves_designated_monos", r.preserves_designated_monos},
          {"preserves_all_pushouts", r.preserves_all_pushouts},
          {"witnesses", witnesses}};
}

std::optional<AdhesiveReport> adhesion_of(const Workspace& ws, const NamedFunctor& f) {
  if (!f.source_squares) return std::nullopt;
  return check_adhesion(f.functor, ws.square_set(*f.source_squares).squares,
                        ws.square_set(*f.target_squares).squares);
}

Json base_report(const std::string& operation) { return {{"operation", operation}}; }

// --------------------------------------------------------------------------
// Tasks

Json task_gen_topology(const Workspace& ws, const RunOptions& options) {
  Json results = Json::array();
  for (const auto& t : ws.topologies) {
    const FinCat& c = *ws.category(t.category);
    std::vector<Sieve> generators = t.seeds;
    if (t.from_covers)
      for (const auto& s : covering_sieves(pretopology_to_topology(c, ws.cover_set(*t.from_covers).pretopology)))
        generators.push_back(s);
    const bool explicit_only = generators.empty() && t.topology != trivial_topology(c);
    if (explicit_only) generators = covering_sieves(t.topology);

    const std::size_t sieve_bound = options.bound.value_or(ws.bounds.sieves);
    std::size_t total = 0;
    for (ObjId u = 0; u < static_cast<ObjId>(c.object_count()); ++u) total += all_sieves(c, u, sieve_bound).size();

    const Topology regenerated = generate_topology(c, generators);
    const Topology shuffled = generate_topology(c, generators, {options.seed});
    const auto check = is_topology(c, t.topology);
    const auto minimal = check_minimality(c, generators, t.topology);
    Json r = base_report("generate_topology");
    r["topology"] = t.name;
    r["category"] = t.category;
    r["generators"] = sieves_json(c, generators);
    r["covering"] = sieves_json(c, covering_sieves(t.topology));
    r["covering_count"] = covering_sieves(t.topology).size();
    r["sieve_count"] = total;
    r["is_topology"] = {{"holds", check.holds}, {"violation", check.violation}};
    r["minimal"] = {{"holds", minimal.holds}, {"violation", minimal.violation}};
    r["regenerates"] = regenerated == t.topology;
    r["order_independent"] = shuffled == regenerated;
    results.push_back(r);
  }
  return results;
}

Json task_adhesive(const Workspace& ws, const RunOptions&) {
  Json results = Json::array();
  for (const auto& f : ws.functors) {
    if (!f.topology) continue;
    const auto& t = ws.topology(*f.topology);
    const FinCat& d = *f.functor.target;
    const Topology k = build_adhesive_site(f.functor, t.topology);
    Json r = base_report("build_adhesive_site");
    r["functor"] = f.name;
    r["topology"] = t.name;
    r["covering"] = sieves_json(d, covering_sieves(k));
    r["is_topology"] = is_topology(d, k).holds;
    if (f.source == f.target) r["equals_input"] = k == t.topology;
    if (t.from_covers && t.seeds.empty()) {
      const auto& tau = ws.cover_set(*t.from_covers).pretopology;
      r["pretopology_paths_agree"] = pretopology_to_topology(d, image_pretopology(f.functor, tau)) == k;
    }
    if (auto a = adhesion_of(ws, f)) r["adhesion"] = adhesion_json(*f.functor.source, *a);
    results.push_back(r);
  }
  return results;
}

Json task_check_sheaf(const Workspace& ws, const RunOptions&) {
  Json results = Json::array();
  for (const auto& p : ws.presheaves) {
    for (const auto& t : ws.topologies) {
      if (t.category != p.category) continue;
      const FinCat& c = *ws.category(t.category);
      const auto check = check_sheaf(p.presheaf, t.topology);
      Json r = base_report("check_sheaf");
      r["presheaf"] = p.name;
      r["topology"] = t.name;
      r["holds"] = check.holds;
      if (check.counterexample) {
        r["counterexample"] = {{"sieve", sieve_json(c, check.counterexample->family.sieve)},
                               {"choice", check.counterexample->family.choice},
                               {"amalgamations", check.counterexample->amalgamations}};
      }
      results.push_back(r);
    }
  }
  return results;
}

Json task_cover_reflect(const Workspace& ws, const RunOptions&) {
  Json results = Json::array();
  for (const auto& f : ws.functors) {
    if (!f.topology) continue;
    const auto& j = ws.topology(*f.topology).topology;
    const Topology k = build_adhesive_site(f.functor, j);
    const auto check = is_cover_reflecting(f.functor, j, k);
    Json r = base_report("is_cover_reflecting");
    r["functor"] = f.name;
    r["topology"] = *f.topology;
    r["holds"] = check.holds;
    if (check.witness) {
      r["witness"] = {{"object", f.functor.source->object_name(check.witness->first)},
                      {"sieve", sieve_json(*f.functor.target, check.witness->second)}};
    }
    results.push_back(r);
  }
  return results;
}

std::vector<Presheaf> fixture_presheaves(const Workspace& ws, const std::string& category) {
  const CatPtr c = ws.category(category);
  std::vector<Presheaf> out{constant_presheaf(c, 1)};
  for (ObjId x = 0; x < static_cast<ObjId>(c->object_count()); ++x) out.push_back(representable(c, x));
  for (const auto& p : ws.presheaves)
    if (p.category == category) out.push_back(p.presheaf);
  return out;
}

Json adjunction_json(const AdjunctionCheck& a) {
  return {{"holds", a.holds}, {"pairs_checked", a.pairs_checked}, {"witness", a.witness}};
}

Json task_kan_verify(const Workspace& ws, const RunOptions& options) {
  Json results = Json::array();
  AdjunctionOptions opts;
  opts.naturality_samples = ws.bounds.samples;
  opts.hom_bound = options.bound.value_or(ws.bounds.hom);
  for (const auto& f : ws.functors) {
    const auto source = fixture_presheaves(ws, f.source);
    const auto target = fixture_presheaves(ws, f.target);
    Json r = base_report("verify_adjunction");
    r["functor"] = f.name;
    r["source_fixtures"] = source.size();
    r["target_fixtures"] = target.size();
    r["lan"] = adjunction_json(verify_adjunction(lan_adjunction(f.functor), source, target, opts));
    r["ran"] = adjunction_json(verify_adjunction(ran_adjunction(f.functor), target, source, opts));
    results.push_back(r);
  }
  return results;
}

GaloisBounds galois_bounds(const Workspace& ws, const RunOptions& options) {
  GaloisBounds b;
  b.fibre = static_cast<int>(options.bound.value_or(static_cast<std::size_t>(ws.bounds.fibre)));
  b.candidates = ws.bounds.candidates;
  return b;
}

Json fundamental_group_json(const FundamentalGroup& g) {
  Json normals = Json::array();
  for (const auto& n : g.normals)
    normals.push_back({{"total_size", n.object.total_size()}, {"automorphisms", n.automorphisms.size()}});
  return {{"group", group_json(g.group)}, {"normals", normals}, {"cofinal", g.cofinal}};
}

Json task_pi1(const Workspace& ws, const RunOptions& options) {
  Json results = Json::array();
  for (const auto& p : ws.points) {
    const Site site{ws.category(p.category), ws.topology(p.topology).topology};
    const auto g = fundamental_group(site, FibreFunctor{p.object}, galois_bounds(ws, options));
    Json r = base_report("fundamental_group");
    r["point"] = p.name;
    r["object"] = site.category->object_name(p.object);
    r.update(fundamental_group_json(g));
    results.push_back(r);
  }
  return results;
}

Json task_pi1_compare(const Workspace& ws, const RunOptions& options) {
  Json results = Json::array();
  for (const auto& f : ws.functors) {
    if (!f.topology || !f.point) continue;
    std::optional<AdhesionData> squares;
    if (f.source_squares)
      squares = AdhesionData{ws.square_set(*f.source_squares).squares, ws.square_set(*f.target_squares).squares};
    const auto cmp = check_pi1_isomorphism(f.functor, ws.topology(*f.topology).topology,
                                           FibreFunctor{ws.point(*f.point).object}, galois_bounds(ws, options),
                                           squares);
    Json pre = Json::array();
    for (const auto& c : cmp.preconditions) pre.push_back({{"name", c.name}, {"holds", c.holds}, {"detail", c.detail}});
    Json r = base_report("check_pi1_isomorphism");
    r["functor"] = f.name;
    r["point"] = *f.point;
    r["holds"] = cmp.holds;
    r["preconditions"] = pre;
    if (cmp.source) r["source_order"] = cmp.source->group.order();
    if (cmp.target) r["target_order"] = cmp.target->group.order();
    if (cmp.isomorphism) r["isomorphism"] = *cmp.isomorphism;
    results.push_back(r);
  }
  return results;
}

Json task_witt(const Workspace& ws, const RunOptions& options) {
  const int length = static_cast<int>(options.bound.value_or(static_cast<std::size_t>(ws.bounds.witt_length)));
  Json polynomials = Json::array();
  for (int p : ws.bounds.witt_primes) {
    for (int n = 1; n <= length; ++n) {
      Json r = {{"p", p}, {"n", n}};
      try {
        const auto& s = derive_structure_polynomials(p, n);
        std::vector<std::size_t> terms;
        for (const auto& q : s.mul) terms.push_back(q.term_count());
        r["integral"] = true;
        r["ghost_compatible"] = check_ghost_compatibility(s);
        r["multiplication_terms"] = terms;
      } catch (const BoundExceeded&) {
        throw;
      } catch (const Error& e) {
        r["integral"] = false;
        r["error"] = e.what();
      }
      polynomials.push_back(r);
    }
  }

  Json rings = Json::array();
  for (int m : ws.bounds.witt_rings) {
    const FiniteRing a = integers_mod(m);
    for (int p : ws.bounds.witt_primes) {
      for (int n = 1; n <= ws.bounds.witt_ring_length; ++n) {
        Json r = {{"ring", "Z/" + std::to_string(m)}, {"p", p}, {"n", n}};
        try {
          const FiniteRing w = greenberg_affine(p, n, a, ws.bounds.witt_ring_size);
          const Report check = validate_ring(w);
          r["size"] = w.size();
          r["ring_axioms"] = check.ok();
          r["violations"] = violations_json(check);
        } catch (const BoundExceeded& e) {
          r["skipped"] = e.what();
        }
        rings.push_back(r);
      }
    }
  }

  const auto rule = check_extension_ring_rule();
  Json r = base_report("witt");
  r["structure_polynomials"] = polynomials;
  r["rings"] = rings;
  r["ring_rule"] = {{"holds", rule.holds()},
                    {"commutative", rule.commutative},
                    {"associative", rule.associative},
                    {"unital", rule.unital},
                    {"distributive", rule.distributive},
                    {"embedding_is_homomorphism", rule.embedding_is_homomorphism}};
  return Json::array({r});
}

using TaskFn = Json (*)(const Workspace&, const RunOptions&);

const std::map<std::string, TaskFn>& task_table() {
  static const std::map<std::string, TaskFn> table{
      {"gen-topology", task_gen_topology}, {"adhesive", task_adhesive},       {"check-sheaf", task_check_sheaf},
      {"cover-reflect", task_cover_reflect}, {"kan-verify", task_kan_verify}, {"pi1", task_pi1},
      {"pi1-compare", task_pi1_compare},   {"witt", task_witt}};
  return table;
}

// --------------------------------------------------------------------------
// Replication cases. Each returns the checks and whether they separate.

struct Separation {
  Json checks;
  bool separates = false;
};

Separation adhesive_not_cocontinuous(const Workspace& ws) {
  const auto& f = ws.functor("F");
  const auto a = adhesion_of(ws, f);
  if (!a) throw Error("functor 'F' has no designated squares");
  return {adhesion_json(*f.functor.source, *a), a->adhesive() && !a->preserves_all_pushouts};
}

Separation pullback_not_faithful(const Workspace& ws) {
  const auto& f = ws.functor("F");
  const Presheaf& s = ws.presheaf("S").presheaf;
  const Presheaf& t = ws.presheaf("T").presheaf;
  if (s.base != f.functor.target || t.base != f.functor.target)
    throw Error("presheaves 'S' and 'T' must live on the target of 'F'");
  const std::size_t target = count_nat_trans(s, t);
  const std::size_t source =
      count_nat_trans(pullback_presheaf(f.functor, s), pullback_presheaf(f.functor, t));
  const auto faithful = pullback_faithful_on(f.functor, {s, t});
  Separation out;
  out.checks = {{"target_nat_trans", target},
                {"source_nat_trans", source},
                {"pullback_faithful", faithful.holds},
                {"witness", faithful.witness}};
  bool adhesive = true;
  if (auto a = adhesion_of(ws, f)) {
    out.checks["adhesion"] = adhesion_json(*f.functor.source, *a);
    adhesive = a->adhesive();
  }
  out.separates = adhesive && target > source && !faithful.holds;
  return out;
}

Separation adhesive_not_iso_reflecting(const Workspace& ws) {
  const auto& f = ws.functor("F");
  const auto a = adhesion_of(ws, f);
  if (!a) throw Error("functor 'F' has no designated squares");
  const FinCat& c = *f.functor.source;
  const FinCat& d = *f.functor.target;
  Json collapsed = Json::array();
  for (MorId m = 0; m < static_cast<MorId>(c.morphism_count()); ++m) {
    if (!is_iso(c, m) && is_iso(d, f.functor.mor(m))) {
      collapsed.push_back({{"morphism", c.morphism_name(m)},
                           {"dom", c.object_name(c.dom(m))},
                           {"cod", c.object_name(c.cod(m))},
                           {"image", d.morphism_name(f.functor.mor(m))}});
    }
  }
  Separation out;
  out.checks = {{"adhesion", adhesion_json(c, *a)}, {"non_isos_sent_to_isos", collapsed}};
  out.separates = a->adhesive() && !collapsed.empty();
  return out;
}

Separation adhesive_not_full(const Workspace& ws) {
  const auto& f = ws.functor("F");
  const auto a = adhesion_of(ws, f);
  if (!a) throw Error("functor 'F' has no designated squares");
  const FinCat& c = *f.functor.source;
  const FinCat& d = *f.functor.target;
  Json missing = Json::array();
  for (ObjId x = 0; x < static_cast<ObjId>(c.object_count()); ++x) {
    for (ObjId y = 0; y < static_cast<ObjId>(c.object_count()); ++y) {
      for (MorId g : d.hom(f.functor.obj(x), f.functor.obj(y))) {
        bool hit = false;
        for (MorId m : c.hom(x, y)) hit |= f.functor.mor(m) == g;
        if (!hit)
          missing.push_back({{"source", c.object_name(x)}, {"target", c.object_name(y)}, {"morphism", d.morphism_name(g)}});
      }
    }
  }
  std::vector<Presheaf> fixtures;
  for (ObjId x = 0; x < static_cast<ObjId>(c.object_count()); ++x)
    fixtures.push_back(representable(f.functor.target, f.functor.obj(x)));
  const auto pullback_full = pullback_full_on(f.functor, fixtures);
  const auto rule = check_extension_ring_rule();
  Separation out;
  out.checks = {{"adhesion", adhesion_json(c, *a)},
                {"full", is_full(f.functor)},
                {"arrows_without_preimage", missing},
                {"pullback_full_on_representables", pullback_full.holds},
                {"pullback_witness", pullback_full.witness},
                {"ring_rule", rule.holds()}};
  out.separates = a->adhesive() && !is_full(f.functor) && !missing.empty() && !pullback_full.holds && rule.holds();
  return out;
}

using CaseFn = Separation (*)(const Workspace&);

const std::map<std::string, CaseFn>& case_table() {
  static const std::map<std::string, CaseFn> table{
      {"adhesive-not-cocontinuous", adhesive_not_cocontinuous},
      {"pullback-not-faithful", pullback_not_faithful},
      {"adhesive-not-iso-reflecting", adhesive_not_iso_reflecting},
      {"adhesive-not-full-analog", adhesive_not_full}};
  return table;
}

CommandResult failure(Json report, int code, const std::string& message) {
  report["error"] = message;
  return {code, report};
}

// Loads a workspace for run/replicate; on failure returns the command result.
std::optional<CommandResult> load_valid(const std::string& path, Json& report, Workspace& ws) {
  try {
    auto loaded = load_workspace_file(path);
    if (!loaded.report.ok()) {
      report["violations"] = violations_json(loaded.report);
      return failure(report, kExitFailure, "workspace has violations");
    }
    ws = std::move(loaded.workspace);
  } catch (const ParseError& e) {
    return failure(report, kExitUsage, e.what());
  }
  return std::nullopt;
}

}  // namespace

const std::vector<std::string>& run_tasks() {
  static const std::vector<std::string> names{"gen-topology", "adhesive", "check-sheaf", "cover-reflect",
                                              "kan-verify",   "pi1",      "pi1-compare", "witt"};
  return names;
}

const std::vector<std::string>& replicate_cases() {
  static const std::vector<std::string> names{"adhesive-not-cocontinuous", "pullback-not-faithful",
                                              "adhesive-not-iso-reflecting", "adhesive-not-full-analog"};
  return names;
}

std::string replicate_fixture(const std::string& name) {
  const char* dir = std::getenv("CATSITE_FIXTURES");
  return std::string(dir ? dir : CATSITE_FIXTURE_DIR) + "/replicate/" + name + ".json";
}

CommandResult cmd_validate(const std::string& path) {
  Json report = base_report("validate");
  report["input"] = path;
  try {
    const auto loaded = load_workspace_file(path);
    const Workspace& ws = loaded.workspace;
    report["valid"] = loaded.report.ok();
    report["counts"] = {{"categories", ws.categories.size()}, {"functors", ws.functors.size()},
                        {"squares", ws.squares.size()},       {"covers", ws.covers.size()},
                        {"topologies", ws.topologies.size()}, {"presheaves", ws.presheaves.size()},
                        {"points", ws.points.size()}};
    report["violations"] = violations_json(loaded.report);
    return {loaded.report.ok() ? kExitOk : kExitFailure, report};
  } catch (const ParseError& e) {
    return failure(report, kExitUsage, e.what());
  }
}

CommandResult run_task(const Workspace& ws, const std::string& task, const RunOptions& options) {
  Json report = base_report("run");
  report["task"] = task;
  if (options.bound) report["bound"] = *options.bound;
  report["seed"] = options.seed;
  const auto it = task_table().find(task);
  if (it == task_table().end()) return failure(report, kExitFailure, "unknown task '" + task + "'");
  try {
    report["results"] = it->second(ws, options);
  } catch (const Error& e) {
    return failure(report, kExitFailure, e.what());
  }
  return {kExitOk, report};
}

CommandResult cmd_run(const std::string& path, const std::string& task, const RunOptions& options) {
  Json report = base_report("run");
  report["task"] = task;
  report["input"] = path;
  if (task_table().count(task) == 0) return failure(report, kExitFailure, "unknown task '" + task + "'");
  Workspace ws;
  if (auto early = load_valid(path, report, ws)) return *early;
  auto result = run_task(ws, task, options);
  Json merged = report;
  for (auto& [k, v] : result.report.items()) merged[k] = v;
  return {result.exit_code, merged};
}

CommandResult replicate(const Workspace& ws, const std::string& name) {
  Json report = base_report("replicate");
  report["case"] = name;
  const auto it = case_table().find(name);
  if (it == case_table().end()) return failure(report, kExitFailure, "unknown case '" + name + "'");
  try {
    const Separation s = it->second(ws);
    report["checks"] = s.checks;
    report["separates"] = s.separates;
    return {s.separates ? kExitOk : kExitFailure, report};
  } catch (const Error& e) {
    return failure(report, kExitFailure, e.what());
  }
}

CommandResult cmd_replicate(const std::string& name, const std::string& path, const RunOptions&) {
  Json report = base_report("replicate");
  report["case"] = name;
  if (case_table().count(name) == 0) return failure(report, kExitFailure, "unknown case '" + name + "'");
  const std::string input = path.empty() ? replicate_fixture(name) : path;
  report["input"] = input;
  Workspace ws;
  if (auto early = load_valid(input, report, ws)) return *early;
  auto result = replicate(ws, name);
  Json merged = report;
  for (auto& [k, v] : result.report.items()) merged[k] = v;
  return {result.exit_code, merged};
}

}  // namespace catsite
