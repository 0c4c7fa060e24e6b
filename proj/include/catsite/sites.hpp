#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "catsite/fincat.hpp"

namespace catsite {

/// A set of morphisms into `base`, closed under precomposition. Arrows are
/// kept sorted so equality is structural.
struct Sieve {
  ObjId base = kNone;
  std::vector<MorId> arrows;

  bool contains(MorId f) const;
  bool empty() const { return arrows.empty(); }
  auto operator<=>(const Sieve&) const = default;
};

/// A family of morphisms into `base`.
struct Cover {
  ObjId base = kNone;
  std::vector<MorId> family;
};

/// Covering families per object.
struct Pretopology {
  std::vector<std::vector<Cover>> covers;
};

/// Covering sieves per object.
struct Topology {
  std::vector<std::set<Sieve>> covering;

  bool covers(const Sieve& s) const { return covering.at(s.base).count(s) != 0; }
  friend bool operator==(const Topology&, const Topology&) = default;
};

Sieve maximal_sieve(const FinCat& c, ObjId u);
Sieve empty_sieve(ObjId u);
bool is_sieve(const FinCat& c, const Sieve& s);
bool is_subsieve(const Sieve& a, const Sieve& b);
Sieve intersect(const Sieve& a, const Sieve& b);
/// Sorts and de-duplicates the arrows, then checks closure. Throws on failure.
Sieve make_sieve(const FinCat& c, ObjId base, std::vector<MorId> arrows);

/// Smallest sieve containing the family: {φ∘ψ | φ ∈ family, ψ composable}.
/// Throws Error if a member does not end at the cover's base.
Sieve generate_sieve(const FinCat& c, const Cover& cover);

/// g*S = {h | g∘h ∈ S} on dom(g). Throws Error if cod(g) != S.base.
Sieve pullback_sieve(const FinCat& c, const Sieve& s, MorId g);

/// Every sieve on `u`, in a deterministic order. Throws BoundExceeded past
/// `bound` sieves.
std::vector<Sieve> all_sieves(const FinCat& c, ObjId u, std::size_t bound = 1u << 16);

Topology trivial_topology(const FinCat& c);

struct SaturationOptions {
  /// When set, rules and objects are visited in an order shuffled by this seed.
  std::optional<std::uint64_t> shuffle_seed;
};

/// Least Grothendieck topology containing the seeds, by fixpoint saturation
/// of the maximality, base-change, local-character and upward-closure rules.
Topology generate_topology(const FinCat& c, const std::vector<Sieve>& seeds,
                           SaturationOptions options = {});

struct TopologyCheck {
  bool holds = true;
  std::string violation;
};

TopologyCheck is_topology(const FinCat& c, const Topology& j);

/// Dropping any covering sieve of `j` other than a seed or a maximal sieve
/// must break an axiom; the violation names the first sieve that does not.
TopologyCheck check_minimality(const FinCat& c, const std::vector<Sieve>& seeds, const Topology& j);

/// All covering sieves of `j`, grouped by object order.
std::vector<Sieve> covering_sieves(const Topology& j);

/// Identity covers, stability where pullbacks exist, and transitivity; the
/// latter two compare families by the sieves they generate.
Report validate_pretopology(const FinCat& c, const Pretopology& tau);
Topology pretopology_to_topology(const FinCat& c, const Pretopology& tau);

std::string describe(const FinCat& c, const Sieve& s);

}  // namespace catsite
