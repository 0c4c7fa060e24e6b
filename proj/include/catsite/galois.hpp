#pragma once

#include <optional>
#include <string>
#include <vector>

#include "catsite/fincat.hpp"
#include "catsite/group.hpp"
#include "catsite/sheaves.hpp"
#include "catsite/sites.hpp"
#include "catsite/transfer.hpp"

namespace catsite {

struct Site {
  CatPtr category;
  Topology topology;
};

/// A point given by evaluation at `object`.
struct FibreFunctor {
  ObjId object = kNone;

  int operator()(const Presheaf& a) const { return a.size(object); }
  const std::vector<int>& operator()(const NatTrans& f) const { return f.components[object]; }
};

/// Search limits for the locally constant finite part of a site.
struct GaloisBounds {
  /// Largest fibre size enumerated.
  int fibre = 6;
  /// Largest number of candidate objects examined before giving up.
  std::size_t candidates = 1u << 20;
};

/// No sections outside the objects covered by the empty sieve.
bool is_initial(const Presheaf& a, const Site& site);

/// Indecomposable summands of a sheaf: the atoms of its Boolean algebra of
/// complemented subsheaves, as subpresheaves. Empty for the initial sheaf.
std::vector<Presheaf> decompose(const Presheaf& a, const Site& site);
bool is_connected(const Presheaf& a, const Site& site);

/// All restriction maps between objects not covered by the empty sieve are
/// bijective.
bool is_locally_constant(const Presheaf& a, const Site& site);

/// Connected locally constant sheaves with fibre size at most `bounds.fibre`,
/// one per isomorphism class, ordered by fibre size. Throws Error if some
/// object outside the empty-covered part is not connected to the fibre object,
/// and BoundExceeded once more than `bounds.candidates` candidates are seen.
std::vector<Presheaf> connected_locally_constant(const Site& site, const FibreFunctor& fibre,
                                                 const GaloisBounds& bounds = {});

struct NormalObject {
  Presheaf object;
  std::vector<NatTrans> automorphisms;  // index 0 is the identity
  FiniteGroup group;                    // composition table of `automorphisms`
};

/// Connected, non-initial, every endomorphism invertible and |Aut| = |fibre|.
std::optional<NormalObject> as_normal(const Presheaf& a, const Site& site, const FibreFunctor& fibre);
std::vector<NormalObject> find_normal_objects(const Site& site, const FibreFunctor& fibre,
                                              const GaloisBounds& bounds = {});

struct TowerLevel {
  std::size_t normal = 0;  // index into `normals`
  /// Permutations of the fibre commuting with Aut(N), under composition.
  FiniteGroup group;
  /// Projection from the limit onto this level.
  GroupMap projection;
};

struct FundamentalGroup {
  FiniteGroup group;
  std::vector<NormalObject> normals;
  std::vector<TowerLevel> tower;
  /// Some normal object maps onto every connected object found.
  bool cofinal = false;
};

/// Automorphisms of the fibre functor restricted to the normal objects:
/// compatible families of fibre permutations.
FundamentalGroup fundamental_group(const Site& site, const FibreFunctor& fibre, const GaloisBounds& bounds = {});

struct Precondition {
  std::string name;
  bool holds = true;
  std::string detail;
};

struct Pi1Comparison {
  bool holds = false;
  std::vector<Precondition> preconditions;
  std::optional<FundamentalGroup> source;
  std::optional<FundamentalGroup> target;
  std::optional<GroupMap> isomorphism;

  bool preconditions_hold() const;
};

struct AdhesionData {
  DesignatedSquares source;
  DesignatedSquares target;
};

/// Compares π1 of (C, J) at `fibre` with π1 of (D, A_F^J) at F(fibre). The
/// preconditions are checked first: adhesion (when squares are supplied), a
/// Galois fibre on the source, F* fully faithful on the target's connected
/// locally constant sheaves, and every target object linked to the image of
/// F. When one fails the groups are not computed.
Pi1Comparison check_pi1_isomorphism(const Functor& F, const Topology& j, const FibreFunctor& fibre,
                                    const GaloisBounds& bounds = {},
                                    const std::optional<AdhesionData>& squares = std::nullopt);

struct FibreCheck {
  bool holds = true;
  std::string witness;
};

/// Evaluation commutes with sheaf products, equalizers, coproducts and
/// coequalizers built from the fixtures and up to `samples` maps per pair.
FibreCheck fibre_is_exact(const Site& site, const FibreFunctor& fibre, const std::vector<Presheaf>& sheaves,
                          std::size_t samples = 4);
/// Every map between fixtures that is bijective on fibres is an isomorphism.
FibreCheck fibre_reflects_isos(const Site& site, const FibreFunctor& fibre, const std::vector<Presheaf>& sheaves);

// Finite group actions.

/// A left action of a finite group: act[g][x] = g·x.
struct GSet {
  int size = 0;
  std::vector<std::vector<int>> act;
};

Report validate_gset(const FiniteGroup& g, const GSet& x);
GSet regular_gset(const FiniteGroup& g);
/// Equivariant maps a -> b, as element maps.
std::vector<std::vector<int>> equivariant_maps(const FiniteGroup& g, const GSet& a, const GSet& b);

/// The G-set viewed as an H-set along the isomorphism iso: G -> H.
/// Throws Error if iso is not a group isomorphism.
GSet transport(const FiniteGroup& g, const FiniteGroup& h, const GroupMap& iso, const GSet& x);
GroupMap inverse_map(const GroupMap& iso);

/// Orbit sizes with stabilizers, as sorted (size, stabilizer element set)
/// pairs; stabilizers are taken up to conjugacy via the smallest conjugate.
std::vector<std::pair<int, std::vector<int>>> orbit_types(const FiniteGroup& g, const GSet& x);
/// Image of a subgroup (given as sorted elements) up to conjugacy.
std::vector<int> canonical_subgroup(const FiniteGroup& g, std::vector<int> subgroup);

/// Presheaf on the delooping of g with P(a) = action of a^-1.
Presheaf gset_presheaf(const FiniteGroup& g, CatPtr delooping, const GSet& x);

}  // namespace catsite
