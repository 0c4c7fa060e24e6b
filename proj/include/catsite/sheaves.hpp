#pragma once

#include <optional>
#include <string>
#include <vector>

#include "catsite/fincat.hpp"
#include "catsite/sites.hpp"

namespace catsite {

/// A presheaf of finite sets on a finite category. Sections over an object
/// are the indices 0..size-1; `restriction[f]` for f: U -> V maps P(V) to P(U).
/// Labels are optional and only used for display and serialization.
struct Presheaf {
  CatPtr base;
  std::vector<int> sizes;
  std::vector<std::vector<int>> restriction;
  std::vector<std::vector<std::string>> labels;

  int size(ObjId u) const { return sizes[u]; }
  int restrict(MorId f, int x) const { return restriction[f][x]; }
  std::string label(ObjId u, int x) const;
  int total_size() const;
};

Report validate_presheaf(const Presheaf& p);

/// Fills every restriction map along identities with the identity function.
void fill_identity_restrictions(Presheaf& p);

Presheaf constant_presheaf(CatPtr base, int n);
/// The presheaf with no sections anywhere.
Presheaf empty_presheaf(CatPtr base);
/// C(-, x).
Presheaf representable(CatPtr base, ObjId x);

/// Components of a natural transformation; the source and target presheaves
/// are passed alongside wherever they matter.
struct NatTrans {
  std::vector<std::vector<int>> components;
  auto operator<=>(const NatTrans&) const = default;
};

bool is_natural(const Presheaf& p, const Presheaf& q, const NatTrans& a);
bool is_iso(const NatTrans& a, const Presheaf& p, const Presheaf& q);
NatTrans identity_nat(const Presheaf& p);
/// The Yoneda map y(u) -> P classifying the element x of P(u).
NatTrans yoneda(const Presheaf& p, ObjId u, int x);
/// b ∘ a.
NatTrans compose(const NatTrans& b, const NatTrans& a);

/// Exhaustive, duplicate-free enumeration. Throws BoundExceeded past `bound`.
std::vector<NatTrans> enumerate_nat_trans(const Presheaf& p, const Presheaf& q,
                                          std::size_t bound = 1u << 20);
std::size_t count_nat_trans(const Presheaf& p, const Presheaf& q);
std::optional<NatTrans> find_isomorphism(const Presheaf& p, const Presheaf& q);

/// A matching family on a sieve: `choice[i]` is the element chosen for
/// `sieve.arrows[i]`.
struct MatchingFamily {
  Sieve sieve;
  std::vector<int> choice;
};

std::vector<std::vector<int>> matching_families(const Presheaf& p, const Sieve& s);
/// Number of elements of P(U) restricting to the family.
int count_amalgamations(const Presheaf& p, const MatchingFamily& family);

struct SheafCounterexample {
  MatchingFamily family;
  int amalgamations = 0;
};

struct SheafCheck {
  bool holds = true;
  std::optional<SheafCounterexample> counterexample;
};

/// Equalizer condition at a single sieve.
SheafCheck check_sheaf_at(const Presheaf& p, const Sieve& s);
SheafCheck check_sheaf(const Presheaf& p, const Topology& j);
bool is_sheaf(const Presheaf& p, const Topology& j);

/// Evaluates the equalizer condition at the sieves generated by `d` and by its
/// refinement `e` and reports whether the two verdicts agree. Throws Error if
/// some member of `e` does not factor through a member of `d`.
bool check_refinement_equivalence(const FinCat& c, const Presheaf& p, const Cover& d, const Cover& e);

struct Sheafification {
  Presheaf sheaf;
  NatTrans unit;
};

/// One plus-construction step. Each P+(U) is the set of matching families on
/// the smallest covering sieve of U (the intersection of J(U)).
Sheafification plus_construction(const Presheaf& p, const Topology& j);
Sheafification sheafify(const Presheaf& p, const Topology& j);
/// Sheafification on morphisms: the unique map a(P) -> a(Q) extending α.
NatTrans sheafify_map(const Presheaf& p, const Presheaf& q, const NatTrans& a, const Topology& j);

/// Intersection of all covering sieves on u.
Sieve smallest_cover(const FinCat& c, const Topology& j, ObjId u);

// Pointwise (co)limits of presheaves.

struct Coproduct {
  Presheaf object;
  std::vector<NatTrans> injections;
};
Coproduct coproduct(const std::vector<Presheaf>& parts);
Presheaf product(const Presheaf& p, const Presheaf& q);
/// Subpresheaf on the elements where a and b agree, with its inclusion.
std::pair<Presheaf, NatTrans> equalizer(const Presheaf& p, const Presheaf& q, const NatTrans& a,
                                        const NatTrans& b);
/// Quotient of q by the relation generated by a(x) ~ b(x), with its projection.
std::pair<Presheaf, NatTrans> coequalizer(const Presheaf& p, const Presheaf& q, const NatTrans& a,
                                          const NatTrans& b);
/// Restriction of p to the given element subsets (must be closed under
/// restriction), together with the inclusion.
std::pair<Presheaf, NatTrans> subpresheaf(const Presheaf& p, const std::vector<std::vector<int>>& keep);
/// Image of a natural transformation as a subpresheaf of the target.
std::pair<Presheaf, NatTrans> image(const Presheaf& p, const Presheaf& q, const NatTrans& a);

}  // namespace catsite
