#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "catsite/fincat.hpp"
#include "catsite/sheaves.hpp"
#include "catsite/sites.hpp"

namespace catsite {

// ---------------------------------------------------------------------------
// Adhesion

struct AdhesionWitness {
  std::string property;  // "unions", "intersections", "monos" or "pushouts"
  Square square;         // source square; for "monos" only `top` is set
  std::string detail;
};

/// Each flag is false exactly when a witness with that property is present.
struct AdhesiveReport {
  bool preserves_unions = true;
  bool preserves_intersections = true;
  bool preserves_designated_monos = true;
  bool preserves_all_pushouts = true;
  std::vector<AdhesionWitness> witnesses;

  /// Union squares and designated monos are preserved.
  bool adhesive() const { return preserves_unions && preserves_designated_monos; }
};

/// Identities count as designated monos on both sides.
AdhesiveReport check_adhesion(const Functor& F, const DesignatedSquares& src, const DesignatedSquares& tgt);

// ---------------------------------------------------------------------------
// The adhesive site

/// {F(φ) | φ in the cover} at F(base).
Cover image_cover(const Functor& F, const Cover& c);
/// Topology on the target generated by the sieves (F S) for S covering in J.
Topology build_adhesive_site(const Functor& F, const Topology& j);

/// ⟨Fτ⟩: the image of every τ-cover, plus identity covers on every target object.
Pretopology image_pretopology(const Functor& F, const Pretopology& tau);

struct CoverReflection {
  bool holds = true;
  /// Source object U and a K-covering sieve on F(U) refined by no J-cover image.
  std::optional<std::pair<ObjId, Sieve>> witness;
};

/// For every U and every K-covering T on F(U), some S in J(U) has F(S) ⊆ T.
CoverReflection is_cover_reflecting(const Functor& F, const Topology& j, const Topology& k);

/// Whether `g` satisfies the equalizer condition at the sieve generated by the
/// image of every J-covering sieve.
bool sheaf_on_image_covers(const Functor& F, const Topology& j, const Presheaf& g);

// ---------------------------------------------------------------------------
// Pullback and Kan extensions

/// G ∘ F.
Presheaf pullback_presheaf(const Functor& F, const Presheaf& g);
NatTrans pullback_map(const Functor& F, const NatTrans& a);

/// Left Kan extension: (F_! P)(V) is the colimit of P(U) over arrows V -> F(U).
Presheaf lan_presheaf(const Functor& F, const Presheaf& p);
struct Extension {
  Presheaf object;
  /// P -> F* F_! P; entries are -1 where the leg through U was dropped.
  NatTrans unit;
};
/// The same colimit with the legs through source objects outside `objects`
/// dropped. Used to build deliberately broken extensions.
Extension lan_presheaf_restricted(const Functor& F, const Presheaf& p, const std::vector<bool>& objects);
NatTrans lan_map(const Functor& F, const Presheaf& p, const Presheaf& q, const NatTrans& a);
/// P -> F* F_! P, sending x in P(U) to the class of (id_FU, x).
NatTrans lan_unit(const Functor& F, const Presheaf& p);
/// F_! F* G -> G.
NatTrans lan_counit(const Functor& F, const Presheaf& g);
/// Sheaf-level F_!: Lan followed by sheafification for `k`.
Presheaf lan_sheaf(const Functor& F, const Presheaf& p, const Topology& k);

/// Right Kan extension: (F_* P)(V) is the set of compatible families
/// x_(U, g: FU -> V) in P(U).
Presheaf ran_presheaf(const Functor& F, const Presheaf& p);
NatTrans ran_map(const Functor& F, const Presheaf& p, const Presheaf& q, const NatTrans& a);
/// G -> F_* F* G.
NatTrans ran_unit(const Functor& F, const Presheaf& g);
/// F* F_* P -> P.
NatTrans ran_counit(const Functor& F, const Presheaf& p);

// ---------------------------------------------------------------------------
// Adjunctions

/// A functor between presheaf categories given on objects and on maps.
struct PresheafFunctor {
  std::function<Presheaf(const Presheaf&)> on_objects;
  /// (P, Q, a: P -> Q) -> image of a.
  std::function<NatTrans(const Presheaf&, const Presheaf&, const NatTrans&)> on_maps;
};

/// L ⊣ R presented by the unit P -> R L P.
struct Adjunction {
  PresheafFunctor left;
  PresheafFunctor right;
  std::function<NatTrans(const Presheaf&)> unit;
};

PresheafFunctor pullback_functor(const Functor& F);
Adjunction identity_adjunction();
/// F_! ⊣ F*.
Adjunction lan_adjunction(const Functor& F);
/// F* ⊣ F_*.
Adjunction ran_adjunction(const Functor& F);
/// F_! ⊣ F* between sheaves: Lan followed by sheafification for `k` on the target.
Adjunction lan_sheaf_adjunction(const Functor& F, const Topology& k);
/// L2 L1 ⊣ R1 R2 for `first` = (L1 ⊣ R1) followed by `second` = (L2 ⊣ R2).
Adjunction compose(const Adjunction& second, const Adjunction& first);

struct AdjunctionCheck {
  bool holds = true;
  std::string witness;
  std::size_t pairs_checked = 0;
};

struct AdjunctionOptions {
  /// Maximum number of test morphisms used per fixture pair for naturality.
  std::size_t naturality_samples = 6;
  std::size_t hom_bound = 1u << 16;
};

/// For every fixture pair (P, Q), β ↦ R(β) ∘ η_P is a bijection
/// Hom(L P, Q) -> Hom(P, R Q), natural in P and in Q along fixture morphisms.
AdjunctionCheck verify_adjunction(const Adjunction& adj, const std::vector<Presheaf>& left_fixtures,
                                  const std::vector<Presheaf>& right_fixtures, AdjunctionOptions options = {});

// ---------------------------------------------------------------------------
// Properties of F* on fixture presheaves

struct PullbackPropertyCheck {
  bool holds = true;
  std::string witness;
};

/// Hom(G, H) -> Hom(F*G, F*H) is injective for all fixture pairs.
PullbackPropertyCheck pullback_faithful_on(const Functor& F, const std::vector<Presheaf>& fixtures);
/// Hom(G, H) -> Hom(F*G, F*H) is surjective for all fixture pairs.
PullbackPropertyCheck pullback_full_on(const Functor& F, const std::vector<Presheaf>& fixtures);
/// F*G ≅ F*H implies G ≅ H for all fixture pairs.
PullbackPropertyCheck pullback_reflects_isos_on(const Functor& F, const std::vector<Presheaf>& fixtures);
/// F* commutes with binary products, coproducts, equalizers and coequalizers
/// on the fixture presheaves and the maps between them.
PullbackPropertyCheck pullback_exact_on(const Functor& F, const std::vector<Presheaf>& fixtures,
                                        std::size_t samples = 4);

/// Every target object has an arrow to or from some object in the image.
bool image_is_connected(const Functor& F);

}  // namespace catsite
