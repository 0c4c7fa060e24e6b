#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace catsite {

/// Raised for rejected inputs (malformed arguments, unknown names, size bounds).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an enumeration would exceed a caller-supplied size bound.
class BoundExceeded : public Error {
 public:
  BoundExceeded(std::string what, std::size_t bound)
      : Error(what + " exceeds bound " + std::to_string(bound)), bound_(bound) {}
  std::size_t bound() const { return bound_; }

 private:
  std::size_t bound_;
};

using ObjId = int;
using MorId = int;
inline constexpr int kNone = -1;

/// A list of human-readable axiom violations; empty means valid.
struct Report {
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
  void add(std::string v) { violations.push_back(std::move(v)); }
  void append(const Report& other, std::string_view prefix = {});
};

struct Morphism {
  std::string name;
  ObjId dom = kNone;
  ObjId cod = kNone;
};

/// A finitely presented category: named objects, named morphisms, and an
/// explicit composition table. Identifiers are opaque strings.
///
/// Objects get an identity morphism named "id_<object>" when added; use
/// `set_identity` to designate a different one. `compose(g, f)` is g∘f and
/// returns kNone when the pair is not composable or the entry is unset.
class FinCat {
 public:
  ObjId add_object(std::string name);
  MorId add_morphism(std::string name, ObjId dom, ObjId cod);
  void set_identity(ObjId x, MorId id);
  void set_compose(MorId g, MorId f, MorId gf);
  /// Fill every unset entry of the form id∘f or f∘id with f.
  void fill_identity_compositions();

  std::size_t object_count() const { return objects_.size(); }
  std::size_t morphism_count() const { return morphisms_.size(); }

  const std::string& object_name(ObjId x) const { return objects_.at(x); }
  const Morphism& morphism(MorId f) const { return morphisms_.at(f); }
  const std::string& morphism_name(MorId f) const { return morphisms_.at(f).name; }
  ObjId dom(MorId f) const { return morphisms_[f].dom; }
  ObjId cod(MorId f) const { return morphisms_[f].cod; }

  std::optional<ObjId> find_object(std::string_view name) const;
  std::optional<MorId> find_morphism(std::string_view name) const;
  ObjId object(std::string_view name) const;
  MorId morphism_id(std::string_view name) const;

  MorId identity(ObjId x) const { return identity_.at(x); }
  bool is_identity(MorId f) const { return identity_[dom(f)] == f; }
  MorId compose(MorId g, MorId f) const;

  /// Morphisms a -> b, in id order.
  const std::vector<MorId>& hom(ObjId a, ObjId b) const;
  const std::vector<MorId>& arrows_into(ObjId b) const { return into_.at(b); }
  const std::vector<MorId>& arrows_from(ObjId a) const { return from_.at(a); }

  friend bool operator==(const FinCat&, const FinCat&);

 private:
  void index_morphism(MorId f);

  std::vector<std::string> objects_;
  std::vector<Morphism> morphisms_;
  std::vector<MorId> identity_;
  // Row-major over (g, f); resized as morphisms are added.
  std::vector<std::vector<MorId>> compose_;
  std::vector<std::vector<MorId>> hom_;  // a * N + b
  std::vector<std::vector<MorId>> into_;
  std::vector<std::vector<MorId>> from_;
  std::unordered_map<std::string, ObjId> object_index_;
  std::unordered_map<std::string, MorId> morphism_index_;
};

using CatPtr = std::shared_ptr<const FinCat>;

/// Checks identity, typing and associativity axioms exhaustively.
Report validate_category(const FinCat& c);

/// Object and morphism maps between two finite categories.
struct Functor {
  CatPtr source;
  CatPtr target;
  std::vector<ObjId> on_objects;
  std::vector<MorId> on_morphisms;

  ObjId obj(ObjId x) const { return on_objects[x]; }
  MorId mor(MorId f) const { return on_morphisms[f]; }
};

Report validate_functor(const Functor& F);
Functor identity_functor(CatPtr c);
Functor constant_functor(CatPtr source, CatPtr target, ObjId value);
/// g ∘ f; requires f.target and g.source to be the same category.
Functor compose(const Functor& g, const Functor& f);

bool is_full(const Functor& F);
bool is_faithful(const Functor& F);
bool is_iso(const FinCat& c, MorId f);
bool is_essentially_surjective(const Functor& F);

/// Commutative square
///
///     A --top--> B
///     |          |
///    left      right
///     v          v
///     C --bottom-> D
struct Square {
  MorId top = kNone;
  MorId left = kNone;
  MorId right = kNone;
  MorId bottom = kNone;
};

enum class SquareMode { pullback, pushout };

/// A cone (pullback mode) or cocone (pushout mode) over the square's
/// cospan/span with either zero or several mediating morphisms.
struct SquareWitness {
  ObjId object = kNone;
  MorId leg_b = kNone;  // X -> B, or B -> X in pushout mode
  MorId leg_c = kNone;  // X -> C, or C -> X in pushout mode
  std::vector<MorId> mediators;
};

struct SquareCheck {
  bool holds = false;
  std::optional<SquareWitness> witness;
};

bool square_commutes(const FinCat& c, const Square& s);
Report validate_square_shape(const FinCat& c, const Square& s);
/// Exhaustive universal-property search. Throws Error if `s` does not commute.
SquareCheck verify_square(const FinCat& c, const Square& s, SquareMode mode);

/// Searches for a pullback square of the cospan B --f--> D <--g-- C, returned
/// with right = f and bottom = g.
std::optional<Square> find_pullback(const FinCat& c, MorId f, MorId g);
/// Every commuting square of `c` that is a pushout.
std::vector<Square> all_pushout_squares(const FinCat& c);

bool is_mono(const FinCat& c, MorId f);
bool is_epi(const FinCat& c, MorId f);

/// Union squares (simultaneous pullback and pushout) and the designated class
/// of open immersions supplied with a fixture category.
struct DesignatedSquares {
  std::vector<Square> unions;
  std::vector<MorId> monos;
};

Report validate_designated(const FinCat& c, const DesignatedSquares& d);

/// Image of a square under a functor.
Square map_square(const Functor& F, const Square& s);

// Small builders used by fixtures and tests.

FinCat terminal_category();
/// a --f--> b.
FinCat interval_category();
/// Preorder generated by `leq` (reflexive-transitive closure); at most one
/// arrow per ordered pair, named "x<=y" (identities "id_x").
FinCat poset_category(const std::vector<std::string>& elements,
                      const std::vector<std::pair<std::string, std::string>>& leq);
/// Discrete category on the given objects.
FinCat discrete_category(const std::vector<std::string>& objects);

}  // namespace catsite
