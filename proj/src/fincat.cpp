#include "catsite/fincat.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace catsite {

void Report::append(const Report& other, std::string_view prefix) {
  for (const auto& v : other.violations) {
    violations.push_back(std::string(prefix) + v);
  }
}

ObjId FinCat::add_object(std::string name) {
  if (object_index_.count(name) != 0) {
    throw Error("duplicate object '" + name + "'");
  }
  const ObjId x = static_cast<ObjId>(objects_.size());
  object_index_.emplace(name, x);
  objects_.push_back(name);
  identity_.push_back(kNone);
  into_.emplace_back();
  from_.emplace_back();

  // Re-index the hom table for the new object count.
  const std::size_t n = objects_.size();
  hom_.assign(n * n, {});
  for (MorId f = 0; f < static_cast<MorId>(morphisms_.size()); ++f) {
    hom_[morphisms_[f].dom * n + morphisms_[f].cod].push_back(f);
  }

  identity_[x] = add_morphism("id_" + name, x, x);
  return x;
}

MorId FinCat::add_morphism(std::string name, ObjId dom, ObjId cod) {
  if (dom < 0 || cod < 0 || dom >= static_cast<ObjId>(objects_.size()) ||
      cod >= static_cast<ObjId>(objects_.size())) {
    throw Error("morphism '" + name + "' has an unknown endpoint");
  }
  if (morphism_index_.count(name) != 0) {
    throw Error("duplicate morphism '" + name + "'");
  }
  const MorId f = static_cast<MorId>(morphisms_.size());
  morphism_index_.emplace(name, f);
  morphisms_.push_back({std::move(name), dom, cod});
  for (auto& row : compose_) row.push_back(kNone);
  compose_.emplace_back(morphisms_.size(), kNone);
  index_morphism(f);
  return f;
}

void FinCat::index_morphism(MorId f) {
  const auto& m = morphisms_[f];
  hom_[m.dom * objects_.size() + m.cod].push_back(f);
  into_[m.cod].push_back(f);
  from_[m.dom].push_back(f);
}

void FinCat::set_identity(ObjId x, MorId id) { identity_.at(x) = id; }

void FinCat::set_compose(MorId g, MorId f, MorId gf) { compose_.at(g).at(f) = gf; }

void FinCat::fill_identity_compositions() {
  for (MorId f = 0; f < static_cast<MorId>(morphisms_.size()); ++f) {
    auto& left = compose_[identity_[cod(f)]][f];
    if (left == kNone) left = f;
    auto& right = compose_[f][identity_[dom(f)]];
    if (right == kNone) right = f;
  }
}

std::optional<ObjId> FinCat::find_object(std::string_view name) const {
  auto it = object_index_.find(std::string(name));
  if (it == object_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<MorId> FinCat::find_morphism(std::string_view name) const {
  auto it = morphism_index_.find(std::string(name));
  if (it == morphism_index_.end()) return std::nullopt;
  return it->second;
}

ObjId FinCat::object(std::string_view name) const {
  if (auto x = find_object(name)) return *x;
  throw Error("unknown object '" + std::string(name) + "'");
}

MorId FinCat::morphism_id(std::string_view name) const {
  if (auto f = find_morphism(name)) return *f;
  throw Error("unknown morphism '" + std::string(name) + "'");
}

MorId FinCat::compose(MorId g, MorId f) const {
  if (cod(f) != dom(g)) return kNone;
  return compose_[g][f];
}

const std::vector<MorId>& FinCat::hom(ObjId a, ObjId b) const {
  return hom_.at(a * objects_.size() + b);
}

bool operator==(const FinCat& a, const FinCat& b) {
  if (a.objects_ != b.objects_ || a.identity_ != b.identity_ ||
      a.compose_ != b.compose_ || a.morphisms_.size() != b.morphisms_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.morphisms_.size(); ++i) {
    const auto& l = a.morphisms_[i];
    const auto& r = b.morphisms_[i];
    if (l.name != r.name || l.dom != r.dom || l.cod != r.cod) return false;
  }
  return true;
}

Report validate_category(const FinCat& c) {
  Report r;
  const auto n = static_cast<MorId>(c.morphism_count());
  for (ObjId x = 0; x < static_cast<ObjId>(c.object_count()); ++x) {
    const MorId id = c.identity(x);
    if (id < 0 || id >= n || c.dom(id) != x || c.cod(id) != x) {
      r.add("identity of " + c.object_name(x) + " is not an endomorphism of it");
    }
  }
  if (!r.ok()) return r;

  auto name = [&](MorId f) { return c.morphism_name(f); };
  for (MorId f = 0; f < n; ++f) {
    for (MorId g : c.arrows_from(c.cod(f))) {
      const MorId gf = c.compose(g, f);
      if (gf == kNone) {
        r.add("composite " + name(g) + "∘" + name(f) + " undefined");
      } else if (c.dom(gf) != c.dom(f) || c.cod(gf) != c.cod(g)) {
        r.add("composite " + name(g) + "∘" + name(f) + " = " + name(gf) + " has wrong type");
      }
    }
    if (c.compose(c.identity(c.cod(f)), f) != f) {
      r.add("identity law fails at " + name(f) + ": id_cod∘" + name(f) + " != " + name(f));
    }
    if (c.compose(f, c.identity(c.dom(f))) != f) {
      r.add("identity law fails at " + name(f) + ": " + name(f) + "∘id_dom != " + name(f));
    }
  }
  if (!r.ok()) return r;

  for (MorId f = 0; f < n; ++f) {
    for (MorId g : c.arrows_from(c.cod(f))) {
      const MorId gf = c.compose(g, f);
      for (MorId h : c.arrows_from(c.cod(g))) {
        if (c.compose(h, gf) != c.compose(c.compose(h, g), f)) {
          r.add("associativity fails at (" + name(h) + ", " + name(g) + ", " + name(f) + ")");
        }
      }
    }
  }
  return r;
}

Report validate_functor(const Functor& F) {
  Report r;
  if (!F.source || !F.target) {
    r.add("functor is missing a source or target category");
    return r;
  }
  const FinCat& s = *F.source;
  const FinCat& t = *F.target;
  if (F.on_objects.size() != s.object_count() || F.on_morphisms.size() != s.morphism_count()) {
    r.add("functor maps do not cover the source category");
    return r;
  }
  for (ObjId x = 0; x < static_cast<ObjId>(s.object_count()); ++x) {
    if (F.obj(x) < 0 || F.obj(x) >= static_cast<ObjId>(t.object_count())) {
      r.add("object " + s.object_name(x) + " maps outside the target");
    }
  }
  for (MorId f = 0; f < static_cast<MorId>(s.morphism_count()); ++f) {
    if (F.mor(f) < 0 || F.mor(f) >= static_cast<MorId>(t.morphism_count())) {
      r.add("morphism " + s.morphism_name(f) + " maps outside the target");
    }
  }
  if (!r.ok()) return r;

  for (MorId f = 0; f < static_cast<MorId>(s.morphism_count()); ++f) {
    const MorId Ff = F.mor(f);
    if (t.dom(Ff) != F.obj(s.dom(f))) {
      r.add("dom violation at " + s.morphism_name(f) + ": F(" + s.morphism_name(f) + ") = " +
            t.morphism_name(Ff) + " starts at " + t.object_name(t.dom(Ff)));
    }
    if (t.cod(Ff) != F.obj(s.cod(f))) {
      r.add("cod violation at " + s.morphism_name(f) + ": F(" + s.morphism_name(f) + ") = " +
            t.morphism_name(Ff) + " ends at " + t.object_name(t.cod(Ff)));
    }
  }
  for (ObjId x = 0; x < static_cast<ObjId>(s.object_count()); ++x) {
    if (F.mor(s.identity(x)) != t.identity(F.obj(x))) {
      r.add("identity of " + s.object_name(x) + " not preserved");
    }
  }
  if (!r.ok()) return r;
  for (MorId f = 0; f < static_cast<MorId>(s.morphism_count()); ++f) {
    for (MorId g : s.arrows_from(s.cod(f))) {
      if (F.mor(s.compose(g, f)) != t.compose(F.mor(g), F.mor(f))) {
        r.add("composition not preserved at " + s.morphism_name(g) + "∘" + s.morphism_name(f));
      }
    }
  }
  return r;
}

Functor identity_functor(CatPtr c) {
  Functor F{c, c, {}, {}};
  for (ObjId x = 0; x < static_cast<ObjId>(c->object_count()); ++x) F.on_objects.push_back(x);
  for (MorId f = 0; f < static_cast<MorId>(c->morphism_count()); ++f) F.on_morphisms.push_back(f);
  return F;
}

Functor constant_functor(CatPtr source, CatPtr target, ObjId value) {
  Functor F{source, target, {}, {}};
  F.on_objects.assign(source->object_count(), value);
  F.on_morphisms.assign(source->morphism_count(), target->identity(value));
  return F;
}

Functor compose(const Functor& g, const Functor& f) {
  if (f.target != g.source && !(f.target && g.source && *f.target == *g.source)) {
    throw Error("functors are not composable");
  }
  Functor h{f.source, g.target, {}, {}};
  for (ObjId x : f.on_objects) h.on_objects.push_back(g.obj(x));
  for (MorId m : f.on_morphisms) h.on_morphisms.push_back(g.mor(m));
  return h;
}

bool is_full(const Functor& F) {
  const FinCat& s = *F.source;
  const FinCat& t = *F.target;
  for (ObjId a = 0; a < static_cast<ObjId>(s.object_count()); ++a) {
    for (ObjId b = 0; b < static_cast<ObjId>(s.object_count()); ++b) {
      std::set<MorId> image;
      for (MorId f : s.hom(a, b)) image.insert(F.mor(f));
      if (image.size() != t.hom(F.obj(a), F.obj(b)).size()) return false;
    }
  }
  return true;
}

bool is_faithful(const Functor& F) {
  const FinCat& s = *F.source;
  for (ObjId a = 0; a < static_cast<ObjId>(s.object_count()); ++a) {
    for (ObjId b = 0; b < static_cast<ObjId>(s.object_count()); ++b) {
      std::set<MorId> image;
      for (MorId f : s.hom(a, b)) image.insert(F.mor(f));
      if (image.size() != s.hom(a, b).size()) return false;
    }
  }
  return true;
}

bool is_iso(const FinCat& c, MorId f) {
  for (MorId g : c.hom(c.cod(f), c.dom(f))) {
    if (c.compose(g, f) == c.identity(c.dom(f)) && c.compose(f, g) == c.identity(c.cod(f))) {
      return true;
    }
  }
  return false;
}

bool is_essentially_surjective(const Functor& F) {
  const FinCat& t = *F.target;
  for (ObjId v = 0; v < static_cast<ObjId>(t.object_count()); ++v) {
    bool hit = false;
    for (ObjId x : F.on_objects) {
      for (MorId f : t.hom(x, v)) {
        if (is_iso(t, f)) {
          hit = true;
          break;
        }
      }
      if (hit) break;
    }
    if (!hit) return false;
  }
  return true;
}

bool square_commutes(const FinCat& c, const Square& s) {
  return c.compose(s.right, s.top) != kNone &&
         c.compose(s.right, s.top) == c.compose(s.bottom, s.left);
}

Report validate_square_shape(const FinCat& c, const Square& s) {
  Report r;
  const auto n = static_cast<MorId>(c.morphism_count());
  for (MorId f : {s.top, s.left, s.right, s.bottom}) {
    if (f < 0 || f >= n) {
      r.add("square refers to an unknown morphism");
      return r;
    }
  }
  if (c.dom(s.top) != c.dom(s.left) || c.cod(s.top) != c.dom(s.right) ||
      c.cod(s.left) != c.dom(s.bottom) || c.cod(s.right) != c.cod(s.bottom)) {
    r.add("square morphisms do not form a square");
  } else if (!square_commutes(c, s)) {
    r.add("square (" + c.morphism_name(s.top) + ", " + c.morphism_name(s.left) + ", " +
          c.morphism_name(s.right) + ", " + c.morphism_name(s.bottom) + ") does not commute");
  }
  return r;
}

SquareCheck verify_square(const FinCat& c, const Square& s, SquareMode mode) {
  if (auto r = validate_square_shape(c, s); !r.ok()) throw Error(r.violations.front());

  const ObjId A = c.dom(s.top);
  const ObjId B = c.cod(s.top);
  const ObjId C = c.cod(s.left);
  const ObjId D = c.cod(s.right);

  for (ObjId x = 0; x < static_cast<ObjId>(c.object_count()); ++x) {
    if (mode == SquareMode::pullback) {
      for (MorId p : c.hom(x, B)) {
        for (MorId q : c.hom(x, C)) {
          if (c.compose(s.right, p) != c.compose(s.bottom, q)) continue;
          SquareWitness w{x, p, q, {}};
          for (MorId u : c.hom(x, A)) {
            if (c.compose(s.top, u) == p && c.compose(s.left, u) == q) w.mediators.push_back(u);
          }
          if (w.mediators.size() != 1) return {false, std::move(w)};
        }
      }
    } else {
      for (MorId p : c.hom(B, x)) {
        for (MorId q : c.hom(C, x)) {
          if (c.compose(p, s.top) != c.compose(q, s.left)) continue;
          SquareWitness w{x, p, q, {}};
          for (MorId u : c.hom(D, x)) {
            if (c.compose(u, s.right) == p && c.compose(u, s.bottom) == q) w.mediators.push_back(u);
          }
          if (w.mediators.size() != 1) return {false, std::move(w)};
        }
      }
    }
  }
  return {true, std::nullopt};
}

std::optional<Square> find_pullback(const FinCat& c, MorId f, MorId g) {
  if (c.cod(f) != c.cod(g)) throw Error("find_pullback: not a cospan");
  const ObjId B = c.dom(f);
  const ObjId C = c.dom(g);
  for (ObjId a = 0; a < static_cast<ObjId>(c.object_count()); ++a) {
    for (MorId top : c.hom(a, B)) {
      for (MorId left : c.hom(a, C)) {
        Square s{top, left, f, g};
        if (!square_commutes(c, s)) continue;
        if (verify_square(c, s, SquareMode::pullback).holds) return s;
      }
    }
  }
  return std::nullopt;
}

std::vector<Square> all_pushout_squares(const FinCat& c) {
  std::vector<Square> out;
  for (MorId top = 0; top < static_cast<MorId>(c.morphism_count()); ++top) {
    for (MorId left : c.arrows_from(c.dom(top))) {
      for (MorId right : c.arrows_from(c.cod(top))) {
        for (MorId bottom : c.hom(c.cod(left), c.cod(right))) {
          Square s{top, left, right, bottom};
          if (square_commutes(c, s) && verify_square(c, s, SquareMode::pushout).holds) {
            out.push_back(s);
          }
        }
      }
    }
  }
  return out;
}

bool is_mono(const FinCat& c, MorId f) {
  const ObjId a = c.dom(f);
  for (ObjId x = 0; x < static_cast<ObjId>(c.object_count()); ++x) {
    const auto& maps = c.hom(x, a);
    for (std::size_t i = 0; i < maps.size(); ++i) {
      for (std::size_t j = i + 1; j < maps.size(); ++j) {
        if (c.compose(f, maps[i]) == c.compose(f, maps[j])) return false;
      }
    }
  }
  return true;
}

bool is_epi(const FinCat& c, MorId f) {
  const ObjId b = c.cod(f);
  for (ObjId x = 0; x < static_cast<ObjId>(c.object_count()); ++x) {
    const auto& maps = c.hom(b, x);
    for (std::size_t i = 0; i < maps.size(); ++i) {
      for (std::size_t j = i + 1; j < maps.size(); ++j) {
        if (c.compose(maps[i], f) == c.compose(maps[j], f)) return false;
      }
    }
  }
  return true;
}

Report validate_designated(const FinCat& c, const DesignatedSquares& d) {
  Report r;
  for (std::size_t i = 0; i < d.unions.size(); ++i) {
    const auto& s = d.unions[i];
    const std::string tag = "union square " + std::to_string(i) + ": ";
    if (auto shape = validate_square_shape(c, s); !shape.ok()) {
      r.append(shape, tag);
      continue;
    }
    if (!verify_square(c, s, SquareMode::pullback).holds) r.add(tag + "not a pullback");
    if (!verify_square(c, s, SquareMode::pushout).holds) r.add(tag + "not a pushout");
  }
  for (MorId m : d.monos) {
    if (m < 0 || m >= static_cast<MorId>(c.morphism_count())) {
      r.add("designated mono refers to an unknown morphism");
    } else if (!is_mono(c, m)) {
      r.add("designated mono " + c.morphism_name(m) + " is not left-cancellable");
    }
  }
  return r;
}

Square map_square(const Functor& F, const Square& s) {
  return {F.mor(s.top), F.mor(s.left), F.mor(s.right), F.mor(s.bottom)};
}

FinCat terminal_category() {
  FinCat c;
  c.add_object("*");
  c.fill_identity_compositions();
  return c;
}

FinCat interval_category() {
  FinCat c;
  const ObjId a = c.add_object("a");
  const ObjId b = c.add_object("b");
  c.add_morphism("f", a, b);
  c.fill_identity_compositions();
  return c;
}

FinCat poset_category(const std::vector<std::string>& elements,
                      const std::vector<std::pair<std::string, std::string>>& leq) {
  const std::size_t n = elements.size();
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index[elements[i]] = i;
  std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) rel[i][i] = true;
  for (const auto& [lo, hi] : leq) {
    if (!index.count(lo) || !index.count(hi)) throw Error("poset relation names an unknown element");
    rel[index[lo]][index[hi]] = true;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (rel[i][k] && rel[k][j]) rel[i][j] = true;

  FinCat c;
  for (const auto& e : elements) c.add_object(e);
  std::vector<std::vector<MorId>> arrow(n, std::vector<MorId>(n, kNone));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!rel[i][j]) continue;
      arrow[i][j] = i == j ? c.identity(static_cast<ObjId>(i))
                           : c.add_morphism(elements[i] + "<=" + elements[j],
                                            static_cast<ObjId>(i), static_cast<ObjId>(j));
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (rel[i][j] && rel[j][k]) c.set_compose(arrow[j][k], arrow[i][j], arrow[i][k]);
  return c;
}

FinCat discrete_category(const std::vector<std::string>& objects) {
  FinCat c;
  for (const auto& o : objects) c.add_object(o);
  c.fill_identity_compositions();
  return c;
}

}  // namespace catsite
