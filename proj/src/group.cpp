#include "catsite/group.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace catsite {

int FiniteGroup::identity() const {
  for (int e = 0; e < order(); ++e) {
    bool ok = true;
    for (int a = 0; a < order() && ok; ++a) ok = mul(e, a) == a && mul(a, e) == a;
    if (ok) return e;
  }
  return kNone;
}

int FiniteGroup::inverse(int a) const {
  const int e = identity();
  for (int b = 0; b < order(); ++b)
    if (mul(a, b) == e) return b;
  return kNone;
}

int FiniteGroup::element_order(int a) const {
  const int e = identity();
  int k = 1;
  for (int x = a; x != e; x = mul(x, a)) ++k;
  return k;
}

bool FiniteGroup::is_abelian() const {
  for (int a = 0; a < order(); ++a)
    for (int b = 0; b < order(); ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

Report validate_group(const FiniteGroup& g) {
  Report r;
  const int n = g.order();
  if (n == 0) {
    r.add("group has no elements");
    return r;
  }
  if (static_cast<int>(g.table.size()) != n) {
    r.add("multiplication table has the wrong number of rows");
    return r;
  }
  for (const auto& row : g.table) {
    if (static_cast<int>(row.size()) != n ||
        std::any_of(row.begin(), row.end(), [n](int v) { return v < 0 || v >= n; })) {
      r.add("multiplication table row is malformed");
      return r;
    }
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c))) {
          r.add("associativity fails at (" + g.elements[a] + ", " + g.elements[b] + ", " +
                g.elements[c] + ")");
          return r;
        }
  if (g.identity() == kNone) {
    r.add("no identity element");
    return r;
  }
  for (int a = 0; a < n; ++a)
    if (g.inverse(a) == kNone) r.add("element " + g.elements[a] + " has no inverse");
  return r;
}

FiniteGroup cyclic_group(int n) {
  FiniteGroup g;
  for (int i = 0; i < n; ++i) g.elements.push_back(i == 0 ? "e" : "r" + std::to_string(i));
  g.table.assign(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) g.table[a][b] = (a + b) % n;
  return g;
}

FiniteGroup klein_group() {
  FiniteGroup g = direct_product(cyclic_group(2), cyclic_group(2));
  g.elements = {"e", "a", "b", "ab"};
  return g;
}

FiniteGroup symmetric_group3() {
  // Permutations of {0,1,2} in lexicographic order; (p·q)(i) = p(q(i)).
  std::vector<std::vector<int>> perms;
  std::vector<int> p{0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));

  FiniteGroup g;
  for (const auto& q : perms) {
    g.elements.push_back("[" + std::to_string(q[0]) + std::to_string(q[1]) + std::to_string(q[2]) + "]");
  }
  const int n = static_cast<int>(perms.size());
  g.table.assign(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      std::vector<int> c(3);
      for (int i = 0; i < 3; ++i) c[i] = perms[a][perms[b][i]];
      g.table[a][b] = static_cast<int>(std::find(perms.begin(), perms.end(), c) - perms.begin());
    }
  }
  return g;
}

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  FiniteGroup g;
  const int m = b.order();
  for (int i = 0; i < a.order(); ++i)
    for (int j = 0; j < m; ++j) g.elements.push_back("(" + a.elements[i] + "," + b.elements[j] + ")");
  const int n = a.order() * m;
  g.table.assign(n, std::vector<int>(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      g.table[x][y] = a.mul(x / m, y / m) * m + b.mul(x % m, y % m);
  return g;
}

bool is_homomorphism(const FiniteGroup& g, const FiniteGroup& h, const GroupMap& map) {
  if (static_cast<int>(map.size()) != g.order()) return false;
  for (int a = 0; a < g.order(); ++a)
    for (int b = 0; b < g.order(); ++b)
      if (map[g.mul(a, b)] != h.mul(map[a], map[b])) return false;
  return true;
}

bool is_isomorphism(const FiniteGroup& g, const FiniteGroup& h, const GroupMap& map) {
  if (g.order() != h.order() || !is_homomorphism(g, h, map)) return false;
  std::set<int> image(map.begin(), map.end());
  return static_cast<int>(image.size()) == h.order();
}

std::vector<int> generators(const FiniteGroup& g) {
  std::vector<int> gens;
  std::set<int> span{g.identity()};
  auto close = [&] {
    bool grew = true;
    while (grew) {
      grew = false;
      for (int a : std::vector<int>(span.begin(), span.end()))
        for (int s : gens)
          if (span.insert(g.mul(a, s)).second) grew = true;
    }
  };
  // Prefer high-order elements so cyclic groups need one generator.
  std::vector<int> order(g.order());
  for (int i = 0; i < g.order(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return g.element_order(a) > g.element_order(b); });
  for (int a : order) {
    if (static_cast<int>(span.size()) == g.order()) break;
    if (span.count(a)) continue;
    gens.push_back(a);
    close();
  }
  return gens;
}

std::optional<GroupMap> find_group_isomorphism(const FiniteGroup& g, const FiniteGroup& h) {
  if (g.order() != h.order()) return std::nullopt;
  const auto gens = generators(g);

  // Extend an assignment on generators to the whole group by BFS over words.
  auto extend = [&](const std::vector<int>& images) -> std::optional<GroupMap> {
    GroupMap map(g.order(), kNone);
    map[g.identity()] = h.identity();
    std::vector<int> frontier{g.identity()};
    while (!frontier.empty()) {
      std::vector<int> next;
      for (int a : frontier) {
        for (std::size_t k = 0; k < gens.size(); ++k) {
          const int b = g.mul(a, gens[k]);
          const int image = h.mul(map[a], images[k]);
          if (map[b] == kNone) {
            map[b] = image;
            next.push_back(b);
          } else if (map[b] != image) {
            return std::nullopt;
          }
        }
      }
      frontier = std::move(next);
    }
    if (!is_isomorphism(g, h, map)) return std::nullopt;
    return map;
  };

  std::vector<int> images(gens.size());
  std::function<std::optional<GroupMap>(std::size_t)> search = [&](std::size_t k) -> std::optional<GroupMap> {
    if (k == gens.size()) return extend(images);
    for (int c = 0; c < h.order(); ++c) {
      if (h.element_order(c) != g.element_order(gens[k])) continue;
      images[k] = c;
      if (auto m = search(k + 1)) return m;
    }
    return std::nullopt;
  };
  return search(0);
}

FinCat delooping(const FiniteGroup& g, const std::string& object) {
  FinCat c;
  const ObjId x = c.add_object(object);
  // add_object creates "id_<object>"; reuse it for the group identity.
  std::vector<MorId> ids(g.order());
  const int e = g.identity();
  for (int a = 0; a < g.order(); ++a) {
    ids[a] = a == e ? c.identity(x) : c.add_morphism(g.elements[a], x, x);
  }
  for (int a = 0; a < g.order(); ++a)
    for (int b = 0; b < g.order(); ++b) c.set_compose(ids[a], ids[b], ids[g.mul(a, b)]);
  return c;
}

}  // namespace catsite
