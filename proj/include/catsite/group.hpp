#pragma once

#include <optional>
#include <string>
#include <vector>

#include "catsite/fincat.hpp"

namespace catsite {

/// A finite group presented by its multiplication table;
/// `table[a][b]` is the index of a·b.
struct FiniteGroup {
  std::vector<std::string> elements;
  std::vector<std::vector<int>> table;

  int order() const { return static_cast<int>(elements.size()); }
  int mul(int a, int b) const { return table[a][b]; }
  int identity() const;
  int inverse(int a) const;
  int element_order(int a) const;
  bool is_abelian() const;
};

Report validate_group(const FiniteGroup& g);

FiniteGroup cyclic_group(int n);
FiniteGroup klein_group();
FiniteGroup symmetric_group3();
FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);

/// A map between element indices.
using GroupMap = std::vector<int>;

bool is_homomorphism(const FiniteGroup& g, const FiniteGroup& h, const GroupMap& map);
bool is_isomorphism(const FiniteGroup& g, const FiniteGroup& h, const GroupMap& map);
/// Backtracking search over images of a generating set.
std::optional<GroupMap> find_group_isomorphism(const FiniteGroup& g, const FiniteGroup& h);
/// Smallest generating set found greedily, in index order.
std::vector<int> generators(const FiniteGroup& g);

/// The one-object category whose morphisms are the group elements.
FinCat delooping(const FiniteGroup& g, const std::string& object = "*");

}  // namespace catsite
