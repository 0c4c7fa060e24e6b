#pragma once

#include <cstddef>
#include <vector>

namespace catsite::detail {

/// A forcing constraint value[to] = map[value[from]].
struct Edge {
  int to;
  const std::vector<int>* map;
};

/// Backtracking over finite-domain variables linked by functional edges.
/// Assigning a variable immediately forces every variable reachable along
/// its edges; a clash prunes the branch. With `groups` set, variables in the
/// same group must take pairwise distinct values.
class PropagationSearch {
 public:
  PropagationSearch(std::vector<int> domain, std::vector<std::vector<Edge>> edges,
                    std::vector<int> groups = {}, int group_count = 0)
      : domain_(std::move(domain)),
        edges_(std::move(edges)),
        groups_(std::move(groups)),
        value_(domain_.size(), -1) {
    if (!groups_.empty()) {
      used_.resize(group_count);
      for (std::size_t v = 0; v < domain_.size(); ++v) {
        auto& u = used_[groups_[v]];
        if (static_cast<int>(u.size()) < domain_[v]) u.resize(domain_[v], 0);
      }
    }
  }

  /// Calls `visit(values)` for each solution; `visit` returns false to stop.
  template <class Visit>
  void run(Visit&& visit) {
    stopped_ = false;
    search(0, visit);
  }

 private:
  template <class Visit>
  void search(std::size_t start, Visit& visit) {
    std::size_t v = start;
    while (v < value_.size() && value_[v] != -1) ++v;
    if (v == value_.size()) {
      if (!visit(value_)) stopped_ = true;
      return;
    }
    for (int candidate = 0; candidate < domain_[v] && !stopped_; ++candidate) {
      const std::size_t mark = trail_.size();
      if (assign(static_cast<int>(v), candidate)) search(v + 1, visit);
      undo(mark);
    }
  }

  bool assign(int v, int x) {
    std::vector<std::pair<int, int>> stack{{v, x}};
    while (!stack.empty()) {
      auto [var, val] = stack.back();
      stack.pop_back();
      if (val < 0 || val >= domain_[var]) return false;
      if (value_[var] != -1) {
        if (value_[var] != val) return false;
        continue;
      }
      if (!groups_.empty()) {
        auto& slot = used_[groups_[var]][val];
        if (slot) return false;
        slot = 1;
      }
      value_[var] = val;
      trail_.push_back(var);
      for (const Edge& e : edges_[var]) stack.emplace_back(e.to, (*e.map)[val]);
    }
    return true;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      const int var = trail_.back();
      trail_.pop_back();
      if (!groups_.empty()) used_[groups_[var]][value_[var]] = 0;
      value_[var] = -1;
    }
  }

  std::vector<int> domain_;
  std::vector<std::vector<Edge>> edges_;
  std::vector<int> groups_;
  std::vector<std::vector<char>> used_;
  std::vector<int> value_;
  std::vector<int> trail_;
  bool stopped_ = false;
};

}  // namespace catsite::detail
