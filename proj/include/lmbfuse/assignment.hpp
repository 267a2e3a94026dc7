#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <queue>
#include <stdexcept>
#include <utility>
#include <vector>

namespace lmbfuse {

constexpr double kInfCost = std::numeric_limits<double>::infinity();

/// Dense row-major cost matrix. Infinite entries mark forbidden pairs.
struct CostMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;

  CostMatrix() = default;
  CostMatrix(int r, int c, double fill = 0.0)
      : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, fill) {}

  double& at(int r, int c) { return data[static_cast<std::size_t>(r) * cols + c]; }
  double at(int r, int c) const { return data[static_cast<std::size_t>(r) * cols + c]; }
};

struct Assignment {
  std::vector<int> row_to_col;
  double cost = 0.0;
};

namespace detail {

/// Potentials and matching for the shortest-augmenting-path solver.
/// Rows and columns are 1-indexed internally; column 0 is the virtual
/// start used by the augmentation loop.
struct JvState {
  std::vector<double> u;  // row potentials, size rows+1
  std::vector<double> v;  // col potentials, size cols+1
  std::vector<int> p;     // p[j] = row matched to column j (1-indexed), 0 = free

  void init(int rows, int cols) {
    u.assign(rows + 1, 0.0);
    v.assign(cols + 1, 0.0);
    p.assign(cols + 1, 0);
  }

  /// Augments the matching with row `i` (1-indexed). Returns false when no
  /// augmenting path of finite cost exists; the state is then unusable.
  bool augment(const CostMatrix& m, int i) {
    const int cols = m.cols;
    std::vector<double> minv(cols + 1, kInfCost);
    std::vector<int> way(cols + 1, 0);
    std::vector<char> used(cols + 1, 0);
    p[0] = i;
    int j0 = 0;
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      int j1 = -1;
      double delta = kInfCost;
      for (int j = 1; j <= cols; ++j) {
        if (used[j]) continue;
        const double cur = m.at(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      if (j1 < 0 || !(delta < kInfCost)) return false;
      for (int j = 0; j <= cols; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
    return true;
  }

  std::vector<int> row_to_col(int rows) const {
    std::vector<int> out(rows, -1);
    for (int j = 1; j < static_cast<int>(p.size()); ++j) {
      if (p[j] > 0) out[p[j] - 1] = j - 1;
    }
    return out;
  }
};

inline double assignment_cost(const CostMatrix& m, const std::vector<int>& row_to_col) {
  double c = 0.0;
  for (int r = 0; r < m.rows; ++r) c += m.at(r, row_to_col[r]);
  return c;
}

}  // namespace detail

/// Minimum-cost assignment of every row to a distinct column (rows <= cols).
/// Returns nullopt when no assignment of finite cost exists.
inline std::optional<Assignment> solve_assignment(const CostMatrix& m) {
  if (m.rows > m.cols) throw std::invalid_argument("assignment requires rows <= cols");
  detail::JvState state;
  state.init(m.rows, m.cols);
  for (int i = 1; i <= m.rows; ++i) {
    if (!state.augment(m, i)) return std::nullopt;
  }
  Assignment out;
  out.row_to_col = state.row_to_col(m.rows);
  out.cost = detail::assignment_cost(m, out.row_to_col);
  return out;
}

/// Murty's ranked assignment: enumerates assignments in non-decreasing cost
/// order. Stops after `max_count` solutions, or when the next-best cost
/// exceeds the optimum by more than `max_cost_gap`. Children reuse the
/// parent's dual potentials, so each subproblem costs one augmenting path.
inline std::vector<Assignment> murty_ranked(const CostMatrix& base, int max_count,
                                            double max_cost_gap = kInfCost) {
  std::vector<Assignment> out;
  if (max_count <= 0 || base.rows == 0) return out;
  if (base.rows > base.cols) throw std::invalid_argument("assignment requires rows <= cols");

  struct Node {
    std::vector<std::pair<int, int>> forced;  // (row, col) pinned to the solution
    std::vector<std::pair<int, int>> banned;  // (row, col) excluded
    detail::JvState state;
    std::vector<int> row_to_col;
    double cost = 0.0;
  };
  struct NodeCompare {
    bool operator()(const Node& a, const Node& b) const { return a.cost > b.cost; }
  };

  Node root;
  root.state.init(base.rows, base.cols);
  for (int i = 1; i <= base.rows; ++i) {
    if (!root.state.augment(base, i)) return out;  // infeasible problem
  }
  root.row_to_col = root.state.row_to_col(base.rows);
  root.cost = detail::assignment_cost(base, root.row_to_col);
  const double cost_ceiling =
      max_cost_gap < kInfCost ? root.cost + max_cost_gap : kInfCost;

  std::priority_queue<Node, std::vector<Node>, NodeCompare> queue;
  queue.push(std::move(root));

  CostMatrix scratch;
  while (!queue.empty() && static_cast<int>(out.size()) < max_count) {
    Node node = queue.top();
    queue.pop();
    out.push_back({node.row_to_col, node.cost});
    if (static_cast<int>(out.size()) >= max_count) break;

    // Rebuild this node's effective matrix once, then partition.
    scratch = base;
    for (const auto& [r, c] : node.forced) {
      for (int j = 0; j < scratch.cols; ++j) scratch.at(r, j) = kInfCost;
      scratch.at(r, c) = base.at(r, c);
    }
    for (const auto& [r, c] : node.banned) scratch.at(r, c) = kInfCost;

    std::vector<char> is_forced(base.rows, 0);
    for (const auto& [r, c] : node.forced) is_forced[r] = 1;

    for (int r = 0; r < base.rows; ++r) {
      if (is_forced[r]) continue;
      const int c = node.row_to_col[r];
      const double saved = scratch.at(r, c);
      scratch.at(r, c) = kInfCost;

      Node child;
      child.forced = node.forced;
      child.banned = node.banned;
      child.banned.emplace_back(r, c);
      child.state = node.state;
      // Drop row r from the matching, keep potentials, re-augment that row.
      for (int j = 1; j < static_cast<int>(child.state.p.size()); ++j) {
        if (child.state.p[j] == r + 1) child.state.p[j] = 0;
      }
      if (child.state.augment(scratch, r + 1)) {
        child.row_to_col = child.state.row_to_col(base.rows);
        child.cost = detail::assignment_cost(scratch, child.row_to_col);
        if (child.cost <= cost_ceiling) queue.push(std::move(child));
      }

      // Pin row r to its solution column for the remaining children.
      scratch.at(r, c) = saved;
      node.forced.emplace_back(r, c);
      for (int j = 0; j < scratch.cols; ++j) {
        if (j != c) scratch.at(r, j) = kInfCost;
      }
    }
  }
  return out;
}

}  // namespace lmbfuse
