#include "coarsekit/matching.hpp"

#include <algorithm>
#include <limits>
#include <queue>

#include "coarsekit/error.hpp"

namespace coarsekit {

namespace {

constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();

class HopcroftKarp {
 public:
  HopcroftKarp(std::size_t right_count, const std::vector<std::vector<std::size_t>>& adj)
      : adj_(adj), dist_(adj.size()), next_(adj.size()) {
    m_.left_to_right.assign(adj.size(), kUnmatched);
    m_.right_to_left.assign(right_count, kUnmatched);
    for (const auto& row : adj)
      for (auto v : row)
        if (v >= right_count) throw ValidationError("matching edge to unknown right vertex");
  }

  BipartiteMatching run() {
    while (bfs()) {
      std::fill(next_.begin(), next_.end(), 0);
      for (std::size_t u = 0; u < adj_.size(); ++u)
        if (m_.left_to_right[u] == kUnmatched && dfs(u)) ++m_.size;
    }
    return std::move(m_);
  }

 private:
  bool bfs() {
    std::queue<std::size_t> q;
    bool found = false;
    for (std::size_t u = 0; u < adj_.size(); ++u) {
      if (m_.left_to_right[u] == kUnmatched) {
        dist_[u] = 0;
        q.push(u);
      } else {
        dist_[u] = kInf;
      }
    }
    while (!q.empty()) {
      auto u = q.front();
      q.pop();
      for (auto v : adj_[u]) {
        auto w = m_.right_to_left[v];
        if (w == kUnmatched) {
          found = true;
        } else if (dist_[w] == kInf) {
          dist_[w] = dist_[u] + 1;
          q.push(w);
        }
      }
    }
    return found;
  }

  // Iterative DFS along the layered graph, so deep augmenting paths on large
  // windows cannot overflow the stack.
  bool dfs(std::size_t root) {
    std::vector<std::size_t> stack{root};
    while (!stack.empty()) {
      auto u = stack.back();
      if (next_[u] == adj_[u].size()) {
        dist_[u] = kInf;
        stack.pop_back();
        if (!stack.empty()) ++next_[stack.back()];
        continue;
      }
      auto v = adj_[u][next_[u]];
      auto w = m_.right_to_left[v];
      if (w == kUnmatched) {
        for (auto x : stack) {
          auto y = adj_[x][next_[x]];
          m_.left_to_right[x] = y;
          m_.right_to_left[y] = x;
        }
        return true;
      }
      if (dist_[w] != kInf && dist_[w] == dist_[u] + 1) {
        stack.push_back(w);
      } else {
        ++next_[u];
      }
    }
    return false;
  }

  const std::vector<std::vector<std::size_t>>& adj_;
  std::vector<std::size_t> dist_;
  std::vector<std::size_t> next_;
  BipartiteMatching m_;
};

}  // namespace

BipartiteMatching hopcroft_karp(std::size_t right_count,
                                const std::vector<std::vector<std::size_t>>& adjacency) {
  return HopcroftKarp(right_count, adjacency).run();
}

std::vector<std::size_t> hall_violator(const BipartiteMatching& matching,
                                       const std::vector<std::vector<std::size_t>>& adjacency) {
  const std::size_t n = adjacency.size();
  std::vector<char> seen_left(n, 0), seen_right(matching.right_to_left.size(), 0);
  std::queue<std::size_t> q;
  for (std::size_t u = 0; u < n; ++u) {
    if (matching.left_to_right[u] == kUnmatched) {
      seen_left[u] = 1;
      q.push(u);
    }
  }
  while (!q.empty()) {
    auto u = q.front();
    q.pop();
    for (auto v : adjacency[u]) {
      if (seen_right[v]) continue;
      seen_right[v] = 1;
      auto w = matching.right_to_left[v];
      if (w != kUnmatched && !seen_left[w]) {
        seen_left[w] = 1;
        q.push(w);
      }
    }
  }
  std::vector<std::size_t> out;
  for (std::size_t u = 0; u < n; ++u)
    if (seen_left[u]) out.push_back(u);
  return out;
}

std::vector<std::size_t> neighbourhood(const std::vector<std::size_t>& left,
                                       const std::vector<std::vector<std::size_t>>& adjacency) {
  std::vector<std::size_t> out;
  for (auto u : left) out.insert(out.end(), adjacency.at(u).begin(), adjacency.at(u).end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace coarsekit
