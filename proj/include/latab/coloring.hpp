#ifndef LATAB_COLORING_HPP
#define LATAB_COLORING_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace latab {

/// Undirected simple graph on vertices 0..n-1.
class Graph {
 public:
  explicit Graph(std::size_t n) : adj_(n, std::vector<char>(n, 0)) {}

  std::size_t size() const noexcept { return adj_.size(); }
  void add_edge(std::size_t a, std::size_t b) {
    adj_[a][b] = 1;
    adj_[b][a] = 1;
  }
  bool adjacent(std::size_t a, std::size_t b) const { return adj_[a][b] != 0; }
  bool has_loop() const {
    for (std::size_t i = 0; i < size(); ++i)
      if (adj_[i][i]) return true;
    return false;
  }

 private:
  std::vector<std::vector<char>> adj_;
};

namespace detail {
inline bool color_from(const Graph& g, std::size_t v, std::size_t k, std::size_t used,
                       std::vector<int>& colors) {
  if (v == g.size()) return true;
  // A fresh colour beyond used+1 would only permute an earlier solution.
  const std::size_t limit = std::min(k, used + 1);
  for (std::size_t c = 0; c < limit; ++c) {
    bool ok = true;
    for (std::size_t u = 0; u < v && ok; ++u)
      if (g.adjacent(u, v) && colors[u] == static_cast<int>(c)) ok = false;
    if (!ok) continue;
    colors[v] = static_cast<int>(c);
    if (color_from(g, v + 1, k, std::max(used, c + 1), colors)) return true;
  }
  colors[v] = -1;
  return false;
}
}  // namespace detail

/// Proper colouring with at most k colours (nullopt = unlimited) by
/// backtracking in vertex order. Returns the lexicographically least colouring
/// with colours 0..k-1, or nullopt if none exists.
inline std::optional<std::vector<int>> color_graph(const Graph& g,
                                                   std::optional<std::size_t> k) {
  if (g.has_loop()) return std::nullopt;
  std::vector<int> colors(g.size(), -1);
  const std::size_t cap = k ? *k : g.size();
  if (g.size() == 0) return colors;
  if (cap == 0) return std::nullopt;
  if (detail::color_from(g, 0, cap, 0, colors)) return colors;
  return std::nullopt;
}

/// Largest clique size up to `limit` (stops early once reached).
inline std::size_t clique_number_at_least(const Graph& g, std::size_t limit) {
  std::size_t best = 0;
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t from) -> void {
    best = std::max(best, cur.size());
    if (best >= limit) return;
    for (std::size_t v = from; v < g.size(); ++v) {
      bool ok = true;
      for (std::size_t u : cur)
        if (!g.adjacent(u, v)) { ok = false; break; }
      if (!ok) continue;
      cur.push_back(v);
      self(self, v + 1);
      cur.pop_back();
      if (best >= limit) return;
    }
  };
  rec(rec, 0);
  return best;
}

}  // namespace latab

#endif  // LATAB_COLORING_HPP
