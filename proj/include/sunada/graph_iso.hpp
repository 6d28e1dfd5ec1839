#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "sunada/errors.hpp"
#include "sunada/graph.hpp"

namespace sunada {

inline constexpr int kIsoVertexCap = 2000;

// Undirected multigraph view used for isomorphism testing.
struct MultiGraphView {
  int n = 0;
  std::vector<std::map<int, int>> adj;  // symmetric, no loops
  std::vector<int> loops;               // loop multiplicity per vertex

  static MultiGraphView of(int n, const std::vector<std::pair<int, int>>& edges) {
    MultiGraphView g;
    g.n = n;
    g.adj.assign(n, {});
    g.loops.assign(n, 0);
    for (auto [u, v] : edges) {
      if (u == v) {
        g.loops[u]++;
      } else {
        g.adj[u][v]++;
        g.adj[v][u]++;
      }
    }
    return g;
  }

  static MultiGraphView of(const QuotientGraph& q) {
    std::vector<std::pair<int, int>> edges;
    edges.reserve(q.edges.size());
    for (const auto& e : q.edges) edges.emplace_back(e.tail, e.head);
    return of(q.vertex_count(), edges);
  }

  static MultiGraphView of(const BaseGraph& b) {
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : b.edges) edges.emplace_back(e.tail, e.head);
    return of(b.vertex_count, edges);
  }

  int degree(int v) const {
    int d = 2 * loops[v];
    for (const auto& [w, m] : adj[v]) d += m;
    return d;
  }

  int multiplicity(int u, int v) const {
    if (u == v) return loops[u];
    auto it = adj[u].find(v);
    return it == adj[u].end() ? 0 : it->second;
  }
};

struct IsoCertificate {
  bool isomorphic = false;
  std::vector<int> witness;  // vertex map a -> b when isomorphic
  std::string signature;     // distinguishing refinement signature otherwise
};

namespace detail_iso {

using Colors = std::vector<int>;

// One joint refinement pass over both graphs; returns the number of colors.
inline int refine(const MultiGraphView& a, const MultiGraphView& b, Colors& ca, Colors& cb) {
  using Key = std::tuple<int, int, std::vector<std::pair<int, int>>>;
  int colors = 0;
  for (;;) {
    std::map<Key, int> remap;
    auto key_of = [&](const MultiGraphView& g, const Colors& c, int v) {
      std::vector<std::pair<int, int>> nbr;
      nbr.reserve(g.adj[v].size());
      for (const auto& [w, m] : g.adj[v]) nbr.emplace_back(c[w], m);
      std::sort(nbr.begin(), nbr.end());
      // Merge multiplicities of same-colored neighbours.
      std::vector<std::pair<int, int>> merged;
      for (auto [col, m] : nbr) {
        if (!merged.empty() && merged.back().first == col)
          merged.back().second += m;
        else
          merged.emplace_back(col, m);
      }
      return Key{c[v], g.loops[v], std::move(merged)};
    };
    Colors na(a.n), nb(b.n);
    for (int v = 0; v < a.n; ++v) {
      auto [it, ins] = remap.emplace(key_of(a, ca, v), static_cast<int>(remap.size()));
      na[v] = it->second;
    }
    for (int v = 0; v < b.n; ++v) {
      auto [it, ins] = remap.emplace(key_of(b, cb, v), static_cast<int>(remap.size()));
      nb[v] = it->second;
    }
    const int count = static_cast<int>(remap.size());
    const bool stable = (count == colors) && na == ca && nb == cb;
    ca = std::move(na);
    cb = std::move(nb);
    colors = count;
    if (stable) return colors;
  }
}

inline std::map<int, int> histogram(const Colors& c) {
  std::map<int, int> h;
  for (int x : c) h[x]++;
  return h;
}

inline std::string signature_of(const Colors& ca, const Colors& cb) {
  std::string s = "A:";
  for (const auto& [col, cnt] : histogram(ca)) s += std::to_string(col) + "x" + std::to_string(cnt) + " ";
  s += "B:";
  for (const auto& [col, cnt] : histogram(cb)) s += std::to_string(col) + "x" + std::to_string(cnt) + " ";
  return s;
}

inline bool search(const MultiGraphView& a, const MultiGraphView& b, Colors ca, Colors cb,
                   std::vector<int>& witness) {
  const int colors = refine(a, b, ca, cb);
  if (histogram(ca) != histogram(cb)) return false;

  // Pick the smallest non-singleton color class.
  int target = -1, best = a.n + 1;
  std::map<int, int> h = histogram(ca);
  for (const auto& [col, cnt] : h)
    if (cnt > 1 && cnt < best) {
      best = cnt;
      target = col;
    }
  if (target < 0) {
    // Discrete coloring: read the bijection off matching colors.
    std::vector<int> map_by_color(colors, -1);
    for (int v = 0; v < b.n; ++v) map_by_color[cb[v]] = v;
    witness.assign(a.n, -1);
    for (int v = 0; v < a.n; ++v) witness[v] = map_by_color[ca[v]];
    for (int u = 0; u < a.n; ++u)
      for (int v = u; v < a.n; ++v)
        if (a.multiplicity(u, v) != b.multiplicity(witness[u], witness[v])) return false;
    return true;
  }

  int va = -1;
  for (int v = 0; v < a.n; ++v)
    if (ca[v] == target) {
      va = v;
      break;
    }
  for (int vb = 0; vb < b.n; ++vb) {
    if (cb[vb] != target) continue;
    Colors na = ca, nb = cb;
    na[va] = colors;  // individualize with a fresh color
    nb[vb] = colors;
    if (search(a, b, std::move(na), std::move(nb), witness)) return true;
  }
  return false;
}

}  // namespace detail_iso

inline IsoCertificate graph_isomorphic(const MultiGraphView& a, const MultiGraphView& b) {
  if (a.n > kIsoVertexCap || b.n > kIsoVertexCap) throw CapExceeded("graph_isomorphic: vertex cap exceeded");
  IsoCertificate cert;
  if (a.n != b.n) {
    cert.signature = "vertex counts " + std::to_string(a.n) + " vs " + std::to_string(b.n);
    return cert;
  }
  detail_iso::Colors ca(a.n, 0), cb(b.n, 0);
  std::vector<int> witness;
  if (detail_iso::search(a, b, ca, cb, witness)) {
    cert.isomorphic = true;
    cert.witness = std::move(witness);
  } else {
    detail_iso::refine(a, b, ca, cb);
    cert.signature = detail_iso::signature_of(ca, cb);
  }
  return cert;
}

inline IsoCertificate graph_isomorphic(const QuotientGraph& a, const QuotientGraph& b) {
  return graph_isomorphic(MultiGraphView::of(a), MultiGraphView::of(b));
}

// Checks that mapping (u, G1 g) -> (u, G2 tau g) is a graph isomorphism,
// edge by edge.  Used when tau conjugates Gamma_1 onto Gamma_2.
inline std::optional<std::vector<int>> sigma_witness(const QuotientGraph& a, const QuotientGraph& b,
                                                     const Permutation& tau) {
  if (a.base_vertices != b.base_vertices || a.index != b.index) return std::nullopt;
  // Coset map G1 g -> G2 tau g on indices.
  std::vector<int> cmap(a.index);
  for (int c = 0; c < a.index; ++c) cmap[c] = b.cosets.coset_of(tau * a.cosets.coset_reps()[c]);
  std::vector<int> witness(a.vertex_count());
  for (int u = 0; u < a.base_vertices; ++u)
    for (int c = 0; c < a.index; ++c) witness[a.vertex(u, c)] = b.vertex(u, cmap[c]);

  const MultiGraphView ga = MultiGraphView::of(a);
  const MultiGraphView gb = MultiGraphView::of(b);
  for (int u = 0; u < ga.n; ++u)
    for (int v = u; v < ga.n; ++v)
      if (ga.multiplicity(u, v) != gb.multiplicity(witness[u], witness[v])) return std::nullopt;
  return witness;
}

}  // namespace sunada
