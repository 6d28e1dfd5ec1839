#pragma once

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <vector>

#include "sunada/errors.hpp"
#include "sunada/group.hpp"

namespace sunada {

// Directed multigraph; loops and parallel edges allowed.  The stored
// direction is the distinguished orientation of each edge.
struct BaseEdge {
  int tail = 0;
  int head = 0;
  int id = 0;
};

struct BaseGraph {
  int vertex_count = 0;
  std::vector<BaseEdge> edges;

  void validate() const {
    if (vertex_count <= 0) throw std::invalid_argument("BaseGraph: empty vertex set");
    std::vector<char> seen;
    for (const auto& e : edges) {
      if (e.tail < 0 || e.tail >= vertex_count || e.head < 0 || e.head >= vertex_count)
        throw std::invalid_argument("BaseGraph: edge endpoint out of range");
      if (e.id < 0) throw std::invalid_argument("BaseGraph: negative edge id");
      if (static_cast<std::size_t>(e.id) >= seen.size()) seen.resize(e.id + 1, 0);
      if (seen[e.id]) throw std::invalid_argument("BaseGraph: duplicate edge id");
      seen[e.id] = 1;
    }
  }

  const BaseEdge& edge_by_id(int id) const {
    for (const auto& e : edges)
      if (e.id == id) return e;
    throw std::invalid_argument("BaseGraph: unknown edge id");
  }
};

// Base multigraph with deck-group voltages on the edges.
struct VoltageGraph {
  BaseGraph base;
  PermGroup group;                  // the deck group
  std::vector<Permutation> voltage;  // parallel to base.edges

  void validate() const {
    base.validate();
    if (voltage.size() != base.edges.size()) throw std::invalid_argument("VoltageGraph: voltage count mismatch");
    for (const auto& v : voltage)
      if (!group.contains(v)) throw std::invalid_argument("VoltageGraph: voltage not in deck group");
  }
};

// Quotient of the derived cover by a subgroup H of the deck group.
// Vertices are (base vertex u, right coset index c), stored as u*index+c.
// Each edge remembers its parent base edge and source coset.
struct QuotientEdge {
  int tail = 0;
  int head = 0;
  int base_edge = 0;  // position in base.edges
  int src_coset = 0;
};

struct QuotientGraph {
  int base_vertices = 0;
  int index = 1;  // [deck : H]
  std::vector<QuotientEdge> edges;
  CosetTable cosets;

  int vertex_count() const { return base_vertices * index; }
  int vertex(int u, int c) const { return u * index + c; }
  int base_vertex_of(int v) const { return v / index; }
  int coset_of(int v) const { return v % index; }
};

// Quotient of the derived cover of vg by H: edge (u,Hx) -> (v, Hx*sigma_e)
// for each base edge e: u->v.  H = deck group reproduces the base; the
// trivial subgroup yields the full derived cover.
inline QuotientGraph quotient(const VoltageGraph& vg, const Subgroup& H) {
  vg.validate();
  require_subgroup(vg.group, H, "quotient");
  QuotientGraph q;
  q.base_vertices = vg.base.vertex_count;
  q.cosets = CosetTable(vg.group, H);
  q.index = q.cosets.index();
  for (std::size_t ei = 0; ei < vg.base.edges.size(); ++ei) {
    const BaseEdge& e = vg.base.edges[ei];
    const Permutation act = q.cosets.action(vg.voltage[ei]);
    for (int c = 0; c < q.index; ++c)
      q.edges.push_back({q.vertex(e.tail, c), q.vertex(e.head, act(c)), static_cast<int>(ei), c});
  }
  return q;
}

inline QuotientGraph derive_cover(const VoltageGraph& vg) {
  return quotient(vg, Subgroup(vg.group.degree(), {}));
}

// Left multiplication by the deck group on cover vertices is free; this
// asserts it for the elements of H.
inline bool check_free_action(const VoltageGraph& vg, const Subgroup& H) {
  require_subgroup(vg.group, H, "check_free_action");
  for (const auto& h : H.elements()) {
    if (h.is_identity()) continue;
    // h fixes cover vertex (u, g) iff h*g = g, i.e. h = identity.
    for (const auto& g : vg.group.elements())
      if (h * g == g) return false;
  }
  return true;
}

inline int connectivity(const QuotientGraph& g) {
  const int n = g.vertex_count();
  std::vector<std::vector<int>> adj(n);
  for (const auto& e : g.edges) {
    adj[e.tail].push_back(e.head);
    adj[e.head].push_back(e.tail);
  }
  std::vector<char> seen(n, 0);
  int components = 0;
  for (int s = 0; s < n; ++s) {
    if (seen[s]) continue;
    ++components;
    std::deque<int> queue{s};
    seen[s] = 1;
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop_front();
      for (int w : adj[v])
        if (!seen[w]) {
          seen[w] = 1;
          queue.push_back(w);
        }
    }
  }
  return components;
}

}  // namespace sunada
