#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <deque>
#include <optional>
#include <vector>

#include "sunada/errors.hpp"
#include "sunada/graph.hpp"
#include "sunada/intertwiner.hpp"
#include "sunada/turn.hpp"

namespace sunada {

// U(1) connection: one exact rational turn per edge, along the edge's
// stored orientation.  Reversing an edge negates its phase.
struct Connection {
  std::vector<Turn> phases;  // parallel to the owning graph's edge list
};

struct Potential {
  std::vector<double> values;  // per vertex
};

// Uniform view of base graphs and quotient graphs for operator assembly.
struct GraphView {
  int n = 0;
  std::vector<std::pair<int, int>> edges;  // (tail, head)

  static GraphView of(const BaseGraph& b) {
    GraphView g;
    g.n = b.vertex_count;
    for (const auto& e : b.edges) g.edges.emplace_back(e.tail, e.head);
    return g;
  }
  static GraphView of(const QuotientGraph& q) {
    GraphView g;
    g.n = q.vertex_count();
    for (const auto& e : q.edges) g.edges.emplace_back(e.tail, e.head);
    return g;
  }
};

// Tensor power acts by scalar multiplication of phases (exact).
inline Connection tensor_power(const Connection& conn, std::int64_t k) {
  Connection out;
  out.phases.reserve(conn.phases.size());
  for (const auto& t : conn.phases) out.phases.push_back(t * k);
  return out;
}

using MagneticOperator = Eigen::MatrixXcd;

// Discrete magnetic Schroedinger operator: degree + Q on the diagonal,
// minus phase-weighted adjacency off it.  A loop at v contributes
// 2 - 2cos(k theta) to H[v][v].  Positive semidefinite at k = 0, Q = 0.
inline MagneticOperator build_operator(const GraphView& g, const Connection& conn, std::int64_t k,
                                       const Potential& q) {
  if (conn.phases.size() != g.edges.size()) throw MissingPhase("build_operator: phase count mismatch");
  if (q.values.size() != static_cast<std::size_t>(g.n)) throw MissingPotential("build_operator: potential count mismatch");
  MagneticOperator H = MagneticOperator::Zero(g.n, g.n);
  for (std::size_t ei = 0; ei < g.edges.size(); ++ei) {
    const auto [u, v] = g.edges[ei];
    const double a = (conn.phases[ei] * k).centered().angle();
    if (u == v) {
      H(u, u) += std::complex<double>(2.0 - 2.0 * std::cos(a), 0.0);
    } else {
      const double c = std::cos(a), s = std::sin(a);
      H(v, u) += std::complex<double>(-c, -s);
      H(u, v) += std::complex<double>(-c, s);
      H(u, u) += 1.0;
      H(v, v) += 1.0;
    }
  }
  for (int i = 0; i < g.n; ++i) H(i, i) += q.values[i];
  return H;
}

inline Potential zero_potential(int n) { return Potential{std::vector<double>(n, 0.0)}; }
inline Connection zero_connection(std::size_t edges) { return Connection{std::vector<Turn>(edges)}; }

inline void require_hermitian(const MagneticOperator& H) {
  if (H.rows() != H.cols()) throw NonHermitian("operator not square");
  for (int i = 0; i < H.rows(); ++i)
    for (int j = 0; j <= i; ++j)
      if (H(i, j) != std::conj(H(j, i))) throw NonHermitian("operator fails exact Hermitian symmetry");
}

inline std::vector<double> eigenvalues(const MagneticOperator& H) {
  require_hermitian(H);
  Eigen::SelfAdjointEigenSolver<MagneticOperator> es(H, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd ev = es.eigenvalues();
  return std::vector<double>(ev.data(), ev.data() + ev.size());
}

// Largest eigenpair residual ||Hx - lambda x|| relative to ||H||.
inline double eigen_residual(const MagneticOperator& H) {
  require_hermitian(H);
  Eigen::SelfAdjointEigenSolver<MagneticOperator> es(H);
  double worst = 0.0;
  for (int i = 0; i < H.rows(); ++i) {
    const auto x = es.eigenvectors().col(i);
    worst = std::max(worst, (H * x - es.eigenvalues()(i) * x).norm());
  }
  const double scale = H.norm();
  return scale == 0.0 ? worst : worst / scale;
}

struct SpectrumComparison {
  double max_gap = 0.0;
  bool equal = false;
};

inline SpectrumComparison compare_spectra(const std::vector<double>& a, const std::vector<double>& b,
                                          double tol) {
  if (a.size() != b.size()) throw LengthMismatch("compare_spectra: spectra of different lengths");
  SpectrumComparison cmp;
  for (std::size_t i = 0; i < a.size(); ++i) cmp.max_gap = std::max(cmp.max_gap, std::abs(a[i] - b[i]));
  cmp.equal = cmp.max_gap <= tol;
  return cmp;
}

// theta'(v->w) = theta + gauge(w) - gauge(v); spectra and holonomy invariant.
inline Connection gauge_transform(const GraphView& g, const Connection& conn, const std::vector<Turn>& gauge) {
  if (gauge.size() != static_cast<std::size_t>(g.n)) throw std::invalid_argument("gauge_transform: gauge size mismatch");
  Connection out = conn;
  for (std::size_t ei = 0; ei < g.edges.size(); ++ei) {
    const auto [u, v] = g.edges[ei];
    out.phases[ei] = conn.phases[ei] + gauge[v] - gauge[u];
  }
  return out;
}

struct HolonomyCycle {
  int edge = 0;       // non-tree edge closing the fundamental cycle
  Turn holonomy;      // exact, centered in (-1/2, 1/2]
};

struct HolonomyReport {
  std::vector<int> tree_edges;
  std::vector<HolonomyCycle> cycles;
};

// Spanning forest by lowest-index-first BFS; one fundamental cycle per
// non-tree edge, in edge-index order.
inline HolonomyReport holonomy_report(const GraphView& g, const Connection& conn) {
  if (conn.phases.size() != g.edges.size()) throw MissingPhase("holonomy_report: phase count mismatch");
  std::vector<std::vector<std::pair<int, int>>> adj(g.n);  // (edge, other endpoint)
  for (std::size_t ei = 0; ei < g.edges.size(); ++ei) {
    const auto [u, v] = g.edges[ei];
    adj[u].emplace_back(static_cast<int>(ei), v);
    if (u != v) adj[v].emplace_back(static_cast<int>(ei), u);
  }
  for (auto& lst : adj) std::sort(lst.begin(), lst.end());

  HolonomyReport report;
  std::vector<char> seen(g.n, 0);
  std::vector<char> in_tree(g.edges.size(), 0);
  std::vector<Turn> pos(g.n);
  for (int root = 0; root < g.n; ++root) {
    if (seen[root]) continue;
    seen[root] = 1;
    std::deque<int> queue{root};
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop_front();
      for (auto [ei, w] : adj[v]) {
        if (seen[w]) continue;
        seen[w] = 1;
        in_tree[ei] = 1;
        report.tree_edges.push_back(ei);
        // Accumulate the phase along the tree, oriented away from the root.
        pos[w] = (g.edges[ei].first == v) ? pos[v] + conn.phases[ei] : pos[v] - conn.phases[ei];
        queue.push_back(w);
      }
    }
  }
  for (std::size_t ei = 0; ei < g.edges.size(); ++ei) {
    if (in_tree[ei]) continue;
    const auto [u, v] = g.edges[ei];
    report.cycles.push_back({static_cast<int>(ei), (pos[u] + conn.phases[ei] - pos[v]).centered()});
  }
  return report;
}

// Pulls a connection given on the base (and optionally on the
// intermediate quotient by G) down to the quotient by H <= G.
inline Connection descend_connection(const VoltageGraph& vg, const QuotientGraph& q,
                                     const Connection& base_phases,
                                     const QuotientGraph* mid_graph = nullptr,
                                     const Connection* mid_phases = nullptr) {
  if (base_phases.phases.size() != vg.base.edges.size())
    throw MissingPhase("descend_connection: base phase count mismatch");
  if (mid_graph && mid_phases && mid_phases->phases.size() != mid_graph->edges.size())
    throw MissingPhase("descend_connection: intermediate phase count mismatch");
  if (mid_graph) {
    // Every element of H must lie in G for the tower to make sense.
    const auto& g_elems = mid_graph->cosets.subgroup_elements();
    for (const auto& h : q.cosets.subgroup_elements())
      if (!std::binary_search(g_elems.begin(), g_elems.end(), h))
        throw SubgroupNotContained("descend_connection: H is not contained in G");
  }
  Connection out;
  out.phases.reserve(q.edges.size());
  for (const auto& e : q.edges) {
    Turn t = base_phases.phases[e.base_edge];
    if (mid_graph && mid_phases) {
      const int sheet = mid_graph->cosets.coset_of(q.cosets.coset_reps()[e.src_coset]);
      // Quotient edges are emitted in (base edge, coset) order.
      t = t + mid_phases->phases[e.base_edge * mid_graph->index + sheet];
    }
    out.phases.push_back(t);
  }
  return out;
}

// Potential defined on the intermediate quotient (or just the base when
// there is no tau layer), descended to the quotient by H.
inline Potential descend_potential(const QuotientGraph& q, const std::vector<double>& base_values,
                                   const QuotientGraph* mid_graph = nullptr,
                                   const std::vector<double>* mid_values = nullptr) {
  if (base_values.size() != static_cast<std::size_t>(q.base_vertices))
    throw MissingPotential("descend_potential: base value count mismatch");
  Potential out;
  out.values.resize(q.vertex_count());
  for (int u = 0; u < q.base_vertices; ++u)
    for (int c = 0; c < q.index; ++c) {
      double v = base_values[u];
      if (mid_graph && mid_values) {
        const int sheet = mid_graph->cosets.coset_of(q.cosets.coset_reps()[c]);
        v += (*mid_values)[mid_graph->vertex(u, sheet)];
      }
      out.values[q.vertex(u, c)] = v;
    }
  return out;
}

inline void require_normalizing(const Permutation& tau, const Subgroup& gamma1, const Subgroup& gamma2) {
  const auto& h2 = gamma2.elements();
  if (gamma1.order() != gamma2.order()) throw NotNormalizing("tau does not conjugate Gamma_1 onto Gamma_2");
  for (const auto& h : gamma1.elements())
    if (!std::binary_search(h2.begin(), h2.end(), tau * h * tau.inverse()))
      throw NotNormalizing("tau does not conjugate Gamma_1 onto Gamma_2");
}

// Coset map Gamma_1 g -> Gamma_2 tau g on indices.
inline std::vector<int> sigma_coset_map(const QuotientGraph& q1, const QuotientGraph& q2,
                                        const Permutation& tau) {
  std::vector<int> cmap(q1.index);
  for (int c = 0; c < q1.index; ++c) cmap[c] = q2.cosets.coset_of(tau * q1.cosets.coset_reps()[c]);
  return cmap;
}

// sigma^* of a connection on M2: phase at (e, Gamma_1 g) is the phase of
// conn2 at (e, Gamma_2 tau g).
inline Connection pullback_by_sigma(const Connection& conn2, const Permutation& tau,
                                    const QuotientGraph& q1, const QuotientGraph& q2,
                                    const Subgroup& gamma1, const Subgroup& gamma2) {
  require_normalizing(tau, gamma1, gamma2);
  if (conn2.phases.size() != q2.edges.size()) throw MissingPhase("pullback_by_sigma: phase count mismatch");
  const std::vector<int> cmap = sigma_coset_map(q1, q2, tau);
  Connection out;
  out.phases.reserve(q1.edges.size());
  for (const auto& e : q1.edges) out.phases.push_back(conn2.phases[e.base_edge * q2.index + cmap[e.src_coset]]);
  return out;
}

// sigma^* of a potential on M2, same coset map.
inline Potential pullback_potential_by_sigma(const Potential& pot2, const Permutation& tau,
                                             const QuotientGraph& q1, const QuotientGraph& q2,
                                             const Subgroup& gamma1, const Subgroup& gamma2) {
  require_normalizing(tau, gamma1, gamma2);
  if (pot2.values.size() != static_cast<std::size_t>(q2.vertex_count()))
    throw MissingPotential("pullback_potential_by_sigma: potential size mismatch");
  const std::vector<int> cmap = sigma_coset_map(q1, q2, tau);
  Potential out;
  out.values.resize(q1.vertex_count());
  for (int u = 0; u < q1.base_vertices; ++u)
    for (int c = 0; c < q1.index; ++c) out.values[q1.vertex(u, c)] = pot2.values[q2.vertex(u, cmap[c])];
  return out;
}

// Transplantation operator as a dense matrix: block-diagonal over base
// vertices, with the transposed coset intertwiner in each block.  Maps
// sections on M2 to sections on M1.
inline Eigen::MatrixXd transplant_matrix(const Intertwiner& T, int base_vertices) {
  const int i1 = T.cols(), i2 = T.rows();
  Eigen::MatrixXd S = Eigen::MatrixXd::Zero(base_vertices * i1, base_vertices * i2);
  for (int u = 0; u < base_vertices; ++u)
    for (int a = 0; a < i1; ++a)
      for (int b = 0; b < i2; ++b) S(u * i1 + a, u * i2 + b) = static_cast<double>(T.matrix[b][a]);
  return S;
}

inline Eigen::VectorXcd transplant_section(const Intertwiner& T, const Eigen::VectorXcd& section_on_m2,
                                           int base_vertices) {
  if (section_on_m2.size() != static_cast<Eigen::Index>(base_vertices) * T.rows())
    throw DimensionMismatch("transplant_section: section size mismatch");
  return transplant_matrix(T, base_vertices) * section_on_m2;
}

// || 𝒯 (Δ2+Q) − (Δ1+Q) 𝒯 ||_max for the block-diagonal transplantation.
inline double intertwining_residual(const Intertwiner& T, const MagneticOperator& op1,
                                    const MagneticOperator& op2) {
  if (op1.rows() % T.cols() != 0 || op2.rows() % T.rows() != 0)
    throw DimensionMismatch("intertwining_residual: operator/intertwiner shape mismatch");
  const int base_vertices = static_cast<int>(op1.rows()) / T.cols();
  if (op2.rows() != static_cast<Eigen::Index>(base_vertices) * T.rows())
    throw DimensionMismatch("intertwining_residual: operators disagree on base size");
  const Eigen::MatrixXd S = transplant_matrix(T, base_vertices);
  return (S * op2 - op1 * S).cwiseAbs().maxCoeff();
}

}  // namespace sunada
