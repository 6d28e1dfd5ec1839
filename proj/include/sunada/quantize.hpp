#pragma once

#include <string>
#include <vector>

#include "sunada/connection.hpp"
#include "sunada/errors.hpp"

namespace sunada {

// Scalar-curvature analogue entering the quantum Hamiltonian.  The
// default constant -2 mirrors a real-dimension-2 unit-Einstein model.
struct CurvatureField {
  std::vector<double> values;

  static CurvatureField constant(int n, double r = -2.0) { return {std::vector<double>(n, r)}; }
};

// H_k = (1/(2k^2)) (Delta_k + diag(R)/6), with hbar = 1/k.
inline MagneticOperator quantum_hamiltonian(const MagneticOperator& delta_k, const CurvatureField& r,
                                            std::int64_t k) {
  if (k <= 0) throw BadK("quantum_hamiltonian: k must be positive");
  if (delta_k.rows() != static_cast<Eigen::Index>(r.values.size()))
    throw DimensionMismatch("quantum_hamiltonian: curvature field size mismatch");
  MagneticOperator H = delta_k;
  for (Eigen::Index i = 0; i < H.rows(); ++i) H(i, i) += r.values[i] / 6.0;
  H *= 1.0 / (2.0 * static_cast<double>(k) * static_cast<double>(k));
  return H;
}

// R declared G-invariant must be constant on the fibres over each
// intermediate vertex; sheet_of maps a coset index to its sheet.
inline void require_invariant_field(const CurvatureField& r, const QuotientGraph& q,
                                    const std::vector<int>& sheet_of) {
  if (r.values.size() != static_cast<std::size_t>(q.vertex_count()))
    throw DimensionMismatch("curvature field size mismatch");
  for (int u = 0; u < q.base_vertices; ++u) {
    std::vector<std::pair<int, double>> first_by_sheet;
    for (int c = 0; c < q.index; ++c) {
      const int sheet = sheet_of.empty() ? 0 : sheet_of[c];
      const double v = r.values[q.vertex(u, c)];
      bool found = false;
      for (auto& [s, val] : first_by_sheet)
        if (s == sheet) {
          found = true;
          if (val != v)
            throw RNotInvariant("curvature field differs within the deck orbit of base vertex " +
                                std::to_string(u));
        }
      if (!found) first_by_sheet.emplace_back(sheet, v);
    }
  }
}

struct QuantumSpectrumReport {
  struct PerK {
    std::int64_t k = 1;
    std::vector<double> eigenvalues_1;
    std::vector<double> eigenvalues_2;
    double gap = 0.0;
  };
  std::vector<PerK> per_k;
  bool equal = false;
};

}  // namespace sunada
