#pragma once

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "sunada/errors.hpp"
#include "sunada/group.hpp"

namespace sunada {

// Integer matrix T with T * rho1(g) = rho2(g) * T for all g in G, where
// rho_i is the permutation-matrix action on the right cosets of Gamma_i.
// Invertible over the rationals.  All arithmetic here is exact.
struct Intertwiner {
  std::vector<std::vector<std::int64_t>> matrix;  // index2 x index1
  CosetTable source;                              // Gamma_1 cosets
  CosetTable target;                              // Gamma_2 cosets

  int rows() const { return static_cast<int>(matrix.size()); }
  int cols() const { return matrix.empty() ? 0 : static_cast<int>(matrix[0].size()); }
};

// Determinant by fraction-free (Bareiss) elimination; exact.
inline boost::multiprecision::cpp_int integer_determinant(const std::vector<std::vector<std::int64_t>>& m) {
  using boost::multiprecision::cpp_int;
  const int n = static_cast<int>(m.size());
  std::vector<std::vector<cpp_int>> a(n, std::vector<cpp_int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = m[i][j];
  cpp_int prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a[k][k] == 0) {
      int pivot = -1;
      for (int i = k + 1; i < n; ++i)
        if (a[i][k] != 0) {
          pivot = i;
          break;
        }
      if (pivot < 0) return 0;
      std::swap(a[k], a[pivot]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return n == 0 ? cpp_int(1) : cpp_int(sign) * a[n - 1][n - 1];
}

// Exact check of T * rho1(g) = rho2(g) * T for one group element.
inline bool intertwines_exactly(const Intertwiner& T, const Permutation& g) {
  const Permutation p = T.source.action(g);
  const Permutation qinv = T.target.action(g).inverse();
  for (int r = 0; r < T.rows(); ++r)
    for (int c = 0; c < T.cols(); ++c)
      if (T.matrix[r][p(c)] != T.matrix[qinv(r)][c]) return false;
  return true;
}

// T = sum_g rho2(g) * X * rho1(g)^{-1}, averaged over all of G.
inline Intertwiner average_intertwiner(const PermGroup& G, const CosetTable& t1, const CosetTable& t2,
                                       const std::vector<std::vector<std::int64_t>>& X) {
  Intertwiner T;
  T.source = t1;
  T.target = t2;
  T.matrix.assign(t2.index(), std::vector<std::int64_t>(t1.index(), 0));
  for (const auto& g : G.elements()) {
    const Permutation p = t1.action(g);
    const Permutation q = t2.action(g);
    for (int i = 0; i < t2.index(); ++i)
      for (int j = 0; j < t1.index(); ++j) T.matrix[q(i)][p(j)] += X[i][j];
  }
  return T;
}

inline Intertwiner build_intertwiner(const PermGroup& G, const Subgroup& H1, const Subgroup& H2,
                                     std::uint64_t seed) {
  if (!almost_conjugate(G, H1, H2).verdict)
    throw NotAlmostConjugate("build_intertwiner: subgroups are not almost conjugate");
  const CosetTable t1(G, H1);
  const CosetTable t2(G, H2);
  std::vector<std::uint64_t> tried;
  for (int attempt = 0; attempt < 20; ++attempt) {
    const std::uint64_t s = seed + static_cast<std::uint64_t>(attempt);
    tried.push_back(s);
    std::mt19937_64 rng(s);
    std::uniform_int_distribution<int> digit(0, 9);
    std::vector<std::vector<std::int64_t>> X(t2.index(), std::vector<std::int64_t>(t1.index()));
    for (auto& row : X)
      for (auto& x : row) x = digit(rng);
    Intertwiner T = average_intertwiner(G, t1, t2, X);
    if (integer_determinant(T.matrix) == 0) continue;
    for (const auto& g : G.generators())
      if (!intertwines_exactly(T, g)) throw Error("build_intertwiner: averaging failed to intertwine");
    return T;
  }
  std::string msg = "build_intertwiner: all attempts singular; seeds tried:";
  for (auto s : tried) msg += " " + std::to_string(s);
  throw NoInvertibleFound(msg);
}

// U = T (T^t T)^{-1/2}; orthogonal, still intertwining.
inline Eigen::MatrixXd unitarize_intertwiner(const Intertwiner& T) {
  const int r = T.rows(), c = T.cols();
  Eigen::MatrixXd M(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) M(i, j) = static_cast<double>(T.matrix[i][j]);
  const Eigen::MatrixXd gram = M.transpose() * M;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
  const Eigen::VectorXd ev = es.eigenvalues();
  if (ev(0) < 1e-12 * ev(c - 1)) throw IllConditioned("unitarize_intertwiner: Gram matrix ill-conditioned");
  const Eigen::MatrixXd inv_sqrt =
      es.eigenvectors() * ev.cwiseSqrt().cwiseInverse().asDiagonal() * es.eigenvectors().transpose();
  Eigen::MatrixXd U = M * inv_sqrt;
  // Newton polish; U (3I - U^t U)/2 keeps the intertwining property.
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(c, c);
  for (int iter = 0; iter < 8 && (U.transpose() * U - I).cwiseAbs().maxCoeff() > 1e-14; ++iter)
    U = U * (3.0 * I - U.transpose() * U) * 0.5;
  return U;
}

}  // namespace sunada
