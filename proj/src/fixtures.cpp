#include "sunada/fixtures.hpp"

#include <stdexcept>

namespace sunada::fixtures {

namespace {

// Encode a nonzero vector (b0,b1,b2) as slot b0 + 2 b1 + 4 b2 - 1.
int slot_of(const std::array<int, 3>& v) {
  const int b = v[0] + 2 * v[1] + 4 * v[2];
  if (b == 0) throw std::logic_error("zero vector has no slot");
  return b - 1;
}

std::array<int, 3> vector_of(int slot) {
  const int b = slot + 1;
  return {b & 1, (b >> 1) & 1, (b >> 2) & 1};
}

std::array<int, 3> apply_matrix(const F2Matrix& m, const std::array<int, 3>& v) {
  std::array<int, 3> w{};
  for (int i = 0; i < 3; ++i) w[i] = (m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2]) & 1;
  return w;
}

std::array<int, 3> apply_matrix_left(const std::array<int, 3>& phi, const F2Matrix& m) {
  std::array<int, 3> w{};
  for (int j = 0; j < 3; ++j) w[j] = (phi[0] * m[0][j] + phi[1] * m[1][j] + phi[2] * m[2][j]) & 1;
  return w;
}

int f2_det(const F2Matrix& m) {
  int d = 0;
  d ^= m[0][0] & m[1][1] & m[2][2];
  d ^= m[0][1] & m[1][2] & m[2][0];
  d ^= m[0][2] & m[1][0] & m[2][1];
  d ^= m[0][2] & m[1][1] & m[2][0];
  d ^= m[0][0] & m[1][2] & m[2][1];
  d ^= m[0][1] & m[1][0] & m[2][2];
  return d;
}

F2Matrix f2_inverse(const F2Matrix& m) {
  if (f2_det(m) == 0) throw std::invalid_argument("f2_inverse: singular matrix");
  // Adjugate; over F2 the determinant is 1 so no division needed.
  auto minor = [&](int r, int c) {
    int rs[2], cs[2], k = 0;
    for (int i = 0; i < 3; ++i)
      if (i != r) rs[k++] = i;
    k = 0;
    for (int j = 0; j < 3; ++j)
      if (j != c) cs[k++] = j;
    return (m[rs[0]][cs[0]] & m[rs[1]][cs[1]]) ^ (m[rs[0]][cs[1]] & m[rs[1]][cs[0]]);
  };
  F2Matrix inv{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) inv[i][j] = minor(j, i);
  return inv;
}

}  // namespace

F2Matrix f2_multiply(const F2Matrix& a, const F2Matrix& b) {
  F2Matrix c{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) c[i][j] = (a[i][0] & b[0][j]) ^ (a[i][1] & b[1][j]) ^ (a[i][2] & b[2][j]);
  return c;
}

bool f2_invertible(const F2Matrix& m) { return f2_det(m) == 1; }

std::vector<F2Matrix> all_invertible_f2_matrices() {
  std::vector<F2Matrix> out;
  for (int bits = 0; bits < 512; ++bits) {
    F2Matrix m{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m[i][j] = (bits >> (3 * i + j)) & 1;
    if (f2_invertible(m)) out.push_back(m);
  }
  return out;
}

Permutation gl3f2_permutation(const F2Matrix& m) {
  const F2Matrix inv = f2_inverse(m);
  std::vector<int> img(14);
  for (int s = 0; s < 7; ++s) {
    img[s] = slot_of(apply_matrix(m, vector_of(s)));
    img[7 + s] = 7 + slot_of(apply_matrix_left(vector_of(s), inv));
  }
  return Permutation(std::move(img));
}

PermGroup fano_group() {
  const F2Matrix shear{{{1, 1, 0}, {0, 1, 0}, {0, 0, 1}}};
  const F2Matrix cycle{{{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}};
  return PermGroup(14, {gl3f2_permutation(shear), gl3f2_permutation(cycle)}, "GL(3,F2)");
}

Permutation fano_duality() {
  std::vector<int> img(14);
  for (int s = 0; s < 7; ++s) {
    img[s] = 7 + s;
    img[7 + s] = s;
  }
  return Permutation(std::move(img));
}

PermGroup fano_extended_group() {
  PermGroup g = fano_group();
  std::vector<Permutation> gens = g.generators();
  gens.push_back(fano_duality());
  return PermGroup(14, std::move(gens), "GL(3,F2):2");
}

namespace {
Subgroup stabilizer_of_slot(const PermGroup& G, int slot) {
  std::vector<Permutation> fixers;
  for (const auto& g : G.elements())
    if (g(slot) == slot) fixers.push_back(g);
  return Subgroup(G.degree(), std::move(fixers));
}
}  // namespace

Subgroup fano_point_stabilizer(const PermGroup& G) { return stabilizer_of_slot(G, 0); }
Subgroup fano_plane_stabilizer(const PermGroup& G) { return stabilizer_of_slot(G, 7); }

PermGroup symmetric_group(int n) {
  if (n < 2) return trivial_group(n > 0 ? n : 1);
  std::vector<int> cyc(n);
  for (int i = 0; i < n; ++i) cyc[i] = i;
  return PermGroup(n,
                   {Permutation::from_cycles(n, {{0, 1}}), Permutation::from_cycles(n, {cyc})},
                   "S" + std::to_string(n));
}

PermGroup trivial_group(int degree) { return PermGroup(degree, {}, "1"); }

PermGroup cyclic_group(int n) {
  std::vector<int> cyc(n);
  for (int i = 0; i < n; ++i) cyc[i] = i;
  return PermGroup(n, {Permutation::from_cycles(n, {cyc})}, "C" + std::to_string(n));
}

PermGroup dihedral_group_d4() {
  return PermGroup(4, {Permutation::from_cycles(4, {{0, 1, 2, 3}}), Permutation::from_cycles(4, {{1, 3}})},
                   "D4");
}

PermGroup quaternion_group_q8() {
  // Regular action on {1, i, -1, -i, j, k, -j, -k} ordered as
  // 0:1 1:i 2:j 3:k 4:-1 5:-i 6:-j 7:-k; generators are left
  // multiplication by i and by j.
  return PermGroup(8,
                   {Permutation::from_cycles(8, {{0, 1, 4, 5}, {2, 3, 6, 7}}),
                    Permutation::from_cycles(8, {{0, 2, 4, 6}, {1, 7, 5, 3}})},
                   "Q8");
}

PermGroup s3_times_s3() {
  return PermGroup(6,
                   {Permutation::from_cycles(6, {{0, 1}}), Permutation::from_cycles(6, {{0, 1, 2}}),
                    Permutation::from_cycles(6, {{3, 4}}), Permutation::from_cycles(6, {{3, 4, 5}})},
                   "S3xS3");
}

VoltageGraph cycle_voltage_graph(int n) {
  VoltageGraph vg;
  vg.base.vertex_count = 1;
  vg.base.edges = {{0, 0, 0}};
  vg.group = cyclic_group(n);
  vg.voltage = {vg.group.generators().at(0)};
  return vg;
}

VoltageGraph theta_voltage_graph(const PermGroup& deck, const std::vector<Permutation>& voltages) {
  if (voltages.size() != 3) throw std::invalid_argument("theta_voltage_graph: need exactly 3 voltages");
  VoltageGraph vg;
  vg.base.vertex_count = 2;
  vg.base.edges = {{0, 1, 0}, {0, 1, 1}, {0, 1, 2}};
  vg.group = deck;
  vg.voltage = voltages;
  return vg;
}

BaseGraph cycle_graph(int n) {
  BaseGraph b;
  b.vertex_count = n;
  for (int i = 0; i < n; ++i) b.edges.push_back({i, (i + 1) % n, i});
  return b;
}

BaseGraph path_graph(int n) {
  BaseGraph b;
  b.vertex_count = n;
  for (int i = 0; i + 1 < n; ++i) b.edges.push_back({i, i + 1, i});
  return b;
}

}  // namespace sunada::fixtures
