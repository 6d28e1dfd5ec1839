#include <cmath>
#include <random>

#include "doctest.h"
#include "sunada/connection.hpp"
#include "sunada/fixtures.hpp"
#include "sunada/intertwiner.hpp"

using namespace sunada;
namespace fx = sunada::fixtures;

namespace {

// Shared Fano setup: both quotients, a seeded base connection and base
// potential descended to each.
struct FanoScenario {
  PermGroup group = fx::fano_group();
  Subgroup gamma1 = fx::fano_point_stabilizer(group);
  Subgroup gamma2 = fx::fano_plane_stabilizer(group);
  VoltageGraph vg;
  QuotientGraph m1, m2;
  Connection base_conn;
  std::vector<double> base_q;

  explicit FanoScenario(std::uint64_t seed = 101) {
    vg = fx::theta_voltage_graph(group,
                                 {Permutation::identity(14), group.generators()[0], group.generators()[1]});
    m1 = quotient(vg, gamma1);
    m2 = quotient(vg, gamma2);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> den(1, 24);
    std::uniform_real_distribution<double> qval(-1.0, 1.0);
    for (std::size_t e = 0; e < vg.base.edges.size(); ++e) {
      const int d = den(rng);
      base_conn.phases.push_back(Turn(std::uniform_int_distribution<int>(0, d - 1)(rng), d));
    }
    base_q = {qval(rng), qval(rng)};
  }

  Connection conn(const QuotientGraph& m) const { return descend_connection(vg, m, base_conn); }
  Potential pot(const QuotientGraph& m) const { return descend_potential(m, base_q); }
};

}  // namespace

TEST_CASE("single vertex, no edges: operator is [Q]") {
  GraphView g{1, {}};
  MagneticOperator H = build_operator(g, zero_connection(0), 3, Potential{{5.0}});
  CHECK(H(0, 0) == std::complex<double>(5.0, 0.0));
  CHECK(eigenvalues(H) == std::vector<double>{5.0});
}

TEST_CASE("C4 with zero phases is the standard cycle Laplacian") {
  GraphView g = GraphView::of(fx::cycle_graph(4));
  for (std::int64_t k : {0, 1, 5}) {
    auto ev = eigenvalues(build_operator(g, zero_connection(4), k, zero_potential(4)));
    REQUIRE(ev.size() == 4);
    CHECK(ev[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(ev[1] == doctest::Approx(2.0));
    CHECK(ev[2] == doctest::Approx(2.0));
    CHECK(ev[3] == doctest::Approx(4.0));
  }
}

TEST_CASE("triangle with half-turn holonomy at k=1 has spectrum {1,1,4}") {
  GraphView g = GraphView::of(fx::cycle_graph(3));
  Connection conn{{Turn(1, 8), Turn(1, 8), Turn(1, 4)}};
  auto ev = eigenvalues(build_operator(g, conn, 1, zero_potential(3)));
  CHECK(ev[0] == doctest::Approx(1.0));
  CHECK(ev[1] == doctest::Approx(1.0));
  CHECK(ev[2] == doctest::Approx(4.0));
}

TEST_CASE("eigenvalues of a diagonal operator come back sorted") {
  MagneticOperator H = MagneticOperator::Zero(3, 3);
  H(0, 0) = 3.0;
  H(1, 1) = 1.0;
  H(2, 2) = 2.0;
  auto ev = eigenvalues(H);
  CHECK(ev[0] == doctest::Approx(1.0));
  CHECK(ev[1] == doctest::Approx(2.0));
  CHECK(ev[2] == doctest::Approx(3.0));
}

TEST_CASE("non-Hermitian input is rejected") {
  MagneticOperator H = MagneticOperator::Zero(2, 2);
  H(0, 1) = std::complex<double>(1.0, 0.5);
  H(1, 0) = std::complex<double>(1.0, 0.5);
  CHECK_THROWS_AS(eigenvalues(H), NonHermitian);
}

TEST_CASE("closed-form spectra of uniform-phase cycles") {
  for (int n = 3; n <= 12; ++n) {
    const Turn per_edge(1, 7 * n);  // total holonomy 1/7 turn
    GraphView g = GraphView::of(fx::cycle_graph(n));
    Connection conn{std::vector<Turn>(n, per_edge)};
    for (std::int64_t k = 0; k <= 8; ++k) {
      auto ev = eigenvalues(build_operator(g, conn, k, zero_potential(n)));
      std::vector<double> expected;
      const double phi = 2.0 * M_PI * static_cast<double>(k) / 7.0;
      for (int j = 0; j < n; ++j) expected.push_back(2.0 - 2.0 * std::cos((2.0 * M_PI * j + phi) / n));
      std::sort(expected.begin(), expected.end());
      CHECK(compare_spectra(ev, expected, 1e-10).equal);
    }
  }
}

TEST_CASE("compare_spectra basics") {
  CHECK(compare_spectra({0.0, 1.0}, {0.0, 1.0}, 1e-8).max_gap == 0.0);
  auto cmp = compare_spectra({0.0, 1.0}, {0.0, 1.001}, 1e-8);
  CHECK(cmp.max_gap == doctest::Approx(1e-3));
  CHECK_FALSE(cmp.equal);
  CHECK_THROWS_AS(compare_spectra({0.0}, {0.0, 1.0}, 1e-8), LengthMismatch);
}

TEST_CASE("eigen solver residuals stay backward stable") {
  FanoScenario s;
  const MagneticOperator H = build_operator(GraphView::of(s.m1), tensor_power(s.conn(s.m1), 1), 1, s.pot(s.m1));
  CHECK(eigen_residual(H) < 1e-10);
}

TEST_CASE("gauge transforms: spectra within 1e-12, holonomy exactly fixed") {
  GraphView g = GraphView::of(fx::cycle_graph(6));
  Connection conn{{Turn(1, 3), Turn(1, 5), Turn(0, 1), Turn(2, 7), Turn(1, 2), Turn(3, 11)}};
  auto base_ev = eigenvalues(build_operator(g, conn, 1, zero_potential(6)));
  auto base_hol = holonomy_report(g, conn);
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> den(1, 12);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Turn> gauge;
    for (int v = 0; v < 6; ++v) {
      const int d = den(rng);
      gauge.push_back(Turn(std::uniform_int_distribution<int>(0, d - 1)(rng), d));
    }
    Connection transformed = gauge_transform(g, conn, gauge);
    auto ev = eigenvalues(build_operator(g, transformed, 1, zero_potential(6)));
    CHECK(compare_spectra(base_ev, ev, 1e-12).equal);
    auto hol = holonomy_report(g, transformed);
    REQUIRE(hol.cycles.size() == base_hol.cycles.size());
    for (std::size_t i = 0; i < hol.cycles.size(); ++i) CHECK(hol.cycles[i].holonomy == base_hol.cycles[i].holonomy);
  }
}

TEST_CASE("zero gauge is the identity; a tree can be gauge-fixed flat") {
  GraphView g = GraphView::of(fx::path_graph(5));
  Connection conn{{Turn(1, 3), Turn(1, 4), Turn(2, 5), Turn(5, 6)}};
  Connection same = gauge_transform(g, conn, std::vector<Turn>(5));
  for (std::size_t i = 0; i < conn.phases.size(); ++i) CHECK(same.phases[i] == conn.phases[i]);

  // Gauge = minus the tree potential kills every phase.
  std::vector<Turn> pos(5);
  for (int v = 1; v < 5; ++v) pos[v] = pos[v - 1] + conn.phases[v - 1];
  std::vector<Turn> gauge;
  for (int v = 0; v < 5; ++v) gauge.push_back(-pos[v]);
  Connection flat = gauge_transform(g, conn, gauge);
  for (const auto& t : flat.phases) CHECK(t.is_zero_mod1());
  CHECK(holonomy_report(g, conn).cycles.empty());
}

TEST_CASE("holonomy of the triangle and tensor-power exactness") {
  GraphView g = GraphView::of(fx::cycle_graph(3));
  Connection conn{{Turn(1, 8), Turn(1, 8), Turn(1, 4)}};
  auto rep = holonomy_report(g, conn);
  REQUIRE(rep.cycles.size() == 1);
  CHECK(rep.cycles[0].holonomy == Turn(1, 2));

  for (std::int64_t k = 0; k <= 8; ++k) {
    Connection powk = tensor_power(conn, k);
    for (std::size_t i = 0; i < conn.phases.size(); ++i)
      CHECK(powk.phases[i].mod1() == (conn.phases[i] * k).mod1());
  }
}

TEST_CASE("k=0 reduction to the plain graph Laplacian plus Q") {
  FanoScenario s;
  const GraphView g = GraphView::of(s.m1);
  auto magnetic = eigenvalues(build_operator(g, s.conn(s.m1), 0, s.pot(s.m1)));
  auto plain = eigenvalues(build_operator(g, zero_connection(g.edges.size()), 0, s.pot(s.m1)));
  CHECK(compare_spectra(magnetic, plain, 1e-12).equal);
}

TEST_CASE("Sunada isospectrality on the Fano pair, k = 0..8") {
  FanoScenario s;
  for (std::int64_t k = 0; k <= 8; ++k) {
    auto ev1 = eigenvalues(build_operator(GraphView::of(s.m1), s.conn(s.m1), k, s.pot(s.m1)));
    auto ev2 = eigenvalues(build_operator(GraphView::of(s.m2), s.conn(s.m2), k, s.pot(s.m2)));
    CHECK(compare_spectra(ev1, ev2, 1e-8).equal);
  }
}

TEST_CASE("exact transplantation: residual < 1e-10 and section transport") {
  FanoScenario s;
  Intertwiner T = build_intertwiner(s.group, s.gamma1, s.gamma2, 42);
  for (std::int64_t k = 0; k <= 8; ++k) {
    const MagneticOperator op1 = build_operator(GraphView::of(s.m1), s.conn(s.m1), k, s.pot(s.m1));
    const MagneticOperator op2 = build_operator(GraphView::of(s.m2), s.conn(s.m2), k, s.pot(s.m2));
    CHECK(intertwining_residual(T, op1, op2) < 1e-10);

    std::mt19937_64 rng(1000 + static_cast<unsigned>(k));
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Eigen::VectorXcd section(op2.rows());
    for (Eigen::Index i = 0; i < section.size(); ++i) section(i) = std::complex<double>(u(rng), u(rng));
    const Eigen::VectorXcd lhs = transplant_section(T, op2 * section, s.m1.base_vertices);
    const Eigen::VectorXcd rhs =
        build_operator(GraphView::of(s.m1), s.conn(s.m1), k, s.pot(s.m1)) *
        transplant_section(T, section, s.m1.base_vertices);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-10 * section.norm());
  }

  // Constant and zero sections transport to constant and zero.
  Eigen::VectorXcd ones = Eigen::VectorXcd::Constant(s.m2.vertex_count(), 1.0);
  Eigen::VectorXcd out = transplant_section(T, ones, s.m1.base_vertices);
  for (Eigen::Index i = 1; i < out.size(); ++i) CHECK(std::abs(out(i) - out(0)) < 1e-12);
  // Oracle: the common value is the (constant) column sum of T.
  std::int64_t colsum = 0;
  for (int r = 0; r < T.rows(); ++r) colsum += T.matrix[r][0];
  CHECK(std::abs(out(0) - static_cast<double>(colsum)) < 1e-12);
  CHECK(transplant_section(T, Eigen::VectorXcd::Zero(s.m2.vertex_count()), s.m1.base_vertices).norm() == 0.0);
}

TEST_CASE("intertwining residual flags a non-invariant potential") {
  FanoScenario s;
  Intertwiner T = build_intertwiner(s.group, s.gamma1, s.gamma2, 42);
  Potential bad = s.pot(s.m2);
  bad.values[3] += 0.5;  // breaks G-invariance on one fibre
  const MagneticOperator op1 = build_operator(GraphView::of(s.m1), s.conn(s.m1), 1, s.pot(s.m1));
  const MagneticOperator op2 = build_operator(GraphView::of(s.m2), s.conn(s.m2), 1, bad);
  CHECK(intertwining_residual(T, op1, op2) > 1e-6);
}

TEST_CASE("trivial intertwiner on identical quotients has residual 0") {
  FanoScenario s;
  Intertwiner T = build_intertwiner(s.group, s.gamma1, s.gamma1, 7);
  const MagneticOperator op = build_operator(GraphView::of(s.m1), s.conn(s.m1), 2, s.pot(s.m1));
  CHECK(intertwining_residual(T, op, op) < 1e-9);
}

TEST_CASE("descend_connection: pullback and sheet-dependent tower") {
  FanoScenario s;
  Connection c1 = s.conn(s.m1);
  for (const auto& e : s.m1.edges) CHECK(c1.phases[e.base_edge * s.m1.index + e.src_coset] == s.base_conn.phases[e.base_edge]);

  // Brooks-style tower: deck = extension, G = index-2 subgroup, sheets differ.
  PermGroup ghat = fx::fano_extended_group();
  Subgroup g_sub(14, fx::fano_group().generators());
  VoltageGraph vg = fx::theta_voltage_graph(
      ghat, {Permutation::identity(14), ghat.generators()[0], fx::fano_duality()});
  QuotientGraph mid = quotient(vg, g_sub);
  CHECK(mid.index == 2);
  QuotientGraph m1 = quotient(vg, s.gamma1);

  Connection delta{std::vector<Turn>(mid.edges.size())};
  delta.phases[0] = Turn(1, 3);  // sheet-dependent phase on base edge 0
  Connection base0{std::vector<Turn>(3)};
  Connection down = descend_connection(vg, m1, base0, &mid, &delta);
  bool differs = false;
  for (const auto& e : m1.edges)
    if (e.base_edge == 0 && !(down.phases[e.base_edge * m1.index + e.src_coset] == down.phases[0])) differs = true;
  CHECK(differs);

  // H not contained in G is rejected.
  Subgroup not_in_g(14, {fx::fano_duality()});
  QuotientGraph qbad = quotient(vg, not_in_g);
  CHECK_THROWS_AS(descend_connection(vg, qbad, base0, &mid, &delta), SubgroupNotContained);
}

TEST_CASE("pullback by sigma: invariant data is fixed, broken data moves") {
  PermGroup ghat = fx::fano_extended_group();
  PermGroup g_core = fx::fano_group();
  Subgroup gamma1 = fx::fano_point_stabilizer(g_core);
  Subgroup gamma2 = fx::fano_plane_stabilizer(g_core);
  const Permutation tau = fx::fano_duality();
  Subgroup g_sub(14, g_core.generators());

  VoltageGraph vg = fx::theta_voltage_graph(
      ghat, {Permutation::identity(14), ghat.generators()[0], tau});
  QuotientGraph m1 = quotient(vg, gamma1);
  QuotientGraph m2 = quotient(vg, gamma2);
  QuotientGraph mid = quotient(vg, g_sub);

  // tau-invariant delta (equal on both sheets): sigma^* conn2 == conn1.
  Connection base{{Turn(1, 5), Turn(1, 7), Turn(0, 1)}};
  Connection delta_sym{std::vector<Turn>(mid.edges.size())};
  for (std::size_t i = 0; i < delta_sym.phases.size(); ++i) delta_sym.phases[i] = Turn(1, 9);
  Connection c1 = descend_connection(vg, m1, base, &mid, &delta_sym);
  Connection c2 = descend_connection(vg, m2, base, &mid, &delta_sym);
  Connection pulled = pullback_by_sigma(c2, tau, m1, m2, gamma1, gamma2);
  for (std::size_t i = 0; i < c1.phases.size(); ++i) CHECK(pulled.phases[i] == c1.phases[i]);

  // Sheet-asymmetric delta: sigma^* conn2 differs somewhere.
  Connection delta_broken = delta_sym;
  delta_broken.phases[0] = Turn(1, 3);
  Connection c1b = descend_connection(vg, m1, base, &mid, &delta_broken);
  Connection c2b = descend_connection(vg, m2, base, &mid, &delta_broken);
  Connection pulledb = pullback_by_sigma(c2b, tau, m1, m2, gamma1, gamma2);
  bool moved = false;
  for (std::size_t i = 0; i < c1b.phases.size(); ++i)
    if (!(pulledb.phases[i] == c1b.phases[i])) moved = true;
  CHECK(moved);

  // tau = identity with Gamma1 = Gamma2 is the identity on connections.
  Connection self = pullback_by_sigma(c1, Permutation::identity(14), m1, m1, gamma1, gamma1);
  for (std::size_t i = 0; i < c1.phases.size(); ++i) CHECK(self.phases[i] == c1.phases[i]);

  // Non-normalizing tau rejected.
  CHECK_THROWS_AS(pullback_by_sigma(c2, Permutation::identity(14), m1, m2, gamma1, gamma2), NotNormalizing);
}
