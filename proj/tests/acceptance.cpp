// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure.  Tolerances are pinned here on purpose; do not loosen them.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <vector>

#include "sunada/fixtures.hpp"
#include "sunada/intertwiner.hpp"
#include "sunada/quantize.hpp"
#include "sunada/scenario.hpp"

using namespace sunada;
namespace fx = sunada::fixtures;
namespace fs = std::filesystem;

namespace {

struct Criterion {
  const char* title;
  double time_limit_s;  // 0 = untimed
  std::function<bool()> check;
};

// Character vector of the coset action, one entry per group element.
std::vector<int> character_vector(const PermGroup& G, const Subgroup& H) {
  const CosetTable t = coset_action(G, H);
  std::vector<int> chi;
  chi.reserve(G.order());
  for (const auto& g : G.elements()) chi.push_back(permutation_character(t, g));
  return chi;
}

}  // namespace

int main() {
  const fs::path work = fs::temp_directory_path() / "sunada_acceptance";
  fs::remove_all(work);
  write_example_scenario("fano", work / "fano");
  write_example_scenario("brooks", work / "brooks");
  const Scenario fano = load_scenario(work / "fano" / "scenario.json");
  const ScenarioRuntime rt = prepare_runtime(fano, 7);
  const GraphView g1 = GraphView::of(rt.m1), g2 = GraphView::of(rt.m2);
  const Potential z1 = zero_potential(g1.n), z2 = zero_potential(g2.n);

  const std::vector<Criterion> criteria = {
      {"Gassmann verification (order-168 pair, per-class counts)", 5.0,
       [&] {
         const AlmostConjugacyReport ac = almost_conjugate(fano.g, fano.gamma1, fano.gamma2);
         if (!ac.verdict) return false;
         for (const auto& [a, b] : ac.per_class_counts)
           if (a != b) return false;
         return !is_conjugate_subgroups(fano.g, fano.gamma1, fano.gamma2);
       }},
      {"Bundle isospectrality, seeded connection, k=0..8, gap < 1e-8", 10.0,
       [&] {
         for (std::int64_t k = 0; k <= 8; ++k) {
           const auto a = eigenvalues(build_operator(g1, rt.conn1, k, z1));
           const auto b = eigenvalues(build_operator(g2, rt.conn2, k, z2));
           if (!compare_spectra(a, b, 1e-8).equal) return false;
         }
         return true;
       }},
      {"Invariant potential added, gap < 1e-8 for all k=0..8", 0,
       [&] {
         for (std::int64_t k = 0; k <= 8; ++k) {
           const auto a = eigenvalues(build_operator(g1, rt.conn1, k, rt.q1));
           const auto b = eigenvalues(build_operator(g2, rt.conn2, k, rt.q2));
           if (!compare_spectra(a, b, 1e-8).equal) return false;
         }
         return true;
       }},
      {"Exact transplantation: residual < 1e-10, integer identity exact", 0,
       [&] {
         const Intertwiner T = build_intertwiner(fano.g, fano.gamma1, fano.gamma2, 7);
         for (const auto& g : fano.g.elements())
           if (!intertwines_exactly(T, g)) return false;
         for (std::int64_t k = 0; k <= 8; ++k) {
           const double res = intertwining_residual(T, build_operator(g1, rt.conn1, k, rt.q1),
                                                    build_operator(g2, rt.conn2, k, rt.q2));
           if (!(res < 1e-10)) return false;
         }
         return true;
       }},
      {"Quantum equivalence at R=-2 (1e-10) and affine law (1e-12)", 0,
       [&] {
         for (std::int64_t k = 1; k <= 8; ++k) {
           const MagneticOperator d1 = build_operator(g1, rt.conn1, k, z1);
           const MagneticOperator d2 = build_operator(g2, rt.conn2, k, z2);
           const auto h1 = eigenvalues(quantum_hamiltonian(d1, CurvatureField::constant(g1.n), k));
           const auto h2 = eigenvalues(quantum_hamiltonian(d2, CurvatureField::constant(g2.n), k));
           if (!compare_spectra(h1, h2, 1e-10).equal) return false;
           const auto base = eigenvalues(d1);
           for (std::size_t i = 0; i < h1.size(); ++i)
             if (std::abs(h1[i] - (base[i] - 1.0 / 3.0) / (2.0 * k * k)) > 1e-12) return false;
         }
         return true;
       }},
      {"Brooks pair: isospectral (1e-8), holonomy apart by >= 0.1 rad", 0,
       [&] {
         const Scenario brooks = load_scenario(work / "brooks" / "scenario.json");
         const RunReport report = run_scenario(brooks);
         const auto& b = report.body["brooks"];
         return report.verified && b["spectra_equal"].get<bool>() &&
                b["max_gap"].get<double>() < 1e-8 &&
                b["max_holonomy_difference_rad"].get<double>() >= 0.1;
       }},
      {"Negative control: S4 pair fails, some seed gives gap > 1e-6", 0,
       [&] {
         const PermGroup s4 = fx::symmetric_group(4);
         const Subgroup c1(4, {Permutation::from_cycles(4, {{0, 1}})});
         const Subgroup c2(4, {Permutation::from_cycles(4, {{0, 1}, {2, 3}})});
         if (almost_conjugate(s4, c1, c2).verdict) return false;
         const VoltageGraph vg = fx::theta_voltage_graph(
             s4, {Permutation::identity(4), s4.generators()[0], s4.generators()[1]});
         const QuotientGraph m1 = quotient(vg, c1), m2 = quotient(vg, c2);
         bool any_gap = false;
         for (std::uint64_t seed = 1; seed <= 5; ++seed) {
           std::mt19937_64 rng(seed);
           Connection base{std::vector<Turn>(3)};
           for (auto& t : base.phases) {
             const std::int64_t d = 1 + std::uniform_int_distribution<std::int64_t>(0, 359)(rng);
             t = Turn(std::uniform_int_distribution<std::int64_t>(0, d - 1)(rng), d);
           }
           const Connection cc1 = descend_connection(vg, m1, base);
           const Connection cc2 = descend_connection(vg, m2, base);
           for (std::int64_t k = 0; k <= 8 && !any_gap; ++k) {
             const auto a = eigenvalues(build_operator(GraphView::of(m1), cc1, k, zero_potential(m1.vertex_count())));
             const auto b = eigenvalues(build_operator(GraphView::of(m2), cc2, k, zero_potential(m2.vertex_count())));
             if (compare_spectra(a, b, 1e-8).max_gap > 1e-6) any_gap = true;
           }
         }
         return any_gap;
       }},
      {"Character criterion == almost conjugacy, exhaustive small groups", 0,
       [&] {
         for (const PermGroup& G : {fx::symmetric_group(3), fx::symmetric_group(4), fx::dihedral_group_d4(),
                                    fx::quaternion_group_q8(), fx::s3_times_s3()}) {
           const std::vector<Subgroup> subs = small_subgroups(G, 2);
           std::vector<std::vector<int>> chi;
           chi.reserve(subs.size());
           for (const auto& h : subs) chi.push_back(character_vector(G, h));
           for (std::size_t i = 0; i < subs.size(); ++i)
             for (std::size_t j = i + 1; j < subs.size(); ++j)
               if (almost_conjugate(G, subs[i], subs[j]).verdict != (chi[i] == chi[j])) return false;
         }
         return true;
       }},
      {"Closed-form cycle spectra, n <= 12, k = 0..8, within 1e-10", 0,
       [&] {
         for (int n = 3; n <= 12; ++n) {
           const GraphView g = GraphView::of(fx::cycle_graph(n));
           Connection conn{std::vector<Turn>(n, Turn(1, 5 * n))};  // total 1/5 turn
           for (std::int64_t k = 0; k <= 8; ++k) {
             const auto ev = eigenvalues(build_operator(g, conn, k, zero_potential(n)));
             std::vector<double> expected;
             const double phi = 2.0 * M_PI * static_cast<double>(k) / 5.0;
             for (int j = 0; j < n; ++j)
               expected.push_back(2.0 - 2.0 * std::cos((2.0 * M_PI * j + phi) / n));
             std::sort(expected.begin(), expected.end());
             if (!compare_spectra(ev, expected, 1e-10).equal) return false;
           }
         }
         return true;
       }},
      {"Gauge and tensor-power laws (100 seeds; exact rationals)", 0,
       [&] {
         const GraphView g = GraphView::of(fx::cycle_graph(6));
         const Connection conn{{Turn(1, 3), Turn(1, 5), Turn(0, 1), Turn(2, 7), Turn(1, 2), Turn(3, 11)}};
         const auto base_ev = eigenvalues(build_operator(g, conn, 1, zero_potential(6)));
         const auto base_hol = holonomy_report(g, conn);
         std::mt19937_64 rng(17);
         for (int trial = 0; trial < 100; ++trial) {
           std::vector<Turn> gauge;
           for (int v = 0; v < 6; ++v) {
             const std::int64_t d = 1 + std::uniform_int_distribution<std::int64_t>(0, 23)(rng);
             gauge.push_back(Turn(std::uniform_int_distribution<std::int64_t>(0, d - 1)(rng), d));
           }
           const Connection moved = gauge_transform(g, conn, gauge);
           const auto ev = eigenvalues(build_operator(g, moved, 1, zero_potential(6)));
           if (!compare_spectra(base_ev, ev, 1e-12).equal) return false;
           const auto hol = holonomy_report(g, moved);
           for (std::size_t i = 0; i < hol.cycles.size(); ++i)
             if (!(hol.cycles[i].holonomy == base_hol.cycles[i].holonomy)) return false;
         }
         for (std::int64_t k = 0; k <= 8; ++k) {
           const Connection powk = tensor_power(conn, k);
           for (std::size_t i = 0; i < conn.phases.size(); ++i)
             if (!(powk.phases[i].mod1() == (conn.phases[i] * k).mod1())) return false;
         }
         return true;
       }},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& c = criteria[i];
    const auto start = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = c.check();
    } catch (const std::exception& e) {
      std::printf("criterion %2zu: FAIL (exception: %s)\n", i + 1, e.what());
      ++failures;
      continue;
    }
    const double secs =
        std::chrono::duration_cast<std::chrono::duration<double>>(std::chrono::steady_clock::now() - start)
            .count();
    if (ok && c.time_limit_s > 0 && secs > c.time_limit_s) {
      std::printf("criterion %2zu: FAIL (%.2fs exceeds %.0fs limit) %s\n", i + 1, secs, c.time_limit_s,
                  c.title);
      ++failures;
      continue;
    }
    std::printf("criterion %2zu: %s (%.2fs) %s\n", i + 1, ok ? "PASS" : "FAIL", secs, c.title);
    if (!ok) ++failures;
  }
  if (failures) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
