// Command-line front end: scenario-driven checks with stable exit codes
// (0 = verified, 1 = negative verdict, 2 = error).
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "sunada/graph_iso.hpp"
#include "sunada/intertwiner.hpp"
#include "sunada/scenario.hpp"

using namespace sunada;
using nlohmann::ordered_json;

namespace {

struct Common {
  std::string scenario_path;
  std::string k_text;
  double tol = 1e-8;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  std::string format = "json";
};

void add_common(CLI::App* cmd, Common& c, const char* default_k = "0..8") {
  c.k_text = default_k;
  cmd->add_option("--scenario", c.scenario_path, "scenario JSON file")->required();
  cmd->add_option("--k", c.k_text, "tensor power range LO..HI");
  cmd->add_option("--tol", c.tol, "spectral comparison tolerance");
  cmd->add_option("--seed", c.seed, "override the scenario seed");
  cmd->add_option("--out", c.out_dir, "output directory for reports");
  cmd->add_option("--format", c.format, "json or tsv")->check(CLI::IsMember({"json", "tsv"}));
}

Scenario load(const Common& c) { return load_scenario(c.scenario_path); }

ScenarioRuntime runtime(const Scenario& sc, const Common& c) {
  return prepare_runtime(sc, c.seed.value_or(sc.seed));
}

void emit(const Common& c, const ordered_json& j, const std::string& tsv) {
  if (c.format == "tsv")
    std::cout << tsv;
  else
    std::cout << j.dump(2) << "\n";
}

int cmd_gassmann_verify(const Common& c) {
  const Scenario sc = load(c);
  const AlmostConjugacyReport ac = almost_conjugate(sc.g, sc.gamma1, sc.gamma2);
  const bool conj = is_conjugate_subgroups(sc.g, sc.gamma1, sc.gamma2);
  ordered_json j;
  j["almost_conjugate"] = ac.verdict;
  j["conjugate"] = conj;
  j["per_class_counts"] = ordered_json::array();
  std::string tsv = "class\tgamma1\tgamma2\n";
  for (std::size_t i = 0; i < ac.per_class_counts.size(); ++i) {
    const auto& [a, b] = ac.per_class_counts[i];
    j["per_class_counts"].push_back({a, b});
    tsv += std::to_string(i) + "\t" + std::to_string(a) + "\t" + std::to_string(b) + "\n";
  }
  emit(c, j, tsv);
  return ac.verdict ? 0 : 1;
}

int cmd_gassmann_search(const Common& c) {
  const Scenario sc = load(c);
  const auto pairs = search_gassmann(sc.g, 2);
  ordered_json j;
  j["pairs"] = ordered_json::array();
  std::string tsv = "order\tindex\n";
  for (const auto& [h1, h2] : pairs) {
    j["pairs"].push_back({{"order", h1.order()}, {"index", sc.g.order() / h1.order()}});
    tsv += std::to_string(h1.order()) + "\t" + std::to_string(sc.g.order() / h1.order()) + "\n";
  }
  emit(c, j, tsv);
  return pairs.empty() ? 1 : 0;
}

ordered_json quotient_json(const QuotientGraph& q) {
  ordered_json j;
  j["vertices"] = q.vertex_count();
  j["index"] = q.index;
  j["edges"] = ordered_json::array();
  for (const auto& e : q.edges)
    j["edges"].push_back({{"tail", e.tail}, {"head", e.head}, {"base_edge", e.base_edge}, {"coset", e.src_coset}});
  return j;
}

int cmd_cover_build(const Common& c) {
  const Scenario sc = load(c);
  const QuotientGraph m1 = quotient(sc.vg, sc.gamma1);
  const QuotientGraph m2 = quotient(sc.vg, sc.gamma2);
  ordered_json j;
  j["m1"] = quotient_json(m1);
  j["m2"] = quotient_json(m2);
  j["components"] = {{"m1", connectivity(m1)}, {"m2", connectivity(m2)}};
  std::string tsv = "graph\tvertices\tedges\tcomponents\n";
  tsv += "m1\t" + std::to_string(m1.vertex_count()) + "\t" + std::to_string(m1.edges.size()) + "\t" +
         std::to_string(connectivity(m1)) + "\n";
  tsv += "m2\t" + std::to_string(m2.vertex_count()) + "\t" + std::to_string(m2.edges.size()) + "\t" +
         std::to_string(connectivity(m2)) + "\n";
  if (!c.out_dir.empty()) {
    std::filesystem::create_directories(c.out_dir);
    std::ofstream(std::filesystem::path(c.out_dir) / "m1.json") << j["m1"].dump(2) << "\n";
    std::ofstream(std::filesystem::path(c.out_dir) / "m2.json") << j["m2"].dump(2) << "\n";
  }
  emit(c, j, tsv);
  return 0;
}

int cmd_spectra(const Common& c) {
  const Scenario sc = load(c);
  const ScenarioRuntime rt = runtime(sc, c);
  const KRange kr = parse_k_range(c.k_text);
  const GraphView g1 = GraphView::of(rt.m1), g2 = GraphView::of(rt.m2);
  std::vector<std::pair<std::int64_t, std::vector<double>>> s1, s2;
  for (std::int64_t k = kr.lo; k <= kr.hi; ++k) {
    s1.emplace_back(k, eigenvalues(build_operator(g1, rt.conn1, k, rt.q1)));
    s2.emplace_back(k, eigenvalues(build_operator(g2, rt.conn2, k, rt.q2)));
  }
  if (!c.out_dir.empty()) {
    std::filesystem::create_directories(c.out_dir);
    write_spectrum_tsv(std::filesystem::path(c.out_dir) / "spectra_m1.tsv", s1);
    write_spectrum_tsv(std::filesystem::path(c.out_dir) / "spectra_m2.tsv", s2);
  }
  ordered_json j;
  std::string tsv = "graph\tk\tindex\tvalue\n";
  for (const auto& [label, s] : {std::pair{"m1", &s1}, {"m2", &s2}}) {
    j[label] = ordered_json::array();
    for (const auto& [k, evs] : *s) {
      j[label].push_back({{"k", k}, {"eigenvalues", evs}});
      for (std::size_t i = 0; i < evs.size(); ++i) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%s\t%lld\t%zu\t%.12g\n", label, static_cast<long long>(k), i, evs[i]);
        tsv += buf;
      }
    }
  }
  emit(c, j, tsv);
  return 0;
}

int cmd_compare(const Common& c) {
  const Scenario sc = load(c);
  const ScenarioRuntime rt = runtime(sc, c);
  const KRange kr = parse_k_range(c.k_text);
  const GraphView g1 = GraphView::of(rt.m1), g2 = GraphView::of(rt.m2);
  ordered_json j;
  j["per_k"] = ordered_json::array();
  std::string tsv = "k\tgap\tequal\n";
  bool all_equal = true;
  for (std::int64_t k = kr.lo; k <= kr.hi; ++k) {
    const SpectrumComparison cmp = compare_spectra(eigenvalues(build_operator(g1, rt.conn1, k, rt.q1)),
                                                   eigenvalues(build_operator(g2, rt.conn2, k, rt.q2)), c.tol);
    all_equal = all_equal && cmp.equal;
    j["per_k"].push_back({{"k", k}, {"gap", cmp.max_gap}, {"equal", cmp.equal}});
    char buf[64];
    std::snprintf(buf, sizeof buf, "%lld\t%.12g\t%d\n", static_cast<long long>(k), cmp.max_gap, cmp.equal ? 1 : 0);
    tsv += buf;
  }
  j["equal"] = all_equal;
  if (!c.out_dir.empty()) {
    RunOptions opt;
    opt.k_range = kr;
    opt.tol = c.tol;
    opt.seed = c.seed;
    opt.out_dir = c.out_dir;
    run_scenario(sc, opt);  // full report alongside the gap table
  }
  emit(c, j, tsv);
  return all_equal ? 0 : 1;
}

int cmd_transplant(const Common& c) {
  const Scenario sc = load(c);
  const ScenarioRuntime rt = runtime(sc, c);
  const KRange kr = parse_k_range(c.k_text);
  ordered_json j;
  std::string tsv = "k\tresidual\n";
  try {
    const Intertwiner T =
        build_intertwiner(sc.g, sc.gamma1, sc.gamma2, c.seed.value_or(sc.seed));
    bool exact = true;
    for (const auto& g : sc.g.generators()) exact = exact && intertwines_exactly(T, g);
    const GraphView g1 = GraphView::of(rt.m1), g2 = GraphView::of(rt.m2);
    double max_res = 0.0;
    j["residuals"] = ordered_json::array();
    for (std::int64_t k = kr.lo; k <= kr.hi; ++k) {
      const double res = intertwining_residual(T, build_operator(g1, rt.conn1, k, rt.q1),
                                               build_operator(g2, rt.conn2, k, rt.q2));
      max_res = std::max(max_res, res);
      j["residuals"].push_back({{"k", k}, {"residual", res}});
      char buf[64];
      std::snprintf(buf, sizeof buf, "%lld\t%.12g\n", static_cast<long long>(k), res);
      tsv += buf;
    }
    j["exact_on_generators"] = exact;
    j["max_residual"] = max_res;
    emit(c, j, tsv);
    return (exact && max_res <= c.tol) ? 0 : 1;
  } catch (const NotAlmostConjugate& e) {
    j["verdict"] = false;
    j["reason"] = e.what();
    emit(c, j, std::string("not_almost_conjugate\n"));
    return 1;
  }
}

int cmd_quantum(const Common& c) {
  const Scenario sc = load(c);
  const ScenarioRuntime rt = runtime(sc, c);
  const KRange kr = parse_k_range(c.k_text);
  if (kr.lo < 1) throw BadK("quantum: k range must start at 1 (hbar = 1/k)");
  const GraphView g1 = GraphView::of(rt.m1), g2 = GraphView::of(rt.m2);
  const Potential z1 = zero_potential(g1.n), z2 = zero_potential(g2.n);
  ordered_json j;
  j["per_k"] = ordered_json::array();
  std::string tsv = "k\tgap\n";
  bool all_equal = true;
  for (std::int64_t k = kr.lo; k <= kr.hi; ++k) {
    const auto h1 = eigenvalues(quantum_hamiltonian(build_operator(g1, rt.conn1, k, z1), rt.r1, k));
    const auto h2 = eigenvalues(quantum_hamiltonian(build_operator(g2, rt.conn2, k, z2), rt.r2, k));
    const SpectrumComparison cmp = compare_spectra(h1, h2, c.tol);
    all_equal = all_equal && cmp.equal;
    j["per_k"].push_back({{"k", k}, {"gap", cmp.max_gap}});
    char buf[64];
    std::snprintf(buf, sizeof buf, "%lld\t%.12g\n", static_cast<long long>(k), cmp.max_gap);
    tsv += buf;
  }
  j["equal"] = all_equal;
  emit(c, j, tsv);
  return all_equal ? 0 : 1;
}

int cmd_brooks(const Common& c) {
  const Scenario sc = load(c);
  if (!sc.tau) throw ValidationFailed("tau", "brooks requires a scenario with a tau layer");
  RunOptions opt;
  opt.k_range = parse_k_range(c.k_text);
  opt.tol = c.tol;
  opt.seed = c.seed;
  if (!c.out_dir.empty()) opt.out_dir = c.out_dir;
  const RunReport report = run_scenario(sc, opt);
  const auto& brooks = report.body["brooks"];
  std::string tsv = "spectra_equal\tmax_gap\tholonomy_differs\tmax_holonomy_difference_rad\n";
  char buf[128];
  std::snprintf(buf, sizeof buf, "%d\t%.12g\t%d\t%.12g\n", brooks["spectra_equal"].get<bool>() ? 1 : 0,
                brooks["max_gap"].get<double>(), brooks["holonomy_differs"].get<bool>() ? 1 : 0,
                brooks["max_holonomy_difference_rad"].get<double>());
  emit(c, brooks, tsv + buf);
  const bool wants_breaking = sc.random_spec && sc.random_spec->break_tau;
  const bool ok = brooks["spectra_equal"].get<bool>() &&
                  (!wants_breaking || brooks["holonomy_differs"].get<bool>());
  return ok ? 0 : 1;
}

int cmd_isocheck(const Common& c) {
  const Scenario sc = load(c);
  const QuotientGraph m1 = quotient(sc.vg, sc.gamma1);
  const QuotientGraph m2 = quotient(sc.vg, sc.gamma2);
  ordered_json j;
  if (sc.tau) {
    const auto witness = sigma_witness(m1, m2, *sc.tau);
    j["isomorphic"] = witness.has_value();
    j["via_sigma"] = true;
  } else {
    const IsoCertificate cert = graph_isomorphic(m1, m2);
    j["isomorphic"] = cert.isomorphic;
    j["via_sigma"] = false;
    if (!cert.isomorphic) j["distinguishing_signature"] = cert.signature;
  }
  emit(c, j, std::string(j["isomorphic"].get<bool>() ? "isomorphic\n" : "non_isomorphic\n"));
  return j["isomorphic"].get<bool>() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"isospectral line-bundle laboratory"};
  app.require_subcommand(1);

  Common verify_c, search_c, cover_c, spectra_c, compare_c, transplant_c, quantum_c, brooks_c, iso_c;

  CLI::App* gassmann = app.add_subcommand("gassmann", "almost-conjugacy checks");
  gassmann->require_subcommand(1);
  add_common(gassmann->add_subcommand("verify", "verify the scenario's subgroup pair"), verify_c);
  add_common(gassmann->add_subcommand("search", "search <=2-generator Gassmann pairs"), search_c);

  CLI::App* cover = app.add_subcommand("cover", "covering-space constructions");
  cover->require_subcommand(1);
  add_common(cover->add_subcommand("build", "build both quotient graphs"), cover_c);

  add_common(app.add_subcommand("spectra", "per-k magnetic spectra"), spectra_c);
  add_common(app.add_subcommand("compare", "per-k spectral gap table"), compare_c);
  add_common(app.add_subcommand("transplant", "exact intertwiner and residuals"), transplant_c);
  add_common(app.add_subcommand("quantum", "quantum Hamiltonian spectra"), quantum_c, "1..8");
  add_common(app.add_subcommand("brooks", "one-quotient connection pair"), brooks_c);
  add_common(app.add_subcommand("isocheck", "quotient graph isomorphism"), iso_c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (gassmann->got_subcommand("verify")) return cmd_gassmann_verify(verify_c);
    if (gassmann->got_subcommand("search")) return cmd_gassmann_search(search_c);
    if (cover->got_subcommand("build")) return cmd_cover_build(cover_c);
    if (app.got_subcommand("spectra")) return cmd_spectra(spectra_c);
    if (app.got_subcommand("compare")) return cmd_compare(compare_c);
    if (app.got_subcommand("transplant")) return cmd_transplant(transplant_c);
    if (app.got_subcommand("quantum")) return cmd_quantum(quantum_c);
    if (app.got_subcommand("brooks")) return cmd_brooks(brooks_c);
    if (app.got_subcommand("isocheck")) return cmd_isocheck(iso_c);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
