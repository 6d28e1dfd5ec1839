#include "sunada/scenario.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "sunada/fixtures.hpp"
#include "sunada/graph_iso.hpp"
#include "sunada/intertwiner.hpp"

namespace sunada {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json parse_file(const fs::path& path) {
  try {
    return json::parse(slurp(path));
  } catch (const json::parse_error& e) {
    throw Error("bad JSON in " + path.string() + ": " + e.what());
  }
}

void spit(const fs::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << bytes;
}

Permutation perm_from_json(const json& arr) {
  if (!arr.is_array()) throw Error("permutation must be an image array");
  return Permutation(arr.get<std::vector<int>>());
}

std::string twelve_digits(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// Divisors of n, for drawing random denominators.
std::vector<std::int64_t> divisors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t d = 1; d <= n; ++d)
    if (n % d == 0) out.push_back(d);
  return out;
}

// Greedy generating set, to keep subgroup files readable.
std::vector<Permutation> reduce_generators(const Subgroup& h) {
  std::vector<Permutation> gens;
  for (const auto& e : h.elements()) {
    if (e.is_identity()) continue;
    if (!gens.empty() && Subgroup(h.degree(), gens).contains(e)) continue;
    gens.push_back(e);
    if (Subgroup(h.degree(), gens).order() == h.order()) break;
  }
  return gens;
}

void record_hash(Scenario& sc, const fs::path& file) {
  sc.input_hashes[file.filename().string()] = fnv1a_hex(slurp(file));
}

}  // namespace

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

int thread_cap() {
  if (const char* env = std::getenv("SUNADA_LAB_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

namespace {

// Index-parallel loop capped by SUNADA_LAB_THREADS; rethrows the first
// worker exception.
void for_each_index(std::size_t n, const std::function<void(std::size_t)>& f) {
  const int cap = thread_cap();
  if (cap <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n || failed.load()) return;
      try {
        f(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed.store(true);
        return;
      }
    }
  };
  std::vector<std::thread> threads;
  const int nt = static_cast<int>(std::min<std::size_t>(cap, n));
  for (int t = 0; t < nt; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace

KRange parse_k_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) throw ValidationFailed("k_range", "expected LO..HI, got '" + text + "'");
  try {
    KRange r{std::stoll(text.substr(0, dots)), std::stoll(text.substr(dots + 2))};
    if (r.lo > r.hi || r.lo < 0) throw ValidationFailed("k_range", "need 0 <= LO <= HI in '" + text + "'");
    return r;
  } catch (const std::invalid_argument&) {
    throw ValidationFailed("k_range", "expected LO..HI, got '" + text + "'");
  }
}

PermGroup load_group_file(const fs::path& path) {
  const json j = parse_file(path);
  if (!j.contains("degree") || !j.contains("generators"))
    throw Error(path.string() + ": group file needs 'degree' and 'generators'");
  std::vector<Permutation> gens;
  for (const auto& g : j["generators"]) gens.push_back(perm_from_json(g));
  return PermGroup(j["degree"].get<int>(), std::move(gens), j.value("name", ""));
}

Subgroup load_subgroup_file(const fs::path& path) {
  Subgroup h = load_group_file(path);
  const json j = parse_file(path);
  if (j.contains("parent")) {
    const PermGroup parent = load_group_file(path.parent_path() / j["parent"].get<std::string>());
    if (!h.is_subgroup_of(parent))
      throw ValidationFailed(path.filename().string(),
                             "generators do not lie in the declared parent group");
  }
  return h;
}

VoltageGraph load_voltage_graph_file(const fs::path& path) {
  const json j = parse_file(path);
  VoltageGraph vg;
  vg.group = load_group_file(path.parent_path() / j.at("group").get<std::string>());
  vg.base.vertex_count = j.at("vertices").get<int>();
  for (const auto& e : j.at("edges")) {
    vg.base.edges.push_back({e.at("from").get<int>(), e.at("to").get<int>(), e.at("id").get<int>()});
    vg.voltage.push_back(perm_from_json(e.at("voltage")));
  }
  vg.validate();
  return vg;
}

Connection load_connection_file(const fs::path& path, std::size_t edge_count) {
  const json j = parse_file(path);
  Connection conn{std::vector<Turn>(edge_count)};
  std::vector<char> seen(edge_count, 0);
  for (const auto& p : j.at("phases")) {
    const int id = p.at("edge").get<int>();
    if (id < 0 || static_cast<std::size_t>(id) >= edge_count)
      throw MissingPhase(path.string() + ": phase for unknown edge " + std::to_string(id));
    conn.phases[id] = Turn(p.at("turn").at("num").get<std::int64_t>(), p.at("turn").at("den").get<std::int64_t>());
    seen[id] = 1;
  }
  for (std::size_t i = 0; i < edge_count; ++i)
    if (!seen[i]) throw MissingPhase(path.string() + ": no phase for edge " + std::to_string(i));
  return conn;
}

std::vector<double> load_vertex_values_file(const fs::path& path, int vertex_count, const std::string& key) {
  const json j = parse_file(path);
  std::vector<double> values(vertex_count, 0.0);
  std::vector<char> seen(vertex_count, 0);
  for (const auto& entry : j.at("values")) {
    const int v = entry.at("vertex").get<int>();
    if (v < 0 || v >= vertex_count)
      throw MissingPotential(path.string() + ": value for unknown vertex " + std::to_string(v));
    values[v] = entry.at(key).get<double>();
    seen[v] = 1;
  }
  for (int v = 0; v < vertex_count; ++v)
    if (!seen[v]) throw MissingPotential(path.string() + ": no value for vertex " + std::to_string(v));
  return values;
}

void save_group_file(const fs::path& path, const PermGroup& g) {
  ordered_json j;
  j["name"] = g.name();
  j["degree"] = g.degree();
  j["generators"] = json::array();
  for (const auto& p : g.generators()) j["generators"].push_back(p.images());
  spit(path, j.dump(2) + "\n");
}

void save_subgroup_file(const fs::path& path, const Subgroup& h, const std::string& parent) {
  ordered_json j;
  j["name"] = h.name();
  j["degree"] = h.degree();
  j["parent"] = parent;
  j["generators"] = json::array();
  for (const auto& p : h.generators()) j["generators"].push_back(p.images());
  spit(path, j.dump(2) + "\n");
}

void save_voltage_graph_file(const fs::path& path, const VoltageGraph& vg, const std::string& group_file) {
  ordered_json j;
  j["vertices"] = vg.base.vertex_count;
  j["edges"] = json::array();
  for (std::size_t i = 0; i < vg.base.edges.size(); ++i) {
    const auto& e = vg.base.edges[i];
    j["edges"].push_back({{"id", e.id}, {"from", e.tail}, {"to", e.head}, {"voltage", vg.voltage[i].images()}});
  }
  j["group"] = group_file;
  spit(path, j.dump(2) + "\n");
}

void save_connection_file(const fs::path& path, const std::string& graph_id, const Connection& conn) {
  ordered_json j;
  j["graph"] = graph_id;
  j["phases"] = json::array();
  for (std::size_t i = 0; i < conn.phases.size(); ++i)
    j["phases"].push_back({{"edge", static_cast<int>(i)},
                           {"turn", {{"num", conn.phases[i].num}, {"den", conn.phases[i].den}}}});
  spit(path, j.dump(2) + "\n");
}

void save_vertex_values_file(const fs::path& path, const std::vector<double>& values, const std::string& key) {
  ordered_json j;
  j["values"] = json::array();
  for (std::size_t v = 0; v < values.size(); ++v)
    j["values"].push_back({{"vertex", static_cast<int>(v)}, {key, values[v]}});
  spit(path, j.dump(2) + "\n");
}

Scenario load_scenario(const fs::path& path) {
  const json j = parse_file(path);
  Scenario sc;
  sc.dir = fs::absolute(path).parent_path();
  sc.name = j.value("name", path.stem().string());
  sc.input_hashes[path.filename().string()] = fnv1a_hex(slurp(path));

  auto file = [&](const std::string& key) {
    const fs::path p = sc.dir / j.at(key).get<std::string>();
    record_hash(sc, p);
    return p;
  };

  sc.ghat = load_group_file(file("ghat"));
  if (j.contains("g")) {
    sc.g = load_subgroup_file(file("g"));
    sc.has_g_layer = true;
  } else {
    sc.g = sc.ghat;
  }
  sc.gamma1 = load_subgroup_file(file("gamma1"));
  sc.gamma2 = load_subgroup_file(file("gamma2"));
  if (j.contains("tau")) sc.tau = perm_from_json(j["tau"]);
  sc.vg = load_voltage_graph_file(file("graph"));
  record_hash(sc, sc.dir / parse_file(sc.dir / j.at("graph").get<std::string>()).at("group").get<std::string>());

  if (j.contains("connection")) {
    const json& c = j["connection"];
    if (c.is_string()) {
      sc.explicit_base_conn = load_connection_file(file("connection"), sc.vg.base.edges.size());
    } else if (c.is_object() && c.contains("random")) {
      RandomDataSpec spec;
      const json& r = c["random"];
      spec.denominator_bound = r.value("denominator_bound", std::int64_t{360});
      spec.break_tau = r.value("break_tau", false);
      spec.zero = r.value("zero", false);
      sc.random_spec = spec;
    } else {
      throw ValidationFailed("connection", "expected a filename or {\"random\": {...}}");
    }
  }
  const int mid_index = sc.has_g_layer
                            ? static_cast<int>(sc.ghat.order() / sc.g.order())
                            : 1;
  const int mid_vertices = sc.vg.base.vertex_count * mid_index;
  if (j.contains("mid_connection"))
    sc.explicit_mid_conn = load_connection_file(file("mid_connection"), sc.vg.base.edges.size() * mid_index);
  if (j.contains("potential")) {
    const json& p = j["potential"];
    if (p.is_string()) {
      sc.explicit_potential = load_vertex_values_file(file("potential"), mid_vertices, "q");
    } else if (p.is_object() && p.contains("random")) {
      if (!sc.random_spec) sc.random_spec = RandomDataSpec{};
      sc.random_spec->potential_amplitude = p["random"].value("amplitude", 1.0);
    } else {
      throw ValidationFailed("potential", "expected a filename or {\"random\": {\"amplitude\": a}}");
    }
  }
  if (j.contains("r")) {
    if (j["r"].is_number())
      sc.r_constant = j["r"].get<double>();
    else
      sc.explicit_r = load_vertex_values_file(file("r"), mid_vertices, "r");
  }
  if (j.contains("k_range")) sc.k_range = parse_k_range(j["k_range"].get<std::string>());
  sc.tol = j.value("tol", 1e-8);
  if (sc.tol <= 0) throw ValidationFailed("tol", "tolerance must be positive");
  sc.seed = j.value("seed", std::uint64_t{1});

  validate_scenario(sc);
  return sc;
}

void validate_scenario(const Scenario& sc) {
  if (sc.has_g_layer && !sc.g.is_subgroup_of(sc.ghat))
    throw ValidationFailed("g", "G is not a subgroup of the deck group");
  if (!sc.gamma1.is_subgroup_of(sc.g)) throw ValidationFailed("gamma1", "Gamma_1 is not contained in G");
  if (!sc.gamma2.is_subgroup_of(sc.g)) throw ValidationFailed("gamma2", "Gamma_2 is not contained in G");
  if (sc.tau) {
    if (!sc.ghat.contains(*sc.tau)) throw ValidationFailed("tau", "tau does not lie in the deck group");
    for (const auto& g : sc.g.generators())
      if (!sc.g.contains(*sc.tau * g * sc.tau->inverse()))
        throw ValidationFailed("tau", "tau does not normalize G");
    try {
      require_normalizing(*sc.tau, sc.gamma1, sc.gamma2);
    } catch (const NotNormalizing&) {
      throw ValidationFailed("tau", "tau Gamma_1 tau^-1 != Gamma_2");
    }
  }
  try {
    sc.vg.validate();
  } catch (const std::exception& e) {
    throw ValidationFailed("graph", e.what());
  }
  if (sc.explicit_base_conn && sc.explicit_base_conn->phases.size() != sc.vg.base.edges.size())
    throw ValidationFailed("connection", "phase count does not match the base edge count");
}

InvariantData generate_invariant_data(const Scenario& sc, std::uint64_t seed) {
  const RandomDataSpec spec = sc.random_spec.value_or(RandomDataSpec{.zero = true});
  const QuotientGraph mid = quotient(sc.vg, sc.g);
  const std::size_t base_edges = sc.vg.base.edges.size();

  // Base phases draw from divisors of the bound; the sheet-dependent
  // delta sticks to divisors of 24 so that any tau-breaking holonomy
  // difference is at least 1/24 of a turn.
  const auto base_dens = divisors(std::max<std::int64_t>(1, spec.denominator_bound));
  const auto mid_dens = divisors(std::min<std::int64_t>(24, std::max<std::int64_t>(1, spec.denominator_bound)));

  for (std::uint64_t attempt = 0; attempt < 50; ++attempt) {
    const std::uint64_t s = seed + attempt;
    std::mt19937_64 rng(s);
    auto rand_turn = [&](const std::vector<std::int64_t>& dens) {
      const std::int64_t d = dens[std::uniform_int_distribution<std::size_t>(0, dens.size() - 1)(rng)];
      return Turn(std::uniform_int_distribution<std::int64_t>(0, d - 1)(rng), d);
    };

    InvariantData out;
    out.used_seed = s;
    out.base_conn.phases.assign(base_edges, Turn());
    if (!spec.zero)
      for (auto& t : out.base_conn.phases) t = rand_turn(base_dens);

    if (sc.has_g_layer) {
      Connection delta{std::vector<Turn>(base_edges * mid.index)};
      if (!spec.zero)
        for (auto& t : delta.phases) t = rand_turn(mid_dens);
      out.mid_conn = std::move(delta);
    }

    out.mid_potential.assign(mid.vertex_count(), 0.0);
    out.mid_r.assign(mid.vertex_count(), sc.r_constant);
    if (!spec.zero && spec.potential_amplitude != 0.0) {
      std::uniform_real_distribution<double> u(-spec.potential_amplitude, spec.potential_amplitude);
      for (auto& v : out.mid_potential) v = u(rng);
    }

    if (spec.break_tau && sc.has_g_layer) {
      bool differs = false;
      for (std::size_t e = 0; e < base_edges && !differs; ++e)
        for (int c = 1; c < mid.index && !differs; ++c)
          if (!(out.mid_conn->phases[e * mid.index + c] == out.mid_conn->phases[e * mid.index]))
            differs = true;
      if (!differs) continue;  // symmetric by chance; try the next seed
    }
    return out;
  }
  throw Error("generate_invariant_data: could not produce a tau-breaking delta");
}

ScenarioRuntime prepare_runtime(const Scenario& sc, std::uint64_t seed) {
  validate_scenario(sc);
  ScenarioRuntime rt;
  rt.mid = quotient(sc.vg, sc.g);
  rt.data = generate_invariant_data(sc, seed);
  if (sc.explicit_base_conn) rt.data.base_conn = *sc.explicit_base_conn;
  if (sc.explicit_mid_conn) rt.data.mid_conn = *sc.explicit_mid_conn;
  if (sc.explicit_potential) rt.data.mid_potential = *sc.explicit_potential;
  if (sc.explicit_r) rt.data.mid_r = *sc.explicit_r;

  rt.m1 = quotient(sc.vg, sc.gamma1);
  rt.m2 = quotient(sc.vg, sc.gamma2);
  const QuotientGraph* mid = rt.data.mid_conn ? &rt.mid : nullptr;
  const Connection* delta = rt.data.mid_conn ? &*rt.data.mid_conn : nullptr;
  rt.conn1 = descend_connection(sc.vg, rt.m1, rt.data.base_conn, mid, delta);
  rt.conn2 = descend_connection(sc.vg, rt.m2, rt.data.base_conn, mid, delta);
  const std::vector<double> base_zeros(sc.vg.base.vertex_count, 0.0);
  rt.q1 = descend_potential(rt.m1, base_zeros, &rt.mid, &rt.data.mid_potential);
  rt.q2 = descend_potential(rt.m2, base_zeros, &rt.mid, &rt.data.mid_potential);
  rt.r1 = CurvatureField{descend_potential(rt.m1, base_zeros, &rt.mid, &rt.data.mid_r).values};
  rt.r2 = CurvatureField{descend_potential(rt.m2, base_zeros, &rt.mid, &rt.data.mid_r).values};
  return rt;
}

RunReport run_scenario(const Scenario& sc, const RunOptions& opt) {
  const auto started = std::chrono::steady_clock::now();
  const KRange kr = opt.k_range.value_or(sc.k_range);
  const double tol = opt.tol.value_or(sc.tol);
  const std::uint64_t seed = opt.seed.value_or(sc.seed);

  ScenarioRuntime rt = prepare_runtime(sc, seed);

  ordered_json report;
  report["version"] = kToolVersion;
  report["name"] = sc.name;
  report["seed"] = rt.data.used_seed;
  report["tol"] = tol;
  report["k_range"] = std::to_string(kr.lo) + ".." + std::to_string(kr.hi);
  report["inputs"] = sc.input_hashes;

  // Gassmann verdict lives in G, the group whose invariant data descends.
  const AlmostConjugacyReport ac = almost_conjugate(sc.g, sc.gamma1, sc.gamma2);
  const bool conj = is_conjugate_subgroups(sc.g, sc.gamma1, sc.gamma2);
  report["gassmann"]["almost_conjugate"] = ac.verdict;
  report["gassmann"]["conjugate"] = conj;
  report["gassmann"]["per_class_counts"] = json::array();
  for (const auto& [a, b] : ac.per_class_counts)
    report["gassmann"]["per_class_counts"].push_back({a, b});

  if (sc.tau) {
    const auto witness = sigma_witness(rt.m1, rt.m2, *sc.tau);
    report["isomorphism"]["isomorphic"] = witness.has_value();
    report["isomorphism"]["via_sigma"] = true;
  } else {
    const IsoCertificate cert = graph_isomorphic(rt.m1, rt.m2);
    report["isomorphism"]["isomorphic"] = cert.isomorphic;
    report["isomorphism"]["via_sigma"] = false;
  }

  // Per-k spectra of the two quotient operators (with Q).
  std::vector<std::int64_t> ks;
  for (std::int64_t k = kr.lo; k <= kr.hi; ++k) ks.push_back(k);
  std::vector<std::vector<double>> ev1(ks.size()), ev2(ks.size());
  const GraphView g1 = GraphView::of(rt.m1), g2 = GraphView::of(rt.m2);
  for_each_index(ks.size(), [&](std::size_t i) {
    ev1[i] = eigenvalues(build_operator(g1, rt.conn1, ks[i], rt.q1));
    ev2[i] = eigenvalues(build_operator(g2, rt.conn2, ks[i], rt.q2));
  });
  bool spectra_equal = true;
  report["spectra"] = json::array();
  for (std::size_t i = 0; i < ks.size(); ++i) {
    const SpectrumComparison cmp = compare_spectra(ev1[i], ev2[i], tol);
    spectra_equal = spectra_equal && cmp.equal;
    report["spectra"].push_back({{"k", ks[i]}, {"gap", cmp.max_gap}, {"equal", cmp.equal}});
  }

  // Exact transplantation is only attempted in the flat tower (G = Ghat),
  // where the quotient coset actions are the ones the intertwiner matches.
  if (!sc.has_g_layer && ac.verdict) {
    const Intertwiner T = build_intertwiner(sc.g, sc.gamma1, sc.gamma2, rt.data.used_seed);
    bool exact = true;
    for (const auto& g : sc.g.generators()) exact = exact && intertwines_exactly(T, g);
    double max_residual = 0.0;
    report["transplantation"]["residuals"] = json::array();
    for (std::int64_t k : ks) {
      const double res = intertwining_residual(
          T, build_operator(g1, rt.conn1, k, rt.q1), build_operator(g2, rt.conn2, k, rt.q2));
      max_residual = std::max(max_residual, res);
      report["transplantation"]["residuals"].push_back({{"k", k}, {"residual", res}});
    }
    report["transplantation"]["max_residual"] = max_residual;
    report["transplantation"]["exact_on_generators"] = exact;
  } else {
    report["transplantation"] = nullptr;
  }

  // Quantum layer: hbar = 1/k, so k starts at 1; Q is absent and the
  // curvature field provides the only potential-like term.
  const Potential zero1 = zero_potential(g1.n), zero2 = zero_potential(g2.n);
  std::vector<std::int64_t> qks;
  for (std::int64_t k = std::max<std::int64_t>(1, kr.lo); k <= kr.hi; ++k) qks.push_back(k);
  std::vector<double> qgaps(qks.size());
  for_each_index(qks.size(), [&](std::size_t i) {
    const std::int64_t k = qks[i];
    const auto h1 = eigenvalues(quantum_hamiltonian(build_operator(g1, rt.conn1, k, zero1), rt.r1, k));
    const auto h2 = eigenvalues(quantum_hamiltonian(build_operator(g2, rt.conn2, k, zero2), rt.r2, k));
    qgaps[i] = compare_spectra(h1, h2, tol).max_gap;
  });
  bool quantum_equal = true;
  report["quantum"]["per_k"] = json::array();
  for (std::size_t i = 0; i < qks.size(); ++i) {
    quantum_equal = quantum_equal && qgaps[i] <= tol;
    report["quantum"]["per_k"].push_back({{"k", qks[i]}, {"gap", qgaps[i]}});
  }
  report["quantum"]["equal"] = quantum_equal;

  // Brooks layer: compare nabla_1 with sigma^* nabla_2 on the same
  // quotient; isospectral, yet distinguishable by holonomy when the
  // delta is not tau-invariant.
  bool brooks_ok = true;
  if (sc.tau) {
    const Connection pulled = pullback_by_sigma(rt.conn2, *sc.tau, rt.m1, rt.m2, sc.gamma1, sc.gamma2);
    const Potential pulled_q =
        pullback_potential_by_sigma(rt.q2, *sc.tau, rt.m1, rt.m2, sc.gamma1, sc.gamma2);
    bool pair_equal = true;
    double worst_gap = 0.0;
    for (std::int64_t k : ks) {
      const SpectrumComparison cmp =
          compare_spectra(eigenvalues(build_operator(g1, rt.conn1, k, rt.q1)),
                          eigenvalues(build_operator(g1, pulled, k, pulled_q)), tol);
      pair_equal = pair_equal && cmp.equal;
      worst_gap = std::max(worst_gap, cmp.max_gap);
    }
    const HolonomyReport h1 = holonomy_report(g1, rt.conn1);
    const HolonomyReport h2 = holonomy_report(g1, pulled);
    double max_diff_rad = 0.0;
    report["brooks"]["holonomy"] = json::array();
    for (std::size_t i = 0; i < h1.cycles.size(); ++i) {
      const Turn diff = (h1.cycles[i].holonomy - h2.cycles[i].holonomy).centered();
      max_diff_rad = std::max(max_diff_rad, std::abs(diff.angle()));
      report["brooks"]["holonomy"].push_back({{"cycle_edge", h1.cycles[i].edge},
                                              {"nabla1", {h1.cycles[i].holonomy.num, h1.cycles[i].holonomy.den}},
                                              {"sigma_pullback", {h2.cycles[i].holonomy.num, h2.cycles[i].holonomy.den}}});
    }
    report["brooks"]["spectra_equal"] = pair_equal;
    report["brooks"]["max_gap"] = worst_gap;
    report["brooks"]["holonomy_differs"] = max_diff_rad > 0.0;
    report["brooks"]["max_holonomy_difference_rad"] = max_diff_rad;
    brooks_ok = pair_equal;
    const bool wants_breaking = sc.random_spec && sc.random_spec->break_tau;
    if (wants_breaking) brooks_ok = brooks_ok && max_diff_rad > 0.0;
  }

  RunReport out;
  out.verified = ac.verdict && spectra_equal && quantum_equal && brooks_ok;
  report["verified"] = out.verified;
  report["timings"]["total_ms"] =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started)
          .count();
  out.body = std::move(report);

  if (opt.out_dir) {
    fs::create_directories(*opt.out_dir);
    spit(*opt.out_dir / "report.json", out.body.dump(2) + "\n");
    std::vector<std::pair<std::int64_t, std::vector<double>>> s1, s2;
    for (std::size_t i = 0; i < ks.size(); ++i) {
      s1.emplace_back(ks[i], ev1[i]);
      s2.emplace_back(ks[i], ev2[i]);
    }
    write_spectrum_tsv(*opt.out_dir / "spectra_m1.tsv", s1);
    write_spectrum_tsv(*opt.out_dir / "spectra_m2.tsv", s2);
  }
  return out;
}

void write_spectrum_tsv(const fs::path& path,
                        const std::vector<std::pair<std::int64_t, std::vector<double>>>& spectra) {
  std::string out = "k\tindex\tvalue\n";
  for (const auto& [k, evs] : spectra)
    for (std::size_t i = 0; i < evs.size(); ++i)
      out += std::to_string(k) + "\t" + std::to_string(i) + "\t" + twelve_digits(evs[i]) + "\n";
  spit(path, out);
}

void write_example_scenario(const std::string& name, const fs::path& dir) {
  namespace fx = sunada::fixtures;
  fs::create_directories(dir);
  ordered_json sc;
  sc["name"] = name;
  sc["ghat"] = "ghat.json";

  auto write_gammas = [&](const Subgroup& h1, const Subgroup& h2, const std::string& parent) {
    save_subgroup_file(dir / "gamma1.json", Subgroup(h1.degree(), reduce_generators(h1), "Gamma1"), parent);
    save_subgroup_file(dir / "gamma2.json", Subgroup(h2.degree(), reduce_generators(h2), "Gamma2"), parent);
    sc["gamma1"] = "gamma1.json";
    sc["gamma2"] = "gamma2.json";
  };

  if (name == "fano" || name == "degenerate") {
    const PermGroup fano = fx::fano_group();
    save_group_file(dir / "ghat.json", fano);
    const Subgroup p = fx::fano_point_stabilizer(fano);
    const Subgroup q = name == "degenerate" ? p : fx::fano_plane_stabilizer(fano);
    write_gammas(p, q, "ghat.json");
    save_voltage_graph_file(
        dir / "graph.json",
        fx::theta_voltage_graph(fano, {Permutation::identity(14), fano.generators()[0], fano.generators()[1]}),
        "ghat.json");
    sc["connection"] = {{"random", {{"denominator_bound", 360}}}};
    sc["potential"] = {{"random", {{"amplitude", 1.0}}}};
  } else if (name == "brooks") {
    const PermGroup ghat = fx::fano_extended_group();
    const PermGroup core = fx::fano_group();
    save_group_file(dir / "ghat.json", ghat);
    save_subgroup_file(dir / "g.json", core, "ghat.json");
    sc["g"] = "g.json";
    write_gammas(fx::fano_point_stabilizer(core), fx::fano_plane_stabilizer(core), "g.json");
    sc["tau"] = fx::fano_duality().images();
    save_voltage_graph_file(
        dir / "graph.json",
        fx::theta_voltage_graph(ghat, {ghat.generators()[0], ghat.generators()[1], fx::fano_duality()}),
        "ghat.json");
    sc["connection"] = {{"random", {{"denominator_bound", 360}, {"break_tau", true}}}};
    sc["potential"] = {{"random", {{"amplitude", 1.0}}}};
  } else if (name == "s4-negative") {
    const PermGroup s4 = fx::symmetric_group(4);
    save_group_file(dir / "ghat.json", s4);
    write_gammas(Subgroup(4, {Permutation::from_cycles(4, {{0, 1}})}, "C2a"),
                 Subgroup(4, {Permutation::from_cycles(4, {{0, 1}, {2, 3}})}, "C2b"), "ghat.json");
    save_voltage_graph_file(
        dir / "graph.json",
        fx::theta_voltage_graph(s4, {Permutation::identity(4), s4.generators()[0], s4.generators()[1]}),
        "ghat.json");
    sc["connection"] = {{"random", {{"denominator_bound", 360}}}};
  } else {
    throw Error("write_example_scenario: unknown scenario '" + name + "'");
  }

  sc["graph"] = "graph.json";
  sc["k_range"] = "0..8";
  sc["tol"] = 1e-8;
  sc["seed"] = 7;
  std::ofstream(dir / "scenario.json") << sc.dump(2) << "\n";
}

}  // namespace sunada
