#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "sunada/connection.hpp"
#include "sunada/graph.hpp"
#include "sunada/group.hpp"
#include "sunada/quantize.hpp"

namespace sunada {

inline constexpr const char* kToolVersion = "0.1.0";

struct KRange {
  std::int64_t lo = 0;
  std::int64_t hi = 8;
};

KRange parse_k_range(const std::string& text);  // "LO..HI"

// Seeded-random data request: rational phases with bounded denominator on
// the base (and on the intermediate quotient when a tau layer exists).
struct RandomDataSpec {
  std::int64_t denominator_bound = 360;
  bool break_tau = false;  // ask for a delta that differs across the two sheets
  bool zero = false;       // zero-randomness mode: all phases 0, Q = 0
  double potential_amplitude = 0.0;
};

// A fully loaded scenario: groups, tower, graph, and data specs.  All
// file references in the scenario JSON are relative to its directory.
struct Scenario {
  std::string name;
  std::filesystem::path dir;

  PermGroup ghat;  // deck group of the voltage graph
  PermGroup g;     // intermediate group, defaults to ghat
  bool has_g_layer = false;
  Subgroup gamma1;
  Subgroup gamma2;
  std::optional<Permutation> tau;
  VoltageGraph vg;

  std::optional<Connection> explicit_base_conn;
  std::optional<Connection> explicit_mid_conn;   // on quotient(vg, g)
  std::optional<std::vector<double>> explicit_potential;  // on quotient(vg, g)
  std::optional<std::vector<double>> explicit_r;          // on quotient(vg, g)
  std::optional<RandomDataSpec> random_spec;
  double r_constant = -2.0;

  KRange k_range{0, 8};
  double tol = 1e-8;
  std::uint64_t seed = 1;

  std::map<std::string, std::string> input_hashes;  // relative path -> fnv1a hex
};

// File loaders / writers for the JSON formats used above.
PermGroup load_group_file(const std::filesystem::path& path);
// Loads the subgroup and checks containment in the referenced parent file.
Subgroup load_subgroup_file(const std::filesystem::path& path);
VoltageGraph load_voltage_graph_file(const std::filesystem::path& path);
Connection load_connection_file(const std::filesystem::path& path, std::size_t edge_count);
std::vector<double> load_vertex_values_file(const std::filesystem::path& path, int vertex_count,
                                            const std::string& key);

void save_group_file(const std::filesystem::path& path, const PermGroup& g);
void save_subgroup_file(const std::filesystem::path& path, const Subgroup& h, const std::string& parent);
void save_voltage_graph_file(const std::filesystem::path& path, const VoltageGraph& vg,
                             const std::string& group_file);
void save_connection_file(const std::filesystem::path& path, const std::string& graph_id,
                          const Connection& conn);
void save_vertex_values_file(const std::filesystem::path& path, const std::vector<double>& values,
                             const std::string& key);

Scenario load_scenario(const std::filesystem::path& path);
// Throws ValidationFailed naming the offending field.
void validate_scenario(const Scenario& sc);

// G-invariant data by construction: base phases plus (when a tau layer
// exists) a delta on the intermediate quotient and a potential there.
struct InvariantData {
  Connection base_conn;
  std::optional<Connection> mid_conn;
  std::vector<double> mid_potential;  // on quotient(vg, g)
  std::vector<double> mid_r;          // same support
  std::uint64_t used_seed = 0;        // may advance past `seed` for tau-breaking retries
};

InvariantData generate_invariant_data(const Scenario& sc, std::uint64_t seed);

// Everything descended and ready for operator assembly.
struct ScenarioRuntime {
  QuotientGraph m1, m2, mid;
  InvariantData data;
  Connection conn1, conn2;
  Potential q1, q2;
  CurvatureField r1, r2;
};

ScenarioRuntime prepare_runtime(const Scenario& sc, std::uint64_t seed);

struct RunReport {
  nlohmann::ordered_json body;
  bool verified = false;
};

struct RunOptions {
  std::optional<KRange> k_range;
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  std::optional<std::filesystem::path> out_dir;
};

// Full pipeline: gassmann -> cover -> spectra -> compare -> transplant ->
// quantum -> (brooks when a tau layer exists).  Writes report.json and
// spectrum TSVs when an output directory is given.
RunReport run_scenario(const Scenario& sc, const RunOptions& opt = {});

// Writes a self-contained scenario directory.  Known names: "fano",
// "brooks", "s4-negative", "degenerate".
void write_example_scenario(const std::string& name, const std::filesystem::path& dir);

// TSV with columns k, index, value (12 significant digits).
void write_spectrum_tsv(const std::filesystem::path& path,
                        const std::vector<std::pair<std::int64_t, std::vector<double>>>& spectra);

std::string fnv1a_hex(const std::string& bytes);

// Parallelism cap from SUNADA_LAB_THREADS (default: hardware concurrency).
int thread_cap();

}  // namespace sunada
