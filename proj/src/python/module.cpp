#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "sunada/connection.hpp"
#include "sunada/fixtures.hpp"
#include "sunada/graph_iso.hpp"
#include "sunada/intertwiner.hpp"
#include "sunada/quantize.hpp"
#include "sunada/scenario.hpp"

namespace py = pybind11;
using namespace sunada;
namespace fx = sunada::fixtures;

PYBIND11_MODULE(_core, m) {
  m.doc() = "isospectral line-bundle laboratory";
  m.attr("__version__") = kToolVersion;

  py::register_exception<ValidationFailed>(m, "ValidationError");
  py::register_exception<Error>(m, "SunadaError");

  py::class_<Permutation>(m, "Permutation")
      .def(py::init<std::vector<int>>())
      .def_static("identity", &Permutation::identity)
      .def_static("from_cycles", &Permutation::from_cycles)
      .def("__mul__", &Permutation::operator*)
      .def("__call__", &Permutation::operator())
      .def("inverse", &Permutation::inverse)
      .def("degree", &Permutation::degree)
      .def("images", &Permutation::images)
      .def("is_identity", &Permutation::is_identity)
      .def("__eq__", [](const Permutation& a, const Permutation& b) { return a == b; })
      .def("__repr__", &Permutation::str);

  py::class_<PermGroup>(m, "PermGroup")
      .def(py::init<int, std::vector<Permutation>, std::string>(), py::arg("degree"),
           py::arg("generators"), py::arg("name") = "")
      .def("degree", &PermGroup::degree)
      .def("name", &PermGroup::name)
      .def("order", &PermGroup::order)
      .def("generators", &PermGroup::generators)
      .def("elements", &PermGroup::elements)
      .def("contains", &PermGroup::contains)
      .def("is_subgroup_of", &PermGroup::is_subgroup_of);

  py::class_<AlmostConjugacyReport>(m, "AlmostConjugacyReport")
      .def_readonly("verdict", &AlmostConjugacyReport::verdict)
      .def_readonly("per_class_counts", &AlmostConjugacyReport::per_class_counts);
  m.def("almost_conjugate", &almost_conjugate);
  m.def("is_conjugate_subgroups", &is_conjugate_subgroups);
  m.def("search_gassmann", &search_gassmann, py::arg("group"), py::arg("max_generators") = 2);

  py::class_<CosetTable>(m, "CosetTable")
      .def("index", &CosetTable::index)
      .def("action", &CosetTable::action)
      .def("coset_of", &CosetTable::coset_of);
  m.def("coset_action", &coset_action);
  m.def("permutation_character", &permutation_character);

  py::class_<Intertwiner>(m, "Intertwiner")
      .def_readonly("matrix", &Intertwiner::matrix)
      .def("rows", &Intertwiner::rows)
      .def("cols", &Intertwiner::cols);
  m.def("build_intertwiner", &build_intertwiner);
  m.def("intertwines_exactly", &intertwines_exactly);
  m.def("unitarize_intertwiner", &unitarize_intertwiner);

  py::class_<Turn>(m, "Turn")
      .def(py::init<std::int64_t, std::int64_t>(), py::arg("num"), py::arg("den") = 1)
      .def_readonly("num", &Turn::num)
      .def_readonly("den", &Turn::den)
      .def("angle", &Turn::angle)
      .def("centered", &Turn::centered)
      .def("__eq__", [](const Turn& a, const Turn& b) { return a == b; })
      .def("__repr__",
           [](const Turn& t) { return std::to_string(t.num) + "/" + std::to_string(t.den) + " turn"; });

  py::class_<BaseGraph>(m, "BaseGraph")
      .def_readonly("vertex_count", &BaseGraph::vertex_count);
  py::class_<VoltageGraph>(m, "VoltageGraph")
      .def_readonly("base", &VoltageGraph::base)
      .def_readonly("group", &VoltageGraph::group);
  py::class_<QuotientGraph>(m, "QuotientGraph")
      .def_readonly("index", &QuotientGraph::index)
      .def("vertex_count", &QuotientGraph::vertex_count)
      .def("edges", [](const QuotientGraph& q) {
        std::vector<std::tuple<int, int, int, int>> out;
        for (const auto& e : q.edges) out.emplace_back(e.tail, e.head, e.base_edge, e.src_coset);
        return out;
      });
  m.def("quotient", &quotient);
  m.def("derive_cover", &derive_cover);
  m.def("check_free_action", &check_free_action);
  m.def("connectivity", &connectivity);

  py::class_<IsoCertificate>(m, "IsoCertificate")
      .def_readonly("isomorphic", &IsoCertificate::isomorphic)
      .def_readonly("witness", &IsoCertificate::witness)
      .def_readonly("signature", &IsoCertificate::signature);
  m.def("graph_isomorphic",
        [](const QuotientGraph& a, const QuotientGraph& b) { return graph_isomorphic(a, b); });
  m.def("sigma_witness", &sigma_witness);

  py::class_<Connection>(m, "Connection")
      .def(py::init([](std::vector<Turn> phases) { return Connection{std::move(phases)}; }))
      .def_readonly("phases", &Connection::phases);
  py::class_<Potential>(m, "Potential")
      .def(py::init([](std::vector<double> values) { return Potential{std::move(values)}; }))
      .def_readonly("values", &Potential::values);
  m.def("zero_connection", &zero_connection);
  m.def("zero_potential", &zero_potential);
  m.def("tensor_power", &tensor_power);

  m.def("build_operator",
        [](const QuotientGraph& g, const Connection& conn, std::int64_t k, const Potential& q) {
          return build_operator(GraphView::of(g), conn, k, q);
        },
        py::arg("graph"), py::arg("connection"), py::arg("k"), py::arg("potential"));
  m.def("eigenvalues", &eigenvalues);
  m.def("compare_spectra", [](const std::vector<double>& a, const std::vector<double>& b, double tol) {
    const SpectrumComparison cmp = compare_spectra(a, b, tol);
    return std::make_pair(cmp.max_gap, cmp.equal);
  });
  m.def("descend_connection",
        [](const VoltageGraph& vg, const QuotientGraph& q, const Connection& base) {
          return descend_connection(vg, q, base);
        });
  m.def("gauge_transform", [](const QuotientGraph& g, const Connection& conn, std::vector<Turn> gauge) {
    return gauge_transform(GraphView::of(g), conn, gauge);
  });
  m.def("holonomies", [](const QuotientGraph& g, const Connection& conn) {
    std::vector<std::tuple<int, std::int64_t, std::int64_t>> out;
    for (const auto& c : holonomy_report(GraphView::of(g), conn).cycles)
      out.emplace_back(c.edge, c.holonomy.num, c.holonomy.den);
    return out;
  });
  m.def("intertwining_residual", &intertwining_residual);
  m.def("transplant_section", &transplant_section);

  py::class_<CurvatureField>(m, "CurvatureField")
      .def(py::init([](std::vector<double> values) { return CurvatureField{std::move(values)}; }))
      .def_static("constant", &CurvatureField::constant, py::arg("n"), py::arg("r") = -2.0)
      .def_readonly("values", &CurvatureField::values);
  m.def("quantum_hamiltonian", &quantum_hamiltonian);

  py::class_<Scenario>(m, "Scenario")
      .def_readonly("name", &Scenario::name)
      .def_readonly("seed", &Scenario::seed)
      .def_readonly("tol", &Scenario::tol);
  m.def("load_scenario", &load_scenario);
  m.def("write_example_scenario", &write_example_scenario);
  m.def("run_scenario",
        [](const Scenario& sc, std::optional<std::uint64_t> seed, std::optional<double> tol,
           std::optional<std::string> out_dir) {
          RunOptions opt;
          opt.seed = seed;
          opt.tol = tol;
          if (out_dir) opt.out_dir = *out_dir;
          const RunReport report = run_scenario(sc, opt);
          return std::make_pair(report.verified, report.body.dump());
        },
        py::arg("scenario"), py::arg("seed") = std::nullopt, py::arg("tol") = std::nullopt,
        py::arg("out_dir") = std::nullopt);

  auto fixtures = m.def_submodule("fixtures", "canonical groups and graphs");
  fixtures.def("fano_group", &fx::fano_group);
  fixtures.def("fano_duality", &fx::fano_duality);
  fixtures.def("fano_extended_group", &fx::fano_extended_group);
  fixtures.def("fano_point_stabilizer", &fx::fano_point_stabilizer);
  fixtures.def("fano_plane_stabilizer", &fx::fano_plane_stabilizer);
  fixtures.def("symmetric_group", &fx::symmetric_group);
  fixtures.def("cyclic_group", &fx::cyclic_group);
  fixtures.def("trivial_group", &fx::trivial_group);
  fixtures.def("theta_voltage_graph", &fx::theta_voltage_graph);
  fixtures.def("cycle_voltage_graph", &fx::cycle_voltage_graph);
}
