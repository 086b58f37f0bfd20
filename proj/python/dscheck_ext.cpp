#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dsc/runner.hpp"

namespace py = pybind11;
using namespace dsc;

namespace {

py::dict eigen_dict(const EigenStructure& es) {
    py::dict d;
    d["t"] = es.t;
    d["values"] = es.values;
    d["multiplicities"] = es.mult;
    d["cluster_spread"] = es.cluster_spread;
    d["constancy_dev"] = es.constancy_dev;
    return d;
}

py::list matrix_list(const MatD& m) {
    py::list rows;
    for (int i = 0; i < m.r; ++i) {
        py::list row;
        for (int j = 0; j < m.c; ++j) row.append(m(i, j));
        rows.append(row);
    }
    return rows;
}

py::dict result_dict(const EntryRunResult& rr) {
    py::dict d;
    d["id"] = rr.entry.id;
    d["branch_expected"] = rr.entry.branch;
    d["lambda_structural"] = rr.entry.lambda_structural;
    d["rho_range"] = py::make_tuple(rr.rho_min, rr.rho_max);
    d["phi_max"] = rr.phi_max_value;
    py::list rows;
    for (const auto& r : rr.residuals.rows) {
        py::dict row;
        row["name"] = r.name;
        row["max"] = r.value;
        row["tol"] = r.tol;
        row["pass"] = r.pass;
        rows.append(row);
    }
    d["residuals"] = rows;
    d["all_pass"] = rr.residuals.all_pass();
    d["B_eigenvalues"] = eigen_dict(rr.B_structure);
    py::list ds;
    for (const auto& [lam, st] : rr.D_structures) {
        py::dict e = eigen_dict(st);
        e["lambda"] = lam;
        ds.append(e);
    }
    d["D_eigenvalues"] = ds;
    py::dict cls;
    cls["branch"] = rr.verdict.branch;
    cls["consistent_branches"] = rr.verdict.branches;
    cls["detail"] = rr.verdict.detail;
    cls["phi_zero"] = rr.verdict.phi_zero;
    cls["B_parallel"] = rr.verdict.B_parallel;
    cls["D_parallel"] = rr.verdict.D_parallel;
    cls["t"] = rr.verdict.t;
    cls["branch_consistent"] = rr.branch_consistent;
    d["classification"] = cls;
    return d;
}

RunConfig config_from_kwargs(int grid, int jet_order, const std::vector<double>& lambdas,
                             double fd_step, uint64_t seed) {
    RunConfig cfg;
    cfg.grid_override = grid;
    cfg.jet_order = jet_order;
    cfg.lambdas = lambdas;
    cfg.fd_step = fd_step;
    cfg.seed = seed;
    return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "numerical verification of the conformal invariants of regular space-like "
              "hypersurfaces in the de Sitter space";
    m.attr("__version__") = kToolVersion;

    py::register_exception<Error>(m, "DscError");

    m.def("convention", &convention_string, "coordinate and sign conventions used by the pipeline");
    m.def("family_ids", &catalog_family_ids, "available catalog family ids");

    py::class_<CatalogEntry>(m, "Entry")
        .def_property_readonly("id", [](const CatalogEntry& e) { return e.id; })
        .def_property_readonly("branch", [](const CatalogEntry& e) { return e.branch; })
        .def_property_readonly("m", [](const CatalogEntry& e) { return e.m; })
        .def_property_readonly("params", [](const CatalogEntry& e) { return e.params; })
        .def_property_readonly("lambda_structural",
                               [](const CatalogEntry& e) { return e.lambda_structural; })
        .def("__repr__", [](const CatalogEntry& e) { return "<dscheck.Entry " + e.id + ">"; });

    m.def(
        "make_entry",
        [](const std::string& family, const std::map<std::string, double>& params) {
            return make_entry(family, params);
        },
        py::arg("family"), py::arg("params") = std::map<std::string, double>{},
        "construct a catalog entry from a family id and key=value parameters");

    m.def("labeled_entries", []() { return labeled_catalog(); },
          "the nine labeled entries used by the classifier gate");

    m.def(
        "run",
        [](const CatalogEntry& e, int grid, int jet_order, const std::vector<double>& lambdas,
           double fd_step, uint64_t seed) {
            return result_dict(run_entry(e, config_from_kwargs(grid, jet_order, lambdas, fd_step, seed)));
        },
        py::arg("entry"), py::arg("grid") = 0, py::arg("jet_order") = 4,
        py::arg("lambdas") = std::vector<double>{}, py::arg("fd_step") = 1e-3,
        py::arg("seed") = 7,
        "run the full pipeline on an entry: residual table, eigen structures, classification");

    m.def(
        "invariants_at",
        [](const CatalogEntry& e, const VecD& p) {
            ImmersionChart chart = e.chart;
            prepare_chart(chart);
            InvariantPoint iv = compute_invariants(chart, p);
            py::dict d;
            d["rho"] = iv.rho;
            d["H"] = iv.H;
            d["B"] = matrix_list(iv.B);
            d["A"] = matrix_list(iv.A_direct);
            d["Phi"] = iv.Phi;
            d["kappa"] = iv.curv.kappa;
            d["g"] = matrix_list(iv.g_coord);
            return d;
        },
        py::arg("entry"), py::arg("point"),
        "pointwise conformal invariants in the g-orthonormal frame");

    m.def(
        "equivalence",
        [](const CatalogEntry& e, int n, uint64_t seed) {
            EquivalenceResult r = run_equivalence_suite(e, n, seed);
            py::dict d;
            d["n"] = r.n;
            d["skipped_maps"] = r.skipped_maps;
            d["max_deviation"] = r.max_deviation;
            d["pass"] = r.pass;
            d["vacuous"] = r.vacuous;
            d["notes"] = r.notes;
            return d;
        },
        py::arg("entry"), py::arg("n") = 20, py::arg("seed") = 7,
        "conformal-equivalence suite: eigenvalue deviation under random O(m+3,2) maps");

    m.def(
        "run_report_json",
        [](const std::vector<std::string>& entries, const std::map<std::string, double>& params,
           const std::vector<double>& lambdas, int grid, int equivalence_n, uint64_t seed) {
            RunConfig cfg;
            cfg.entries = entries;
            cfg.params = params;
            cfg.lambdas = lambdas;
            cfg.grid_override = grid;
            cfg.equivalence_n = equivalence_n;
            cfg.seed = seed;
            RunOutput out = run(cfg);
            return py::make_tuple(out.report_text, out.exit_code);
        },
        py::arg("entries"), py::arg("params") = std::map<std::string, double>{},
        py::arg("lambdas") = std::vector<double>{}, py::arg("grid") = 0,
        py::arg("equivalence_n") = -1, py::arg("seed") = 7,
        "batch driver: returns (json report, exit code) with the same schema as the CLI");
}
