#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "dsc/runner.hpp"

namespace {

int run_cli(int argc, char** argv) {
    CLI::App app{"dscheck: numerical verification of the conformal invariants of regular "
                 "space-like hypersurfaces in the de Sitter space"};
    app.footer("exit codes: 0 all residuals pass, 1 residual failure, 2 configuration error");

    dsc::RunConfig cfg;
    std::vector<std::string> tol_flags;
    double m = 0, k = 0, K = 0, p = 0, q = 0, a = 0, r = 0, eps = 0;

    app.add_option("--entry", cfg.entries,
                   "entry id (repeatable): product-ds, item5, item6, wp, example32, example33, "
                   "or labeled-set")
        ->required();
    app.add_option("--m", m, "hypersurface dimension");
    app.add_option("--k", k, "product split parameter");
    app.add_option("--K", K, "inner hypersurface dimension (examples 3.2/3.3)");
    app.add_option("--p", p, "inner split p");
    app.add_option("--q", q, "inner split q");
    app.add_option("--a", a, "radius-like parameter");
    app.add_option("--r", r, "de Sitter / anti-de Sitter radius (examples 3.2/3.3)");
    app.add_option("--eps", eps, "example 3.3 branch selector (+1 or -1)");
    app.add_option("--lambda", cfg.lambdas, "para-Blaschke parameter (repeatable)");
    app.add_option("--grid", cfg.grid_override, "grid points per axis (default per entry)");
    app.add_option("--jet-order", cfg.jet_order, "jet order, 3 or 4 (default 4)")
        ->check(CLI::IsMember({3, 4}));
    app.add_option("--fd-step", cfg.fd_step, "local step of the moving-frame finite differences");
    app.add_option("--tol", tol_flags, "tolerance override NAME=X (repeatable)");
    app.add_option("--seed", cfg.seed, "seed for the pseudo-orthogonal sampler");
    app.add_option("--report", cfg.report_format, "report format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", cfg.out_path, "write the report to this path instead of stdout");
    app.add_option("--equivalence", cfg.equivalence_n,
                   "run the conformal-equivalence suite with N random O(m+3,2) maps");

    CLI11_PARSE(app, argc, argv);

    auto put = [&](const char* name, double v) {
        if (app.count(std::string("--") + name)) cfg.params[name] = v;
    };
    put("m", m);
    put("k", k);
    put("K", K);
    put("p", p);
    put("q", q);
    put("a", a);
    put("r", r);
    put("eps", eps);
    for (const auto& t : tol_flags) {
        auto pos = t.find('=');
        if (pos == std::string::npos) {
            std::cerr << "bad --tol value (expected NAME=X): " << t << "\n";
            return 2;
        }
        cfg.tol_overrides[t.substr(0, pos)] = std::stod(t.substr(pos + 1));
    }

    dsc::RunOutput out = dsc::run(cfg);
    if (cfg.out_path.empty()) std::cout << out.report_text << "\n";
    return out.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run_cli(argc, argv);
    } catch (const dsc::Error& e) {
        std::cerr << "dscheck: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "dscheck: " << e.what() << "\n";
        return 2;
    }
}
