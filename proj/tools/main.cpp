#include <cmath>
#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "hermband/errors.hpp"
#include "hermband/experiments.hpp"
#include "hermband/version.hpp"

namespace {

using hermband::ExperimentConfig;
using hermband::format_number;

void print_audit(const hermband::AuditReport& rep) {
    for (const auto& [check, e] : rep.worst) {
        std::cout << check << ": worst ratio " << format_number(e.ratio) << " at n = "
                  << format_number(e.n);
        if (std::isfinite(e.T)) std::cout << ", T = " << format_number(e.T);
        if (std::isfinite(e.x)) std::cout << ", x = " << format_number(e.x);
        if (std::isfinite(e.y)) std::cout << ", y = " << format_number(e.y);
        std::cout << '\n';
    }
    for (const auto& s : rep.skipped) std::cout << "skipped " << s << '\n';
    std::cout << rep.kind << " audit: " << (rep.pass ? "PASS" : "FAIL")
              << " (worst ratio " << format_number(rep.worst_ratio);
    if (!rep.skipped.empty())
        std::cout << ", " << rep.skipped.size() << " sweep cell(s) skipped";
    std::cout << ")\n";
}

int dispatch(const ExperimentConfig& cfg) {
    hermband::validate_config(cfg);
    if (cfg.experiment == "example1") {
        auto rep = hermband::run_example1(cfg);
        std::cout << "n,sup_residual,hs_norm,theorem_bound\n";
        for (const auto& r : rep.rows)
            std::cout << format_number(r.n) << ',' << format_number(r.sup_residual) << ','
                      << format_number(r.hs_norm) << ',' << format_number(r.theorem_bound)
                      << '\n';
        std::cout << "wrote " << rep.outputs.size() << " file(s)\n";
        return 0;
    }
    if (cfg.experiment == "example2" || cfg.experiment == "example3") {
        auto rep = (cfg.experiment == "example2") ? hermband::run_example2(cfg)
                                                  : hermband::run_example3(cfg);
        std::cout << "n,alpha,l2_error_unit_window\n";
        for (const auto& c : rep.curves)
            std::cout << format_number(c.n) << ',' << format_number(c.alpha) << ','
                      << format_number(c.l2_error) << '\n';
        std::cout << "wrote " << rep.outputs.size() << " file(s)\n";
        return 0;
    }
    if (cfg.experiment == "lemma-audit" || cfg.experiment == "bound-audit") {
        auto rep = hermband::run_audits(cfg.experiment == "lemma-audit" ? "lemma" : "bound", cfg);
        print_audit(rep);
        return rep.pass ? 0 : 3;
    }
    auto rep = hermband::run_custom(cfg);
    std::cout << "eps_T = " << format_number(rep.concentration.eps_T)
              << ", eps_Omega = " << format_number(rep.concentration.eps_Omega) << '\n';
    std::cout << "n,error_inside,error_outside,local_bound,hs_bound,scaled_bound,global_bound\n";
    for (const auto& r : rep.rows)
        std::cout << format_number(r.n) << ',' << format_number(r.error_inside) << ','
                  << format_number(r.error_outside) << ',' << format_number(r.local_bound)
                  << ',' << format_number(r.hs_bound) << ',' << format_number(r.scaled_bound)
                  << ',' << format_number(r.global_bound) << '\n';
    if (rep.min_n)
        std::cout << "smallest order meeting the target: n = " << format_number(*rep.min_n)
                  << '\n';
    std::cout << "wrote " << rep.outputs.size() << " file(s)\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hermite expansions of almost time- and band-limited signals: "
                 "reconstruction experiments and bound audits"};
    app.set_version_flag("--version", hermband::version_string);
    app.require_subcommand(1);

    ExperimentConfig cfg;
    std::string ns_str;
    std::string config_path;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--n", ns_str, "comma separated expansion orders");
        cmd->add_option("--alpha", cfg.alpha, "basis scale factor");
        cmd->add_option("--T", cfg.T, "time window half-width");
        cmd->add_option("--grid", cfg.grid, "points per axis or curve");
        cmd->add_option("--out", cfg.out_dir, "output directory (default .)");
        cmd->add_option("--format", cfg.format, "table format: csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        cmd->add_flag("--svg", cfg.svg, "also write svg figures");
        return cmd;
    };

    add_common(app.add_subcommand("example1", "kernel residual norms against the bound"));
    add_common(app.add_subcommand("example2", "step function reconstruction curves"));
    auto* ex3 = add_common(app.add_subcommand("example3", "hat function reconstruction curves"));
    ex3->add_option("--pairs", cfg.pairs, "alpha:n list, e.g. 3.16:20,3.16:50");
    add_common(app.add_subcommand("lemma-audit", "phase inequality grid check"));
    add_common(app.add_subcommand("bound-audit", "error guarantee soundness sweep"));
    auto* custom = add_common(app.add_subcommand("custom", "full pipeline for one signal"));
    custom->add_option("--signal", cfg.signal_spec,
                       "kind:params (indicator:a:b, hat:c:w, gaussian:s, hermite:k, "
                       "sampled:file.csv)");
    custom->add_option("--omega", cfg.Omega, "frequency window half-width");
    custom->add_option("--target", cfg.target, "error level for the order search");
    custom->add_option("--bound-kind", cfg.bound_kind, "local, global or scaled")
        ->check(CLI::IsMember({"local", "global", "scaled"}));
    auto* runcmd = app.add_subcommand("run", "run an experiment described by a config file");
    runcmd->add_option("--config", config_path, "flat key = value file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand("run")) {
            cfg = hermband::load_config_file(config_path);
        } else {
            cfg.experiment = app.get_subcommands().front()->get_name();
            if (!ns_str.empty()) cfg.ns = hermband::parse_int_list(ns_str);
        }
        return dispatch(cfg);
    } catch (const hermband::error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return hermband::exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << '\n';
        return 1;
    }
}
