#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "cavlase/cli.hpp"
#include "cavlase/errors.hpp"
#include "cavlase/version.hpp"

namespace {

cavlase::Complex parse_seed(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos)
        throw cavlase::ConfigError(
            "--seed-pole expects 're,im', got '" + text + "'");
    try {
        std::size_t p1 = 0, p2 = 0;
        const std::string re_s = text.substr(0, comma);
        const std::string im_s = text.substr(comma + 1);
        const double re = std::stod(re_s, &p1);
        const double im = std::stod(im_s, &p2);
        if (p1 != re_s.size() || p2 != im_s.size())
            throw std::invalid_argument("trailing characters");
        return {re, im};
    } catch (const std::exception&) {
        throw cavlase::ConfigError(
            "--seed-pole expects 're,im', got '" + text + "'");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"decay and lasing of a cavity coupled to a ring lattice"};
    app.set_version_flag("--version",
                         std::string("cavlase ") + cavlase::kVersion);
    app.require_subcommand(1);
    app.fallthrough();

    cavlase::cli::Overrides ov;
    std::string seed_text;
    app.add_option("--out", ov.out_dir, "directory for CSV output");
    app.add_option("--dt", ov.dt, "override integrator step");
    app.add_option("--sites", ov.n_sites, "override ring count per arm");
    app.add_option("--tmax", ov.t_max, "override time horizon");
    app.add_option("--seed-pole", seed_text,
                   "re,im seed for the resonance pole refinement");
    app.add_flag("--no-boundary-guard", ov.no_guard,
                 "allow runs past the wall-reflection horizon");

    auto* fig = app.add_subcommand("figure", "write a preset data set");
    std::string preset;
    fig->add_option("name", preset, "fig6 fig7 fig8a fig8b fig9a fig9b fig11 fig12")
        ->required();

    auto* run = app.add_subcommand("run", "execute a scenario config file");
    std::string run_path;
    run->add_option("config", run_path, "key=value config file")->required();

    auto* sweep = app.add_subcommand("sweep", "execute a sweep config file");
    std::string sweep_path;
    sweep->add_option("config", sweep_path, "key=value config file")
        ->required();

    auto* check =
        app.add_subcommand("check", "run deterministic invariant spot checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (!seed_text.empty()) ov.seed_pole = parse_seed(seed_text);
        if (fig->parsed()) {
            cavlase::cli::run_figure(preset, ov, std::cout);
        } else if (run->parsed()) {
            const auto cfg = cavlase::cli::load_config(run_path);
            if (cavlase::cli::is_sweep_kind(cfg.kind))
                throw cavlase::ConfigError(
                    "config is a sweep kind; use the sweep subcommand");
            cavlase::cli::run_scenario(cfg, ov, std::cout);
        } else if (sweep->parsed()) {
            const auto cfg = cavlase::cli::load_config(sweep_path);
            if (!cavlase::cli::is_sweep_kind(cfg.kind))
                throw cavlase::ConfigError(
                    "config is not a sweep kind; use the run subcommand");
            cavlase::cli::run_scenario(cfg, ov, std::cout);
        } else if (check->parsed()) {
            if (!cavlase::cli::run_check(std::cout)) return 4;
        }
    } catch (const cavlase::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const cavlase::RegimeError& e) {
        std::cerr << "regime error: " << e.what() << "\n";
        return 3;
    } catch (const cavlase::NumericError& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
