#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cavlase/crow.hpp"
#include "cavlase/lattice_sim.hpp"

namespace cavlase::cli {

enum class RunKind {
    decay,
    gain_dynamics,
    threshold_sweep,
    growth_rate_track,
    regime_report
};

// One scenario parsed from a flat key=value config file.
struct RunConfig {
    RunKind kind = RunKind::decay;
    double kappa = 1.0;
    double kappa0 = 0.0;
    double omega_a = 0.0;
    double gain = 0.0;
    double gamma_i = 0.0;
    double gamma_loss = 0.0;
    LossPlacement placement = LossPlacement::global;
    SimConfig sim;
    double grid_min = 0.0;
    double grid_max = 0.0;
    int grid_points = 0;
    std::string out_stem;  // empty: derived from the run kind
};

// Command-line overrides applied on top of a config or preset.
struct Overrides {
    std::optional<double> dt;
    std::optional<double> t_max;
    std::optional<int> n_sites;
    std::optional<Complex> seed_pole;
    bool no_guard = false;
    std::string out_dir = ".";
};

bool is_sweep_kind(RunKind kind);

// Strict parser: unknown or duplicate keys and malformed numbers are
// rejected with the offending line.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

// CSV contract: header row, then a comment line with the tool version and
// all parameters, then rows at 12 significant digits, comma-delimited, LF
// endings. Written to a temp file and renamed into place.
void write_csv(const std::string& path,
               const std::vector<std::string>& columns,
               const std::string& params_comment,
               const std::vector<std::vector<double>>& rows);

void run_scenario(const RunConfig& cfg, const Overrides& ov,
                  std::ostream& out);
void run_figure(const std::string& preset, const Overrides& ov,
                std::ostream& out);

// Quick deterministic invariant spot checks; returns true when all pass.
bool run_check(std::ostream& out);

}  // namespace cavlase::cli
