#pragma once
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hyperlab/generators.hpp"
#include "hyperlab/rng.hpp"

namespace hyperlab {

// Pass/fail thresholds for the flagship experiments. Versioned defaults are
// embedded in the binary; any field can be overridden from a JSON file.
struct Thresholds {
    int version = 1;
    double stability_rel_change = 0.10;  // "finite"/"stable" verdict band
    double collapse_w2_coefficient = 2.0; // W2^2/vol <= coeff * N^2
    double collapse_energy_ratio_band = 2.0; // fitted c spread across N
    double variance_band = 3.0;          // crossover bands
    double chain_slack = 0.05;

    static Thresholds defaults();
    static Thresholds from_json_file(const std::string& path);
    std::string to_json() const;
};

struct ExperimentConfig {
    std::string name = "chain";
    std::vector<double> boxes = {32, 64};
    double eta = 1.0;
    int grid_n_per_unit = 4;   // field grid resolution per unit length
    int grid_m_per_unit = 2;   // transport cell resolution per unit length
    int replicas = 64;
    int variance_replicas = 300;
    int spectrum_replicas = 48;
    RngSeed seed{7, 0};
    std::string out_dir = "out";
    Thresholds thresholds = Thresholds::defaults();

    static ExperimentConfig from_json_file(const std::string& path);
    // throws std::runtime_error when a module precondition would be violated
    void validate() const;
};

// One measured number with provenance: stderr when Monte Carlo, or the
// "deterministic" tag when exact given the seed.
struct Measured {
    double value = 0.0;
    double stderr_ = 0.0;
    bool deterministic = false;
};

struct ChainRow {
    std::string generator;
    std::string hustar_verdict;
    double hustar_tail_slope = 0.0;
    double sc_value = 0.0;
    bool sc_divergence_flag = false;
    Measured coul_small, coul_large;     // energy at the two box sizes
    bool coul_stable = false;
    Measured w2_small, w2_large;
    bool w2_stable = false;
    double sigma_loglog_slope = 0.0;
    bool coherent = false;               // verdict row consistent with the implication chain
};

struct CollapseRow {
    int N = 0;
    Measured w2_per_volume;
    bool w2_within_bound = false;  // <= 2 N^2
    Measured energy_per_volume;
    double c_ratio = 0.0;          // energy / (N^2 log N)
};

struct BinomialRow {
    int N = 0;
    std::map<std::string, double> var_over_r2;   // radius label -> Var/r^2 (r <= N)
    std::map<std::string, double> var_over_rN;   // radius label -> Var/(rN) (r >= N)
    bool bands_ok = false;
    Measured w1_per_volume;
};

struct FitSummary {
    double slope = 0.0, intercept = 0.0, r_squared = 0.0;
};

struct ExperimentReport {
    std::string name;
    std::uint64_t seed = 0;
    std::vector<ChainRow> chain_rows;
    std::vector<CollapseRow> collapse_rows;
    std::vector<BinomialRow> binomial_rows;
    std::vector<std::pair<int, Measured>> akt_per_point_w2; // (N, per-point W2^2)
    FitSummary akt_fit;       // vs log N
    FitSummary w1_fit;        // vs sqrt(log N)
    std::map<std::string, double> fitted_constants;
    std::map<std::string, bool> checks;
    bool all_pass = false;

    std::string to_json() const;
    std::string to_markdown() const;
};

ExperimentReport run_chain_experiment(const ExperimentConfig& cfg);
ExperimentReport run_counterexample_experiment(const ExperimentConfig& cfg);

// tidy CSV per figure kind: sigma_vs_r | energy_vs_N | cost_vs_logN | spectrum.
// Deterministic ordering; throws IncompleteReport when the section is missing.
void emit_plot_data(const ExperimentReport& report, const std::string& kind,
                    const std::string& out_dir);

// small shared helpers
FitSummary linear_fit(const std::vector<double>& x, const std::vector<double>& y);

} // namespace hyperlab
