#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hyperlab/coulomb.hpp"
#include "hyperlab/harness.hpp"
#include "hyperlab/spectral.hpp"
#include "hyperlab/transport.hpp"
#include "hyperlab/variance.hpp"

using namespace hyperlab;

namespace {

ProcessSpec load_spec(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open spec file " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_process_spec(ss.str());
}

std::vector<double> parse_list(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"hyperlab: stationary point-process diagnostics on the periodic torus"};
    app.require_subcommand(1);

    // ---- generate ----
    auto* gen = app.add_subcommand("generate", "sample a point configuration");
    std::string g_spec, g_out = "config.txt";
    double g_L = 64;
    std::uint64_t g_seed = 7, g_stream = 0;
    gen->add_option("--spec", g_spec, "process spec JSON file")->required();
    gen->add_option("--L", g_L, "box side");
    gen->add_option("--seed", g_seed, "seed");
    gen->add_option("--stream", g_stream, "stream id");
    gen->add_option("--out", g_out, "output configuration file");

    // ---- variance ----
    auto* var = app.add_subcommand("variance", "estimate sigma(r)");
    std::string v_spec, v_out = "sigma.csv", v_radii = "1,2,4,8,16,32";
    double v_L = 128;
    int v_reps = 500, v_centers = 1;
    std::uint64_t v_seed = 7;
    var->add_option("--spec", v_spec)->required();
    var->add_option("--L", v_L);
    var->add_option("--radii", v_radii, "comma-separated radii");
    var->add_option("--replicas", v_reps);
    var->add_option("--centers", v_centers, "centers per replica (averaged)");
    var->add_option("--seed", v_seed);
    var->add_option("--out", v_out);

    // ---- spectrum ----
    auto* spec_cmd = app.add_subcommand("spectrum", "averaged periodogram / structure factor");
    std::string s_spec, s_out = "spectrum.csv";
    double s_L = 64, s_wmax = 8;
    int s_reps = 200;
    std::uint64_t s_seed = 7;
    spec_cmd->add_option("--spec", s_spec)->required();
    spec_cmd->add_option("--L", s_L);
    spec_cmd->add_option("--replicas", s_reps);
    spec_cmd->add_option("--omega-max", s_wmax);
    spec_cmd->add_option("--seed", s_seed);
    spec_cmd->add_option("--out", s_out);

    // ---- sc ----
    auto* sc_cmd = app.add_subcommand("sc", "infrared spectral-condition integral from a spectrum run");
    std::string sc_spec;
    double sc_L = 64;
    int sc_reps = 64;
    std::uint64_t sc_seed = 7;
    sc_cmd->add_option("--spec", sc_spec)->required();
    sc_cmd->add_option("--L", sc_L);
    sc_cmd->add_option("--replicas", sc_reps);
    sc_cmd->add_option("--seed", sc_seed);

    // ---- coulomb ----
    auto* coul = app.add_subcommand("coulomb", "regularized-energy upper estimates");
    std::string c_spec, c_out = "energy.csv";
    double c_L = 32, c_eta = 1.0;
    int c_grid = 512, c_reps = 50;
    std::uint64_t c_seed = 7;
    coul->add_option("--spec", c_spec)->required();
    coul->add_option("--L", c_L);
    coul->add_option("--eta", c_eta);
    coul->add_option("--grid", c_grid);
    coul->add_option("--replicas", c_reps);
    coul->add_option("--seed", c_seed);
    coul->add_option("--out", c_out);

    // ---- transport ----
    auto* tr = app.add_subcommand("transport", "Wasserstein cost per unit volume to Lebesgue");
    std::string t_spec, t_out = "w2.csv", t_method = "exact";
    double t_L = 16, t_eps = 0.05;
    int t_p = 2, t_gridm = 0, t_reps = 20;
    std::uint64_t t_seed = 7;
    tr->add_option("--spec", t_spec)->required();
    tr->add_option("--L", t_L);
    tr->add_option("--p", t_p)->check(CLI::IsMember({1, 2}));
    tr->add_option("--method", t_method)->check(CLI::IsMember({"exact", "entropic"}));
    tr->add_option("--epsilon", t_eps);
    tr->add_option("--grid-m", t_gridm, "cells per side (default 2L)");
    tr->add_option("--replicas", t_reps);
    tr->add_option("--seed", t_seed);
    tr->add_option("--out", t_out);

    // ---- chain / counterexamples ----
    auto* chain = app.add_subcommand("chain", "implication-chain experiment");
    auto* cex = app.add_subcommand("counterexamples", "counter-example reproduction suite");
    std::string x_config, x_outdir = "out";
    std::uint64_t x_seed = 7;
    for (auto* cmd : {chain, cex}) {
        cmd->add_option("--config", x_config, "experiment config JSON");
        cmd->add_option("--out-dir", x_outdir);
        cmd->add_option("--seed", x_seed);
    }

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) {
            const ProcessSpec sp = load_spec(g_spec);
            const PointConfiguration cfg = sample(sp, TorusBox(g_L), {g_seed, g_stream});
            save_config(cfg, g_out);
            std::cout << "wrote " << g_out << " (" << cfg.total_count() << " points, "
                      << cfg.atoms() << " atoms)\n";
        } else if (*var) {
            const ProcessSpec sp = load_spec(v_spec);
            const VarianceCurve curve =
                estimate_sigma(sp, TorusBox(v_L), parse_list(v_radii), v_reps, v_centers,
                               {v_seed, 0});
            std::ofstream f(v_out);
            f << "r,sigma,stderr,replicas\n";
            for (const auto& e : curve.entries)
                f << e.r << "," << e.sigma << "," << e.stderr_ << "," << e.replicas << "\n";
            std::cout << "wrote " << v_out << "\n";
        } else if (*spec_cmd) {
            const ProcessSpec sp = load_spec(s_spec);
            const SpectralEstimate est =
                structure_factor(sp, TorusBox(s_L), s_reps, s_wmax, {s_seed, 0});
            std::ofstream f(s_out);
            f << "omega_bin,S_mean,S_stderr,count\n";
            for (const auto& b : est.radial_bins)
                f << b.omega << "," << b.mean << "," << b.stderr_ << "," << b.count << "\n";
            std::cout << "wrote " << s_out << "\n";
        } else if (*sc_cmd) {
            const ProcessSpec sp = load_spec(sc_spec);
            const SpectralEstimate est =
                structure_factor(sp, TorusBox(sc_L), sc_reps, 1.0, {sc_seed, 0});
            const ScIntegral sc = sc_integral(est);
            std::cout << "sc_integral " << sc.value << "\n"
                      << "divergence_flag " << (sc.divergence_flag ? "true" : "false") << "\n";
            for (std::size_t m = 0; m < sc.shell_mass.size(); ++m)
                std::cout << "shell " << m << " mass " << sc.shell_mass[m] << " flat "
                          << sc.shell_flat_mass[m] << "\n";
        } else if (*coul) {
            const ProcessSpec sp = load_spec(c_spec);
            const CoulEstimate est =
                coul_estimate(sp, TorusBox(c_L), c_eta, c_reps, c_grid, {c_seed, 0});
            std::ofstream f(c_out);
            f << "eta,energy_per_volume,stderr,replicas\n";
            f << c_eta << "," << est.mean << "," << est.stderr_ << "," << est.replicas << "\n";
            std::cout << "energy/volume " << est.mean << " +- " << est.stderr_ << " (upper estimate)\n";
        } else if (*tr) {
            const ProcessSpec sp = load_spec(t_spec);
            const TorusBox box(t_L);
            const int gm = t_gridm > 0 ? t_gridm : 2 * int(t_L);
            const auto method = t_method == "exact" ? TransportResult::Method::ExactAssignment
                                                    : TransportResult::Method::Entropic;
            std::ofstream f(t_out);
            f << "replica,cost_per_volume,method,epsilon\n";
            for (int rep = 0; rep < t_reps; ++rep) {
                PointConfiguration cfg = sample(sp, box, {t_seed, std::uint64_t(rep)});
                if (!exact_count(sp)) cfg = condition_point_count(cfg, {t_seed, std::uint64_t(rep)});
                const TransportResult r = t_p == 2 ? w2_to_lebesgue(cfg, gm, method, t_eps)
                                                   : w1_to_lebesgue(cfg, gm, method, t_eps);
                f << rep << "," << r.cost_per_volume << "," << to_string(r.method) << ","
                  << r.epsilon << "\n";
            }
            std::cout << "wrote " << t_out << "\n";
        } else if (*chain || *cex) {
            ExperimentConfig xc;
            if (!x_config.empty()) xc = ExperimentConfig::from_json_file(x_config);
            xc.seed.seed = x_seed;
            xc.out_dir = x_outdir;
            const ExperimentReport rep = *chain ? run_chain_experiment(xc)
                                                : run_counterexample_experiment(xc);
            std::filesystem::create_directories(xc.out_dir);
            {
                std::ofstream f(std::filesystem::path(xc.out_dir) / (rep.name + ".json"));
                f << rep.to_json() << "\n";
            }
            {
                std::ofstream f(std::filesystem::path(xc.out_dir) / (rep.name + ".md"));
                f << rep.to_markdown();
            }
            if (*chain) {
                emit_plot_data(rep, "sigma_vs_r", xc.out_dir);
                emit_plot_data(rep, "spectrum", xc.out_dir);
            } else {
                emit_plot_data(rep, "energy_vs_N", xc.out_dir);
                emit_plot_data(rep, "cost_vs_logN", xc.out_dir);
            }
            std::cout << rep.to_markdown();
            return rep.all_pass ? 0 : 1;
        }
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
    return 0;
}
