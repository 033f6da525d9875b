#include "hyperlab/harness.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hyperlab/coulomb.hpp"
#include "hyperlab/parallel.hpp"
#include "hyperlab/spectral.hpp"
#include "hyperlab/transport.hpp"
#include "hyperlab/variance.hpp"

namespace hyperlab {

using nlohmann::json;

Thresholds Thresholds::defaults() { return {}; }

Thresholds Thresholds::from_json_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open thresholds file " + path);
    json j = json::parse(f);
    Thresholds t;
    t.version = j.value("version", t.version);
    t.stability_rel_change = j.value("stability_rel_change", t.stability_rel_change);
    t.collapse_w2_coefficient = j.value("collapse_w2_coefficient", t.collapse_w2_coefficient);
    t.collapse_energy_ratio_band = j.value("collapse_energy_ratio_band", t.collapse_energy_ratio_band);
    t.variance_band = j.value("variance_band", t.variance_band);
    t.chain_slack = j.value("chain_slack", t.chain_slack);
    return t;
}

std::string Thresholds::to_json() const {
    json j{{"version", version},
           {"stability_rel_change", stability_rel_change},
           {"collapse_w2_coefficient", collapse_w2_coefficient},
           {"collapse_energy_ratio_band", collapse_energy_ratio_band},
           {"variance_band", variance_band},
           {"chain_slack", chain_slack}};
    return j.dump(2);
}

ExperimentConfig ExperimentConfig::from_json_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open experiment config " + path);
    json j = json::parse(f);
    ExperimentConfig c;
    c.name = j.value("name", c.name);
    if (j.contains("boxes")) c.boxes = j.at("boxes").get<std::vector<double>>();
    c.eta = j.value("eta", c.eta);
    c.grid_n_per_unit = j.value("grid_n_per_unit", c.grid_n_per_unit);
    c.grid_m_per_unit = j.value("grid_m_per_unit", c.grid_m_per_unit);
    c.replicas = j.value("replicas", c.replicas);
    c.variance_replicas = j.value("variance_replicas", c.variance_replicas);
    c.spectrum_replicas = j.value("spectrum_replicas", c.spectrum_replicas);
    c.seed.seed = j.value("seed", c.seed.seed);
    c.out_dir = j.value("out_dir", c.out_dir);
    if (j.contains("thresholds_file"))
        c.thresholds = Thresholds::from_json_file(j.at("thresholds_file").get<std::string>());
    return c;
}

void ExperimentConfig::validate() const {
    if (boxes.empty()) throw std::runtime_error("config: need at least one box size");
    for (double L : boxes) {
        TorusBox b(L);
        if (!b.integer_side()) throw NonIntegerSide("config: box sides must be integers");
        if (grid_n_per_unit * L < 4.0 * L / eta)
            throw GridTooCoarse("config: grid_n_per_unit too small for eta (need >= 4/eta)");
        if (grid_m_per_unit < 2) throw InstanceTooLarge("config: grid_m_per_unit must be >= 2");
    }
    if (replicas < 2) throw TooFewReplicas("config: need >= 2 replicas");
    if (variance_replicas < 30) throw TooFewReplicas("config: need >= 30 variance replicas");
    if (spectrum_replicas < 50) throw TooFewReplicas("config: need >= 50 spectrum replicas");
}

FitSummary linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
    FitSummary f;
    const std::size_t n = x.size();
    if (n < 2) return f;
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= double(n);
    my /= double(n);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    f.slope = sxx > 0.0 ? sxy / sxx : 0.0;
    f.intercept = my - f.slope * mx;
    f.r_squared = (sxx > 0.0 && syy > 0.0) ? (sxy * sxy) / (sxx * syy) : 0.0;
    return f;
}

namespace {

json measured_json(const Measured& m) {
    if (m.deterministic) return json{{"value", m.value}, {"tag", "deterministic"}};
    return json{{"value", m.value}, {"stderr", m.stderr_}};
}

Measured mc(double v, double se) { return {v, se, false}; }
Measured det(double v) { return {v, 0.0, true}; }

struct SuiteEntry {
    std::string label;
    ProcessSpec spec;
};

std::vector<SuiteEntry> chain_suite() {
    return {
        {"poisson", ProcessSpec::poisson(1.0)},
        {"lattice", ProcessSpec::lattice()},
        {"gauss-perturbed", ProcessSpec::perturbed(DisplacementLaw::gaussian(0.3))},
        {"collapse-8", ProcessSpec::collapse(8)},
        {"binomial-8", ProcessSpec::binomial(8)},
    };
}

} // namespace

ExperimentReport run_chain_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    ExperimentReport rep;
    rep.name = cfg.name.empty() ? "chain" : cfg.name;
    rep.seed = cfg.seed.seed;

    const double Lsmall = cfg.boxes.front();
    const double Llarge = cfg.boxes.back();
    const TorusBox small(Lsmall), large(Llarge);
    const auto suite = chain_suite();

    bool all_ok = true;
    for (std::size_t gi = 0; gi < suite.size(); ++gi) {
        const auto& entry = suite[gi];
        ChainRow row;
        row.generator = entry.label;
        const RngSeed gseed{cfg.seed.seed, cfg.seed.stream + 10'000 * (gi + 1)};

        // dyadic variance curve on the large box
        const int n_max = int(std::floor(std::log2(Llarge / 2.0 - 1e-9)));
        std::vector<double> radii;
        for (int m = 0; m <= n_max; ++m) radii.push_back(std::pow(2.0, m));
        const VarianceCurve curve =
            estimate_sigma(entry.spec, large, radii, cfg.variance_replicas, 1, gseed);
        const HuStarReport hu = hustar_series(curve, n_max, Llarge);
        row.hustar_verdict = to_string(hu.verdict);
        row.hustar_tail_slope = hu.slope;

        // sigma decay slope over the upper dyads
        {
            std::vector<double> lx, ly;
            for (const auto& e : curve.entries)
                if (e.r >= 4.0 && e.sigma > 0.0) {
                    lx.push_back(std::log2(e.r));
                    ly.push_back(std::log2(e.sigma));
                }
            row.sigma_loglog_slope = linear_fit(lx, ly).slope;
        }

        // spectral side on the large box
        const SpectralEstimate est = structure_factor(entry.spec, large, cfg.spectrum_replicas,
                                                      1.0, gseed.with_stream(gseed.stream + 500));
        const ScIntegral sc = sc_integral(est);
        row.sc_value = sc.value;
        row.sc_divergence_flag = sc.divergence_flag;

        // energy and transport stability across the two box sizes
        const int reps_energy = std::max(4, cfg.replicas / 8);
        const CoulEstimate e_small = coul_estimate(entry.spec, small, cfg.eta, reps_energy,
                                                   cfg.grid_n_per_unit * int(Lsmall),
                                                   gseed.with_stream(gseed.stream + 600));
        const CoulEstimate e_large = coul_estimate(entry.spec, large, cfg.eta, reps_energy,
                                                   cfg.grid_n_per_unit * int(Llarge),
                                                   gseed.with_stream(gseed.stream + 700));
        row.coul_small = mc(e_small.mean, e_small.stderr_);
        row.coul_large = mc(e_large.mean, e_large.stderr_);
        row.coul_stable = std::abs(e_large.mean - e_small.mean) <
                          cfg.thresholds.stability_rel_change * std::abs(e_small.mean);

        const int reps_w2 = std::max(3, cfg.replicas / 16);
        const WpSequence w2 = wp_per_unit_volume(
            entry.spec, {Lsmall / 2.0, Lsmall}, 2, reps_w2,
            gseed.with_stream(gseed.stream + 800), cfg.grid_m_per_unit,
            TransportResult::Method::ExactAssignment, 0.0);
        row.w2_small = mc(w2.cost_per_volume.front(), w2.stderr_.front());
        row.w2_large = mc(w2.cost_per_volume.back(), w2.stderr_.back());
        row.w2_stable = w2.finite;

        // chain coherence: HU*-converging generators must be energy- and
        // transport-stable; the Poisson row must diverge/grow on all three
        if (row.hustar_verdict == "converging")
            row.coherent = row.coul_stable && row.w2_stable && !row.sc_divergence_flag;
        else if (row.hustar_verdict == "diverging")
            row.coherent = row.sc_divergence_flag && !row.coul_stable;
        else
            row.coherent = true; // inconclusive rows do not constrain the table
        all_ok = all_ok && row.coherent;
        rep.chain_rows.push_back(row);
    }

    // mixture of collapse blocks: truncations keep W2 stable while the energy grows
    {
        std::vector<int> Ns{2, 4, 8, 16};
        std::vector<double> w2_partial, energy_partial;
        double wsum = 0.0, w2acc = 0.0, eacc = 0.0;
        for (std::size_t t = 0; t < Ns.size(); ++t) {
            const int N = Ns[t];
            const double alpha = 1.0 / (double(N) * double(N) * std::pow(std::log(double(N)), 2.0));
            const double Lb = 4.0 * N;
            const TorusBox box(Lb);
            const RngSeed rs{cfg.seed.seed, cfg.seed.stream + 77'000 + t};
            const PointConfiguration sample_cfg = gen_collapse_blocks(box, N, rs);
            const TransportResult w2 = w2_to_lebesgue(
                sample_cfg, cfg.grid_m_per_unit * int(Lb),
                double(N) * N * cfg.grid_m_per_unit * cfg.grid_m_per_unit * Lb * Lb <=
                        double(SolverLimits::kExactMax)
                    ? TransportResult::Method::ExactAssignment
                    : TransportResult::Method::Entropic,
                0.5, false);
            const TruncatedField f = solve_field(sample_cfg, 0.5, 8 * int(Lb));
            wsum += alpha;
            w2acc += alpha * w2.cost_per_volume;
            eacc += alpha * f.energy_per_volume();
            w2_partial.push_back(w2acc / wsum);
            energy_partial.push_back(eacc / wsum);
        }
        const std::size_t n = Ns.size();
        const double w2rel = std::abs(w2_partial[n - 1] - w2_partial[n - 2]) /
                             std::max(1e-300, w2_partial[n - 2]);
        const double erel = (energy_partial[n - 1] - energy_partial[n - 2]) /
                            std::max(1e-300, energy_partial[n - 2]);
        rep.fitted_constants["mixture_w2_last_rel_change"] = w2rel;
        rep.fitted_constants["mixture_energy_last_rel_change"] = erel;
        rep.checks["mixture_w2_stable_energy_growing"] =
            w2rel < cfg.thresholds.stability_rel_change &&
            erel > cfg.thresholds.stability_rel_change;
        all_ok = all_ok && rep.checks["mixture_w2_stable_energy_growing"];
    }

    rep.all_pass = all_ok;
    return rep;
}

ExperimentReport run_counterexample_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    ExperimentReport rep;
    rep.name = cfg.name.empty() ? "counterexamples" : cfg.name;
    rep.seed = cfg.seed.seed;
    bool all_ok = true;

    // (a) collapse blocks: bounded transport, energy above c N^2 log N
    {
        std::vector<double> ratios;
        for (int N : {4, 8, 16}) {
            const double Lb = 4.0 * N;
            const TorusBox box(Lb);
            CollapseRow row;
            row.N = N;
            const RngSeed rs{cfg.seed.seed, cfg.seed.stream + 200 + std::uint64_t(N)};
            const PointConfiguration c = gen_collapse_blocks(box, N, rs);
            const double sz = double(c.total_count()) * std::pow(cfg.grid_m_per_unit * Lb, 2.0);
            const auto method = sz <= double(SolverLimits::kExactMax)
                                    ? TransportResult::Method::ExactAssignment
                                    : TransportResult::Method::Entropic;
            const TransportResult w2 =
                w2_to_lebesgue(c, cfg.grid_m_per_unit * int(Lb), method, 0.5);
            row.w2_per_volume = det(w2.cost_per_volume);
            row.w2_within_bound =
                w2.cost_per_volume <= cfg.thresholds.collapse_w2_coefficient * N * N;
            const TruncatedField f = solve_field(c, 0.5, 8 * int(Lb));
            row.energy_per_volume = det(f.energy_per_volume());
            row.c_ratio = f.energy_per_volume() / (double(N) * N * std::log(double(N)));
            ratios.push_back(row.c_ratio);
            all_ok = all_ok && row.w2_within_bound;
            rep.collapse_rows.push_back(row);
        }
        const double band = *std::max_element(ratios.begin(), ratios.end()) /
                            *std::min_element(ratios.begin(), ratios.end());
        rep.fitted_constants["collapse_energy_c"] = *std::min_element(ratios.begin(), ratios.end());
        rep.fitted_constants["collapse_energy_c_band"] = band;
        rep.checks["collapse_energy_c_stable"] = band <= cfg.thresholds.collapse_energy_ratio_band;
        all_ok = all_ok && rep.checks["collapse_energy_c_stable"];
    }

    // (b) binomial blocks: variance crossover and w1 growth
    {
        for (int N : {8, 16}) {
            const double Lb = 8.0 * N;
            const TorusBox box(Lb);
            BinomialRow row;
            row.N = N;
            const RngSeed rs{cfg.seed.seed, cfg.seed.stream + 300 + std::uint64_t(N)};
            const std::vector<double> radii{N / 2.0, double(N), 2.0 * N};
            const VarianceCurve curve = estimate_sigma(ProcessSpec::binomial(N), box, radii,
                                                       cfg.variance_replicas, 1, rs);
            std::vector<double> below, above;
            for (const auto& e : curve.entries) {
                const double var = e.sigma * M_PI * e.r * e.r;
                if (e.r <= double(N) + 1e-9)
                    below.push_back(var / (e.r * e.r));
                if (e.r >= double(N) - 1e-9)
                    above.push_back(var / (e.r * N));
                if (e.r <= double(N) + 1e-9)
                    row.var_over_r2["r=" + std::to_string(int(e.r))] = var / (e.r * e.r);
                if (e.r >= double(N) - 1e-9)
                    row.var_over_rN["r=" + std::to_string(int(e.r))] = var / (e.r * N);
            }
            auto band_ok = [&](const std::vector<double>& v) {
                const double mx = *std::max_element(v.begin(), v.end());
                const double mn = *std::min_element(v.begin(), v.end());
                return mn > 0.0 && mx / mn <= cfg.thresholds.variance_band;
            };
            row.bands_ok = band_ok(below) && band_ok(above);
            all_ok = all_ok && row.bands_ok;
            rep.binomial_rows.push_back(row);
        }
        // w1 per volume measured on the single-block torus L = N
        std::vector<double> sx, sy;
        double prev = -1.0;
        bool increasing = true;
        for (int N : {8, 16, 32}) {
            const TorusBox box{double(N)};
            const int reps = std::max(4, cfg.replicas / 8);
            std::vector<double> costs(std::size_t(reps), 0.0);
            for (int r = 0; r < reps; ++r) {
                const RngSeed rs{cfg.seed.seed,
                                 cfg.seed.stream + 400 + std::uint64_t(N) * 100 + std::uint64_t(r)};
                const PointConfiguration c = gen_binomial_blocks(box, N, rs);
                costs[std::size_t(r)] =
                    w1_to_lebesgue(c, cfg.grid_m_per_unit * N,
                                   TransportResult::Method::ExactAssignment)
                        .cost_per_volume;
            }
            const double mean = deterministic_sum(costs) / reps;
            double ss = 0.0;
            for (double v : costs) ss += (v - mean) * (v - mean);
            BinomialRow* row = nullptr;
            for (auto& r : rep.binomial_rows)
                if (r.N == N) row = &r;
            if (!row) {
                rep.binomial_rows.push_back({});
                row = &rep.binomial_rows.back();
                row->N = N;
                row->bands_ok = true;
            }
            row->w1_per_volume = mc(mean, std::sqrt(ss / (reps - 1) / reps));
            if (prev >= 0.0 && mean <= prev) increasing = false;
            prev = mean;
            sx.push_back(std::sqrt(std::log(double(N))));
            sy.push_back(mean);
        }
        rep.w1_fit = linear_fit(sx, sy);
        rep.checks["w1_strictly_increasing"] = increasing;
        rep.checks["w1_fit_positive_slope"] = rep.w1_fit.slope > 0.0;
        all_ok = all_ok && increasing && rep.w1_fit.slope > 0.0;
    }

    // AKT scaling: per-point W2^2 of the pure binomial vs log N
    {
        std::vector<double> lx, ly;
        for (int N : {8, 16, 32, 64}) {
            const TorusBox box{double(N)};
            const int reps = std::max(3, cfg.replicas / 16);
            std::vector<double> costs(std::size_t(reps), 0.0);
            for (int r = 0; r < reps; ++r) {
                const RngSeed rs{cfg.seed.seed,
                                 cfg.seed.stream + 500 + std::uint64_t(N) * 100 + std::uint64_t(r)};
                const PointConfiguration c = gen_binomial_blocks(box, N, rs);
                // one method across all N keeps the fit unbiased; N=64 exceeds
                // the exact-method cap, so the whole suite runs entropic
                costs[std::size_t(r)] = w2_to_lebesgue(c, cfg.grid_m_per_unit * N,
                                                       TransportResult::Method::Entropic, 0.05)
                                            .cost_per_volume;
            }
            const double mean = deterministic_sum(costs) / reps;
            double ss = 0.0;
            for (double v : costs) ss += (v - mean) * (v - mean);
            rep.akt_per_point_w2.push_back({N, mc(mean, std::sqrt(ss / (reps - 1) / reps))});
            lx.push_back(std::log(double(N)));
            ly.push_back(mean);
        }
        rep.akt_fit = linear_fit(lx, ly);
        rep.checks["akt_positive_slope"] = rep.akt_fit.slope > 0.0;
        rep.checks["akt_r_squared"] = rep.akt_fit.r_squared >= 0.9;
        all_ok = all_ok && rep.akt_fit.slope > 0.0 && rep.akt_fit.r_squared >= 0.9;
    }

    rep.all_pass = all_ok;
    return rep;
}

std::string ExperimentReport::to_json() const {
    json j;
    j["name"] = name;
    j["seed"] = seed;
    j["all_pass"] = all_pass;
    json rows = json::array();
    for (const auto& r : chain_rows) {
        rows.push_back({{"generator", r.generator},
                        {"hustar_verdict", r.hustar_verdict},
                        {"hustar_tail_slope", r.hustar_tail_slope},
                        {"sc_value", r.sc_value},
                        {"sc_divergence_flag", r.sc_divergence_flag},
                        {"coul_small", measured_json(r.coul_small)},
                        {"coul_large", measured_json(r.coul_large)},
                        {"coul_stable", r.coul_stable},
                        {"w2_small", measured_json(r.w2_small)},
                        {"w2_large", measured_json(r.w2_large)},
                        {"w2_stable", r.w2_stable},
                        {"sigma_loglog_slope", r.sigma_loglog_slope},
                        {"coherent", r.coherent}});
    }
    j["chain_rows"] = rows;
    json crows = json::array();
    for (const auto& r : collapse_rows)
        crows.push_back({{"N", r.N},
                         {"w2_per_volume", measured_json(r.w2_per_volume)},
                         {"w2_within_bound", r.w2_within_bound},
                         {"energy_per_volume", measured_json(r.energy_per_volume)},
                         {"c_ratio", r.c_ratio}});
    j["collapse_rows"] = crows;
    json brows = json::array();
    for (const auto& r : binomial_rows)
        brows.push_back({{"N", r.N},
                         {"var_over_r2", r.var_over_r2},
                         {"var_over_rN", r.var_over_rN},
                         {"bands_ok", r.bands_ok},
                         {"w1_per_volume", measured_json(r.w1_per_volume)}});
    j["binomial_rows"] = brows;
    json akt = json::array();
    for (const auto& [N, m] : akt_per_point_w2)
        akt.push_back({{"N", N}, {"w2_per_point", measured_json(m)}});
    j["akt"] = akt;
    j["akt_fit"] = {{"slope", akt_fit.slope}, {"intercept", akt_fit.intercept}, {"r2", akt_fit.r_squared}};
    j["w1_fit"] = {{"slope", w1_fit.slope}, {"intercept", w1_fit.intercept}, {"r2", w1_fit.r_squared}};
    j["fitted_constants"] = fitted_constants;
    j["checks"] = checks;
    return j.dump(2);
}

std::string ExperimentReport::to_markdown() const {
    std::ostringstream os;
    os << "# " << name << " report\n\nseed: " << seed << "\n\n";
    if (!chain_rows.empty()) {
        os << "| generator | HU* | slope | SC | SC flag | Coul small/large | stable | W2 "
              "small/large | stable | ok |\n";
        os << "|---|---|---|---|---|---|---|---|---|---|\n";
        for (const auto& r : chain_rows) {
            os << "| " << r.generator << " | " << r.hustar_verdict << " | "
               << r.sigma_loglog_slope << " | " << r.sc_value << " | "
               << (r.sc_divergence_flag ? "diverging" : "ok") << " | " << r.coul_small.value
               << " / " << r.coul_large.value << " | " << (r.coul_stable ? "yes" : "no") << " | "
               << r.w2_small.value << " / " << r.w2_large.value << " | "
               << (r.w2_stable ? "yes" : "no") << " | " << (r.coherent ? "yes" : "NO") << " |\n";
        }
        os << "\n";
    }
    if (!collapse_rows.empty()) {
        os << "| N | W2^2/vol | <= 2N^2 | energy/vol | c ratio |\n|---|---|---|---|---|\n";
        for (const auto& r : collapse_rows)
            os << "| " << r.N << " | " << r.w2_per_volume.value << " | "
               << (r.w2_within_bound ? "yes" : "NO") << " | " << r.energy_per_volume.value << " | "
               << r.c_ratio << " |\n";
        os << "\n";
    }
    if (!binomial_rows.empty()) {
        os << "| N | bands ok | w1/vol |\n|---|---|---|\n";
        for (const auto& r : binomial_rows)
            os << "| " << r.N << " | " << (r.bands_ok ? "yes" : "NO") << " | "
               << r.w1_per_volume.value << " |\n";
        os << "\n";
    }
    if (!akt_per_point_w2.empty()) {
        os << "AKT fit vs log N: slope " << akt_fit.slope << ", R^2 " << akt_fit.r_squared
           << "\n\n";
    }
    for (const auto& [k, v] : checks) os << "- " << k << ": " << (v ? "pass" : "FAIL") << "\n";
    os << "\n" << (all_pass ? "ALL CHECKS PASS" : "SOME CHECKS FAIL") << "\n";
    return os.str();
}

void emit_plot_data(const ExperimentReport& report, const std::string& kind,
                    const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    std::ostringstream os;
    if (kind == "energy_vs_N") {
        if (report.collapse_rows.empty()) throw IncompleteReport("no collapse rows in report");
        os << "N,energy_per_volume,c_ratio\n";
        for (const auto& r : report.collapse_rows)
            os << r.N << "," << r.energy_per_volume.value << "," << r.c_ratio << "\n";
    } else if (kind == "cost_vs_logN") {
        if (report.akt_per_point_w2.empty()) throw IncompleteReport("no AKT rows in report");
        os << "N,logN,w2_per_point,stderr\n";
        for (const auto& [N, m] : report.akt_per_point_w2)
            os << N << "," << std::log(double(N)) << "," << m.value << "," << m.stderr_ << "\n";
    } else if (kind == "sigma_vs_r") {
        if (report.chain_rows.empty()) throw IncompleteReport("no chain rows in report");
        os << "generator,sigma_loglog_slope,hustar_verdict\n";
        for (const auto& r : report.chain_rows)
            os << r.generator << "," << r.sigma_loglog_slope << "," << r.hustar_verdict << "\n";
    } else if (kind == "spectrum") {
        if (report.chain_rows.empty()) throw IncompleteReport("no chain rows in report");
        os << "generator,sc_value,sc_divergence_flag\n";
        for (const auto& r : report.chain_rows)
            os << r.generator << "," << r.sc_value << "," << (r.sc_divergence_flag ? 1 : 0) << "\n";
    } else {
        throw IncompleteReport("unknown plot kind: " + kind);
    }
    std::ofstream f(fs::path(out_dir) / (kind + ".csv"));
    f << os.str();
}

} // namespace hyperlab
