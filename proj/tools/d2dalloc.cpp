// Command-line front end: run experiments, print closed-form counters, run the invariant suite.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "d2d/config.hpp"
#include "d2d/counters.hpp"
#include "d2d/experiment.hpp"
#include "d2d/format.hpp"
#include "d2d/output.hpp"
#include "d2d/serialize.hpp"
#include "d2d/verify.hpp"

namespace {

template <typename T>
std::string join(const std::vector<T>& xs) {
    std::ostringstream out;
    for (std::size_t i = 0; i < xs.size(); ++i) out << (i ? "," : "") << xs[i];
    return out.str();
}

int run_command(const std::string& config_path, const std::optional<std::size_t>& trials,
                const std::optional<std::uint64_t>& seed, const std::string& algorithms, const std::string& out_dir,
                const std::vector<double>& cluster_radii, const std::vector<double>& cell_radii,
                const std::vector<std::size_t>& n_cues, const std::optional<std::size_t>& threads,
                bool dump_allocations) {
    d2d::ExperimentConfig base;
    if (!config_path.empty()) base = d2d::load_config(config_path);
    if (trials) base.trials = *trials;
    if (seed) base.seed = *seed;
    if (!algorithms.empty()) base.algorithms = d2d::parse_algorithm_list(algorithms);
    if (!cluster_radii.empty()) base.cluster_radius_sweep = cluster_radii;
    if (threads) base.threads = *threads;
    base.keep_allocations = dump_allocations;

    const std::vector<double> radii = cell_radii.empty() ? std::vector<double>{base.cell_radius} : cell_radii;
    const std::vector<std::size_t> ns = n_cues.empty() ? std::vector<std::size_t>{base.n_cues} : n_cues;

    std::vector<d2d::ExperimentConfig> configs;
    for (double r : radii) {
        for (std::size_t n : ns) {
            auto cfg = base;
            cfg.cell_radius = r;
            cfg.n_cues = n;
            cfg.validate();
            configs.push_back(std::move(cfg));
        }
    }

    std::vector<d2d::TrialRecord> records;
    for (const auto& cfg : configs) {
        std::cerr << "running R=" << d2d::format_double(cfg.cell_radius) << " N=" << cfg.n_cues
                  << " M=" << cfg.pairs() << " trials=" << cfg.trials << " radii=" << join(cfg.cluster_radius_sweep)
                  << '\n';
        auto part = d2d::run_experiment(cfg);
        records.insert(records.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }

    const auto files = d2d::emit_results(records, out_dir);
    {
        std::ofstream echo(std::filesystem::path(out_dir) / "config.txt", std::ios::binary);
        echo << d2d::render_config(base);
    }
    if (dump_allocations) {
        const auto path = std::filesystem::path(out_dir) / "allocations.jsonl";
        std::ofstream out(path, std::ios::binary);
        if (!out) throw d2d::OutputError("cannot open '" + path.string() + "'");
        for (const auto& r : records) {
            auto j = d2d::to_json(*r.allocation);
            j["trial"] = r.trial;
            j["cell_radius"] = r.cell_radius;
            j["cluster_radius"] = r.cluster_radius;
            out << j.dump() << '\n';
        }
    }

    for (const auto& row : d2d::aggregate(records)) {
        std::cout << row.algorithm << " R=" << d2d::format_double(row.cell_radius) << " N=" << row.n_cues
                  << " r=" << d2d::format_double(row.cluster_radius) << "  sum_rate=" << row.sum_rate.mean << " +/- "
                  << row.sum_rate.half_width << "  admitted=" << row.admitted.mean << " +/- "
                  << row.admitted.half_width << '\n';
    }
    std::cout << "wrote " << files.raw_csv.string() << ", " << files.aggregate_csv.string() << " and "
              << files.plot_data.size() << " plot-data files\n";
    return 0;
}

int counters_command(std::uint64_t n, std::uint64_t m) {
    const auto opt = d2d::predicted_counters(n, m, d2d::CounterVariant::Optimal);
    const auto pro = d2d::predicted_counters(n, m, d2d::CounterVariant::Proposed);
    std::cout << "N=" << n << " M=" << m << '\n';
    std::cout << "optimal:  matching_states=" << opt.matching_states << " signaling_gains=" << opt.signaling_gains << '\n';
    std::cout << "proposed: matching_states=" << pro.matching_states << " signaling_gains=" << pro.signaling_gains << '\n';
    return 0;
}

int verify_command(const d2d::VerifyOptions& opt) {
    bool ok = true;
    for (const auto& c : d2d::run_invariant_suite(opt)) {
        std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << " (" << c.cases << " cases)";
        if (!c.passed) std::cout << ": " << c.detail;
        std::cout << '\n';
        ok = ok && c.passed;
    }
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"D2D underlay spectrum and power allocation simulator"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "Run a Monte Carlo experiment and write CSV/plot data");
    std::string config_path, algorithms, out_dir = "results";
    std::optional<std::size_t> trials, threads;
    std::optional<std::uint64_t> seed;
    std::vector<double> cluster_radii, cell_radii;
    std::vector<std::size_t> n_cues;
    bool dump = false;
    run->add_option("--config", config_path, "key=value config file")->check(CLI::ExistingFile);
    run->add_option("--trials", trials, "Monte Carlo trials per sweep point");
    run->add_option("--seed", seed, "Master seed");
    run->add_option("--algorithms", algorithms, "Comma list of proposed,three_step,all_csi,exhaustive");
    run->add_option("--out-dir", out_dir, "Output directory");
    run->add_option("--cluster-radii", cluster_radii, "D2D cluster radii (m)")->delimiter(',');
    run->add_option("--cell-radii", cell_radii, "Cell radii (m); one experiment per value")->delimiter(',');
    run->add_option("--n-cues", n_cues, "CUE counts; one experiment per value")->delimiter(',');
    run->add_option("--threads", threads, "Worker threads (0: all cores)");
    run->add_flag("--dump-allocations", dump, "Also write allocations.jsonl");

    auto* counters = app.add_subcommand("counters", "Print closed-form matching-state and signaling counts");
    std::uint64_t n = 5, m = 25;
    counters->add_option("-n,--n-cues", n, "Number of CUEs (N)");
    counters->add_option("-m,--n-d2d", m, "Number of D2D pairs (M)");

    auto* verify = app.add_subcommand("verify", "Run the invariant suite on small instances");
    d2d::VerifyOptions vopt;
    verify->add_option("--seed", vopt.seed, "Master seed");
    verify->add_option("--instances", vopt.instances, "Number of instances");
    verify->add_option("--n-cues", vopt.n_cues, "CUEs per instance");
    verify->add_option("--n-d2d", vopt.n_d2d, "D2D pairs per instance");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            return run_command(config_path, trials, seed, algorithms, out_dir, cluster_radii, cell_radii, n_cues,
                               threads, dump);
        }
        if (*counters) return counters_command(n, m);
        if (*verify) return verify_command(vopt);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
