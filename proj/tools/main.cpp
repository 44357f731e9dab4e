// Command line front end: experiment runner, parameter sweeps and the
// closed-form EMSE predictors.

#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "logeq/analysis.hpp"
#include "logeq/config.hpp"
#include "logeq/harness.hpp"
#include "logeq/version.hpp"

namespace {

struct CommonOptions {
    std::string config_path;
    std::string preset;
    std::optional<std::uint64_t> seed;
    std::string out_dir;
    std::optional<int> workers;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--config", opts.config_path, "Experiment config file");
    cmd->add_option("--preset", opts.preset, "Preset name (see show-config --list)");
    cmd->add_option("--seed", opts.seed, "Master seed override");
    cmd->add_option("--out", opts.out_dir, "Output directory override");
    cmd->add_option("--workers", opts.workers, "Concurrent trial workers");
}

logeq::ExperimentConfig load_config(const CommonOptions& opts) {
    logeq::ConfigMap map;
    if (!opts.config_path.empty()) {
        map = logeq::ConfigMap::parse_file(opts.config_path);
    }
    if (!opts.preset.empty()) {
        if (map.contains("preset")) {
            throw std::runtime_error("--preset conflicts with the config file's preset key");
        }
        map.set("preset", opts.preset);
    }
    auto config = logeq::ExperimentConfig::from_config(map);
    if (opts.seed) config.master_seed = *opts.seed;
    if (!opts.out_dir.empty()) config.out_dir = opts.out_dir;
    if (opts.workers) config.workers = *opts.workers;
    config.validate();
    return config;
}

int run_and_emit(logeq::ExperimentConfig config) {
    const auto bundle = logeq::run_experiment(config);
    logeq::emit_results(bundle, config.out_dir);
    for (const auto& cell : bundle.cells) {
        if (cell.failed) {
            std::printf("%-8s snr=%-6s a=%-6s FAILED: %s\n",
                        logeq::algorithm_name(cell.key.algorithm),
                        logeq::ConfigMap::format_double(cell.key.snr_db).c_str(),
                        logeq::ConfigMap::format_double(cell.key.a).c_str(), cell.error.c_str());
            continue;
        }
        const auto& avg = cell.averaged;
        if (avg.all_diverged) {
            std::printf("%-8s snr=%-6s a=%-6s all %d trials diverged\n",
                        logeq::algorithm_name(cell.key.algorithm),
                        logeq::ConfigMap::format_double(cell.key.snr_db).c_str(),
                        logeq::ConfigMap::format_double(cell.key.a).c_str(), avg.diverged_count);
            continue;
        }
        std::printf("%-8s snr=%-6s a=%-6s ber=%-12s final_nase=%-12s diverged=%d/%d\n",
                    logeq::algorithm_name(cell.key.algorithm),
                    logeq::ConfigMap::format_double(cell.key.snr_db).c_str(),
                    logeq::ConfigMap::format_double(cell.key.a).c_str(),
                    logeq::ConfigMap::format_double(avg.ber_mean).c_str(),
                    logeq::ConfigMap::format_double(avg.final_nase).c_str(), avg.diverged_count,
                    avg.diverged_count + avg.trials_used);
    }
    std::printf("results written to %s\n", config.out_dir.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"logeq: robust adaptive equalizer toolkit"};
    app.set_version_flag("--version", logeq::kVersion);
    app.require_subcommand(1);

    CommonOptions sim_opts, snr_opts, a_opts, show_opts;
    auto* simulate = app.add_subcommand("simulate", "Run one experiment config");
    add_common(simulate, sim_opts);
    auto* sweep_snr = app.add_subcommand("sweep-snr", "BER versus SNR sweep");
    add_common(sweep_snr, snr_opts);
    auto* sweep_a = app.add_subcommand("sweep-a", "Sweep of the design parameter a");
    add_common(sweep_a, a_opts);

    auto* show = app.add_subcommand("show-config", "Print the effective configuration");
    add_common(show, show_opts);
    bool list_presets = false;
    show->add_flag("--list", list_presets, "List preset names");

    auto* predict = app.add_subcommand("predict-emse", "Closed-form EMSE / MSE predictors");
    logeq::TrackingScenario scenario;
    double sigma_gamma_sq = 0.0;
    predict->add_option("--trace-r", scenario.trace_r, "Tr(R) of the regressor autocorrelation")
        ->required();
    predict->add_option("--trace-a", scenario.trace_a, "Tr(A) of the random-walk covariance");
    predict->add_option("--sigma-v-sq", scenario.sigma_v_sq, "Gaussian noise variance")->required();
    predict->add_option("--sigma-gamma-sq", sigma_gamma_sq, "Impulse variance");
    predict->add_option("--nu-i", scenario.nu_i, "Impulse probability");
    predict->add_option("--mu", scenario.mu, "Learning rate")->required();
    predict->add_option("--a", scenario.a, "Design parameter a");
    predict->add_option("--h-f", scenario.h_f, "Feedback length (0 = linear)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed()) return run_and_emit(load_config(sim_opts));
        if (sweep_snr->parsed()) {
            auto config = load_config(snr_opts);
            config.sweep = logeq::SweepKind::Snr;
            return run_and_emit(std::move(config));
        }
        if (sweep_a->parsed()) {
            auto config = load_config(a_opts);
            config.sweep = logeq::SweepKind::A;
            return run_and_emit(std::move(config));
        }
        if (show->parsed()) {
            if (list_presets) {
                for (const auto& name : logeq::ExperimentConfig::preset_names()) {
                    std::printf("%s\n", name.c_str());
                }
                return 0;
            }
            std::fputs(load_config(show_opts).to_config().serialize().c_str(), stdout);
            return 0;
        }
        if (predict->parsed()) {
            scenario.sigma_n_sq = scenario.sigma_v_sq + sigma_gamma_sq;
            int rc = 0;
            std::printf("quantity,value\n");
            auto report = [&rc](const char* name, auto&& fn) -> std::optional<double> {
                try {
                    const double v = fn();
                    std::printf("%s,%s\n", name, logeq::ConfigMap::format_double(v).c_str());
                    return v;
                } catch (const std::exception& ex) {
                    std::printf("%s,nan\n", name);
                    std::fprintf(stderr, "%s: %s\n", name, ex.what());
                    rc = 1;
                    return std::nullopt;
                }
            };
            const auto eta_g = report("eta_gaussian", [&] { return logeq::emse_lclma_gaussian(scenario); });
            const auto eta_i = report("eta_impulsive", [&] { return logeq::emse_lclma_impulsive(scenario); });
            report("mse_gaussian", [&]() -> double {
                if (!eta_g) throw std::runtime_error("eta_gaussian unavailable");
                return logeq::steady_mse(scenario, *eta_g);
            });
            report("mse_impulsive", [&]() -> double {
                if (!eta_i) throw std::runtime_error("eta_impulsive unavailable");
                return logeq::steady_mse(scenario, *eta_i);
            });
            return rc;
        }
    } catch (const std::exception& ex) {
        std::fprintf(stderr, "error: %s\n", ex.what());
        return 1;
    }
    return 0;
}
