#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "logeq/channel.hpp"
#include "logeq/config.hpp"
#include "logeq/equalizer.hpp"
#include "logeq/metrics.hpp"
#include "logeq/signal.hpp"

namespace logeq {

enum class SweepKind { None, Snr, A };

// One experiment: algorithms x (SNR grid or a grid) x trials over a fixed
// channel / frame / equalizer setup.
struct ExperimentConfig {
    std::string preset_name{"custom"};
    SweepKind sweep{SweepKind::None};
    int trials{10};
    std::uint64_t master_seed{1};
    int workers{1};
    std::string out_dir{"results"};
    int curve_decimate{50};

    std::size_t frame_length{50000};
    bool pattern_random{true};
    std::vector<double> training_sequence;  // used when !pattern_random
    double training_fraction{1.0};

    ChannelModel channel;

    double ebn0_db{30.0};
    std::vector<double> snr_grid_db{0, 5, 10, 15, 20, 25, 30};
    double impulse_ratio{1e4};
    double nu_i{0.1};

    std::vector<Algorithm> algorithms{Algorithm::LCLMA, Algorithm::LCLMS, Algorithm::SA,
                                      Algorithm::LMS};
    int l_a{15};
    int l_c{16};
    int h_f{0};
    double mu{0.01};
    double mu_feedback{0.001};
    double a{1.0};
    std::vector<double> a_grid{0.1, 1.0, 10.0};

    int mse_window{500};
    int weight_dump_stride{0};  // 0 = off; else dump trial-0 weights every N steps

    void validate() const;
    ConfigMap to_config() const;
    static ExperimentConfig from_config(const ConfigMap& map);

    static ExperimentConfig preset(std::string_view name);
    static std::vector<std::string> preset_names();

    EqualizerConfig equalizer(Algorithm alg, double a_value) const;
};

struct CellKey {
    Algorithm algorithm{Algorithm::LCLMA};
    double snr_db{30.0};
    double a{1.0};
};

struct CellResult {
    CellKey key;
    AveragedResult averaged;
    std::vector<std::uint64_t> trial_seeds;
    bool failed{false};
    std::string error;
};

struct ResultBundle {
    ExperimentConfig config;
    std::uint64_t config_hash{0};
    std::vector<CellResult> cells;
};

// Stable per-trial seed; adding algorithms or grid points never perturbs the
// streams of existing cells.
std::uint64_t trial_seed(std::uint64_t master_seed, const CellKey& key, int trial_index);

// Hash over the result-determining keys (output path and worker count excluded).
std::uint64_t config_hash(const ExperimentConfig& config);

std::vector<CellKey> experiment_cells(const ExperimentConfig& config);

// Full pipeline for one trial: bits -> channel + noise -> equalizer loop
// (training / decision-directed per schedule, DFE when h_f > 0) -> metrics.
TrialResult run_trial(const ExperimentConfig& config, const CellKey& key, int trial_index);

// Debug aid: rows [t, w_0..w_{h-1}, f_0..f_{h_f-1}] sampled every stride steps.
std::vector<std::vector<double>> weight_trajectory(const ExperimentConfig& config,
                                                   const CellKey& key, int trial_index,
                                                   std::size_t stride);

ResultBundle run_experiment(const ExperimentConfig& config);

// summary.csv, one curve CSV per cell, and a re-runnable manifest.
void emit_results(const ResultBundle& bundle, const std::filesystem::path& out_dir);

std::string curve_file_name(const CellKey& key);

}  // namespace logeq
