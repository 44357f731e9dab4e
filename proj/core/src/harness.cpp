#include "logeq/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <thread>

#include "logeq/rng.hpp"
#include "logeq/version.hpp"

namespace logeq {

namespace {

ChannelModel desk_channel() {
    std::vector<double> taps = {1.0, 0.45, -0.22, 0.13, -0.08, 0.05, -0.03, 0.02};
    double energy = 0.0;
    for (double h : taps) energy += h * h;
    const double scale = 1.0 / std::sqrt(energy);
    for (double& h : taps) h *= scale;
    return ChannelModel::fir(0, std::move(taps));
}

ExperimentConfig desk_base() {
    ExperimentConfig c;
    c.channel = desk_channel();
    return c;  // struct defaults are the desk-scale defaults
}

ExperimentConfig reference_base() {
    ExperimentConfig c;
    c.channel = desk_channel();
    c.frame_length = 280000;  // 10000 repetitions of the 28-entry sequence
    c.pattern_random = false;
    const auto seq = default_training_sequence();
    c.training_sequence.assign(seq.begin(), seq.end());
    c.l_a = 180;
    c.l_c = 181;  // 362 feed-forward taps
    c.mu = 0.1;
    c.mu_feedback = 0.01;
    c.curve_decimate = 500;
    c.mse_window = 2000;
    return c;
}

const char* sweep_name(SweepKind s) {
    switch (s) {
        case SweepKind::None: return "none";
        case SweepKind::Snr: return "snr";
        case SweepKind::A: return "a";
    }
    return "?";
}

SweepKind sweep_from_name(const std::string& name) {
    if (name == "none") return SweepKind::None;
    if (name == "snr") return SweepKind::Snr;
    if (name == "a") return SweepKind::A;
    throw std::runtime_error("config: sweep must be one of none, snr, a (got '" + name + "')");
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::string hex64(std::uint64_t v) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

}  // namespace

void ExperimentConfig::validate() const {
    if (trials < 1) throw std::invalid_argument("ExperimentConfig: trials must be >= 1");
    if (workers < 1) throw std::invalid_argument("ExperimentConfig: workers must be >= 1");
    if (frame_length < 1) throw std::invalid_argument("ExperimentConfig: frame length must be >= 1");
    if (curve_decimate < 1) throw std::invalid_argument("ExperimentConfig: decimation must be >= 1");
    if (mse_window < 1) throw std::invalid_argument("ExperimentConfig: mse window must be >= 1");
    if (weight_dump_stride < 0) {
        throw std::invalid_argument("ExperimentConfig: weight dump stride must be >= 0");
    }
    if (!(training_fraction >= 0.0 && training_fraction <= 1.0)) {
        throw std::invalid_argument("ExperimentConfig: training fraction must lie in [0,1]");
    }
    if (!pattern_random) {
        if (training_sequence.empty()) {
            throw std::invalid_argument("ExperimentConfig: repeated pattern needs a sequence");
        }
        for (double v : training_sequence) {
            if (v != 1.0 && v != -1.0) {
                throw std::invalid_argument("ExperimentConfig: sequence entries must be -1 or +1");
            }
        }
    }
    channel.validate();
    if (!(impulse_ratio >= 0.0)) {
        throw std::invalid_argument("ExperimentConfig: impulse ratio must be >= 0");
    }
    if (!(nu_i >= 0.0 && nu_i <= 1.0)) {
        throw std::invalid_argument("ExperimentConfig: nu_i must lie in [0,1]");
    }
    if (algorithms.empty()) throw std::invalid_argument("ExperimentConfig: no algorithms");
    if (sweep == SweepKind::Snr && snr_grid_db.empty()) {
        throw std::invalid_argument("ExperimentConfig: SNR sweep needs a nonempty grid");
    }
    if (sweep == SweepKind::A) {
        if (a_grid.empty()) throw std::invalid_argument("ExperimentConfig: a sweep needs a grid");
        for (double v : a_grid) {
            if (!(v > 0.0)) throw std::invalid_argument("ExperimentConfig: a grid entries must be > 0");
        }
    }
    equalizer(algorithms.front(), a).validate();
}

EqualizerConfig ExperimentConfig::equalizer(Algorithm alg, double a_value) const {
    EqualizerConfig eq;
    eq.anti_causal = l_a;
    eq.causal = l_c;
    eq.feedback = h_f;
    eq.mu = mu;
    eq.mu_feedback = mu_feedback;
    eq.a = a_value;
    eq.algorithm = alg;
    return eq;
}

ConfigMap ExperimentConfig::to_config() const {
    ConfigMap map;
    map.set("preset", preset_name);
    map.set("sweep", sweep_name(sweep));
    map.set("trials", std::to_string(trials));
    map.set("seed", std::to_string(master_seed));
    map.set("workers", std::to_string(workers));
    map.set("out", out_dir);
    map.set("output.decimate", std::to_string(curve_decimate));
    map.set("frame.length", std::to_string(frame_length));
    map.set("frame.pattern", pattern_random ? "random" : "repeated");
    if (!pattern_random) {
        map.set("frame.sequence", ConfigMap::format_double_list(training_sequence));
    }
    map.set("frame.training_fraction", ConfigMap::format_double(training_fraction));
    map.set("channel.n1", std::to_string(channel.anti_causal));
    map.set("channel.taps", ConfigMap::format_double_list(channel.taps));
    map.set("channel.drift_std", ConfigMap::format_double(channel.drift_std));
    map.set("noise.ebn0_db", ConfigMap::format_double(ebn0_db));
    map.set("noise.snr_grid_db", ConfigMap::format_double_list(snr_grid_db));
    map.set("noise.impulse_ratio", ConfigMap::format_double(impulse_ratio));
    map.set("noise.nu_i", ConfigMap::format_double(nu_i));
    std::string algs;
    for (std::size_t i = 0; i < algorithms.size(); ++i) {
        if (i) algs += ", ";
        algs += algorithm_name(algorithms[i]);
    }
    map.set("equalizer.algorithms", algs);
    map.set("equalizer.l_a", std::to_string(l_a));
    map.set("equalizer.l_c", std::to_string(l_c));
    map.set("equalizer.h_f", std::to_string(h_f));
    map.set("equalizer.mu", ConfigMap::format_double(mu));
    map.set("equalizer.mu_feedback", ConfigMap::format_double(mu_feedback));
    map.set("equalizer.a", ConfigMap::format_double(a));
    map.set("equalizer.a_grid", ConfigMap::format_double_list(a_grid));
    map.set("metrics.mse_window", std::to_string(mse_window));
    map.set("output.weight_dump", std::to_string(weight_dump_stride));
    return map;
}

ExperimentConfig ExperimentConfig::from_config(const ConfigMap& map) {
    ExperimentConfig c;
    std::string preset_key = map.get_string("preset", "custom");
    bool known = false;
    for (const auto& name : preset_names()) {
        if (name == preset_key) known = true;
    }
    c = known ? preset(preset_key) : desk_base();
    c.preset_name = preset_key;

    c.sweep = sweep_from_name(map.get_string("sweep", sweep_name(c.sweep)));
    c.trials = static_cast<int>(map.get_int("trials", c.trials));
    c.master_seed = map.get_uint64("seed", c.master_seed);
    c.workers = static_cast<int>(map.get_int("workers", c.workers));
    c.out_dir = map.get_string("out", c.out_dir);
    c.curve_decimate = static_cast<int>(map.get_int("output.decimate", c.curve_decimate));

    c.frame_length = static_cast<std::size_t>(
        map.get_int("frame.length", static_cast<std::int64_t>(c.frame_length)));
    const std::string pattern =
        map.get_string("frame.pattern", c.pattern_random ? "random" : "repeated");
    if (pattern == "random") {
        c.pattern_random = true;
    } else if (pattern == "repeated") {
        c.pattern_random = false;
    } else {
        throw std::runtime_error("config: frame.pattern must be random or repeated");
    }
    if (map.contains("frame.sequence") && map.contains("frame.sequence_file")) {
        throw std::runtime_error("config: frame.sequence and frame.sequence_file are exclusive");
    }
    if (map.contains("frame.sequence")) {
        c.training_sequence = map.get_double_list("frame.sequence", {});
    } else if (map.contains("frame.sequence_file")) {
        c.training_sequence = load_training_sequence(map.get_string("frame.sequence_file"));
    } else if (!c.pattern_random && c.training_sequence.empty()) {
        const auto seq = default_training_sequence();
        c.training_sequence.assign(seq.begin(), seq.end());
    }
    c.training_fraction = map.get_double("frame.training_fraction", c.training_fraction);

    if (map.contains("channel.taps") && map.contains("channel.taps_file")) {
        throw std::runtime_error("config: channel.taps and channel.taps_file are exclusive");
    }
    std::vector<double> taps = c.channel.taps;
    if (map.contains("channel.taps")) {
        taps = map.get_double_list("channel.taps", taps);
    } else if (map.contains("channel.taps_file")) {
        taps = load_channel_taps(map.get_string("channel.taps_file"));
    }
    const int n1 = static_cast<int>(map.get_int("channel.n1", c.channel.anti_causal));
    const double drift = map.get_double("channel.drift_std", c.channel.drift_std);
    c.channel = ChannelModel::fir(n1, std::move(taps), drift);

    c.ebn0_db = map.get_double("noise.ebn0_db", c.ebn0_db);
    c.snr_grid_db = map.get_double_list("noise.snr_grid_db", c.snr_grid_db);
    c.impulse_ratio = map.get_double("noise.impulse_ratio", c.impulse_ratio);
    c.nu_i = map.get_double("noise.nu_i", c.nu_i);

    if (map.contains("equalizer.algorithms")) {
        c.algorithms.clear();
        for (const auto& name : map.get_string_list("equalizer.algorithms", {})) {
            const auto alg = algorithm_from_name(name);
            if (!alg) throw std::runtime_error("config: unknown algorithm '" + name + "'");
            c.algorithms.push_back(*alg);
        }
    }
    c.l_a = static_cast<int>(map.get_int("equalizer.l_a", c.l_a));
    c.l_c = static_cast<int>(map.get_int("equalizer.l_c", c.l_c));
    c.h_f = static_cast<int>(map.get_int("equalizer.h_f", c.h_f));
    c.mu = map.get_double("equalizer.mu", c.mu);
    c.mu_feedback = map.get_double("equalizer.mu_feedback", c.mu_feedback);
    c.a = map.get_double("equalizer.a", c.a);
    c.a_grid = map.get_double_list("equalizer.a_grid", c.a_grid);

    c.mse_window = static_cast<int>(map.get_int("metrics.mse_window", c.mse_window));
    c.weight_dump_stride =
        static_cast<int>(map.get_int("output.weight_dump", c.weight_dump_stride));

    const auto unknown = map.unconsumed();
    if (!unknown.empty()) {
        std::string msg = "config: unknown key(s):";
        for (const auto& k : unknown) msg += " " + k;
        throw std::runtime_error(msg);
    }
    c.validate();
    return c;
}

ExperimentConfig ExperimentConfig::preset(std::string_view name) {
    ExperimentConfig c;
    if (name == "linear-training") {
        c = reference_base();
        c.training_fraction = 1.0;
    } else if (name == "linear-dd") {
        c = reference_base();
        c.training_fraction = 0.1;
    } else if (name == "dfe") {
        c = reference_base();
        c.h_f = 150;
    } else if (name == "snr-sweep") {
        c = reference_base();
        c.sweep = SweepKind::Snr;
    } else if (name == "a-sweep") {
        c = reference_base();
        c.sweep = SweepKind::A;
        c.algorithms = {Algorithm::LCLMA};
    } else if (name == "desk-linear-training") {
        c = desk_base();
        c.training_fraction = 1.0;
    } else if (name == "desk-linear-dd") {
        c = desk_base();
        c.training_fraction = 0.1;
    } else if (name == "desk-dfe") {
        c = desk_base();
        c.h_f = 16;
    } else if (name == "desk-snr-sweep") {
        c = desk_base();
        c.sweep = SweepKind::Snr;
    } else if (name == "desk-a-sweep") {
        c = desk_base();
        c.sweep = SweepKind::A;
        c.algorithms = {Algorithm::LCLMA};
        // regime where the a trade-off is visible at desk scale: small steps
        // leave a = 0.1 transient-limited while a = 10 hovers sign-like
        c.mu = 0.002;
        c.frame_length = 10000;
    } else {
        throw std::invalid_argument("unknown preset '" + std::string(name) + "'");
    }
    c.preset_name = std::string(name);
    return c;
}

std::vector<std::string> ExperimentConfig::preset_names() {
    return {"linear-training", "linear-dd",      "dfe",      "snr-sweep",      "a-sweep",
            "desk-linear-training", "desk-linear-dd", "desk-dfe", "desk-snr-sweep", "desk-a-sweep"};
}

std::uint64_t trial_seed(std::uint64_t master_seed, const CellKey& key, int trial_index) {
    std::uint64_t h = splitmix64(master_seed);
    h = hash_combine(h, hash_string(algorithm_name(key.algorithm)));
    h = hash_double(h, key.snr_db);
    h = hash_double(h, key.a);
    h = hash_combine(h, static_cast<std::uint64_t>(trial_index));
    return h;
}

std::uint64_t config_hash(const ExperimentConfig& config) {
    const std::string serialized = config.to_config().serialize();
    std::string canonical;
    std::size_t pos = 0;
    while (pos < serialized.size()) {
        std::size_t nl = serialized.find('\n', pos);
        if (nl == std::string::npos) nl = serialized.size();
        const std::string_view line(serialized.data() + pos, nl - pos);
        pos = nl + 1;
        if (line.rfind("out =", 0) == 0 || line.rfind("workers =", 0) == 0) continue;
        canonical.append(line);
        canonical += '\n';
    }
    return hash_string(canonical);
}

std::vector<CellKey> experiment_cells(const ExperimentConfig& config) {
    std::vector<CellKey> cells;
    for (Algorithm alg : config.algorithms) {
        switch (config.sweep) {
            case SweepKind::None:
                cells.push_back({alg, config.ebn0_db, config.a});
                break;
            case SweepKind::Snr:
                for (double snr : config.snr_grid_db) cells.push_back({alg, snr, config.a});
                break;
            case SweepKind::A:
                for (double av : config.a_grid) cells.push_back({alg, config.ebn0_db, av});
                break;
        }
    }
    return cells;
}

namespace {

// The full trial pipeline; the observer sees the state after every update.
template <class Observer>
TrialResult run_trial_impl(const ExperimentConfig& config, const CellKey& key, int trial_index,
                           Observer&& observe) {
    config.validate();
    const std::uint64_t seed = trial_seed(config.master_seed, key, trial_index);
    const std::size_t n = config.frame_length;

    SymbolFrame frame =
        config.pattern_random
            ? generate_bits(hash_combine(seed, 1), n, BitPattern::random())
            : generate_bits(hash_combine(seed, 1), n, BitPattern::repeated(config.training_sequence));
    frame.schedule = build_schedule(n, TrainingSchedule{config.training_fraction});

    const NoiseModel noise = snr_to_noise(key.snr_db, config.impulse_ratio, config.nu_i);
    const auto received = apply_channel(frame, config.channel, noise, hash_combine(seed, 2));

    const EqualizerConfig eq = config.equalizer(key.algorithm, key.a);
    EqualizerState state = EqualizerState::make(eq);

    TrialResult res;
    res.seed = seed;
    res.nase_curve.assign(n, 0.0);
    res.mse_curve.assign(n, 0.0);

    // BER region: after the training prefix in decision-directed runs, the
    // final half in full-training runs.
    std::size_t eval_start = n / 2;
    if (config.training_fraction < 1.0) {
        const auto prefix = static_cast<std::size_t>(
            std::ceil(config.training_fraction * static_cast<double>(n)));
        if (prefix < n) eval_start = prefix;
    }

    const auto window = static_cast<std::size_t>(config.mse_window);
    std::vector<double> ring(window, 0.0);
    double win_sum = 0.0;
    double cum = 0.0;
    std::size_t errors = 0, evaluated = 0;
    std::size_t t_stop = n;

    std::vector<double> ext;
    ext.reserve(static_cast<std::size_t>(eq.extended_taps()));
    const bool dfe = eq.feedback > 0;

    for (std::size_t t = 0; t < n; ++t) {
        build_regressor_into(received, t, eq, ext);
        if (dfe) ext.insert(ext.end(), state.decisions.begin(), state.decisions.end());

        const double soft = predict(state, ext);
        if (!std::isfinite(soft)) {
            state.diverged = true;
            t_stop = t;
            break;
        }
        const double dec = quantize(soft);
        const double ref = frame.schedule[t] == Phase::Training ? frame.bits[t] : dec;
        apply_update(state, eq, ext, ref - soft);

        const double err = soft - frame.bits[t];
        const double sq = err * err;
        cum += sq;
        res.nase_curve[t] = cum / static_cast<double>(t + 1);
        const std::size_t slot = t % window;
        if (t >= window) win_sum -= ring[slot];
        ring[slot] = sq;
        win_sum += sq;
        res.mse_curve[t] = win_sum / static_cast<double>(std::min(t + 1, window));
        if (t >= eval_start) {
            ++evaluated;
            if (dec != frame.bits[t]) ++errors;
        }
        if (dfe) push_decision(state, dec);
        observe(t, state);
        if (state.diverged) {
            t_stop = t + 1;
            break;
        }
    }

    if (state.diverged) {
        res.diverged = true;
        const double last_nase = t_stop ? res.nase_curve[t_stop - 1] : 0.0;
        const double last_mse = t_stop ? res.mse_curve[t_stop - 1] : 0.0;
        for (std::size_t t = t_stop; t < n; ++t) {
            res.nase_curve[t] = last_nase;
            res.mse_curve[t] = last_mse;
        }
    }
    res.ber = evaluated ? static_cast<double>(errors) / static_cast<double>(evaluated) : 0.0;
    res.final_nase = res.nase_curve.back();
    return res;
}

}  // namespace

TrialResult run_trial(const ExperimentConfig& config, const CellKey& key, int trial_index) {
    return run_trial_impl(config, key, trial_index, [](std::size_t, const EqualizerState&) {});
}

std::vector<std::vector<double>> weight_trajectory(const ExperimentConfig& config,
                                                   const CellKey& key, int trial_index,
                                                   std::size_t stride) {
    if (stride == 0) throw std::invalid_argument("weight_trajectory: stride must be >= 1");
    std::vector<std::vector<double>> rows;
    run_trial_impl(config, key, trial_index,
                   [&](std::size_t t, const EqualizerState& state) {
                       if (t % stride != 0) return;
                       std::vector<double> row;
                       row.reserve(1 + state.w.size() + state.f.size());
                       row.push_back(static_cast<double>(t));
                       row.insert(row.end(), state.w.begin(), state.w.end());
                       row.insert(row.end(), state.f.begin(), state.f.end());
                       rows.push_back(std::move(row));
                   });
    return rows;
}

ResultBundle run_experiment(const ExperimentConfig& config) {
    config.validate();
    ResultBundle bundle;
    bundle.config = config;
    bundle.config_hash = config_hash(config);

    const auto cells = experiment_cells(config);
    const auto trials = static_cast<std::size_t>(config.trials);
    const std::size_t total = cells.size() * trials;

    struct Slot {
        TrialResult result;
        std::string error;
        bool failed{false};
    };
    std::vector<std::vector<Slot>> slots(cells.size(), std::vector<Slot>(trials));
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < total; i = next.fetch_add(1)) {
            const std::size_t ci = i / trials;
            const std::size_t ti = i % trials;
            try {
                slots[ci][ti].result = run_trial(config, cells[ci], static_cast<int>(ti));
            } catch (const std::exception& ex) {
                slots[ci][ti].failed = true;
                slots[ci][ti].error = ex.what();
            }
        }
    };

    const std::size_t nworkers = std::min<std::size_t>(static_cast<std::size_t>(config.workers),
                                                       std::max<std::size_t>(total, 1));
    if (nworkers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nworkers);
        for (std::size_t i = 0; i < nworkers; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    for (std::size_t ci = 0; ci < cells.size(); ++ci) {
        CellResult cell;
        cell.key = cells[ci];
        for (std::size_t ti = 0; ti < trials; ++ti) {
            cell.trial_seeds.push_back(trial_seed(config.master_seed, cells[ci], static_cast<int>(ti)));
        }
        std::vector<TrialResult> ok;
        for (std::size_t ti = 0; ti < trials; ++ti) {
            if (slots[ci][ti].failed) {
                cell.failed = true;
                if (!cell.error.empty()) cell.error += "; ";
                cell.error += slots[ci][ti].error;
            } else {
                ok.push_back(std::move(slots[ci][ti].result));
            }
        }
        if (!cell.failed) cell.averaged = average_trials(ok);
        bundle.cells.push_back(std::move(cell));
    }
    return bundle;
}

std::string curve_file_name(const CellKey& key) {
    return std::string("curve_") + algorithm_name(key.algorithm) + "_snr" +
           ConfigMap::format_double(key.snr_db) + "_a" + ConfigMap::format_double(key.a) + ".csv";
}

void emit_results(const ResultBundle& bundle, const std::filesystem::path& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
        throw std::runtime_error("cannot create output directory " + out_dir.string() + ": " +
                                 ec.message());
    }

    std::string manifest;
    manifest += "# logeq run manifest\n";
    manifest += std::string("# version ") + kVersion + "\n";
    manifest += "# config_hash " + hex64(bundle.config_hash) + "\n";
    manifest += "# re-run with: logeq simulate --config manifest.txt\n";
    for (const auto& cell : bundle.cells) {
        manifest += std::string("# cell ") + algorithm_name(cell.key.algorithm) +
                    " snr_db=" + ConfigMap::format_double(cell.key.snr_db) +
                    " a=" + ConfigMap::format_double(cell.key.a) + " seeds:";
        for (std::uint64_t s : cell.trial_seeds) manifest += " " + hex64(s);
        manifest += '\n';
    }
    manifest += bundle.config.to_config().serialize();
    write_file(out_dir / "manifest.txt", manifest);

    if (bundle.cells.empty()) return;

    std::string summary = "algorithm,snr_db,a,trials_used,diverged,ber,ber_stderr,final_nase,status\n";
    for (const auto& cell : bundle.cells) {
        const auto& avg = cell.averaged;
        summary += algorithm_name(cell.key.algorithm);
        summary += ',' + ConfigMap::format_double(cell.key.snr_db);
        summary += ',' + ConfigMap::format_double(cell.key.a);
        if (cell.failed) {
            summary += ",0,0,nan,nan,nan,failed\n";
            continue;
        }
        summary += ',' + std::to_string(avg.trials_used);
        summary += ',' + std::to_string(avg.diverged_count);
        if (avg.all_diverged) {
            summary += ",nan,nan,nan,all_diverged\n";
            continue;
        }
        summary += ',' + ConfigMap::format_double(avg.ber_mean);
        summary += ',' + ConfigMap::format_double(avg.ber_stderr);
        summary += ',' + ConfigMap::format_double(avg.final_nase);
        summary += ",ok\n";
    }
    write_file(out_dir / "summary.csv", summary);

    for (const auto& cell : bundle.cells) {
        if (cell.failed || cell.averaged.all_diverged) continue;
        const auto& avg = cell.averaged;
        std::string csv = "index,nase,windowed_mse\n";
        const std::size_t n = avg.nase_curve.size();
        const auto step = static_cast<std::size_t>(bundle.config.curve_decimate);
        for (std::size_t t = 0; t < n; t += step) {
            csv += std::to_string(t) + ',' + ConfigMap::format_double(avg.nase_curve[t]) + ',' +
                   ConfigMap::format_double(avg.mse_curve[t]) + '\n';
        }
        if ((n - 1) % step != 0) {
            csv += std::to_string(n - 1) + ',' + ConfigMap::format_double(avg.nase_curve[n - 1]) +
                   ',' + ConfigMap::format_double(avg.mse_curve[n - 1]) + '\n';
        }
        write_file(out_dir / curve_file_name(cell.key), csv);
    }

    if (bundle.config.weight_dump_stride > 0) {
        for (const auto& cell : bundle.cells) {
            if (cell.failed) continue;
            const auto rows = weight_trajectory(
                bundle.config, cell.key, 0,
                static_cast<std::size_t>(bundle.config.weight_dump_stride));
            const EqualizerConfig eq = bundle.config.equalizer(cell.key.algorithm, cell.key.a);
            std::string csv = "t";
            for (int i = 0; i < eq.forward_taps(); ++i) csv += ",w" + std::to_string(i);
            for (int j = 0; j < eq.feedback; ++j) csv += ",f" + std::to_string(j);
            csv += '\n';
            for (const auto& row : rows) {
                csv += std::to_string(static_cast<std::size_t>(row[0]));
                for (std::size_t i = 1; i < row.size(); ++i) {
                    csv += ',' + ConfigMap::format_double(row[i]);
                }
                csv += '\n';
            }
            std::string name = curve_file_name(cell.key);
            name.replace(0, 5, "weights");  // curve_... -> weights_...
            write_file(out_dir / name, csv);
        }
    }
}

}  // namespace logeq
