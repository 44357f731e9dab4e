#include "logeq/analysis.hpp"

#include <cmath>
#include <stdexcept>

#include "logeq/rng.hpp"
#include "logeq/signal.hpp"

namespace logeq {

namespace {

// Gaussian elimination with partial pivoting; A is dense row-major n x n.
std::vector<double> solve_linear(std::vector<double> a, std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t row = col + 1; row < n; ++row) {
            if (std::abs(a[row * n + col]) > std::abs(a[pivot * n + col])) pivot = row;
        }
        if (a[pivot * n + col] == 0.0) throw std::runtime_error("solve_linear: singular system");
        if (pivot != col) {
            for (std::size_t k = col; k < n; ++k) std::swap(a[col * n + k], a[pivot * n + k]);
            std::swap(b[col], b[pivot]);
        }
        const double d = a[col * n + col];
        for (std::size_t row = col + 1; row < n; ++row) {
            const double factor = a[row * n + col] / d;
            if (factor == 0.0) continue;
            for (std::size_t k = col; k < n; ++k) a[row * n + k] -= factor * a[col * n + k];
            b[row] -= factor * b[col];
        }
    }
    std::vector<double> x(n, 0.0);
    for (std::size_t i = n; i-- > 0;) {
        double acc = b[i];
        for (std::size_t k = i + 1; k < n; ++k) acc -= a[i * n + k] * x[k];
        x[i] = acc / (a[i * n + i]);
    }
    return x;
}

// Normal-equation fit of bits from regressors over [begin, end).
std::vector<double> fit_window(std::span<const double> received, std::span<const double> bits,
                               const EqualizerConfig& eq, std::size_t begin, std::size_t end) {
    const auto h = static_cast<std::size_t>(eq.forward_taps());
    std::vector<double> gram(h * h, 0.0);
    std::vector<double> cross(h, 0.0);
    std::vector<double> reg;
    for (std::size_t t = begin; t < end; ++t) {
        build_regressor_into(received, t, eq, reg);
        for (std::size_t i = 0; i < h; ++i) {
            cross[i] += reg[i] * bits[t];
            for (std::size_t j = i; j < h; ++j) gram[i * h + j] += reg[i] * reg[j];
        }
    }
    for (std::size_t i = 0; i < h; ++i) {
        for (std::size_t j = 0; j < i; ++j) gram[i * h + j] = gram[j * h + i];
    }
    double trace = 0.0;
    for (std::size_t i = 0; i < h; ++i) trace += gram[i * h + i];
    const double ridge = 1e-10 * trace / static_cast<double>(h);
    for (std::size_t i = 0; i < h; ++i) gram[i * h + i] += ridge;
    return solve_linear(std::move(gram), std::move(cross));
}

}  // namespace

void TrackingScenario::validate() const {
    if (!(trace_r >= 0.0) || !(trace_a >= 0.0)) {
        throw std::invalid_argument("TrackingScenario: traces must be >= 0");
    }
    if (!(mu > 0.0) || !(a > 0.0)) {
        throw std::invalid_argument("TrackingScenario: mu and a must be > 0");
    }
    if (!(sigma_v_sq >= 0.0) || !(sigma_n_sq >= sigma_v_sq)) {
        throw std::invalid_argument("TrackingScenario: need sigma_n^2 >= sigma_v^2 >= 0");
    }
    if (!(nu_i >= 0.0 && nu_i <= 1.0)) {
        throw std::invalid_argument("TrackingScenario: nu_i must lie in [0,1]");
    }
    if (h_f < 0) throw std::invalid_argument("TrackingScenario: h_f must be >= 0");
}

double emse_lclma_gaussian(const TrackingScenario& s) {
    s.validate();
    const double load = s.mu * s.a * s.trace_r;
    const double den = 2.0 - load;
    if (!(den > 0.0)) {
        throw std::domain_error("emse_lclma_gaussian: stability bound mu*a*Tr(R) < 2 violated");
    }
    const double num = load * s.sigma_n_sq + s.trace_a / (s.mu * s.a);
    return num / den;
}

double emse_lclma_impulsive(const TrackingScenario& s) {
    s.validate();
    const double trace = s.trace_r + static_cast<double>(s.h_f);
    const double load = s.a * s.mu * trace;
    double den = s.a * (1.0 - s.nu_i) * (2.0 - load);
    if (s.nu_i > 0.0) {
        const double sigma_n = std::sqrt(s.sigma_n_sq);
        if (!(sigma_n > 0.0)) {
            throw std::invalid_argument("emse_lclma_impulsive: sigma_n must be > 0 when nu_i > 0");
        }
        den += std::sqrt(8.0 / M_PI) * s.nu_i / sigma_n;
    }
    if (!(den > 0.0)) {
        throw std::domain_error("emse_lclma_impulsive: non-positive denominator (stability bound)");
    }
    const double num =
        s.mu * trace * (s.nu_i + s.a * s.a * (1.0 - s.nu_i) * s.sigma_v_sq) + s.trace_a / s.mu;
    return num / den;
}

double steady_mse(const TrackingScenario& s, double eta) {
    s.validate();
    if (!(eta >= 0.0)) throw std::invalid_argument("steady_mse: eta must be >= 0");
    return eta + s.nu_i * s.sigma_n_sq + (1.0 - s.nu_i) * s.sigma_v_sq;
}

HFunctions h_functions(const NoiseModel& noise, double sigma_ea_sq, double a, CostKind phi) {
    if (!(sigma_ea_sq >= 0.0)) throw std::invalid_argument("h_functions: sigma_ea^2 must be >= 0");
    noise.validate();
    const double e2 = sigma_ea_sq + (1.0 - noise.nu_i) * noise.sigma_v_sq +
                      noise.nu_i * noise.sigma_n_sq();
    if (!(e2 > 0.0)) throw std::invalid_argument("h_functions: degenerate error distribution");
    HFunctions out;
    out.h_g = mixture_expectation(noise, sigma_ea_sq,
                                  [&](double e) { return e * log_cost_gain(e, a, phi); }) /
              e2;
    out.h_u = mixture_expectation(noise, sigma_ea_sq, [&](double e) {
        const double g = log_cost_gain(e, a, phi);
        return g * g;
    });
    return out;
}

HFunctions h_functions_mc(const NoiseModel& noise, double sigma_ea_sq, double a, CostKind phi,
                          std::size_t samples, std::uint64_t seed) {
    if (!(sigma_ea_sq >= 0.0)) throw std::invalid_argument("h_functions_mc: sigma_ea^2 must be >= 0");
    noise.validate();
    if (samples == 0) throw std::invalid_argument("h_functions_mc: samples must be >= 1");

    auto rng = make_rng(seed);
    std::normal_distribution<double> ea_dist(0.0, sigma_ea_sq > 0.0 ? std::sqrt(sigma_ea_sq) : 1.0);
    std::normal_distribution<double> gauss(0.0,
                                           noise.sigma_v_sq > 0.0 ? std::sqrt(noise.sigma_v_sq) : 1.0);
    std::normal_distribution<double> imp(
        0.0, noise.sigma_gamma_sq > 0.0 ? std::sqrt(noise.sigma_gamma_sq) : 1.0);
    std::bernoulli_distribution gate(noise.nu_i);

    double sum_eg = 0.0, sum_gg = 0.0, sum_ee = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
        const double ea = sigma_ea_sq > 0.0 ? ea_dist(rng) : 0.0;
        double n = noise.sigma_v_sq > 0.0 ? gauss(rng) : 0.0;
        if (noise.nu_i > 0.0 && gate(rng) && noise.sigma_gamma_sq > 0.0) n += imp(rng);
        const double e = ea + n;
        const double g = log_cost_gain(e, a, phi);
        sum_eg += e * g;
        sum_gg += g * g;
        sum_ee += e * e;
    }
    if (!(sum_ee > 0.0)) throw std::runtime_error("h_functions_mc: degenerate sample");
    return {sum_eg / sum_ee, sum_gg / static_cast<double>(samples)};
}

std::vector<double> fit_wiener_taps(const ChannelModel& channel, const EqualizerConfig& eq,
                                    std::size_t samples, std::uint64_t seed) {
    eq.validate();
    if (samples < static_cast<std::size_t>(eq.forward_taps()) * 4) {
        throw std::invalid_argument("fit_wiener_taps: record too short for the tap count");
    }
    const auto frame = generate_bits(hash_combine(seed, 0xf17b175ull), samples, BitPattern::random());
    const auto clean = apply_channel(frame, channel, NoiseModel::none(),
                                     hash_combine(seed, 0xc1ea7ull));
    return fit_window(clean, frame.bits, eq, 0, samples);
}

EmseEstimate mc_steady_state_emse(const EmseRunConfig& config) {
    config.eq.validate();
    config.channel.validate();
    config.noise.validate();
    if (config.eq.feedback != 0) {
        throw std::invalid_argument("mc_steady_state_emse: oracle covers linear equalizers only");
    }
    if (config.trials < 1) throw std::invalid_argument("mc_steady_state_emse: trials must be >= 1");
    if (config.burn_in >= config.samples) {
        throw std::invalid_argument("mc_steady_state_emse: burn-in must be shorter than the run");
    }

    const auto h = static_cast<std::size_t>(config.eq.forward_taps());
    const bool stationary = config.channel.drift_std == 0.0;

    std::vector<double> w_star_global;
    if (stationary) {
        w_star_global = fit_wiener_taps(config.channel, config.eq, config.fit_samples,
                                        hash_combine(config.seed, 0x57a7ull));
    }

    EmseEstimate est;
    double emse_sum = 0.0, mse_sum = 0.0, trace_sum = 0.0, trace_a_sum = 0.0;
    std::size_t trace_a_pairs = 0;

    for (int trial = 0; trial < config.trials; ++trial) {
        const std::uint64_t trial_seed = hash_combine(config.seed, 0x7101ull + trial);
        const auto frame =
            generate_bits(hash_combine(trial_seed, 1), config.samples, BitPattern::random());
        const auto clean = apply_channel(frame, config.channel, NoiseModel::none(),
                                         hash_combine(trial_seed, 2));
        const auto noise_seq =
            sample_noise(config.noise, config.samples, hash_combine(trial_seed, 3));

        // Per-window optima for a drifting channel.
        std::vector<std::vector<double>> w_windows;
        std::size_t window = config.samples;
        if (!stationary) {
            window = std::min(config.window, config.samples);
            const std::size_t count = config.samples / window;
            for (std::size_t m = 0; m < count; ++m) {
                w_windows.push_back(
                    fit_window(clean, frame.bits, config.eq, m * window, (m + 1) * window));
            }
            for (std::size_t m = 0; m + 1 < w_windows.size(); ++m) {
                double d2 = 0.0;
                for (std::size_t i = 0; i < h; ++i) {
                    const double d = w_windows[m + 1][i] - w_windows[m][i];
                    d2 += d * d;
                }
                trace_a_sum += d2 / static_cast<double>(window);
                ++trace_a_pairs;
            }
        }

        EqualizerState state = EqualizerState::make(config.eq);
        std::vector<double> reg;
        double ea_acc = 0.0, e_acc = 0.0, trace_acc = 0.0;
        std::size_t measured = 0;
        bool diverged = false;

        for (std::size_t t = 0; t < config.samples; ++t) {
            build_regressor_into(clean, t, config.eq, reg);
            const double soft = predict(state, reg);
            if (!std::isfinite(soft)) {
                diverged = true;
                break;
            }
            const double desired = frame.bits[t] + noise_seq[t];
            const double e = desired - soft;
            if (t >= config.burn_in) {
                const std::vector<double>& w_star =
                    stationary ? w_star_global
                               : w_windows[std::min(t / window, w_windows.size() - 1)];
                double ea = -soft;
                double rr = 0.0;
                for (std::size_t i = 0; i < h; ++i) {
                    ea += w_star[i] * reg[i];
                    rr += reg[i] * reg[i];
                }
                ea_acc += ea * ea;
                e_acc += e * e;
                trace_acc += rr;
                ++measured;
            }
            apply_update(state, config.eq, reg, e);
            if (state.diverged) {
                diverged = true;
                break;
            }
        }

        if (diverged || measured == 0) {
            ++est.diverged;
            continue;
        }
        emse_sum += ea_acc / static_cast<double>(measured);
        mse_sum += e_acc / static_cast<double>(measured);
        trace_sum += trace_acc / static_cast<double>(measured);
        ++est.trials_used;
    }

    if (est.trials_used == 0) {
        throw std::runtime_error("mc_steady_state_emse: every trial diverged during burn-in");
    }
    const auto k = static_cast<double>(est.trials_used);
    est.emse = emse_sum / k;
    est.mse = mse_sum / k;
    est.trace_r = trace_sum / k;
    est.trace_a = trace_a_pairs > 0 ? trace_a_sum / static_cast<double>(trace_a_pairs) : 0.0;
    return est;
}

double estimate_trace_a(const ChannelModel& channel, const EqualizerConfig& eq,
                        std::size_t windows, std::size_t window_len, std::uint64_t seed) {
    eq.validate();
    channel.validate();
    if (windows < 2) throw std::invalid_argument("estimate_trace_a: need at least 2 windows");
    const std::size_t samples = windows * window_len;
    const auto frame = generate_bits(hash_combine(seed, 1), samples, BitPattern::random());
    const auto clean = apply_channel(frame, channel, NoiseModel::none(), hash_combine(seed, 2));

    const auto h = static_cast<std::size_t>(eq.forward_taps());
    std::vector<double> prev;
    double acc = 0.0;
    for (std::size_t m = 0; m < windows; ++m) {
        auto w = fit_window(clean, frame.bits, eq, m * window_len, (m + 1) * window_len);
        if (!prev.empty()) {
            double d2 = 0.0;
            for (std::size_t i = 0; i < h; ++i) {
                const double d = w[i] - prev[i];
                d2 += d * d;
            }
            acc += d2 / static_cast<double>(window_len);
        }
        prev = std::move(w);
    }
    return acc / static_cast<double>(windows - 1);
}

}  // namespace logeq
