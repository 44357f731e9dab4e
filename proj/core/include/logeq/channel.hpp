#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "logeq/signal.hpp"

namespace logeq {

// Time-varying FIR channel h(t, tau), tau = -anti_causal .. causal.
// The tap for tau = -anti_causal is taps.front(). When drift_std > 0 every tap
// performs an independent Gaussian random walk between samples.
struct ChannelModel {
    int anti_causal{0};
    int causal{0};
    std::vector<double> taps;
    double drift_std{0.0};

    int length() const { return anti_causal + causal + 1; }
    void validate() const;

    static ChannelModel identity();
    static ChannelModel fir(int anti_causal, std::vector<double> taps, double drift_std = 0.0);
};

// Bernoulli-Gaussian mixture: n(t) = v(t) + z(t) * gamma(t) with
// v ~ N(0, sigma_v_sq), gamma ~ N(0, sigma_gamma_sq), P(z = 1) = nu_i.
struct NoiseModel {
    double sigma_v_sq{0.0};
    double sigma_gamma_sq{0.0};
    double nu_i{0.0};

    double sigma_n_sq() const { return sigma_v_sq + sigma_gamma_sq; }
    void validate() const;

    static NoiseModel none() { return {}; }
    static NoiseModel gaussian(double variance) { return {variance, 0.0, 0.0}; }
};

struct NoiseDraw {
    std::vector<double> values;
    std::vector<std::uint8_t> impulse;  // z(t)
};

struct ChannelOutput {
    std::vector<double> received;
    std::vector<double> noiseless;
};

std::vector<double> sample_noise(const NoiseModel& noise, std::size_t n, std::uint64_t seed);
NoiseDraw sample_noise_detailed(const NoiseModel& noise, std::size_t n, std::uint64_t seed);

// Mixture density (1-nu) N(x; 0, sigma_v^2) + nu N(x; 0, sigma_n^2).
double noise_pdf(const NoiseModel& noise, double x);

// E_b/N_0 in dB to a noise model, for unit-energy BPSK: sigma_v^2 = 10^(-dB/10)/2,
// sigma_gamma^2 = impulse_ratio * sigma_v^2.
NoiseModel snr_to_noise(double ebn0_db, double impulse_ratio, double nu_i);

// r(t) = sum_tau b(t - tau) h(t, tau) + n(t), zero padding outside the frame.
ChannelOutput apply_channel_full(const SymbolFrame& frame, const ChannelModel& channel,
                                 const NoiseModel& noise, std::uint64_t seed);
std::vector<double> apply_channel(const SymbolFrame& frame, const ChannelModel& channel,
                                  const NoiseModel& noise, std::uint64_t seed);

// One real per line (or whitespace separated), ordered tau = -N1 .. N2.
std::vector<double> load_channel_taps(const std::filesystem::path& file);

}  // namespace logeq
