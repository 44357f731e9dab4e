#include "logeq/channel.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "logeq/rng.hpp"

namespace logeq {

namespace {

constexpr std::uint64_t kNoiseStream = 0x6e6f6973ull;
constexpr std::uint64_t kDriftStream = 0x64726966ull;

double gaussian_pdf(double x, double variance) {
    return std::exp(-x * x / (2.0 * variance)) / std::sqrt(2.0 * M_PI * variance);
}

}  // namespace

void ChannelModel::validate() const {
    if (anti_causal < 0 || causal < 0) {
        throw std::invalid_argument("ChannelModel: extents must be >= 0");
    }
    if (static_cast<int>(taps.size()) != length()) {
        throw std::invalid_argument("ChannelModel: tap count must equal N1 + N2 + 1");
    }
    if (!(drift_std >= 0.0) || !std::isfinite(drift_std)) {
        throw std::invalid_argument("ChannelModel: drift std must be finite and >= 0");
    }
    bool any = false;
    for (double h : taps) {
        if (!std::isfinite(h)) throw std::invalid_argument("ChannelModel: taps must be finite");
        if (h != 0.0) any = true;
    }
    if (!any) throw std::invalid_argument("ChannelModel: at least one initial tap must be nonzero");
}

ChannelModel ChannelModel::identity() {
    return {0, 0, {1.0}, 0.0};
}

ChannelModel ChannelModel::fir(int anti_causal, std::vector<double> taps, double drift_std) {
    ChannelModel ch;
    ch.anti_causal = anti_causal;
    ch.causal = static_cast<int>(taps.size()) - anti_causal - 1;
    ch.taps = std::move(taps);
    ch.drift_std = drift_std;
    ch.validate();
    return ch;
}

void NoiseModel::validate() const {
    if (!(sigma_v_sq >= 0.0) || !std::isfinite(sigma_v_sq)) {
        throw std::invalid_argument("NoiseModel: sigma_v^2 must be finite and >= 0");
    }
    if (!(sigma_gamma_sq >= 0.0) || !std::isfinite(sigma_gamma_sq)) {
        throw std::invalid_argument("NoiseModel: sigma_gamma^2 must be finite and >= 0");
    }
    if (!(nu_i >= 0.0 && nu_i <= 1.0)) {
        throw std::invalid_argument("NoiseModel: nu_i must lie in [0,1]");
    }
}

NoiseDraw sample_noise_detailed(const NoiseModel& noise, std::size_t n, std::uint64_t seed) {
    noise.validate();
    if (n == 0) throw std::invalid_argument("sample_noise: n must be >= 1");
    NoiseDraw draw;
    draw.values.resize(n);
    draw.impulse.assign(n, 0);

    auto rng = make_rng(seed);
    std::normal_distribution<double> gauss(0.0, noise.sigma_v_sq > 0.0 ? std::sqrt(noise.sigma_v_sq) : 1.0);
    std::normal_distribution<double> imp(0.0, noise.sigma_gamma_sq > 0.0 ? std::sqrt(noise.sigma_gamma_sq) : 1.0);
    std::bernoulli_distribution gate(noise.nu_i);

    for (std::size_t t = 0; t < n; ++t) {
        double v = noise.sigma_v_sq > 0.0 ? gauss(rng) : 0.0;
        bool z = noise.nu_i > 0.0 ? gate(rng) : false;
        double g = (z && noise.sigma_gamma_sq > 0.0) ? imp(rng) : 0.0;
        draw.values[t] = v + g;
        draw.impulse[t] = z ? 1 : 0;
    }
    return draw;
}

std::vector<double> sample_noise(const NoiseModel& noise, std::size_t n, std::uint64_t seed) {
    return sample_noise_detailed(noise, n, seed).values;
}

double noise_pdf(const NoiseModel& noise, double x) {
    noise.validate();
    if (!(noise.sigma_v_sq > 0.0)) {
        throw std::invalid_argument("noise_pdf: sigma_v^2 must be > 0");
    }
    const double nu = noise.nu_i;
    double p = (1.0 - nu) * gaussian_pdf(x, noise.sigma_v_sq);
    if (nu > 0.0) p += nu * gaussian_pdf(x, noise.sigma_n_sq());
    return p;
}

NoiseModel snr_to_noise(double ebn0_db, double impulse_ratio, double nu_i) {
    if (!(impulse_ratio >= 0.0)) {
        throw std::invalid_argument("snr_to_noise: impulse ratio must be >= 0");
    }
    NoiseModel noise;
    noise.sigma_v_sq = std::pow(10.0, -ebn0_db / 10.0) / 2.0;  // E_b = 1, N_0/2 per dimension
    noise.sigma_gamma_sq = impulse_ratio * noise.sigma_v_sq;
    noise.nu_i = nu_i;
    noise.validate();
    return noise;
}

ChannelOutput apply_channel_full(const SymbolFrame& frame, const ChannelModel& channel,
                                 const NoiseModel& noise, std::uint64_t seed) {
    channel.validate();
    if (frame.bits.empty()) throw std::invalid_argument("apply_channel: frame must be nonempty");

    const std::size_t n = frame.bits.size();
    const auto noise_seq = sample_noise(noise, n, hash_combine(seed, kNoiseStream));

    std::vector<double> taps = channel.taps;
    auto drift_rng = make_rng(hash_combine(seed, kDriftStream));
    std::normal_distribution<double> unit(0.0, 1.0);

    ChannelOutput out;
    out.received.resize(n);
    out.noiseless.resize(n);
    const auto len = static_cast<std::int64_t>(n);
    for (std::size_t t = 0; t < n; ++t) {
        double acc = 0.0;
        for (int tau = -channel.anti_causal; tau <= channel.causal; ++tau) {
            const std::int64_t idx = static_cast<std::int64_t>(t) - tau;
            if (idx >= 0 && idx < len) {
                acc += frame.bits[static_cast<std::size_t>(idx)] * taps[tau + channel.anti_causal];
            }
        }
        out.noiseless[t] = acc;
        out.received[t] = acc + noise_seq[t];
        if (channel.drift_std > 0.0) {
            for (double& h : taps) h += channel.drift_std * unit(drift_rng);
        }
    }
    return out;
}

std::vector<double> apply_channel(const SymbolFrame& frame, const ChannelModel& channel,
                                  const NoiseModel& noise, std::uint64_t seed) {
    return apply_channel_full(frame, channel, noise, seed).received;
}

std::vector<double> load_channel_taps(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot open channel tap file: " + file.string());
    std::vector<double> taps;
    std::string token;
    while (in >> token) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(token, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != token.size() || !std::isfinite(v)) {
            throw std::runtime_error("bad channel tap '" + token + "' in " + file.string());
        }
        taps.push_back(v);
    }
    if (taps.empty()) throw std::runtime_error("empty channel tap file: " + file.string());
    return taps;
}

}  // namespace logeq
