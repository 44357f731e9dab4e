#include "logeq/equalizer.hpp"

#include <cmath>
#include <stdexcept>

namespace logeq {

namespace {

constexpr double kMinRegressorNorm = 1e-12;
constexpr double kDivergenceNormSq = 1e24;  // ||w|| > 1e12

double sign_of(double e) {
    if (e > 0.0) return 1.0;
    if (e < 0.0) return -1.0;
    return 0.0;  // subgradient of |e| at 0
}

void refresh_divergence(EqualizerState& state) {
    double sumsq = 0.0;
    for (double v : state.w) sumsq += v * v;
    for (double v : state.f) sumsq += v * v;
    if (!std::isfinite(sumsq) || sumsq > kDivergenceNormSq) state.diverged = true;
}

void axpy(std::vector<double>& w, double scale, std::span<const double> r) {
    if (r.size() != w.size()) {
        throw std::invalid_argument("equalizer step: regressor length must match tap count");
    }
    for (std::size_t i = 0; i < w.size(); ++i) w[i] += scale * r[i];
}

double norm_of(std::span<const double> r) {
    double sumsq = 0.0;
    for (double v : r) sumsq += v * v;
    return std::sqrt(sumsq);
}

}  // namespace

const char* algorithm_name(Algorithm alg) {
    switch (alg) {
        case Algorithm::SA: return "sa";
        case Algorithm::LMS: return "lms";
        case Algorithm::LMF: return "lmf";
        case Algorithm::LCLMS: return "lclms";
        case Algorithm::LCLMA: return "lclma";
        case Algorithm::NLCLMA: return "nlclma";
    }
    return "?";
}

std::optional<Algorithm> algorithm_from_name(std::string_view name) {
    if (name == "sa") return Algorithm::SA;
    if (name == "lms") return Algorithm::LMS;
    if (name == "lmf") return Algorithm::LMF;
    if (name == "lclms") return Algorithm::LCLMS;
    if (name == "lclma") return Algorithm::LCLMA;
    if (name == "nlclma") return Algorithm::NLCLMA;
    return std::nullopt;
}

void EqualizerConfig::validate() const {
    if (anti_causal < 0 || causal < 0 || feedback < 0) {
        throw std::invalid_argument("EqualizerConfig: tap counts must be >= 0");
    }
    if (!(mu > 0.0) || !(a > 0.0)) {
        throw std::invalid_argument("EqualizerConfig: mu and a must be > 0");
    }
    if (feedback > 0 && !(mu_feedback > 0.0)) {
        throw std::invalid_argument("EqualizerConfig: mu_feedback must be > 0 for a DFE");
    }
}

EqualizerState EqualizerState::make(const EqualizerConfig& config) {
    config.validate();
    EqualizerState state;
    state.w.assign(static_cast<std::size_t>(config.forward_taps()), 0.0);
    state.f.assign(static_cast<std::size_t>(config.feedback), 0.0);
    state.decisions.assign(static_cast<std::size_t>(config.feedback), 0.0);
    return state;
}

void build_regressor_into(std::span<const double> received, std::size_t t,
                          const EqualizerConfig& config, std::vector<double>& out) {
    if (t >= received.size()) throw std::out_of_range("build_regressor: index outside frame");
    const int h = config.forward_taps();
    out.resize(static_cast<std::size_t>(h));
    const auto len = static_cast<std::int64_t>(received.size());
    for (int i = 0; i < h; ++i) {
        const std::int64_t idx = static_cast<std::int64_t>(t) + config.anti_causal - i;
        out[static_cast<std::size_t>(i)] =
            (idx >= 0 && idx < len) ? received[static_cast<std::size_t>(idx)] : 0.0;
    }
}

std::vector<double> build_regressor(std::span<const double> received, std::size_t t,
                                    const EqualizerConfig& config) {
    std::vector<double> out;
    build_regressor_into(received, t, config, out);
    return out;
}

std::vector<double> dfe_extend(std::span<const double> received, std::size_t t,
                               const EqualizerConfig& config,
                               std::span<const double> past_decisions) {
    if (past_decisions.size() != static_cast<std::size_t>(config.feedback)) {
        throw std::invalid_argument("dfe_extend: need exactly h_f past decisions");
    }
    auto ext = build_regressor(received, t, config);
    ext.insert(ext.end(), past_decisions.begin(), past_decisions.end());
    return ext;
}

double predict(const EqualizerState& state, std::span<const double> regressor) {
    const std::size_t h = state.w.size();
    const std::size_t hf = state.f.size();
    double acc = 0.0;
    if (regressor.size() == h) {
        for (std::size_t i = 0; i < h; ++i) acc += state.w[i] * regressor[i];
    } else if (regressor.size() == h + hf) {
        for (std::size_t i = 0; i < h; ++i) acc += state.w[i] * regressor[i];
        for (std::size_t j = 0; j < hf; ++j) acc += state.f[j] * regressor[h + j];
    } else {
        throw std::invalid_argument("predict: regressor length must match tap count");
    }
    return acc;
}

double log_cost_gain(double e, double a, CostKind phi) {
    if (!(a > 0.0)) throw std::invalid_argument("log_cost_gain: a must be > 0");
    switch (phi) {
        case CostKind::SquaredError: {
            const double s = a * e * e;
            if (!std::isfinite(s)) return 2.0 * e;  // saturated: a*phi >> 1
            return 2.0 * e * (s / (1.0 + s));
        }
        case CostKind::AbsError: {
            const double num = a * e;
            if (!std::isfinite(num)) return sign_of(e);
            return num / (1.0 + a * std::abs(e));
        }
    }
    throw std::invalid_argument("log_cost_gain: bad cost kind");
}

double update_gain(Algorithm alg, double e, double a) {
    switch (alg) {
        case Algorithm::SA: return sign_of(e);
        case Algorithm::LMS: return e;
        case Algorithm::LMF: return e * e * e;
        case Algorithm::LCLMS: return log_cost_gain(e, a, CostKind::SquaredError);
        case Algorithm::LCLMA: return log_cost_gain(e, a, CostKind::AbsError);
        case Algorithm::NLCLMA: break;
    }
    throw std::invalid_argument("update_gain: normalized LCLMA needs the regressor norm");
}

void step_lclms(EqualizerState& state, std::span<const double> regressor, double e,
                double mu, double a) {
    axpy(state.w, mu * log_cost_gain(e, a, CostKind::SquaredError), regressor);
    refresh_divergence(state);
}

void step_lclma(EqualizerState& state, std::span<const double> regressor, double e,
                double mu, double a) {
    axpy(state.w, mu * log_cost_gain(e, a, CostKind::AbsError), regressor);
    refresh_divergence(state);
}

void step_baseline(EqualizerState& state, std::span<const double> regressor, double e,
                   double mu, Algorithm kind) {
    if (kind != Algorithm::SA && kind != Algorithm::LMS && kind != Algorithm::LMF) {
        throw std::invalid_argument("step_baseline: kind must be SA, LMS or LMF");
    }
    axpy(state.w, mu * update_gain(kind, e, 1.0), regressor);
    refresh_divergence(state);
}

void step_normalized_lclma(EqualizerState& state, std::span<const double> regressor, double e,
                           double mu, double a) {
    const double norm = norm_of(regressor);
    if (norm < kMinRegressorNorm) return;  // an all-zero regressor carries no information
    const double gain = a * e / (norm * (norm + a * std::abs(e)));
    axpy(state.w, mu * gain, regressor);
    refresh_divergence(state);
}

void apply_update(EqualizerState& state, const EqualizerConfig& config,
                  std::span<const double> extended_regressor, double e) {
    const std::size_t h = state.w.size();
    const std::size_t hf = state.f.size();
    if (extended_regressor.size() != h + hf) {
        throw std::invalid_argument("apply_update: regressor length must match extended tap count");
    }
    double gain = 0.0;
    if (config.algorithm == Algorithm::NLCLMA) {
        const double norm = norm_of(extended_regressor);
        if (norm < kMinRegressorNorm) return;
        gain = config.a * e / (norm * (norm + config.a * std::abs(e)));
    } else {
        gain = update_gain(config.algorithm, e, config.a);
    }
    for (std::size_t i = 0; i < h; ++i) state.w[i] += config.mu * gain * extended_regressor[i];
    for (std::size_t j = 0; j < hf; ++j) {
        state.f[j] += config.mu_feedback * gain * extended_regressor[h + j];
    }
    refresh_divergence(state);
}

void push_decision(EqualizerState& state, double decision) {
    if (state.decisions.empty()) return;
    for (std::size_t i = state.decisions.size() - 1; i > 0; --i) {
        state.decisions[i] = state.decisions[i - 1];
    }
    state.decisions[0] = decision;
}

}  // namespace logeq
