#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "logeq/channel.hpp"
#include "logeq/equalizer.hpp"

namespace logeq {

// Inputs to the closed-form steady-state / tracking predictors.
struct TrackingScenario {
    double trace_r{0.0};     // Tr(R) of the regressor autocorrelation
    double trace_a{0.0};     // Tr(A) of the random-walk increment covariance
    double sigma_v_sq{0.0};  // Gaussian noise variance
    double sigma_n_sq{0.0};  // total mixture variance (= sigma_v_sq when nu_i = 0)
    double nu_i{0.0};
    double mu{0.0};
    double a{1.0};
    int h_f{0};              // feedback length, 0 for a linear equalizer

    void validate() const;
};

// Tracking EMSE of LCLMA under Gaussian noise:
//   eta = (mu a Tr(R) sigma_n^2 + Tr(A)/(mu a)) / (2 - mu a Tr(R)).
// Throws std::domain_error when mu a Tr(R) >= 2.
double emse_lclma_gaussian(const TrackingScenario& s);

// Tracking EMSE of LCLMA under the Bernoulli-Gaussian mixture:
//   eta* = (mu T (nu + a^2 (1-nu) sigma_v^2) + Tr(A)/mu)
//        / (a (1-nu) (2 - a mu T) + sqrt(8/pi) nu / sigma_n)
// with T = Tr(R) + h_f (the DFE trace substitution).
double emse_lclma_impulsive(const TrackingScenario& s);

// Limiting MSE: eta + nu sigma_n^2 + (1-nu) sigma_v^2.
double steady_mse(const TrackingScenario& s, double eta);

struct HFunctions {
    double h_g{0.0};  // E[e g(e)] / E[e^2]
    double h_u{0.0};  // E[g^2(e)]
};

// Expectations under e = e_a + n, e_a ~ N(0, sigma_ea_sq), n from the mixture.
// Quadrature (composite Simpson per mixture component, +-12 sigma).
HFunctions h_functions(const NoiseModel& noise, double sigma_ea_sq, double a, CostKind phi);
HFunctions h_functions_mc(const NoiseModel& noise, double sigma_ea_sq, double a, CostKind phi,
                          std::size_t samples, std::uint64_t seed);

// E[f(e)] under the same error model, for arbitrary functionals.
template <class F>
double mixture_expectation(const NoiseModel& noise, double sigma_ea_sq, F&& f) {
    noise.validate();
    struct Component {
        double weight;
        double variance;
    };
    const Component comps[2] = {
        {1.0 - noise.nu_i, sigma_ea_sq + noise.sigma_v_sq},
        {noise.nu_i, sigma_ea_sq + noise.sigma_n_sq()},
    };
    double total = 0.0;
    for (const auto& c : comps) {
        if (c.weight <= 0.0) continue;
        if (c.variance <= 0.0) {
            total += c.weight * f(0.0);
            continue;
        }
        const double s = std::sqrt(c.variance);
        const double half = 12.0 * s;
        const int intervals = 20000;  // even
        const double step = 2.0 * half / intervals;
        const double inv_norm = 1.0 / (std::sqrt(2.0 * M_PI) * s);
        auto integrand = [&](double x) {
            return f(x) * std::exp(-x * x / (2.0 * c.variance)) * inv_norm;
        };
        double acc = integrand(-half) + integrand(half);
        for (int i = 1; i < intervals; ++i) {
            const double x = -half + step * i;
            acc += integrand(x) * ((i % 2 == 1) ? 4.0 : 2.0);
        }
        total += c.weight * acc * step / 3.0;
    }
    return total;
}

// Monte-Carlo steady-state EMSE oracle. Realizes the tracking-analysis model:
// the regressor is built from the noiseless channel output and the mixture
// noise enters through the training reference, d(t) = b(t) + n(t), so that
// e(t) = e_a(t) + n(t) with n independent of the regressor. w* comes from a
// least-squares fit on a long noiseless record (refit per window when the
// channel drifts).
struct EmseRunConfig {
    ChannelModel channel;
    NoiseModel noise;
    EqualizerConfig eq;
    std::size_t samples{200000};
    std::size_t burn_in{50000};
    int trials{20};
    std::uint64_t seed{1};
    std::size_t fit_samples{200000};
    std::size_t window{10000};  // w* refit window for drifting channels
};

struct EmseEstimate {
    double emse{0.0};
    double mse{0.0};
    double trace_r{0.0};  // empirical mean ||r||^2
    double trace_a{0.0};  // estimated increment trace (0 for a stationary channel)
    int diverged{0};
    int trials_used{0};
};

EmseEstimate mc_steady_state_emse(const EmseRunConfig& config);

// Least-squares fit of b(t) from the noiseless regressor (empirical Wiener
// solution of the noise-free problem).
std::vector<double> fit_wiener_taps(const ChannelModel& channel, const EqualizerConfig& eq,
                                    std::size_t samples, std::uint64_t seed);

// Empirical Tr(A) of the optimal-filter random walk induced by tap drift,
// measured from windowed refits of w* on one long noiseless record.
double estimate_trace_a(const ChannelModel& channel, const EqualizerConfig& eq,
                        std::size_t windows, std::size_t window_len, std::uint64_t seed);

}  // namespace logeq
