#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace logeq {

// SA, LMS and LMF are the classical baselines; LCLMS/LCLMA add the logarithmic
// cost regularization; NLCLMA is the regressor-normalized LCLMA.
enum class Algorithm { SA, LMS, LMF, LCLMS, LCLMA, NLCLMA };

enum class CostKind { AbsError, SquaredError };

const char* algorithm_name(Algorithm alg);
std::optional<Algorithm> algorithm_from_name(std::string_view name);

struct EqualizerConfig {
    int anti_causal{0};        // L_a
    int causal{0};             // L_c
    int feedback{0};           // h_f, 0 for a linear equalizer
    double mu{0.01};           // feed-forward learning rate
    double mu_feedback{0.001}; // feedback learning rate (DFE)
    double a{1.0};             // logarithmic cost design parameter
    Algorithm algorithm{Algorithm::LCLMA};

    int forward_taps() const { return anti_causal + causal + 1; }
    int extended_taps() const { return forward_taps() + feedback; }
    void validate() const;
};

// Single-owner mutable state; diverged latches once any weight goes non-finite
// or the weight norm exceeds 1e12.
struct EqualizerState {
    std::vector<double> w;          // feed-forward taps
    std::vector<double> f;          // feedback taps (empty when linear)
    std::vector<double> decisions;  // last h_f hard decisions, most recent first
    bool diverged{false};

    static EqualizerState make(const EqualizerConfig& config);
};

// Regressor [r(t+L_a), ..., r(t-L_c)], zero padded outside the frame.
std::vector<double> build_regressor(std::span<const double> received, std::size_t t,
                                    const EqualizerConfig& config);
void build_regressor_into(std::span<const double> received, std::size_t t,
                          const EqualizerConfig& config, std::vector<double>& out);

// Extended DFE regressor: forward window followed by the past hard decisions.
std::vector<double> dfe_extend(std::span<const double> received, std::size_t t,
                               const EqualizerConfig& config,
                               std::span<const double> past_decisions);

// Soft estimate w^T r (use the extended regressor for a DFE state).
double predict(const EqualizerState& state, std::span<const double> regressor);

// g(e) = phi'(e) * a*phi(e) / (1 + a*phi(e)):
//   SquaredError -> 2a e^3 / (1 + a e^2), AbsError -> a e / (1 + a |e|).
double log_cost_gain(double e, double a, CostKind phi);

// Scalar update factor per algorithm (NLCLMA needs the regressor norm and is
// handled inside the step functions).
double update_gain(Algorithm alg, double e, double a);

void step_lclms(EqualizerState& state, std::span<const double> regressor, double e,
                double mu, double a);
void step_lclma(EqualizerState& state, std::span<const double> regressor, double e,
                double mu, double a);
void step_baseline(EqualizerState& state, std::span<const double> regressor, double e,
                   double mu, Algorithm kind);
void step_normalized_lclma(EqualizerState& state, std::span<const double> regressor, double e,
                           double mu, double a);

// One update of the (possibly extended) state with the configured algorithm;
// mu applies to the forward block, mu_feedback to the feedback block.
void apply_update(EqualizerState& state, const EqualizerConfig& config,
                  std::span<const double> extended_regressor, double e);

void push_decision(EqualizerState& state, double decision);

}  // namespace logeq
