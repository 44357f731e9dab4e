#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace logeq {

// One simulated trial. Curves cover the full frame; a diverged trial keeps the
// values recorded up to the divergence point (padded flat) and is excluded
// from averages.
struct TrialResult {
    std::vector<double> nase_curve;  // cumulative normalized squared soft error
    std::vector<double> mse_curve;   // windowed mean squared soft error
    double ber{0.0};
    double final_nase{0.0};
    bool diverged{false};
    std::uint64_t seed{0};
};

// NASE over the first n entries: sum_t (soft - bit)^2 / n, soft estimates.
double nase(std::span<const double> soft, std::span<const double> bits, std::size_t n);
std::vector<double> nase_curve(std::span<const double> soft, std::span<const double> bits);

// Fraction of hard-decision errors over [eval_start, end).
double ber(std::span<const double> soft, std::span<const double> bits, std::size_t eval_start = 0);

std::vector<double> windowed_mse(std::span<const double> soft, std::span<const double> bits,
                                 std::size_t window);

struct AveragedResult {
    std::vector<double> nase_curve;
    std::vector<double> mse_curve;
    double ber_mean{0.0};
    double ber_stderr{0.0};
    double final_nase{0.0};
    int diverged_count{0};
    int trials_used{0};
    bool all_diverged{false};
};

// Pointwise mean over non-diverged trials; diverged trials counted separately.
AveragedResult average_trials(const std::vector<TrialResult>& results);

}  // namespace logeq
