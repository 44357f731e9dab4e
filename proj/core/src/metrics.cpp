#include "logeq/metrics.hpp"

#include <cmath>
#include <stdexcept>

#include "logeq/signal.hpp"

namespace logeq {

double nase(std::span<const double> soft, std::span<const double> bits, std::size_t n) {
    if (n == 0) throw std::invalid_argument("nase: n must be >= 1");
    if (soft.size() < n || bits.size() < n) {
        throw std::invalid_argument("nase: sequences shorter than n");
    }
    double acc = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        const double d = soft[t] - bits[t];
        acc += d * d;
    }
    return acc / static_cast<double>(n);
}

std::vector<double> nase_curve(std::span<const double> soft, std::span<const double> bits) {
    if (soft.size() != bits.size() || soft.empty()) {
        throw std::invalid_argument("nase_curve: sequences must be nonempty and equally long");
    }
    std::vector<double> curve(soft.size());
    double acc = 0.0;
    for (std::size_t t = 0; t < soft.size(); ++t) {
        const double d = soft[t] - bits[t];
        acc += d * d;
        curve[t] = acc / static_cast<double>(t + 1);
    }
    return curve;
}

double ber(std::span<const double> soft, std::span<const double> bits, std::size_t eval_start) {
    if (soft.empty() || soft.size() != bits.size()) {
        throw std::invalid_argument("ber: sequences must be nonempty and equally long");
    }
    if (eval_start >= soft.size()) {
        throw std::invalid_argument("ber: evaluation region is empty");
    }
    std::size_t errors = 0;
    for (std::size_t t = eval_start; t < soft.size(); ++t) {
        if (quantize(soft[t]) != bits[t]) ++errors;
    }
    return static_cast<double>(errors) / static_cast<double>(soft.size() - eval_start);
}

std::vector<double> windowed_mse(std::span<const double> soft, std::span<const double> bits,
                                 std::size_t window) {
    if (soft.size() != bits.size() || soft.empty()) {
        throw std::invalid_argument("windowed_mse: sequences must be nonempty and equally long");
    }
    if (window == 0) throw std::invalid_argument("windowed_mse: window must be >= 1");
    std::vector<double> curve(soft.size());
    std::vector<double> ring(window, 0.0);
    double sum = 0.0;
    for (std::size_t t = 0; t < soft.size(); ++t) {
        const double d = soft[t] - bits[t];
        const double sq = d * d;
        const std::size_t slot = t % window;
        if (t >= window) sum -= ring[slot];
        ring[slot] = sq;
        sum += sq;
        curve[t] = sum / static_cast<double>(std::min<std::size_t>(t + 1, window));
    }
    return curve;
}

AveragedResult average_trials(const std::vector<TrialResult>& results) {
    if (results.empty()) throw std::invalid_argument("average_trials: no trials");

    AveragedResult avg;
    std::size_t frame = 0;
    for (const auto& r : results) {
        if (r.diverged) {
            ++avg.diverged_count;
            continue;
        }
        if (frame == 0) frame = r.nase_curve.size();
        if (r.nase_curve.size() != frame || r.mse_curve.size() != frame) {
            throw std::invalid_argument("average_trials: curves must share the frame length");
        }
        ++avg.trials_used;
    }
    if (avg.trials_used == 0) {
        avg.all_diverged = true;
        return avg;
    }

    avg.nase_curve.assign(frame, 0.0);
    avg.mse_curve.assign(frame, 0.0);
    double ber_sum = 0.0;
    for (const auto& r : results) {
        if (r.diverged) continue;
        for (std::size_t t = 0; t < frame; ++t) {
            avg.nase_curve[t] += r.nase_curve[t];
            avg.mse_curve[t] += r.mse_curve[t];
        }
        ber_sum += r.ber;
    }
    const auto k = static_cast<double>(avg.trials_used);
    for (std::size_t t = 0; t < frame; ++t) {
        avg.nase_curve[t] /= k;
        avg.mse_curve[t] /= k;
    }
    avg.ber_mean = ber_sum / k;
    if (avg.trials_used > 1) {
        double var = 0.0;
        for (const auto& r : results) {
            if (r.diverged) continue;
            const double d = r.ber - avg.ber_mean;
            var += d * d;
        }
        var /= (k - 1.0);
        avg.ber_stderr = std::sqrt(var / k);
    }
    avg.final_nase = avg.nase_curve.back();
    return avg;
}

}  // namespace logeq
