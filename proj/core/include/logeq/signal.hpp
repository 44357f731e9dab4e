#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace logeq {

enum class Phase : std::uint8_t { Training, DecisionDirected };

// Transmitted BPSK frame: bits in {-1,+1} plus the per-index training schedule.
struct SymbolFrame {
    std::vector<double> bits;
    std::vector<Phase> schedule;

    std::size_t size() const { return bits.size(); }
    void validate() const;
};

struct TrainingSchedule {
    double training_fraction{1.0};

    static TrainingSchedule full_training() { return {1.0}; }
    static TrainingSchedule decision_directed(double fraction) { return {fraction}; }
};

// Bit source: either independent random bits or a cyclically tiled sequence.
struct BitPattern {
    std::vector<double> sequence;  // empty -> random

    static BitPattern random() { return {}; }
    static BitPattern repeated(std::vector<double> seq);
    bool is_random() const { return sequence.empty(); }
};

// Deterministic for a fixed (seed, n, pattern). Schedule defaults to all-Training;
// overwrite it with build_schedule() for decision-directed runs.
SymbolFrame generate_bits(std::uint64_t seed, std::size_t n, const BitPattern& pattern);

// Hard decision, sign(soft) with the tie at 0 mapped to +1.
double quantize(double soft);

// First ceil(fraction*n) indices are Training, the rest DecisionDirected.
std::vector<Phase> build_schedule(std::size_t n, const TrainingSchedule& mode);

// Default 28-entry +/-1 training sequence (also shipped as data/training28.txt).
std::span<const double> default_training_sequence();

// Whitespace-separated +/-1 entries.
std::vector<double> load_training_sequence(const std::filesystem::path& file);

}  // namespace logeq
