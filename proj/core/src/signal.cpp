#include "logeq/signal.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "logeq/rng.hpp"

namespace logeq {

namespace {

void check_pm1(const std::vector<double>& seq, const char* what) {
    for (double v : seq) {
        if (v != 1.0 && v != -1.0) {
            throw std::invalid_argument(std::string(what) + ": entries must be -1 or +1");
        }
    }
}

// Fixed pseudo-random balanced pattern; the exact values only matter for
// reproducibility, not for any performance claim.
constexpr std::array<double, 28> kDefaultTraining = {
    +1, +1, +1, -1, -1, +1, -1, +1, +1, -1, -1, -1, +1, -1,
    +1, +1, -1, +1, -1, -1, +1, +1, -1, +1, -1, -1, -1, +1,
};

}  // namespace

void SymbolFrame::validate() const {
    check_pm1(bits, "SymbolFrame");
    if (schedule.size() != bits.size()) {
        throw std::invalid_argument("SymbolFrame: schedule length must equal bit length");
    }
}

BitPattern BitPattern::repeated(std::vector<double> seq) {
    if (seq.empty()) throw std::invalid_argument("BitPattern: repeated sequence must be nonempty");
    check_pm1(seq, "BitPattern");
    BitPattern p;
    p.sequence = std::move(seq);
    return p;
}

SymbolFrame generate_bits(std::uint64_t seed, std::size_t n, const BitPattern& pattern) {
    if (n == 0) throw std::invalid_argument("generate_bits: n must be >= 1");
    SymbolFrame frame;
    frame.bits.resize(n);
    frame.schedule.assign(n, Phase::Training);
    if (pattern.is_random()) {
        auto rng = make_rng(seed);
        for (double& b : frame.bits) b = (rng() & 1ull) ? 1.0 : -1.0;
    } else {
        check_pm1(pattern.sequence, "generate_bits");
        const std::size_t m = pattern.sequence.size();
        for (std::size_t i = 0; i < n; ++i) frame.bits[i] = pattern.sequence[i % m];
    }
    return frame;
}

double quantize(double soft) {
    if (!std::isfinite(soft)) throw std::invalid_argument("quantize: non-finite input");
    return soft < 0.0 ? -1.0 : 1.0;
}

std::vector<Phase> build_schedule(std::size_t n, const TrainingSchedule& mode) {
    if (n == 0) throw std::invalid_argument("build_schedule: n must be >= 1");
    const double f = mode.training_fraction;
    if (!(f >= 0.0 && f <= 1.0)) {
        throw std::invalid_argument("build_schedule: training fraction must lie in [0,1]");
    }
    auto k = static_cast<std::size_t>(std::ceil(f * static_cast<double>(n)));
    if (k > n) k = n;
    std::vector<Phase> schedule(n, Phase::DecisionDirected);
    for (std::size_t i = 0; i < k; ++i) schedule[i] = Phase::Training;
    return schedule;
}

std::span<const double> default_training_sequence() {
    return {kDefaultTraining.data(), kDefaultTraining.size()};
}

std::vector<double> load_training_sequence(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot open training sequence file: " + file.string());
    std::vector<double> seq;
    std::string token;
    while (in >> token) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(token, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != token.size() || (v != 1.0 && v != -1.0)) {
            throw std::runtime_error("bad training sequence entry '" + token + "' in " + file.string());
        }
        seq.push_back(v);
    }
    if (seq.empty()) throw std::runtime_error("empty training sequence file: " + file.string());
    return seq;
}

}  // namespace logeq
