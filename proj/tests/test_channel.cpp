#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "logeq/channel.hpp"
#include "logeq/signal.hpp"

using namespace logeq;

namespace {

// Independent direct double-loop convolution: r(t) = sum_tau b(t-tau) h(tau).
std::vector<double> convolution_oracle(const std::vector<double>& bits, int n1,
                                       const std::vector<double>& taps) {
    std::vector<double> out(bits.size(), 0.0);
    for (std::size_t t = 0; t < bits.size(); ++t) {
        for (std::size_t k = 0; k < taps.size(); ++k) {
            const int tau = static_cast<int>(k) - n1;
            const auto idx = static_cast<std::int64_t>(t) - tau;
            if (idx >= 0 && idx < static_cast<std::int64_t>(bits.size())) {
                out[t] += bits[static_cast<std::size_t>(idx)] * taps[k];
            }
        }
    }
    return out;
}

}  // namespace

TEST_CASE("identity channel with zero noise is transparent") {
    const auto frame = generate_bits(3, 200, BitPattern::random());
    const auto r = apply_channel(frame, ChannelModel::identity(), NoiseModel::none(), 1);
    CHECK(r == frame.bits);
}

TEST_CASE("pure delay tap zero pads the frame edge") {
    const auto frame = generate_bits(3, 50, BitPattern::random());
    const auto ch = ChannelModel::fir(0, {0.0, 1.0});
    const auto r = apply_channel(frame, ch, NoiseModel::none(), 1);
    CHECK(r[0] == 0.0);
    for (std::size_t t = 1; t < r.size(); ++t) CHECK(r[t] == frame.bits[t - 1]);
}

TEST_CASE("random 5-tap channel matches the convolution oracle exactly") {
    const auto frame = generate_bits(11, 50, BitPattern::random());
    const std::vector<double> taps = {0.7, -0.4, 0.2, 0.1, -0.05};
    const auto ch = ChannelModel::fir(2, taps);
    const auto r = apply_channel(frame, ch, NoiseModel::none(), 5);
    const auto expect = convolution_oracle(frame.bits, 2, taps);
    for (std::size_t t = 0; t < r.size(); ++t) CHECK(r[t] == expect[t]);
}

TEST_CASE("fixed-tap channel is linear in the input") {
    const auto a = generate_bits(1, 80, BitPattern::random());
    const auto b = generate_bits(2, 80, BitPattern::random());
    SymbolFrame sum = a;
    for (std::size_t i = 0; i < sum.bits.size(); ++i) sum.bits[i] += b.bits[i];
    // superposed input is not +-1, so run through the oracle-checked path directly
    const std::vector<double> taps = {0.9, 0.3, -0.2};
    const auto oracle_sum = convolution_oracle(sum.bits, 1, taps);
    auto oracle_a = convolution_oracle(a.bits, 1, taps);
    const auto oracle_b = convolution_oracle(b.bits, 1, taps);
    for (std::size_t i = 0; i < oracle_a.size(); ++i) {
        CHECK(oracle_sum[i] == doctest::Approx(oracle_a[i] + oracle_b[i]).epsilon(1e-12));
    }

    const auto ch = ChannelModel::fir(1, taps);
    const auto ra = apply_channel(a, ch, NoiseModel::none(), 9);
    for (std::size_t i = 0; i < ra.size(); ++i) CHECK(ra[i] == oracle_a[i]);
}

TEST_CASE("tap drift is reproducible and actually moves the taps") {
    const auto frame = generate_bits(3, 400, BitPattern::random());
    auto ch = ChannelModel::identity();
    ch.drift_std = 0.05;
    const auto r1 = apply_channel(frame, ch, NoiseModel::none(), 21);
    const auto r2 = apply_channel(frame, ch, NoiseModel::none(), 21);
    CHECK(r1 == r2);
    // with drifting taps the output cannot stay exactly +-1
    bool moved = false;
    for (std::size_t t = 0; t < r1.size(); ++t) {
        if (std::abs(std::abs(r1[t]) - 1.0) > 1e-6) moved = true;
    }
    CHECK(moved);
}

TEST_CASE("pure gaussian noise variance matches sigma_v^2") {
    const std::size_t n = 1000000;
    const NoiseModel noise{0.25, 0.0, 0.0};
    const auto seq = sample_noise(noise, n, 77);
    double var = 0.0;
    for (double v : seq) var += v * v;
    var /= static_cast<double>(n);
    CHECK(var == doctest::Approx(0.25).epsilon(0.05));
}

TEST_CASE("degenerate impulse variance behaves like pure gaussian") {
    const std::size_t n = 200000;
    const NoiseModel mix{0.04, 0.0, 0.5};
    const auto draw = sample_noise_detailed(mix, n, 3);
    double var = 0.0;
    for (double v : draw.values) var += v * v;
    var /= static_cast<double>(n);
    CHECK(var == doctest::Approx(0.04).epsilon(0.05));
}

TEST_CASE("impulse occurrence rate stays within the binomial band") {
    const std::size_t n = 1000000;
    const NoiseModel noise{1e-3, 10.0, 0.1};
    const auto draw = sample_noise_detailed(noise, n, 12345);
    std::size_t impulses = 0;
    for (auto z : draw.impulse) impulses += z;
    const double rate = static_cast<double>(impulses) / static_cast<double>(n);
    CHECK(rate >= 0.097);
    CHECK(rate <= 0.103);
}

TEST_CASE("mixture variance approaches (1-nu) sigma_v^2 + nu sigma_n^2") {
    const std::size_t n = 1000000;
    const NoiseModel noise{0.01, 1.0, 0.2};
    const auto seq = sample_noise(noise, n, 9);
    double var = 0.0;
    for (double v : seq) var += v * v;
    var /= static_cast<double>(n);
    const double expect = (1.0 - noise.nu_i) * noise.sigma_v_sq + noise.nu_i * noise.sigma_n_sq();
    CHECK(var == doctest::Approx(expect).epsilon(0.05));
}

TEST_CASE("noise pdf values and normalization") {
    const NoiseModel pure{0.04, 0.0, 0.0};
    CHECK(noise_pdf(pure, 0.0) == doctest::Approx(1.0 / (std::sqrt(2.0 * M_PI) * 0.2)).epsilon(1e-12));

    const NoiseModel mix{0.01, 1.0, 0.1};
    // quadrature oracle: composite Simpson over [-20 sigma_n, 20 sigma_n]
    const double half = 20.0 * std::sqrt(mix.sigma_n_sq());
    const int intervals = 200000;
    const double step = 2.0 * half / intervals;
    double acc = noise_pdf(mix, -half) + noise_pdf(mix, half);
    for (int i = 1; i < intervals; ++i) {
        acc += noise_pdf(mix, -half + step * i) * ((i % 2 == 1) ? 4.0 : 2.0);
    }
    const double integral = acc * step / 3.0;
    CHECK(std::abs(integral - 1.0) < 1e-6);

    const NoiseModel all_impulse{0.01, 1.0, 1.0};
    for (double x : {-2.0, -0.5, 0.0, 0.7, 3.0}) {
        const double expect = std::exp(-x * x / (2.0 * all_impulse.sigma_n_sq())) /
                              std::sqrt(2.0 * M_PI * all_impulse.sigma_n_sq());
        CHECK(noise_pdf(all_impulse, x) == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("snr_to_noise follows the E_b/N_0 convention") {
    const auto base = snr_to_noise(0.0, 0.0, 0.0);
    CHECK(base.sigma_v_sq == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(base.sigma_gamma_sq == 0.0);

    const auto reference = snr_to_noise(30.0, 1e4, 0.1);
    CHECK(reference.sigma_v_sq == doctest::Approx(5e-4).epsilon(1e-12));
    CHECK(reference.sigma_gamma_sq == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(reference.nu_i == 0.1);

    const auto with_ratio = snr_to_noise(10.0, 1e4, 0.0);
    const auto without_ratio = snr_to_noise(10.0, 0.0, 0.0);
    CHECK(with_ratio.sigma_v_sq == without_ratio.sigma_v_sq);
}

TEST_CASE("model validation") {
    CHECK_THROWS(ChannelModel::fir(0, {0.0, 0.0}));
    CHECK_THROWS(ChannelModel::fir(3, {1.0}));  // taps shorter than extents
    ChannelModel bad = ChannelModel::identity();
    bad.drift_std = -1.0;
    CHECK_THROWS(bad.validate());

    NoiseModel negative{-0.1, 0.0, 0.0};
    CHECK_THROWS(negative.validate());
    NoiseModel bad_nu{0.1, 0.0, 1.5};
    CHECK_THROWS(bad_nu.validate());
    CHECK_THROWS(noise_pdf(NoiseModel::none(), 0.0));
}

TEST_CASE("channel taps load from file") {
    const auto path = std::filesystem::temp_directory_path() / "logeq_taps_test.txt";
    {
        std::ofstream out(path);
        out << "0.5\n-0.25\n0.125\n";
    }
    const auto taps = load_channel_taps(path);
    CHECK(taps == std::vector<double>{0.5, -0.25, 0.125});
    {
        std::ofstream out(path);
        out << "0.5 oops\n";
    }
    CHECK_THROWS(load_channel_taps(path));
    std::filesystem::remove(path);
}
