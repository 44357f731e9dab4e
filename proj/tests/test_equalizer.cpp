#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "logeq/equalizer.hpp"

using namespace logeq;

namespace {

double phi_of(double e, CostKind kind) {
    return kind == CostKind::AbsError ? std::abs(e) : e * e;
}

// C(e) = phi(e) - ln(1 + a phi(e)) / a, evaluated independently of the library.
double log_cost(double e, double a, CostKind kind) {
    const double p = phi_of(e, kind);
    return p - std::log1p(a * p) / a;
}

EqualizerConfig linear_config(int l_a, int l_c) {
    EqualizerConfig cfg;
    cfg.anti_causal = l_a;
    cfg.causal = l_c;
    return cfg;
}

}  // namespace

TEST_CASE("regressor windowing, anti-causal first") {
    const std::vector<double> rx = {1, 2, 3};
    const auto cfg = linear_config(1, 1);
    CHECK(build_regressor(rx, 1, cfg) == std::vector<double>{3, 2, 1});
    CHECK(build_regressor(rx, 0, cfg) == std::vector<double>{2, 1, 0});
    CHECK(build_regressor(rx, 2, cfg) == std::vector<double>{0, 3, 2});
    CHECK_THROWS(build_regressor(rx, 3, cfg));
}

TEST_CASE("regressor matches an index-by-index oracle") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    std::vector<double> rx(64);
    for (double& v : rx) v = dist(rng);
    const auto cfg = linear_config(3, 5);
    for (std::size_t t = 0; t < rx.size(); ++t) {
        const auto reg = build_regressor(rx, t, cfg);
        REQUIRE(reg.size() == 9);
        for (int i = 0; i < 9; ++i) {
            const std::int64_t idx = static_cast<std::int64_t>(t) + cfg.anti_causal - i;
            const double expect =
                (idx >= 0 && idx < static_cast<std::int64_t>(rx.size())) ? rx[idx] : 0.0;
            CHECK(reg[i] == expect);
        }
    }
}

TEST_CASE("prediction is the plain inner product") {
    auto cfg = linear_config(1, 1);
    auto state = EqualizerState::make(cfg);
    CHECK(predict(state, std::vector<double>{1, 2, 3}) == 0.0);  // zero filter

    state.w = {0, 1, 0};  // center tap, identity channel
    const std::vector<double> rx = {1, -1, 1, 1, -1};
    for (std::size_t t = 0; t < rx.size(); ++t) {
        CHECK(predict(state, build_regressor(rx, t, cfg)) == rx[t]);
    }

    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> w(8), r(8);
    for (int i = 0; i < 8; ++i) {
        w[i] = dist(rng);
        r[i] = dist(rng);
    }
    EqualizerState s8;
    s8.w = w;
    double expect = 0.0;
    for (int i = 0; i < 8; ++i) expect += w[i] * r[i];
    CHECK(predict(s8, r) == doctest::Approx(expect).epsilon(1e-15));
    CHECK_THROWS(predict(s8, std::vector<double>{1.0}));
}

TEST_CASE("log cost gain closed forms") {
    CHECK(log_cost_gain(0.0, 1.0, CostKind::AbsError) == 0.0);
    CHECK(log_cost_gain(0.0, 1.0, CostKind::SquaredError) == 0.0);
    CHECK(log_cost_gain(1.0, 1.0, CostKind::AbsError) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(log_cost_gain(1.0, 1.0, CostKind::SquaredError) == doctest::Approx(1.0).epsilon(1e-15));
    // odd symmetry and error sign
    for (double e : {0.1, 0.7, 2.0, 15.0}) {
        for (CostKind kind : {CostKind::AbsError, CostKind::SquaredError}) {
            CHECK(log_cost_gain(-e, 2.0, kind) == -log_cost_gain(e, 2.0, kind));
            CHECK(log_cost_gain(e, 2.0, kind) > 0.0);
        }
    }
    CHECK_THROWS(log_cost_gain(1.0, 0.0, CostKind::AbsError));
}

TEST_CASE("gain matches the finite-difference gradient of the log cost") {
    // central difference of C(e); the kink at e = 0 is excluded for AbsError
    for (CostKind kind : {CostKind::AbsError, CostKind::SquaredError}) {
        for (double a : {0.5, 1.0, 2.0}) {
            for (double e = -5.0; e <= 5.0; e += 0.1) {
                if (kind == CostKind::AbsError && std::abs(e) < 0.05) continue;
                const double delta = 1e-5 * std::max(1.0, std::abs(e));
                const double fd =
                    (log_cost(e + delta, a, kind) - log_cost(e - delta, a, kind)) / (2.0 * delta);
                const double g = log_cost_gain(e, a, kind);
                if (std::abs(g) > 1e-12) {
                    CHECK(std::abs(fd - g) / std::abs(g) < 1e-6);
                } else {
                    CHECK(std::abs(fd) < 1e-8);
                }
            }
        }
    }
}

TEST_CASE("log cost is convex and keeps its Maclaurin and vanishing-ratio properties") {
    for (CostKind kind : {CostKind::AbsError, CostKind::SquaredError}) {
        for (double a : {0.5, 1.0, 2.0}) {
            const double step = 0.01;
            for (double e = -10.0; e <= 10.0 - 2 * step; e += step) {
                const double second = log_cost(e, a, kind) - 2.0 * log_cost(e + step, a, kind) +
                                      log_cost(e + 2 * step, a, kind);
                CHECK(second / (step * step) >= -1e-9);
            }
            // small-error expansion C ~ (a/2) phi^2 - (a^2/3) phi^3
            for (double e : {1e-4, 5e-4, 1e-3 / a}) {
                const double p = phi_of(e, kind);
                if (a * p > 1e-3) continue;
                const double series = 0.5 * a * p * p - a * a * p * p * p / 3.0;
                CHECK(std::abs(log_cost(e, a, kind) - series) < 1e-9);
            }
        }
    }
    // ln(1 + phi) / phi vanishes for large errors
    const double e = 1e6;
    const double ratio = std::log1p(e * e) / (e * e);
    CHECK(ratio < 1e-4);
}

TEST_CASE("lclms step arithmetic and saturation") {
    auto cfg = linear_config(1, 1);
    auto state = EqualizerState::make(cfg);
    const std::vector<double> unit = {0, 1, 0};

    step_lclms(state, unit, 0.0, 0.1, 1.0);
    CHECK(state.w == std::vector<double>{0, 0, 0});

    step_lclms(state, unit, 1.0, 0.1, 1.0);
    CHECK(state.w[1] == doctest::Approx(0.1).epsilon(1e-15));  // mu * 2 * 1/2

    // large-error limit: factor approaches 2e
    const double factor = log_cost_gain(100.0, 1.0, CostKind::SquaredError);
    CHECK(std::abs(factor - 200.0) / 200.0 < 1e-4);
}

TEST_CASE("lclma step arithmetic and limits") {
    auto cfg = linear_config(1, 1);
    auto state = EqualizerState::make(cfg);
    const std::vector<double> unit = {0, 0, 1};

    step_lclma(state, unit, 0.0, 0.1, 1.0);
    CHECK(state.w == std::vector<double>{0, 0, 0});

    step_lclma(state, unit, -1.0, 0.1, 1.0);
    CHECK(state.w[2] == doctest::Approx(-0.05).epsilon(1e-15));

    // a -> inf recovers the sign algorithm
    for (double e : {-3.0, -0.01, 0.01, 0.5, 4.0}) {
        const double f = log_cost_gain(e, 1e6, CostKind::AbsError);
        const double s = e > 0 ? 1.0 : -1.0;
        CHECK(std::abs(f - s) / std::abs(s) < 1e-2);
    }
    // a -> 0 recovers a scaled LMS update
    for (double e : {-1.0, -0.2, 0.3, 1.0}) {
        const double f = log_cost_gain(e, 1e-6, CostKind::AbsError);
        CHECK(std::abs(f - 1e-6 * e) / std::abs(1e-6 * e) <= 1e-6);
    }
}

TEST_CASE("lclma update factor is bounded by both 1 and a|e|") {
    for (double a : {0.1, 1.0, 10.0}) {
        for (double e = -50.0; e <= 50.0; e += 0.37) {
            const double f = std::abs(log_cost_gain(e, a, CostKind::AbsError));
            CHECK(f <= 1.0);
            CHECK(f <= a * std::abs(e) + 1e-15);
        }
    }
}

TEST_CASE("baseline steps") {
    auto cfg = linear_config(0, 1);
    const std::vector<double> unit = {1, 0};

    for (Algorithm kind : {Algorithm::SA, Algorithm::LMS, Algorithm::LMF}) {
        auto state = EqualizerState::make(cfg);
        step_baseline(state, unit, 0.0, 0.1, kind);
        CHECK(state.w == std::vector<double>{0, 0});
    }

    auto lms = EqualizerState::make(cfg);
    step_baseline(lms, unit, 0.5, 0.1, Algorithm::LMS);
    CHECK(lms.w[0] == doctest::Approx(0.05).epsilon(1e-15));

    auto sa = EqualizerState::make(cfg);
    step_baseline(sa, unit, -0.3, 0.1, Algorithm::SA);
    CHECK(sa.w[0] == doctest::Approx(-0.1).epsilon(1e-15));
    CHECK(update_gain(Algorithm::SA, 0.0, 1.0) == 0.0);  // sign(0) = 0

    // LMF impulse: one step moves the weight by mu * e^3 = 1e8
    auto lmf = EqualizerState::make(cfg);
    step_baseline(lmf, unit, 1e3, 0.1, Algorithm::LMF);
    CHECK(lmf.w[0] == doctest::Approx(1e8).epsilon(1e-12));
    CHECK_FALSE(lmf.diverged);
    // a second impulse pushes the norm past the divergence bound
    step_baseline(lmf, unit, 1e5, 0.1, Algorithm::LMF);
    CHECK(lmf.diverged);

    CHECK_THROWS(step_baseline(lmf, unit, 1.0, 0.1, Algorithm::LCLMA));
}

TEST_CASE("normalized lclma") {
    auto cfg = linear_config(1, 1);

    // e = 0 leaves the state unchanged
    auto state = EqualizerState::make(cfg);
    step_normalized_lclma(state, std::vector<double>{0.3, -0.2, 0.5}, 0.0, 0.1, 1.0);
    CHECK(state.w == std::vector<double>{0, 0, 0});

    // unit-norm regressor reduces bit for bit to the plain LCLMA step
    for (double e : {-2.0, -0.4, 0.3, 1.7}) {
        std::vector<double> unit = {0, -1, 0};
        auto a_state = EqualizerState::make(cfg);
        auto b_state = EqualizerState::make(cfg);
        a_state.w = {0.2, -0.1, 0.4};
        b_state.w = a_state.w;
        step_normalized_lclma(a_state, unit, e, 0.05, 1.3);
        step_lclma(b_state, unit, e, 0.05, 1.3);
        CHECK(a_state.w == b_state.w);
    }

    // algebraic oracle: mu a e / (||r||^2 + a |e| ||r||) r
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> dist(-1.5, 1.5);
    for (int it = 0; it < 50; ++it) {
        std::vector<double> r = {dist(rng), dist(rng), dist(rng)};
        const double e = dist(rng);
        double norm_sq = 0.0;
        for (double v : r) norm_sq += v * v;
        if (norm_sq < 1e-6) continue;
        const double norm = std::sqrt(norm_sq);
        auto s = EqualizerState::make(cfg);
        step_normalized_lclma(s, r, e, 0.1, 1.0);
        for (int i = 0; i < 3; ++i) {
            const double expect = 0.1 * e / (norm_sq + std::abs(e) * norm) * r[i];
            CHECK(s.w[i] == doctest::Approx(expect).epsilon(1e-12));
        }
    }

    // an all-zero regressor is skipped
    auto z = EqualizerState::make(cfg);
    z.w = {1, 2, 3};
    step_normalized_lclma(z, std::vector<double>{0, 0, 0}, 1.0, 0.1, 1.0);
    CHECK(z.w == std::vector<double>{1, 2, 3});
}

TEST_CASE("every algorithm leaves the weights unchanged at zero error") {
    EqualizerConfig cfg = linear_config(1, 2);
    cfg.feedback = 2;
    const std::vector<double> ext = {0.5, -0.2, 0.3, 0.1, 1.0, -1.0};
    for (Algorithm alg : {Algorithm::SA, Algorithm::LMS, Algorithm::LMF, Algorithm::LCLMS,
                          Algorithm::LCLMA, Algorithm::NLCLMA}) {
        cfg.algorithm = alg;
        auto state = EqualizerState::make(cfg);
        state.w = {0.1, 0.2, 0.3, 0.4};
        state.f = {-0.5, 0.5};
        const auto w0 = state.w;
        const auto f0 = state.f;
        apply_update(state, cfg, ext, 0.0);
        CHECK(state.w == w0);
        CHECK(state.f == f0);
    }
}

TEST_CASE("dfe extension") {
    EqualizerConfig cfg = linear_config(1, 1);
    const std::vector<double> rx = {1, 2, 3, 4};

    // h_f = 0 degenerates to the linear regressor
    cfg.feedback = 0;
    CHECK(dfe_extend(rx, 1, cfg, {}) == build_regressor(rx, 1, cfg));

    cfg.feedback = 2;
    const std::vector<double> fresh = {0.0, 0.0};
    CHECK(dfe_extend(rx, 0, cfg, fresh) == std::vector<double>{2, 1, 0, 0, 0});

    const std::vector<double> past = {-1.0, 1.0};  // b(t-1), b(t-2)
    CHECK(dfe_extend(rx, 2, cfg, past) == std::vector<double>{4, 3, 2, -1, 1});
    CHECK_THROWS(dfe_extend(rx, 2, cfg, std::vector<double>{1.0}));
}

TEST_CASE("dfe update applies the per-part learning rates") {
    EqualizerConfig cfg = linear_config(0, 0);
    cfg.feedback = 1;
    cfg.mu = 0.1;
    cfg.mu_feedback = 0.01;
    cfg.algorithm = Algorithm::LMS;
    auto state = EqualizerState::make(cfg);
    const std::vector<double> ext = {2.0, -1.0};
    apply_update(state, cfg, ext, 0.5);
    CHECK(state.w[0] == doctest::Approx(0.1 * 0.5 * 2.0).epsilon(1e-15));
    CHECK(state.f[0] == doctest::Approx(0.01 * 0.5 * -1.0).epsilon(1e-15));
}

TEST_CASE("decision history shifts most recent first") {
    EqualizerConfig cfg = linear_config(0, 0);
    cfg.feedback = 3;
    auto state = EqualizerState::make(cfg);
    CHECK(state.decisions == std::vector<double>{0, 0, 0});
    push_decision(state, 1.0);
    push_decision(state, -1.0);
    CHECK(state.decisions == std::vector<double>{-1, 1, 0});
    push_decision(state, 1.0);
    push_decision(state, 1.0);
    CHECK(state.decisions == std::vector<double>{1, 1, -1});
}

TEST_CASE("algorithm names round trip") {
    for (Algorithm alg : {Algorithm::SA, Algorithm::LMS, Algorithm::LMF, Algorithm::LCLMS,
                          Algorithm::LCLMA, Algorithm::NLCLMA}) {
        CHECK(algorithm_from_name(algorithm_name(alg)) == alg);
    }
    CHECK_FALSE(algorithm_from_name("rls").has_value());
}
