#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "walshrec/sensor.hpp"

using namespace walshrec;

TEST_CASE("accumulated phase pinned values") {
    SensorConfig cfg{1.0, 1.0};
    auto zero = FieldProfile::from_function("zero", [](double) { return 0.0; }, 1.0);
    CHECK(accumulated_phase(zero, paley(5), cfg) == 0.0);

    auto c = FieldProfile::from_function("c", [](double) { return 0.8; }, 1.0);
    CHECK(accumulated_phase(c, paley(0), cfg) == doctest::Approx(0.8).epsilon(1e-14));

    auto fsin = corpus_profile("sin");
    CHECK(accumulated_phase(fsin, paley(1), cfg) ==
          doctest::Approx(2.0 / std::numbers::pi).epsilon(1e-12));

    SensorConfig scaled{2.0, 3.0};
    auto c3 = FieldProfile::from_function("c", [](double) { return 0.1; }, 3.0);
    CHECK(accumulated_phase(c3, paley(0), scaled) == doctest::Approx(0.6).epsilon(1e-13));
}

TEST_CASE("outcome probability") {
    CHECK(outcome_probability(0.0) == 0.5);
    CHECK(outcome_probability(std::numbers::pi / 2.0, 1.0) == doctest::Approx(1.0));
    CHECK(outcome_probability(std::numbers::pi / 6.0, 0.8) == doctest::Approx(0.7));
    CHECK_THROWS_AS(outcome_probability(0.1, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(outcome_probability(0.1, 1.5), std::invalid_argument);
}

TEST_CASE("visibility model") {
    VisibilityModel off;
    CHECK(off.visibility(paley(7), 2.0) == 1.0);
    VisibilityModel on{2.0, 1.0, 0.0};
    CHECK(on.visibility(paley(1), 1.0) == doctest::Approx(std::exp(-0.5)));
    VisibilityModel stretched{2.0, 2.0, 0.0};
    CHECK(stretched.visibility(paley(1), 1.0) == doctest::Approx(std::exp(-0.25)));
    // pulse_exponent > 0 extends T2 with the pulse count (sequency label)
    VisibilityModel scaling{1.0, 1.0, 1.0};
    CHECK(scaling.visibility(sequency(4), 1.0) == doctest::Approx(std::exp(-0.25)));
    CHECK(scaling.visibility(paley(0), 1.0) == doctest::Approx(std::exp(-1.0)));
}

TEST_CASE("shot simulation edge cases and moments") {
    auto all = simulate_shots(1.0, 500, 42);
    CHECK(all.zeros == 500);
    auto none = simulate_shots(0.0, 500, 42);
    CHECK(none.zeros == 0);

    std::uint64_t m = 1000000;
    auto rec = simulate_shots(0.7, m, 123);
    double std_dev = std::sqrt(0.7 * 0.3 / static_cast<double>(m));
    CHECK(std::abs(static_cast<double>(rec.zeros) / static_cast<double>(m) - 0.7) <
          5.0 * std_dev);
    CHECK_THROWS_AS(simulate_shots(1.2, 10, 0), std::invalid_argument);
}

TEST_CASE("shot simulation is deterministic in the seed") {
    auto a = simulate_shots(0.3, 10000, 77);
    auto b = simulate_shots(0.3, 10000, 77);
    CHECK(a.zeros == b.zeros);
    auto c = simulate_shots(0.3, 10000, 78);
    CHECK(a.zeros != c.zeros);  // different stream
}

TEST_CASE("coefficient estimation inversion") {
    SensorConfig cfg{1.0, 1.0};
    MeasurementRecord rec;
    rec.shots = 1000;
    rec.zeros = 500;
    rec.visibility = 1.0;
    CHECK(estimate_coefficient(rec, cfg).value == doctest::Approx(0.0));

    // noiseless round trip across the open dynamic range
    for (double c : {-1.2, -0.3, 0.0, 0.7, 1.5}) {
        double p0 = outcome_probability(cfg.gamma * cfg.duration * c, 0.9);
        auto est = estimate_from_probability(p0, 0.9, cfg);
        CHECK(est.value == doctest::Approx(c).epsilon(1e-12));
        CHECK_FALSE(est.clamped);
    }
}

TEST_CASE("out-of-range inversion clamps and flags") {
    SensorConfig cfg{2.0, 1.0};
    // (2 p_hat - 1)/v = 1.03
    auto est = estimate_from_probability(0.9635, 0.9, cfg);
    CHECK(est.clamped);
    CHECK(est.saturated);
    CHECK(est.value == doctest::Approx(std::numbers::pi / 4.0));  // pi/(2 gamma T)
    // inside the dynamic range nothing is flagged
    auto inside = estimate_from_probability(0.6, 1.0, cfg);
    CHECK_FALSE(inside.clamped);
    CHECK_FALSE(inside.saturated);
}

TEST_CASE("noiseless protocol reproduces the exact spectrum") {
    auto f = corpus_profile("exp");
    SensorConfig cfg{1.0, 1.0};
    VisibilityModel vis;
    auto plan = full_order_indices(4);
    auto acq = run_protocol(f, cfg, plan, vis, 1000, 9, /*noiseless=*/true);
    CHECK(acq.spectrum.provenance == Provenance::Estimated);
    for (std::uint64_t m : plan) {
        double exact = walsh_coefficient(f, paley(m));
        CHECK(std::abs(acq.spectrum.at(m) - exact) < 1e-12);
    }
    CHECK(acq.clamp_events == 0);
    CHECK(acq.saturated_indices == 0);
}

TEST_CASE("protocol is deterministic and schedule-independent") {
    auto f = corpus_profile("f1").scaled(0.2);
    SensorConfig cfg{1.0, 1.0};
    VisibilityModel vis;
    auto plan = full_order_indices(3);
    auto a = run_protocol(f, cfg, plan, vis, 5000, 11);
    auto b = run_protocol(f, cfg, plan, vis, 5000, 11);
    REQUIRE(a.records.size() == b.records.size());
    for (std::size_t i = 0; i < a.records.size(); ++i) {
        CHECK(a.records[i].zeros == b.records[i].zeros);
        CHECK(a.records[i].seed == b.records[i].seed);
    }
    // acquiring a sub-plan reproduces the same per-index records
    std::vector<std::uint64_t> sub{plan[5], plan[2]};
    auto c = run_protocol(f, cfg, sub, vis, 5000, 11);
    CHECK(c.records[0].zeros == a.records[5].zeros);
    CHECK(c.records[1].zeros == a.records[2].zeros);
}

TEST_CASE("protocol aggregates saturation") {
    // a constant field at the edge of the dynamic range drives p0 to 1
    auto edge =
        FieldProfile::from_function("edge", [](double) { return std::numbers::pi / 2.0; }, 1.0);
    SensorConfig cfg{1.0, 1.0};
    VisibilityModel vis;
    std::vector<std::uint64_t> plan{0};
    auto acq = run_protocol(edge, cfg, plan, vis, 1000, 3, /*noiseless=*/true);
    CHECK(acq.saturated_indices == 1);
    CHECK(acq.spectrum.at(0) == doctest::Approx(std::numbers::pi / 2.0));

    // beyond the edge the inversion aliases back inside and cannot flag
    auto aliased = FieldProfile::from_function("aliased", [](double) { return 2.0; }, 1.0);
    auto acq2 = run_protocol(aliased, cfg, plan, vis, 1000, 3, /*noiseless=*/true);
    CHECK(acq2.saturated_indices == 0);
    CHECK(acq2.spectrum.at(0) == doctest::Approx(std::numbers::pi - 2.0));
}

TEST_CASE("estimator matches the predicted standard deviation") {
    auto f = corpus_profile("exp").scaled(0.3);
    SensorConfig cfg{1.0, 1.0};
    double exact = walsh_coefficient(f, paley(1));
    double p0 = outcome_probability(cfg.gamma * cfg.duration * exact, 1.0);
    std::uint64_t shots = 10000;
    int trials = 1000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < trials; ++i) {
        auto rec = simulate_shots(p0, shots, derive_seed(555, i));
        rec.visibility = 1.0;
        double est = estimate_coefficient(rec, cfg).value;
        sum += est;
        sum2 += est * est;
    }
    double mean = sum / trials;
    double var = sum2 / trials - mean * mean;
    double predicted = 1.0 / (std::sqrt(static_cast<double>(shots)) * cfg.gamma * cfg.duration);
    CHECK(std::sqrt(var) == doctest::Approx(predicted).epsilon(0.2));
    // asymptotically unbiased: mean within 3 standard errors
    CHECK(std::abs(mean - exact) < 3.0 * std::sqrt(var / trials));
}

TEST_CASE("estimated-spectrum error scales like 1/shots") {
    auto f = corpus_profile("f1").scaled(0.1);
    SensorConfig cfg{1.0, 1.0};
    VisibilityModel vis;
    auto plan = full_order_indices(3);
    auto exact = transform(f, 3);

    std::vector<double> log_m, log_err;
    for (std::uint64_t shots : {1000u, 10000u, 100000u}) {
        double total = 0.0;
        int trials = 60;
        for (int tr = 0; tr < trials; ++tr) {
            auto acq = run_protocol(f, cfg, plan, vis, shots, derive_seed(77, tr));
            double err = 0.0;
            for (std::uint64_t m : plan) {
                double d = acq.spectrum.at(m) - exact.at(m);
                err += d * d;
            }
            total += err;
        }
        log_m.push_back(std::log(static_cast<double>(shots)));
        log_err.push_back(std::log(total / trials));
    }
    double slope = (log_err.back() - log_err.front()) / (log_m.back() - log_m.front());
    CHECK(slope == doctest::Approx(-1.0).epsilon(0.15));
}
