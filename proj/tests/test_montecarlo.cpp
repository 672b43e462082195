#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "toric/errors.hpp"
#include "toric/montecarlo.hpp"

using namespace toric;

TEST_CASE("channel sampling") {
    const ToricLattice lat(11);
    for (std::uint64_t t = 0; t < 100; ++t) CHECK(sample_error(lat, {0.0, 3}, t).none());
    CHECK_THROWS_AS((ChannelConfig{0.5, 1}).validate(), InvalidParameter);
    CHECK_THROWS_AS((ChannelConfig{1.0, 1}).validate(), InvalidParameter);
    CHECK_THROWS_AS((ChannelConfig{-0.1, 1}).validate(), InvalidParameter);
    CHECK_NOTHROW((ChannelConfig{0.49, 1}).validate());
    CHECK_THROWS_AS(sample_error(lat, {0.7, 1}, 0), InvalidParameter);

    // counter-based: same (seed, trial) gives the same error
    CHECK(sample_error(lat, {0.1, 9}, 42) == sample_error(lat, {0.1, 9}, 42));
    CHECK_FALSE(sample_error(lat, {0.1, 9}, 42) == sample_error(lat, {0.1, 9}, 43));
    CHECK_FALSE(sample_error(lat, {0.1, 9}, 42) == sample_error(lat, {0.1, 10}, 42));
}

TEST_CASE("mean error weight lies in the binomial band") {
    const ToricLattice lat(11);
    const ChannelConfig ch{0.05, 2024};
    const int trials = 100000;
    double total = 0;
    std::vector<long> per_qubit(lat.n_qubits(), 0);
    for (int t = 0; t < trials; ++t) {
        const auto e = sample_error(lat, ch, t);
        total += e.weight();
        for (int q : e.support()) ++per_qubit[q];
    }
    const double n = lat.n_qubits();
    const double mean = total / trials;
    const double sigma = std::sqrt(n * 0.05 * 0.95 / trials);
    CHECK(std::fabs(mean - 0.05 * n) < 3 * sigma);
    // each qubit separately, with a loose 5 sigma band
    const double sq = std::sqrt(trials * 0.05 * 0.95);
    for (long c : per_qubit) CHECK(std::fabs(c - trials * 0.05) < 5 * sq);
}

TEST_CASE("ler estimation") {
    const ToricLattice lat(7);
    const auto zero = estimate_ler(lat, {0.0, 1}, 200, DecoderSpec::parse("ms"), 15);
    CHECK(zero.ler() == 0.0);
    CHECK(zero.trials == 200);
    CHECK(zero.stderr_() == 0.0);

    const ChannelConfig ch{0.03, 77};
    for (const char* name : {"ms", "sb+ms", "nms", "bp"}) {
        const auto spec = DecoderSpec::parse(name, 0.75);
        const auto a = estimate_ler(lat, ch, 3000, spec, 15, 1);
        const auto b = estimate_ler(lat, ch, 3000, spec, 15, 4);
        CHECK(a.failures_detected == b.failures_detected);
        CHECK(a.failures_logical == b.failures_logical);
        CHECK(a.failures_detected + a.failures_logical <= a.trials);
        CHECK(a.ler() >= 0.0);
        CHECK(a.ler() <= 1.0);
        CHECK(a.ler() == doctest::Approx(double(a.failures_detected + a.failures_logical) / a.trials));
        CHECK(a.stderr_() == doctest::Approx(std::sqrt(a.ler() * (1 - a.ler()) / a.trials)));
        CHECK(a.seed == 77);
        CHECK(a.t_max == 15);
    }
    const auto ms = estimate_ler(lat, ch, 5000, DecoderSpec::parse("ms"), 15);
    const auto sb = estimate_ler(lat, ch, 5000, DecoderSpec::parse("sb+ms"), 15);
    CHECK(sb.ler() < ms.ler());
    const auto lo = estimate_ler(lat, {0.01, 77}, 5000, DecoderSpec::parse("ms"), 15);
    CHECK(lo.ler() < ms.ler());
}

TEST_CASE("decoder specs") {
    CHECK(DecoderSpec::parse("ms").kind == DecoderKind::MS);
    CHECK(DecoderSpec::parse("sb+ms").kind == DecoderKind::SBMS);
    CHECK(DecoderSpec::parse("sbms").kind == DecoderKind::SBMS);
    CHECK(DecoderSpec::parse("nms", 0.5).lambda == 0.5);
    CHECK(DecoderSpec::parse("bp").kind == DecoderKind::BP);
    CHECK_THROWS_AS(DecoderSpec::parse("osd"), InvalidParameter);
    CHECK(DecoderSpec::parse("sb+ms").label() != DecoderSpec::parse("ms").label());
}

TEST_CASE("csv") {
    CHECK(ler_csv_header() == "d,decoder,lambda,p,trials,tmax,failures_detected,failures_logical,ler,stderr,seed");
    LerEstimate e;
    e.d = 11;
    e.decoder = "ms";
    e.p = 0.01;
    e.trials = 100;
    e.t_max = 15;
    e.failures_detected = 3;
    e.failures_logical = 1;
    e.seed = 5;
    const auto row = ler_csv_row(e);
    CHECK(row.rfind("11,ms,1,0.01,100,15,3,1,0.04,", 0) == 0);
    CHECK(row.substr(row.rfind(',') + 1) == "5");
}

TEST_CASE("slope fit") {
    std::vector<std::pair<double, double>> quad, quart;
    for (double p : {0.01, 0.02, 0.03, 0.04, 0.05}) {
        quad.emplace_back(p, p * p);
        quart.emplace_back(p, 7 * std::pow(p, 4));
    }
    CHECK(fit_slope(quad) == doctest::Approx(2.0));
    CHECK(fit_slope(quart) == doctest::Approx(4.0));
    CHECK_THROWS_AS(fit_slope({{0.01, 0.1}, {0.02, 0.2}}), InsufficientData);
    CHECK_THROWS_AS(fit_slope({{0.01, 0.0}, {0.02, 0.2}, {0.03, 0.0}, {0.04, 0.3}}), InsufficientData);
    CHECK(fit_slope({{0.01, 0.0}, {0.02, 0.04}, {0.03, 0.09}, {0.04, 0.16}}) == doctest::Approx(2.0));
}
