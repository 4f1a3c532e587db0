#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pathspin/apparatus.hpp"
#include "pathspin/shots.hpp"
#include "test_support.hpp"

using namespace pathspin;
using testsupport::Rng;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

StateVector phi_plus() {
    return StateVector({"path", "spin"},
                       {cplx{0, 0}, cplx{kInvSqrt2, 0}, cplx{kInvSqrt2, 0},
                        cplx{0, 0}});
}

StateVector chi_plus() {
    return StateVector({"path", "spin"},
                       {cplx{0.5, 0}, cplx{0.5, 0}, cplx{0.5, 0}, cplx{0.5, 0}});
}

}  // namespace

TEST_CASE("born probabilities on a pure psi1 input") {
    // |psi1>|up_z> through a (gamma, delta) analyzer: p(psi3) = gamma^2
    const StateVector in = tensor(StateVector::basis({"path"}, 0),
                                  StateVector::basis({"spin"}, 0));
    for (double theta : {0.1, 0.7, 1.2}) {
        const double g = std::cos(theta);
        const double d = std::sin(theta);
        const auto p = born_probabilities(in, {path_observable(g, d), bloch_z()});
        CHECK(p[0] == doctest::Approx(g * g).epsilon(1e-12));
        CHECK(p[1] == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(p[2] == doctest::Approx(d * d).epsilon(1e-12));
        CHECK(p[3] == doctest::Approx(0.0).epsilon(1e-12));
    }
}

TEST_CASE("born probabilities: balanced analyzer on the product subensemble") {
    // spin factor is |up_x>, so the spin-x minus channels are empty and the
    // two output ports split 50:50 at chi = 0
    const auto p = born_probabilities(
        chi_plus(), {path_observable(kInvSqrt2, kInvSqrt2), bloch_x()});
    CHECK(p[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(p[1] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(p[2] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(p[3] == doctest::Approx(0.0).epsilon(1e-12));

    // an arm phase of pi/2 makes the interference fully constructive on psi3
    const auto q = born_probabilities(
        chi_plus(),
        {path_observable(kInvSqrt2, kInvSqrt2, testsupport::kPi / 2.0), bloch_x()});
    CHECK(q[0] + q[1] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(q[2] + q[3] == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("born probabilities on |phi+> with the default settings") {
    const auto p = born_probabilities(phi_plus(),
                                      {path_observable(1.0, 0.0), bloch_z()});
    // perfect anticorrelation between channel sign and spin sign
    CHECK(p[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(p[1] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(p[2] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(p[3] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK_THROWS_AS(
        born_probabilities(StateVector({"path", "spin"},
                                       {cplx{1, 0}, cplx{1, 0}, cplx{0, 0},
                                        cplx{0, 0}}),
                           {path_observable(1.0, 0.0), bloch_z()}),
        validation_error);
}

TEST_CASE("counter rng is stateless and stable") {
    CHECK(counter_rng(42, 0) == counter_rng(42, 0));
    CHECK(counter_rng(42, 0) != counter_rng(42, 1));
    CHECK(counter_rng(42, 0) != counter_rng(43, 0));
    // order independence: evaluating out of order changes nothing
    const std::uint64_t later = counter_rng(7, 1000);
    (void)counter_rng(7, 5);
    CHECK(counter_rng(7, 1000) == later);
}

TEST_CASE("sampling a degenerate distribution") {
    const CountTable t = sample_counts({0.0, 1.0, 0.0, 0.0},
                                       SamplerConfig{9, 1000});
    CHECK(t.n3m == 1000);
    CHECK(t.n3p + t.n4p + t.n4m == 0);
    CHECK(t.total == 1000);
    CHECK(estimate_correlation(t) == doctest::Approx(-1.0));

    const CountTable one = sample_counts({0.25, 0.25, 0.25, 0.25},
                                         SamplerConfig{9, 1});
    CHECK(one.total == 1);
    CHECK(one.n3p + one.n3m + one.n4p + one.n4m == 1);
}

TEST_CASE("sampling validates its inputs") {
    CHECK_THROWS_AS(sample_counts({0.5, 0.5, 0.5, -0.5}, SamplerConfig{1, 10}),
                    numeric_error);
    CHECK_THROWS_AS(sample_counts({0.3, 0.3, 0.3, 0.3}, SamplerConfig{1, 10}),
                    numeric_error);
    CHECK_THROWS_AS(sample_counts({0.25, 0.25, 0.25, 0.25}, SamplerConfig{1, 0}),
                    validation_error);
    CHECK_THROWS_AS(estimate_correlation(CountTable{}), validation_error);
    // drift below 1e-9 is repaired silently
    const CountTable t = sample_counts({0.25 + 2e-10, 0.25, 0.25, 0.25},
                                       SamplerConfig{1, 100});
    CHECK(t.total == 100);
}

TEST_CASE("identical seeds reproduce identical counts") {
    const JointSetting j{path_observable(kInvSqrt2, kInvSqrt2), bloch_z()};
    const CountTable a = sample_counts(phi_plus(), j, SamplerConfig{123, 5000});
    const CountTable b = sample_counts(phi_plus(), j, SamplerConfig{123, 5000});
    CHECK(a.n3p == b.n3p);
    CHECK(a.n3m == b.n3m);
    CHECK(a.n4p == b.n4p);
    CHECK(a.n4m == b.n4m);
    const CountTable c = sample_counts(phi_plus(), j, SamplerConfig{124, 5000});
    CHECK((a.n3p != c.n3p || a.n3m != c.n3m || a.n4p != c.n4p || a.n4m != c.n4m));
}

TEST_CASE("golden counts for the pinned seed") {
    const JointSetting j{path_observable(1.0, 0.0), bloch_z()};
    const CountTable t = sample_counts(phi_plus(), j, SamplerConfig{42, 100000});
    // frozen output of the counter-based sampler; any change to the rng, the
    // quantization, or the draw ordering shows up here
    CHECK(t.n3p == 0);
    CHECK(t.n4m == 0);
    CHECK(t.n3m + t.n4p == 100000);
    CHECK(t.n3m == 49959);
    CHECK(t.n4p == 50041);
    CHECK(t.to_csv_row("A1xZ") == "A1xZ,0,49959,50041,0,100000");
}

TEST_CASE("frequencies converge to the born probabilities") {
    Rng rng(31);
    for (int trial = 0; trial < 5; ++trial) {
        const StateVector s = rng.random_state({"path", "spin"});
        const double th = rng.uniform(0.0, testsupport::kPi);
        const JointSetting j{path_observable(std::cos(th), std::sin(th)),
                             rng.unit_vector()};
        const auto p = born_probabilities(s, j);
        const std::uint64_t n = 200000;
        const CountTable t = sample_counts(s, j, SamplerConfig{rng.next_u64(), n});
        const std::array<std::uint64_t, 4> c = {t.n3p, t.n3m, t.n4p, t.n4m};
        for (int d = 0; d < 4; ++d) {
            const double se =
                std::sqrt(std::max(p[d] * (1.0 - p[d]) / n, 1e-12));
            CHECK(std::abs(static_cast<double>(c[d]) / n - p[d]) <= 5.0 * se);
        }
    }
}

TEST_CASE("estimated combination violates the bound at the pinned shot count") {
    // settings at the analytic optimum for |phi+>: theta = 3pi/8, 5pi/8 with
    // spins z and y via chi = pi on the second? use free-spin values directly
    const PathObservable a1 = path_observable(std::cos(3.0 * testsupport::kPi / 8.0),
                                              std::sin(3.0 * testsupport::kPi / 8.0));
    const PathObservable a2 = path_observable(std::cos(5.0 * testsupport::kPi / 8.0),
                                              std::sin(5.0 * testsupport::kPi / 8.0));
    const BlochVector b1 = bloch_z();
    const BlochVector b2 = bloch_y();
    const std::uint64_t n = 100000;
    double s_est = 0.0;
    int k = 0;
    for (const PathObservable* a : {&a1, &a2}) {
        for (const BlochVector* b : {&b1, &b2}) {
            const CountTable t = sample_counts(phi_plus(), {*a, *b},
                                               SamplerConfig{counter_rng(42, k), n});
            const double e = estimate_correlation(t);
            s_est += (k == 3) ? -e : e;
            ++k;
        }
    }
    // four correlations, each with se <= 1/sqrt(n); require > 10 pooled se
    const double se = 2.0 / std::sqrt(static_cast<double>(n));
    CHECK(std::abs(s_est) - 2.0 > 10.0 * se);
    CHECK(std::abs(s_est) == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(0.01));
}
