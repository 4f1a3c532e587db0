#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pathspin/qcore.hpp"
#include "test_support.hpp"

using namespace pathspin;
using testsupport::Rng;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

StateVector up_z(const std::string& label) {
    return StateVector({label}, {cplx{1, 0}, cplx{0, 0}});
}

StateVector down_z(const std::string& label) {
    return StateVector({label}, {cplx{0, 0}, cplx{1, 0}});
}

StateVector up_x(const std::string& label) {
    return StateVector({label}, {cplx{kInvSqrt2, 0}, cplx{kInvSqrt2, 0}});
}

}  // namespace

TEST_CASE("tensor of basis kets gives the joint basis ket") {
    const StateVector psi1 = StateVector::basis({"path"}, 0);
    const StateVector joint = tensor(psi1, down_z("spin"));
    CHECK(joint.dim() == 4);
    CHECK(std::abs(joint.amps()[1] - cplx{1, 0}) < 1e-15);
    for (std::size_t i : {0u, 2u, 3u}) {
        CHECK(std::abs(joint.amps()[i]) < 1e-15);
    }
}

TEST_CASE("tensor(I, sigma_x) flips the second factor") {
    const Operator op = tensor(identity({"a"}), sigma_x("b"));
    const StateVector in = tensor(up_z("a"), up_z("b"));
    const StateVector out = apply(op, in);
    CHECK(fidelity(out, tensor(up_z("a"), down_z("b"))) == doctest::Approx(1.0));
}

TEST_CASE("tensor preserves normalization") {
    Rng rng(11);
    for (int i = 0; i < 20; ++i) {
        const StateVector a = rng.random_state({"a"});
        const StateVector b = rng.random_state({"b", "c"});
        CHECK(tensor(a, b).norm() == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("tensor rejects label collisions") {
    CHECK_THROWS_AS(tensor(up_z("a"), up_z("a")), validation_error);
}

TEST_CASE("tensor associativity") {
    Rng rng(12);
    const StateVector a = rng.random_state({"a"});
    const StateVector b = rng.random_state({"b"});
    const StateVector c = rng.random_state({"c"});
    const StateVector left = tensor(tensor(a, b), c);
    const StateVector right = tensor(a, tensor(b, c));
    for (std::size_t i = 0; i < left.dim(); ++i) {
        CHECK(std::abs(left.amps()[i] - right.amps()[i]) < 1e-14);
    }
}

TEST_CASE("apply: spin flip on z eigenstates, x eigenstates unaffected") {
    CHECK(fidelity(apply(sigma_x("s"), up_z("s")), down_z("s")) ==
          doctest::Approx(1.0));
    CHECK(fidelity(apply(sigma_x("s"), up_x("s")), up_x("s")) ==
          doctest::Approx(1.0));
}

TEST_CASE("apply identity is a no-op; unknown target rejected") {
    Rng rng(13);
    const StateVector s = rng.random_state({"a", "b"});
    const StateVector out = apply(identity({"a", "b"}), s);
    for (std::size_t i = 0; i < s.dim(); ++i) {
        CHECK(std::abs(out.amps()[i] - s.amps()[i]) < 1e-15);
    }
    CHECK_THROWS_AS(apply(sigma_x("zzz"), s), validation_error);
}

TEST_CASE("unitaries preserve the norm") {
    Rng rng(14);
    for (int i = 0; i < 50; ++i) {
        const StateVector s = rng.random_state({"a", "b"});
        const Operator u = tensor(pauli_along(rng.unit_vector(), "a"),
                                  pauli_along(rng.unit_vector(), "b"));
        CHECK(apply(u, s).norm() == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("expect on sigma_z eigenstate") {
    CHECK(expect(sigma_z("s"), up_z("s")) == doctest::Approx(1.0));
    CHECK(expect(sigma_z("s"), down_z("s")) == doctest::Approx(-1.0));
}

TEST_CASE("expect matches direct 4x4 contraction on a Bell-type state") {
    // A(gamma=1, delta=0) acts as sigma_z on the path pseudo-spin
    const double r = kInvSqrt2;
    const StateVector phi_plus({"path", "spin"},
                               {cplx{0, 0}, cplx{r, 0}, cplx{r, 0}, cplx{0, 0}});
    const Operator joint = tensor(sigma_z("path"), sigma_z("spin"));
    const double via_expect = expect(joint, phi_plus);
    const cplx via_oracle = testsupport::matrix_expectation(
        testsupport::kron(testsupport::pauli_matrix(2), 2,
                          testsupport::pauli_matrix(2), 2),
        phi_plus.amps());
    CHECK(via_expect == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(std::abs(via_oracle - cplx{via_expect, 0.0}) < 1e-12);
}

TEST_CASE("expect rejects non-Hermitian operators") {
    const Operator bad({"s"}, {cplx{0, 0}, cplx{1, 0}, cplx{0, 0}, cplx{0, 0}});
    CHECK_THROWS_AS(expect(bad, up_z("s")), validation_error);
}

TEST_CASE("expect is real on random Hermitian operators") {
    Rng rng(15);
    for (int i = 0; i < 100; ++i) {
        // random Hermitian from a random matrix M as M + M^dag
        std::vector<cplx> m(4);
        for (auto& v : m) v = rng.gaussian_cplx();
        std::vector<cplx> h(4);
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c)
                h[r * 2 + c] = m[r * 2 + c] + std::conj(m[c * 2 + r]);
        const Operator op({"a"}, h, OpKind::hermitian);
        const StateVector s = rng.random_state({"a", "b"});
        CHECK(std::isfinite(expect(op, s)));  // would throw on imaginary residue
    }
}

TEST_CASE("pauli_along endpoints and algebra") {
    const Operator sz = pauli_along(bloch_z(), "s");
    CHECK(std::abs(sz.at(0, 0) - cplx{1, 0}) < 1e-15);
    CHECK(std::abs(sz.at(1, 1) - cplx{-1, 0}) < 1e-15);
    const Operator sx = pauli_along(bloch_x(), "s");
    CHECK(std::abs(sx.at(0, 1) - cplx{1, 0}) < 1e-15);
    CHECK(std::abs(sx.at(1, 0) - cplx{1, 0}) < 1e-15);

    Rng rng(16);
    for (int i = 0; i < 100; ++i) {
        const Operator p = pauli_along(rng.unit_vector(), "s");
        const Operator sq = compose(p, p);
        CHECK(std::abs(sq.at(0, 0) - cplx{1, 0}) < 1e-12);
        CHECK(std::abs(sq.at(1, 1) - cplx{1, 0}) < 1e-12);
        CHECK(std::abs(sq.at(0, 1)) < 1e-12);
        CHECK(std::abs(sq.at(1, 0)) < 1e-12);
    }
    CHECK_THROWS_AS(pauli_along({1.0, 1.0, 0.0}, "s"), validation_error);
}

TEST_CASE("projector_along: rank-1 pieces resolve the identity") {
    const Operator pz = projector_along(bloch_z(), +1, "s");
    CHECK(std::abs(pz.at(0, 0) - cplx{1, 0}) < 1e-15);
    CHECK(std::abs(pz.at(1, 1)) < 1e-15);

    const StateVector upx = up_x("s");
    CHECK(apply(projector_along(bloch_x(), -1, "s"), upx).norm() < 1e-12);

    Rng rng(17);
    for (int i = 0; i < 50; ++i) {
        const BlochVector n = rng.unit_vector();
        const Operator pp = projector_along(n, +1, "s");
        const Operator pm = projector_along(n, -1, "s");
        CHECK(std::abs(pp.at(0, 0) + pp.at(1, 1) - cplx{1, 0}) < 1e-12);
        const Operator sum = add(pp, pm);
        // off-diagonals cancel exactly; diagonals within one ulp of 1
        CHECK(std::abs(sum.at(0, 1)) == 0.0);
        CHECK(std::abs(sum.at(1, 0)) == 0.0);
        CHECK(std::abs(sum.at(0, 0) - cplx{1, 0}) <= 3e-16);
        CHECK(std::abs(sum.at(1, 1) - cplx{1, 0}) <= 3e-16);
    }
    CHECK_THROWS_AS(projector_along({0.5, 0.0, 0.0}, +1, "s"), validation_error);
}

TEST_CASE("operator kind invariants are enforced at construction") {
    CHECK_THROWS_AS(Operator({"s"}, {cplx{2, 0}, cplx{0, 0}, cplx{0, 0}, cplx{1, 0}},
                             OpKind::unitary),
                    validation_error);
    CHECK_THROWS_AS(Operator({"s"}, {cplx{0, 0}, cplx{1, 0}, cplx{0, 0}, cplx{0, 0}},
                             OpKind::projector),
                    validation_error);
}

TEST_CASE("canonical phase fixes the global phase") {
    const StateVector s({"a"}, {cplx{0, -kInvSqrt2}, cplx{0, kInvSqrt2}});
    const StateVector c = s.canonical_phase();
    CHECK(c.amps()[0].real() == doctest::Approx(kInvSqrt2));
    CHECK(std::abs(c.amps()[0].imag()) < 1e-15);
    CHECK(fidelity(s, c) == doctest::Approx(1.0));
}
