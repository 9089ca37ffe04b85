#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "entwit/density.hpp"
#include "entwit/eigen.hpp"
#include "entwit/matrix.hpp"
#include "entwit/rng.hpp"
#include "entwit/sampler.hpp"

using namespace entwit;

namespace {

DensityMatrix singlet() {
    // (|01> - |10>)/sqrt(2)
    ComplexMatrix m = ComplexMatrix::zero(4, 4);
    m.at(1, 1) = 0.5;
    m.at(2, 2) = 0.5;
    m.at(1, 2) = -0.5;
    m.at(2, 1) = -0.5;
    return DensityMatrix(m);
}

DensityMatrix random_qubit(std::uint64_t seed) {
    Rng rng(seed);
    ComplexMatrix g = ComplexMatrix::zero(2, 2);
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) g.at(r, c) = rng.standard_complex_normal();
    }
    ComplexMatrix m = g * adjoint(g);
    m = cplx(1.0 / trace(m).real()) * m;
    return DensityMatrix(m);
}

}  // namespace

TEST_CASE("constructor rejects malformed input") {
    CHECK_THROWS_AS(DensityMatrix{ComplexMatrix::zero(3, 3)}, InvalidDensityMatrix);

    ComplexMatrix not_unit_trace = ComplexMatrix::identity(4);
    CHECK_THROWS_AS(DensityMatrix{not_unit_trace}, InvalidDensityMatrix);

    ComplexMatrix not_hermitian = cplx(0.25) * ComplexMatrix::identity(4);
    not_hermitian.at(0, 1) = cplx(0.0, 0.1);
    CHECK_THROWS_AS(DensityMatrix{not_hermitian}, InvalidDensityMatrix);
}

TEST_CASE("partial transpose of the singlet has spectrum -1/2, 1/2, 1/2, 1/2") {
    const std::vector<double> v = hermitian_eigenvalues(partial_transpose(singlet()));
    CHECK(v[0] == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(v[1] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(v[2] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(v[3] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("werner minimal partial-transpose eigenvalue is (1 - 3p)/4") {
    for (double p : {0.0, 0.2, 1.0 / 3.0, 0.5, 0.9, 1.0}) {
        CHECK(min_pt_eigenvalue(werner_state(p)) == doctest::Approx((1.0 - 3.0 * p) / 4.0).epsilon(1e-10));
    }
}

TEST_CASE("both partial-transpose sides give the same minimal eigenvalue") {
    Rng rng(3);
    for (int i = 0; i < 20; ++i) {
        const DensityMatrix rho = sample_state({EnsembleKind::GinibreFull, 4, 0.0}, rng).rho;
        const double a = hermitian_eigenvalues(partial_transpose(rho, Subsystem::A)).front();
        const double b = hermitian_eigenvalues(partial_transpose(rho, Subsystem::B)).front();
        CHECK(a == doctest::Approx(b).epsilon(1e-10));
    }
}

TEST_CASE("partial transpose is an involution") {
    Rng rng(4);
    const DensityMatrix rho = sample_state({EnsembleKind::GinibreFull, 4, 0.0}, rng).rho;
    const DensityMatrix once{partial_transpose(rho)};
    CHECK(max_abs(partial_transpose(once) - rho.matrix()) == 0.0);
}

TEST_CASE("werner marginals are maximally mixed") {
    const DensityMatrix w = werner_state(0.7);
    const ComplexMatrix half_id = cplx(0.5) * ComplexMatrix::identity(2);
    CHECK(max_abs(partial_trace(w, Subsystem::A).matrix() - half_id) < 1e-12);
    CHECK(max_abs(partial_trace(w, Subsystem::B).matrix() - half_id) < 1e-12);
}

TEST_CASE("partial trace of a product state recovers the factors") {
    const DensityMatrix a = random_qubit(5);
    const DensityMatrix b = random_qubit(6);
    const DensityMatrix ab = DensityMatrix(kron(a.matrix(), b.matrix()));
    CHECK(max_abs(partial_trace(ab, Subsystem::A).matrix() - a.matrix()) < 1e-12);
    CHECK(max_abs(partial_trace(ab, Subsystem::B).matrix() - b.matrix()) < 1e-12);
}

TEST_CASE("swap_qubits exchanges the factors of a product state") {
    const DensityMatrix a = random_qubit(7);
    const DensityMatrix b = random_qubit(8);
    const DensityMatrix ab = DensityMatrix(kron(a.matrix(), b.matrix()));
    const DensityMatrix ba = DensityMatrix(kron(b.matrix(), a.matrix()));
    // Not exactly zero: FMA contraction makes complex multiplication depend
    // on operand order at the last bit.
    CHECK(max_abs(swap_qubits(ab).matrix() - ba.matrix()) < 1e-15);
}

TEST_CASE("swap_qubits leaves the werner family invariant") {
    const DensityMatrix w = werner_state(0.42);
    CHECK(max_abs(swap_qubits(w).matrix() - w.matrix()) == 0.0);
}

TEST_CASE("werner purity is (1 + 3p^2)/4") {
    for (double p : {0.0, 0.3, 0.8, 1.0}) {
        CHECK(purity(werner_state(p)) == doctest::Approx((1.0 + 3.0 * p * p) / 4.0).epsilon(1e-12));
    }
}

TEST_CASE("an eleven-point werner grid has exactly four separable points") {
    int separable = 0;
    for (int i = 0; i <= 10; ++i) {
        if (min_pt_eigenvalue(werner_state(i / 10.0)) >= 0.0) ++separable;
    }
    CHECK(separable == 4);  // p = 0, 0.1, 0.2, 0.3; the boundary sits at 1/3
}

TEST_CASE("pauli matrices satisfy sigma_x sigma_y = i sigma_z") {
    const ComplexMatrix lhs = pauli_x() * pauli_y();
    const ComplexMatrix rhs = cplx(0.0, 1.0) * pauli_z();
    CHECK(max_abs(lhs - rhs) == 0.0);
    CHECK(trace(pauli_x()).real() == 0.0);
    CHECK(max_abs(pauli_y() * pauli_y() - ComplexMatrix::identity(2)) == 0.0);
}

TEST_CASE("projector validates normalization and projects") {
    CHECK_THROWS_AS(Projector({cplx(1.0), cplx(1.0)}), std::invalid_argument);
    const Projector d({cplx(std::sqrt(0.5)), cplx(std::sqrt(0.5))});
    const ComplexMatrix m = d.matrix();
    CHECK(max_abs(m * m - m) < 1e-15);
    CHECK(trace(m).real() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(hermiticity_defect(m) == 0.0);
}
