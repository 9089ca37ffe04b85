#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "entwit/matrix.hpp"
#include "entwit/rng.hpp"

using namespace entwit;

namespace {

ComplexMatrix pauli_x_m() {
    ComplexMatrix m = ComplexMatrix::zero(2, 2);
    m.at(0, 1) = 1.0;
    m.at(1, 0) = 1.0;
    return m;
}

ComplexMatrix pauli_z_m() {
    ComplexMatrix m = ComplexMatrix::zero(2, 2);
    m.at(0, 0) = 1.0;
    m.at(1, 1) = -1.0;
    return m;
}

ComplexMatrix random_matrix(int rows, int cols, std::uint64_t seed) {
    Rng rng(seed);
    ComplexMatrix m = ComplexMatrix::zero(rows, cols);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) m.at(r, c) = rng.standard_complex_normal();
    }
    return m;
}

double entrywise_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
    return max_abs(a - b);
}

}  // namespace

TEST_CASE("identity and zero factories") {
    const ComplexMatrix id = ComplexMatrix::identity(3);
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) {
            CHECK(id.at(r, c) == (r == c ? cplx(1.0) : cplx(0.0)));
        }
    }
    CHECK(max_abs(ComplexMatrix::zero(2, 5)) == 0.0);
    CHECK(ComplexMatrix::zero(2, 5).rows == 2);
    CHECK(ComplexMatrix::zero(2, 5).cols == 5);
}

TEST_CASE("kron of pauli x and pauli z hits the known entries") {
    const ComplexMatrix k = kron(pauli_x_m(), pauli_z_m());
    REQUIRE(k.rows == 4);
    REQUIRE(k.cols == 4);
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            cplx expected = 0.0;
            if (r == 0 && c == 2) expected = 1.0;
            if (r == 1 && c == 3) expected = -1.0;
            if (r == 2 && c == 0) expected = 1.0;
            if (r == 3 && c == 1) expected = -1.0;
            CHECK(k.at(r, c) == expected);
        }
    }
}

TEST_CASE("kron mixed-product identity (A kron B)(C kron D) = AC kron BD") {
    const ComplexMatrix a = random_matrix(2, 2, 1);
    const ComplexMatrix b = random_matrix(3, 3, 2);
    const ComplexMatrix c = random_matrix(2, 2, 3);
    const ComplexMatrix d = random_matrix(3, 3, 4);
    const ComplexMatrix lhs = kron(a, b) * kron(c, d);
    const ComplexMatrix rhs = kron(a * c, b * d);
    CHECK(entrywise_distance(lhs, rhs) < 1e-12);
}

TEST_CASE("matrix product matches a hand computation") {
    ComplexMatrix a = ComplexMatrix::zero(2, 2);
    a.at(0, 0) = cplx(1.0, 1.0);
    a.at(0, 1) = 2.0;
    a.at(1, 0) = 0.0;
    a.at(1, 1) = cplx(0.0, -1.0);
    ComplexMatrix b = ComplexMatrix::zero(2, 2);
    b.at(0, 0) = 3.0;
    b.at(0, 1) = cplx(0.0, 1.0);
    b.at(1, 0) = 1.0;
    b.at(1, 1) = cplx(-1.0, 0.0);
    const ComplexMatrix p = a * b;
    CHECK(p.at(0, 0) == cplx(5.0, 3.0));
    CHECK(p.at(0, 1) == cplx(-3.0, 1.0));
    CHECK(p.at(1, 0) == cplx(0.0, -1.0));
    CHECK(p.at(1, 1) == cplx(0.0, 1.0));
}

TEST_CASE("adjoint reverses products") {
    const ComplexMatrix a = random_matrix(3, 4, 5);
    const ComplexMatrix b = random_matrix(4, 2, 6);
    CHECK(entrywise_distance(adjoint(a * b), adjoint(b) * adjoint(a)) < 1e-12);
}

TEST_CASE("transpose and conjugate compose to adjoint") {
    const ComplexMatrix a = random_matrix(3, 3, 7);
    CHECK(entrywise_distance(adjoint(a), conjugate(transpose(a))) == 0.0);
}

TEST_CASE("trace_product equals trace of the product") {
    const ComplexMatrix a = random_matrix(4, 4, 8);
    const ComplexMatrix b = random_matrix(4, 4, 9);
    const cplx direct = trace(a * b);
    const cplx fused = trace_product(a, b);
    CHECK(std::abs(direct - fused) < 1e-12);
}

TEST_CASE("scalar multiply and subtraction") {
    const ComplexMatrix a = random_matrix(2, 3, 10);
    const ComplexMatrix twice = cplx(2.0) * a;
    CHECK(entrywise_distance(twice - a, a) < 1e-15);
}

TEST_CASE("frobenius norm of a known matrix") {
    ComplexMatrix m = ComplexMatrix::zero(2, 2);
    m.at(0, 0) = 3.0;
    m.at(1, 1) = 4.0;
    CHECK(frobenius_norm(m) == doctest::Approx(5.0));
}

TEST_CASE("hermiticity defect is zero exactly for hermitian input") {
    ComplexMatrix m = ComplexMatrix::zero(2, 2);
    m.at(0, 0) = 1.0;
    m.at(0, 1) = cplx(0.5, 0.25);
    m.at(1, 0) = cplx(0.5, -0.25);
    m.at(1, 1) = 2.0;
    CHECK(hermiticity_defect(m) == 0.0);
    m.at(1, 0) = cplx(0.5, -0.5);
    CHECK(hermiticity_defect(m) > 0.2);
}
