#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace entwit {

using cplx = std::complex<double>;

// Dense row-major complex matrix. Every matrix in this library is tiny
// (dimension 2, 4 or 16), so the representation stays value-typed and
// allocation cost is irrelevant next to the linear algebra on top.
struct ComplexMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<cplx> data;

    ComplexMatrix() = default;
    ComplexMatrix(int r, int c)
        : rows(r), cols(c), data(static_cast<std::size_t>(r) * static_cast<std::size_t>(c)) {}

    cplx& at(int r, int c) { return data[static_cast<std::size_t>(r) * cols + c]; }
    const cplx& at(int r, int c) const { return data[static_cast<std::size_t>(r) * cols + c]; }

    bool square() const { return rows == cols; }

    static ComplexMatrix identity(int n);
    static ComplexMatrix zero(int r, int c);
};

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(cplx s, const ComplexMatrix& m);
ComplexMatrix operator*(double s, const ComplexMatrix& m);

// Kronecker product, row-major block layout: out((i*p+k),(j*q+l)) = a(i,j)*b(k,l).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix adjoint(const ComplexMatrix& m);
ComplexMatrix transpose(const ComplexMatrix& m);
ComplexMatrix conjugate(const ComplexMatrix& m);

cplx trace(const ComplexMatrix& m);
cplx trace_product(const ComplexMatrix& a, const ComplexMatrix& b);  // Tr(a*b) without forming a*b

double frobenius_norm(const ComplexMatrix& m);
double max_abs(const ComplexMatrix& m);

// Largest |m - m^dagger| entry; zero for exactly Hermitian input.
double hermiticity_defect(const ComplexMatrix& m);

}  // namespace entwit
