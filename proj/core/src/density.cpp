#include "entwit/density.hpp"

#include <cmath>

#include "entwit/eigen.hpp"

namespace entwit {

namespace {

constexpr double kTol = 1e-10;

void require_two_qubits(const DensityMatrix& rho, const char* op) {
    if (rho.dim() != 4) {
        throw std::invalid_argument(std::string(op) + " needs a 4x4 two-qubit state");
    }
}

}  // namespace

DensityMatrix::DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {
    if (!m_.square()) throw InvalidDensityMatrix("not square");
    if (m_.rows != 2 && m_.rows != 4 && m_.rows != 16) {
        throw InvalidDensityMatrix("dimension must be 2, 4 or 16");
    }
    const double defect = hermiticity_defect(m_);
    if (defect > kTol) throw InvalidDensityMatrix("not Hermitian, defect " + std::to_string(defect));
    const cplx t = trace(m_);
    if (std::abs(t - cplx(1.0, 0.0)) > kTol) {
        throw InvalidDensityMatrix("trace is not 1, got " + std::to_string(t.real()));
    }
}

ComplexMatrix partial_transpose(const DensityMatrix& rho, Subsystem which) {
    require_two_qubits(rho, "partial_transpose");
    ComplexMatrix out(4, 4);
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            for (int ap = 0; ap < 2; ++ap) {
                for (int bp = 0; bp < 2; ++bp) {
                    // Transposing B swaps b <-> b'; transposing A swaps a <-> a'.
                    const cplx v = which == Subsystem::B ? rho.at(2 * a + bp, 2 * ap + b)
                                                         : rho.at(2 * ap + b, 2 * a + bp);
                    out.at(2 * a + b, 2 * ap + bp) = v;
                }
            }
        }
    }
    return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, Subsystem keep) {
    require_two_qubits(rho, "partial_trace");
    ComplexMatrix out(2, 2);
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            cplx s = 0.0;
            for (int k = 0; k < 2; ++k) {
                s += keep == Subsystem::A ? rho.at(2 * i + k, 2 * j + k)
                                          : rho.at(2 * k + i, 2 * k + j);
            }
            out.at(i, j) = s;
        }
    }
    return DensityMatrix(std::move(out));
}

DensityMatrix swap_qubits(const DensityMatrix& rho) {
    require_two_qubits(rho, "swap_qubits");
    ComplexMatrix out(4, 4);
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            for (int ap = 0; ap < 2; ++ap) {
                for (int bp = 0; bp < 2; ++bp) {
                    out.at(2 * b + a, 2 * bp + ap) = rho.at(2 * a + b, 2 * ap + bp);
                }
            }
        }
    }
    return DensityMatrix(std::move(out));
}

double purity(const DensityMatrix& rho) {
    return trace_product(rho.matrix(), rho.matrix()).real();
}

double min_pt_eigenvalue(const DensityMatrix& rho) {
    return hermitian_eigenvalues(partial_transpose(rho)).front();
}

Projector::Projector(std::array<cplx, 2> k) : ket(k) {
    const double n2 = std::norm(ket[0]) + std::norm(ket[1]);
    if (std::abs(n2 - 1.0) > kTol) {
        throw std::invalid_argument("projector ket is not normalized");
    }
}

ComplexMatrix Projector::matrix() const {
    ComplexMatrix m(2, 2);
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) m.at(i, j) = ket[static_cast<std::size_t>(i)] * std::conj(ket[static_cast<std::size_t>(j)]);
    }
    return m;
}

ComplexMatrix pauli_x() {
    ComplexMatrix m(2, 2);
    m.at(0, 1) = 1.0;
    m.at(1, 0) = 1.0;
    return m;
}

ComplexMatrix pauli_y() {
    ComplexMatrix m(2, 2);
    m.at(0, 1) = cplx(0.0, -1.0);
    m.at(1, 0) = cplx(0.0, 1.0);
    return m;
}

ComplexMatrix pauli_z() {
    ComplexMatrix m(2, 2);
    m.at(0, 0) = 1.0;
    m.at(1, 1) = -1.0;
    return m;
}

}  // namespace entwit
