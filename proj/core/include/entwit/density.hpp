#pragma once

#include <array>
#include <stdexcept>

#include "entwit/matrix.hpp"

namespace entwit {

class InvalidDensityMatrix : public std::invalid_argument {
public:
    explicit InvalidDensityMatrix(const std::string& why)
        : std::invalid_argument("invalid density matrix: " + why) {}
};

// Two-qubit (and one-qubit, and two-copy) states all flow through this type.
// Basis convention is fixed throughout the library: row-major computational
// ordering with the FIRST factor as the most significant index, so a 4x4
// matrix is indexed by |00>, |01>, |10>, |11> and the first qubit is the
// left factor of every kron().
//
// Construction checks squareness (dimension 2, 4 or 16), Hermiticity to
// 1e-10 and unit trace to 1e-10. Positivity is not checked here; it is the
// sampler's job to only produce positive matrices, and downstream spectral
// code tolerates eigenvalues down to -1e-10 roundoff.
class DensityMatrix {
public:
    explicit DensityMatrix(ComplexMatrix m);

    const ComplexMatrix& matrix() const { return m_; }
    int dim() const { return m_.rows; }
    cplx at(int r, int c) const { return m_.at(r, c); }

private:
    ComplexMatrix m_;
};

enum class Subsystem { A, B };

// Partial transpose of a 4x4 two-qubit state on the given subsystem. The
// result is Hermitian but generally not positive; it is returned as a plain
// matrix for exactly that reason.
ComplexMatrix partial_transpose(const DensityMatrix& rho, Subsystem which = Subsystem::B);

// Reduced state of the kept qubit.
DensityMatrix partial_trace(const DensityMatrix& rho, Subsystem keep);

// Exchanges the two qubits: |ab><a'b'|  ->  |ba><b'a'|.
DensityMatrix swap_qubits(const DensityMatrix& rho);

double purity(const DensityMatrix& rho);

// Smallest eigenvalue of the partial transpose. Negative exactly when the
// state is entangled (two qubits only, where PPT is conclusive).
double min_pt_eigenvalue(const DensityMatrix& rho);

// Rank-1 projector |k><k| onto a single-qubit ket, normalized to 1e-10.
struct Projector {
    std::array<cplx, 2> ket;

    explicit Projector(std::array<cplx, 2> k);
    ComplexMatrix matrix() const;
};

ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

}  // namespace entwit
