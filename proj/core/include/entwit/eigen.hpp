#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "entwit/matrix.hpp"

namespace entwit {

class NotHermitianError : public std::invalid_argument {
public:
    explicit NotHermitianError(double defect)
        : std::invalid_argument("matrix is not Hermitian, defect " + std::to_string(defect)) {}
};

class EigenConvergenceError : public std::runtime_error {
public:
    EigenConvergenceError() : std::runtime_error("Jacobi iteration failed to converge") {}
};

struct HermitianEigensystem {
    std::vector<double> values;  // ascending
    ComplexMatrix vectors;       // column k is the eigenvector for values[k]
};

// Cyclic complex Jacobi. Input must be Hermitian to within 1e-8 in max norm
// (NotHermitianError otherwise); it is symmetrized before iterating so the
// computed spectrum is exactly real. Intended for dimensions up to 16, where
// it reaches machine precision in a handful of sweeps.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);
HermitianEigensystem hermitian_eigensystem(const ComplexMatrix& m);

}  // namespace entwit
