#include "entwit/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace entwit {

namespace {

constexpr double kHermitianTol = 1e-8;
constexpr int kMaxSweeps = 64;

double off_diagonal_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (int i = 0; i < a.rows; ++i) {
        for (int j = 0; j < a.cols; ++j) {
            if (i != j) s += std::norm(a.at(i, j));
        }
    }
    return std::sqrt(s);
}

// One full eigensystem pass. A is destroyed; V accumulates the rotations
// when non-null.
void jacobi(ComplexMatrix& a, ComplexMatrix* v) {
    const int n = a.rows;
    const double scale = std::max(1.0, frobenius_norm(a));
    const double stop = 1e-14 * scale;

    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        if (off_diagonal_norm(a) <= stop) return;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const cplx g = a.at(p, q);
                const double ag = std::abs(g);
                if (ag <= 1e-300) {
                    a.at(p, q) = 0.0;
                    a.at(q, p) = 0.0;
                    continue;
                }

                // Unitary 2x2 rotation zeroing a(p,q). With alpha = a(p,p),
                // beta = a(q,q), gamma = a(p,q) = |gamma| e^{i phi}, the
                // tangent solves t^2 + 2*theta*t - 1 = 0 for
                // theta = (beta - alpha) / (2 |gamma|), taking the smaller
                // root for stability.
                const double alpha = a.at(p, p).real();
                const double beta = a.at(q, q).real();
                const double theta = (beta - alpha) / (2.0 * ag);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const cplx phase = g / ag;
                const cplx s = t * c * phase;

                // Columns p and q of A <- A G, with G(p,p)=c, G(p,q)=s,
                // G(q,p)=-conj(s), G(q,q)=c.
                for (int i = 0; i < n; ++i) {
                    const cplx aip = a.at(i, p);
                    const cplx aiq = a.at(i, q);
                    a.at(i, p) = c * aip - std::conj(s) * aiq;
                    a.at(i, q) = s * aip + c * aiq;
                }
                // Rows p and q of A <- G^dagger A.
                for (int j = 0; j < n; ++j) {
                    const cplx apj = a.at(p, j);
                    const cplx aqj = a.at(q, j);
                    a.at(p, j) = c * apj - s * aqj;
                    a.at(q, j) = std::conj(s) * apj + c * aqj;
                }
                a.at(p, q) = 0.0;
                a.at(q, p) = 0.0;
                a.at(p, p) = cplx(a.at(p, p).real(), 0.0);
                a.at(q, q) = cplx(a.at(q, q).real(), 0.0);

                if (v) {
                    for (int i = 0; i < n; ++i) {
                        const cplx vip = v->at(i, p);
                        const cplx viq = v->at(i, q);
                        v->at(i, p) = c * vip - std::conj(s) * viq;
                        v->at(i, q) = s * vip + c * viq;
                    }
                }
            }
        }
    }
    if (off_diagonal_norm(a) > stop) throw EigenConvergenceError();
}

ComplexMatrix symmetrized(const ComplexMatrix& m) {
    if (!m.square()) throw std::invalid_argument("eigensolver needs a square matrix");
    const double defect = hermiticity_defect(m);
    if (defect > kHermitianTol) throw NotHermitianError(defect);
    ComplexMatrix a(m.rows, m.cols);
    for (int i = 0; i < m.rows; ++i) {
        for (int j = 0; j < m.cols; ++j) {
            a.at(i, j) = 0.5 * (m.at(i, j) + std::conj(m.at(j, i)));
        }
    }
    return a;
}

}  // namespace

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
    ComplexMatrix a = symmetrized(m);
    jacobi(a, nullptr);
    std::vector<double> vals(static_cast<std::size_t>(a.rows));
    for (int i = 0; i < a.rows; ++i) vals[static_cast<std::size_t>(i)] = a.at(i, i).real();
    std::sort(vals.begin(), vals.end());
    return vals;
}

HermitianEigensystem hermitian_eigensystem(const ComplexMatrix& m) {
    ComplexMatrix a = symmetrized(m);
    ComplexMatrix v = ComplexMatrix::identity(a.rows);
    jacobi(a, &v);

    const int n = a.rows;
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int i, int j) { return a.at(i, i).real() < a.at(j, j).real(); });

    HermitianEigensystem out;
    out.values.resize(static_cast<std::size_t>(n));
    out.vectors = ComplexMatrix(n, n);
    for (int k = 0; k < n; ++k) {
        out.values[static_cast<std::size_t>(k)] = a.at(order[static_cast<std::size_t>(k)], order[static_cast<std::size_t>(k)]).real();
        for (int i = 0; i < n; ++i) {
            out.vectors.at(i, k) = v.at(i, order[static_cast<std::size_t>(k)]);
        }
    }
    return out;
}

}  // namespace entwit
