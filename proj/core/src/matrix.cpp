#include "entwit/matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace entwit {

namespace {

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows != b.rows || a.cols != b.cols) {
        throw std::invalid_argument("matrix shape mismatch");
    }
}

}  // namespace

ComplexMatrix ComplexMatrix::identity(int n) {
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::zero(int r, int c) { return ComplexMatrix(r, c); }

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_shape(a, b);
    ComplexMatrix out(a.rows, a.cols);
    for (std::size_t i = 0; i < a.data.size(); ++i) out.data[i] = a.data[i] + b.data[i];
    return out;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_shape(a, b);
    ComplexMatrix out(a.rows, a.cols);
    for (std::size_t i = 0; i < a.data.size(); ++i) out.data[i] = a.data[i] - b.data[i];
    return out;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols != b.rows) throw std::invalid_argument("matrix product shape mismatch");
    ComplexMatrix out(a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i) {
        for (int k = 0; k < a.cols; ++k) {
            const cplx aik = a.at(i, k);
            if (aik == cplx{}) continue;
            for (int j = 0; j < b.cols; ++j) out.at(i, j) += aik * b.at(k, j);
        }
    }
    return out;
}

ComplexMatrix operator*(cplx s, const ComplexMatrix& m) {
    ComplexMatrix out(m.rows, m.cols);
    for (std::size_t i = 0; i < m.data.size(); ++i) out.data[i] = s * m.data[i];
    return out;
}

ComplexMatrix operator*(double s, const ComplexMatrix& m) { return cplx(s, 0.0) * m; }

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows * b.rows, a.cols * b.cols);
    for (int i = 0; i < a.rows; ++i) {
        for (int j = 0; j < a.cols; ++j) {
            const cplx aij = a.at(i, j);
            if (aij == cplx{}) continue;
            for (int k = 0; k < b.rows; ++k) {
                for (int l = 0; l < b.cols; ++l) {
                    out.at(i * b.rows + k, j * b.cols + l) = aij * b.at(k, l);
                }
            }
        }
    }
    return out;
}

ComplexMatrix adjoint(const ComplexMatrix& m) {
    ComplexMatrix out(m.cols, m.rows);
    for (int i = 0; i < m.rows; ++i) {
        for (int j = 0; j < m.cols; ++j) out.at(j, i) = std::conj(m.at(i, j));
    }
    return out;
}

ComplexMatrix transpose(const ComplexMatrix& m) {
    ComplexMatrix out(m.cols, m.rows);
    for (int i = 0; i < m.rows; ++i) {
        for (int j = 0; j < m.cols; ++j) out.at(j, i) = m.at(i, j);
    }
    return out;
}

ComplexMatrix conjugate(const ComplexMatrix& m) {
    ComplexMatrix out(m.rows, m.cols);
    for (std::size_t i = 0; i < m.data.size(); ++i) out.data[i] = std::conj(m.data[i]);
    return out;
}

cplx trace(const ComplexMatrix& m) {
    if (!m.square()) throw std::invalid_argument("trace of non-square matrix");
    cplx t = 0.0;
    for (int i = 0; i < m.rows; ++i) t += m.at(i, i);
    return t;
}

cplx trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols != b.rows || a.rows != b.cols) {
        throw std::invalid_argument("trace_product shape mismatch");
    }
    cplx t = 0.0;
    for (int i = 0; i < a.rows; ++i) {
        for (int k = 0; k < a.cols; ++k) t += a.at(i, k) * b.at(k, i);
    }
    return t;
}

double frobenius_norm(const ComplexMatrix& m) {
    double s = 0.0;
    for (const cplx& v : m.data) s += std::norm(v);
    return std::sqrt(s);
}

double max_abs(const ComplexMatrix& m) {
    double s = 0.0;
    for (const cplx& v : m.data) s = std::max(s, std::abs(v));
    return s;
}

double hermiticity_defect(const ComplexMatrix& m) {
    if (!m.square()) throw std::invalid_argument("hermiticity_defect of non-square matrix");
    double d = 0.0;
    for (int i = 0; i < m.rows; ++i) {
        for (int j = 0; j < m.cols; ++j) {
            d = std::max(d, std::abs(m.at(i, j) - std::conj(m.at(j, i))));
        }
    }
    return d;
}

}  // namespace entwit
