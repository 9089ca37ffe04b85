#include "entwit/witnesses.hpp"

#include <algorithm>
#include <cmath>

#include "entwit/eigen.hpp"

namespace entwit {

namespace {

constexpr double kDetectTol = 1e-9;

// V diag(f(values)) V^dagger for a Hermitian eigensystem.
ComplexMatrix assemble(const HermitianEigensystem& es, double (*f)(double)) {
    const int n = es.vectors.rows;
    ComplexMatrix out(n, n);
    for (int k = 0; k < n; ++k) {
        const double fv = f(es.values[static_cast<std::size_t>(k)]);
        if (fv == 0.0) continue;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                out.at(i, j) += fv * es.vectors.at(i, k) * std::conj(es.vectors.at(j, k));
            }
        }
    }
    return out;
}

double sqrt_clamped(double x) { return x > 0.0 ? std::sqrt(x) : 0.0; }

}  // namespace

std::string witness_name(WitnessKind kind) {
    switch (kind) {
        case WitnessKind::Ppt: return "ppt";
        case WitnessKind::Collectibility: return "collectibility";
        case WitnessKind::Fef: return "fef";
        case WitnessKind::Chsh: return "chsh";
        case WitnessKind::Entropic: return "entropic";
    }
    return "?";
}

WitnessVerdict ppt_label(const DensityMatrix& rho) {
    const double v = min_pt_eigenvalue(rho);
    return WitnessVerdict{WitnessKind::Ppt, v, v < 0.0};
}

double concurrence(const DensityMatrix& rho) {
    // Wootters: C = max(0, l1 - l2 - l3 - l4) where l_i are the descending
    // square roots of the eigenvalues of rho * rho_tilde. Computed here via
    // the similar Hermitian product sqrt(rho) * rho_tilde * sqrt(rho), which
    // has the same spectrum and keeps the eigensolver in Hermitian land.
    const ComplexMatrix yy = kron(pauli_y(), pauli_y());
    const ComplexMatrix rho_tilde = yy * conjugate(rho.matrix()) * yy;

    const HermitianEigensystem es = hermitian_eigensystem(rho.matrix());
    const ComplexMatrix s = assemble(es, sqrt_clamped);
    const ComplexMatrix m = s * rho_tilde * s;

    std::vector<double> lam = hermitian_eigenvalues(m);
    for (double& v : lam) v = sqrt_clamped(v);
    std::sort(lam.begin(), lam.end(), std::greater<double>());
    const double c = lam[0] - lam[1] - lam[2] - lam[3];
    return std::max(0.0, c);
}

SettingsCatalog collectibility_settings() { return default_catalog(5); }

WitnessVerdict collectibility(const DensityMatrix& rho) {
    // W = 16 (N_HH + N_VV + N_DD + N_RR) - 8 N_HV over the unnormalized
    // numerators N_xy. The diagonal terms bound the mixedness the state can
    // hide behind; the HV term carries the entanglement signal (on pure
    // states N_HV = C^2 / 8 and the diagonal terms vanish, giving W = -C^2).
    static const SettingsCatalog catalog = collectibility_settings();
    double w = 0.0;
    const std::array<double, 5> coeff = {16.0, 16.0, 16.0, 16.0, -8.0};
    for (std::size_t i = 0; i < 5; ++i) {
        const CollectiveTerms t = collective_terms(rho, catalog.settings[i]);
        w += coeff[i] * t.numerator;
    }
    return WitnessVerdict{WitnessKind::Collectibility, w, collectibility_detects(w)};
}

double collectibility_value_from_probs(const std::array<double, 5>& probs) {
    // Each numerator is prob * denominator with denominator = 1/4 for
    // maximally mixed marginals, so the coefficients above become 4 and -2.
    return 4.0 * (probs[0] + probs[1] + probs[2] + probs[3]) - 2.0 * probs[4];
}

bool collectibility_detects(double value) { return value < -kDetectTol; }

WitnessVerdict fef(const DensityMatrix& rho) {
    // Magic basis: e1 = (|00>+|11>)/sqrt(2), e2 = i(|00>-|11>)/sqrt(2),
    // e3 = i(|01>+|10>)/sqrt(2), e4 = (|01>-|10>)/sqrt(2). In this basis
    // every maximally entangled state is a REAL unit combination, so the
    // maximal overlap is the top eigenvalue of the real part of rho.
    const double r = 1.0 / std::sqrt(2.0);
    ComplexMatrix e(4, 4);  // column k = |e_k> in the computational basis
    e.at(0, 0) = r;
    e.at(3, 0) = r;
    e.at(0, 1) = cplx(0.0, r);
    e.at(3, 1) = cplx(0.0, -r);
    e.at(1, 2) = cplx(0.0, r);
    e.at(2, 2) = cplx(0.0, r);
    e.at(1, 3) = r;
    e.at(2, 3) = -r;

    const ComplexMatrix rho_magic = adjoint(e) * rho.matrix() * e;
    ComplexMatrix re(4, 4);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) re.at(i, j) = rho_magic.at(i, j).real();
    }
    // Symmetrize: Re of a Hermitian matrix is symmetric up to roundoff.
    for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) {
            const double v = 0.5 * (re.at(i, j).real() + re.at(j, i).real());
            re.at(i, j) = v;
            re.at(j, i) = v;
        }
    }
    const double f = hermitian_eigenvalues(re).back();
    return WitnessVerdict{WitnessKind::Fef, f, f > 0.5 + kDetectTol};
}

WitnessVerdict chsh(const DensityMatrix& rho) {
    const std::array<ComplexMatrix, 3> sigma = {pauli_x(), pauli_y(), pauli_z()};
    double t[3][3];
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            t[i][j] = trace_product(rho.matrix(),
                                    kron(sigma[static_cast<std::size_t>(i)],
                                         sigma[static_cast<std::size_t>(j)]))
                          .real();
        }
    }
    ComplexMatrix u(3, 3);  // T^T T, symmetric PSD
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            double s = 0.0;
            for (int k = 0; k < 3; ++k) s += t[k][i] * t[k][j];
            u.at(i, j) = s;
        }
    }
    const std::vector<double> eig = hermitian_eigenvalues(u);
    const double m = eig[2] + eig[1];
    return WitnessVerdict{WitnessKind::Chsh, m, m > 1.0 + kDetectTol};
}

WitnessVerdict entropic(const DensityMatrix& rho) {
    const double global = purity(rho);
    const double pa = purity(partial_trace(rho, Subsystem::A));
    const double pb = purity(partial_trace(rho, Subsystem::B));
    const double v = global - std::max(pa, pb);
    return WitnessVerdict{WitnessKind::Entropic, v, v > kDetectTol};
}

}  // namespace entwit
