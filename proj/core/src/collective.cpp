#include "entwit/collective.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "entwit/parallel.hpp"

namespace entwit {

namespace {

constexpr double kDenominatorFloor = 1e-12;
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

Projector ket_for(char c) {
    switch (c) {
        case 'H': return ket_h();
        case 'V': return ket_v();
        case 'D': return ket_d();
        case 'A': return ket_a();
        case 'R': return ket_r();
        case 'L': return ket_l();
        default: throw std::invalid_argument(std::string("unknown ket name '") + c + "'");
    }
}

ProjectionSetting setting_from_name(const std::string& name) {
    if (name.size() != 2) throw std::invalid_argument("setting name must be two kets");
    return ProjectionSetting{name, ket_for(name[0]), ket_for(name[1])};
}

// The n = 15 catalog in feature-column order; smaller catalogs select by
// name so that every catalog is a subset of this list.
const std::array<const char*, 15> kFullCatalog = {
    "HH", "VV", "DD", "RR", "HV", "DA", "VH", "AA", "LL", "DR", "RD", "HD", "DH", "RH", "VL",
};

std::vector<std::string> names_for(int n) {
    switch (n) {
        case 3: return {"HH", "DD", "RR"};
        case 5: case 6: case 12: case 15: {
            std::vector<std::string> names;
            for (int i = 0; i < n; ++i) names.emplace_back(kFullCatalog[static_cast<std::size_t>(i)]);
            return names;
        }
        default: throw UnknownCatalogSize(n);
    }
}

struct SettingOperators {
    ComplexMatrix numerator_op;    // pi_x (x) rho_B (x) pi_y, 16 x 16
    ComplexMatrix denominator_op;  // pi_x (x) I_4   (x) pi_y
};

SettingOperators make_operators(const ProjectionSetting& s) {
    const ComplexMatrix px = s.x.matrix();
    const ComplexMatrix py = s.y.matrix();
    const ComplexMatrix bell = bell_singlet_projector().matrix();
    return SettingOperators{
        kron(px, kron(bell, py)),
        kron(px, kron(ComplexMatrix::identity(4), py)),
    };
}

CollectiveTerms terms_from_ops(const ComplexMatrix& rho_t, const SettingOperators& ops) {
    // Both operators are Hermitian, so the traces are real up to roundoff.
    return CollectiveTerms{
        trace_product(rho_t, ops.numerator_op).real(),
        trace_product(rho_t, ops.denominator_op).real(),
    };
}

std::vector<double> probs_from_ops(const ComplexMatrix& rho_t,
                                   const std::vector<SettingOperators>& ops, bool* degenerate) {
    std::vector<double> probs;
    probs.reserve(ops.size());
    bool flag = false;
    for (const auto& op : ops) {
        const CollectiveTerms t = terms_from_ops(rho_t, op);
        if (t.denominator < kDenominatorFloor) {
            // A local projector annihilated the state; the feature is
            // defined as 0 and the sample is flagged.
            probs.push_back(0.0);
            flag = true;
        } else {
            // Both traces are nonnegative and numerator <= denominator, so
            // anything outside [0, 1] is trace roundoff worth removing.
            probs.push_back(std::clamp(t.numerator / t.denominator, 0.0, 1.0));
        }
    }
    if (degenerate) *degenerate = flag;
    return probs;
}

}  // namespace

Projector ket_h() { return Projector({cplx(1.0, 0.0), cplx(0.0, 0.0)}); }
Projector ket_v() { return Projector({cplx(0.0, 0.0), cplx(1.0, 0.0)}); }
Projector ket_d() { return Projector({cplx(kInvSqrt2, 0.0), cplx(kInvSqrt2, 0.0)}); }
Projector ket_a() { return Projector({cplx(kInvSqrt2, 0.0), cplx(-kInvSqrt2, 0.0)}); }
Projector ket_r() { return Projector({cplx(kInvSqrt2, 0.0), cplx(0.0, kInvSqrt2)}); }
Projector ket_l() { return Projector({cplx(kInvSqrt2, 0.0), cplx(0.0, -kInvSqrt2)}); }

SettingsCatalog default_catalog(int n) {
    SettingsCatalog catalog;
    for (const auto& name : names_for(n)) catalog.settings.push_back(setting_from_name(name));
    return catalog;
}

DensityMatrix bell_singlet_projector() {
    ComplexMatrix m(4, 4);
    m.at(1, 1) = 0.5;
    m.at(2, 2) = 0.5;
    m.at(1, 2) = -0.5;
    m.at(2, 1) = -0.5;
    return DensityMatrix(std::move(m));
}

DensityMatrix two_copy_state(const DensityMatrix& rho) {
    if (rho.dim() != 4) throw std::invalid_argument("two_copy_state needs a 4x4 state");
    return DensityMatrix(kron(rho.matrix(), swap_qubits(rho).matrix()));
}

CollectiveTerms collective_terms(const DensityMatrix& rho, const ProjectionSetting& s) {
    const DensityMatrix rho_t = two_copy_state(rho);
    return terms_from_ops(rho_t.matrix(), make_operators(s));
}

double collective_probability(const DensityMatrix& rho, const ProjectionSetting& s) {
    const CollectiveTerms t = collective_terms(rho, s);
    if (t.denominator < kDenominatorFloor) throw DegenerateDenominator();
    return std::clamp(t.numerator / t.denominator, 0.0, 1.0);
}

std::vector<double> feature_probs(const DensityMatrix& rho, const SettingsCatalog& catalog,
                                  bool* degenerate) {
    std::vector<SettingOperators> ops;
    ops.reserve(catalog.settings.size());
    for (const auto& s : catalog.settings) ops.push_back(make_operators(s));
    const DensityMatrix rho_t = two_copy_state(rho);
    return probs_from_ops(rho_t.matrix(), ops, degenerate);
}

FeatureVector feature_vector(const DensityMatrix& rho, const SettingsCatalog& catalog) {
    FeatureVector fv;
    fv.probs = feature_probs(rho, catalog, &fv.degenerate);
    fv.min_pt_eig = min_pt_eigenvalue(rho);
    fv.entangled = fv.min_pt_eig < 0.0;
    fv.purity = purity(rho);
    return fv;
}

std::vector<FeatureVector> feature_vectors(const std::vector<DensityMatrix>& rhos,
                                           const SettingsCatalog& catalog, int workers) {
    std::vector<SettingOperators> ops;
    ops.reserve(catalog.settings.size());
    for (const auto& s : catalog.settings) ops.push_back(make_operators(s));

    std::vector<FeatureVector> out(rhos.size());
    parallel_chunks(static_cast<long>(rhos.size()), resolve_workers(workers),
                    [&](long begin, long end) {
                        for (long i = begin; i < end; ++i) {
                            const DensityMatrix& rho = rhos[static_cast<std::size_t>(i)];
                            FeatureVector fv;
                            const DensityMatrix rho_t = two_copy_state(rho);
                            fv.probs = probs_from_ops(rho_t.matrix(), ops, &fv.degenerate);
                            fv.min_pt_eig = min_pt_eigenvalue(rho);
                            fv.entangled = fv.min_pt_eig < 0.0;
                            fv.purity = purity(rho);
                            out[static_cast<std::size_t>(i)] = std::move(fv);
                        }
                    });
    return out;
}

}  // namespace entwit
