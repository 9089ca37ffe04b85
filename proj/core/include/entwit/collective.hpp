#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "entwit/density.hpp"

namespace entwit {

// One coincidence-measurement configuration: a local projector on qubit 1
// of copy I and one on qubit 4 of copy II, with the Bell projection fixed
// on qubits (2,3) in between.
struct ProjectionSetting {
    std::string name;  // e.g. "HH", "DV"
    Projector x;
    Projector y;
};

struct SettingsCatalog {
    std::vector<ProjectionSetting> settings;
    int size() const { return static_cast<int>(settings.size()); }
};

class UnknownCatalogSize : public std::invalid_argument {
public:
    explicit UnknownCatalogSize(int n)
        : std::invalid_argument("no default catalog of size " + std::to_string(n) +
                                " (supported: 3, 5, 6, 12, 15)") {}
};

class DegenerateDenominator : public std::runtime_error {
public:
    DegenerateDenominator()
        : std::runtime_error("local projection annihilates the state (denominator < 1e-12)") {}
};

// Named single-qubit kets used by the default catalogs: the eigenstates of
// the three Pauli operators.
Projector ket_h();  // |0>
Projector ket_v();  // |1>
Projector ket_d();  // (|0> + |1>)/sqrt(2)
Projector ket_a();  // (|0> - |1>)/sqrt(2)
Projector ket_r();  // (|0> + i|1>)/sqrt(2)
Projector ket_l();  // (|0> - i|1>)/sqrt(2)

// Default catalogs for n in {3, 5, 6, 12, 15}. Nested by construction:
// each larger catalog extends the smaller one, so feature columns for a
// small n are a prefix-by-name of the n = 15 columns.
SettingsCatalog default_catalog(int n);

// |psi-><psi-| with |psi-> = (|01> - |10>)/sqrt(2).
DensityMatrix bell_singlet_projector();

// rho (x) swap(rho) on qubits (1,2,3,4); qubits (2,3) face the Bell
// projection, qubits 1 and 4 face the local projections.
DensityMatrix two_copy_state(const DensityMatrix& rho);

struct CollectiveTerms {
    double numerator = 0.0;    // Tr[rho_T (pi_x (x) rho_B (x) pi_y)]
    double denominator = 0.0;  // Tr[rho_T (pi_x (x) I_4  (x) pi_y)]
};

// Both traces behind the post-selected probability. Exposed separately
// because the collectibility witness consumes the unnormalized numerators.
CollectiveTerms collective_terms(const DensityMatrix& rho, const ProjectionSetting& s);

// numerator / denominator; throws DegenerateDenominator when the local
// projections annihilate the state.
double collective_probability(const DensityMatrix& rho, const ProjectionSetting& s);

struct FeatureVector {
    std::vector<double> probs;
    bool entangled = false;
    double min_pt_eig = 0.0;
    double purity = 0.0;
    bool degenerate = false;  // some setting hit the zero-denominator convention
};

// Probabilities only, with the degenerate-denominator convention applied
// (feature forced to 0, flag set). The building block for both
// feature_vector and the batch path.
std::vector<double> feature_probs(const DensityMatrix& rho, const SettingsCatalog& catalog,
                                  bool* degenerate = nullptr);

// Full feature vector with label, minimal PT eigenvalue and purity attached.
FeatureVector feature_vector(const DensityMatrix& rho, const SettingsCatalog& catalog);

// Batch feature extraction with precomputed per-setting operators; output
// order matches input order for any worker count.
std::vector<FeatureVector> feature_vectors(const std::vector<DensityMatrix>& rhos,
                                           const SettingsCatalog& catalog, int workers = 1);

}  // namespace entwit
