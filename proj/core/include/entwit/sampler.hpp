#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "entwit/density.hpp"
#include "entwit/rng.hpp"

namespace entwit {

enum class EnsembleKind {
    GinibreFull,   // rank-4 Ginibre, Hilbert-Schmidt measure
    GinibreRank,   // GG^dagger / Tr for a 4 x k complex Gaussian G
    HaarPure,      // normalized complex Gaussian 4-vector as a projector
    Werner,        // p |psi-><psi-| + (1-p) I/4
    Product,       // independent single-qubit full-rank Ginibre states
};

struct EnsembleSpec {
    EnsembleKind kind = EnsembleKind::GinibreFull;
    int rank = 4;          // GinibreRank only, 1..4
    double werner_p = 0.0; // Werner only, [0,1]
};

struct MixComponent {
    EnsembleSpec spec;
    double weight = 1.0;
};

struct LabeledState {
    DensityMatrix rho;
    bool entangled = false;
    double min_pt_eig = 0.0;
    double purity = 0.0;
};

struct SampleStats {
    long entangled = 0;
    long separable = 0;
};

// p |psi-><psi-| + (1-p) I/4; entangled exactly when p > 1/3.
DensityMatrix werner_state(double p);

// One state from the given ensemble, labeled by the sign of the minimal
// partial-transpose eigenvalue (exact for two qubits).
LabeledState sample_state(const EnsembleSpec& spec, Rng& rng);

// count states drawn from the weighted mix. Component counts follow the
// largest-remainder rounding of the weights, and each record gets its own
// RNG substream keyed by its global index, so the result depends only on
// (mix, count, seed), never on the worker count.
std::vector<LabeledState> sample_dataset(const std::vector<MixComponent>& mix, long count,
                                         std::uint64_t seed, int workers = 1,
                                         SampleStats* stats = nullptr);

// Equal-weight Ginibre ranks 1..4, the default training distribution.
std::vector<MixComponent> default_training_mix();

// Parses "ginibre_full:1,ginibre_rank_2:0.5,werner_0.8:2,product:1,haar_pure:1"
// into a mix; weights optional (default 1). Throws std::invalid_argument.
std::vector<MixComponent> parse_mix(const std::string& text);
std::string describe_mix(const std::vector<MixComponent>& mix);

}  // namespace entwit
