#pragma once

#include <array>
#include <string>

#include "entwit/collective.hpp"
#include "entwit/density.hpp"

namespace entwit {

enum class WitnessKind { Ppt, Collectibility, Fef, Chsh, Entropic };

std::string witness_name(WitnessKind kind);

// value is witness-specific; detected means "claims entanglement" and is a
// fixed deterministic function of value (strict thresholds with 1e-9 guard
// bands, so boundary states count as undetected).
struct WitnessVerdict {
    WitnessKind kind;
    double value = 0.0;
    bool detected = false;
};

// Minimal eigenvalue of the partial transpose; detected iff negative.
// Necessary and sufficient for two qubits, so this is the ground truth the
// other witnesses and the classifier are measured against.
WitnessVerdict ppt_label(const DensityMatrix& rho);

// Wootters concurrence in [0,1]; positive exactly on entangled states.
// Serves as the independent labeling oracle for ppt_label.
double concurrence(const DensityMatrix& rho);

// Two-copy collectibility witness. value = W(rho), a fixed linear
// combination of the five unnormalized Bell-coincidence numerators at the
// settings of collectibility_settings(); W >= 0 on all separable states and
// W = -C(psi)^2 on pure states, so detected (value < -1e-9) never fires on
// separable input and fires on every pure state with nonzero concurrence.
WitnessVerdict collectibility(const DensityMatrix& rho);

// The witness's own fixed settings: HH, VV, DD, RR, HV.
SettingsCatalog collectibility_settings();

// W reconstructed from the five post-selected probabilities under the
// assumption of maximally mixed marginals (each local denominator 1/4),
// which holds exactly for the Werner family probed by the scan path.
double collectibility_value_from_probs(const std::array<double, 5>& probs);

// The witness's decision rule (value < -1e-9), shared by both routes.
bool collectibility_detects(double value);

// Fully entangled fraction: largest eigenvalue of Re(rho) in the magic
// basis; equals the maximal overlap with any maximally entangled state.
// detected iff value > 1/2 + 1e-9.
WitnessVerdict fef(const DensityMatrix& rho);

// Horodecki CHSH quantity M(rho): sum of the two largest eigenvalues of
// T^T T for the Pauli correlation matrix T. detected iff M > 1 + 1e-9.
WitnessVerdict chsh(const DensityMatrix& rho);

// Renyi-2 entropic witness: Tr[rho^2] - max(Tr[rho_A^2], Tr[rho_B^2]).
// detected iff the global state is strictly purer than both marginals.
WitnessVerdict entropic(const DensityMatrix& rho);

}  // namespace entwit
