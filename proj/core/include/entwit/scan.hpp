#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "entwit/mlp.hpp"

namespace entwit {

// One Werner-family measurement point: simulated coincidence counts for the
// five settings, the normalized probabilities, and both detectors' calls.
// With shots = 0 the probabilities are exact and counts stay zero.
struct WernerScanRow {
    double p = 0.0;
    long shots = 0;
    std::array<long, 5> counts{};
    std::array<double, 5> probs{};
    double ann_w = 0.0;
    bool ann_entangled_eps05 = false;
    bool ann_entangled_eps09 = false;
    double collectibility_value = 0.0;
    bool collectibility_detected = false;
};

// Sweeps Werner states over p_grid. Per point: exact post-selected
// probabilities at the five collectibility settings; when shots > 0, each
// setting's success count is drawn as Binomial(shots, P) from a substream
// keyed by the row index, and P is re-estimated as count/shots. The noisy
// (or exact) probabilities feed the five-input classifier and the
// probability-space collectibility estimate. Model input width must be 5.
std::vector<WernerScanRow> werner_scan(const MlpModel& model, const std::vector<double>& p_grid,
                                       long shots, std::uint64_t seed);

// {lo, lo+step, ...} up to hi inclusive (within half a step).
std::vector<double> uniform_grid(double lo, double hi, double step);

}  // namespace entwit
