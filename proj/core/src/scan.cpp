#include "entwit/scan.hpp"

#include <stdexcept>

#include "entwit/rng.hpp"
#include "entwit/sampler.hpp"
#include "entwit/witnesses.hpp"

namespace entwit {

std::vector<WernerScanRow> werner_scan(const MlpModel& model, const std::vector<double>& p_grid,
                                       long shots, std::uint64_t seed) {
    if (model.n_in() != 5) {
        throw std::invalid_argument("werner_scan: model input width must be 5");
    }
    if (shots < 0) throw std::invalid_argument("werner_scan: shots must be >= 0");
    if (p_grid.empty()) throw std::invalid_argument("werner_scan: empty p grid");

    const SettingsCatalog catalog = collectibility_settings();
    std::vector<WernerScanRow> rows;
    rows.reserve(p_grid.size());

    for (std::size_t i = 0; i < p_grid.size(); ++i) {
        WernerScanRow row;
        row.p = p_grid[i];
        row.shots = shots;

        const DensityMatrix rho = werner_state(row.p);
        const std::vector<double> exact = feature_probs(rho, catalog);

        std::array<double, 5> probs{};
        if (shots == 0) {
            for (std::size_t s = 0; s < 5; ++s) probs[s] = exact[s];
        } else {
            // Bernoulli sum per setting: exact Binomial(shots, P) draw,
            // deterministic in (seed, row index).
            Rng rng(seed, static_cast<std::uint64_t>(i));
            for (std::size_t s = 0; s < 5; ++s) {
                long hits = 0;
                for (long k = 0; k < shots; ++k) {
                    if (rng.uniform01() <= exact[s]) ++hits;
                }
                row.counts[s] = hits;
                probs[s] = static_cast<double>(hits) / static_cast<double>(shots);
            }
        }
        row.probs = probs;

        const std::vector<double> features(probs.begin(), probs.end());
        row.ann_w = forward(model, features);
        row.ann_entangled_eps05 = row.ann_w < 0.5;
        row.ann_entangled_eps09 = row.ann_w < 0.9;

        row.collectibility_value = collectibility_value_from_probs(probs);
        row.collectibility_detected = collectibility_detects(row.collectibility_value);
        rows.push_back(row);
    }
    return rows;
}

std::vector<double> uniform_grid(double lo, double hi, double step) {
    if (!(step > 0.0)) throw std::invalid_argument("uniform_grid: step must be positive");
    if (hi < lo) throw std::invalid_argument("uniform_grid: hi < lo");
    std::vector<double> grid;
    const long n = static_cast<long>((hi - lo) / step + 0.5);
    for (long k = 0; k <= n; ++k) {
        const double v = lo + step * static_cast<double>(k);
        if (v > hi + step * 0.5) break;
        grid.push_back(v);
    }
    return grid;
}

}  // namespace entwit
