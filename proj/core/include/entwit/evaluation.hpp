#pragma once

#include <optional>
#include <string>
#include <vector>

#include "entwit/mlp.hpp"

namespace entwit {

class NoFeasibleEpsilon : public std::runtime_error {
public:
    explicit NoFeasibleEpsilon(double max_type1)
        : std::runtime_error("no epsilon meets type-I rate <= " + std::to_string(max_type1)) {}
};

// What evaluation needs from a record, nothing more.
struct EvalSample {
    std::vector<double> probs;
    bool entangled = false;
    double min_pt_eig = 0.0;
};

std::vector<EvalSample> to_eval_samples(const std::vector<FeatureVector>& features);

// Confusion cells are counts; the rates are fractions of the TOTAL
// evaluated set (not per-class), so type1 + type2 + success = 1 exactly.
// te/ts = correctly called entangled/separable, fe = separable called
// entangled (type I), fs = entangled called separable (type II).
struct ConfusionReport {
    long te = 0;
    long fe = 0;
    long ts = 0;
    long fs = 0;
    double type1_rate = 0.0;
    double type2_rate = 0.0;
    double success_rate = 0.0;
    double epsilon = -1.0;  // -1 when no threshold applies (analytical witnesses)

    long total() const { return te + fe + ts + fs; }
};

ConfusionReport confusion(const std::vector<bool>& predicted_entangled,
                          const std::vector<bool>& actual_entangled, double epsilon = -1.0);
ConfusionReport confusion(const std::vector<std::pair<Decision, bool>>& decisions);

// One report per epsilon on an ascending grid. Model outputs are computed
// once and re-thresholded, so a sweep costs one forward pass.
std::vector<ConfusionReport> threshold_sweep(const MlpModel& model,
                                             const std::vector<EvalSample>& testset,
                                             const std::vector<double>& epsilons, int workers = 1);

// Among reports with type1_rate <= max_type1, the one with maximal
// success_rate; ties go to the smaller epsilon. Throws NoFeasibleEpsilon.
ConfusionReport select_epsilon(const std::vector<ConfusionReport>& reports, double max_type1);

struct ErrorBinCurve {
    std::vector<double> bin_edges;   // n_bins + 1 ascending edges
    std::vector<double> error_prob;  // wrong-decision fraction per bin
    std::vector<long> counts;        // samples per bin
    std::vector<long> errors;        // wrong decisions per bin
};

// Equal-width bins over the observed min_pt_eig range; the fraction of
// wrong decisions per bin localizes where a classifier fails relative to
// the separability boundary at zero.
ErrorBinCurve bin_errors_by_min_eig(const std::vector<EvalSample>& samples,
                                    const std::vector<bool>& predicted_entangled, int n_bins);

// One comparison-table row: a method, its projection-count bookkeeping,
// and its confusion report (epsilon only for classifier rows).
struct MethodResult {
    std::string method;
    int n_projections = 0;
    bool has_epsilon = false;
    ConfusionReport report;
};

struct AnnColumn {
    std::string method;
    int n_projections = 0;
    const MlpModel* model = nullptr;
    const std::vector<EvalSample>* testset = nullptr;  // features for THIS model's catalog
};

struct WitnessColumn {
    std::string method;
    int n_projections = 0;
    std::vector<bool> detected;
};

// The comparison table: every classifier row gets its epsilon from
// select_epsilon over the shared grid; witness rows have no threshold.
// All columns must be evaluated on the same states, in the same order, so
// `truth` applies to every column.
std::vector<MethodResult> table1_compare(const std::vector<AnnColumn>& ann,
                                         const std::vector<WitnessColumn>& witnesses,
                                         const std::vector<bool>& truth,
                                         const std::vector<double>& epsilons, double max_type1,
                                         int workers = 1);

}  // namespace entwit
