#include "entwit/evaluation.hpp"

#include <algorithm>
#include <cmath>

#include "entwit/parallel.hpp"

namespace entwit {

namespace {

std::vector<double> model_outputs(const MlpModel& model, const std::vector<EvalSample>& testset,
                                  int workers) {
    std::vector<double> w(testset.size());
    parallel_chunks(static_cast<long>(testset.size()), resolve_workers(workers),
                    [&](long lo, long hi) {
                        for (long i = lo; i < hi; ++i) {
                            w[static_cast<std::size_t>(i)] =
                                forward(model, testset[static_cast<std::size_t>(i)].probs);
                        }
                    });
    return w;
}

}  // namespace

std::vector<EvalSample> to_eval_samples(const std::vector<FeatureVector>& features) {
    std::vector<EvalSample> out;
    out.reserve(features.size());
    for (const auto& fv : features) out.push_back(EvalSample{fv.probs, fv.entangled, fv.min_pt_eig});
    return out;
}

ConfusionReport confusion(const std::vector<bool>& predicted_entangled,
                          const std::vector<bool>& actual_entangled, double epsilon) {
    if (predicted_entangled.empty()) throw std::invalid_argument("confusion: empty input");
    if (predicted_entangled.size() != actual_entangled.size()) {
        throw std::invalid_argument("confusion: prediction/truth length mismatch");
    }
    ConfusionReport r;
    r.epsilon = epsilon;
    for (std::size_t i = 0; i < predicted_entangled.size(); ++i) {
        const bool p = predicted_entangled[i];
        const bool a = actual_entangled[i];
        if (p && a) ++r.te;
        else if (p && !a) ++r.fe;
        else if (!p && !a) ++r.ts;
        else ++r.fs;
    }
    const double total = static_cast<double>(r.total());
    r.type1_rate = static_cast<double>(r.fe) / total;
    r.type2_rate = static_cast<double>(r.fs) / total;
    r.success_rate = static_cast<double>(r.te + r.ts) / total;
    return r;
}

ConfusionReport confusion(const std::vector<std::pair<Decision, bool>>& decisions) {
    if (decisions.empty()) throw std::invalid_argument("confusion: empty input");
    std::vector<bool> predicted, actual;
    predicted.reserve(decisions.size());
    actual.reserve(decisions.size());
    for (const auto& [d, truth] : decisions) {
        predicted.push_back(d.entangled);
        actual.push_back(truth);
    }
    return confusion(predicted, actual, decisions.front().first.epsilon);
}

std::vector<ConfusionReport> threshold_sweep(const MlpModel& model,
                                             const std::vector<EvalSample>& testset,
                                             const std::vector<double>& epsilons, int workers) {
    if (testset.empty()) throw std::invalid_argument("threshold_sweep: empty test set");
    if (epsilons.empty()) throw std::invalid_argument("threshold_sweep: empty epsilon grid");
    for (std::size_t i = 0; i < epsilons.size(); ++i) {
        if (!(epsilons[i] > 0.0 && epsilons[i] < 1.0)) {
            throw std::invalid_argument("threshold_sweep: epsilons must lie in (0,1)");
        }
        if (i > 0 && epsilons[i] <= epsilons[i - 1]) {
            throw std::invalid_argument("threshold_sweep: epsilons must ascend");
        }
    }

    const std::vector<double> w = model_outputs(model, testset, workers);
    std::vector<bool> truth(testset.size());
    for (std::size_t i = 0; i < testset.size(); ++i) truth[i] = testset[i].entangled;

    std::vector<ConfusionReport> reports;
    reports.reserve(epsilons.size());
    std::vector<bool> predicted(testset.size());
    for (const double eps : epsilons) {
        for (std::size_t i = 0; i < w.size(); ++i) predicted[i] = w[i] < eps;
        reports.push_back(confusion(predicted, truth, eps));
    }
    return reports;
}

ConfusionReport select_epsilon(const std::vector<ConfusionReport>& reports, double max_type1) {
    if (reports.empty()) throw std::invalid_argument("select_epsilon: no reports");
    const ConfusionReport* best = nullptr;
    for (const auto& r : reports) {
        if (r.type1_rate > max_type1) continue;
        if (!best || r.success_rate > best->success_rate ||
            (r.success_rate == best->success_rate && r.epsilon < best->epsilon)) {
            best = &r;
        }
    }
    if (!best) throw NoFeasibleEpsilon(max_type1);
    return *best;
}

ErrorBinCurve bin_errors_by_min_eig(const std::vector<EvalSample>& samples,
                                    const std::vector<bool>& predicted_entangled, int n_bins) {
    if (n_bins < 3) throw std::invalid_argument("bin_errors_by_min_eig: need at least 3 bins");
    if (samples.empty()) throw std::invalid_argument("bin_errors_by_min_eig: empty input");
    if (samples.size() != predicted_entangled.size()) {
        throw std::invalid_argument("bin_errors_by_min_eig: prediction/sample length mismatch");
    }

    double lo = samples.front().min_pt_eig;
    double hi = lo;
    for (const auto& s : samples) {
        lo = std::min(lo, s.min_pt_eig);
        hi = std::max(hi, s.min_pt_eig);
    }
    if (!(hi > lo)) throw std::invalid_argument("bin_errors_by_min_eig: degenerate eigenvalue range");

    ErrorBinCurve curve;
    curve.bin_edges.resize(static_cast<std::size_t>(n_bins) + 1);
    const double width = (hi - lo) / static_cast<double>(n_bins);
    for (int b = 0; b <= n_bins; ++b) {
        curve.bin_edges[static_cast<std::size_t>(b)] = lo + width * static_cast<double>(b);
    }
    curve.bin_edges.back() = hi;  // exact upper edge despite rounding
    curve.counts.assign(static_cast<std::size_t>(n_bins), 0);
    curve.errors.assign(static_cast<std::size_t>(n_bins), 0);

    for (std::size_t i = 0; i < samples.size(); ++i) {
        int b = static_cast<int>((samples[i].min_pt_eig - lo) / width);
        b = std::clamp(b, 0, n_bins - 1);
        curve.counts[static_cast<std::size_t>(b)] += 1;
        if (predicted_entangled[i] != samples[i].entangled) {
            curve.errors[static_cast<std::size_t>(b)] += 1;
        }
    }
    curve.error_prob.resize(static_cast<std::size_t>(n_bins));
    for (int b = 0; b < n_bins; ++b) {
        const auto ub = static_cast<std::size_t>(b);
        curve.error_prob[ub] = curve.counts[ub] == 0
                                   ? 0.0
                                   : static_cast<double>(curve.errors[ub]) /
                                         static_cast<double>(curve.counts[ub]);
    }
    return curve;
}

std::vector<MethodResult> table1_compare(const std::vector<AnnColumn>& ann,
                                         const std::vector<WitnessColumn>& witnesses,
                                         const std::vector<bool>& truth,
                                         const std::vector<double>& epsilons, double max_type1,
                                         int workers) {
    if (truth.empty()) throw std::invalid_argument("table1_compare: empty truth");
    std::vector<MethodResult> rows;
    for (const auto& column : ann) {
        if (!column.model || !column.testset) {
            throw std::invalid_argument("table1_compare: classifier column missing model or data");
        }
        if (column.testset->size() != truth.size()) {
            throw std::invalid_argument("table1_compare: classifier test set size mismatch");
        }
        const auto sweep = threshold_sweep(*column.model, *column.testset, epsilons, workers);
        MethodResult row;
        row.method = column.method;
        row.n_projections = column.n_projections;
        row.has_epsilon = true;
        row.report = select_epsilon(sweep, max_type1);
        rows.push_back(std::move(row));
    }
    for (const auto& column : witnesses) {
        if (column.detected.size() != truth.size()) {
            throw std::invalid_argument("table1_compare: witness prediction size mismatch");
        }
        MethodResult row;
        row.method = column.method;
        row.n_projections = column.n_projections;
        row.has_epsilon = false;
        row.report = confusion(column.detected, truth);
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace entwit
