#include "entwit/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "entwit/parallel.hpp"

namespace entwit {

namespace {

ComplexMatrix ginibre_density(int dim, int rank, Rng& rng) {
    // G is dim x rank with i.i.d. standard complex Gaussian entries;
    // G G^dagger / Tr is then a rank-`rank` density matrix.
    ComplexMatrix g(dim, rank);
    for (auto& v : g.data) v = rng.standard_complex_normal();
    ComplexMatrix rho(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            cplx s = 0.0;
            for (int k = 0; k < rank; ++k) s += g.at(i, k) * std::conj(g.at(j, k));
            rho.at(i, j) = s;
        }
    }
    const double tr = trace(rho).real();
    ComplexMatrix out = (1.0 / tr) * rho;
    // Clean the diagonal so the DensityMatrix Hermiticity check never trips
    // on accumulated roundoff.
    for (int i = 0; i < dim; ++i) out.at(i, i) = cplx(out.at(i, i).real(), 0.0);
    return out;
}

ComplexMatrix haar_pure_density(Rng& rng) {
    std::array<cplx, 4> psi;
    double n2 = 0.0;
    for (auto& v : psi) {
        v = rng.standard_complex_normal();
        n2 += std::norm(v);
    }
    const double inv = 1.0 / std::sqrt(n2);
    ComplexMatrix rho(4, 4);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            rho.at(i, j) = psi[static_cast<std::size_t>(i)] * std::conj(psi[static_cast<std::size_t>(j)]) * (inv * inv);
        }
    }
    return rho;
}

void validate(const EnsembleSpec& spec) {
    switch (spec.kind) {
        case EnsembleKind::GinibreRank:
            if (spec.rank < 1 || spec.rank > 4) {
                throw std::invalid_argument("ginibre rank must be 1..4");
            }
            break;
        case EnsembleKind::Werner:
            if (!(spec.werner_p >= 0.0 && spec.werner_p <= 1.0)) {
                throw std::invalid_argument("werner p must be in [0,1]");
            }
            break;
        default:
            break;
    }
}

}  // namespace

DensityMatrix werner_state(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("werner p must be in [0,1]");
    // p |psi-><psi-| + (1-p) I/4 in the computational basis.
    ComplexMatrix rho(4, 4);
    const double off = (1.0 - p) / 4.0;
    rho.at(0, 0) = off;
    rho.at(3, 3) = off;
    rho.at(1, 1) = off + p / 2.0;
    rho.at(2, 2) = off + p / 2.0;
    rho.at(1, 2) = -p / 2.0;
    rho.at(2, 1) = -p / 2.0;
    return DensityMatrix(std::move(rho));
}

LabeledState sample_state(const EnsembleSpec& spec, Rng& rng) {
    validate(spec);
    ComplexMatrix m;
    switch (spec.kind) {
        case EnsembleKind::GinibreFull:
            m = ginibre_density(4, 4, rng);
            break;
        case EnsembleKind::GinibreRank:
            m = ginibre_density(4, spec.rank, rng);
            break;
        case EnsembleKind::HaarPure:
            m = haar_pure_density(rng);
            break;
        case EnsembleKind::Werner:
            m = werner_state(spec.werner_p).matrix();
            break;
        case EnsembleKind::Product: {
            const ComplexMatrix a = ginibre_density(2, 2, rng);
            const ComplexMatrix b = ginibre_density(2, 2, rng);
            m = kron(a, b);
            break;
        }
    }
    LabeledState out{DensityMatrix(std::move(m)), false, 0.0, 0.0};
    out.min_pt_eig = min_pt_eigenvalue(out.rho);
    out.entangled = out.min_pt_eig < 0.0;
    out.purity = purity(out.rho);
    return out;
}

std::vector<LabeledState> sample_dataset(const std::vector<MixComponent>& mix, long count,
                                         std::uint64_t seed, int workers, SampleStats* stats) {
    if (count <= 0) throw std::invalid_argument("sample_dataset: count must be positive");
    if (mix.empty()) throw std::invalid_argument("sample_dataset: empty mix");
    double total_weight = 0.0;
    for (const auto& c : mix) {
        validate(c.spec);
        if (c.weight < 0.0) throw std::invalid_argument("sample_dataset: negative weight");
        total_weight += c.weight;
    }
    if (total_weight <= 0.0) throw std::invalid_argument("sample_dataset: weights sum to zero");

    // Largest-remainder allocation of `count` across components, so the
    // realized mix matches the weights as closely as integer counts allow.
    const std::size_t k = mix.size();
    std::vector<long> alloc(k, 0);
    std::vector<std::pair<double, std::size_t>> remainders;
    long assigned = 0;
    for (std::size_t i = 0; i < k; ++i) {
        const double exact = static_cast<double>(count) * mix[i].weight / total_weight;
        alloc[i] = static_cast<long>(std::floor(exact));
        assigned += alloc[i];
        remainders.emplace_back(exact - std::floor(exact), i);
    }
    std::sort(remainders.begin(), remainders.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;  // deterministic tie-break by component order
    });
    for (long r = count - assigned, i = 0; r > 0; --r, ++i) {
        alloc[remainders[static_cast<std::size_t>(i)].second] += 1;
    }

    // Component of record i = first component whose cumulative allocation
    // exceeds i. Records are interleaved per-index rather than blocked so a
    // truncated prefix of a dataset is still a sensible mix.
    std::vector<long> cumulative(k, 0);
    std::partial_sum(alloc.begin(), alloc.end(), cumulative.begin());

    const LabeledState placeholder{DensityMatrix(0.25 * ComplexMatrix::identity(4)), false, 0.0, 0.0};
    std::vector<LabeledState> out(static_cast<std::size_t>(count), placeholder);

    // Interleave: record i belongs to component (i mod pattern) where the
    // pattern repeats proportionally. Simplest deterministic interleave that
    // respects exact allocations: walk components round-robin by remaining
    // quota. Record index also keys the RNG substream.
    std::vector<long> remaining = alloc;
    std::vector<std::size_t> component_of(static_cast<std::size_t>(count));
    {
        long placed = 0;
        while (placed < count) {
            bool any = false;
            for (std::size_t c = 0; c < k && placed < count; ++c) {
                if (remaining[c] > 0) {
                    component_of[static_cast<std::size_t>(placed)] = c;
                    --remaining[c];
                    ++placed;
                    any = true;
                }
            }
            if (!any) break;
        }
    }

    parallel_chunks(count, resolve_workers(workers), [&](long begin, long end) {
        for (long i = begin; i < end; ++i) {
            Rng rng(seed, static_cast<std::uint64_t>(i));
            out[static_cast<std::size_t>(i)] =
                sample_state(mix[component_of[static_cast<std::size_t>(i)]].spec, rng);
        }
    });

    if (stats) {
        stats->entangled = 0;
        stats->separable = 0;
        for (const auto& s : out) (s.entangled ? stats->entangled : stats->separable) += 1;
    }
    return out;
}

std::vector<MixComponent> default_training_mix() {
    std::vector<MixComponent> mix;
    for (int r = 1; r <= 4; ++r) {
        mix.push_back({EnsembleSpec{EnsembleKind::GinibreRank, r, 0.0}, 1.0});
    }
    return mix;
}

std::vector<MixComponent> parse_mix(const std::string& text) {
    std::vector<MixComponent> mix;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::string name = item;
        double weight = 1.0;
        if (const auto colon = item.find(':'); colon != std::string::npos) {
            name = item.substr(0, colon);
            weight = std::stod(item.substr(colon + 1));
            if (!(weight > 0.0)) {
                throw std::invalid_argument("mix weight must be positive in '" + item + "'");
            }
        }
        EnsembleSpec spec;
        if (name == "ginibre_full") {
            spec.kind = EnsembleKind::GinibreFull;
        } else if (name.rfind("ginibre_rank_", 0) == 0) {
            spec.kind = EnsembleKind::GinibreRank;
            spec.rank = std::stoi(name.substr(std::string("ginibre_rank_").size()));
        } else if (name == "haar_pure") {
            spec.kind = EnsembleKind::HaarPure;
        } else if (name.rfind("werner_", 0) == 0) {
            spec.kind = EnsembleKind::Werner;
            spec.werner_p = std::stod(name.substr(std::string("werner_").size()));
        } else if (name == "product") {
            spec.kind = EnsembleKind::Product;
        } else {
            throw std::invalid_argument("unknown ensemble '" + name + "'");
        }
        validate(spec);
        mix.push_back({spec, weight});
    }
    if (mix.empty()) throw std::invalid_argument("empty mix specification");
    return mix;
}

std::string describe_mix(const std::vector<MixComponent>& mix) {
    std::ostringstream os;
    bool first = true;
    for (const auto& c : mix) {
        if (!first) os << ",";
        first = false;
        switch (c.spec.kind) {
            case EnsembleKind::GinibreFull: os << "ginibre_full"; break;
            case EnsembleKind::GinibreRank: os << "ginibre_rank_" << c.spec.rank; break;
            case EnsembleKind::HaarPure: os << "haar_pure"; break;
            case EnsembleKind::Werner: os << "werner_" << c.spec.werner_p; break;
            case EnsembleKind::Product: os << "product"; break;
        }
        os << ":" << c.weight;
    }
    return os.str();
}

}  // namespace entwit
