#include "entwit/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "entwit/parallel.hpp"
#include "entwit/rng.hpp"

namespace entwit {

namespace {

// Reduction granularity for data-parallel gradients: per-batch gradients
// are accumulated per 32-row block and the blocks are summed in order, so
// training is bit-identical for every worker count.
constexpr int kGradBlockRows = 32;

constexpr double kAdamBeta1 = 0.9;
constexpr double kAdamBeta2 = 0.999;
constexpr double kAdamEps = 1e-8;

double sigmoid(double z) {
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

// Binary cross-entropy straight from the logit; stable for any |z|.
double bce_from_logit(double z, double t) {
    return std::max(z, 0.0) - z * t + std::log1p(std::exp(-std::abs(z)));
}

struct Workspace {
    std::vector<std::vector<double>> z;      // pre-activations per transition
    std::vector<std::vector<double>> a;      // activations, a[0] = input
    std::vector<std::vector<double>> delta;  // dLoss/dz per transition

    explicit Workspace(const std::vector<int>& sizes) {
        const std::size_t layers = sizes.size() - 1;
        a.resize(sizes.size());
        z.resize(layers);
        delta.resize(layers);
        for (std::size_t i = 0; i < sizes.size(); ++i) a[i].resize(static_cast<std::size_t>(sizes[i]));
        for (std::size_t l = 0; l < layers; ++l) {
            z[l].resize(static_cast<std::size_t>(sizes[l + 1]));
            delta[l].resize(static_cast<std::size_t>(sizes[l + 1]));
        }
    }
};

struct GradBuffer {
    std::vector<std::vector<double>> dw;
    std::vector<std::vector<double>> db;
    double loss = 0.0;

    void init_like(const MlpModel& m) {
        dw.resize(m.weights.size());
        db.resize(m.biases.size());
        for (std::size_t l = 0; l < m.weights.size(); ++l) {
            dw[l].assign(m.weights[l].size(), 0.0);
            db[l].assign(m.biases[l].size(), 0.0);
        }
        loss = 0.0;
    }

    void zero() {
        for (auto& v : dw) std::fill(v.begin(), v.end(), 0.0);
        for (auto& v : db) std::fill(v.begin(), v.end(), 0.0);
        loss = 0.0;
    }
};

double forward_logit(const MlpModel& m, const double* x, Workspace& ws) {
    const std::size_t layers = m.weights.size();
    std::copy(x, x + m.layer_sizes.front(), ws.a[0].begin());
    for (std::size_t l = 0; l < layers; ++l) {
        const int in = m.layer_sizes[l];
        const int out = m.layer_sizes[l + 1];
        const double* w = m.weights[l].data();
        const double* b = m.biases[l].data();
        const double* ain = ws.a[l].data();
        for (int j = 0; j < out; ++j) {
            double s = b[j];
            const double* wrow = w + static_cast<std::size_t>(j) * in;
            for (int k = 0; k < in; ++k) s += wrow[k] * ain[k];
            ws.z[l][static_cast<std::size_t>(j)] = s;
            if (l + 1 < layers) ws.a[l + 1][static_cast<std::size_t>(j)] = s > 0.0 ? s : 0.0;
        }
    }
    return ws.z[layers - 1][0];
}

// One sample's loss and gradient contribution, accumulated into g.
double backprop_sample(const MlpModel& m, const double* x, double target, Workspace& ws,
                       GradBuffer& g) {
    const std::size_t layers = m.weights.size();
    const double logit = forward_logit(m, x, ws);
    const double loss = bce_from_logit(logit, target);

    ws.delta[layers - 1][0] = sigmoid(logit) - target;
    for (std::size_t l = layers - 1; l-- > 0;) {
        const int width = m.layer_sizes[l + 1];
        const int above = m.layer_sizes[l + 2];
        const double* w_up = m.weights[l + 1].data();
        for (int k = 0; k < width; ++k) {
            if (ws.z[l][static_cast<std::size_t>(k)] <= 0.0) {
                ws.delta[l][static_cast<std::size_t>(k)] = 0.0;
                continue;
            }
            double s = 0.0;
            for (int j = 0; j < above; ++j) {
                s += w_up[static_cast<std::size_t>(j) * width + k] *
                     ws.delta[l + 1][static_cast<std::size_t>(j)];
            }
            ws.delta[l][static_cast<std::size_t>(k)] = s;
        }
    }
    for (std::size_t l = 0; l < layers; ++l) {
        const int in = m.layer_sizes[l];
        const int out = m.layer_sizes[l + 1];
        const double* ain = ws.a[l].data();
        double* dw = g.dw[l].data();
        double* db = g.db[l].data();
        for (int j = 0; j < out; ++j) {
            const double d = ws.delta[l][static_cast<std::size_t>(j)];
            if (d == 0.0) continue;
            double* dwrow = dw + static_cast<std::size_t>(j) * in;
            for (int k = 0; k < in; ++k) dwrow[k] += d * ain[k];
            db[j] += d;
        }
    }
    return loss;
}

struct AdamState {
    std::vector<std::vector<double>> mw, vw, mb, vb;
    long step = 0;

    void init_like(const MlpModel& m) {
        mw.resize(m.weights.size());
        vw.resize(m.weights.size());
        mb.resize(m.biases.size());
        vb.resize(m.biases.size());
        for (std::size_t l = 0; l < m.weights.size(); ++l) {
            mw[l].assign(m.weights[l].size(), 0.0);
            vw[l].assign(m.weights[l].size(), 0.0);
            mb[l].assign(m.biases[l].size(), 0.0);
            vb[l].assign(m.biases[l].size(), 0.0);
        }
    }

    void apply(MlpModel& m, const GradBuffer& grad, double inv_batch, double lr) {
        ++step;
        const double bc1 = 1.0 - std::pow(kAdamBeta1, static_cast<double>(step));
        const double bc2 = 1.0 - std::pow(kAdamBeta2, static_cast<double>(step));
        auto update = [&](std::vector<double>& p, const std::vector<double>& g,
                          std::vector<double>& mm, std::vector<double>& vv) {
            for (std::size_t i = 0; i < p.size(); ++i) {
                const double gi = g[i] * inv_batch;
                mm[i] = kAdamBeta1 * mm[i] + (1.0 - kAdamBeta1) * gi;
                vv[i] = kAdamBeta2 * vv[i] + (1.0 - kAdamBeta2) * gi * gi;
                p[i] -= lr * (mm[i] / bc1) / (std::sqrt(vv[i] / bc2) + kAdamEps);
            }
        };
        for (std::size_t l = 0; l < m.weights.size(); ++l) {
            update(m.weights[l], grad.dw[l], mw[l], vw[l]);
            update(m.biases[l], grad.db[l], mb[l], vb[l]);
        }
    }
};

void shuffle_indices(std::vector<long>& idx, Rng& rng) {
    for (std::size_t i = idx.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng.below(i));
        std::swap(idx[i - 1], idx[j]);
    }
}

void validate_hyper(const Hyperparams& h) {
    if (h.learning_rate <= 0.0) throw std::invalid_argument("learning_rate must be positive");
    if (h.batch_size < 1) throw std::invalid_argument("batch_size must be >= 1");
    if (h.epochs < 1) throw std::invalid_argument("epochs must be >= 1");
    if (h.validation_fraction < 0.0 || h.validation_fraction >= 1.0) {
        throw std::invalid_argument("validation_fraction must be in [0,1)");
    }
    if (h.patience < 0) throw std::invalid_argument("patience must be >= 0");
}

}  // namespace

std::size_t MlpModel::parameter_count() const {
    std::size_t n = 0;
    for (const auto& w : weights) n += w.size();
    for (const auto& b : biases) n += b.size();
    return n;
}

MlpModel init_model_with_layers(const std::vector<int>& layer_sizes, std::uint64_t seed) {
    if (layer_sizes.size() < 2) throw std::invalid_argument("need at least input and output layers");
    for (int s : layer_sizes) {
        if (s < 1) throw std::invalid_argument("layer sizes must be positive");
    }
    if (layer_sizes.back() != 1) throw std::invalid_argument("output layer must have one node");

    MlpModel m;
    m.layer_sizes = layer_sizes;
    Rng rng(seed, 0);
    for (std::size_t l = 0; l + 1 < layer_sizes.size(); ++l) {
        const int in = layer_sizes[l];
        const int out = layer_sizes[l + 1];
        const double stddev = std::sqrt(2.0 / static_cast<double>(in));
        std::vector<double> w(static_cast<std::size_t>(in) * static_cast<std::size_t>(out));
        for (auto& v : w) v = stddev * rng.standard_normal();
        m.weights.push_back(std::move(w));
        m.biases.emplace_back(static_cast<std::size_t>(out), 0.0);
    }
    m.train_meta.seed = seed;
    m.train_meta.n_in = layer_sizes.front();
    return m;
}

MlpModel init_model(int n_in, std::uint64_t seed) {
    if (n_in < 1) throw std::invalid_argument("n_in must be >= 1");
    return init_model_with_layers({n_in, 36, 180, 75, 180, 75, 1}, seed);
}

double forward(const MlpModel& model, const std::vector<double>& features) {
    if (static_cast<int>(features.size()) != model.n_in()) {
        throw std::invalid_argument("feature length does not match model input width");
    }
    Workspace ws(model.layer_sizes);
    return sigmoid(forward_logit(model, features.data(), ws));
}

Decision decide(const MlpModel& model, const std::vector<double>& features, double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must be in (0,1)");
    const double w = forward(model, features);
    return Decision{w, epsilon, w < epsilon};
}

TrainingReport train(MlpModel& model, const std::vector<FeatureVector>& dataset,
                     const Hyperparams& hyper) {
    validate_hyper(hyper);
    if (dataset.empty()) throw std::invalid_argument("empty training set");
    const int n_in = model.n_in();
    const long n = static_cast<long>(dataset.size());

    // Flat feature matrix and target vector (separable -> 1, entangled -> 0).
    std::vector<double> x(static_cast<std::size_t>(n) * static_cast<std::size_t>(n_in));
    std::vector<double> y(static_cast<std::size_t>(n));
    bool saw_entangled = false, saw_separable = false;
    for (long i = 0; i < n; ++i) {
        const FeatureVector& fv = dataset[static_cast<std::size_t>(i)];
        if (static_cast<int>(fv.probs.size()) != n_in) {
            throw std::invalid_argument("feature width does not match model input width");
        }
        std::copy(fv.probs.begin(), fv.probs.end(),
                  x.begin() + static_cast<std::ptrdiff_t>(i) * n_in);
        y[static_cast<std::size_t>(i)] = fv.entangled ? 0.0 : 1.0;
        (fv.entangled ? saw_entangled : saw_separable) = true;
    }
    if (!saw_entangled || !saw_separable) throw SingleClassDataset();

    // Validation split from a seeded shuffle; stream 1 is reserved for the
    // split, stream 2+e for the epoch-e batch order.
    std::vector<long> idx(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i;
    {
        Rng split_rng(hyper.seed, 1);
        shuffle_indices(idx, split_rng);
    }
    long val_count = 0;
    if (hyper.validation_fraction > 0.0) {
        val_count = std::lround(hyper.validation_fraction * static_cast<double>(n));
        val_count = std::clamp<long>(val_count, 1, n - 1);
    }
    std::vector<long> val_idx(idx.begin(), idx.begin() + val_count);
    std::vector<long> train_idx(idx.begin() + val_count, idx.end());
    const long n_train = static_cast<long>(train_idx.size());

    const int workers = resolve_workers(hyper.workers);
    const int batch = std::min<long>(hyper.batch_size, n_train);
    const long max_blocks = (static_cast<long>(batch) + kGradBlockRows - 1) / kGradBlockRows;

    std::vector<GradBuffer> blocks(static_cast<std::size_t>(max_blocks));
    for (auto& b : blocks) b.init_like(model);
    GradBuffer total;
    total.init_like(model);
    AdamState adam;
    adam.init_like(model);

    TrainingReport report;
    std::vector<std::vector<double>> best_weights;
    std::vector<std::vector<double>> best_biases;
    double best_val = std::numeric_limits<double>::infinity();
    int wait = 0;

    std::vector<double> val_losses(val_idx.size());
    std::vector<char> val_correct(val_idx.size());

    for (int epoch = 0; epoch < hyper.epochs; ++epoch) {
        Rng order_rng(hyper.seed, 2 + static_cast<std::uint64_t>(epoch));
        shuffle_indices(train_idx, order_rng);

        double loss_sum = 0.0;
        for (long start = 0; start < n_train; start += batch) {
            const long m = std::min<long>(batch, n_train - start);
            const long n_blocks = (m + kGradBlockRows - 1) / kGradBlockRows;
            for (long b = 0; b < n_blocks; ++b) blocks[static_cast<std::size_t>(b)].zero();

            parallel_chunks(n_blocks, workers, [&](long blo, long bhi) {
                Workspace ws(model.layer_sizes);
                for (long b = blo; b < bhi; ++b) {
                    GradBuffer& g = blocks[static_cast<std::size_t>(b)];
                    const long rlo = start + b * kGradBlockRows;
                    const long rhi = std::min(start + m, rlo + kGradBlockRows);
                    for (long r = rlo; r < rhi; ++r) {
                        const long row = train_idx[static_cast<std::size_t>(r)];
                        g.loss += backprop_sample(
                            model, x.data() + static_cast<std::ptrdiff_t>(row) * n_in,
                            y[static_cast<std::size_t>(row)], ws, g);
                    }
                }
            });

            total.zero();
            for (long b = 0; b < n_blocks; ++b) {
                const GradBuffer& g = blocks[static_cast<std::size_t>(b)];
                for (std::size_t l = 0; l < total.dw.size(); ++l) {
                    for (std::size_t i = 0; i < total.dw[l].size(); ++i) total.dw[l][i] += g.dw[l][i];
                    for (std::size_t i = 0; i < total.db[l].size(); ++i) total.db[l][i] += g.db[l][i];
                }
                total.loss += g.loss;
            }
            loss_sum += total.loss;
            adam.apply(model, total, 1.0 / static_cast<double>(m), hyper.learning_rate);
        }

        const double train_loss = loss_sum / static_cast<double>(n_train);
        if (!std::isfinite(train_loss)) throw NonFiniteLoss(epoch);
        report.train_loss.push_back(train_loss);
        report.epochs_run = epoch + 1;

        if (val_count > 0) {
            parallel_chunks(static_cast<long>(val_idx.size()), workers, [&](long lo, long hi) {
                Workspace ws(model.layer_sizes);
                for (long i = lo; i < hi; ++i) {
                    const long row = val_idx[static_cast<std::size_t>(i)];
                    const double logit =
                        forward_logit(model, x.data() + static_cast<std::ptrdiff_t>(row) * n_in, ws);
                    const double t = y[static_cast<std::size_t>(row)];
                    val_losses[static_cast<std::size_t>(i)] = bce_from_logit(logit, t);
                    const bool predict_separable = sigmoid(logit) >= 0.5;
                    val_correct[static_cast<std::size_t>(i)] =
                        predict_separable == (t == 1.0) ? 1 : 0;
                }
            });
            double vloss = 0.0;
            long correct = 0;
            for (std::size_t i = 0; i < val_losses.size(); ++i) {
                vloss += val_losses[i];
                correct += val_correct[i];
            }
            vloss /= static_cast<double>(val_count);
            if (!std::isfinite(vloss)) throw NonFiniteLoss(epoch);
            report.val_loss.push_back(vloss);
            report.val_accuracy.push_back(static_cast<double>(correct) /
                                          static_cast<double>(val_count));

            if (vloss < best_val) {
                best_val = vloss;
                best_weights = model.weights;
                best_biases = model.biases;
                report.best_epoch = epoch;
                wait = 0;
            } else {
                ++wait;
                if (wait > hyper.patience) break;
            }
        }
    }

    if (val_count > 0 && !best_weights.empty()) {
        model.weights = best_weights;
        model.biases = best_biases;
        report.best_val_loss = best_val;
    } else {
        report.best_epoch = report.epochs_run - 1;
    }

    model.train_meta.seed = hyper.seed;
    model.train_meta.epochs_run = report.epochs_run;
    model.train_meta.learning_rate = hyper.learning_rate;
    model.train_meta.batch_size = hyper.batch_size;
    model.train_meta.n_in = n_in;
    return report;
}

double gradient_check(const MlpModel& model, const std::vector<double>& features, double target) {
    if (static_cast<int>(features.size()) != model.n_in()) {
        throw std::invalid_argument("feature length does not match model input width");
    }
    MlpModel m = model;  // local copy we can perturb
    Workspace ws(m.layer_sizes);
    GradBuffer analytic;
    analytic.init_like(m);
    backprop_sample(m, features.data(), target, ws, analytic);

    const double h = 1e-5;
    double worst = 0.0;
    auto probe = [&](double& param, double grad) {
        const double saved = param;
        param = saved + h;
        const double up = bce_from_logit(forward_logit(m, features.data(), ws), target);
        param = saved - h;
        const double down = bce_from_logit(forward_logit(m, features.data(), ws), target);
        param = saved;
        const double numeric = (up - down) / (2.0 * h);
        const double scale = std::max({std::abs(grad), std::abs(numeric), 1e-6});
        worst = std::max(worst, std::abs(grad - numeric) / scale);
    };
    for (std::size_t l = 0; l < m.weights.size(); ++l) {
        for (std::size_t i = 0; i < m.weights[l].size(); ++i) {
            probe(m.weights[l][i], analytic.dw[l][i]);
        }
        for (std::size_t i = 0; i < m.biases[l].size(); ++i) {
            probe(m.biases[l][i], analytic.db[l][i]);
        }
    }
    return worst;
}

}  // namespace entwit
