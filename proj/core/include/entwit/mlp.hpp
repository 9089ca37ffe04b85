#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "entwit/collective.hpp"

namespace entwit {

class SingleClassDataset : public std::invalid_argument {
public:
    SingleClassDataset() : std::invalid_argument("training set contains only one class") {}
};

class NonFiniteLoss : public std::runtime_error {
public:
    explicit NonFiniteLoss(int epoch)
        : std::runtime_error("loss became non-finite at epoch " + std::to_string(epoch)) {}
};

struct TrainMeta {
    std::uint64_t seed = 0;
    int epochs_run = 0;
    double learning_rate = 0.0;
    int batch_size = 0;
    int n_in = 0;
};

// Fully connected classifier. weights[l] is (layer_sizes[l+1] x
// layer_sizes[l]) row-major, biases[l] has layer_sizes[l+1] entries. Hidden
// activations are ReLU; the scalar output passes through a sigmoid, so the
// confidence w runs from 0 (certainly entangled) to 1 (certainly separable).
struct MlpModel {
    std::vector<int> layer_sizes;
    std::vector<std::vector<double>> weights;
    std::vector<std::vector<double>> biases;
    TrainMeta train_meta;

    int n_in() const { return layer_sizes.front(); }
    std::size_t parameter_count() const;
};

// He-style initialization (zero-mean normal, variance 2/fan_in), zero
// biases, deterministic in the seed. The fixed hidden layout is
// 36-180-75-180-75 with a single output node.
MlpModel init_model(int n_in, std::uint64_t seed);

// Same initialization for an arbitrary layout; used by the gradient checks
// and anywhere a toy-sized model is enough.
MlpModel init_model_with_layers(const std::vector<int>& layer_sizes, std::uint64_t seed);

// Confidence w in (0,1). Throws on feature-length mismatch.
double forward(const MlpModel& model, const std::vector<double>& features);

struct Decision {
    double w = 0.0;
    double epsilon = 0.0;
    bool entangled = false;  // w < epsilon; the boundary goes to separable
};

Decision decide(const MlpModel& model, const std::vector<double>& features, double epsilon);

struct Hyperparams {
    double learning_rate = 1e-3;
    int batch_size = 256;
    int epochs = 200;
    double validation_fraction = 0.05;
    int patience = 10;  // epochs without validation improvement before stopping
    std::uint64_t seed = 1;
    // Data-parallel gradient workers. Per-batch gradients are reduced over
    // fixed-size row blocks in block order, so the result is bit-identical
    // for every worker count; workers only change wall time.
    int workers = 1;
};

struct TrainingReport {
    std::vector<double> train_loss;    // per epoch, mean over training samples
    std::vector<double> val_loss;      // per epoch; empty if no validation split
    std::vector<double> val_accuracy;  // fraction correct at w = 0.5
    int best_epoch = -1;               // epoch whose parameters were restored
    int epochs_run = 0;
    double best_val_loss = 0.0;
};

// Minimizes binary cross-entropy with Adam on the encoding separable -> 1,
// entangled -> 0. Mini-batches are shuffled per (seed, epoch); training
// stops early when validation loss fails to improve for `patience` epochs
// and the best-validation parameters are restored. Deterministic for fixed
// (dataset, hyper).
TrainingReport train(MlpModel& model, const std::vector<FeatureVector>& dataset,
                     const Hyperparams& hyper);

// Max relative error between backprop and central finite differences
// (step 1e-5) over every weight and bias, for the single-sample binary
// cross-entropy loss at (features, target).
double gradient_check(const MlpModel& model, const std::vector<double>& features, double target);

}  // namespace entwit
