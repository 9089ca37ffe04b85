#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "entwit/mlp.hpp"
#include "entwit/rng.hpp"

using namespace entwit;

namespace {

// Two well-separated blobs: class 1 (separable) near 0.8, class 0
// (entangled) near 0.2, in `dim` feature dimensions.
std::vector<FeatureVector> blob_dataset(int n, int dim, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<FeatureVector> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        FeatureVector fv;
        fv.entangled = i % 2 == 0;
        const double center = fv.entangled ? 0.2 : 0.8;
        for (int d = 0; d < dim; ++d) {
            fv.probs.push_back(center + 0.05 * rng.standard_normal());
        }
        fv.min_pt_eig = fv.entangled ? -0.1 : 0.1;
        fv.purity = 0.5;
        out.push_back(std::move(fv));
    }
    return out;
}

double blob_accuracy(const MlpModel& model, const std::vector<FeatureVector>& data) {
    int correct = 0;
    for (const FeatureVector& fv : data) {
        const double w = forward(model, fv.probs);
        const bool entangled = w < 0.5;
        correct += entangled == fv.entangled;
    }
    return static_cast<double>(correct) / static_cast<double>(data.size());
}

bool same_weights(const MlpModel& a, const MlpModel& b) {
    return a.layer_sizes == b.layer_sizes && a.weights == b.weights && a.biases == b.biases;
}

}  // namespace

TEST_CASE("init_model uses the fixed hidden layout and is seed-deterministic") {
    const MlpModel m = init_model(15, 42);
    CHECK(m.layer_sizes == std::vector<int>{15, 36, 180, 75, 180, 75, 1});
    CHECK(same_weights(m, init_model(15, 42)));
    CHECK_FALSE(same_weights(m, init_model(15, 43)));
    for (const auto& b : m.biases) {
        for (double v : b) CHECK(v == 0.0);
    }
}

TEST_CASE("parameter_count matches the layer sizes") {
    const MlpModel m = init_model_with_layers({4, 8, 3, 1}, 1);
    CHECK(m.parameter_count() == 4 * 8 + 8 + 8 * 3 + 3 + 3 * 1 + 1);
}

TEST_CASE("forward stays in the open unit interval and checks input width") {
    const MlpModel m = init_model(5, 7);
    Rng rng(8);
    for (int i = 0; i < 50; ++i) {
        std::vector<double> x(5);
        for (double& v : x) v = rng.uniform01();
        const double w = forward(m, x);
        CHECK(w > 0.0);
        CHECK(w < 1.0);
    }
    CHECK_THROWS_AS(forward(m, std::vector<double>(4, 0.0)), std::invalid_argument);
}

TEST_CASE("decide applies w < epsilon with the boundary going to separable") {
    const MlpModel m = init_model(3, 9);
    const std::vector<double> x = {0.3, 0.3, 0.3};
    const double w = forward(m, x);  // fresh He-init keeps w near 0.5
    CHECK(decide(m, x, 0.999).entangled);
    CHECK_FALSE(decide(m, x, 0.001).entangled);
    CHECK_FALSE(decide(m, x, w).entangled);  // exact boundary is separable
    CHECK(decide(m, x, w).w == w);
    CHECK(decide(m, x, 0.25).epsilon == 0.25);
    CHECK_THROWS_AS(decide(m, x, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(decide(m, x, 1.0), std::invalid_argument);
}

TEST_CASE("gradient check passes on random small models") {
    Rng rng(10);
    for (int i = 0; i < 5; ++i) {
        const MlpModel m = init_model_with_layers({4, 7, 5, 1}, 100 + static_cast<std::uint64_t>(i));
        std::vector<double> x(4);
        for (double& v : x) v = rng.uniform01();
        const double target = i % 2 ? 1.0 : 0.0;
        CHECK(gradient_check(m, x, target) < 1e-5);
    }
}

TEST_CASE("training separates easy blobs") {
    const std::vector<FeatureVector> data = blob_dataset(1500, 3, 11);
    MlpModel model = init_model_with_layers({3, 16, 8, 1}, 12);
    Hyperparams hyper;
    hyper.epochs = 50;
    hyper.seed = 13;
    const TrainingReport report = train(model, data, hyper);
    CHECK(report.epochs_run >= 1);
    CHECK(blob_accuracy(model, data) >= 0.99);
    REQUIRE(!report.train_loss.empty());
    CHECK(report.train_loss.back() < report.train_loss.front());
}

TEST_CASE("training is deterministic and worker-count invariant") {
    const std::vector<FeatureVector> data = blob_dataset(800, 3, 14);
    Hyperparams hyper;
    hyper.epochs = 8;
    hyper.patience = 100;
    hyper.seed = 15;

    MlpModel a = init_model_with_layers({3, 12, 6, 1}, 16);
    MlpModel b = init_model_with_layers({3, 12, 6, 1}, 16);
    MlpModel c = init_model_with_layers({3, 12, 6, 1}, 16);

    hyper.workers = 1;
    const TrainingReport ra = train(a, data, hyper);
    const TrainingReport rb = train(b, data, hyper);
    hyper.workers = 3;
    const TrainingReport rc = train(c, data, hyper);

    CHECK(same_weights(a, b));
    CHECK(same_weights(a, c));  // block-order gradient reduction, bit for bit
    CHECK(ra.train_loss == rb.train_loss);
    CHECK(ra.train_loss == rc.train_loss);
    CHECK(ra.best_epoch == rc.best_epoch);
}

TEST_CASE("early stopping kicks in and restores the best epoch") {
    // Heavily overlapping classes: validation loss plateaus at the noise
    // floor instead of improving forever, so patience must trigger.
    Rng rng(17);
    std::vector<FeatureVector> data;
    for (int i = 0; i < 600; ++i) {
        FeatureVector fv;
        fv.entangled = i % 2 == 0;
        const double center = fv.entangled ? 0.45 : 0.55;
        for (int d = 0; d < 3; ++d) fv.probs.push_back(center + 0.5 * rng.standard_normal());
        data.push_back(std::move(fv));
    }
    MlpModel model = init_model_with_layers({3, 16, 8, 1}, 18);
    Hyperparams hyper;
    hyper.epochs = 400;
    hyper.patience = 3;
    hyper.seed = 19;
    const TrainingReport report = train(model, data, hyper);
    CHECK(report.epochs_run < 400);
    CHECK(report.best_epoch >= 0);
    CHECK(report.best_epoch < report.epochs_run);
    REQUIRE(report.val_loss.size() == static_cast<std::size_t>(report.epochs_run));
    CHECK(report.best_val_loss ==
          report.val_loss[static_cast<std::size_t>(report.best_epoch)]);
    for (double v : report.val_loss) CHECK(report.best_val_loss <= v);
}

TEST_CASE("report arrays are per-epoch and accuracy is a fraction") {
    const std::vector<FeatureVector> data = blob_dataset(400, 2, 20);
    MlpModel model = init_model_with_layers({2, 8, 1}, 21);
    Hyperparams hyper;
    hyper.epochs = 5;
    hyper.patience = 100;
    const TrainingReport report = train(model, data, hyper);
    CHECK(report.epochs_run == 5);
    CHECK(report.train_loss.size() == 5);
    CHECK(report.val_loss.size() == 5);
    CHECK(report.val_accuracy.size() == 5);
    for (double a : report.val_accuracy) {
        CHECK(a >= 0.0);
        CHECK(a <= 1.0);
    }
}

TEST_CASE("single-class input is rejected") {
    std::vector<FeatureVector> data = blob_dataset(100, 2, 22);
    for (FeatureVector& fv : data) fv.entangled = true;
    MlpModel model = init_model_with_layers({2, 4, 1}, 23);
    Hyperparams hyper;
    CHECK_THROWS_AS(train(model, data, hyper), SingleClassDataset);
}

TEST_CASE("train_meta records the run") {
    const std::vector<FeatureVector> data = blob_dataset(300, 2, 24);
    MlpModel model = init_model_with_layers({2, 6, 1}, 25);
    Hyperparams hyper;
    hyper.epochs = 4;
    hyper.patience = 100;
    hyper.seed = 77;
    hyper.learning_rate = 5e-4;
    train(model, data, hyper);
    CHECK(model.train_meta.seed == 77);
    CHECK(model.train_meta.epochs_run == 4);
    CHECK(model.train_meta.learning_rate == 5e-4);
    CHECK(model.train_meta.batch_size == 256);
    CHECK(model.train_meta.n_in == 2);
}

TEST_CASE("empty dataset and empty feature vectors are rejected") {
    MlpModel model = init_model_with_layers({2, 4, 1}, 26);
    Hyperparams hyper;
    CHECK_THROWS_AS(train(model, {}, hyper), std::invalid_argument);
}
