// entwit: generate labeled two-qubit datasets, train and evaluate the
// collective-measurement classifier, benchmark analytical witnesses, and
// run the Werner-family scan. Every command is deterministic in its seed.

#include <cstdint>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "entwit/collective.hpp"
#include "entwit/dataset_io.hpp"
#include "entwit/evaluation.hpp"
#include "entwit/mlp.hpp"
#include "entwit/parallel.hpp"
#include "entwit/sampler.hpp"
#include "entwit/scan.hpp"
#include "entwit/witnesses.hpp"

namespace {

using namespace entwit;

constexpr int kExitValidation = 2;
constexpr int kExitIo = 3;

// "lo:step:hi" -> inclusive grid. Validation happens in uniform_grid.
std::vector<double> parse_grid(const std::string& text) {
    double lo = 0.0;
    double step = 0.0;
    double hi = 0.0;
    if (std::sscanf(text.c_str(), "%lf:%lf:%lf", &lo, &step, &hi) != 3) {
        throw std::invalid_argument("grid must be lo:step:hi, got '" + text + "'");
    }
    return uniform_grid(lo, hi, step);
}

struct GenOptions {
    std::string mix = describe_mix(default_training_mix());
    long count = 0;
    int catalog_n = 15;
    std::string catalog_file;
    std::uint64_t seed = 1;
    std::string out;
    bool with_states = false;
    int workers = 1;
};

int run_gen(const GenOptions& opt) {
    const SettingsCatalog catalog =
        opt.catalog_file.empty() ? default_catalog(opt.catalog_n) : load_catalog_override(opt.catalog_file);
    const std::vector<MixComponent> mix = parse_mix(opt.mix);
    const int workers = resolve_workers(opt.workers);

    SampleStats stats;
    const std::vector<LabeledState> states = sample_dataset(mix, opt.count, opt.seed, workers, &stats);

    std::vector<DensityMatrix> rhos;
    rhos.reserve(states.size());
    for (const LabeledState& s : states) rhos.push_back(s.rho);
    const std::vector<FeatureVector> features = feature_vectors(rhos, catalog, workers);

    DatasetFile ds;
    ds.mix = describe_mix(mix);
    ds.seed = opt.seed;
    ds.catalog = catalog;
    ds.with_states = opt.with_states;
    ds.records.reserve(states.size());
    for (std::size_t i = 0; i < states.size(); ++i) {
        ds.records.push_back(make_record(states[i], features[i], opt.with_states));
    }
    save_dataset(ds, opt.out);

    std::cout << "wrote " << opt.out << " (" << ds.records.size() << " records, N=" << catalog.size()
              << ")\n";
    std::cout << "balance: entangled=" << stats.entangled << " separable=" << stats.separable
              << " total=" << (stats.entangled + stats.separable) << "\n";
    return 0;
}

struct TrainOptions {
    std::string data;
    std::string out;
    std::string report;
    std::string hyper_file;
    Hyperparams hyper;
};

Hyperparams load_hyper_file(const std::string& path, Hyperparams base) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open hyperparameter file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError("bad hyperparameter JSON in " + path + ": " + e.what());
    }
    if (!j.is_object()) throw SchemaError("hyperparameter file must hold a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (key == "learning_rate") base.learning_rate = value.get<double>();
        else if (key == "batch_size") base.batch_size = value.get<int>();
        else if (key == "epochs") base.epochs = value.get<int>();
        else if (key == "validation_fraction") base.validation_fraction = value.get<double>();
        else if (key == "patience") base.patience = value.get<int>();
        else if (key == "seed") base.seed = value.get<std::uint64_t>();
        else if (key == "workers") base.workers = value.get<int>();
        else throw SchemaError("unknown hyperparameter '" + key + "' in " + path);
    }
    return base;
}

int run_train(const TrainOptions& opt) {
    Hyperparams hyper = opt.hyper;
    if (!opt.hyper_file.empty()) hyper = load_hyper_file(opt.hyper_file, hyper);
    hyper.workers = resolve_workers(hyper.workers);

    const DatasetFile ds = load_dataset(opt.data);
    const std::vector<FeatureVector> features = dataset_features(ds);

    MlpModel model = init_model(ds.catalog.size(), hyper.seed);
    const TrainingReport report = train(model, features, hyper);

    save_model(model, opt.out);
    const std::string report_path = opt.report.empty() ? opt.out + ".report.csv" : opt.report;
    save_training_report(report, report_path);

    std::cout << "wrote " << opt.out << " and " << report_path << "\n";
    std::cout << "trained n_in=" << model.n_in() << " epochs_run=" << report.epochs_run
              << " best_epoch=" << report.best_epoch << " best_val_loss=" << format_g17(report.best_val_loss)
              << "\n";
    return 0;
}

struct EvalOptions {
    std::string data;
    std::string model;
    std::string epsilons = "0.01:0.01:0.99";
    double max_type1 = 0.015;
    int bins = 15;
    std::string out_prefix;
    int workers = 1;
};

int run_eval(const EvalOptions& opt) {
    const DatasetFile ds = load_dataset(opt.data);
    const MlpModel model = load_model(opt.model);
    if (model.n_in() != ds.catalog.size()) {
        throw std::invalid_argument("model expects " + std::to_string(model.n_in()) +
                                    " features but dataset has " + std::to_string(ds.catalog.size()));
    }
    const std::vector<EvalSample> samples = dataset_eval_samples(ds);
    const std::vector<double> grid = parse_grid(opt.epsilons);
    const int workers = resolve_workers(opt.workers);

    const std::vector<ConfusionReport> sweep = threshold_sweep(model, samples, grid, workers);
    const ConfusionReport selected = select_epsilon(sweep, opt.max_type1);

    std::vector<bool> predicted(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        predicted[i] = decide(model, samples[i].probs, selected.epsilon).entangled;
    }
    const ErrorBinCurve bins = bin_errors_by_min_eig(samples, predicted, opt.bins);

    save_sweep_csv(sweep, opt.out_prefix + ".sweep.csv");
    save_selection_json(selected, opt.max_type1, selected.total(), opt.out_prefix + ".selection.json");
    save_bins_csv(bins, opt.out_prefix + ".bins.csv");

    std::cout << "wrote " << opt.out_prefix << ".sweep.csv, .selection.json, .bins.csv\n";
    std::cout << "selected: epsilon=" << format_g17(selected.epsilon)
              << " success=" << format_g17(selected.success_rate)
              << " type1=" << format_g17(selected.type1_rate)
              << " type2=" << format_g17(selected.type2_rate) << "\n";
    return 0;
}

struct WitnessBenchOptions {
    std::string data;
    std::string out;
    int workers = 1;
};

int run_witness_bench(const WitnessBenchOptions& opt) {
    const DatasetFile ds = load_dataset(opt.data);
    if (!ds.with_states) {
        throw SchemaError("witness-bench needs embedded states; regenerate with --with-states");
    }
    const long n = static_cast<long>(ds.records.size());
    const int workers = resolve_workers(opt.workers);

    // One verdict column per analytical witness, plus the stored labels.
    const std::vector<WitnessKind> kinds = {WitnessKind::Collectibility, WitnessKind::Fef,
                                            WitnessKind::Chsh, WitnessKind::Entropic};
    std::vector<std::vector<bool>> detected(kinds.size(), std::vector<bool>(ds.records.size()));
    std::vector<bool> truth(ds.records.size());
    for (std::size_t i = 0; i < ds.records.size(); ++i) truth[i] = ds.records[i].entangled;

    parallel_chunks(n, workers, [&](long begin, long end) {
        for (long i = begin; i < end; ++i) {
            const DensityMatrix rho = record_state(ds.records[static_cast<std::size_t>(i)]);
            const WitnessVerdict verdicts[] = {collectibility(rho), fef(rho), chsh(rho), entropic(rho)};
            for (std::size_t k = 0; k < kinds.size(); ++k) {
                detected[k][static_cast<std::size_t>(i)] = verdicts[k].detected;
            }
        }
    });

    std::vector<MethodResult> rows;
    for (std::size_t k = 0; k < kinds.size(); ++k) {
        MethodResult row;
        row.method = witness_name(kinds[k]);
        row.n_projections = kinds[k] == WitnessKind::Collectibility ? 5 : 12;
        row.has_epsilon = false;
        row.report = confusion(detected[k], truth);
        rows.push_back(row);
    }
    save_comparison_csv(rows, opt.out);

    std::cout << "wrote " << opt.out << "\n";
    for (const MethodResult& row : rows) {
        std::cout << row.method << ": success=" << format_g17(row.report.success_rate)
                  << " type1=" << format_g17(row.report.type1_rate)
                  << " type2=" << format_g17(row.report.type2_rate) << "\n";
    }
    return 0;
}

struct ScanOptions {
    std::string model;
    std::string p_grid = "0:0.02:1";
    long shots = 10000;
    std::uint64_t seed = 1;
    std::string out;
};

int run_scan(const ScanOptions& opt) {
    const MlpModel model = load_model(opt.model);
    const std::vector<double> grid = parse_grid(opt.p_grid);
    const std::vector<WernerScanRow> rows = werner_scan(model, grid, opt.shots, opt.seed);
    save_scan_csv(rows, opt.out);

    std::cout << "wrote " << opt.out << " (" << rows.size() << " points, shots=" << opt.shots << ")\n";
    return 0;
}

template <typename Fn>
int guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const VersionMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const CountMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const SchemaError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Collective-measurement entanglement classifier toolkit"};
    app.set_version_flag("--version", "entwit 0.1.0");
    app.require_subcommand(1);

    GenOptions gen;
    CLI::App* cmd_gen = app.add_subcommand("gen-dataset", "Sample labeled states and write features");
    cmd_gen->add_option("--mix", gen.mix, "Ensemble mix, e.g. ginibre_full:1,werner_0.8:2");
    cmd_gen->add_option("--count", gen.count, "Number of records")->required();
    cmd_gen->add_option("--catalog", gen.catalog_n, "Default catalog size (3, 5, 6, 12, 15)");
    cmd_gen->add_option("--catalog-file", gen.catalog_file, "JSON catalog override (wins over --catalog)");
    cmd_gen->add_option("--seed", gen.seed, "RNG seed");
    cmd_gen->add_option("--out", gen.out, "Output CSV path (sidecar at <out>.json)")->required();
    cmd_gen->add_flag("--with-states", gen.with_states, "Embed the 16 complex entries of each state");
    cmd_gen->add_option("--workers", gen.workers, "Worker threads (ENTWIT_THREADS caps)");

    TrainOptions tr;
    CLI::App* cmd_train = app.add_subcommand("train", "Train the classifier on a dataset");
    cmd_train->add_option("--data", tr.data, "Dataset CSV")->required();
    cmd_train->add_option("--out", tr.out, "Model JSON path")->required();
    cmd_train->add_option("--report", tr.report, "Per-epoch report CSV (default <out>.report.csv)");
    cmd_train->add_option("--hyper", tr.hyper_file, "Hyperparameter JSON file");
    cmd_train->add_option("--epochs", tr.hyper.epochs, "Maximum epochs");
    cmd_train->add_option("--lr", tr.hyper.learning_rate, "Adam learning rate");
    cmd_train->add_option("--batch", tr.hyper.batch_size, "Mini-batch size");
    cmd_train->add_option("--patience", tr.hyper.patience, "Early-stopping patience in epochs");
    cmd_train->add_option("--val-fraction", tr.hyper.validation_fraction, "Validation split fraction");
    cmd_train->add_option("--seed", tr.hyper.seed, "Init/shuffle/split seed");
    cmd_train->add_option("--workers", tr.hyper.workers, "Worker threads (ENTWIT_THREADS caps)");

    EvalOptions ev;
    CLI::App* cmd_eval = app.add_subcommand("eval", "Threshold sweep, selection, and error bins");
    cmd_eval->add_option("--data", ev.data, "Dataset CSV")->required();
    cmd_eval->add_option("--model", ev.model, "Model JSON")->required();
    cmd_eval->add_option("--epsilons", ev.epsilons, "Threshold grid lo:step:hi");
    cmd_eval->add_option("--max-type1", ev.max_type1, "Type-I cap for epsilon selection");
    cmd_eval->add_option("--bins", ev.bins, "Error bins over min_pt_eig (>= 3)");
    cmd_eval->add_option("--out", ev.out_prefix, "Output prefix")->required();
    cmd_eval->add_option("--workers", ev.workers, "Worker threads (ENTWIT_THREADS caps)");

    WitnessBenchOptions wb;
    CLI::App* cmd_wb = app.add_subcommand("witness-bench", "Analytical witnesses on embedded states");
    cmd_wb->add_option("--data", wb.data, "Dataset CSV written with --with-states")->required();
    cmd_wb->add_option("--out", wb.out, "Comparison CSV path")->required();
    cmd_wb->add_option("--workers", wb.workers, "Worker threads (ENTWIT_THREADS caps)");

    ScanOptions sc;
    CLI::App* cmd_scan = app.add_subcommand("werner-scan", "Werner-family sweep with simulated counts");
    cmd_scan->add_option("--model", sc.model, "Five-input model JSON")->required();
    cmd_scan->add_option("--p-grid", sc.p_grid, "Werner parameter grid lo:step:hi");
    cmd_scan->add_option("--shots", sc.shots, "Shots per setting (0 = exact probabilities)");
    cmd_scan->add_option("--seed", sc.seed, "Count-simulation seed");
    cmd_scan->add_option("--out", sc.out, "Scan CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }

    if (cmd_gen->parsed()) return guarded([&] { return run_gen(gen); });
    if (cmd_train->parsed()) return guarded([&] { return run_train(tr); });
    if (cmd_eval->parsed()) return guarded([&] { return run_eval(ev); });
    if (cmd_wb->parsed()) return guarded([&] { return run_witness_bench(wb); });
    return guarded([&] { return run_scan(sc); });
}
