#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "entwit/collective.hpp"
#include "entwit/evaluation.hpp"
#include "entwit/mlp.hpp"
#include "entwit/sampler.hpp"
#include "entwit/scan.hpp"

namespace entwit {

class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& why) : std::runtime_error(why) {}
};

class VersionMismatch : public IoError {
public:
    explicit VersionMismatch(const std::string& why) : IoError(why) {}
};

class CountMismatch : public IoError {
public:
    explicit CountMismatch(const std::string& why) : IoError(why) {}
};

class SchemaError : public IoError {
public:
    explicit SchemaError(const std::string& why) : IoError(why) {}
};

inline constexpr int kDatasetFormatVersion = 1;
inline constexpr int kModelFormatVersion = 1;

// %.17g: enough digits to round-trip any double, with trailing zeros
// stripped. Every file writer goes through this one formatter so identical
// values always serialize to identical bytes.
std::string format_g17(double v);

struct DataRecord {
    bool entangled = false;
    double min_pt_eig = 0.0;
    double purity = 0.0;
    bool degenerate = false;
    std::vector<double> probs;
    // 16 complex entries of rho, row-major, re/im interleaved; present only
    // in datasets written with --with-states.
    std::optional<std::array<double, 32>> state;
};

// CSV body plus a JSON sidecar at path + ".json" carrying the header
// (version, catalog with full setting vectors, mix text, seed, class
// counts). The sidecar is authoritative for everything but the rows.
struct DatasetFile {
    int version = kDatasetFormatVersion;
    std::string mix;
    std::uint64_t seed = 0;
    SettingsCatalog catalog;
    bool with_states = false;
    std::vector<DataRecord> records;
};

void save_dataset(const DatasetFile& ds, const std::string& csv_path);
DatasetFile load_dataset(const std::string& csv_path);

DataRecord make_record(const LabeledState& state, const FeatureVector& features, bool embed_state);
DensityMatrix record_state(const DataRecord& record);  // throws SchemaError if absent

std::vector<FeatureVector> dataset_features(const DatasetFile& ds);
std::vector<EvalSample> dataset_eval_samples(const DatasetFile& ds);

// Model JSON: layer sizes, row-major weights, biases, activation names and
// training metadata, all under a mandatory version field.
void save_model(const MlpModel& model, const std::string& path);
MlpModel load_model(const std::string& path);

void save_training_report(const TrainingReport& report, const std::string& path);

// Catalog override: JSON list of {name, x: [re0,im0,re1,im1], y: [...]};
// kets are normalized on load and names must be unique.
SettingsCatalog load_catalog_override(const std::string& path);

void save_sweep_csv(const std::vector<ConfusionReport>& reports, const std::string& path);
void save_selection_json(const ConfusionReport& selected, double max_type1, long total,
                         const std::string& path);
void save_bins_csv(const ErrorBinCurve& curve, const std::string& path);
void save_comparison_csv(const std::vector<MethodResult>& rows, const std::string& path);
void save_scan_csv(const std::vector<WernerScanRow>& rows, const std::string& path);

}  // namespace entwit
