#include "entwit/dataset_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace entwit {

namespace {

using nlohmann::json;

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);  // binary: no newline translation
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    return in;
}

double parse_double(const std::string& field, const std::string& context) {
    double v = 0.0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    const auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc{} || ptr != end) {
        throw SchemaError("bad numeric field '" + field + "' in " + context);
    }
    if (!std::isfinite(v)) throw SchemaError("non-finite value in " + context);
    return v;
}

bool parse_bool01(const std::string& field, const std::string& context) {
    if (field == "1") return true;
    if (field == "0") return false;
    throw SchemaError("bad boolean field '" + field + "' in " + context);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

std::string dataset_header_line(int n, bool with_states) {
    std::string h = "entangled,min_pt_eig,purity,degenerate";
    for (int i = 1; i <= n; ++i) h += ",P_" + std::to_string(i);
    if (with_states) {
        for (int i = 0; i < 16; ++i) {
            h += ",rho_" + std::to_string(i) + "_re,rho_" + std::to_string(i) + "_im";
        }
    }
    return h;
}

json catalog_to_json(const SettingsCatalog& catalog) {
    json settings = json::array();
    for (const auto& s : catalog.settings) {
        settings.push_back(json{
            {"name", s.name},
            {"x", {s.x.ket[0].real(), s.x.ket[0].imag(), s.x.ket[1].real(), s.x.ket[1].imag()}},
            {"y", {s.y.ket[0].real(), s.y.ket[0].imag(), s.y.ket[1].real(), s.y.ket[1].imag()}},
        });
    }
    return json{{"n", catalog.size()}, {"settings", settings}};
}

Projector projector_from_json(const json& arr, const std::string& context) {
    if (!arr.is_array() || arr.size() != 4) {
        throw SchemaError("ket in " + context + " must be [re0,im0,re1,im1]");
    }
    const cplx k0(arr[0].get<double>(), arr[1].get<double>());
    const cplx k1(arr[2].get<double>(), arr[3].get<double>());
    const double n2 = std::norm(k0) + std::norm(k1);
    if (!(n2 > 1e-24) || !std::isfinite(n2)) {
        throw SchemaError("ket in " + context + " has zero or non-finite norm");
    }
    // Kets that are already normalized pass through untouched, so a saved
    // catalog reloads bit for bit; only genuine overrides get rescaled.
    if (std::abs(n2 - 1.0) <= 1e-12) return Projector({k0, k1});
    const double n = std::sqrt(n2);
    return Projector({k0 / n, k1 / n});
}

SettingsCatalog catalog_from_json(const json& j, const std::string& context) {
    if (!j.is_object() || !j.contains("settings")) {
        throw SchemaError("missing catalog settings in " + context);
    }
    SettingsCatalog catalog;
    for (const auto& s : j.at("settings")) {
        const std::string name = s.at("name").get<std::string>();
        for (const auto& existing : catalog.settings) {
            if (existing.name == name) {
                throw SchemaError("duplicate setting name '" + name + "' in " + context);
            }
        }
        catalog.settings.push_back(ProjectionSetting{
            name,
            projector_from_json(s.at("x"), context + " setting " + name),
            projector_from_json(s.at("y"), context + " setting " + name),
        });
    }
    if (catalog.settings.empty()) throw SchemaError("empty catalog in " + context);
    if (j.contains("n") && j.at("n").get<int>() != catalog.size()) {
        throw CountMismatch("catalog n does not match settings length in " + context);
    }
    return catalog;
}

json load_json_file(const std::string& path) {
    std::ifstream in = open_in(path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw SchemaError("cannot parse '" + path + "': " + e.what());
    }
    return j;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out = open_out(path);
    out << text;
    if (!out) throw IoError("write failed for '" + path + "'");
}

}  // namespace

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void save_dataset(const DatasetFile& ds, const std::string& csv_path) {
    const int n = ds.catalog.size();
    long entangled = 0;
    std::string body = dataset_header_line(n, ds.with_states) + "\n";
    for (const auto& r : ds.records) {
        if (static_cast<int>(r.probs.size()) != n) {
            throw CountMismatch("record probability width does not match catalog size");
        }
        if (ds.with_states != r.state.has_value()) {
            throw SchemaError("record state presence does not match with_states header");
        }
        entangled += r.entangled ? 1 : 0;
        std::string line = r.entangled ? "1" : "0";
        line += ',' + format_g17(r.min_pt_eig);
        line += ',' + format_g17(r.purity);
        line += r.degenerate ? ",1" : ",0";
        for (double p : r.probs) line += ',' + format_g17(p);
        if (r.state) {
            for (double v : *r.state) line += ',' + format_g17(v);
        }
        body += line + "\n";
    }

    json sidecar{
        {"kind", "entwit-dataset"},
        {"version", ds.version},
        {"seed", ds.seed},
        {"mix", ds.mix},
        {"with_states", ds.with_states},
        {"catalog", catalog_to_json(ds.catalog)},
        {"counts",
         {{"total", static_cast<long>(ds.records.size())},
          {"entangled", entangled},
          {"separable", static_cast<long>(ds.records.size()) - entangled}}},
    };

    write_text(csv_path, body);
    write_text(csv_path + ".json", sidecar.dump(2) + "\n");
}

DatasetFile load_dataset(const std::string& csv_path) {
    const json sidecar = load_json_file(csv_path + ".json");
    if (sidecar.value("kind", "") != "entwit-dataset") {
        throw SchemaError("'" + csv_path + ".json' is not a dataset header");
    }
    if (sidecar.value("version", -1) != kDatasetFormatVersion) {
        throw VersionMismatch("unsupported dataset version in '" + csv_path + ".json'");
    }

    DatasetFile ds;
    ds.version = sidecar.at("version").get<int>();
    ds.seed = sidecar.at("seed").get<std::uint64_t>();
    ds.mix = sidecar.at("mix").get<std::string>();
    ds.with_states = sidecar.at("with_states").get<bool>();
    ds.catalog = catalog_from_json(sidecar.at("catalog"), csv_path + ".json");
    const int n = ds.catalog.size();

    std::ifstream in = open_in(csv_path);
    std::string line;
    if (!std::getline(in, line)) throw SchemaError("'" + csv_path + "' is empty");
    if (line != dataset_header_line(n, ds.with_states)) {
        throw SchemaError("unexpected column header in '" + csv_path + "'");
    }
    const std::size_t expected_fields = 4 + static_cast<std::size_t>(n) + (ds.with_states ? 32 : 0);
    long row_index = 0;
    while (std::getline(in, line)) {
        ++row_index;
        const std::string context = csv_path + " row " + std::to_string(row_index);
        const auto fields = split_csv_line(line);
        if (fields.size() != expected_fields) {
            throw SchemaError("wrong field count in " + context);
        }
        DataRecord r;
        r.entangled = parse_bool01(fields[0], context);
        r.min_pt_eig = parse_double(fields[1], context);
        r.purity = parse_double(fields[2], context);
        r.degenerate = parse_bool01(fields[3], context);
        r.probs.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            r.probs.push_back(parse_double(fields[static_cast<std::size_t>(4 + i)], context));
        }
        if (ds.with_states) {
            std::array<double, 32> st{};
            for (int i = 0; i < 32; ++i) {
                st[static_cast<std::size_t>(i)] =
                    parse_double(fields[static_cast<std::size_t>(4 + n + i)], context);
            }
            r.state = st;
        }
        ds.records.push_back(std::move(r));
    }

    const auto& counts = sidecar.at("counts");
    const long total = counts.at("total").get<long>();
    if (total != static_cast<long>(ds.records.size())) {
        throw CountMismatch("row count " + std::to_string(ds.records.size()) +
                            " does not match header total " + std::to_string(total));
    }
    long entangled = 0;
    for (const auto& r : ds.records) entangled += r.entangled ? 1 : 0;
    if (entangled != counts.at("entangled").get<long>()) {
        throw CountMismatch("entangled count does not match header");
    }
    return ds;
}

DataRecord make_record(const LabeledState& state, const FeatureVector& features,
                       bool embed_state) {
    DataRecord r;
    r.entangled = state.entangled;
    r.min_pt_eig = state.min_pt_eig;
    r.purity = state.purity;
    r.degenerate = features.degenerate;
    r.probs = features.probs;
    if (embed_state) {
        std::array<double, 32> st{};
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) {
                st[static_cast<std::size_t>(2 * (4 * i + j))] = state.rho.at(i, j).real();
                st[static_cast<std::size_t>(2 * (4 * i + j) + 1)] = state.rho.at(i, j).imag();
            }
        }
        r.state = st;
    }
    return r;
}

DensityMatrix record_state(const DataRecord& record) {
    if (!record.state) throw SchemaError("record has no embedded state (need --with-states data)");
    ComplexMatrix m(4, 4);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            m.at(i, j) = cplx((*record.state)[static_cast<std::size_t>(2 * (4 * i + j))],
                              (*record.state)[static_cast<std::size_t>(2 * (4 * i + j) + 1)]);
        }
    }
    return DensityMatrix(std::move(m));
}

std::vector<FeatureVector> dataset_features(const DatasetFile& ds) {
    std::vector<FeatureVector> out;
    out.reserve(ds.records.size());
    for (const auto& r : ds.records) {
        FeatureVector fv;
        fv.probs = r.probs;
        fv.entangled = r.entangled;
        fv.min_pt_eig = r.min_pt_eig;
        fv.purity = r.purity;
        fv.degenerate = r.degenerate;
        out.push_back(std::move(fv));
    }
    return out;
}

std::vector<EvalSample> dataset_eval_samples(const DatasetFile& ds) {
    std::vector<EvalSample> out;
    out.reserve(ds.records.size());
    for (const auto& r : ds.records) out.push_back(EvalSample{r.probs, r.entangled, r.min_pt_eig});
    return out;
}

void save_model(const MlpModel& model, const std::string& path) {
    json j{
        {"kind", "entwit-mlp"},
        {"version", kModelFormatVersion},
        {"layer_sizes", model.layer_sizes},
        {"weights", model.weights},
        {"biases", model.biases},
        {"activation", "relu"},
        {"output_activation", "sigmoid"},
        {"train_meta",
         {{"seed", model.train_meta.seed},
          {"epochs_run", model.train_meta.epochs_run},
          {"learning_rate", model.train_meta.learning_rate},
          {"batch_size", model.train_meta.batch_size},
          {"n_in", model.train_meta.n_in}}},
    };
    write_text(path, j.dump(2) + "\n");
}

MlpModel load_model(const std::string& path) {
    const json j = load_json_file(path);
    if (j.value("kind", "") != "entwit-mlp") throw SchemaError("'" + path + "' is not a model file");
    if (j.value("version", -1) != kModelFormatVersion) {
        throw VersionMismatch("unsupported model version in '" + path + "'");
    }
    if (j.value("activation", "") != "relu" || j.value("output_activation", "") != "sigmoid") {
        throw SchemaError("unsupported activation names in '" + path + "'");
    }

    MlpModel m;
    m.layer_sizes = j.at("layer_sizes").get<std::vector<int>>();
    m.weights = j.at("weights").get<std::vector<std::vector<double>>>();
    m.biases = j.at("biases").get<std::vector<std::vector<double>>>();
    if (m.layer_sizes.size() < 2 || m.layer_sizes.back() != 1) {
        throw SchemaError("bad layer_sizes in '" + path + "'");
    }
    const std::size_t layers = m.layer_sizes.size() - 1;
    if (m.weights.size() != layers || m.biases.size() != layers) {
        throw CountMismatch("layer count mismatch in '" + path + "'");
    }
    for (std::size_t l = 0; l < layers; ++l) {
        const auto in = static_cast<std::size_t>(m.layer_sizes[l]);
        const auto out = static_cast<std::size_t>(m.layer_sizes[l + 1]);
        if (m.weights[l].size() != in * out || m.biases[l].size() != out) {
            throw CountMismatch("weight shape mismatch at layer " + std::to_string(l) + " in '" +
                                path + "'");
        }
        for (double v : m.weights[l]) {
            if (!std::isfinite(v)) throw SchemaError("non-finite weight in '" + path + "'");
        }
        for (double v : m.biases[l]) {
            if (!std::isfinite(v)) throw SchemaError("non-finite bias in '" + path + "'");
        }
    }
    const auto& meta = j.at("train_meta");
    m.train_meta.seed = meta.at("seed").get<std::uint64_t>();
    m.train_meta.epochs_run = meta.at("epochs_run").get<int>();
    m.train_meta.learning_rate = meta.at("learning_rate").get<double>();
    m.train_meta.batch_size = meta.at("batch_size").get<int>();
    m.train_meta.n_in = meta.at("n_in").get<int>();
    if (m.train_meta.n_in != m.layer_sizes.front()) {
        throw CountMismatch("train_meta n_in does not match layer_sizes in '" + path + "'");
    }
    return m;
}

void save_training_report(const TrainingReport& report, const std::string& path) {
    std::string body = "epoch,train_loss,val_loss,val_accuracy\n";
    for (std::size_t e = 0; e < report.train_loss.size(); ++e) {
        body += std::to_string(e) + ',' + format_g17(report.train_loss[e]);
        if (e < report.val_loss.size()) {
            body += ',' + format_g17(report.val_loss[e]) + ',' + format_g17(report.val_accuracy[e]);
        } else {
            body += ",,";
        }
        body += '\n';
    }
    write_text(path, body);
}

SettingsCatalog load_catalog_override(const std::string& path) {
    json j = load_json_file(path);
    if (j.is_array()) j = json{{"settings", j}};
    return catalog_from_json(j, path);
}

void save_sweep_csv(const std::vector<ConfusionReport>& reports, const std::string& path) {
    std::string body = "epsilon,te,fe,ts,fs,type1_rate,type2_rate,success_rate\n";
    for (const auto& r : reports) {
        body += format_g17(r.epsilon) + ',' + std::to_string(r.te) + ',' + std::to_string(r.fe) +
                ',' + std::to_string(r.ts) + ',' + std::to_string(r.fs) + ',' +
                format_g17(r.type1_rate) + ',' + format_g17(r.type2_rate) + ',' +
                format_g17(r.success_rate) + '\n';
    }
    write_text(path, body);
}

void save_selection_json(const ConfusionReport& selected, double max_type1, long total,
                         const std::string& path) {
    const json j{
        {"kind", "entwit-eval-summary"},
        {"version", 1},
        {"max_type1", max_type1},
        {"total", total},
        {"selected",
         {{"epsilon", selected.epsilon},
          {"te", selected.te},
          {"fe", selected.fe},
          {"ts", selected.ts},
          {"fs", selected.fs},
          {"type1_rate", selected.type1_rate},
          {"type2_rate", selected.type2_rate},
          {"success_rate", selected.success_rate}}},
    };
    write_text(path, j.dump(2) + "\n");
}

void save_bins_csv(const ErrorBinCurve& curve, const std::string& path) {
    std::string body = "bin_lo,bin_hi,count,errors,error_prob\n";
    for (std::size_t b = 0; b + 1 < curve.bin_edges.size(); ++b) {
        body += format_g17(curve.bin_edges[b]) + ',' + format_g17(curve.bin_edges[b + 1]) + ',' +
                std::to_string(curve.counts[b]) + ',' + std::to_string(curve.errors[b]) + ',' +
                format_g17(curve.error_prob[b]) + '\n';
    }
    write_text(path, body);
}

void save_comparison_csv(const std::vector<MethodResult>& rows, const std::string& path) {
    std::string body = "method,n_projections,epsilon,type1_rate,type2_rate,success_rate\n";
    for (const auto& r : rows) {
        body += r.method + ',' + std::to_string(r.n_projections) + ',' +
                (r.has_epsilon ? format_g17(r.report.epsilon) : std::string()) + ',' +
                format_g17(r.report.type1_rate) + ',' + format_g17(r.report.type2_rate) + ',' +
                format_g17(r.report.success_rate) + '\n';
    }
    write_text(path, body);
}

void save_scan_csv(const std::vector<WernerScanRow>& rows, const std::string& path) {
    std::string body =
        "p,shots,count_HH,count_VV,count_DD,count_RR,count_HV,"
        "prob_HH,prob_VV,prob_DD,prob_RR,prob_HV,"
        "ann_w,ann_entangled_eps05,ann_entangled_eps09,"
        "collectibility_value,collectibility_detected\n";
    for (const auto& r : rows) {
        body += format_g17(r.p) + ',' + std::to_string(r.shots);
        for (long c : r.counts) body += ',' + std::to_string(c);
        for (double q : r.probs) body += ',' + format_g17(q);
        body += ',' + format_g17(r.ann_w);
        body += r.ann_entangled_eps05 ? ",1" : ",0";
        body += r.ann_entangled_eps09 ? ",1" : ",0";
        body += ',' + format_g17(r.collectibility_value);
        body += r.collectibility_detected ? ",1\n" : ",0\n";
    }
    write_text(path, body);
}

}  // namespace entwit
