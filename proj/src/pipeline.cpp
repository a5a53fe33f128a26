#include "copd/pipeline.hpp"

#include "copd/csv.hpp"
#include "copd/errors.hpp"
#include "copd/evaluate.hpp"
#include "copd/knn.hpp"
#include "copd/labeling.hpp"
#include "copd/preprocessing.hpp"
#include "copd/propagation.hpp"

#include <json.hpp>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

namespace fs = std::filesystem;

namespace copd {

namespace {

std::string trim(const std::string& text) {
    std::size_t begin = text.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    std::size_t end = text.find_last_not_of(" \t\r\n");
    return text.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string current;
    for (char c : text) {
        if (c == sep) {
            parts.push_back(trim(current));
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    parts.push_back(trim(current));
    return parts;
}

double parse_double_value(const std::string& key, const std::string& value) {
    double out = 0.0;
    auto res = std::from_chars(value.data(), value.data() + value.size(), out);
    if (res.ec != std::errc{} || res.ptr != value.data() + value.size()) {
        throw ConfigError("bad number for " + key + ": " + value);
    }
    return out;
}

std::uint64_t parse_uint_value(const std::string& key, const std::string& value) {
    std::uint64_t out = 0;
    auto res = std::from_chars(value.data(), value.data() + value.size(), out);
    if (res.ec != std::errc{} || res.ptr != value.data() + value.size()) {
        throw ConfigError("bad integer for " + key + ": " + value);
    }
    return out;
}

Interval parse_interval(const std::string& key, const std::string& value) {
    auto parts = split(value, ',');
    if (parts.size() != 2) throw ConfigError("expected lo,hi for " + key);
    return Interval{parse_double_value(key, parts[0]), parse_double_value(key, parts[1])};
}

std::string interval_value(const Interval& iv) {
    return format_double(iv.lo) + "," + format_double(iv.hi);
}

std::string optional_gamma_value(const std::optional<double>& gamma) {
    return gamma ? format_double(*gamma) : "auto";
}

void set_item_label(PipelineConfig& cfg, const std::string& field,
                    const std::string& value) {
    for (auto& [name, label] : cfg.item_labels) {
        if (name == field) {
            label = value;
            return;
        }
    }
    cfg.item_labels.emplace_back(field, value);
}

} // namespace

void PipelineConfig::validate() const {
    ranges.validate();
    ssl.validate();
    if (ssl_method != "propagation" && ssl_method != "spreading") {
        throw ConfigError("ssl.method must be propagation or spreading");
    }
    if (cv_folds < 2) throw ConfigError("cv.folds must be at least 2");
    if (knn.k != 0 && knn.k % 2 == 0) throw ConfigError("knn.k must be odd");
    for (std::size_t k : knn_candidates) {
        if (k == 0 || k % 2 == 0) throw ConfigError("knn.candidates must be odd");
    }
    if (svm.c <= 0.0) throw ConfigError("svm.c must be positive");
    if (!samples_path.empty() && !raw_dir.empty()) {
        throw ConfigError("set only one of input.samples and input.raw_dir");
    }
    SyntheticSpec check = synth;
    check.seed = seed;
    check.validate();
}

PipelineConfig default_pipeline_config() {
    PipelineConfig cfg;
    // The sample graph scales to cohort size only with the sparse kernel;
    // the similarity graph is k-nearest-neighbor based.
    cfg.ssl.kernel = AffinityKernel::knn;
    return cfg;
}

void apply_config_entry(PipelineConfig& cfg, const std::string& key,
                        const std::string& value) {
    if (key == "seed") {
        cfg.seed = parse_uint_value(key, value);
    } else if (key == "mode") {
        if (value == "paper_faithful") {
            cfg.paper_faithful = true;
        } else if (value == "leakage_safe") {
            cfg.paper_faithful = false;
        } else {
            throw ConfigError("mode must be leakage_safe or paper_faithful");
        }
    } else if (key == "out") {
        cfg.output_dir = value;
    } else if (key == "input.samples") {
        cfg.samples_path = value;
    } else if (key == "input.raw_dir") {
        cfg.raw_dir = value;
    } else if (key == "synth.n_total") {
        cfg.synth.n_total = static_cast<std::size_t>(parse_uint_value(key, value));
    } else if (key == "synth.mix") {
        auto parts = split(value, ',');
        if (parts.size() != 3) throw ConfigError("synth.mix needs three proportions");
        for (std::size_t c = 0; c < 3; ++c) {
            cfg.synth.target_mix[c] = parse_double_value(key, parts[c]);
        }
    } else if (key == "synth.missing_rate") {
        cfg.synth.missing_rate = parse_double_value(key, value);
    } else if (key == "ranges.ph") {
        cfg.ranges.ph = parse_interval(key, value);
    } else if (key == "ranges.po2") {
        cfg.ranges.po2 = parse_interval(key, value);
    } else if (key == "ranges.pco2") {
        cfg.ranges.pco2 = parse_interval(key, value);
    } else if (key == "ranges.be") {
        cfg.ranges.be = parse_interval(key, value);
    } else if (key == "ranges.tco2") {
        cfg.ranges.tco2 = parse_interval(key, value);
    } else if (key == "ssl.method") {
        cfg.ssl_method = value;
    } else if (key == "ssl.kernel") {
        if (value == "rbf") {
            cfg.ssl.kernel = AffinityKernel::rbf;
        } else if (value == "knn") {
            cfg.ssl.kernel = AffinityKernel::knn;
        } else {
            throw ConfigError("ssl.kernel must be rbf or knn");
        }
    } else if (key == "ssl.gamma") {
        cfg.ssl.gamma = value == "auto"
                            ? std::nullopt
                            : std::optional<double>(parse_double_value(key, value));
    } else if (key == "ssl.k") {
        cfg.ssl.k = static_cast<std::size_t>(parse_uint_value(key, value));
    } else if (key == "ssl.alpha") {
        cfg.ssl.alpha = parse_double_value(key, value);
    } else if (key == "ssl.tol") {
        cfg.ssl.tol = parse_double_value(key, value);
    } else if (key == "ssl.max_iter") {
        cfg.ssl.max_iter = static_cast<std::size_t>(parse_uint_value(key, value));
    } else if (key == "classifiers") {
        cfg.classifiers.clear();
        for (const auto& name : split(value, ',')) {
            if (!name.empty()) cfg.classifiers.push_back(parse_classifier(name));
        }
    } else if (key == "rf.n_trees") {
        cfg.rf.n_trees = static_cast<std::size_t>(parse_uint_value(key, value));
    } else if (key == "rf.max_depth") {
        cfg.rf.max_depth = static_cast<std::size_t>(parse_uint_value(key, value));
    } else if (key == "rf.seed") {
        cfg.rf.seed = parse_uint_value(key, value);
    } else if (key == "rf.max_features") {
        cfg.rf.max_features =
            value == "auto" ? 0 : static_cast<std::size_t>(parse_uint_value(key, value));
    } else if (key == "rf.min_split") {
        cfg.rf.min_split = static_cast<std::size_t>(parse_uint_value(key, value));
    } else if (key == "knn.k") {
        cfg.knn.k =
            value == "auto" ? 0 : static_cast<std::size_t>(parse_uint_value(key, value));
    } else if (key == "knn.candidates") {
        cfg.knn_candidates.clear();
        for (const auto& item : split(value, ',')) {
            if (!item.empty()) {
                cfg.knn_candidates.push_back(
                    static_cast<std::size_t>(parse_uint_value(key, item)));
            }
        }
    } else if (key == "svm.c") {
        cfg.svm.c = parse_double_value(key, value);
    } else if (key == "svm.gamma") {
        cfg.svm.gamma = value == "auto"
                            ? std::nullopt
                            : std::optional<double>(parse_double_value(key, value));
    } else if (key == "svm.smo_tol") {
        cfg.svm.smo_tol = parse_double_value(key, value);
    } else if (key == "cv.folds") {
        cfg.cv_folds = static_cast<std::size_t>(parse_uint_value(key, value));
    } else if (key == "icd.prefixes") {
        cfg.icd_prefixes.clear();
        for (const auto& prefix : split(value, ',')) {
            if (!prefix.empty()) cfg.icd_prefixes.push_back(prefix);
        }
    } else if (key.rfind("items.", 0) == 0) {
        set_item_label(cfg, key.substr(6), value);
    } else {
        throw ConfigError("unknown config key: " + key);
    }
}

PipelineConfig parse_config_text(const std::string& text) {
    PipelineConfig cfg = default_pipeline_config();
    std::istringstream stream(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(stream, line)) {
        ++line_no;
        std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        std::size_t eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(line_no) +
                              " is not key = value");
        }
        apply_config_entry(cfg, trim(stripped.substr(0, eq)),
                           trim(stripped.substr(eq + 1)));
    }
    return cfg;
}

PipelineConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    std::string stripped = trim(text);
    if (!stripped.empty() && stripped[0] == '{') {
        nlohmann::json manifest;
        try {
            manifest = nlohmann::json::parse(text);
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError("bad manifest json: " + std::string(e.what()));
        }
        if (!manifest.contains("config") || !manifest["config"].is_object()) {
            throw ConfigError("manifest has no config object: " + path);
        }
        PipelineConfig cfg = default_pipeline_config();
        for (const auto& [key, value] : manifest["config"].items()) {
            if (!value.is_string()) {
                throw ConfigError("manifest config values must be strings");
            }
            apply_config_entry(cfg, key, value.get<std::string>());
        }
        return cfg;
    }
    return parse_config_text(text);
}

std::vector<std::pair<std::string, std::string>> config_entries(
    const PipelineConfig& cfg) {
    std::vector<std::pair<std::string, std::string>> entries;
    entries.emplace_back("seed", std::to_string(cfg.seed));
    entries.emplace_back("mode", cfg.paper_faithful ? "paper_faithful" : "leakage_safe");
    entries.emplace_back("out", cfg.output_dir);
    entries.emplace_back("input.samples", cfg.samples_path);
    entries.emplace_back("input.raw_dir", cfg.raw_dir);
    entries.emplace_back("synth.n_total", std::to_string(cfg.synth.n_total));
    entries.emplace_back("synth.mix", format_double(cfg.synth.target_mix[0]) + "," +
                                          format_double(cfg.synth.target_mix[1]) + "," +
                                          format_double(cfg.synth.target_mix[2]));
    entries.emplace_back("synth.missing_rate", format_double(cfg.synth.missing_rate));
    entries.emplace_back("ranges.ph", interval_value(cfg.ranges.ph));
    entries.emplace_back("ranges.po2", interval_value(cfg.ranges.po2));
    entries.emplace_back("ranges.pco2", interval_value(cfg.ranges.pco2));
    entries.emplace_back("ranges.be", interval_value(cfg.ranges.be));
    entries.emplace_back("ranges.tco2", interval_value(cfg.ranges.tco2));
    entries.emplace_back("ssl.method", cfg.ssl_method);
    entries.emplace_back("ssl.kernel",
                         cfg.ssl.kernel == AffinityKernel::rbf ? "rbf" : "knn");
    entries.emplace_back("ssl.gamma", optional_gamma_value(cfg.ssl.gamma));
    entries.emplace_back("ssl.k", std::to_string(cfg.ssl.k));
    entries.emplace_back("ssl.alpha", format_double(cfg.ssl.alpha));
    entries.emplace_back("ssl.tol", format_double(cfg.ssl.tol));
    entries.emplace_back("ssl.max_iter", std::to_string(cfg.ssl.max_iter));
    std::string classifiers;
    for (const auto kind : cfg.classifiers) {
        if (!classifiers.empty()) classifiers += ",";
        classifiers += classifier_name(kind);
    }
    entries.emplace_back("classifiers", classifiers);
    entries.emplace_back("rf.n_trees", std::to_string(cfg.rf.n_trees));
    entries.emplace_back("rf.max_depth", std::to_string(cfg.rf.max_depth));
    entries.emplace_back("rf.seed", std::to_string(cfg.rf.seed));
    entries.emplace_back("rf.max_features", cfg.rf.max_features == 0
                                                ? "auto"
                                                : std::to_string(cfg.rf.max_features));
    entries.emplace_back("rf.min_split", std::to_string(cfg.rf.min_split));
    entries.emplace_back("knn.k", cfg.knn.k == 0 ? "auto" : std::to_string(cfg.knn.k));
    std::string candidates;
    for (std::size_t k : cfg.knn_candidates) {
        if (!candidates.empty()) candidates += ",";
        candidates += std::to_string(k);
    }
    entries.emplace_back("knn.candidates", candidates);
    entries.emplace_back("svm.c", format_double(cfg.svm.c));
    entries.emplace_back("svm.gamma", optional_gamma_value(cfg.svm.gamma));
    entries.emplace_back("svm.smo_tol", format_double(cfg.svm.smo_tol));
    entries.emplace_back("cv.folds", std::to_string(cfg.cv_folds));
    std::string prefixes;
    for (const auto& prefix : cfg.icd_prefixes) {
        if (!prefixes.empty()) prefixes += ",";
        prefixes += prefix;
    }
    entries.emplace_back("icd.prefixes", prefixes);
    for (const auto& [field, label] : cfg.item_labels) {
        entries.emplace_back("items." + field, label);
    }
    return entries;
}

namespace {

// In-memory pipeline state; stages fill it lazily from artifacts when
// invoked standalone.
class Pipeline {
public:
    explicit Pipeline(const PipelineConfig& cfg) : cfg_(cfg) {
        cfg_.validate();
        fs::create_directories(cfg_.output_dir);
        load_manifest_state();
    }

    void run(const std::vector<std::string>& stages) {
        for (const auto& stage : stages) {
            if (stage == "extract") {
                guard(stage, [&] { stage_extract(); });
            } else if (stage == "synth") {
                guard(stage, [&] { stage_synth(); });
            } else if (stage == "label") {
                guard(stage, [&] { stage_label(); });
            } else if (stage == "propagate") {
                guard(stage, [&] { stage_propagate(); });
            } else if (stage == "evaluate") {
                guard(stage, [&] { stage_evaluate(); });
            } else if (stage == "report") {
                guard(stage, [&] { stage_report(); });
            } else {
                throw ConfigError("unknown stage: " + stage);
            }
        }
    }

private:
    PipelineConfig cfg_;
    std::optional<std::vector<PatientSample>> samples_;
    std::optional<std::vector<Severity>> labels_;
    std::optional<std::vector<Severity>> propagated_;
    nlohmann::ordered_json counts_ = nlohmann::ordered_json::object();
    std::vector<std::string> artifacts_;

    std::string path_of(const std::string& name) const {
        return cfg_.output_dir + "/" + name;
    }

    template <typename Fn>
    void guard(const std::string& stage, Fn&& fn) {
        try {
            fn();
        } catch (const ConfigError& e) {
            throw ConfigError("stage " + stage + ": " + e.what());
        } catch (const DataError& e) {
            throw DataError("stage " + stage + ": " + e.what());
        } catch (const NumericError& e) {
            throw NumericError("stage " + stage + ": " + e.what());
        }
    }

    void load_manifest_state() {
        std::ifstream in(path_of("run_manifest.json"), std::ios::binary);
        if (!in) return;
        nlohmann::json manifest;
        try {
            in >> manifest;
        } catch (const nlohmann::json::exception&) {
            return; // stale or partial manifest; start fresh
        }
        if (manifest.contains("counts") && manifest["counts"].is_object()) {
            for (const auto& [key, value] : manifest["counts"].items()) {
                counts_[key] = value;
            }
        }
        if (manifest.contains("artifacts") && manifest["artifacts"].is_array()) {
            for (const auto& value : manifest["artifacts"]) {
                if (value.is_string()) record_artifact(value.get<std::string>());
            }
        }
    }

    void record_artifact(const std::string& name) {
        for (const auto& existing : artifacts_) {
            if (existing == name) return;
        }
        artifacts_.push_back(name);
    }

    void atomic_write(const std::string& name, const std::string& content) {
        std::string final_path = path_of(name);
        std::string partial = final_path + ".partial";
        {
            std::ofstream out(partial, std::ios::binary);
            if (!out) throw DataError("cannot write " + partial);
            out << content;
            if (!out) throw DataError("write failed: " + partial);
        }
        fs::rename(partial, final_path);
        record_artifact(name);
    }

    void write_manifest() {
        nlohmann::ordered_json manifest;
        manifest["tool"] = "copd_pipeline";
        manifest["version"] = "1.0.0";
        manifest["seed"] = cfg_.seed;
        manifest["mode"] = cfg_.paper_faithful ? "paper_faithful" : "leakage_safe";
        auto config = nlohmann::ordered_json::object();
        for (const auto& [key, value] : config_entries(cfg_)) {
            config[key] = value;
        }
        manifest["config"] = config;
        manifest["counts"] = canonical_counts();
        manifest["artifacts"] = artifacts_;
        atomic_write("run_manifest.json", manifest.dump(2) + "\n");
    }

    nlohmann::ordered_json canonical_counts() const {
        static const std::vector<std::string> kOrder = {
            "samples",          "label_mild",      "label_severe",
            "label_unlabeled",  "propagated_mild", "propagated_severe",
            "ssl_iterations",   "ssl_converged",   "ssl_agreement",
            "knn_selected_k",
        };
        auto ordered = nlohmann::ordered_json::object();
        for (const auto& key : kOrder) {
            if (counts_.contains(key)) ordered[key] = counts_[key];
        }
        return ordered;
    }

    const std::vector<PatientSample>& ensure_samples() {
        if (!samples_) samples_ = read_samples_csv(path_of("samples.csv"));
        return *samples_;
    }

    const std::vector<Severity>& ensure_labels() {
        if (!labels_) labels_ = read_labels_csv(path_of("labels.csv"));
        return *labels_;
    }

    const std::vector<Severity>& ensure_propagated() {
        if (!propagated_) {
            CsvTable table = read_csv(path_of("propagated_labels.csv"));
            std::size_t idx = table.column("row_index");
            std::size_t label = table.column("label");
            std::vector<Severity> labels(table.rows.size(), Severity::unlabeled);
            for (const auto& row : table.rows) {
                auto r = parse_int_cell(row[idx], "propagated_labels.csv");
                if (r < 0 || static_cast<std::size_t>(r) >= labels.size()) {
                    throw DataError("row_index out of range in propagated_labels.csv");
                }
                labels[static_cast<std::size_t>(r)] = parse_severity(row[label]);
            }
            propagated_ = std::move(labels);
        }
        return *propagated_;
    }

    void publish_samples() {
        write_samples_csv(path_of("samples.csv.partial"), *samples_);
        fs::rename(path_of("samples.csv.partial"), path_of("samples.csv"));
        record_artifact("samples.csv");
        counts_["samples"] = samples_->size();
        write_manifest();
    }

    void stage_extract() {
        if (cfg_.raw_dir.empty()) {
            throw ConfigError("input.raw_dir not set");
        }
        RawTables tables = load_raw_tables(cfg_.raw_dir);
        auto admissions = select_copd_admissions(tables.diagnoses, cfg_.icd_prefixes);
        std::vector<std::string> wanted;
        for (const auto& [field, label] : cfg_.item_labels) wanted.push_back(label);
        auto by_label = resolve_item_ids(tables.d_items, wanted);
        std::map<std::string, long long> item_map;
        for (const auto& [field, label] : cfg_.item_labels) {
            item_map[field] = by_label.at(label);
        }
        PivotStats stats;
        samples_ = pivot_chartevents(tables.chartevents, admissions, item_map,
                                     tables.demographics, stats);
        publish_samples();
    }

    void stage_synth() {
        if (!cfg_.samples_path.empty()) {
            samples_ = read_samples_csv(cfg_.samples_path);
        } else {
            SyntheticSpec spec = cfg_.synth;
            spec.seed = cfg_.seed;
            samples_ = generate_synthetic_cohort(spec, cfg_.ranges);
        }
        publish_samples();
    }

    void stage_label() {
        LabeledDataset labeled = label_dataset(ensure_samples(), cfg_.ranges);
        labels_ = labeled.labels;
        write_labels_csv(path_of("labels.csv.partial"), *labels_);
        fs::rename(path_of("labels.csv.partial"), path_of("labels.csv"));
        record_artifact("labels.csv");
        counts_["label_mild"] = labeled.summary.n_mild;
        counts_["label_severe"] = labeled.summary.n_severe;
        counts_["label_unlabeled"] = labeled.summary.n_unlabeled;
        write_manifest();
    }

    Matrix preprocessed_features() {
        FeatureMatrix raw = encode_features(ensure_samples());
        ImputerModel imputer = fit_imputer(raw);
        FeatureMatrix imputed = apply_imputer(imputer, raw);
        ScalerModel scaler = fit_scaler(imputed);
        return apply_scaler(scaler, imputed).values;
    }

    void stage_propagate() {
        const std::vector<Severity>& seeds = ensure_labels();
        Matrix X = preprocessed_features();
        AffinityMatrix W = build_affinity(X, cfg_.ssl);
        PropagationResult propagation = label_propagation(W, seeds, cfg_.ssl);
        PropagationResult spreading = label_spreading(W, seeds, cfg_.ssl);

        std::size_t unlabeled = 0;
        std::size_t agree = 0;
        for (std::size_t i = 0; i < seeds.size(); ++i) {
            if (seeds[i] != Severity::unlabeled) continue;
            ++unlabeled;
            if (propagation.labels[i] == spreading.labels[i]) ++agree;
        }
        double agreement = unlabeled == 0
                               ? 1.0
                               : static_cast<double>(agree) /
                                     static_cast<double>(unlabeled);

        const PropagationResult& chosen =
            cfg_.ssl_method == "spreading" ? spreading : propagation;
        propagated_ = chosen.labels;

        std::vector<std::vector<std::string>> rows;
        rows.reserve(chosen.labels.size());
        for (std::size_t i = 0; i < chosen.labels.size(); ++i) {
            double confidence = std::max(chosen.distributions.at(i, 0),
                                         chosen.distributions.at(i, 1));
            rows.push_back({std::to_string(i), severity_code(chosen.labels[i]),
                            format_double(confidence)});
        }
        atomic_write("propagated_labels.csv",
                     csv_to_string({"row_index", "label", "confidence"}, rows));

        std::size_t mild = 0;
        for (Severity s : chosen.labels) {
            if (s == Severity::mild_to_moderate) ++mild;
        }
        counts_["propagated_mild"] = mild;
        counts_["propagated_severe"] = chosen.labels.size() - mild;
        counts_["ssl_iterations"] = chosen.iterations;
        counts_["ssl_converged"] = chosen.converged;
        counts_["ssl_agreement"] = agreement;
        write_manifest();
    }

    void stage_evaluate() {
        const std::vector<Severity>& labels = ensure_propagated();
        FeatureMatrix X = encode_features(ensure_samples());
        std::vector<int> y(labels.size());
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (labels[i] == Severity::unlabeled) {
                throw DataError("propagated labels contain unlabeled rows");
            }
            y[i] = labels[i] == Severity::severe ? 1 : 0;
        }

        for (ClassifierKind kind : cfg_.classifiers) {
            ClassifierSpec spec;
            spec.kind = kind;
            spec.rf = cfg_.rf;
            spec.knn = cfg_.knn;
            spec.svm = cfg_.svm;
            if (kind == ClassifierKind::knn && spec.knn.k == 0) {
                SelectKResult selected = select_k(preprocessed_features(), y,
                                                  cfg_.knn_candidates, cfg_.cv_folds,
                                                  cfg_.seed);
                spec.knn.k = selected.best_k;
                counts_["knn_selected_k"] = selected.best_k;
            }
            MetricsReport report = cross_validate(X, y, spec, cfg_.cv_folds, cfg_.seed,
                                                  cfg_.paper_faithful);
            std::string name = "metrics_" + report.classifier + ".json";
            atomic_write(name, metrics_to_json(report));
            for (std::size_t fold = 0; fold < report.roc.size(); ++fold) {
                atomic_write("roc_" + report.classifier + "_fold" +
                                 std::to_string(fold) + ".csv",
                             roc_to_csv(report.roc[fold]));
            }
        }
        write_manifest();
    }

    void stage_report() {
        // Refresh stats that are derivable from artifacts, then finalize
        // the manifest.
        if (fs::exists(path_of("samples.csv"))) {
            counts_["samples"] = ensure_samples().size();
        }
        if (fs::exists(path_of("labels.csv"))) {
            const auto& labels = ensure_labels();
            std::size_t mild = 0, severe = 0, unlabeled = 0;
            for (Severity s : labels) {
                if (s == Severity::mild_to_moderate) {
                    ++mild;
                } else if (s == Severity::severe) {
                    ++severe;
                } else {
                    ++unlabeled;
                }
            }
            counts_["label_mild"] = mild;
            counts_["label_severe"] = severe;
            counts_["label_unlabeled"] = unlabeled;
        }
        if (fs::exists(path_of("propagated_labels.csv"))) {
            const auto& labels = ensure_propagated();
            std::size_t mild = 0;
            for (Severity s : labels) {
                if (s == Severity::mild_to_moderate) ++mild;
            }
            counts_["propagated_mild"] = mild;
            counts_["propagated_severe"] = labels.size() - mild;
        }
        write_manifest();
    }
};

} // namespace

void run_stages(const PipelineConfig& cfg, const std::vector<std::string>& stages) {
    std::vector<std::string> expanded;
    for (const auto& stage : stages) {
        if (stage == "run") {
            expanded.push_back(cfg.raw_dir.empty() ? "synth" : "extract");
            expanded.push_back("label");
            expanded.push_back("propagate");
            expanded.push_back("evaluate");
            expanded.push_back("report");
        } else {
            expanded.push_back(stage);
        }
    }
    Pipeline pipeline(cfg);
    pipeline.run(expanded);
}

void run_pipeline(const PipelineConfig& cfg) { run_stages(cfg, {"run"}); }

} // namespace copd
