#pragma once

#include "copd/affinity.hpp"
#include "copd/classifier_spec.hpp"
#include "copd/ingestion.hpp"
#include "copd/model.hpp"
#include "copd/synthetic.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace copd {

struct PipelineConfig {
    std::uint64_t seed = 42;
    bool paper_faithful = false;
    std::string output_dir = "out";
    std::string samples_path; // pre-built samples.csv
    std::string raw_dir;      // directory with the four raw tables
    SyntheticSpec synth;      // used when neither input is set
    NormalRanges ranges;
    AffinityConfig ssl;             // pipeline default kernel: knn
    std::string ssl_method = "propagation"; // or "spreading"
    std::vector<ClassifierKind> classifiers = {
        ClassifierKind::random_forest, ClassifierKind::knn, ClassifierKind::svm};
    RfParams rf;
    KnnParams knn;
    std::vector<std::size_t> knn_candidates = default_k_candidates();
    SvmParams svm;
    std::size_t cv_folds = 5;
    std::vector<std::string> icd_prefixes = kDefaultIcdPrefixes;
    std::vector<std::pair<std::string, std::string>> item_labels =
        default_item_labels();

    void validate() const;
};

PipelineConfig default_pipeline_config();

// Flat `key = value` text (# comments) or a run_manifest.json, whose
// config object replays the recorded run.
PipelineConfig load_config(const std::string& path);
PipelineConfig parse_config_text(const std::string& text);
void apply_config_entry(PipelineConfig& cfg, const std::string& key,
                        const std::string& value);

// Canonical flat echo of every config key; what run_manifest.json stores.
std::vector<std::pair<std::string, std::string>> config_entries(
    const PipelineConfig& cfg);

// Stage names: extract, synth, label, propagate, evaluate, report.
// "run" expands to the full sequence with the input-appropriate first
// stage. Artifacts land in cfg.output_dir; failures leave .partial files.
void run_stages(const PipelineConfig& cfg, const std::vector<std::string>& stages);
void run_pipeline(const PipelineConfig& cfg);

} // namespace copd
