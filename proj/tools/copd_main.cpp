#include "copd/errors.hpp"
#include "copd/pipeline.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <string>
#include <vector>

namespace {

struct CliOptions {
    std::string config_path;
    std::string seed;
    std::string mode;
    std::string out;
};

copd::PipelineConfig make_config(const CliOptions& options) {
    copd::PipelineConfig cfg = options.config_path.empty()
                                   ? copd::default_pipeline_config()
                                   : copd::load_config(options.config_path);
    if (!options.seed.empty()) copd::apply_config_entry(cfg, "seed", options.seed);
    if (!options.mode.empty()) copd::apply_config_entry(cfg, "mode", options.mode);
    if (!options.out.empty()) copd::apply_config_entry(cfg, "out", options.out);
    return cfg;
}

void add_common(CLI::App* cmd, CliOptions& options) {
    cmd->add_option("--config", options.config_path,
                    "Config file (key = value text, or a run_manifest.json to replay)");
    cmd->add_option("--seed", options.seed, "Master seed (overrides config)");
    cmd->add_option("--mode", options.mode,
                    "leakage_safe or paper_faithful (overrides config)");
    cmd->add_option("--out", options.out, "Output directory (overrides config)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"COPD severity pipeline: labeling, graph label completion, "
                 "and cross-validated classification"};
    app.require_subcommand(1);

    CliOptions options;
    std::vector<std::pair<std::string, std::string>> commands = {
        {"extract", "Build samples.csv from raw MIMIC-shaped tables"},
        {"synth", "Generate (or ingest) the sample table"},
        {"label", "Apply the blood-gas rule labeler"},
        {"propagate", "Complete labels over the sample graph"},
        {"evaluate", "Cross-validate the configured classifiers"},
        {"report", "Finalize run_manifest.json"},
        {"run", "All stages in order"},
    };
    for (const auto& [name, description] : commands) {
        add_common(app.add_subcommand(name, description), options);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    std::string stage = app.get_subcommands().front()->get_name();
    try {
        copd::PipelineConfig cfg = make_config(options);
        copd::run_stages(cfg, {stage});
    } catch (const copd::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const copd::DataError& e) {
        std::fprintf(stderr, "data error: %s\n", e.what());
        return 3;
    } catch (const copd::NumericError& e) {
        std::fprintf(stderr, "numeric error: %s\n", e.what());
        return 4;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
