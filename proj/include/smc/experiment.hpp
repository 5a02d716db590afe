#pragma once

// Experiment configuration, the end-to-end pipeline and its artifacts.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "smc/discretizer.hpp"
#include "smc/evaluation.hpp"
#include "smc/exploration.hpp"
#include "smc/spectral_contexts.hpp"
#include "smc/transition_graph.hpp"
#include "smc/wallworld.hpp"

namespace smc {

struct ExperimentConfig {
    std::string experiment = "sim1";
    WorldConfig world;
    PolicyConfig policy;
    std::size_t r = 100;
    std::size_t k = 5;
    std::size_t n_explore = 20000;
    std::size_t n_transition = 50000;
    std::size_t n_holdout = 20000;
    bool lifted = false;
    bool symmetrize = true;
    std::uint64_t seed = 42;
    std::string out_dir = "out";
};

// sim1: five wall positions, k = 5. sim2: continuously moving wall, k = 10.
// sim3: 3 distances x 2 orientations, k = 6, lifted to transition states and
// decomposing T directly. custom: sim1 geometry, no preset semantics.
// Throws InvalidConfig for unknown names.
ExperimentConfig preset(std::string_view experiment);

// Every violated invariant, as human-readable messages; empty when runnable.
std::vector<std::string> violations(const ExperimentConfig& config);

// Flat JSON (one key per field). out_dir is not part of the echo.
nlohmann::json to_json(const ExperimentConfig& config);

// Apply the keys present in `doc` on top of `base`. Throws ParseError naming
// the offending field for unknown keys or wrong types.
ExperimentConfig apply_json(const nlohmann::json& doc, ExperimentConfig base);

// Parse JSON text into an object. Throws ParseError with the line number.
nlohmann::json parse_config_document(std::string_view text);
nlohmann::json read_config_document(const std::filesystem::path& path);

// Parse config text: the preset named by its "experiment" key (default sim1)
// overridden by the remaining keys. Throws ParseError with line information
// for malformed JSON.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);

// ParseError on unreadable/malformed files; otherwise the violation list.
std::vector<std::string> validate_config_file(const std::filesystem::path& path);

struct ScoreReport {
    std::optional<double> purity;                 // discrete environments
    std::optional<double> purity_all_occurrences; // lifted runs: including transitions across a change
    std::optional<double> band_spread;            // continuous environment
    std::optional<double> baseline_kmeans_purity; // K-means on raw observations, k clusters
    EntropyReport entropy;
    PredictionAccuracy prediction;
    std::size_t n_states = 0;
    std::size_t n_visited = 0;
};

struct ExperimentResult {
    ExperimentConfig config;
    SampleLog transition_log;
    PrototypeSet prototypes{{}, {}};
    std::vector<StateId> prototype_sequence; // deduplicated
    std::optional<PairStateIndex> pairs;     // lifted runs
    std::vector<StateId> state_sequence;     // sequence over the clustered states
    TransitionMatrix matrix;
    SpectralEmbedding embedding;
    ContextPartition partition;
    ContextModels models;
    ScoreReport report;
};

// collect -> fit/classify -> dedup -> build (or lift) -> embed -> cluster ->
// evaluate. Throws smc::Error on any module failure.
ExperimentResult run_experiment(const ExperimentConfig& config);

nlohmann::json report_json(const ExperimentResult& result);

// Writes samples.csv, prototypes.csv, transitions.csv, [pair_states.csv],
// embedding.csv, contexts.csv, report.json and config.json into `dir`.
// Files already written are removed if a later write fails.
void write_artifacts(const ExperimentResult& result, const std::filesystem::path& dir);

// Names of the files write_artifacts produces for this result.
std::vector<std::string> artifact_names(const ExperimentResult& result);

// Fixed 9-significant-digit float formatting used by every CSV artifact.
std::string format_float(double x);

} // namespace smc
