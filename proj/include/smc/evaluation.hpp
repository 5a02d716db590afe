#pragma once

// Ground-truth-aware scoring of discovered contexts. None of these numbers
// feed back into learning; they quantify how well the contexts line up with
// the hidden environment states.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "smc/spectral_contexts.hpp"
#include "smc/transition_graph.hpp"

namespace smc {

// Fraction of occurrences whose context's majority latent label matches their
// own. Occurrences of unassigned states are skipped. Labels must be >= 0;
// a label of -1 (continuous environment) throws ContinuousLatentUnsupported.
double purity(const ContextPartition& partition, std::span<const StateId> states,
              std::span<const int> labels);

// Purity of an arbitrary per-occurrence clustering (e.g. a baseline that
// clusters raw observations directly).
double clustering_purity(std::span<const std::size_t> clusters, std::span<const int> labels);

// Occupancy-weighted within-context variance of the wall distance divided by
// its global variance. Small means contexts are bands of similar distance.
double band_spread(const ContextPartition& partition, std::span<const StateId> states,
                   std::span<const double> wall_distance);

// Per-context transition models. A transition a -> b is attributed to the
// context of its destination b (the context the agent is in after the move),
// or to context(a) when b is unassigned.
struct ContextModels {
    std::size_t k = 0;
    std::vector<TransitionMatrix> models;  // one per context, over the full state space
    std::vector<double> occupancy;         // fraction of transitions per context
    // weight[c][a]: fraction of transitions out of a attributed to c.
    std::vector<std::vector<double>> source_weight;
};

ContextModels fit_context_models(std::span<const StateId> seq, const ContextPartition& partition);

struct EntropyReport {
    double marginal_entropy = 0.0;  // bits
    double posterior_entropy = 0.0; // bits
    double entropy_reduction = 0.0; // bits
};

// Source-frequency-weighted Shannon entropy of the marginal rows versus the
// attributed per-context rows.
EntropyReport entropy_report(const TransitionMatrix& t, const ContextModels& models);

struct PredictionAccuracy {
    double marginal = 0.0;
    double contextual = 0.0;
    std::size_t evaluated = 0;
};

// Top-1 next-state prediction over a held-out sequence. Marginal: argmax of
// the T row. Contextual: argmax of the row under the context of the previous
// state (falls back to the marginal row when that row is empty). Ties go to
// the lowest state id. Positions holding std::nullopt (states unknown to the
// model) are skipped together with any transition touching them.
PredictionAccuracy prediction_accuracy(std::span<const std::optional<StateId>> holdout,
                                       const TransitionMatrix& t, const ContextModels& models,
                                       const ContextPartition& partition);

} // namespace smc
