#include <string>

#include "smc/error.hpp"
#include "smc/experiment.hpp"
#include "smc/rng.hpp"

namespace smc {

namespace {

// Substreams of the master seed, one per stochastic stage.
enum Stream : std::uint64_t {
    explore_stream = 1,
    transition_stream = 2,
    holdout_stream = 3,
    discretizer_stream = 4,
    spectral_stream = 5,
    baseline_stream = 6,
};

std::string joined(const std::vector<std::string>& v) {
    std::string out;
    for (const auto& s : v) out += (out.empty() ? "" : "; ") + s;
    return out;
}

// Ground truth per element of dedup(seq): the latent at the first sample of
// each run of equal prototype ids.
std::vector<LatentState> run_latents(std::span<const StateId> seq, const SampleLog& log) {
    std::vector<LatentState> out;
    for (std::size_t t = 0; t < seq.size(); ++t)
        if (t == 0 || seq[t] != seq[t - 1]) out.push_back(log.records()[t].latent);
    return out;
}

} // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
    if (const auto v = violations(config); !v.empty()) throw Error(ErrorKind::invalid_config, joined(v));

    ExperimentResult res;
    res.config = config;
    const bool continuous = config.world.dynamics.mode == LatentMode::continuous_translate;

    const SampleLog explore = collect(config.n_explore, config.world, config.policy,
                                      derive_seed(config.seed, explore_stream));
    res.prototypes = fit_prototypes(explore.observations(), config.r, derive_seed(config.seed, discretizer_stream));

    res.transition_log = collect(config.n_transition, config.world, config.policy,
                                 derive_seed(config.seed, transition_stream));
    const auto raw = res.prototypes.classify(res.transition_log.observations());
    res.prototype_sequence = dedup(raw);
    const auto latents = run_latents(raw, res.transition_log);

    // Per-occurrence ground truth along state_sequence.
    std::vector<int> labels;
    std::vector<double> distances;
    std::vector<StateId> clean_states; // lifted: pairs that do not straddle a latent change
    std::vector<int> clean_labels;

    std::size_t n_states = config.r;
    if (config.lifted) {
        LiftedGraph g = lift(res.prototype_sequence);
        res.pairs = std::move(g.index);
        res.state_sequence = std::move(g.sequence);
        res.matrix = std::move(g.matrix);
        n_states = res.pairs->size();
        for (std::size_t t = 0; t + 1 < latents.size(); ++t) {
            const auto& dst = latents[t + 1];
            labels.push_back(dst.id);
            distances.push_back(dst.distance);
            if (latents[t].id == dst.id) {
                clean_states.push_back(res.state_sequence[t]);
                clean_labels.push_back(dst.id);
            }
        }
    } else {
        res.state_sequence = res.prototype_sequence;
        res.matrix = build_matrix(res.state_sequence, n_states);
        for (const auto& l : latents) {
            labels.push_back(l.id);
            distances.push_back(l.distance);
        }
    }

    res.embedding = embed(res.matrix, config.k, config.symmetrize);
    res.partition = cluster(res.embedding, config.k, derive_seed(config.seed, spectral_stream));
    res.models = fit_context_models(res.state_sequence, res.partition);

    auto& rep = res.report;
    rep.n_states = n_states;
    rep.n_visited = res.embedding.states.size();
    rep.entropy = entropy_report(res.matrix, res.models);

    if (continuous) {
        rep.band_spread = band_spread(res.partition, res.state_sequence, distances);
    } else if (config.lifted) {
        rep.purity = purity(res.partition, clean_states, clean_labels);
        rep.purity_all_occurrences = purity(res.partition, res.state_sequence, labels);
    } else {
        rep.purity = purity(res.partition, res.state_sequence, labels);
    }

    if (!continuous) {
        // Context count matched, but no temporal information: cluster the raw
        // normalized observations of the transition phase directly.
        const auto obs = res.transition_log.observations();
        const PrototypeSet direct = fit_prototypes(obs, config.k, derive_seed(config.seed, baseline_stream));
        const auto clusters = direct.classify(obs);
        std::vector<int> sample_labels;
        sample_labels.reserve(obs.size());
        for (const auto& rec : res.transition_log.records()) sample_labels.push_back(rec.latent.id);
        rep.baseline_kmeans_purity = clustering_purity(clusters, sample_labels);
    }

    if (config.n_holdout >= 3) {
        const SampleLog holdout = collect(config.n_holdout, config.world, config.policy,
                                          derive_seed(config.seed, holdout_stream));
        const auto seq = dedup(res.prototypes.classify(holdout.observations()));
        std::vector<std::optional<StateId>> mapped;
        if (config.lifted) {
            mapped = lift_with(*res.pairs, seq);
        } else {
            mapped.assign(seq.begin(), seq.end());
        }
        rep.prediction = prediction_accuracy(mapped, res.matrix, res.models, res.partition);
    }
    return res;
}

} // namespace smc
