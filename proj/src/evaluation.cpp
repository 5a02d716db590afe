#include "smc/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "smc/error.hpp"

namespace smc {

namespace {

double majority_fraction(const std::vector<std::map<int, std::size_t>>& tallies) {
    std::size_t majority = 0, total = 0;
    for (const auto& tally : tallies) {
        std::size_t best = 0;
        for (const auto& [label, n] : tally) {
            best = std::max(best, n);
            total += n;
        }
        majority += best;
    }
    return total == 0 ? 0.0 : static_cast<double>(majority) / static_cast<double>(total);
}

double row_entropy_bits(std::span<const TransitionEntry> row) {
    double h = 0.0;
    for (const auto& e : row)
        if (e.prob > 0.0) h -= e.prob * std::log2(e.prob);
    return h;
}

std::optional<StateId> argmax(std::span<const TransitionEntry> row) {
    std::optional<StateId> best;
    std::uint64_t best_count = 0;
    for (const auto& e : row) // ascending by state id, so strict > keeps the lowest id
        if (!best || e.count > best_count) {
            best = e.to;
            best_count = e.count;
        }
    return best;
}

} // namespace

double purity(const ContextPartition& partition, std::span<const StateId> states,
              std::span<const int> labels) {
    std::vector<std::map<int, std::size_t>> tallies(partition.k);
    for (std::size_t i = 0; i < states.size(); ++i) {
        if (labels[i] < 0)
            throw Error(ErrorKind::continuous_latent_unsupported,
                        "purity needs discrete latent labels; use band_spread for continuous environments");
        const int c = states[i] < partition.assignment.size() ? partition.assignment[states[i]] : kUnassigned;
        if (c == kUnassigned) continue;
        ++tallies[static_cast<std::size_t>(c)][labels[i]];
    }
    return majority_fraction(tallies);
}

double clustering_purity(std::span<const std::size_t> clusters, std::span<const int> labels) {
    std::size_t k = 0;
    for (auto c : clusters) k = std::max(k, c + 1);
    std::vector<std::map<int, std::size_t>> tallies(k);
    for (std::size_t i = 0; i < clusters.size(); ++i) {
        if (labels[i] < 0)
            throw Error(ErrorKind::continuous_latent_unsupported, "purity needs discrete latent labels");
        ++tallies[clusters[i]][labels[i]];
    }
    return majority_fraction(tallies);
}

double band_spread(const ContextPartition& partition, std::span<const StateId> states,
                   std::span<const double> wall_distance) {
    std::vector<double> sum(partition.k, 0.0), sum2(partition.k, 0.0);
    std::vector<std::size_t> count(partition.k, 0);
    double gsum = 0.0, gsum2 = 0.0;
    std::size_t gcount = 0;
    // Shift by the first value to keep the one-pass variance well conditioned.
    const double shift = wall_distance.empty() ? 0.0 : wall_distance[0];
    for (std::size_t i = 0; i < states.size(); ++i) {
        const int c = states[i] < partition.assignment.size() ? partition.assignment[states[i]] : kUnassigned;
        if (c == kUnassigned) continue;
        const double x = wall_distance[i] - shift;
        sum[c] += x;
        sum2[c] += x * x;
        ++count[c];
        gsum += x;
        gsum2 += x * x;
        ++gcount;
    }
    if (gcount == 0) return 0.0;
    const double gmean = gsum / static_cast<double>(gcount);
    const double gvar = gsum2 / static_cast<double>(gcount) - gmean * gmean;
    if (gvar <= 0.0) return 0.0;
    double within = 0.0;
    for (std::size_t c = 0; c < partition.k; ++c) {
        if (count[c] == 0) continue;
        const double mean = sum[c] / static_cast<double>(count[c]);
        within += sum2[c] - static_cast<double>(count[c]) * mean * mean;
    }
    return (within / static_cast<double>(gcount)) / gvar;
}

ContextModels fit_context_models(std::span<const StateId> seq, const ContextPartition& partition) {
    const std::size_t n = partition.assignment.size();
    const std::size_t k = partition.k;
    std::vector<std::vector<std::map<StateId, std::uint64_t>>> counts(
        k, std::vector<std::map<StateId, std::uint64_t>>(n));
    std::vector<std::uint64_t> per_context(k, 0);
    std::uint64_t total = 0;

    auto context = [&](StateId s) { return s < n ? partition.assignment[s] : kUnassigned; };
    for (std::size_t t = 0; t + 1 < seq.size(); ++t) {
        const StateId a = seq[t];
        const StateId b = seq[t + 1];
        const int ca = context(a);
        if (ca == kUnassigned)
            throw Error(ErrorKind::unassigned_visited_state, "state " + std::to_string(a) + " has no context");
        const int cb = context(b);
        const auto c = static_cast<std::size_t>(cb == kUnassigned ? ca : cb);
        ++counts[c][a][b];
        ++per_context[c];
        ++total;
    }

    ContextModels out;
    out.k = k;
    out.models.reserve(k);
    out.occupancy.assign(k, 0.0);
    out.source_weight.assign(k, std::vector<double>(n, 0.0));
    std::vector<std::uint64_t> source_total(n, 0);
    for (std::size_t c = 0; c < k; ++c) {
        out.models.emplace_back(n, counts[c]);
        out.occupancy[c] = total == 0 ? 0.0 : static_cast<double>(per_context[c]) / static_cast<double>(total);
        for (StateId a = 0; a < n; ++a) source_total[a] += out.models[c].row_total(a);
    }
    for (std::size_t c = 0; c < k; ++c)
        for (StateId a = 0; a < n; ++a)
            if (source_total[a] > 0)
                out.source_weight[c][a] = static_cast<double>(out.models[c].row_total(a)) /
                                          static_cast<double>(source_total[a]);
    return out;
}

EntropyReport entropy_report(const TransitionMatrix& t, const ContextModels& models) {
    EntropyReport r;
    const double total = static_cast<double>(t.total_count());
    if (total == 0.0) return r;
    for (StateId a = 0; a < t.size(); ++a)
        if (t.visited(a))
            r.marginal_entropy += static_cast<double>(t.row_total(a)) / total * row_entropy_bits(t.row(a));
    for (const auto& model : models.models)
        for (StateId a = 0; a < model.size(); ++a)
            if (model.visited(a))
                r.posterior_entropy += static_cast<double>(model.row_total(a)) / total * row_entropy_bits(model.row(a));
    r.entropy_reduction = r.marginal_entropy - r.posterior_entropy;
    return r;
}

PredictionAccuracy prediction_accuracy(std::span<const std::optional<StateId>> holdout,
                                       const TransitionMatrix& t, const ContextModels& models,
                                       const ContextPartition& partition) {
    PredictionAccuracy acc;
    std::size_t marginal_hits = 0, contextual_hits = 0;
    for (std::size_t i = 1; i + 1 < holdout.size(); ++i) {
        const auto& prev = holdout[i - 1];
        const auto& cur = holdout[i];
        const auto& next = holdout[i + 1];
        if (!prev || !cur || !next || *cur >= t.size()) continue;
        ++acc.evaluated;

        const auto marginal = argmax(t.row(*cur));
        if (marginal && *marginal == *next) ++marginal_hits;

        std::optional<StateId> contextual;
        const int c = *prev < partition.assignment.size() ? partition.assignment[*prev] : kUnassigned;
        if (c != kUnassigned) contextual = argmax(models.models[static_cast<std::size_t>(c)].row(*cur));
        if (!contextual) contextual = marginal;
        if (contextual && *contextual == *next) ++contextual_hits;
    }
    if (acc.evaluated > 0) {
        acc.marginal = static_cast<double>(marginal_hits) / static_cast<double>(acc.evaluated);
        acc.contextual = static_cast<double>(contextual_hits) / static_cast<double>(acc.evaluated);
    }
    return acc;
}

} // namespace smc
