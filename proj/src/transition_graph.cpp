#include "smc/transition_graph.hpp"

#include <algorithm>
#include <string>

#include "smc/error.hpp"

namespace smc {

std::vector<StateId> dedup(std::span<const StateId> seq) {
    std::vector<StateId> out;
    out.reserve(seq.size());
    for (StateId id : seq)
        if (out.empty() || out.back() != id) out.push_back(id);
    return out;
}

TransitionMatrix::TransitionMatrix(std::size_t n_states,
                                   const std::vector<std::map<StateId, std::uint64_t>>& counts)
    : rows_(n_states), totals_(n_states, 0) {
    for (std::size_t i = 0; i < n_states && i < counts.size(); ++i) {
        std::uint64_t total = 0;
        for (const auto& [to, c] : counts[i]) total += c;
        totals_[i] = total;
        if (total == 0) continue;
        rows_[i].reserve(counts[i].size());
        for (const auto& [to, c] : counts[i])
            if (c > 0)
                rows_[i].push_back({to, c, static_cast<double>(c) / static_cast<double>(total)});
    }
}

std::vector<StateId> TransitionMatrix::visited_states() const {
    std::vector<StateId> out;
    for (StateId i = 0; i < rows_.size(); ++i)
        if (totals_[i] > 0) out.push_back(i);
    return out;
}

std::uint64_t TransitionMatrix::total_count() const {
    std::uint64_t total = 0;
    for (auto t : totals_) total += t;
    return total;
}

namespace {
const TransitionEntry* find_entry(std::span<const TransitionEntry> row, StateId j) {
    auto it = std::lower_bound(row.begin(), row.end(), j,
                               [](const TransitionEntry& e, StateId x) { return e.to < x; });
    return (it != row.end() && it->to == j) ? &*it : nullptr;
}
} // namespace

double TransitionMatrix::prob(StateId i, StateId j) const {
    const auto* e = find_entry(rows_[i], j);
    return e ? e->prob : 0.0;
}

std::uint64_t TransitionMatrix::count(StateId i, StateId j) const {
    const auto* e = find_entry(rows_[i], j);
    return e ? e->count : 0;
}

std::vector<double> TransitionMatrix::dense_probs() const {
    const std::size_t n = rows_.size();
    std::vector<double> out(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (const auto& e : rows_[i]) out[i * n + e.to] = e.prob;
    return out;
}

TransitionMatrix build_matrix(std::span<const StateId> seq, std::size_t n_states) {
    std::vector<std::map<StateId, std::uint64_t>> counts(n_states);
    for (std::size_t t = 0; t < seq.size(); ++t) {
        if (seq[t] >= n_states)
            throw Error(ErrorKind::id_out_of_range, "state id " + std::to_string(seq[t]) +
                                                        " >= " + std::to_string(n_states));
        if (t == 0) continue;
        if (seq[t] == seq[t - 1])
            throw Error(ErrorKind::sequence_not_deduplicated,
                        "repeated state at position " + std::to_string(t));
        ++counts[seq[t - 1]][seq[t]];
    }
    return TransitionMatrix(n_states, counts);
}

std::optional<std::size_t> PairStateIndex::find(StateId from, StateId to) const {
    auto it = ids_.find({from, to});
    if (it == ids_.end()) return std::nullopt;
    return it->second;
}

std::size_t PairStateIndex::insert(StateId from, StateId to) {
    auto [it, inserted] = ids_.try_emplace({from, to}, pairs_.size());
    if (inserted) pairs_.emplace_back(from, to);
    return it->second;
}

LiftedGraph lift(std::span<const StateId> seq) {
    if (seq.size() < 3)
        throw Error(ErrorKind::sequence_too_short,
                    "lifting needs at least 3 states, got " + std::to_string(seq.size()));
    LiftedGraph g;
    g.sequence.reserve(seq.size() - 1);
    for (std::size_t t = 0; t + 1 < seq.size(); ++t) {
        if (seq[t] == seq[t + 1])
            throw Error(ErrorKind::sequence_not_deduplicated,
                        "repeated state at position " + std::to_string(t + 1));
        g.sequence.push_back(g.index.insert(seq[t], seq[t + 1]));
    }
    g.matrix = build_matrix(g.sequence, g.index.size());
    return g;
}

std::vector<std::optional<StateId>> lift_with(const PairStateIndex& index,
                                              std::span<const StateId> seq) {
    std::vector<std::optional<StateId>> out;
    if (seq.size() < 2) return out;
    out.reserve(seq.size() - 1);
    for (std::size_t t = 0; t + 1 < seq.size(); ++t) out.push_back(index.find(seq[t], seq[t + 1]));
    return out;
}

} // namespace smc
