#pragma once

// Empirical transition-probability graph over discrete states, and its lift to
// ordered-pair ("transition") states.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace smc {

using StateId = std::size_t;

// Collapse runs of repeated ids.
std::vector<StateId> dedup(std::span<const StateId> seq);

struct TransitionEntry {
    StateId to;
    std::uint64_t count;
    double prob;
};

// Sparse row-stochastic matrix. Rows with no outgoing observation are empty
// (all-zero), never uniform.
class TransitionMatrix {
public:
    TransitionMatrix() = default;

    // counts[from] maps successor -> count.
    TransitionMatrix(std::size_t n_states, const std::vector<std::map<StateId, std::uint64_t>>& counts);

    std::size_t size() const { return rows_.size(); }
    std::span<const TransitionEntry> row(StateId i) const { return rows_[i]; }
    std::uint64_t row_total(StateId i) const { return totals_[i]; }
    bool visited(StateId i) const { return totals_[i] > 0; }
    std::vector<StateId> visited_states() const;
    std::uint64_t total_count() const;

    double prob(StateId i, StateId j) const;
    std::uint64_t count(StateId i, StateId j) const;

    // Dense row-major copy of the probabilities (n x n).
    std::vector<double> dense_probs() const;

private:
    std::vector<std::vector<TransitionEntry>> rows_;
    std::vector<std::uint64_t> totals_;
};

// Counts consecutive pairs of a deduplicated sequence. Throws IdOutOfRange
// for ids >= n_states and SequenceNotDeduplicated for repeated neighbors.
TransitionMatrix build_matrix(std::span<const StateId> seq, std::size_t n_states);

// Dense ids for observed ordered pairs (a, b), a != b, in first-seen order.
class PairStateIndex {
public:
    std::size_t size() const { return pairs_.size(); }
    const std::pair<StateId, StateId>& pair(std::size_t id) const { return pairs_[id]; }
    const std::vector<std::pair<StateId, StateId>>& pairs() const { return pairs_; }
    std::optional<std::size_t> find(StateId from, StateId to) const;
    std::size_t insert(StateId from, StateId to);

private:
    std::vector<std::pair<StateId, StateId>> pairs_;
    std::map<std::pair<StateId, StateId>, std::size_t> ids_;
};

struct LiftedGraph {
    PairStateIndex index;
    std::vector<StateId> sequence; // pair-state id of (seq[t], seq[t+1])
    TransitionMatrix matrix;
};

// Throws SequenceTooShort for fewer than 3 elements.
LiftedGraph lift(std::span<const StateId> seq);

// Map a deduplicated sequence onto an existing pair index; unseen pairs
// become std::nullopt.
std::vector<std::optional<StateId>> lift_with(const PairStateIndex& index,
                                              std::span<const StateId> seq);

} // namespace smc
