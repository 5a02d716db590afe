#pragma once

// Spectral relaxation of the k-way transition-graph mincut: embed states with
// the top-k eigenvectors of the transition matrix, normalize rows to unit
// length, and cluster the rows with K-means.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "smc/kmeans.hpp"
#include "smc/transition_graph.hpp"

namespace smc {

inline constexpr int kUnassigned = -1;

struct SpectralEmbedding {
    std::size_t n_states = 0;
    std::size_t k = 0;
    bool symmetrized = true;
    std::vector<double> eigenvalues;      // real parts, descending
    std::vector<double> eigenvalues_imag; // zero in symmetrized mode
    std::vector<StateId> states;          // visited states, one per embedded row
    std::vector<double> u;                // n_states x k, row-major; zero rows for unvisited
    std::vector<double> v;                // row-normalized u

    std::span<const double> u_row(StateId s) const { return {u.data() + s * k, k}; }
    std::span<const double> v_row(StateId s) const { return {v.data() + s * k, k}; }
};

struct ContextPartition {
    std::size_t k = 0;
    std::vector<int> assignment; // per state: context id or kUnassigned

    int context_of(StateId s) const { return assignment[s]; }
};

// The matrix the embedding decomposes: (T + T^T)/2 over visited states when
// symmetrizing, T itself otherwise. Dense, n_visited x n_visited, row-major,
// indexed by position in `states`.
std::vector<double> decomposed_matrix(const TransitionMatrix& t, std::span<const StateId> states,
                                      bool symmetrize);

// Throws TooFewStates when k < 2 or fewer than k states are visited, and
// DecompositionFailure if the eigensolver fails.
SpectralEmbedding embed(const TransitionMatrix& t, std::size_t k, bool symmetrize = true);

// K-means on the visited rows of V. Context ids are renumbered in order of
// first appearance by state id.
ContextPartition cluster(const SpectralEmbedding& emb, std::size_t k, std::uint64_t seed,
                         const KMeansOptions& options = {});

// Total probability mass on edges leaving each state's context.
double cut_value(const TransitionMatrix& t, const ContextPartition& p);

struct MincutResult {
    ContextPartition partition;
    double value = 0.0;
};

inline constexpr std::size_t kOracleMaxStates = 12;

// Exhaustive mincut over all partitions of the visited states into exactly k
// nonempty parts. Ties keep the lexicographically smallest assignment.
// Throws TooManyStatesForOracle above kOracleMaxStates visited states.
MincutResult brute_force_mincut(const TransitionMatrix& t, std::size_t k);

// Relabel contexts in order of first appearance by state id.
ContextPartition canonical(const ContextPartition& p);

} // namespace smc
