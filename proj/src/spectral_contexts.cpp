#include "smc/spectral_contexts.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "smc/error.hpp"
#include "smc/linalg.hpp"

namespace smc {

namespace {

std::vector<std::size_t> position_of(std::span<const StateId> states, std::size_t n) {
    std::vector<std::size_t> pos(n, static_cast<std::size_t>(-1));
    for (std::size_t i = 0; i < states.size(); ++i) pos[states[i]] = i;
    return pos;
}

// Flip so the largest-magnitude entry (lowest index on ties) is positive.
void canonicalize_sign(std::vector<double>& col) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < col.size(); ++i)
        if (std::abs(col[i]) > std::abs(col[best])) best = i;
    if (!col.empty() && col[best] < 0.0)
        for (double& x : col) x = -x;
}

// Real representative of a complex eigenvector: rotate the phase so the
// largest-modulus entry is real and positive, then keep the real part.
std::vector<double> real_representative(const std::vector<std::complex<double>>& u) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < u.size(); ++i)
        if (std::abs(u[i]) > std::abs(u[best])) best = i;
    const double mag = u.empty() ? 0.0 : std::abs(u[best]);
    const std::complex<double> phase = mag > 0.0 ? std::conj(u[best]) / mag : 1.0;
    std::vector<double> out(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) out[i] = (u[i] * phase).real();
    return out;
}

} // namespace

std::vector<double> decomposed_matrix(const TransitionMatrix& t, std::span<const StateId> states,
                                      bool symmetrize) {
    const std::size_t nv = states.size();
    const auto pos = position_of(states, t.size());
    std::vector<double> a(nv * nv, 0.0);
    for (std::size_t r = 0; r < nv; ++r)
        for (const auto& e : t.row(states[r])) {
            const std::size_t c = pos[e.to];
            if (c == static_cast<std::size_t>(-1)) continue; // edge into an unvisited state
            if (symmetrize) {
                a[r * nv + c] += 0.5 * e.prob;
                a[c * nv + r] += 0.5 * e.prob;
            } else {
                a[r * nv + c] += e.prob;
            }
        }
    return a;
}

SpectralEmbedding embed(const TransitionMatrix& t, std::size_t k, bool symmetrize) {
    const auto states = t.visited_states();
    if (k < 2) throw Error(ErrorKind::too_few_states, "k must be at least 2");
    if (states.size() < k)
        throw Error(ErrorKind::too_few_states, std::to_string(states.size()) +
                                                   " visited states, need at least " + std::to_string(k));
    const std::size_t nv = states.size();

    SpectralEmbedding emb;
    emb.n_states = t.size();
    emb.k = k;
    emb.symmetrized = symmetrize;
    emb.states = states;

    std::vector<std::vector<double>> columns; // over visited positions
    if (symmetrize) {
        const auto a = decomposed_matrix(t, states, true);
        const SymmetricEigen eig = symmetric_eigen(a, nv, k);
        for (std::size_t r = 0; r < k; ++r) {
            // vectors are ordered ascending; walk from the top.
            const std::size_t idx = k - 1 - r;
            emb.eigenvalues.push_back(eig.values[nv - 1 - r]);
            emb.eigenvalues_imag.push_back(0.0);
            columns.push_back(eig.vectors[idx]);
        }
    } else {
        const auto pos = position_of(states, t.size());
        SparseMatrix sparse;
        sparse.n = nv;
        for (std::size_t r = 0; r < nv; ++r) {
            for (const auto& e : t.row(states[r])) {
                const std::size_t c = pos[e.to];
                if (c == static_cast<std::size_t>(-1)) continue;
                sparse.col.push_back(c);
                sparse.val.push_back(e.prob);
            }
            sparse.row_start.push_back(sparse.col.size());
        }
        const GeneralEigenpairs eig = top_eigenpairs_by_real_part(sparse, k);
        for (std::size_t r = 0; r < k; ++r) {
            emb.eigenvalues.push_back(eig.values[r].real());
            emb.eigenvalues_imag.push_back(eig.values[r].imag());
            columns.push_back(real_representative(eig.vectors[r]));
        }
    }
    for (auto& col : columns) canonicalize_sign(col);

    emb.u.assign(t.size() * k, 0.0);
    emb.v.assign(t.size() * k, 0.0);
    for (std::size_t r = 0; r < nv; ++r) {
        const StateId s = states[r];
        double norm2 = 0.0;
        for (std::size_t c = 0; c < k; ++c) {
            emb.u[s * k + c] = columns[c][r];
            norm2 += columns[c][r] * columns[c][r];
        }
        const double norm = std::sqrt(norm2);
        for (std::size_t c = 0; c < k; ++c)
            emb.v[s * k + c] = norm > 0.0 ? emb.u[s * k + c] / norm : (c == 0 ? 1.0 : 0.0);
    }
    return emb;
}

ContextPartition canonical(const ContextPartition& p) {
    ContextPartition out;
    out.k = p.k;
    out.assignment.assign(p.assignment.size(), kUnassigned);
    std::vector<int> rename;
    for (std::size_t s = 0; s < p.assignment.size(); ++s) {
        const int c = p.assignment[s];
        if (c < 0) continue;
        if (static_cast<std::size_t>(c) >= rename.size()) rename.resize(c + 1, -1);
        if (rename[c] < 0) rename[c] = static_cast<int>(std::count_if(rename.begin(), rename.end(), [](int x) { return x >= 0; }));
        out.assignment[s] = rename[c];
    }
    return out;
}

ContextPartition cluster(const SpectralEmbedding& emb, std::size_t k, std::uint64_t seed,
                         const KMeansOptions& options) {
    // Feed rows in coordinate order, not state-id order, so that renumbering
    // the states cannot change which points seed K-means.
    std::vector<StateId> order = emb.states;
    std::stable_sort(order.begin(), order.end(), [&](StateId a, StateId b) {
        const auto ra = emb.v_row(a), rb = emb.v_row(b);
        return std::lexicographical_compare(ra.begin(), ra.end(), rb.begin(), rb.end());
    });
    std::vector<double> points;
    points.reserve(order.size() * emb.k);
    for (StateId s : order) {
        const auto row = emb.v_row(s);
        points.insert(points.end(), row.begin(), row.end());
    }
    const KMeansResult km = kmeans(points, emb.k, k, seed, options);

    ContextPartition p;
    p.k = k;
    p.assignment.assign(emb.n_states, kUnassigned);
    for (std::size_t r = 0; r < order.size(); ++r) p.assignment[order[r]] = static_cast<int>(km.labels[r]);
    return canonical(p);
}

double cut_value(const TransitionMatrix& t, const ContextPartition& p) {
    double total = 0.0;
    for (StateId i = 0; i < t.size(); ++i) {
        if (!t.visited(i)) continue;
        const int ci = i < p.assignment.size() ? p.assignment[i] : kUnassigned;
        if (ci == kUnassigned)
            throw Error(ErrorKind::unassigned_visited_state, "state " + std::to_string(i) + " has no context");
        for (const auto& e : t.row(i)) {
            const int cj = e.to < p.assignment.size() ? p.assignment[e.to] : kUnassigned;
            if (cj != ci) total += e.prob;
        }
    }
    return total;
}

MincutResult brute_force_mincut(const TransitionMatrix& t, std::size_t k) {
    const auto states = t.visited_states();
    const std::size_t n = states.size();
    if (n > kOracleMaxStates)
        throw Error(ErrorKind::too_many_states_for_oracle,
                    std::to_string(n) + " visited states exceed the limit of " + std::to_string(kOracleMaxStates));
    if (k == 0 || n < k)
        throw Error(ErrorKind::too_few_states, "cannot split " + std::to_string(n) + " states into " +
                                                   std::to_string(k) + " parts");

    // Restricted-growth strings in lexicographic order: rgs[0] = 0 and
    // rgs[i] <= 1 + max(rgs[0..i-1]); keep those using exactly k labels.
    std::vector<int> rgs(n, 0);
    std::vector<int> prefix_max(n, 0);
    ContextPartition trial;
    trial.k = k;
    trial.assignment.assign(t.size(), kUnassigned);

    MincutResult best;
    bool found = false;
    const int kk = static_cast<int>(k);
    while (true) {
        if (prefix_max[n - 1] == kk - 1) {
            for (std::size_t i = 0; i < n; ++i) trial.assignment[states[i]] = rgs[i];
            const double v = cut_value(t, trial);
            if (!found || v < best.value) {
                best.partition = trial;
                best.value = v;
                found = true;
            }
        }
        // Next string in lexicographic order.
        std::size_t i = n;
        while (i-- > 1) {
            const int limit = std::min(prefix_max[i - 1] + 1, kk - 1);
            if (rgs[i] < limit) break;
        }
        if (i == 0) break;
        ++rgs[i];
        prefix_max[i] = std::max(prefix_max[i - 1], rgs[i]);
        for (std::size_t j = i + 1; j < n; ++j) {
            rgs[j] = 0;
            prefix_max[j] = prefix_max[j - 1];
        }
    }
    return best;
}

} // namespace smc
