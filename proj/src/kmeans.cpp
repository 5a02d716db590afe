#include "smc/kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "smc/error.hpp"
#include "smc/rng.hpp"
#include "smc/simd.hpp"

namespace smc {

std::vector<double> to_dimension_major(std::span<const double> centers, std::size_t k,
                                       std::size_t dim) {
    std::vector<double> out(k * dim);
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t d = 0; d < dim; ++d) out[d * k + j] = centers[j * dim + d];
    return out;
}

std::size_t count_distinct_rows(std::span<const double> points, std::size_t dim) {
    const std::size_t n = dim == 0 ? 0 : points.size() / dim;
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    auto row = [&](std::size_t i) { return points.subspan(i * dim, dim); };
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::lexicographical_compare(row(a).begin(), row(a).end(), row(b).begin(), row(b).end());
    });
    std::size_t distinct = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (i == 0 || !std::equal(row(order[i]).begin(), row(order[i]).end(), row(order[i - 1]).begin()))
            ++distinct;
    return distinct;
}

namespace {

struct Run {
    std::vector<double> centers; // row-major
    std::vector<std::size_t> labels;
    double inertia = 0.0;
};

double assign(std::span<const double> points, std::size_t n, std::size_t dim,
              const std::vector<double>& centers, std::size_t k, std::vector<std::size_t>& labels,
              std::vector<double>& dist) {
    const auto& kern = simd::active();
    const auto soa = to_dimension_major(centers, k, dim);
    double inertia = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto hit = kern.nearest_center(points.data() + i * dim, soa.data(), k, dim);
        labels[i] = hit.index;
        dist[i] = hit.squared_distance;
        inertia += hit.squared_distance;
    }
    return inertia;
}

std::vector<double> seed_plus_plus(std::span<const double> points, std::size_t n, std::size_t dim,
                                   std::size_t k, Rng& rng) {
    std::vector<double> centers;
    centers.reserve(k * dim);
    const std::size_t first = rng.uniform_index(n);
    centers.insert(centers.end(), points.begin() + first * dim, points.begin() + (first + 1) * dim);

    std::vector<double> d2(n, std::numeric_limits<double>::infinity());
    const auto& kern = simd::active();
    for (std::size_t c = 1; c < k; ++c) {
        const double* last = centers.data() + (c - 1) * dim;
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const auto hit = kern.nearest_center(points.data() + i * dim, last, 1, dim);
            d2[i] = std::min(d2[i], hit.squared_distance);
            total += d2[i];
        }
        std::size_t pick = n;
        if (total > 0.0) {
            const double target = rng.uniform() * total;
            double acc = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                acc += d2[i];
                if (acc > target && d2[i] > 0.0) {
                    pick = i;
                    break;
                }
            }
            // Rounding can leave target at the very top of the range.
            if (pick == n)
                for (std::size_t i = n; i-- > 0;)
                    if (d2[i] > 0.0) {
                        pick = i;
                        break;
                    }
        }
        if (pick == n) pick = rng.uniform_index(n); // unreachable with >= k distinct points
        centers.insert(centers.end(), points.begin() + pick * dim, points.begin() + (pick + 1) * dim);
    }
    return centers;
}

Run lloyd(std::span<const double> points, std::size_t n, std::size_t dim, std::size_t k, Rng& rng,
          const KMeansOptions& options) {
    Run run;
    run.centers = seed_plus_plus(points, n, dim, k, rng);
    run.labels.assign(n, 0);
    std::vector<double> dist(n, 0.0);
    std::vector<double> sums(k * dim);
    std::vector<std::size_t> counts(k);

    for (std::size_t iter = 0; iter < options.max_iterations; ++iter) {
        assign(points, n, dim, run.centers, k, run.labels, dist);

        std::fill(sums.begin(), sums.end(), 0.0);
        std::fill(counts.begin(), counts.end(), 0);
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t c = run.labels[i];
            ++counts[c];
            for (std::size_t d = 0; d < dim; ++d) sums[c * dim + d] += points[i * dim + d];
        }

        std::vector<double> next(k * dim);
        std::vector<bool> taken(n, false);
        for (std::size_t c = 0; c < k; ++c) {
            if (counts[c] > 0) {
                for (std::size_t d = 0; d < dim; ++d)
                    next[c * dim + d] = sums[c * dim + d] / static_cast<double>(counts[c]);
                continue;
            }
            // Empty cluster: move it onto the point farthest from its center.
            std::size_t far = 0;
            double far_d = -1.0;
            for (std::size_t i = 0; i < n; ++i)
                if (!taken[i] && dist[i] > far_d) {
                    far_d = dist[i];
                    far = i;
                }
            taken[far] = true;
            dist[far] = 0.0;
            for (std::size_t d = 0; d < dim; ++d) next[c * dim + d] = points[far * dim + d];
        }

        double movement = 0.0;
        for (std::size_t c = 0; c < k; ++c) {
            double m2 = 0.0;
            for (std::size_t d = 0; d < dim; ++d) {
                const double diff = next[c * dim + d] - run.centers[c * dim + d];
                m2 += diff * diff;
            }
            movement = std::max(movement, std::sqrt(m2));
        }
        run.centers = std::move(next);
        if (movement < options.tolerance) break;
    }
    run.inertia = assign(points, n, dim, run.centers, k, run.labels, dist);
    return run;
}

} // namespace

KMeansResult kmeans(std::span<const double> points, std::size_t dim, std::size_t k,
                    std::uint64_t seed, const KMeansOptions& options) {
    if (dim == 0 || points.size() < dim) throw Error(ErrorKind::empty_input, "no points to cluster");
    const std::size_t n = points.size() / dim;
    if (k == 0 || count_distinct_rows(points, dim) < k)
        throw Error(ErrorKind::fewer_distinct_points_than_r,
                    "need at least " + std::to_string(k) + " distinct points");

    KMeansResult result;
    result.k = k;
    result.dim = dim;
    const std::size_t restarts = std::max<std::size_t>(1, options.n_restarts);
    result.restart_inertias.reserve(restarts);
    Run best;
    for (std::size_t r = 0; r < restarts; ++r) {
        Rng rng(derive_seed(seed, r));
        Run run = lloyd(points, n, dim, k, rng, options);
        result.restart_inertias.push_back(run.inertia);
        if (r == 0 || run.inertia < best.inertia) {
            best = std::move(run);
            result.best_restart = r;
        }
    }
    result.centers = std::move(best.centers);
    result.labels = std::move(best.labels);
    result.inertia = best.inertia;
    return result;
}

} // namespace smc
