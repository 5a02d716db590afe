#pragma once

// Lloyd's K-means with k-means++ seeding and best-of-N restarts, shared by the
// sensorimotor discretizer and the spectral clustering step.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace smc {

struct KMeansOptions {
    std::size_t n_restarts = 10;
    std::size_t max_iterations = 300;
    double tolerance = 1e-8; // stop when no center moves farther than this
};

struct KMeansResult {
    std::size_t k = 0;
    std::size_t dim = 0;
    std::vector<double> centers;    // k x dim, row-major
    std::vector<std::size_t> labels; // per point
    double inertia = 0.0;
    std::size_t best_restart = 0;
    std::vector<double> restart_inertias;
};

// Points are n x dim, row-major. Throws EmptyInput for no points and
// FewerDistinctPointsThanR when fewer than k distinct points exist.
KMeansResult kmeans(std::span<const double> points, std::size_t dim, std::size_t k,
                    std::uint64_t seed, const KMeansOptions& options = {});

// Centers from row-major (k x dim) to dimension-major (dim x k), the layout the
// nearest-center kernel expects.
std::vector<double> to_dimension_major(std::span<const double> centers, std::size_t k,
                                       std::size_t dim);

std::size_t count_distinct_rows(std::span<const double> points, std::size_t dim);

} // namespace smc
