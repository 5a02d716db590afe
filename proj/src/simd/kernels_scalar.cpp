#include "smc/simd.hpp"

#include <limits>

namespace smc::simd {
namespace {

Nearest nearest_center_scalar(const double* point, const double* centers, std::size_t n_centers,
                              std::size_t dim) {
    Nearest best{0, std::numeric_limits<double>::infinity()};
    for (std::size_t j = 0; j < n_centers; ++j) {
        double acc = 0.0;
        for (std::size_t d = 0; d < dim; ++d) {
            const double diff = point[d] - centers[d * n_centers + j];
            acc = acc + diff * diff;
        }
        if (acc < best.squared_distance) best = {j, acc};
    }
    return best;
}

double dot_scalar(const double* x, const double* y, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
    return acc;
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] = y[i] + a * x[i];
}

void rotate_scalar(double* x, double* y, std::size_t n, double c, double s) {
    for (std::size_t i = 0; i < n; ++i) {
        const double xi = x[i];
        const double yi = y[i];
        x[i] = c * xi - s * yi;
        y[i] = s * xi + c * yi;
    }
}

constexpr Kernels kScalar{Isa::scalar, nearest_center_scalar, dot_scalar, axpy_scalar, rotate_scalar};

} // namespace

namespace detail {
const Kernels* scalar_table() { return &kScalar; }
} // namespace detail

} // namespace smc::simd
