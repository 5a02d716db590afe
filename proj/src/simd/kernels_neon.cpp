#include "smc/simd.hpp"

#if defined(__aarch64__)
#include <arm_neon.h>
#endif

#include <limits>

namespace smc::simd {

#if defined(__aarch64__)
namespace {

// NEON is baseline on AArch64. vmulq/vaddq (not vfmaq) keep the results
// bit-identical to the scalar reference.

Nearest nearest_center_neon(const double* point, const double* centers, std::size_t n_centers,
                            std::size_t dim) {
    const double inf = std::numeric_limits<double>::infinity();
    float64x2_t best_d = vdupq_n_f64(inf);
    float64x2_t best_i = vdupq_n_f64(-1.0);
    const double init_lanes[2] = {0.0, 1.0};
    float64x2_t lane_i = vld1q_f64(init_lanes);
    const float64x2_t two = vdupq_n_f64(2.0);

    std::size_t j = 0;
    for (; j + 2 <= n_centers; j += 2) {
        float64x2_t acc = vdupq_n_f64(0.0);
        for (std::size_t d = 0; d < dim; ++d) {
            const float64x2_t diff =
                vsubq_f64(vdupq_n_f64(point[d]), vld1q_f64(centers + d * n_centers + j));
            acc = vaddq_f64(acc, vmulq_f64(diff, diff));
        }
        const uint64x2_t better = vcltq_f64(acc, best_d);
        best_d = vbslq_f64(better, acc, best_d);
        best_i = vbslq_f64(better, lane_i, best_i);
        lane_i = vaddq_f64(lane_i, two);
    }

    double dist[2];
    double idx[2];
    vst1q_f64(dist, best_d);
    vst1q_f64(idx, best_i);

    Nearest best{0, inf};
    bool found = false;
    for (int lane = 0; lane < 2; ++lane) {
        if (idx[lane] < 0.0) continue;
        const auto lane_index = static_cast<std::size_t>(idx[lane]);
        if (!found || dist[lane] < best.squared_distance ||
            (dist[lane] == best.squared_distance && lane_index < best.index)) {
            best = {lane_index, dist[lane]};
            found = true;
        }
    }
    for (; j < n_centers; ++j) {
        double acc = 0.0;
        for (std::size_t d = 0; d < dim; ++d) {
            const double diff = point[d] - centers[d * n_centers + j];
            acc = acc + diff * diff;
        }
        if (!found || acc < best.squared_distance) {
            best = {j, acc};
            found = true;
        }
    }
    return best;
}

double dot_neon(const double* x, const double* y, std::size_t n) {
    float64x2_t acc0 = vdupq_n_f64(0.0);
    float64x2_t acc1 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc0 = vaddq_f64(acc0, vmulq_f64(vld1q_f64(x + i), vld1q_f64(y + i)));
        acc1 = vaddq_f64(acc1, vmulq_f64(vld1q_f64(x + i + 2), vld1q_f64(y + i + 2)));
    }
    acc0 = vaddq_f64(acc0, acc1);
    double acc = vgetq_lane_f64(acc0, 0) + vgetq_lane_f64(acc0, 1);
    for (; i < n; ++i) acc += x[i] * y[i];
    return acc;
}

void axpy_neon(double a, const double* x, double* y, std::size_t n) {
    const float64x2_t va = vdupq_n_f64(a);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
        vst1q_f64(y + i, vaddq_f64(vld1q_f64(y + i), vmulq_f64(va, vld1q_f64(x + i))));
    for (; i < n; ++i) y[i] = y[i] + a * x[i];
}

void rotate_neon(double* x, double* y, std::size_t n, double c, double s) {
    const float64x2_t vc = vdupq_n_f64(c);
    const float64x2_t vs = vdupq_n_f64(s);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t xi = vld1q_f64(x + i);
        const float64x2_t yi = vld1q_f64(y + i);
        vst1q_f64(x + i, vsubq_f64(vmulq_f64(vc, xi), vmulq_f64(vs, yi)));
        vst1q_f64(y + i, vaddq_f64(vmulq_f64(vs, xi), vmulq_f64(vc, yi)));
    }
    for (; i < n; ++i) {
        const double xi = x[i];
        const double yi = y[i];
        x[i] = c * xi - s * yi;
        y[i] = s * xi + c * yi;
    }
}

constexpr Kernels kNeon{Isa::neon, nearest_center_neon, dot_neon, axpy_neon, rotate_neon};

} // namespace

namespace detail {
const Kernels* neon_table() { return &kNeon; }
} // namespace detail

#else

namespace detail {
const Kernels* neon_table() { return nullptr; }
} // namespace detail

#endif

} // namespace smc::simd
