#include "smc/simd.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#define SMC_HAVE_AVX2_KERNELS 1
#include <immintrin.h>
#endif

#include <limits>

namespace smc::simd {

#if SMC_HAVE_AVX2_KERNELS
namespace {

// Only these functions are compiled for AVX2; the rest of the library stays
// baseline x86-64 so the binary runs everywhere. No FMA: results must match
// the scalar reference bit for bit.

__attribute__((target("avx2"))) Nearest nearest_center_avx2(const double* point,
                                                            const double* centers,
                                                            std::size_t n_centers,
                                                            std::size_t dim) {
    const double inf = std::numeric_limits<double>::infinity();
    __m256d best_d = _mm256_set1_pd(inf);
    __m256d best_i = _mm256_set1_pd(-1.0);
    __m256d lane_i = _mm256_set_pd(3.0, 2.0, 1.0, 0.0);
    const __m256d four = _mm256_set1_pd(4.0);

    std::size_t j = 0;
    for (; j + 4 <= n_centers; j += 4) {
        __m256d acc = _mm256_setzero_pd();
        for (std::size_t d = 0; d < dim; ++d) {
            const __m256d p = _mm256_set1_pd(point[d]);
            const __m256d c = _mm256_loadu_pd(centers + d * n_centers + j);
            const __m256d diff = _mm256_sub_pd(p, c);
            acc = _mm256_add_pd(acc, _mm256_mul_pd(diff, diff));
        }
        const __m256d better = _mm256_cmp_pd(acc, best_d, _CMP_LT_OQ);
        best_d = _mm256_blendv_pd(best_d, acc, better);
        best_i = _mm256_blendv_pd(best_i, lane_i, better);
        lane_i = _mm256_add_pd(lane_i, four);
    }

    alignas(32) double dist[4];
    alignas(32) double idx[4];
    _mm256_store_pd(dist, best_d);
    _mm256_store_pd(idx, best_i);

    Nearest best{0, inf};
    bool found = false;
    for (int lane = 0; lane < 4; ++lane) {
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

__attribute__((target("avx2"))) double dot_avx2(const double* x, const double* y, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
        acc1 = _mm256_add_pd(acc1,
                             _mm256_mul_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4)));
    }
    for (; i + 4 <= n; i += 4)
        acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
    acc0 = _mm256_add_pd(acc0, acc1);
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc0);
    double acc = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
    for (; i < n; ++i) acc += x[i] * y[i];
    return acc;
}

__attribute__((target("avx2"))) void axpy_avx2(double a, const double* x, double* y, std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vy = _mm256_loadu_pd(y + i);
        _mm256_storeu_pd(y + i, _mm256_add_pd(vy, _mm256_mul_pd(va, _mm256_loadu_pd(x + i))));
    }
    for (; i < n; ++i) y[i] = y[i] + a * x[i];
}

__attribute__((target("avx2"))) void rotate_avx2(double* x, double* y, std::size_t n, double c,
                                                 double s) {
    const __m256d vc = _mm256_set1_pd(c);
    const __m256d vs = _mm256_set1_pd(s);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d xi = _mm256_loadu_pd(x + i);
        const __m256d yi = _mm256_loadu_pd(y + i);
        _mm256_storeu_pd(x + i, _mm256_sub_pd(_mm256_mul_pd(vc, xi), _mm256_mul_pd(vs, yi)));
        _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_mul_pd(vs, xi), _mm256_mul_pd(vc, yi)));
    }
    for (; i < n; ++i) {
        const double xi = x[i];
        const double yi = y[i];
        x[i] = c * xi - s * yi;
        y[i] = s * xi + c * yi;
    }
}


constexpr Kernels kAvx2{Isa::avx2, nearest_center_avx2, dot_avx2, axpy_avx2, rotate_avx2};

} // namespace

namespace detail {
const Kernels* avx2_table() {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") ? &kAvx2 : nullptr;
}
} // namespace detail

#else

namespace detail {
const Kernels* avx2_table() { return nullptr; }
} // namespace detail

#endif

} // namespace smc::simd
