#pragma once

// Data-parallel inner loops with a scalar reference implementation and
// AVX2 / NEON variants. The active table is chosen once at first use from the
// CPU's capabilities; SMC_SIMD=scalar in the environment forces the reference.
//
// nearest_center, axpy and rotate are bit-identical across variants (no FMA,
// same per-element operation order). dot differs only by summation order.

#include <cstddef>
#include <string_view>
#include <vector>

namespace smc::simd {

enum class Isa { scalar, avx2, neon };

struct Nearest {
    std::size_t index;
    double squared_distance;
};

struct Kernels {
    Isa isa;

    // Closest of n_centers points stored dimension-major
    // (centers[d * n_centers + j]); ties go to the lowest index.
    Nearest (*nearest_center)(const double* point, const double* centers, std::size_t n_centers,
                              std::size_t dim);

    double (*dot)(const double* x, const double* y, std::size_t n);

    // y += a * x
    void (*axpy)(double a, const double* x, double* y, std::size_t n);

    // Plane rotation: (x, y) <- (c*x - s*y, s*x + c*y), elementwise.
    void (*rotate)(double* x, double* y, std::size_t n, double c, double s);
};

std::string_view isa_name(Isa isa);

// Kernel table for a specific ISA, or nullptr when not compiled in or not
// supported by this CPU.
const Kernels* kernels_for(Isa isa);

// Every table usable on this machine, scalar first.
std::vector<const Kernels*> available_kernels();

// The table used by the library.
const Kernels& active();

namespace detail {
const Kernels* scalar_table();
const Kernels* avx2_table();
const Kernels* neon_table();
} // namespace detail

} // namespace smc::simd
