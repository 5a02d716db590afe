#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace smc {

struct SymmetricEigen {
    std::size_t n = 0;
    std::vector<double> values; // all eigenvalues, ascending
    // Eigenvectors for the `vector_count` largest eigenvalues, each stored
    // contiguously; vectors[i] pairs with values[n - vector_count + i].
    std::vector<std::vector<double>> vectors;
    std::size_t ql_iterations = 0;
};

// Dense symmetric eigendecomposition: Householder reduction to tridiagonal
// form, then implicit-shift QL. `a` is n x n row-major and must be symmetric.
// Throws DecompositionFailure when QL does not converge.
SymmetricEigen symmetric_eigen(std::span<const double> a, std::size_t n,
                               std::size_t vector_count = static_cast<std::size_t>(-1));

// Row-compressed real matrix.
struct SparseMatrix {
    std::size_t n = 0;
    std::vector<std::size_t> row_start{0};
    std::vector<std::size_t> col;
    std::vector<double> val;

    void multiply(std::span<const double> x, std::span<double> y) const;
};

struct GeneralEigenpairs {
    std::vector<std::complex<double>> values;               // by descending real part
    std::vector<std::vector<std::complex<double>>> vectors; // unit 2-norm
    std::vector<double> residuals;                           // ||A u - lambda u||
    std::size_t iterations = 0;
};

struct GeneralEigenOptions {
    double tolerance = 1e-10;        // relative residual
    std::size_t max_iterations = 20000;
    std::size_t dense_threshold = 400; // solve densely at or below this size
};

// The k eigenpairs of largest real part of a general real matrix. Small
// matrices are solved densely; larger ones by block subspace iteration on
// (A + I) / 2 with Rayleigh-Ritz extraction. Intended for matrices whose
// spectrum lies in the unit disk (row-stochastic). Throws
// DecompositionFailure when the iteration does not converge.
GeneralEigenpairs top_eigenpairs_by_real_part(const SparseMatrix& a, std::size_t k,
                                              const GeneralEigenOptions& options = {});

} // namespace smc
