#include "smc/linalg.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "smc/error.hpp"
#include "smc/rng.hpp"
#include "smc/simd.hpp"

namespace smc {

void SparseMatrix::multiply(std::span<const double> x, std::span<double> y) const {
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t p = row_start[i]; p < row_start[i + 1]; ++p) acc += val[p] * x[col[p]];
        y[i] = acc;
    }
}

namespace {

using cd = std::complex<double>;

// Indices of eigenvalues sorted by descending real part, then descending
// imaginary part (so a conjugate pair lists +i first).
std::vector<std::size_t> order_by_real_part(const Eigen::VectorXcd& values) {
    std::vector<std::size_t> order(static_cast<std::size_t>(values.size()));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const cd x = values(static_cast<Eigen::Index>(a));
        const cd y = values(static_cast<Eigen::Index>(b));
        if (x.real() != y.real()) return x.real() > y.real();
        return x.imag() > y.imag();
    });
    return order;
}

double residual(const SparseMatrix& a, const std::vector<cd>& u, cd lambda) {
    const std::size_t n = a.n;
    std::vector<double> re(n), im(n), are(n), aim(n);
    for (std::size_t i = 0; i < n; ++i) {
        re[i] = u[i].real();
        im[i] = u[i].imag();
    }
    a.multiply(re, are);
    a.multiply(im, aim);
    double r2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) r2 += std::norm(cd(are[i], aim[i]) - lambda * u[i]);
    return std::sqrt(r2);
}

GeneralEigenpairs solve_dense(const SparseMatrix& a, std::size_t k) {
    const auto n = static_cast<Eigen::Index>(a.n);
    Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t i = 0; i < a.n; ++i)
        for (std::size_t p = a.row_start[i]; p < a.row_start[i + 1]; ++p)
            dense(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(a.col[p])) += a.val[p];

    Eigen::EigenSolver<Eigen::MatrixXd> solver(dense, true);
    if (solver.info() != Eigen::Success)
        throw Error(ErrorKind::decomposition_failure, "dense eigensolver did not converge");
    const Eigen::VectorXcd values = solver.eigenvalues();
    const Eigen::MatrixXcd vectors = solver.eigenvectors();
    const auto order = order_by_real_part(values);

    GeneralEigenpairs out;
    for (std::size_t r = 0; r < k; ++r) {
        const auto idx = static_cast<Eigen::Index>(order[r]);
        std::vector<cd> u(a.n);
        const double norm = vectors.col(idx).norm();
        for (std::size_t i = 0; i < a.n; ++i) u[i] = vectors(static_cast<Eigen::Index>(i), idx) / norm;
        out.residuals.push_back(residual(a, u, values(idx)));
        out.values.push_back(values(idx));
        out.vectors.push_back(std::move(u));
    }
    return out;
}

// Modified Gram-Schmidt, applied twice. Columns that collapse are replaced by
// fresh random directions.
void orthonormalize(std::vector<std::vector<double>>& cols, Rng& rng) {
    const auto& kern = simd::active();
    const std::size_t n = cols.empty() ? 0 : cols[0].size();
    for (std::size_t j = 0; j < cols.size(); ++j) {
        for (int attempt = 0; attempt < 4; ++attempt) {
            const double before = std::sqrt(kern.dot(cols[j].data(), cols[j].data(), n));
            for (int pass = 0; pass < 2; ++pass)
                for (std::size_t i = 0; i < j; ++i) {
                    const double proj = kern.dot(cols[i].data(), cols[j].data(), n);
                    kern.axpy(-proj, cols[i].data(), cols[j].data(), n);
                }
            const double norm = std::sqrt(kern.dot(cols[j].data(), cols[j].data(), n));
            if (norm > 1e-10 * std::max(before, 1e-300)) {
                for (double& x : cols[j]) x /= norm;
                break;
            }
            for (double& x : cols[j]) x = rng.normal();
        }
    }
}

} // namespace

GeneralEigenpairs top_eigenpairs_by_real_part(const SparseMatrix& a, std::size_t k,
                                              const GeneralEigenOptions& options) {
    const std::size_t n = a.n;
    if (k == 0 || k > n)
        throw Error(ErrorKind::too_few_states,
                    "need at least " + std::to_string(k) + " states, have " + std::to_string(n));
    if (n <= options.dense_threshold) return solve_dense(a, k);

    const auto& kern = simd::active();
    const std::size_t p = std::min(n, std::max<std::size_t>(2 * k + 8, 24));
    Rng rng(0x5EED5EEDULL);
    std::vector<std::vector<double>> q(p, std::vector<double>(n));
    for (auto& col : q)
        for (double& x : col) x = rng.normal();
    orthonormalize(q, rng);

    std::vector<std::vector<double>> w(p, std::vector<double>(n));
    constexpr std::size_t check_every = 5;
    for (std::size_t iter = 1; iter <= options.max_iterations; ++iter) {
        for (std::size_t j = 0; j < p; ++j) a.multiply(q[j], w[j]);

        if (iter % check_every == 0 || iter == options.max_iterations) {
            Eigen::MatrixXd h(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p));
            for (std::size_t i = 0; i < p; ++i)
                for (std::size_t j = 0; j < p; ++j)
                    h(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                        kern.dot(q[i].data(), w[j].data(), n);
            Eigen::EigenSolver<Eigen::MatrixXd> ritz(h, true);
            if (ritz.info() == Eigen::Success) {
                const Eigen::VectorXcd values = ritz.eigenvalues();
                const Eigen::MatrixXcd ys = ritz.eigenvectors();
                const auto order = order_by_real_part(values);
                GeneralEigenpairs candidate;
                candidate.iterations = iter;
                bool converged = true;
                for (std::size_t r = 0; r < k; ++r) {
                    const auto idx = static_cast<Eigen::Index>(order[r]);
                    const cd lambda = values(idx);
                    std::vector<cd> u(n, cd(0.0, 0.0)), au(n, cd(0.0, 0.0));
                    for (std::size_t j = 0; j < p; ++j) {
                        const cd y = ys(static_cast<Eigen::Index>(j), idx);
                        for (std::size_t i = 0; i < n; ++i) {
                            u[i] += y * q[j][i];
                            au[i] += y * w[j][i];
                        }
                    }
                    double unorm = 0.0, rnorm = 0.0;
                    for (std::size_t i = 0; i < n; ++i) {
                        unorm += std::norm(u[i]);
                        rnorm += std::norm(au[i] - lambda * u[i]);
                    }
                    unorm = std::sqrt(unorm);
                    rnorm = std::sqrt(rnorm);
                    if (rnorm > options.tolerance * unorm) converged = false;
                    for (auto& x : u) x /= unorm;
                    candidate.values.push_back(lambda);
                    candidate.vectors.push_back(std::move(u));
                    candidate.residuals.push_back(rnorm / unorm);
                }
                if (converged) return candidate;
            }
        }

        // q <- orth((A + I) q / 2)
        for (std::size_t j = 0; j < p; ++j)
            for (std::size_t i = 0; i < n; ++i) q[j][i] = 0.5 * (w[j][i] + q[j][i]);
        orthonormalize(q, rng);
    }
    throw Error(ErrorKind::decomposition_failure,
                "subspace iteration did not reach residual " + std::to_string(options.tolerance) +
                    " in " + std::to_string(options.max_iterations) + " iterations");
}

} // namespace smc
