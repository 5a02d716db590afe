#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>

#include <Eigen/Eigenvalues>

#include "oracles.hpp"
#include "smc/linalg.hpp"
#include "smc/rng.hpp"

using namespace smc;

namespace {

std::vector<double> random_symmetric(std::size_t n, Rng& rng) {
    std::vector<double> a(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) a[i * n + j] = a[j * n + i] = rng.normal();
    return a;
}

double residual(const std::vector<double>& a, std::size_t n, const std::vector<double>& v, double lambda) {
    double r2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double s = -lambda * v[i];
        for (std::size_t j = 0; j < n; ++j) s += a[i * n + j] * v[j];
        r2 += s * s;
    }
    return std::sqrt(r2);
}

// Sparse random row-stochastic matrix with a few strongly coupled groups.
SparseMatrix random_chain(std::size_t n, std::size_t out_degree, Rng& rng) {
    SparseMatrix m;
    m.n = n;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::pair<std::size_t, double>> row;
        double sum = 0.0;
        for (std::size_t e = 0; e < out_degree; ++e) {
            const std::size_t group = i % 4;
            std::size_t j = rng.uniform() < 0.9 ? (rng.uniform_index(n / 4) * 4 + group) % n : rng.uniform_index(n);
            const double w = 0.1 + rng.uniform();
            row.emplace_back(j, w);
            sum += w;
        }
        std::sort(row.begin(), row.end());
        for (auto& [j, w] : row) {
            m.col.push_back(j);
            m.val.push_back(w / sum);
        }
        m.row_start.push_back(m.col.size());
    }
    return m;
}

Eigen::MatrixXd dense(const SparseMatrix& m) {
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m.n), static_cast<Eigen::Index>(m.n));
    for (std::size_t i = 0; i < m.n; ++i)
        for (std::size_t p = m.row_start[i]; p < m.row_start[i + 1]; ++p)
            d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(m.col[p])) += m.val[p];
    return d;
}

void check_against_oracle(const SparseMatrix& m, std::size_t k, const GeneralEigenOptions& opts) {
    const auto got = top_eigenpairs_by_real_part(m, k, opts);
    REQUIRE(got.values.size() == k);

    const Eigen::MatrixXd d = dense(m);
    Eigen::EigenSolver<Eigen::MatrixXd> es(d, false);
    std::vector<std::complex<double>> all(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    std::sort(all.begin(), all.end(), [](auto a, auto b) { return a.real() > b.real(); });
    for (std::size_t i = 0; i < k; ++i) {
        CHECK(got.values[i].real() == doctest::Approx(all[i].real()).epsilon(1e-8));
        CHECK(std::abs(got.values[i].imag()) == doctest::Approx(std::abs(all[i].imag())).epsilon(1e-8));
        // Residual computed here, not trusted from the solver.
        const auto& u = got.vectors[i];
        double r2 = 0.0, u2 = 0.0;
        for (std::size_t row = 0; row < m.n; ++row) {
            std::complex<double> s = -got.values[i] * u[row];
            for (std::size_t p = m.row_start[row]; p < m.row_start[row + 1]; ++p) s += m.val[p] * u[m.col[p]];
            r2 += std::norm(s);
            u2 += std::norm(u[row]);
        }
        CHECK(std::sqrt(r2) <= 1e-6 * std::sqrt(u2));
        CHECK(got.residuals[i] <= 1e-6);
    }
}

} // namespace

TEST_CASE("symmetric eigenvalues match a Jacobi reference") {
    Rng rng(1);
    for (std::size_t n : {1u, 2u, 3u, 8u, 30u, 90u}) {
        INFO("n = " << n);
        const auto a = random_symmetric(n, rng);
        const auto ours = symmetric_eigen(a, n);
        const auto ref = oracle::jacobi(a, n);
        REQUIRE(ours.values.size() == n);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(ours.values[n - 1 - i] == doctest::Approx(ref.values[i]).epsilon(1e-10).scale(1.0));
        // Full vector set: vectors[i] pairs with values[i] here.
        REQUIRE(ours.vectors.size() == n);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(residual(a, n, ours.vectors[i], ours.values[i]) <= 1e-10 * static_cast<double>(n));
            const auto& r = ref.vectors[n - 1 - i];
            double dot = 0.0;
            for (std::size_t j = 0; j < n; ++j) dot += r[j] * ours.vectors[i][j];
            CHECK(std::abs(std::abs(dot) - 1.0) <= 1e-8);
        }
    }
}

TEST_CASE("selected vectors are the top ones and orthonormal under degeneracy") {
    // Two identical blocks: every eigenvalue has multiplicity two.
    const std::size_t n = 6;
    std::vector<double> a(n * n, 0.0);
    const double block[3][3] = {{0.5, 0.5, 0.0}, {0.5, 0.0, 0.5}, {0.0, 0.5, 0.5}};
    for (std::size_t b = 0; b < 2; ++b)
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) a[(3 * b + i) * n + 3 * b + j] = block[i][j];
    const auto eig = symmetric_eigen(a, n, 2);
    REQUIRE(eig.vectors.size() == 2);
    CHECK(eig.values[n - 1] == doctest::Approx(1.0));
    CHECK(eig.values[n - 2] == doctest::Approx(1.0));
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(residual(a, n, eig.vectors[i], eig.values[n - 2 + i]) <= 1e-12);
        for (std::size_t j = 0; j < 2; ++j) {
            double dot = 0.0;
            for (std::size_t x = 0; x < n; ++x) dot += eig.vectors[i][x] * eig.vectors[j][x];
            CHECK(dot == doctest::Approx(i == j ? 1.0 : 0.0).scale(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("general eigenpairs by real part, dense path") {
    Rng rng(2);
    for (std::size_t n : {12u, 60u, 200u}) {
        INFO("n = " << n);
        check_against_oracle(random_chain(n, 5, rng), 6, {});
    }
}

TEST_CASE("general eigenpairs by real part, subspace iteration path") {
    Rng rng(3);
    GeneralEigenOptions opts;
    opts.dense_threshold = 0;
    for (std::size_t n : {80u, 500u}) {
        INFO("n = " << n);
        check_against_oracle(random_chain(n, 6, rng), 6, opts);
    }
}

TEST_CASE("sparse multiply matches the dense product") {
    Rng rng(4);
    const auto m = random_chain(40, 4, rng);
    const auto d = dense(m);
    std::vector<double> x(40), y(40);
    for (auto& v : x) v = rng.normal();
    m.multiply(x, y);
    for (std::size_t i = 0; i < 40; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < 40; ++j) s += d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * x[j];
        CHECK(y[i] == doctest::Approx(s).epsilon(1e-14));
    }
}
