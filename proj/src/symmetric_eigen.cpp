#include "smc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "smc/error.hpp"
#include "smc/simd.hpp"

namespace smc {

namespace {

constexpr std::size_t kMaxQlIterationsPerValue = 60;

struct Reflector {
    std::vector<double> v; // acts on coordinates k+1 .. n-1
    double beta = 0.0;
};

// Reduces w (row-major, symmetric, n x n) in place; returns the reflectors
// H_k = I - beta v v^T with T = H_{n-3} ... H_0 A H_0 ... H_{n-3}.
std::vector<Reflector> tridiagonalize(std::vector<double>& w, std::size_t n, std::vector<double>& diag,
                                      std::vector<double>& off) {
    const auto& kern = simd::active();
    diag.assign(n, 0.0);
    off.assign(n, 0.0);
    std::vector<Reflector> reflectors;
    if (n == 0) return reflectors;
    reflectors.reserve(n > 2 ? n - 2 : 0);

    std::vector<double> p;
    for (std::size_t k = 0; k + 2 < n; ++k) {
        const std::size_t m = n - k - 1;
        double* x = &w[k * n + k + 1];
        diag[k] = w[k * n + k];
        const double norm = std::sqrt(kern.dot(x, x, m));
        Reflector h;
        if (norm == 0.0) {
            off[k] = 0.0;
            reflectors.push_back(std::move(h));
            continue;
        }
        const double alpha = -std::copysign(norm, x[0]);
        h.v.assign(x, x + m);
        h.v[0] -= alpha;
        h.beta = 2.0 / kern.dot(h.v.data(), h.v.data(), m);
        off[k] = alpha;

        p.assign(m, 0.0);
        for (std::size_t i = 0; i < m; ++i)
            p[i] = h.beta * kern.dot(&w[(k + 1 + i) * n + k + 1], h.v.data(), m);
        const double kappa = 0.5 * h.beta * kern.dot(p.data(), h.v.data(), m);
        kern.axpy(-kappa, h.v.data(), p.data(), m); // p <- p - kappa v
        for (std::size_t i = 0; i < m; ++i) {
            double* row = &w[(k + 1 + i) * n + k + 1];
            kern.axpy(-h.v[i], p.data(), row, m);
            kern.axpy(-p[i], h.v.data(), row, m);
        }
        reflectors.push_back(std::move(h));
    }
    if (n >= 2) {
        diag[n - 2] = w[(n - 2) * n + n - 2];
        off[n - 2] = w[(n - 2) * n + n - 1];
    }
    diag[n - 1] = w[(n - 1) * n + n - 1];
    off[n - 1] = 0.0;
    return reflectors;
}

// Implicit-shift QL on the tridiagonal (diag, off) with off[i] coupling i and
// i+1. zt rows accumulate the eigenvectors of the tridiagonal matrix.
std::size_t tridiagonal_ql(std::vector<double>& diag, std::vector<double>& off,
                           std::vector<std::vector<double>>& zt) {
    const auto& kern = simd::active();
    const std::size_t n = diag.size();
    const double eps = std::numeric_limits<double>::epsilon();
    std::size_t total_iterations = 0;

    for (std::size_t l = 0; l < n; ++l) {
        std::size_t iter = 0;
        std::size_t m;
        do {
            for (m = l; m + 1 < n; ++m) {
                const double dd = std::abs(diag[m]) + std::abs(diag[m + 1]);
                if (std::abs(off[m]) <= eps * dd) break;
            }
            if (m == l) break;
            if (iter++ == kMaxQlIterationsPerValue)
                throw Error(ErrorKind::decomposition_failure,
                            "QL iteration did not converge for eigenvalue " + std::to_string(l));
            ++total_iterations;

            double g = (diag[l + 1] - diag[l]) / (2.0 * off[l]);
            double r = std::hypot(g, 1.0);
            g = diag[m] - diag[l] + off[l] / (g + std::copysign(r, g));
            double s = 1.0, c = 1.0, p = 0.0;
            bool underflow = false;
            for (std::size_t i = m; i-- > l;) {
                const double f = s * off[i];
                const double b = c * off[i];
                r = std::hypot(f, g);
                off[i + 1] = r;
                if (r == 0.0) {
                    diag[i + 1] -= p;
                    off[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = diag[i + 1] - p;
                r = (diag[i] - g) * s + 2.0 * c * b;
                p = s * r;
                diag[i + 1] = g + p;
                g = c * r - b;
                // z[:, i+1] <- s z[:, i] + c z[:, i+1];  z[:, i] <- c z[:, i] - s z[:, i+1]
                kern.rotate(zt[i].data(), zt[i + 1].data(), n, c, s);
            }
            if (underflow) continue;
            diag[l] -= p;
            off[l] = g;
            off[m] = 0.0;
        } while (m != l);
    }
    return total_iterations;
}

} // namespace

SymmetricEigen symmetric_eigen(std::span<const double> a, std::size_t n, std::size_t vector_count) {
    SymmetricEigen out;
    out.n = n;
    if (n == 0) return out;
    vector_count = std::min(vector_count, n);

    std::vector<double> w(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(n * n));
    std::vector<double> diag, off;
    const auto reflectors = tridiagonalize(w, n, diag, off);
    w.clear();
    w.shrink_to_fit();

    std::vector<std::vector<double>> zt(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) zt[i][i] = 1.0;
    out.ql_iterations = tridiagonal_ql(diag, off, zt);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return diag[x] < diag[y]; });
    out.values.reserve(n);
    for (std::size_t i : order) out.values.push_back(diag[i]);

    // Back-transform: u = H_0 H_1 ... H_{n-3} z.
    const auto& kern = simd::active();
    out.vectors.reserve(vector_count);
    for (std::size_t idx = n - vector_count; idx < n; ++idx) {
        std::vector<double> u = std::move(zt[order[idx]]);
        for (std::size_t k = reflectors.size(); k-- > 0;) {
            const auto& h = reflectors[k];
            if (h.beta == 0.0) continue;
            double* tail = u.data() + k + 1;
            const double coeff = h.beta * kern.dot(h.v.data(), tail, h.v.size());
            kern.axpy(-coeff, h.v.data(), tail, h.v.size());
        }
        out.vectors.push_back(std::move(u));
    }
    return out;
}

} // namespace smc
