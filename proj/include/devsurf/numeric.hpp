#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

namespace devsurf {

/// Dense least squares min ||A x - b|| for small column counts, by Householder
/// QR with column equilibration. Returns nullopt when A is numerically
/// rank-deficient (used upstream to detect parallel-line configurations).
inline std::optional<std::vector<double>> least_squares(std::vector<std::vector<double>> A,
                                                        std::vector<double> b,
                                                        double rank_tol = 1e-9) {
    const std::size_t m = A.size();
    if (m == 0 || b.size() != m) return std::nullopt;
    const std::size_t k = A[0].size();
    if (k == 0 || m < k) return std::nullopt;

    std::vector<double> col_scale(k, 0.0);
    for (std::size_t j = 0; j < k; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i) s = std::max(s, std::abs(A[i][j]));
        if (s == 0.0) return std::nullopt;
        col_scale[j] = s;
        for (std::size_t i = 0; i < m; ++i) A[i][j] /= s;
    }

    for (std::size_t j = 0; j < k; ++j) {
        double nrm = 0.0;
        for (std::size_t i = j; i < m; ++i) nrm += A[i][j] * A[i][j];
        nrm = std::sqrt(nrm);
        if (nrm <= rank_tol) return std::nullopt;
        double alpha = A[j][j] >= 0.0 ? -nrm : nrm;
        std::vector<double> v(m, 0.0);
        v[j] = A[j][j] - alpha;
        for (std::size_t i = j + 1; i < m; ++i) v[i] = A[i][j];
        double vtv = 0.0;
        for (std::size_t i = j; i < m; ++i) vtv += v[i] * v[i];
        if (vtv > 0.0) {
            for (std::size_t c = j; c < k; ++c) {
                double dotv = 0.0;
                for (std::size_t i = j; i < m; ++i) dotv += v[i] * A[i][c];
                const double f = 2.0 * dotv / vtv;
                for (std::size_t i = j; i < m; ++i) A[i][c] -= f * v[i];
            }
            double dotb = 0.0;
            for (std::size_t i = j; i < m; ++i) dotb += v[i] * b[i];
            const double f = 2.0 * dotb / vtv;
            for (std::size_t i = j; i < m; ++i) b[i] -= f * v[i];
        }
        if (std::abs(A[j][j]) <= rank_tol) return std::nullopt;
    }

    std::vector<double> x(k, 0.0);
    for (std::size_t j = k; j-- > 0;) {
        double acc = b[j];
        for (std::size_t c = j + 1; c < k; ++c) acc -= A[j][c] * x[c];
        x[j] = acc / A[j][j];
    }
    for (std::size_t j = 0; j < k; ++j) x[j] /= col_scale[j];
    return x;
}

/// Least-squares monomial coefficients of the given degree through samples
/// (us[i], ys[i]).
inline std::optional<std::vector<double>> fit_polynomial(const std::vector<double>& us,
                                                         const std::vector<double>& ys,
                                                         int degree) {
    if (degree < 0 || us.size() != ys.size() || us.size() < static_cast<std::size_t>(degree) + 1)
        return std::nullopt;
    std::vector<std::vector<double>> A(us.size(), std::vector<double>(static_cast<std::size_t>(degree) + 1));
    for (std::size_t i = 0; i < us.size(); ++i) {
        double p = 1.0;
        for (int j = 0; j <= degree; ++j) {
            A[i][static_cast<std::size_t>(j)] = p;
            p *= us[i];
        }
    }
    return least_squares(std::move(A), ys, 1e-12);
}

}  // namespace devsurf
