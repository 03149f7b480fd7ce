#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "developable.hpp"

namespace devsurf {

inline constexpr double kDefaultCheckTolerance = 1e-9;

/// Outcome of one numerical oracle: worst sampled residual, where it happened,
/// and the verdict against the tolerance.
struct CheckReport {
    std::string name;
    int samples = 0;
    double max_residual = 0.0;
    std::array<double, 2> argmax_location{0.0, 0.0};
    bool pass = false;
    double tolerance = 0.0;
};

namespace detail {

inline CheckReport finish(std::string name, int samples, double worst, std::array<double, 2> where,
                          double tol) {
    CheckReport r;
    r.name = std::move(name);
    r.samples = samples;
    r.max_residual = worst;
    r.argmax_location = where;
    r.tolerance = tol;
    r.pass = worst < tol;
    return r;
}

}  // namespace detail

/// Normalized |det[c', d', d-c]| over an open u-grid.
inline CheckReport developability_residual(const DevelopablePatch& patch, int nu,
                                           double tol = kDefaultCheckTolerance) {
    if (nu < 2) throw std::invalid_argument("developability_residual: need at least 2 samples");
    double worst = 0.0;
    std::array<double, 2> where{open_grid(0, nu), 0.0};
    for (int k = 0; k < nu; ++k) {
        const double u = open_grid(k, nu);
        const double r = developability_residual_at(patch, u);
        if (r > worst) {
            worst = r;
            where = {u, 0.0};
        }
    }
    return detail::finish("developability_residual", nu, worst, where, tol);
}

/// Normalized coplanarity defect of the four penultimate de Casteljau points.
inline CheckReport penultimate_coplanarity(const DevelopablePatch& patch, int nu,
                                           double tol = kDefaultCheckTolerance) {
    if (nu < 2) throw std::invalid_argument("penultimate_coplanarity: need at least 2 samples");
    double worst = 0.0;
    std::array<double, 2> where{open_grid(0, nu), 0.0};
    for (int k = 0; k < nu; ++k) {
        const double u = open_grid(k, nu);
        const double r = penultimate_residual_at(patch, u);
        if (r > worst) {
            worst = r;
            where = {u, 0.0};
        }
    }
    return detail::finish("penultimate_coplanarity", nu, worst, where, tol);
}

/// Largest angle (radians) between unit normals along each ruling. A vanishing
/// normal at a sample is reported as a failure at that location.
inline CheckReport normal_constancy(const DevelopablePatch& patch, int nu, int nv,
                                    double tol = 1e-8) {
    if (nu < 2 || nv < 2) throw std::invalid_argument("normal_constancy: need at least a 2x2 grid");
    double worst = 0.0;
    std::array<double, 2> where{open_grid(0, nu), open_grid(0, nv)};
    for (int i = 0; i < nu; ++i) {
        const double u = open_grid(i, nu);
        std::vector<Vec3> normals(static_cast<std::size_t>(nv));
        for (int j = 0; j < nv; ++j) {
            const double v = open_grid(j, nv);
            const auto [bu, bv] = surface_partials(patch, u, v);
            const Vec3 nvec = cross(bu, bv);
            const double len = norm(nvec);
            if (len <= 1e-12 * (norm(bu) * norm(bv) + 1e-30)) {
                return detail::finish("normal_constancy", nu * nv,
                                      std::numeric_limits<double>::infinity(), {u, v}, tol);
            }
            normals[static_cast<std::size_t>(j)] = nvec / len;
        }
        for (int j = 0; j < nv; ++j)
            for (int l = j + 1; l < nv; ++l) {
                const Vec3& n1 = normals[static_cast<std::size_t>(j)];
                const Vec3& n2 = normals[static_cast<std::size_t>(l)];
                const double ang = std::atan2(norm(cross(n1, n2)), dot(n1, n2));
                if (ang > worst) {
                    worst = ang;
                    where = {u, open_grid(l, nv)};
                }
            }
    }
    return detail::finish("normal_constancy", nu * nv, worst, where, tol);
}

using Correspondence = std::function<std::array<double, 2>(double, double)>;

/// Max distance between pointwise samples of p1 and of p2 under a parameter
/// correspondence mapping p1's domain into p2's.
inline CheckReport surfaces_equal(const DevelopablePatch& p1, const DevelopablePatch& p2,
                                  const Correspondence& corr, int nu, int nv,
                                  double tol = kDefaultCheckTolerance) {
    if (nu < 2 || nv < 2) throw std::invalid_argument("surfaces_equal: need at least a 2x2 grid");
    double worst = 0.0;
    std::array<double, 2> where{open_grid(0, nu), open_grid(0, nv)};
    for (int i = 0; i < nu; ++i)
        for (int j = 0; j < nv; ++j) {
            const double u = open_grid(i, nu);
            const double v = open_grid(j, nv);
            const auto [u2, v2] = corr(u, v);
            const double dist = distance(surface_point(p1, u, v), surface_point(p2, u2, v2));
            if (dist > worst) {
                worst = dist;
                where = {u, v};
            }
        }
    return detail::finish("surfaces_equal", nu * nv, worst, where, tol);
}

/// Residual of the blossom coupling c[u^<n-1>, Lambda(u)] = d[u^<n-1>, M(u)]
/// for a certified patch. A certificate pole on the sample grid fails the check
/// at that location.
inline CheckReport certificate_residual(const DevelopablePatch& patch, const Certificate& cert, int nu,
                                        double tol = kDefaultCheckTolerance) {
    if (nu < 2) throw std::invalid_argument("certificate_residual: need at least 2 samples");
    const int n = patch.c.degree();
    if (n < 1) throw std::invalid_argument("certificate_residual: degenerate degree-0 patch");
    double worst = 0.0;
    std::array<double, 2> where{open_grid(0, nu), 0.0};
    std::vector<double> args(static_cast<std::size_t>(n));
    for (int k = 0; k < nu; ++k) {
        const double u = open_grid(k, nu);
        double r;
        try {
            for (int j = 0; j + 1 < n; ++j) args[static_cast<std::size_t>(j)] = u;
            args[static_cast<std::size_t>(n - 1)] = cert.lambda_fn.eval(u);
            const Point3 pc = blossom(patch.c, args);
            args[static_cast<std::size_t>(n - 1)] = cert.m_fn.eval(u);
            const Point3 pd = blossom(patch.d, args);
            r = distance(pc, pd);
        } catch (const std::domain_error&) {
            r = std::numeric_limits<double>::infinity();
        }
        if (r > worst) {
            worst = r;
            where = {u, 0.0};
        }
    }
    return detail::finish("certificate_residual", nu, worst, where, tol);
}

inline CheckReport certificate_residual(const DevelopablePatch& patch, int nu,
                                        double tol = kDefaultCheckTolerance) {
    if (!patch.certificate) throw std::invalid_argument("certificate_residual: patch has no certificate");
    return certificate_residual(patch, *patch.certificate, nu, tol);
}

}  // namespace devsurf
