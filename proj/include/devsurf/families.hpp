#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "developable.hpp"
#include "patch_ops.hpp"

namespace devsurf {

/// Cylinder through c(u) with rulings parallel to w: d = c + f w. The
/// certificate is the common function Lambda = M = -sum (n-i) a_i u^i / f'(u)
/// obtained from the vanishing polar form of f; it does not exist for constant
/// f (pure translation), where the penultimate lines are parallel instead.
inline DevelopablePatch cylinder(const BezierCurve& c, const Vector3& w, const Polynomial& f_in) {
    const Polynomial f = basis_convert(f_in, Polynomial::Basis::monomial);
    const int n = c.degree();
    if (f.degree() > n) throw std::invalid_argument("cylinder: deg f must not exceed the curve degree");
    if (f.is_zero()) throw std::invalid_argument("cylinder: f is identically zero");
    if (norm(w) == 0.0) throw std::invalid_argument("cylinder: zero direction");

    const Polynomial fb = basis_convert(f, Polynomial::Basis::bernstein, n);
    std::vector<Vec3> d(c.points.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = c.points[i] + fb.coeffs()[i] * w;

    std::optional<Certificate> cert;
    const Polynomial fp = f.derivative();
    if (!fp.is_zero()) {
        std::vector<double> num(static_cast<std::size_t>(std::min(f.degree(), n - 1)) + 1, 0.0);
        for (int i = 0; i < static_cast<int>(num.size()); ++i)
            num[static_cast<std::size_t>(i)] = -static_cast<double>(n - i) * f.coeffs()[static_cast<std::size_t>(i)];
        const RationalFunction g{Polynomial::monomial(std::move(num)), fp};
        cert = Certificate{g, g};
    }
    return DevelopablePatch{c, BezierCurve{std::move(d)}, std::move(cert)};
}

/// Cone with vertex V over c(u), with ruling field v(u) = (c(u) - V) f(u) for a
/// non-constant polynomial f. The patch lives at degree n + deg f, with
/// Lambda = (f' u - (n+m)(f + f^2)) / f', M = (f' u - (n+m) f) / f'.
inline DevelopablePatch cone(const BezierCurve& c, const Point3& vertex, const Polynomial& f_in) {
    const Polynomial f = basis_convert(f_in, Polynomial::Basis::monomial);
    const int m = f.degree();
    if (m < 1) throw std::invalid_argument("cone: constant f gives a scaled copy, not supported");
    const int n = c.degree();
    const double nm = static_cast<double>(n + m);

    std::vector<Vec3> rel(c.points.size());
    for (std::size_t i = 0; i < rel.size(); ++i) rel[i] = c.points[i] - vertex;
    const BezierCurve scaled = multiply_bernstein(basis_convert(f, Polynomial::Basis::bernstein, m),
                                                  BezierCurve{std::move(rel)});
    const BezierCurve c_new = elevate_curve(c, m);
    const BezierCurve d_new = add_curves(c_new, scaled);

    const Polynomial fp = f.derivative();
    const Polynomial u = Polynomial::variable();
    const RationalFunction lambda_fn{fp * u - nm * (f + f * f), fp};
    const RationalFunction m_fn{fp * u - nm * f, fp};
    return DevelopablePatch{c_new, d_new, Certificate{lambda_fn, m_fn}};
}

/// Tangent surface patch b(u,v) = c(u) + v f(u) c'(u) for linear f = a u + b
/// with no zero on [0,1]. The boundary curve c is itself the edge of
/// regression, so the edge parameter vanishes identically; the certificate is
/// Lambda = u + n f(u), M = u.
inline DevelopablePatch tangent_patch(const BezierCurve& c, const Polynomial& f_in) {
    const Polynomial f = basis_convert(f_in, Polynomial::Basis::monomial);
    if (f.degree() > 1) throw std::invalid_argument("tangent_patch: f must be linear (use scale_rulings beyond)");
    if (f.is_zero()) throw std::invalid_argument("tangent_patch: f is identically zero");
    if (f.eval(0.0) * f.eval(1.0) <= 0.0)
        throw std::invalid_argument("tangent_patch: f vanishes on [0,1], rulings collapse inside the patch");
    const int n = c.degree();
    if (n < 1) throw std::invalid_argument("tangent_patch: curve must have degree >= 1");

    const Polynomial fb = basis_convert(f, Polynomial::Basis::bernstein, 1);
    const BezierCurve d_new = add_curves(c, multiply_bernstein(fb, hodograph(c)));

    const Polynomial u = Polynomial::variable();
    return DevelopablePatch{c, d_new,
                            Certificate{RationalFunction(u + static_cast<double>(n) * f), RationalFunction(u)}};
}

namespace detail {

// Drop the formal leading term of a curve that is exactly one degree lower than
// its representation, checking that the leading monomial coefficients cancel.
inline BezierCurve reduce_degree_exact(const BezierCurve& curve, double rel_tol = 1e-9) {
    const int n = curve.degree();
    if (n < 1) throw std::invalid_argument("reduce_degree_exact: nothing to reduce");
    double mag = 1.0;
    for (const Vec3& p : curve.points) mag = std::max({mag, std::abs(p.x), std::abs(p.y), std::abs(p.z)});

    std::vector<std::vector<double>> coords(3);
    for (int axis = 0; axis < 3; ++axis) {
        std::vector<double> b(curve.points.size());
        for (std::size_t i = 0; i < b.size(); ++i) {
            const Vec3& p = curve.points[i];
            b[i] = axis == 0 ? p.x : axis == 1 ? p.y : p.z;
        }
        Polynomial mono = basis_convert(Polynomial::bernstein(std::move(b)), Polynomial::Basis::monomial);
        std::vector<double> mc = mono.coeffs();
        if (static_cast<int>(mc.size()) - 1 == n) {
            if (std::abs(mc.back()) > rel_tol * mag)
                throw std::invalid_argument("reduce_degree_exact: leading coefficients do not cancel");
            mc.pop_back();
        }
        mc.resize(static_cast<std::size_t>(n), 0.0);
        coords[static_cast<std::size_t>(axis)] =
            basis_convert(Polynomial::monomial(std::move(mc)), Polynomial::Basis::bernstein, n - 1).coeffs();
    }
    std::vector<Vec3> pts(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < pts.size(); ++i) pts[i] = Vec3{coords[0][i], coords[1][i], coords[2][i]};
    return BezierCurve{std::move(pts)};
}

}  // namespace detail

/// Patch of the tangent surface of a degree-(n+1) curve r, bounded by
/// c = r + (a u + b1) r' and d = r + (a u + b2) r' with a = -1/(n+1) so both
/// boundaries drop to degree n. The certificate is the constant pair
/// Lambda = (n+1) b2, M = (n+1) b1, and the edge of regression of the result is
/// r itself in the same parametrization.
inline DevelopablePatch from_edge_of_regression(const BezierCurve& r, double b1, double b2) {
    const int np1 = r.degree();
    if (np1 < 2) throw std::invalid_argument("from_edge_of_regression: edge curve must have degree >= 2");
    if (b1 == b2) throw std::invalid_argument("from_edge_of_regression: b1 = b2 gives a zero-width patch");
    const double a = -1.0 / static_cast<double>(np1);

    const BezierCurve rp = hodograph(r);
    const auto boundary = [&](double b) {
        const Polynomial lin = Polynomial::bernstein({b, a + b});
        return detail::reduce_degree_exact(add_curves(r, multiply_bernstein(lin, rp)));
    };
    Certificate cert{RationalFunction::constant(static_cast<double>(np1) * b2),
                     RationalFunction::constant(static_cast<double>(np1) * b1)};
    return DevelopablePatch{boundary(b1), boundary(b2), std::move(cert)};
}

/// Developable patch over a curve c of degree n-1 whose ruling field solves the
/// developability equation with lambda = -nA/(u-b), mu = A(u-a)/(u-b):
///   v(u) = (u-a)^n w + (u-a)^n Int (u-b) c'(u) du / (A (u-a)^(n+1)).
/// The integral is done by exact termwise power-rule integration of the Taylor
/// expansion about a; every exponent in the integrand lies in [-(n+1), -2], so
/// no logarithmic term can arise. The edge of regression is rational:
/// r(u) = c(u) - A(u-a)/(u-b) v(u), and the certificate is
/// Lambda = a + (b-u)/A, M = a.
inline DevelopablePatch family4(const BezierCurve& c, double a, double b, double amp, const Vector3& w) {
    if (amp == 0.0) throw std::invalid_argument("family4: A must be nonzero");
    if (a == b) throw std::invalid_argument("family4: a = b is degenerate");
    const int n = c.degree() + 1;

    const BezierCurve cp = hodograph(c);
    bool cp_zero = true;
    for (const Vec3& v : cp.points)
        if (norm(v) != 0.0) cp_zero = false;
    if (cp_zero && norm(w) == 0.0)
        throw std::invalid_argument("family4: w = 0 with a constant curve is degenerate");

    // Taylor coefficients of c' about a, per coordinate.
    std::vector<std::vector<double>> t(3);
    for (int axis = 0; axis < 3; ++axis) {
        std::vector<double> bern(cp.points.size());
        for (std::size_t i = 0; i < bern.size(); ++i) {
            const Vec3& p = cp.points[i];
            bern[i] = axis == 0 ? p.x : axis == 1 ? p.y : p.z;
        }
        const Polynomial mono = basis_convert(Polynomial::bernstein(std::move(bern)), Polynomial::Basis::monomial);
        t[static_cast<std::size_t>(axis)] = taylor_shift(mono, a).coeffs();
    }
    const auto tc = [&](int axis, int k) -> double {
        const auto& v = t[static_cast<std::size_t>(axis)];
        return (k >= 0 && k < static_cast<int>(v.size())) ? v[static_cast<std::size_t>(k)] : 0.0;
    };

    // (u-b) c'(u) = sum_k s_k (u-a)^k with s_k = t_{k-1} + (a-b) t_k;
    // dividing by A (u-a)^(n+1), integrating, and multiplying back by (u-a)^n
    // leaves sum_k s_k (u-a)^k / (A (k-n)).
    std::vector<std::vector<double>> vmono(3);  // Bernstein coefficients of v per axis
    for (int axis = 0; axis < 3; ++axis) {
        std::vector<double> shifted(static_cast<std::size_t>(n), 0.0);
        for (int k = 0; k < n; ++k) {
            const double sk = tc(axis, k - 1) + (a - b) * tc(axis, k);
            shifted[static_cast<std::size_t>(k)] = sk / (amp * static_cast<double>(k - n));
        }
        Polynomial particular = taylor_shift(Polynomial::monomial(std::move(shifted)), -a);

        Polynomial homog = Polynomial::constant(axis == 0 ? w.x : axis == 1 ? w.y : w.z);
        const Polynomial shift_factor = Polynomial::monomial({-a, 1.0});
        for (int k = 0; k < n; ++k) homog = homog * shift_factor;
        Polynomial v_axis = particular + homog;
        vmono[static_cast<std::size_t>(axis)] =
            basis_convert(v_axis, Polynomial::Basis::bernstein, n).coeffs();
    }

    const BezierCurve c_new = elevate_curve(c, 1);
    std::vector<Vec3> d(c_new.points.size());
    for (std::size_t i = 0; i < d.size(); ++i)
        d[i] = c_new.points[i] + Vec3{vmono[0][i], vmono[1][i], vmono[2][i]};

    Certificate cert{RationalFunction(Polynomial::monomial({a + b / amp, -1.0 / amp})),
                     RationalFunction::constant(a)};
    return DevelopablePatch{c_new, BezierCurve{std::move(d)}, std::move(cert)};
}

enum class ConstructionRoute { aumann, aumann_elevated, scaled_rulings, family4 };

struct CaseReport {
    int patch_degree = 0;
    int curve_degree = 0;
    std::vector<ConstructionRoute> routes;
};

/// Which general constructions produce a degree-(n,1) developable patch through
/// an arbitrary curve of the given degree. Only curve degrees n and n-1 admit
/// constructions with free parameters.
inline CaseReport general_solution_info(int n, int dc) {
    if (n < 1) throw std::invalid_argument("general_solution_info: patch degree must be >= 1");
    if (dc == n) return CaseReport{n, dc, {ConstructionRoute::aumann}};
    if (dc == n - 1)
        return CaseReport{n, dc,
                          {ConstructionRoute::aumann_elevated, ConstructionRoute::scaled_rulings,
                           ConstructionRoute::family4}};
    throw std::invalid_argument("general_solution_info: curve degree outside the supported cases");
}

}  // namespace devsurf
