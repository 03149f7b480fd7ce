#pragma once

#include <array>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "geom.hpp"
#include "polynomial.hpp"

namespace devsurf {

/// Bezier curve of degree n given by its control polygon of n+1 points.
/// Also used for curves of vectors (hodographs, ruling directions).
struct BezierCurve {
    std::vector<Vec3> points;

    BezierCurve() : points{Vec3{}} {}
    explicit BezierCurve(std::vector<Vec3> pts) : points(std::move(pts)) {
        if (points.empty()) throw std::invalid_argument("BezierCurve: empty control polygon");
    }

    int degree() const { return static_cast<int>(points.size()) - 1; }
};

struct CurveSample {
    Point3 point;
    // Last-but-one de Casteljau stage; the derivative is degree * (second - first).
    std::array<Point3, 2> penultimate;
};

/// De Casteljau evaluation. The recursion is affine, so u may lie outside [0,1].
inline CurveSample eval(const BezierCurve& curve, double u) {
    const int n = curve.degree();
    if (n == 0) return CurveSample{curve.points[0], {curve.points[0], curve.points[0]}};
    std::vector<Vec3> w = curve.points;
    for (int r = 1; r < n; ++r)
        for (int i = 0; i + r <= n; ++i) w[static_cast<std::size_t>(i)] = lerp(w[i], w[i + 1], u);
    const std::array<Point3, 2> pen{w[0], w[1]};
    return CurveSample{lerp(w[0], w[1], u), pen};
}

inline Point3 eval_point(const BezierCurve& curve, double u) { return eval(curve, u).point; }

inline Vector3 derivative(const BezierCurve& curve, double u) {
    const int n = curve.degree();
    if (n == 0) return Vector3{};
    const auto s = eval(curve, u);
    return static_cast<double>(n) * (s.penultimate[1] - s.penultimate[0]);
}

/// Symmetric multi-affine polar form; one argument is consumed per stage, so
/// blossom(u,...,u) reproduces eval(u) and blossom(u^<n-1>, 0|1) gives the
/// penultimate de Casteljau pair.
inline Point3 blossom(const BezierCurve& curve, std::span<const double> args) {
    const int n = curve.degree();
    if (static_cast<int>(args.size()) != n)
        throw std::invalid_argument("blossom: expected one argument per curve degree");
    std::vector<Vec3> w = curve.points;
    for (int r = 1; r <= n; ++r) {
        const double t = args[static_cast<std::size_t>(r - 1)];
        for (int i = 0; i + r <= n; ++i) w[static_cast<std::size_t>(i)] = lerp(w[i], w[i + 1], t);
    }
    return w[0];
}

inline Point3 blossom(const BezierCurve& curve, std::initializer_list<double> args) {
    return blossom(curve, std::span<const double>(args.begin(), args.size()));
}

/// Derivative curve: degree n-1 with control vectors n*(c_{i+1} - c_i).
inline BezierCurve hodograph(const BezierCurve& curve) {
    const int n = curve.degree();
    if (n == 0) return BezierCurve{{Vec3{}}};
    std::vector<Vec3> pts(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        pts[static_cast<std::size_t>(i)] = static_cast<double>(n) * (curve.points[i + 1] - curve.points[i]);
    return BezierCurve{std::move(pts)};
}

/// Raise the formal degree by m without moving the point set.
inline BezierCurve elevate_curve(const BezierCurve& curve, int m) {
    if (m < 0) throw std::invalid_argument("elevate_curve: negative step count");
    std::vector<Vec3> pts = curve.points;
    for (int step = 0; step < m; ++step) {
        const std::size_t n = pts.size() - 1;
        std::vector<Vec3> out(pts.size() + 1);
        out[0] = pts[0];
        out[n + 1] = pts[n];
        for (std::size_t i = 1; i <= n; ++i) {
            const double t = static_cast<double>(i) / static_cast<double>(n + 1);
            out[i] = lerp(pts[i], pts[i - 1], t);
        }
        pts = std::move(out);
    }
    return BezierCurve{std::move(pts)};
}

/// Affine change of parameter onto [a,b]: control points are the blossom values
/// at a^<n-i> b^<i>, so the new curve at t equals the old one at (1-t)a + tb.
inline BezierCurve restrict_curve(const BezierCurve& curve, double a, double b) {
    if (a == b) throw std::invalid_argument("restrict_curve: degenerate interval");
    const int n = curve.degree();
    std::vector<Vec3> pts(static_cast<std::size_t>(n) + 1);
    std::vector<double> args(static_cast<std::size_t>(n));
    for (int i = 0; i <= n; ++i) {
        for (int j = 0; j < n; ++j) args[static_cast<std::size_t>(j)] = (j < n - i) ? a : b;
        pts[static_cast<std::size_t>(i)] = blossom(curve, args);
    }
    return BezierCurve{std::move(pts)};
}

/// Pointwise sum of two curves of equal degree (curve + curve-of-vectors).
inline BezierCurve add_curves(const BezierCurve& p, const BezierCurve& q) {
    if (p.degree() != q.degree()) throw std::invalid_argument("add_curves: degree mismatch");
    std::vector<Vec3> pts(p.points.size());
    for (std::size_t i = 0; i < pts.size(); ++i) pts[i] = p.points[i] + q.points[i];
    return BezierCurve{std::move(pts)};
}

/// Product of a Bernstein-form scalar polynomial with a curve, of degree
/// deg(f) + deg(g).
inline BezierCurve multiply_bernstein(const Polynomial& f, const BezierCurve& g) {
    if (f.basis() != Polynomial::Basis::bernstein)
        throw std::invalid_argument("multiply_bernstein: scalar factor must be in Bernstein basis");
    const int a = f.degree(), b = g.degree();
    std::vector<Vec3> out(static_cast<std::size_t>(a + b) + 1);
    for (int i = 0; i <= a; ++i)
        for (int j = 0; j <= b; ++j) {
            const double w = binomial(a, i) * binomial(b, j) / binomial(a + b, i + j);
            out[static_cast<std::size_t>(i + j)] += w * f.coeffs()[static_cast<std::size_t>(i)] * g.points[j];
        }
    return BezierCurve{std::move(out)};
}

/// Substitute u = h(t): the composed curve of degree deg(c) * deg(h), assembled
/// from Bernstein products of h and 1-h. This stays in convex-weight arithmetic
/// end to end, which keeps high-degree compositions well conditioned.
inline BezierCurve compose_curve(const BezierCurve& curve, const Polynomial& h) {
    Polynomial hm = basis_convert(h, Polynomial::Basis::monomial);
    const int m = hm.degree();
    const int n = curve.degree();
    if (m == 0) {
        return BezierCurve{{eval_point(curve, hm.coeffs()[0])}};
    }
    const Polynomial hb = basis_convert(hm, Polynomial::Basis::bernstein, m);
    std::vector<double> comp(hb.coeffs().size());
    for (std::size_t i = 0; i < comp.size(); ++i) comp[i] = 1.0 - hb.coeffs()[i];
    const Polynomial one_minus_hb = Polynomial::bernstein(std::move(comp));

    std::vector<Polynomial> pow_h, pow_g;
    pow_h.reserve(static_cast<std::size_t>(n) + 1);
    pow_g.reserve(static_cast<std::size_t>(n) + 1);
    pow_h.push_back(Polynomial::bernstein({1.0}));
    pow_g.push_back(Polynomial::bernstein({1.0}));
    for (int i = 1; i <= n; ++i) {
        pow_h.push_back(multiply_bernstein(pow_h.back(), hb));
        pow_g.push_back(multiply_bernstein(pow_g.back(), one_minus_hb));
    }

    std::vector<Vec3> out(static_cast<std::size_t>(n * m) + 1);
    for (int i = 0; i <= n; ++i) {
        const Polynomial w = multiply_bernstein(pow_h[static_cast<std::size_t>(i)],
                                                pow_g[static_cast<std::size_t>(n - i)]);
        const double bin = binomial(n, i);
        const Polynomial wf = basis_convert(w, Polynomial::Basis::bernstein, n * m);
        for (std::size_t k = 0; k < out.size(); ++k)
            out[k] += bin * wf.coeffs()[k] * curve.points[static_cast<std::size_t>(i)];
    }
    return BezierCurve{std::move(out)};
}

}  // namespace devsurf
