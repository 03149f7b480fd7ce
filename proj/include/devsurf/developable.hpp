#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "bezier.hpp"
#include "numeric.hpp"
#include "rational.hpp"

namespace devsurf {

/// Pair of rational functions (Lambda, M) coupling the blossoms of the two
/// boundary curves: c[u^<n-1>, Lambda(u)] = d[u^<n-1>, M(u)]. Constants are
/// stored as degree-0/degree-0 rationals so that patch operations can map them
/// to genuinely u-dependent functions.
struct Certificate {
    RationalFunction lambda_fn;
    RationalFunction m_fn;

    bool is_constant() const { return lambda_fn.is_constant() && m_fn.is_constant(); }
};

/// Coefficients of the developability equation c'(u) = lambda(u) v(u) + mu(u) v'(u)
/// with v(u) = d(u) - c(u).
struct LambdaMu {
    RationalFunction lambda;
    RationalFunction mu;
};

/// Ruled patch b(u,v) = (1-v) c(u) + v d(u) between two same-degree curves,
/// optionally carrying a developability certificate.
struct DevelopablePatch {
    BezierCurve c;
    BezierCurve d;
    std::optional<Certificate> certificate;
};

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

enum class SurfaceTag { planar, cylinder, cone, tangent };

struct SurfaceClass {
    SurfaceTag tag = SurfaceTag::tangent;
    std::optional<Point3> vertex;        // set for cones
    double vertex_deviation = 0.0;       // max spread of the sampled apex estimates
};

inline DevelopablePatch make_patch(BezierCurve c, BezierCurve d) {
    if (c.degree() != d.degree())
        throw std::invalid_argument("make_patch: boundary curves must have equal degrees");
    return DevelopablePatch{std::move(c), std::move(d), std::nullopt};
}

/// Ruling direction v(u) = d(u) - c(u) materialized as a curve of vectors.
inline BezierCurve ruling_curve(const DevelopablePatch& p) {
    std::vector<Vec3> v(p.c.points.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = p.d.points[i] - p.c.points[i];
    return BezierCurve{std::move(v)};
}

inline Point3 surface_point(const DevelopablePatch& p, double u, double v) {
    return lerp(eval_point(p.c, u), eval_point(p.d, u), v);
}

/// (d/du b, d/dv b) at (u, v).
inline std::pair<Vector3, Vector3> surface_partials(const DevelopablePatch& p, double u, double v) {
    const Vector3 bu = lerp(derivative(p.c, u), derivative(p.d, u), v);
    const Vector3 bv = eval_point(p.d, u) - eval_point(p.c, u);
    return {bu, bv};
}

inline double patch_diameter(const DevelopablePatch& p) {
    double d = 0.0;
    const auto scan = [&d](const std::vector<Vec3>& pts, const std::vector<Vec3>& qts) {
        for (const Vec3& a : pts)
            for (const Vec3& b : qts) d = std::max(d, distance(a, b));
    };
    scan(p.c.points, p.c.points);
    scan(p.d.points, p.d.points);
    scan(p.c.points, p.d.points);
    return d;
}

/// Scale-free coplanarity defect of c'(u), d'(u), d(u)-c(u) at one parameter.
inline double developability_residual_at(const DevelopablePatch& p, double u) {
    const Vector3 cu = derivative(p.c, u);
    const Vector3 du = derivative(p.d, u);
    const Vector3 v = eval_point(p.d, u) - eval_point(p.c, u);
    return std::abs(triple(cu, du, v)) / (norm(cu) * norm(du) * norm(v) + 1e-30);
}

/// Scale-free coplanarity defect of the four penultimate de Casteljau points.
inline double penultimate_residual_at(const DevelopablePatch& p, double u) {
    const auto sc = eval(p.c, u), sd = eval(p.d, u);
    const Vector3 e1 = sc.penultimate[1] - sc.penultimate[0];
    const Vector3 e2 = sd.penultimate[0] - sc.penultimate[0];
    const Vector3 e3 = sd.penultimate[1] - sc.penultimate[0];
    return std::abs(triple(e1, e2, e3)) / (norm(e1) * norm(e2) * norm(e3) + 1e-30);
}

/// Midpoint grid over the open interval (0,1); oracles sample here so that
/// certificates with boundary poles stay evaluable.
inline double open_grid(int k, int n) { return (static_cast<double>(k) + 0.5) / static_cast<double>(n); }

/// Cellwise construction of a developable net from one boundary polygon, one
/// free point and constants (Lambda, M): every cell satisfies
/// (1-Lambda) c_i + Lambda c_{i+1} = (1-M) d_i + M d_{i+1}.
/// For M = 0 the conditions pin d_0..d_{n-1} instead and the free point is d_n.
inline DevelopablePatch aumann_construct(const BezierCurve& c_polygon, const Point3& free_point,
                                         double lambda_const, double m_const) {
    const int n = c_polygon.degree();
    if (n < 1) throw std::invalid_argument("aumann_construct: boundary curve must have degree >= 1");
    if (std::abs(lambda_const - m_const) <= kTrimTolerance)
        throw std::invalid_argument("aumann_construct: Lambda = M is the cylinder limit");

    std::vector<Vec3> d(static_cast<std::size_t>(n) + 1);
    const auto& c = c_polygon.points;
    if (std::abs(m_const) <= kPoleTolerance) {
        for (int i = 0; i < n; ++i)
            d[static_cast<std::size_t>(i)] = (1.0 - lambda_const) * c[i] + lambda_const * c[i + 1];
        d[static_cast<std::size_t>(n)] = free_point;
    } else {
        d[0] = free_point;
        for (int i = 0; i < n; ++i)
            d[static_cast<std::size_t>(i) + 1] =
                ((1.0 - lambda_const) * c[i] + lambda_const * c[i + 1] - (1.0 - m_const) * d[i]) / m_const;
    }
    Certificate cert{RationalFunction::constant(lambda_const), RationalFunction::constant(m_const)};
    return DevelopablePatch{c_polygon, BezierCurve{std::move(d)}, cert};
}

/// lambda = n / (Lambda - M), mu = (M - u) / (Lambda - M).
inline LambdaMu lm_to_lambdamu(const RationalFunction& lambda_fn, const RationalFunction& m_fn, int n) {
    const RationalFunction diff = lambda_fn - m_fn;
    if (diff.is_zero())
        throw std::invalid_argument("lm_to_lambdamu: Lambda = M (cylinder) leaves lambda, mu undefined");
    return LambdaMu{RationalFunction::constant(static_cast<double>(n)) / diff,
                    (m_fn - RationalFunction::variable()) / diff};
}

inline LambdaMu lm_to_lambdamu(const Certificate& cert, int n) {
    return lm_to_lambdamu(cert.lambda_fn, cert.m_fn, n);
}

/// Lambda = (n (mu + 1) + u lambda) / lambda, M = (n mu + u lambda) / lambda.
inline Certificate lambdamu_to_lm(const LambdaMu& lm, int n) {
    if (lm.lambda.is_zero()) throw std::invalid_argument("lambdamu_to_lm: lambda is identically zero");
    const RationalFunction u = RationalFunction::variable();
    const double nn = static_cast<double>(n);
    const RationalFunction lambda_fn = nn * (lm.mu + RationalFunction::constant(1.0)) / lm.lambda + u;
    const RationalFunction m_fn = nn * lm.mu / lm.lambda + u;
    return Certificate{lambda_fn, m_fn};
}

enum class CertifyKind { not_developable, lambda_equals_m, constant, polynomial, sampled };

struct CertifySample {
    double u = 0.0;
    double lambda = 0.0;
    double m = 0.0;
    bool parallel = false;  // penultimate lines parallel at this sample (cylinder direction)
};

struct CertifyResult {
    CertifyKind kind = CertifyKind::not_developable;
    std::optional<Certificate> certificate;
    std::vector<CertifySample> samples;
    double coplanarity_residual = 0.0;
};

namespace detail {

// Fit the samples by the lowest-degree polynomial whose residual stays within
// the gate; constants and straight lines are the common cases.
inline std::optional<Polynomial> fit_function(const std::vector<double>& us, const std::vector<double>& ys,
                                              double gate, int max_degree = 8) {
    const int cap = std::min<int>(max_degree, static_cast<int>(us.size()) - 2);
    for (int deg = 0; deg <= cap; ++deg) {
        const auto fit = fit_polynomial(us, ys, deg);
        if (!fit) continue;
        const Polynomial p = Polynomial::monomial(*fit);
        double worst = 0.0;
        for (std::size_t i = 0; i < us.size(); ++i) worst = std::max(worst, std::abs(p.eval(us[i]) - ys[i]));
        if (worst <= gate) return p;
    }
    return std::nullopt;
}

}  // namespace detail

/// Recover a certificate from the control net alone. At each sample the four
/// penultimate points are tested for coplanarity, then (Lambda, M) are read off
/// as the affine coordinates of the intersection of the two penultimate lines.
/// Constants are fitted by least squares over the cell equations
/// Lambda (c_{i+1}-c_i) - M (d_{i+1}-d_i) = d_i - c_i; low-degree polynomial
/// fits cover certificates produced by degree elevation and friends. Patches
/// whose penultimate lines are parallel or intersect with Lambda = M are
/// reported as the Lambda == M (cylinder) case.
inline CertifyResult certify(const DevelopablePatch& patch, int samples, double tol) {
    const int n = patch.c.degree();
    if (samples < n + 2) throw std::invalid_argument("certify: need at least degree + 2 samples");

    CertifyResult res;
    res.samples.reserve(static_cast<std::size_t>(samples));
    for (int k = 0; k < samples; ++k) {
        const double u = open_grid(k, samples);
        res.coplanarity_residual = std::max(res.coplanarity_residual, penultimate_residual_at(patch, u));

        const auto sc = eval(patch.c, u), sd = eval(patch.d, u);
        const Vector3 p = sc.penultimate[1] - sc.penultimate[0];
        const Vector3 q = sd.penultimate[1] - sd.penultimate[0];
        const Vector3 rhs = sd.penultimate[0] - sc.penultimate[0];
        std::vector<std::vector<double>> rows{{p.x, -q.x}, {p.y, -q.y}, {p.z, -q.z}};
        const auto sol = least_squares(std::move(rows), {rhs.x, rhs.y, rhs.z});
        if (sol)
            res.samples.push_back(CertifySample{u, (*sol)[0], (*sol)[1], false});
        else
            res.samples.push_back(CertifySample{u, 0.0, 0.0, true});
    }

    if (res.coplanarity_residual > tol) {
        res.kind = CertifyKind::not_developable;
        return res;
    }

    std::vector<double> us, ls, ms;
    for (const auto& s : res.samples) {
        if (s.parallel) continue;
        us.push_back(s.u);
        ls.push_back(s.lambda);
        ms.push_back(s.m);
    }
    if (us.empty()) {
        res.kind = CertifyKind::lambda_equals_m;
        return res;
    }

    double mag = 1.0, sep = 0.0;
    for (std::size_t i = 0; i < us.size(); ++i) {
        mag = std::max({mag, std::abs(ls[i]), std::abs(ms[i])});
        sep = std::max(sep, std::abs(ls[i] - ms[i]));
    }
    const double gate = tol * mag;

    if (sep <= gate) {
        res.kind = CertifyKind::lambda_equals_m;
        if (const auto g = detail::fit_function(us, ls, gate))
            res.certificate = Certificate{RationalFunction(*g), RationalFunction(*g)};
        return res;
    }

    // Constant candidate from the cell equations; exact for Aumann-style nets.
    {
        std::vector<std::vector<double>> rows;
        std::vector<double> rhs;
        for (int i = 0; i < n; ++i) {
            const Vector3 dc = patch.c.points[i + 1] - patch.c.points[i];
            const Vector3 dd = patch.d.points[i + 1] - patch.d.points[i];
            const Vector3 b = patch.d.points[i] - patch.c.points[i];
            rows.push_back({dc.x, -dd.x});
            rows.push_back({dc.y, -dd.y});
            rows.push_back({dc.z, -dd.z});
            rhs.insert(rhs.end(), {b.x, b.y, b.z});
        }
        if (const auto cf = least_squares(std::move(rows), std::move(rhs))) {
            double worst = 0.0;
            for (std::size_t i = 0; i < us.size(); ++i)
                worst = std::max({worst, std::abs(ls[i] - (*cf)[0]), std::abs(ms[i] - (*cf)[1])});
            if (worst <= gate) {
                res.kind = CertifyKind::constant;
                res.certificate = Certificate{RationalFunction::constant((*cf)[0]),
                                              RationalFunction::constant((*cf)[1])};
                return res;
            }
        }
    }

    const auto fl = detail::fit_function(us, ls, gate);
    const auto fm = detail::fit_function(us, ms, gate);
    if (fl && fm) {
        res.kind = CertifyKind::polynomial;
        res.certificate = Certificate{RationalFunction(*fl), RationalFunction(*fm)};
        return res;
    }

    res.kind = CertifyKind::sampled;
    return res;
}

/// v-coordinate of the edge of regression on the ruling at u:
/// v = (u - M(u)) / (Lambda(u) - M(u)).
inline double edge_parameter(const Certificate& cert, double u) {
    const double l = cert.lambda_fn.eval(u);
    const double m = cert.m_fn.eval(u);
    const double den = l - m;
    if (std::abs(den) < kPoleTolerance) throw std::domain_error("edge_parameter: Lambda(u) = M(u)");
    return (u - m) / den;
}

/// Edge of regression of a constant-certificate patch, as the degree n+1 curve
/// obtained by integrating r'(u) = (n+1)/(Lambda - M) (d(u) - c(u)).
inline BezierCurve edge_curve(const DevelopablePatch& patch) {
    if (!patch.certificate) throw std::invalid_argument("edge_curve: patch has no certificate");
    const Certificate& cert = *patch.certificate;
    if (!cert.is_constant())
        throw std::invalid_argument("edge_curve: certificate is not constant; use edge_evaluate");
    const double l = cert.lambda_fn.constant_value();
    const double m = cert.m_fn.constant_value();
    if (std::abs(l - m) < kPoleTolerance) throw std::domain_error("edge_curve: Lambda = M (no edge)");

    const int n = patch.c.degree();
    std::vector<Vec3> r(static_cast<std::size_t>(n) + 2);
    r[0] = patch.c.points[0] - (m / (l - m)) * (patch.d.points[0] - patch.c.points[0]);
    for (int k = 0; k <= n; ++k)
        r[static_cast<std::size_t>(k) + 1] = r[k] + (patch.d.points[k] - patch.c.points[k]) / (l - m);
    return BezierCurve{std::move(r)};
}

/// Point of the edge of regression on the ruling at u: b(u, edge_parameter(u)).
inline Point3 edge_evaluate(const DevelopablePatch& patch, const Certificate& cert, double u) {
    return surface_point(patch, u, edge_parameter(cert, u));
}

inline Point3 edge_evaluate(const DevelopablePatch& patch, double u) {
    if (!patch.certificate) throw std::invalid_argument("edge_evaluate: patch has no certificate");
    return edge_evaluate(patch, *patch.certificate, u);
}

/// Maximal u-subintervals of u_range on which the edge parameter lands inside
/// v_range. Located by dense sampling with bisection refinement of the
/// boundaries down to 1e-10.
inline std::vector<Interval> singular_interval(const Certificate& cert, Interval u_range, Interval v_range) {
    const auto inside = [&](double u) -> bool {
        double v;
        try {
            v = edge_parameter(cert, u);
        } catch (const std::domain_error&) {
            return false;  // pole: the edge escapes to infinity here
        }
        return v >= v_range.lo && v <= v_range.hi;
    };

    constexpr int kGrid = 2048;
    constexpr double kRefine = 1e-10;
    const double span = u_range.hi - u_range.lo;
    if (span <= 0.0) return {};

    const auto refine = [&](double a, double b) {
        // invariant: inside(a) != inside(b)
        const bool ia = inside(a);
        while (b - a > kRefine) {
            const double mid = 0.5 * (a + b);
            if (inside(mid) == ia)
                a = mid;
            else
                b = mid;
        }
        return 0.5 * (a + b);
    };

    std::vector<Interval> out;
    bool open = false;
    double start = 0.0;
    bool prev = inside(u_range.lo);
    if (prev) {
        open = true;
        start = u_range.lo;
    }
    for (int k = 1; k <= kGrid; ++k) {
        const double u = u_range.lo + span * static_cast<double>(k) / kGrid;
        const bool cur = inside(u);
        if (cur != prev) {
            const double boundary = refine(u_range.lo + span * static_cast<double>(k - 1) / kGrid, u);
            if (cur) {
                open = true;
                start = boundary;
            } else {
                out.push_back(Interval{start, boundary});
                open = false;
            }
            prev = cur;
        }
    }
    if (open) out.push_back(Interval{start, u_range.hi});
    return out;
}

namespace detail {

// Least-squares point closest to all sampled ruling lines; used to detect
// cones whose penultimate lines are parallel and therefore carry no (Lambda, M)
// description (the scaled-copy subcase).
inline std::optional<std::pair<Point3, double>> ruling_concurrency_point(const DevelopablePatch& p,
                                                                         int samples, double width_gate) {
    std::vector<std::vector<double>> rows;
    std::vector<double> rhs;
    std::vector<std::pair<Point3, Vec3>> lines;
    for (int k = 0; k < samples; ++k) {
        const double u = open_grid(k, samples);
        const Point3 base = eval_point(p.c, u);
        Vec3 dir = eval_point(p.d, u) - base;
        const double len = norm(dir);
        if (len <= width_gate) continue;
        dir /= len;
        lines.emplace_back(base, dir);
        const double dx = dir.x, dy = dir.y, dz = dir.z;
        const double proj[3][3] = {{1.0 - dx * dx, -dx * dy, -dx * dz},
                                   {-dy * dx, 1.0 - dy * dy, -dy * dz},
                                   {-dz * dx, -dz * dy, 1.0 - dz * dz}};
        for (int r = 0; r < 3; ++r) {
            rows.push_back({proj[r][0], proj[r][1], proj[r][2]});
            rhs.push_back(proj[r][0] * base.x + proj[r][1] * base.y + proj[r][2] * base.z);
        }
    }
    if (lines.size() < 2) return std::nullopt;
    const auto sol = least_squares(std::move(rows), std::move(rhs));
    if (!sol) return std::nullopt;
    const Point3 apex{(*sol)[0], (*sol)[1], (*sol)[2]};
    double worst = 0.0;
    for (const auto& [base, dir] : lines) {
        const Vec3 rel = apex - base;
        worst = std::max(worst, norm(rel - dot(rel, dir) * dir));
    }
    return std::make_pair(apex, worst);
}

inline bool control_points_coplanar(const std::vector<Vec3>& pts, double tol, double diameter) {
    if (pts.size() <= 3) return true;
    Vec3 centroid{};
    for (const Vec3& p : pts) centroid += p;
    centroid /= static_cast<double>(pts.size());

    // span directions: farthest point, then farthest from that line
    Vec3 e1{};
    double best = 0.0;
    for (const Vec3& p : pts) {
        const double d = norm(p - centroid);
        if (d > best) {
            best = d;
            e1 = p - centroid;
        }
    }
    if (best <= tol * std::max(1.0, diameter)) return true;  // all points coincide
    Vec3 nrm{};
    best = 0.0;
    for (const Vec3& p : pts) {
        const Vec3 c = cross(e1, p - centroid);
        const double d = norm(c);
        if (d > best) {
            best = d;
            nrm = c;
        }
    }
    if (best == 0.0) return true;  // collinear
    nrm /= norm(nrm);
    double worst = 0.0;
    for (const Vec3& p : pts) worst = std::max(worst, std::abs(dot(p - centroid, nrm)));
    return worst <= tol * std::max(1.0, diameter);
}

}  // namespace detail

/// Classification of a developable patch: planar (coplanar control net),
/// cylinder (parallel rulings), cone (the edge of regression collapses to one
/// point, the vertex), tangent surface otherwise. Requires a developable input.
inline SurfaceClass classify(const DevelopablePatch& patch, double tol) {
    constexpr int kSamples = 33;
    double dev = 0.0;
    for (int k = 0; k < kSamples; ++k) dev = std::max(dev, developability_residual_at(patch, open_grid(k, kSamples)));
    if (dev > std::max(tol, 1e-9)) throw std::invalid_argument("classify: patch is not developable");

    const double diameter = patch_diameter(patch);

    std::vector<Vec3> all = patch.c.points;
    all.insert(all.end(), patch.d.points.begin(), patch.d.points.end());
    if (detail::control_points_coplanar(all, tol, diameter))
        return SurfaceClass{SurfaceTag::planar, std::nullopt, 0.0};

    // parallel rulings: compare the nonzero control vectors of v(u)
    {
        const BezierCurve v = ruling_curve(patch);
        const double width_gate = tol * std::max(1.0, diameter);
        Vec3 ref{};
        bool have_ref = false;
        bool parallel = true;
        bool any = false;
        for (const Vec3& w : v.points) {
            if (norm(w) <= width_gate) continue;
            any = true;
            if (!have_ref) {
                ref = w;
                have_ref = true;
                continue;
            }
            if (norm(cross(ref, w)) > tol * norm(ref) * norm(w)) {
                parallel = false;
                break;
            }
        }
        if (!any) return SurfaceClass{SurfaceTag::planar, std::nullopt, 0.0};  // zero-width patch
        if (parallel) return SurfaceClass{SurfaceTag::cylinder, std::nullopt, 0.0};
    }

    // cone test: edge points constant across the rulings. When the penultimate
    // lines are parallel (the scaled-copy cone subcase has no (Lambda, M)
    // description) fall back to the geometric concurrency of the rulings.
    std::vector<Point3> edge_pts;
    if (patch.certificate) {
        try {
            for (int k = 0; k < kSamples; ++k)
                edge_pts.push_back(edge_evaluate(patch, *patch.certificate, open_grid(k, kSamples)));
        } catch (const std::domain_error&) {
            edge_pts.clear();
        }
    } else {
        const CertifyResult cr = certify(patch, kSamples, std::max(tol, 1e-9));
        if (cr.kind == CertifyKind::not_developable)
            throw std::invalid_argument("classify: patch is not developable");
        for (const auto& s : cr.samples) {
            if (s.parallel || std::abs(s.lambda - s.m) < kPoleTolerance) continue;
            edge_pts.push_back(surface_point(patch, s.u, (s.u - s.m) / (s.lambda - s.m)));
        }
        if (edge_pts.empty() && cr.kind == CertifyKind::lambda_equals_m) {
            const auto apex =
                detail::ruling_concurrency_point(patch, kSamples, tol * std::max(1.0, diameter));
            if (apex && apex->second <= tol * std::max(1.0, diameter))
                return SurfaceClass{SurfaceTag::cone, apex->first, apex->second};
            return SurfaceClass{SurfaceTag::cylinder, std::nullopt, 0.0};
        }
    }
    if (!edge_pts.empty()) {
        Point3 vertex{};
        for (const Point3& e : edge_pts) vertex += e;
        vertex /= static_cast<double>(edge_pts.size());
        double spread = 0.0;
        for (const Point3& e : edge_pts) spread = std::max(spread, norm(e - vertex));
        if (spread <= tol * std::max(1.0, diameter))
            return SurfaceClass{SurfaceTag::cone, vertex, spread};
    }

    return SurfaceClass{SurfaceTag::tangent, std::nullopt, 0.0};
}

}  // namespace devsurf
