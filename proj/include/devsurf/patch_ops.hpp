#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "developable.hpp"

namespace devsurf {

/// Restrict the ruling parameter to v in [a,b]: boundary curves are blended
/// cellwise and the certificate maps affinely,
/// Lambda~ = b Lambda + (1-b) M, M~ = a Lambda + (1-a) M.
inline DevelopablePatch restrict_v(const DevelopablePatch& p, double a, double b) {
    if (a == b) throw std::invalid_argument("restrict_v: degenerate interval");
    std::vector<Vec3> nc(p.c.points.size()), nd(p.c.points.size());
    for (std::size_t i = 0; i < nc.size(); ++i) {
        nc[i] = lerp(p.c.points[i], p.d.points[i], a);
        nd[i] = lerp(p.c.points[i], p.d.points[i], b);
    }
    std::optional<Certificate> cert;
    if (p.certificate) {
        const auto& [L, M] = *p.certificate;
        cert = Certificate{b * L + (1.0 - b) * M, a * L + (1.0 - a) * M};
    }
    return DevelopablePatch{BezierCurve{std::move(nc)}, BezierCurve{std::move(nd)}, std::move(cert)};
}

/// Affine change of the curve parameter onto [a,b]. Non-constant certificates
/// are composed with the inner reparametrization u = (1-t)a + tb before the
/// affine map Lambda~ = (Lambda - a)/(b - a).
inline DevelopablePatch restrict_u(const DevelopablePatch& p, double a, double b) {
    if (a == b) throw std::invalid_argument("restrict_u: degenerate interval");
    std::optional<Certificate> cert;
    if (p.certificate) {
        const Polynomial inner = Polynomial::monomial({a, b - a});
        const RationalFunction av = RationalFunction::constant(a);
        const double inv = 1.0 / (b - a);
        cert = Certificate{(p.certificate->lambda_fn.compose_poly(inner) - av) * inv,
                           (p.certificate->m_fn.compose_poly(inner) - av) * inv};
    }
    return DevelopablePatch{restrict_curve(p.c, a, b), restrict_curve(p.d, a, b), std::move(cert)};
}

/// Formal degree elevation by m steps; the certificate picks up the linear
/// u-dependence Lambda^m = ((n+m) Lambda - m u) / n.
inline DevelopablePatch elevate_patch(const DevelopablePatch& p, int m) {
    if (m < 0) throw std::invalid_argument("elevate_patch: negative step count");
    const double n = static_cast<double>(p.c.degree());
    std::optional<Certificate> cert;
    if (p.certificate) {
        const RationalFunction mu = RationalFunction(Polynomial::monomial({0.0, static_cast<double>(m)}));
        const auto lift = [&](const RationalFunction& f) { return ((n + m) * f - mu) * (1.0 / n); };
        cert = Certificate{lift(p.certificate->lambda_fn), lift(p.certificate->m_fn)};
    }
    return DevelopablePatch{elevate_curve(p.c, m), elevate_curve(p.d, m), std::move(cert)};
}

/// Rescale the rulings by a polynomial factor h: d~ = h d + (1-h) c. The first
/// boundary curve is unchanged (formally elevated to degree n + deg h) and the
/// certificate maps through the coefficients of the developability equation.
inline DevelopablePatch scale_rulings(const DevelopablePatch& p, const Polynomial& h_in) {
    const Polynomial h = basis_convert(h_in, Polynomial::Basis::monomial);
    if (h.is_zero()) throw std::invalid_argument("scale_rulings: h is identically zero");
    const int m = h.degree();
    const int n = p.c.degree();

    const BezierCurve c_new = elevate_curve(p.c, m);
    const BezierCurve scaled = multiply_bernstein(basis_convert(h, Polynomial::Basis::bernstein, m),
                                                  ruling_curve(p));
    const BezierCurve d_new = add_curves(c_new, scaled);

    std::optional<Certificate> cert;
    if (p.certificate) {
        const auto& [L, M] = *p.certificate;
        const RationalFunction u = RationalFunction::variable();
        const RationalFunction hr{h};
        const RationalFunction hp{h.derivative()};
        const double nm = static_cast<double>(n + m);
        const RationalFunction m_minus_u = M - u;
        const RationalFunction denom = static_cast<double>(n) * hr - hp * m_minus_u;
        if (denom.is_zero())
            throw std::invalid_argument("scale_rulings: certificate denominator n h - h' (M - u) vanishes");
        cert = Certificate{u + (nm * hr * hr * (L - M) + nm * hr * m_minus_u) / denom,
                           u + (nm * hr * m_minus_u) / denom};
    }
    return DevelopablePatch{c_new, d_new, std::move(cert)};
}

/// Substitute u = h(t) in both boundary curves (degree becomes n * deg h).
/// h must be regular: h' may not vanish inside the parameter interval.
/// The certificate maps by
/// Lambda^(t) = m (Lambda(h(t)) - h(t)) / h'(t) + t, and likewise for M; this
/// legitimately introduces poles at boundary zeros of h', which is why the
/// numerical oracles sample open grids.
inline DevelopablePatch reparametrize(const DevelopablePatch& p, const Polynomial& h_in) {
    const Polynomial h = basis_convert(h_in, Polynomial::Basis::monomial);
    const int m = h.degree();
    if (m < 1) throw std::invalid_argument("reparametrize: h must be non-constant");
    const Polynomial hp = h.derivative();
    {
        constexpr int kProbe = 1025;
        double prev = hp.eval(open_grid(0, kProbe));
        double minabs = std::abs(prev);
        for (int k = 1; k < kProbe; ++k) {
            const double w = hp.eval(open_grid(k, kProbe));
            if (w == 0.0 || (w > 0.0) != (prev > 0.0))
                throw std::invalid_argument("reparametrize: h' vanishes inside the parameter interval");
            minabs = std::min(minabs, std::abs(w));
            prev = w;
        }
        if (minabs <= kTrimTolerance)
            throw std::invalid_argument("reparametrize: h' vanishes inside the parameter interval");
    }

    std::optional<Certificate> cert;
    if (p.certificate) {
        const RationalFunction t = RationalFunction::variable();
        const RationalFunction hr{h};
        const RationalFunction hpr{hp};
        const auto map = [&](const RationalFunction& f) {
            return static_cast<double>(m) * (f.compose_poly(h) - hr) / hpr + t;
        };
        cert = Certificate{map(p.certificate->lambda_fn), map(p.certificate->m_fn)};
    }
    return DevelopablePatch{compose_curve(p.c, h), compose_curve(p.d, h), std::move(cert)};
}

}  // namespace devsurf
