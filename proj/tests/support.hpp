#pragma once

#include <random>
#include <vector>

#include <devsurf/devsurf.hpp>

namespace testsupport {

using namespace devsurf;

inline BezierCurve random_curve(std::mt19937& rng, int degree, double lo = -5.0, double hi = 5.0) {
    std::uniform_real_distribution<double> U(lo, hi);
    std::vector<Vec3> pts(static_cast<std::size_t>(degree) + 1);
    for (Vec3& p : pts) p = Vec3{U(rng), U(rng), U(rng)};
    return BezierCurve{std::move(pts)};
}

struct RandomAumann {
    DevelopablePatch patch;
    double lambda = 0.0;
    double m = 0.0;
};

// Degrees 2..6, control points in [-5,5]^3, Lambda and M in [-3,3] with
// |Lambda - M| > 0.2 and |M| > 0.05.
inline RandomAumann random_aumann(std::mt19937& rng) {
    std::uniform_int_distribution<int> D(2, 6);
    std::uniform_real_distribution<double> LM(-3.0, 3.0);
    std::uniform_real_distribution<double> U(-5.0, 5.0);
    const int n = D(rng);
    double l = 0.0, m = 0.0;
    do {
        l = LM(rng);
        m = LM(rng);
    } while (std::abs(l - m) <= 0.2 || std::abs(m) <= 0.05);
    const BezierCurve c = random_curve(rng, n);
    const Point3 d0{U(rng), U(rng), U(rng)};
    return RandomAumann{aumann_construct(c, d0, l, m), l, m};
}

inline DevelopablePatch perturbed(const DevelopablePatch& p, std::mt19937& rng, double rel = 1e-3) {
    const double eps = rel * std::max(patch_diameter(p), 1.0);
    std::uniform_real_distribution<double> U(-eps, eps);
    auto jiggle = [&](const BezierCurve& c) {
        std::vector<Vec3> pts = c.points;
        for (Vec3& q : pts) q += Vec3{U(rng), U(rng), U(rng)};
        return BezierCurve{std::move(pts)};
    };
    return DevelopablePatch{jiggle(p.c), jiggle(p.d), std::nullopt};
}

// Independent Bernstein-sum evaluation sum_i c_i C(n,i) u^i (1-u)^(n-i).
inline Point3 bernstein_sum(const BezierCurve& c, double u) {
    const int n = c.degree();
    Point3 acc{};
    for (int i = 0; i <= n; ++i)
        acc += binomial(n, i) * std::pow(u, i) * std::pow(1.0 - u, n - i) * c.points[static_cast<std::size_t>(i)];
    return acc;
}

// Residual of c'(u) - lambda(u) v(u) - mu(u) v'(u) for a certified patch.
inline double ode_residual(const DevelopablePatch& p, const LambdaMu& lm, double u) {
    const BezierCurve v = ruling_curve(p);
    const Vector3 r = derivative(p.c, u) - lm.lambda.eval(u) * eval_point(v, u) - lm.mu.eval(u) * derivative(v, u);
    return norm(r);
}

}  // namespace testsupport
