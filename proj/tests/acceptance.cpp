// Acceptance suite: every criterion prints one PASS/FAIL line with its worst
// observed figure against the pinned tolerance. The CLI end-to-end criterion
// drives the real binary, whose path arrives as argv[1].

#include <unistd.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <devsurf/cli.hpp>
#include <devsurf/devsurf.hpp>

using namespace devsurf;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int index, bool pass, const std::string& label, const std::string& detail) {
    std::printf("[%d/7] %s  %s (%s)\n", index, pass ? "PASS" : "FAIL", label.c_str(), detail.c_str());
    if (!pass) ++g_failures;
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

BezierCurve random_curve(std::mt19937& rng, int degree, double lo = -5.0, double hi = 5.0) {
    std::uniform_real_distribution<double> U(lo, hi);
    std::vector<Vec3> pts(static_cast<std::size_t>(degree) + 1);
    for (Vec3& p : pts) p = Vec3{U(rng), U(rng), U(rng)};
    return BezierCurve{std::move(pts)};
}

struct RandomAumann {
    DevelopablePatch patch;
    double lambda;
    double m;
};

RandomAumann random_aumann(std::mt19937& rng) {
    std::uniform_int_distribution<int> D(2, 6);
    std::uniform_real_distribution<double> LM(-3.0, 3.0);
    std::uniform_real_distribution<double> U(-5.0, 5.0);
    const int n = D(rng);
    double l, m;
    do {
        l = LM(rng);
        m = LM(rng);
    } while (std::abs(l - m) <= 0.2 || std::abs(m) <= 0.05);
    return RandomAumann{aumann_construct(random_curve(rng, n), Point3{U(rng), U(rng), U(rng)}, l, m), l, m};
}

// 1. Random cellwise constructions are developable and re-certifiable.
void criterion1() {
    std::mt19937 rng(20240601);
    double worst_residual = 0.0, worst_recovery = 0.0;
    bool ok = true;
    for (int trial = 0; trial < 100; ++trial) {
        const RandomAumann ra = random_aumann(rng);
        worst_residual = std::max(worst_residual, developability_residual(ra.patch, 33).max_residual);
        DevelopablePatch bare = ra.patch;
        bare.certificate.reset();
        const CertifyResult cr = certify(bare, 33, 1e-6);
        if (cr.kind != CertifyKind::constant || !cr.certificate) {
            ok = false;
            continue;
        }
        worst_recovery = std::max({worst_recovery,
                                   std::abs(cr.certificate->lambda_fn.constant_value() - ra.lambda),
                                   std::abs(cr.certificate->m_fn.constant_value() - ra.m)});
    }
    ok = ok && worst_residual < 1e-9 && worst_recovery < 1e-8;
    report(1, ok, "cellwise constructions: developability and certificate recovery",
           "max residual " + fmt(worst_residual) + ", max recovery error " + fmt(worst_recovery));
}

// 2. Tangent-surface patches out of an edge curve, exact example plus round trips.
void criterion2() {
    bool ok = true;
    double worst_example = 0.0;

    const BezierCurve r{{Vec3{0, 0, 0}, Vec3{1.0 / 3, 0, 0}, Vec3{2.0 / 3, 1.0 / 3, 0}, Vec3{1, 1, 1}}};
    const DevelopablePatch p = from_edge_of_regression(r, 0.0, 1.0 / 3.0);
    const std::array<Vec3, 3> expect_c{Vec3{0, 0, 0}, Vec3{1.0 / 3, 0, 0}, Vec3{2.0 / 3, 1.0 / 3, 0}};
    const std::array<Vec3, 3> expect_d{Vec3{1.0 / 3, 0, 0}, Vec3{2.0 / 3, 1.0 / 3, 0}, Vec3{1, 1, 1}};
    for (int i = 0; i < 3; ++i) {
        worst_example = std::max(worst_example, distance(p.c.points[static_cast<std::size_t>(i)], expect_c[i]));
        worst_example = std::max(worst_example, distance(p.d.points[static_cast<std::size_t>(i)], expect_d[i]));
    }
    worst_example = std::max(worst_example, std::abs(p.certificate->lambda_fn.constant_value() - 1.0));
    worst_example = std::max(worst_example, std::abs(p.certificate->m_fn.constant_value() - 0.0));
    ok = ok && worst_example < 1e-12;

    double worst_edge = 0.0;
    const BezierCurve back = edge_curve(p);
    for (int k = 0; k < 101; ++k) {
        const double u = open_grid(k, 101);
        worst_edge = std::max(worst_edge, distance(eval_point(back, u), eval_point(r, u)));
    }
    ok = ok && worst_edge < 1e-10;

    std::mt19937 rng(20240602);
    std::uniform_real_distribution<double> B(-1.0, 1.0);
    double worst_round = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + trial % 4;
        const BezierCurve edge = random_curve(rng, n + 1);
        double b1 = B(rng), b2 = B(rng);
        if (std::abs(b1 - b2) < 0.2) b2 = b1 + 0.6;
        const DevelopablePatch q = from_edge_of_regression(edge, b1, b2);
        const BezierCurve rec = edge_curve(q);
        double scale = 1.0;
        for (const Vec3& pt : edge.points) scale = std::max(scale, norm(pt));
        for (std::size_t i = 0; i < edge.points.size(); ++i)
            worst_round = std::max(worst_round, distance(rec.points[i], edge.points[i]) / scale);
    }
    ok = ok && worst_round < 1e-8;

    report(2, ok, "edge-curve construction: worked example and random round trips",
           "example " + fmt(worst_example) + ", edge replay " + fmt(worst_edge) + ", round trip " +
               fmt(worst_round));
}

// 3. Worked example: integrated edge polygon, degeneracy along the edge, and
//    the singular interval.
void criterion3() {
    const DevelopablePatch p = aumann_construct(
        BezierCurve{{Vec3{0, 0, 0}, Vec3{1, 0, 0}, Vec3{2, 1, 0}}}, Point3{0, 0, 1}, 2.0, 0.5);

    double worst_polygon = 0.0;
    const BezierCurve r = edge_curve(p);
    const std::array<Vec3, 4> expect{Vec3{0, 0, -1.0 / 3}, Vec3{0, 0, 1.0 / 3}, Vec3{2, 0, -1.0 / 3},
                                     Vec3{2, 2, 1.0 / 3}};
    for (std::size_t i = 0; i < expect.size(); ++i)
        worst_polygon = std::max(worst_polygon, distance(r.points[i], expect[i]));

    double worst_degeneracy = 0.0;
    for (int k = 0; k < 33; ++k) {
        const double u = open_grid(k, 33);
        const double v = (u - 0.5) / 1.5;
        const auto [bu, bv] = surface_partials(p, u, v);
        worst_degeneracy =
            std::max(worst_degeneracy, norm(cross(bu, bv)) / (norm(bu) * norm(bv) + 1e-30));
    }

    const auto ivs = singular_interval(*p.certificate, Interval{0, 1}, Interval{0, 1});
    const bool interval_ok =
        ivs.size() == 1 && std::abs(ivs[0].lo - 0.5) < 1e-9 && std::abs(ivs[0].hi - 1.0) < 1e-9;

    const bool ok = worst_polygon < 1e-12 && worst_degeneracy < 1e-8 && interval_ok;
    report(3, ok, "worked example: edge polygon, edge degeneracy, singular interval",
           "polygon " + fmt(worst_polygon) + ", degeneracy " + fmt(worst_degeneracy) + ", intervals " +
               std::to_string(ivs.size()));
}

// 4. The four patch operations preserve the surface and map certificates.
void criterion4() {
    std::mt19937 rng(20240604);
    double worst_surface = 0.0, worst_coupling = 0.0, worst_prop3 = 0.0;
    bool ok = true;

    const Polynomial stretch = Polynomial::monomial({2.0, 1.0});     // h(u) = u + 2
    const Polynomial square = Polynomial::monomial({0.0, 0.0, 1.0});  // h(U) = U^2

    for (int trial = 0; trial < 50; ++trial) {
        // bounded-diameter certified patches keep the absolute 1e-9 gate meaningful
        RandomAumann ra = random_aumann(rng);
        while (patch_diameter(ra.patch) > 60.0) ra = random_aumann(rng);
        const DevelopablePatch& p = ra.patch;
        const int n = p.c.degree();

        struct Case {
            DevelopablePatch q;
            Correspondence corr;
        };
        std::vector<Case> cases;
        cases.push_back({restrict_u(p, 0.2, 0.7),
                         [](double t, double v) { return std::array<double, 2>{0.2 + 0.5 * t, v}; }});
        cases.push_back({restrict_v(p, 0.1, 0.6),
                         [](double u, double t) { return std::array<double, 2>{u, 0.1 + 0.5 * t}; }});
        cases.push_back({elevate_patch(p, 2), [](double u, double v) { return std::array<double, 2>{u, v}; }});
        cases.push_back({scale_rulings(p, stretch),
                         [](double u, double v) { return std::array<double, 2>{u, v * (u + 2.0)}; }});
        cases.push_back({reparametrize(p, square),
                         [](double U, double v) { return std::array<double, 2>{U * U, v}; }});

        for (const Case& cs : cases) {
            worst_surface =
                std::max(worst_surface, surfaces_equal(cs.q, p, cs.corr, 21, 21).max_residual);
            worst_coupling = std::max(worst_coupling, certificate_residual(cs.q, 33).max_residual);
        }

        // re-certified elevation must match the closed form ((n+m) L - m u)/n
        DevelopablePatch bare = cases[2].q;
        bare.certificate.reset();
        const CertifyResult cr = certify(bare, 33, 1e-6);
        if (!cr.certificate) {
            ok = false;
            continue;
        }
        const double nn = n, mm = 2.0;
        const auto expect_coeffs = [&](double constant) {
            return std::array<double, 2>{(nn + mm) * constant / nn, -mm / nn};
        };
        const auto coeff_error = [](const RationalFunction& f, const std::array<double, 2>& want) {
            double worst = std::abs(f.den().coeffs().back() - 1.0);
            for (std::size_t i = 0; i < 2; ++i) {
                const double have = i < f.num().coeffs().size() ? f.num().coeffs()[i] : 0.0;
                worst = std::max(worst, std::abs(have - want[i]));
            }
            return worst;
        };
        worst_prop3 = std::max({worst_prop3, coeff_error(cr.certificate->lambda_fn, expect_coeffs(ra.lambda)),
                                coeff_error(cr.certificate->m_fn, expect_coeffs(ra.m))});
    }

    ok = ok && worst_surface < 1e-9 && worst_coupling < 1e-8 && worst_prop3 < 1e-8;
    report(4, ok, "patch operations: surface identity, mapped certificates, elevation law",
           "surface " + fmt(worst_surface) + ", coupling " + fmt(worst_coupling) + ", elevation fit " +
               fmt(worst_prop3));
}

// 5. Family constructors satisfy their defining invariants.
void criterion5() {
    std::mt19937 rng(20240605);
    std::uniform_real_distribution<double> U(-5.0, 5.0);
    std::uniform_real_distribution<double> P(0.2, 1.5);
    bool ok = true;
    double worst_normal = 0.0, worst_vertex = 0.0, worst_vedge = 0.0, worst_f4 = 0.0, worst_f4m = 0.0;

    for (int trial = 0; trial < 25; ++trial) {
        const int n = 2 + trial % 4;

        {  // cylinder with positive nonconstant f
            std::vector<double> fc(static_cast<std::size_t>(1 + trial % n) + 1);
            for (double& c : fc) c = P(rng);
            const DevelopablePatch cyl =
                cylinder(random_curve(rng, n), Vector3{U(rng), U(rng), 1.0 + P(rng)}, Polynomial::monomial(fc));
            if (certify(cyl, 33, 1e-6).kind != CertifyKind::lambda_equals_m) ok = false;
            worst_normal = std::max(worst_normal, normal_constancy(cyl, 17, 7).max_residual);
        }

        {  // cone with positive linear factor
            const Point3 vertex{U(rng), U(rng), U(rng)};
            const DevelopablePatch cn = cone(random_curve(rng, n), vertex, Polynomial::monomial({P(rng), P(rng)}));
            for (int k = 0; k < 33; ++k) {
                const double u = open_grid(k, 33);
                const Vector3 dir = eval_point(cn.d, u) - eval_point(cn.c, u);
                const Vector3 rel = vertex - eval_point(cn.c, u);
                worst_vertex = std::max(worst_vertex, norm(cross(rel, dir)) / norm(dir));
            }
        }

        {  // tangent patch with positive linear factor
            const DevelopablePatch tp = tangent_patch(random_curve(rng, n), Polynomial::monomial({P(rng), P(rng)}));
            for (int k = 0; k < 33; ++k)
                worst_vedge = std::max(worst_vedge, std::abs(edge_parameter(*tp.certificate, open_grid(k, 33))));
        }

        {  // family4
            std::uniform_real_distribution<double> AB(-1.0, 1.0);
            double a = AB(rng), b = AB(rng);
            if (std::abs(a - b) < 0.3) b = a + 0.8;
            const double amp = (trial % 2 ? 1.0 : -1.0) * (0.5 + P(rng));
            const DevelopablePatch f4 =
                family4(random_curve(rng, n - 1), a, b, amp, Vector3{U(rng), U(rng), U(rng)});
            worst_f4 = std::max(worst_f4, developability_residual(f4, 33).max_residual);
            DevelopablePatch bare = f4;
            bare.certificate.reset();
            const CertifyResult cr = certify(bare, 33, 1e-6);
            if (!cr.certificate || !cr.certificate->m_fn.is_constant())
                ok = false;
            else
                worst_f4m = std::max(worst_f4m, std::abs(cr.certificate->m_fn.constant_value() - a));
        }
    }

    ok = ok && worst_normal < 1e-8 && worst_vertex < 1e-9 && worst_vedge < 1e-12 && worst_f4 < 1e-9 &&
         worst_f4m < 1e-8;
    report(5, ok, "families: cylinder, cone, tangent, rational-edge ruling fields",
           "normals " + fmt(worst_normal) + ", vertex " + fmt(worst_vertex) + ", v_edge " + fmt(worst_vedge) +
               ", field residual " + fmt(worst_f4) + ", M recovery " + fmt(worst_f4m));
}

// 6. Blossom algebra, 1000 randomized trials per property.
void criterion6() {
    std::mt19937 rng(20240606);
    std::uniform_real_distribution<double> U(-1.0, 2.0);
    std::uniform_int_distribution<int> D(2, 6);
    double worst_sym = 0.0, worst_affine = 0.0, worst_diag = 0.0, worst_end = 0.0;

    for (int trial = 0; trial < 1000; ++trial) {
        const int n = D(rng);
        const BezierCurve c = random_curve(rng, n);
        std::vector<double> args(static_cast<std::size_t>(n));
        for (double& a : args) a = U(rng);

        const Point3 ref = blossom(c, args);
        const double scale = std::max(1.0, norm(ref));
        std::vector<double> shuffled = args;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        worst_sym = std::max(worst_sym, distance(blossom(c, shuffled), ref) / scale);

        const std::size_t slot = static_cast<std::size_t>(trial) % args.size();
        const double t = U(rng), x = U(rng), y = U(rng);
        args[slot] = x;
        const Point3 px = blossom(c, args);
        args[slot] = y;
        const Point3 py = blossom(c, args);
        args[slot] = (1.0 - t) * x + t * y;
        const Point3 pm = blossom(c, args);
        worst_affine =
            std::max(worst_affine, distance(pm, lerp(px, py, t)) / std::max(1.0, norm(pm)));

        const double u = U(rng);
        const std::vector<double> diag(static_cast<std::size_t>(n), u);
        const Point3 at = eval_point(c, u);
        worst_diag = std::max(worst_diag, distance(blossom(c, diag), at) / std::max(1.0, norm(at)));

        worst_end = std::max({worst_end, distance(eval_point(c, 0.0), c.points.front()),
                              distance(eval_point(c, 1.0), c.points.back())});
    }

    const bool ok = worst_sym < 1e-12 && worst_affine < 1e-12 && worst_diag < 1e-12 && worst_end < 1e-12;
    report(6, ok, "blossom algebra: symmetry, multi-affinity, diagonal, endpoints",
           "sym " + fmt(worst_sym) + ", affine " + fmt(worst_affine) + ", diag " + fmt(worst_diag) +
               ", ends " + fmt(worst_end));
}

// 7. CLI end to end, against the real binary.
void criterion7(const std::string& cli_path) {
    if (cli_path.empty()) {
        report(7, false, "CLI pipeline", "no CLI binary path supplied");
        return;
    }
    const fs::path dir = fs::temp_directory_path() / ("devsurf-acceptance-" + std::to_string(::getpid()));
    fs::create_directories(dir);
    const auto file = [&](const char* name) { return (dir / name).string(); };
    const auto shell = [&](const std::string& cmd) { return std::system(cmd.c_str()); };
    const auto slurp = [&](const std::string& path) {
        std::ifstream f(path);
        std::ostringstream ss;
        ss << f.rdbuf();
        return ss.str();
    };

    {
        std::ofstream f(file("c.json"));
        f << R"({"version": 1, "entity": "curve",
                 "curve": {"degree": 2, "points": [[0,0,0],[1,0,0],[2,1,0]]}})";
    }

    bool ok = true;
    std::string detail;
    ok = ok && shell(cli_path + " construct aumann --input " + file("c.json") +
                     " --d0 0,0,1 --lambda 2 --m 0.5 --output " + file("p.json")) == 0;
    ok = ok && shell(cli_path + " check --input " + file("p.json") + " --output " + file("report.json")) == 0;
    ok = ok && shell(cli_path + " singular --input " + file("p.json") + " > " + file("singular.txt")) == 0;
    ok = ok && shell(cli_path + " edge --input " + file("p.json") + " --output " + file("edge.json")) == 0;
    ok = ok && shell(cli_path + " mesh --input " + file("p.json") + " --nu 33 --nv 9 --output " +
                     file("mesh.obj")) == 0;
    if (!ok) detail = "a pipeline stage exited nonzero";

    if (ok) {
        double lo = -1, hi = -1;
        const std::string singular = slurp(file("singular.txt"));
        if (std::sscanf(singular.c_str(), "[%lf, %lf]", &lo, &hi) != 2 || std::abs(lo - 0.5) > 1e-9 ||
            std::abs(hi - 1.0) > 1e-9) {
            ok = false;
            detail = "singular interval mismatch: " + singular;
        }
    }
    if (ok) {
        int vcount = 0, fcount = 0;
        std::istringstream is(slurp(file("mesh.obj")));
        for (std::string line; std::getline(is, line);) {
            if (line.rfind("v ", 0) == 0) ++vcount;
            if (line.rfind("f ", 0) == 0) ++fcount;
        }
        if (vcount != 297 || fcount != 256) {
            ok = false;
            detail = "mesh counts " + std::to_string(vcount) + "/" + std::to_string(fcount);
        } else {
            detail = "exit codes 0, interval [0.5, 1], mesh 297 vertices / 256 faces";
        }
    }

    std::error_code ec;
    fs::remove_all(dir, ec);
    report(7, ok, "CLI pipeline: construct, check, singular, edge, mesh", detail);
}

}  // namespace

int main(int argc, char** argv) {
    const std::string cli_path = argc > 1 ? argv[1] : "";
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7(cli_path);
    if (g_failures > 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}
