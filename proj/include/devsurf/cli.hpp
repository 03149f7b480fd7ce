#pragma once

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "families.hpp"
#include "io.hpp"
#include "patch_ops.hpp"
#include "verify.hpp"

namespace devsurf::cli {

namespace detail {

inline double default_tolerance() {
    if (const char* env = std::getenv("DEVSURF_TOL")) {
        try {
            return std::stod(env);
        } catch (const std::exception&) {
            // fall through to the default
        }
    }
    return kDefaultCheckTolerance;
}

inline std::string read_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open input file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

inline void emit(const std::string& text, const std::string& output_path, std::ostream& out) {
    if (output_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(output_path);
    if (!f) throw std::invalid_argument("cannot open output file: " + output_path);
    f << text;
}

inline Vec3 parse_triplet(const std::string& s) {
    double x = 0, y = 0, z = 0;
    char tail = 0;
    if (std::sscanf(s.c_str(), "%lf,%lf,%lf%c", &x, &y, &z, &tail) != 3)
        throw std::invalid_argument("expected three comma-separated numbers, got '" + s + "'");
    return Vec3{x, y, z};
}

inline Polynomial parse_coeffs(const std::string& s) {
    std::vector<double> c;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            c.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw std::invalid_argument("expected comma-separated coefficients, got '" + s + "'");
        }
    }
    if (c.empty()) throw std::invalid_argument("expected at least one coefficient");
    return Polynomial::monomial(std::move(c));
}

inline BezierCurve load_curve(const std::string& path) {
    const Document doc = parse(read_file(path));
    if (!std::holds_alternative<BezierCurve>(doc.payload))
        throw std::invalid_argument(path + ": expected a curve document");
    return std::get<BezierCurve>(doc.payload);
}

inline DevelopablePatch load_patch(const std::string& path) {
    const Document doc = parse(read_file(path));
    if (!std::holds_alternative<DevelopablePatch>(doc.payload))
        throw std::invalid_argument(path + ": expected a patch document");
    return std::get<DevelopablePatch>(doc.payload);
}

inline Certificate require_certificate(const DevelopablePatch& patch, double tol) {
    if (patch.certificate) return *patch.certificate;
    const CertifyResult r = certify(patch, 33, std::max(tol, 1e-9));
    if (r.certificate) return *r.certificate;
    if (r.kind == CertifyKind::not_developable)
        throw std::domain_error("patch is not developable");
    throw std::domain_error("no closed-form certificate could be recovered for this patch");
}

inline std::string format_interval(const Interval& iv) {
    // 9 significant digits: the boundaries are only refined to 1e-10
    char buf[64];
    std::snprintf(buf, sizeof buf, "[%.9g, %.9g]", iv.lo, iv.hi);
    return buf;
}

}  // namespace detail

/// Subcommand dispatch. Returns 0 on success or a passing check, 2 on a failed
/// check, 1 on usage or schema errors.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bezier developable surface kernel"};
    app.name("devsurf");
    app.require_subcommand(1);
    const double tol = detail::default_tolerance();

    std::string input, output;

    // construct
    auto* construct = app.add_subcommand("construct", "Build a developable patch from a curve");
    construct->require_subcommand(1);
    struct {
        std::string d0, w, f;
        std::string vertex;
        double lambda = 0, m = 0, a = 0, b = 0, amp = 1, b1 = 0, b2 = 0;
    } cargs;

    auto* aumann = construct->add_subcommand("aumann", "Cellwise net from constants Lambda, M");
    aumann->add_option("--input", input, "boundary curve document")->required();
    aumann->add_option("--d0", cargs.d0, "free control point x,y,z")->required();
    aumann->add_option("--lambda", cargs.lambda, "constant Lambda")->required();
    aumann->add_option("--m", cargs.m, "constant M")->required();
    aumann->add_option("--output", output, "output path (default stdout)");

    auto* cyl = construct->add_subcommand("cylinder", "Rulings parallel to a fixed direction");
    cyl->add_option("--input", input)->required();
    cyl->add_option("--w", cargs.w, "direction x,y,z")->required();
    cyl->add_option("--f", cargs.f, "scalar factor, ascending coefficients")->required();
    cyl->add_option("--output", output);

    auto* con = construct->add_subcommand("cone", "Rulings through a vertex");
    con->add_option("--input", input)->required();
    con->add_option("--vertex", cargs.vertex, "vertex x,y,z")->required();
    con->add_option("--f", cargs.f, "scalar factor, ascending coefficients")->required();
    con->add_option("--output", output);

    auto* tan = construct->add_subcommand("tangent", "Tangent surface patch of the curve");
    tan->add_option("--input", input)->required();
    tan->add_option("--f", cargs.f, "linear factor, ascending coefficients")->required();
    tan->add_option("--output", output);

    auto* fedge = construct->add_subcommand("from-edge", "Patch of the tangent surface of an edge curve");
    fedge->add_option("--input", input, "edge-of-regression curve document")->required();
    fedge->add_option("--b1", cargs.b1)->required();
    fedge->add_option("--b2", cargs.b2)->required();
    fedge->add_option("--output", output);

    auto* fam4 = construct->add_subcommand("family4", "Ruling field with a rational edge of regression");
    fam4->add_option("--input", input)->required();
    fam4->add_option("--a", cargs.a)->required();
    fam4->add_option("--b", cargs.b)->required();
    fam4->add_option("--A", cargs.amp)->required();
    fam4->add_option("--w", cargs.w, "homogeneous direction x,y,z")->required();
    fam4->add_option("--output", output);

    // op
    auto* op = app.add_subcommand("op", "Transform a patch");
    op->require_subcommand(1);
    struct {
        int m = 1;
        double a = 0, b = 1;
        std::string h;
    } oargs;

    auto* elev = op->add_subcommand("elevate", "Formal degree elevation");
    elev->add_option("--input", input)->required();
    elev->add_option("--m", oargs.m, "elevation steps")->required();
    elev->add_option("--output", output);

    auto* ru = op->add_subcommand("restrict-u", "Restrict the curve parameter to [a,b]");
    ru->add_option("--input", input)->required();
    ru->add_option("--a", oargs.a)->required();
    ru->add_option("--b", oargs.b)->required();
    ru->add_option("--output", output);

    auto* rv = op->add_subcommand("restrict-v", "Restrict the ruling parameter to [a,b]");
    rv->add_option("--input", input)->required();
    rv->add_option("--a", oargs.a)->required();
    rv->add_option("--b", oargs.b)->required();
    rv->add_option("--output", output);

    auto* sr = op->add_subcommand("scale-rulings", "Rescale the rulings by a polynomial factor");
    sr->set_help_flag("--help", "print help");  // frees -h for the factor option
    sr->add_option("--input", input)->required();
    sr->add_option("--h", oargs.h, "factor, ascending coefficients")->required();
    sr->add_option("--output", output);

    auto* rp = op->add_subcommand("reparam", "Polynomial change of the curve parameter");
    rp->set_help_flag("--help", "print help");
    rp->add_option("--input", input)->required();
    rp->add_option("--h", oargs.h, "substitution, ascending coefficients")->required();
    rp->add_option("--output", output);

    // check / edge / classify / singular / mesh
    int samples = 33;
    auto* check = app.add_subcommand("check", "Run the developability oracles");
    check->add_option("--input", input)->required();
    check->add_option("--samples", samples, "samples per oracle (default 33)");
    check->add_option("--output", output);

    int edge_samples = 101;
    auto* edge = app.add_subcommand("edge", "Edge of regression (curve or sampled polyline)");
    edge->add_option("--input", input)->required();
    edge->add_option("--samples", edge_samples, "polyline samples (default 101)");
    edge->add_option("--output", output);

    auto* cls = app.add_subcommand("classify", "Print the surface class");
    cls->add_option("--input", input)->required();

    struct {
        double u0 = 0, u1 = 1, v0 = 0, v1 = 1;
    } sargs;
    auto* sing = app.add_subcommand("singular", "u-intervals whose edge point lies inside the patch");
    sing->add_option("--input", input)->required();
    sing->add_option("--u0", sargs.u0);
    sing->add_option("--u1", sargs.u1);
    sing->add_option("--v0", sargs.v0);
    sing->add_option("--v1", sargs.v1);

    int nu = 33, nv = 9;
    auto* mesh = app.add_subcommand("mesh", "Tessellate to Wavefront OBJ");
    mesh->add_option("--input", input)->required();
    mesh->add_option("--nu", nu, "samples along u")->required();
    mesh->add_option("--nv", nv, "samples along v")->required();
    mesh->add_option("--output", output);

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("devsurf");
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "devsurf: " << e.what() << "\n";
        return 1;
    }

    try {
        if (construct->parsed()) {
            DevelopablePatch patch = [&] {
                if (aumann->parsed())
                    return aumann_construct(detail::load_curve(input), detail::parse_triplet(cargs.d0),
                                            cargs.lambda, cargs.m);
                if (cyl->parsed())
                    return cylinder(detail::load_curve(input), detail::parse_triplet(cargs.w),
                                    detail::parse_coeffs(cargs.f));
                if (con->parsed())
                    return cone(detail::load_curve(input), detail::parse_triplet(cargs.vertex),
                                detail::parse_coeffs(cargs.f));
                if (tan->parsed())
                    return tangent_patch(detail::load_curve(input), detail::parse_coeffs(cargs.f));
                if (fedge->parsed())
                    return from_edge_of_regression(detail::load_curve(input), cargs.b1, cargs.b2);
                return family4(detail::load_curve(input), cargs.a, cargs.b, cargs.amp,
                               detail::parse_triplet(cargs.w));
            }();
            detail::emit(serialize(Document{1, std::move(patch)}), output, out);
            return 0;
        }

        if (op->parsed()) {
            const DevelopablePatch patch = detail::load_patch(input);
            DevelopablePatch result = [&] {
                if (elev->parsed()) return elevate_patch(patch, oargs.m);
                if (ru->parsed()) return restrict_u(patch, oargs.a, oargs.b);
                if (rv->parsed()) return restrict_v(patch, oargs.a, oargs.b);
                if (sr->parsed()) return scale_rulings(patch, detail::parse_coeffs(oargs.h));
                return reparametrize(patch, detail::parse_coeffs(oargs.h));
            }();
            detail::emit(serialize(Document{1, std::move(result)}), output, out);
            return 0;
        }

        if (check->parsed()) {
            const DevelopablePatch patch = detail::load_patch(input);
            std::vector<CheckReport> reports;
            reports.push_back(developability_residual(patch, samples, tol));
            reports.push_back(penultimate_coplanarity(patch, samples, tol));
            if (patch.certificate) reports.push_back(certificate_residual(patch, samples, tol));
            bool all_pass = true;
            for (const CheckReport& r : reports) all_pass = all_pass && r.pass;
            detail::emit(serialize(Document{1, std::move(reports)}), output, out);
            return all_pass ? 0 : 2;
        }

        if (edge->parsed()) {
            const DevelopablePatch patch = detail::load_patch(input);
            const Certificate cert = detail::require_certificate(patch, tol);
            if ((cert.lambda_fn - cert.m_fn).is_zero())
                throw std::domain_error("Lambda = M: a cylinder has no edge of regression");
            if (cert.is_constant()) {
                DevelopablePatch certified = patch;
                certified.certificate = cert;
                detail::emit(serialize(Document{1, edge_curve(certified)}), output, out);
                return 0;
            }
            json params = json::array(), points = json::array();
            for (int k = 0; k < edge_samples; ++k) {
                const double u = open_grid(k, edge_samples);
                try {
                    const Point3 p = edge_evaluate(patch, cert, u);
                    params.push_back(u);
                    points.push_back(json::array({p.x, p.y, p.z}));
                } catch (const std::domain_error&) {
                    // pole: the edge escapes to infinity on this ruling
                }
            }
            json j{{"version", 1}, {"entity", "polyline"},
                   {"polyline", json{{"params", std::move(params)}, {"points", std::move(points)}}}};
            detail::emit(j.dump(2) + "\n", output, out);
            return 0;
        }

        if (cls->parsed()) {
            const SurfaceClass sc = classify(detail::load_patch(input), tol);
            switch (sc.tag) {
                case SurfaceTag::planar: out << "planar\n"; break;
                case SurfaceTag::cylinder: out << "cylinder\n"; break;
                case SurfaceTag::cone: {
                    char buf[128];
                    std::snprintf(buf, sizeof buf, "cone %.12g %.12g %.12g\n", sc.vertex->x, sc.vertex->y,
                                  sc.vertex->z);
                    out << buf;
                    break;
                }
                case SurfaceTag::tangent: out << "tangent\n"; break;
            }
            return 0;
        }

        if (sing->parsed()) {
            const DevelopablePatch patch = detail::load_patch(input);
            const Certificate cert = detail::require_certificate(patch, tol);
            const auto intervals =
                singular_interval(cert, Interval{sargs.u0, sargs.u1}, Interval{sargs.v0, sargs.v1});
            for (const Interval& iv : intervals) out << detail::format_interval(iv) << "\n";
            return 0;
        }

        if (mesh->parsed()) {
            const DevelopablePatch patch = detail::load_patch(input);
            detail::emit(export_obj(patch, nu, nv), output, out);
            return 0;
        }
    } catch (const ParseError& e) {
        err << "devsurf: schema error at " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        err << "devsurf: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "devsurf: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

}  // namespace devsurf::cli
