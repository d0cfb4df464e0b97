// Command-line driver: regular-polygon solver, admissible triples, rolling
// monodromy, and the polygon <-> dancing-pair correspondence.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "rolldance/bridge.hpp"
#include "rolldance/dancing.hpp"
#include "rolldance/errors.hpp"
#include "rolldance/io.hpp"
#include "rolldance/roll_coords.hpp"
#include "rolldance/rolling.hpp"

using namespace rolldance;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitNoSolution = 2;
constexpr int kExitDegenerate = 2;
constexpr int kExitDisagreement = 3;
constexpr int kExitNontrivial = 2;
constexpr int kExitNonGeneric = 4;

struct Globals {
    double tol = kDefaultTol;
    std::uint64_t seed = 1;
    bool json = false;
    std::string chart = "z";
};

std::string fmt_quat(const Quaternion& q) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "(%.12f, %.12f, %.12f, %.12f)", q.s(), q.w().x(), q.w().y(), q.w().z());
    return buf;
}

json quat_json(const Quaternion& q) { return json::array({q.s(), q.w().x(), q.w().y(), q.w().z()}); }

int chart_axis(const std::string& name) {
    if (name == "x") return 0;
    if (name == "y") return 1;
    if (name == "z") return 2;
    throw Error(ErrorKind::InvalidArgument, "--chart must be x, y or z");
}

int cmd_solve_regular(const Globals& g, int n, int w, int wprime) {
    const auto phi = solve_phi(n, w, wprime);
    if (!phi) {
        if (g.json) {
            std::cout << json{{"n", n}, {"w", w}, {"wprime", wprime}, {"phi", nullptr}}.dump(2) << '\n';
        } else {
            std::cout << "(" << n << ", " << w << ", " << wprime << "): phi = none\n";
        }
        return kExitNoSolution;
    }
    const SphericalPolygon poly = regular_polygon(n, w, *phi);
    const MonodromyReport rep = polygon_monodromy(poly, 0, g.tol);
    const Quaternion closed = closed_form_monodromy(n, w, *phi);
    const double turning = traced_turning_angle(n, w, *phi);
    const double traced_winding = turning * n / (2.0 * std::numbers::pi);

    if (g.json) {
        json out{{"n", n},
                 {"w", w},
                 {"wprime", wprime},
                 {"phi", *phi},
                 {"residual", wprime_angle_residual(n, w, wprime, *phi)},
                 {"monodromy", quat_json(rep.g)},
                 {"closed_form_monodromy", quat_json(closed)},
                 {"trivial", rep.trivial},
                 {"traced_turning_angle", turning},
                 {"traced_winding", traced_winding},
                 {"polygon", to_json(poly)}};
        std::cout << out.dump(2) << '\n';
        return 0;
    }
    std::printf("(%d, %d, %d): phi = %.12f\n", n, w, wprime, *phi);
    std::printf("residual = %.3e\n", wprime_angle_residual(n, w, wprime, *phi));
    std::printf("vertices:\n");
    for (const auto& v : poly.vertices) std::printf("  [% .12f, % .12f, % .12f]\n", v.x(), v.y(), v.z());
    std::printf("monodromy g = %s (closed form %s)\n", fmt_quat(rep.g).c_str(), fmt_quat(closed).c_str());
    std::printf("trivial: %s\n", rep.trivial ? "yes" : "no");
    std::printf("traced polygon: turning angle %.12f, winding %.9f, cos(angle/2) = %.12f vs cos(pi w'/n) = %.12f\n",
                turning, traced_winding, std::cos(turning / 2), std::cos(std::numbers::pi * wprime / n));
    return 0;
}

int cmd_enumerate(const Globals& g, int n_max) {
    const auto triples = enumerate_admissible(n_max);
    if (g.json) {
        json out = json::array();
        for (const auto& t : triples) {
            out.push_back({{"n", t.n}, {"w", t.w}, {"wprime", t.wprime}, {"phi", t.phi}, {"minimal", t.minimal}});
        }
        std::cout << out.dump(2) << '\n';
        return 0;
    }
    for (const auto& t : triples) {
        std::printf("(%d, %d, %d) phi = %.12f%s\n", t.n, t.w, t.wprime, t.phi, t.minimal ? "  minimal" : "");
    }
    std::printf("%zu admissible triple(s) for n <= %d\n", triples.size(), n_max);
    return 0;
}

Quaternion ode_polygon_monodromy(const SphericalPolygon& poly, int steps, std::vector<Quaternion>* factors) {
    Quaternion g;
    const std::size_t n = poly.size();
    const std::size_t edges = poly.closed ? n : n - 1;
    for (std::size_t i = 0; i < edges; ++i) {
        const RollResult r = integrate_roll(arc_between(poly.vertices[i], poly.vertices[(i + 1) % n]), poly.rho, steps);
        if (factors) factors->push_back(r.lift);
        g = r.lift * g;
    }
    return g;
}

int cmd_roll(const Globals& g, const std::string& path, std::optional<double> rho, const std::string& method,
             bool verify, int steps) {
    SphericalPolygon poly = spherical_from_json(read_json_file(path));
    if (rho) poly.rho = *rho;
    try {
        check_spherical_polygon(poly, g.tol);
    } catch (const Error& e) {
        std::cerr << "degenerate polygon: " << e.what() << '\n';
        return kExitDegenerate;
    }
    if (method != "quat" && method != "ode") throw Error(ErrorKind::InvalidArgument, "--method must be quat or ode");

    const MonodromyReport quat = polygon_monodromy(poly, 0, g.tol);
    MonodromyReport shown = quat;
    double disagreement = 0.0;
    if (method == "ode" || verify) {
        MonodromyReport ode;
        ode.g = ode_polygon_monodromy(poly, steps, &ode.factors);
        ode.trivial = quat_distance(ode.g, Quaternion()) <= 1e-5;
        ode.projectively_trivial = std::min(quat_distance(ode.g, Quaternion()), quat_distance(ode.g, -Quaternion())) <= 1e-5;
        disagreement = quat_distance(ode.g, quat.g);
        if (method == "ode") shown = ode;
    }

    if (g.json) {
        json out{{"method", method},
                 {"rho", poly.rho},
                 {"g", quat_json(shown.g)},
                 {"trivial", shown.trivial},
                 {"projectively_trivial", shown.projectively_trivial},
                 {"factors", json::array()}};
        for (const auto& f : shown.factors) out["factors"].push_back(quat_json(f));
        if (verify) out["disagreement"] = disagreement;
        std::cout << out.dump(2) << '\n';
    } else {
        std::printf("method: %s, rho = %g\n", method.c_str(), poly.rho);
        for (std::size_t i = 0; i < shown.factors.size(); ++i) {
            std::printf("edge %zu: %s\n", i, fmt_quat(shown.factors[i]).c_str());
        }
        std::printf("g = %s\n", fmt_quat(shown.g).c_str());
        std::printf("trivial: %s\n", shown.trivial ? "yes" : "no");
        std::printf("projectively trivial: %s\n", shown.projectively_trivial ? "yes" : "no");
        if (verify) std::printf("quat/ode disagreement: %.3e\n", disagreement);
    }
    if (verify && disagreement > 1e-5) {
        std::cerr << "methods disagree by " << disagreement << '\n';
        return kExitDisagreement;
    }
    return 0;
}

Quaternion read_q(const Globals& g, const std::string& text) {
    if (text.empty()) {
        std::mt19937_64 rng(g.seed);
        std::normal_distribution<double> nd(0.0, 1.0);
        return Quaternion(nd(rng), nd(rng), nd(rng), nd(rng)).normalized();
    }
    const Quaternion q = parse_quaternion(text);
    if (std::abs(q.norm() - 1.0) > 1e-6) std::cerr << "warning: --q is not a unit quaternion, normalizing\n";
    return q.normalized();
}

int report_pair(const Globals& g, const DancingPair& pair, std::ostream& out) {
    int status = 0;
    for (std::size_t i = 0; i < dancing_vertex_count(pair); ++i) {
        double r = 0.0;
        try {
            r = dancing_residual(pair, i);
        } catch (const Error& e) {
            out << "vertex " << i << ": " << e.what() << '\n';
            if (!status) status = kExitFailure;
            continue;
        }
        const bool ok = std::abs(r) <= g.tol;
        out << "vertex " << i << ": dancing residual " << r << (ok ? "" : "  FAIL") << '\n';
        if (!ok) status = kExitFailure;
    }
    const std::size_t edges = pair.closed ? pair.size() : pair.size() - 1;
    for (std::size_t i = 0; i < edges; ++i) {
        const double r = inscribed_residual(pair, i);
        const bool ok = r <= g.tol;
        out << "edge " << i << ": inscribed residual " << r << (ok ? "" : "  FAIL") << '\n';
        if (!ok) status = kExitFailure;
    }
    const NondegeneracyReport nd = nondegeneracy(pair);
    out << "min |b_i A_i| = " << nd.min_point_off_line << ", min |det A| = " << nd.min_vertex_det
        << ", min |det b| = " << nd.min_line_det << '\n';
    if (nd.min_point_off_line < 1e-10 || nd.min_vertex_det < 1e-10 || nd.min_line_det < 1e-10) {
        out << "degenerate  FAIL\n";
        status = kExitFailure;
    }
    return status;
}

int cmd_dance(const Globals& g, const std::string& path, const std::string& qtext, const std::string& out_path,
              const std::string& svg_path) {
    const SphericalPolygon poly = spherical_from_json(read_json_file(path));
    const Quaternion q = read_q(g, qtext);
    DancingPair pair;
    try {
        pair = pipeline_forward(poly.vertices, q, g.tol);
    } catch (const Error& e) {
        std::cerr << e.what() << '\n';
        if (e.kind() == ErrorKind::NontrivialMonodromy) return kExitNontrivial;
        if (e.kind() == ErrorKind::NonGeneric) return kExitNonGeneric;
        return kExitFailure;
    }
    const json doc = to_json(pair);
    if (out_path.empty()) {
        std::cout << doc.dump(2) << '\n';
    } else {
        write_json_file(out_path, doc);
    }
    if (!svg_path.empty()) {
        std::ofstream svg(svg_path);
        if (!svg) throw Error(ErrorKind::InvalidArgument, "cannot write " + svg_path);
        svg << dancing_pair_svg(pair, SvgOptions{chart_axis(g.chart)});
    }
    std::cerr << "q = " << fmt_quat(q) << '\n';
    report_pair(g, pair, std::cerr);
    return 0;
}

int cmd_undance(const Globals& g, const std::string& path) {
    const json doc = read_json_file(path);
    DancingPair pair = doc.value("kind", "") == "horizontal" ? project_polygon(horizontal_from_json(doc))
                                                             : dancing_pair_from_json(doc);
    const InverseResult inv = pipeline_inverse(pair);
    SphericalPolygon poly;
    poly.closed = true;
    poly.rho = 3.0;
    for (const auto& v : inv.classes) poly.vertices.push_back(canonical(v));
    json out = to_json(poly);
    out["q"] = quat_json(inv.q);
    std::cout << out.dump(2) << '\n';
    (void)g;
    return 0;
}

int cmd_verify(const Globals& g, const std::string& path) {
    const json doc = read_json_file(path);
    const DancingPair pair = doc.value("kind", "") == "horizontal" ? project_polygon(horizontal_from_json(doc))
                                                                   : dancing_pair_from_json(doc);
    const int status = report_pair(g, pair, std::cout);
    std::cout << (status == 0 ? "all checks pass\n" : "verification failed\n");
    return status;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rolling spheres, dancing pairs and split octonions"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--tol", g.tol, "Tolerance for checks")->capture_default_str();
    app.add_option("--seed", g.seed, "Seed for randomized choices")->capture_default_str();
    app.add_flag("--json", g.json, "Machine-readable output");
    app.add_option("--chart", g.chart, "Affine chart for SVG output: x, y or z")->capture_default_str();

    int n = 0, w = 0, wprime = 0, n_max = 0;
    auto* solve = app.add_subcommand("solve-regular", "Solve for the colatitude of a regular polygon");
    solve->add_option("n", n)->required();
    solve->add_option("w", w)->required();
    solve->add_option("wprime", wprime)->required();

    auto* enumerate = app.add_subcommand("enumerate", "List admissible triples (n, w, w')");
    enumerate->add_option("n_max", n_max)->required();

    std::string path, method = "quat", qtext, out_path, svg_path;
    std::optional<double> rho;
    bool verify = false;
    int steps = 10000;
    auto* roll = app.add_subcommand("roll", "Rolling monodromy of a spherical polygon");
    roll->add_option("polygon", path)->required();
    roll->add_option("--rho", rho, "Radius ratio (overrides the file)");
    roll->add_option("--method", method, "quat or ode")->capture_default_str();
    roll->add_flag("--verify", verify, "Cross-check quaternion and ODE results");
    roll->add_option("--steps", steps, "ODE steps per edge")->capture_default_str();

    auto* dance = app.add_subcommand("dance", "Dancing pair from a polygon with trivial monodromy");
    dance->add_option("polygon", path)->required();
    dance->add_option("--q", qtext, "Initial orientation s,x,y,z (random from --seed if omitted)");
    dance->add_option("--out", out_path, "Write the pair here instead of stdout");
    dance->add_option("--svg", svg_path, "Write an SVG drawing of the pair");

    auto* undance = app.add_subcommand("undance", "Spherical polygon and orientation from a dancing pair");
    undance->add_option("pair", path)->required();

    auto* verify_cmd = app.add_subcommand("verify", "Check the dancing condition of a pair");
    verify_cmd->add_option("pair", path)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*solve) return cmd_solve_regular(g, n, w, wprime);
        if (*enumerate) return cmd_enumerate(g, n_max);
        if (*roll) return cmd_roll(g, path, rho, method, verify, steps);
        if (*dance) return cmd_dance(g, path, qtext, out_path, svg_path);
        if (*undance) return cmd_undance(g, path);
        if (*verify_cmd) return cmd_verify(g, path);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitFailure;
}
