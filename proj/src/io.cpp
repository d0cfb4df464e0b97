#include "rolldance/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <vector>

#include "rolldance/errors.hpp"

namespace rolldance {

namespace {

json vec_json(const Eigen::Ref<const Eigen::VectorXd>& v) {
    json a = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
    return a;
}

Vec3 vec_from(const json& a, const char* what) {
    if (!a.is_array() || a.size() != 3) throw Error(ErrorKind::ParseError, std::string(what) + " must be an array of 3 numbers");
    Vec3 v;
    for (int i = 0; i < 3; ++i) {
        if (!a[i].is_number()) throw Error(ErrorKind::ParseError, std::string(what) + " has a non-numeric entry");
        v(i) = a[i].get<double>();
    }
    return v;
}

void expect_kind(const json& doc, const char* kind) {
    if (!doc.is_object() || !doc.contains("kind") || doc["kind"] != kind) {
        throw Error(ErrorKind::ParseError, std::string("expected a document of kind \"") + kind + "\"");
    }
}

bool closed_flag(const json& doc) {
    if (!doc.contains("closed")) return true;
    if (!doc["closed"].is_boolean()) throw Error(ErrorKind::ParseError, "\"closed\" must be a boolean");
    return doc["closed"].get<bool>();
}

}  // namespace

json to_json(const SphericalPolygon& poly) {
    json doc;
    doc["kind"] = "spherical";
    doc["rho"] = poly.rho;
    doc["vertices"] = json::array();
    for (const auto& v : poly.vertices) doc["vertices"].push_back(vec_json(v));
    doc["closed"] = poly.closed;
    return doc;
}

json to_json(const DancingPair& pair) {
    json doc;
    doc["kind"] = "dancing-pair";
    doc["A"] = json::array();
    doc["b"] = json::array();
    for (const auto& a : pair.A) doc["A"].push_back(vec_json(a));
    for (const auto& b : pair.b) doc["b"].push_back(vec_json(b.transpose()));
    doc["closed"] = pair.closed;
    return doc;
}

json to_json(const HorizontalPolygon& poly) {
    json doc;
    doc["kind"] = "horizontal";
    doc["vertices"] = json::array();
    for (const auto& p : poly.points) {
        doc["vertices"].push_back({{"A", vec_json(p.A)}, {"b", vec_json(p.b.transpose())}});
    }
    doc["closed"] = poly.closed;
    return doc;
}

SphericalPolygon spherical_from_json(const json& doc) {
    expect_kind(doc, "spherical");
    SphericalPolygon poly;
    if (doc.contains("rho")) {
        if (!doc["rho"].is_number()) throw Error(ErrorKind::ParseError, "\"rho\" must be a number");
        poly.rho = doc["rho"].get<double>();
    }
    if (!doc.contains("vertices") || !doc["vertices"].is_array()) {
        throw Error(ErrorKind::ParseError, "missing \"vertices\" array");
    }
    for (const auto& v : doc["vertices"]) poly.vertices.push_back(vec_from(v, "vertex"));
    poly.closed = closed_flag(doc);
    return poly;
}

DancingPair dancing_pair_from_json(const json& doc) {
    expect_kind(doc, "dancing-pair");
    if (!doc.contains("A") || !doc["A"].is_array() || !doc.contains("b") || !doc["b"].is_array()) {
        throw Error(ErrorKind::ParseError, "missing \"A\" or \"b\" array");
    }
    if (doc["A"].size() != doc["b"].size()) throw Error(ErrorKind::ParseError, "\"A\" and \"b\" differ in length");
    DancingPair pair;
    for (const auto& a : doc["A"]) pair.A.push_back(vec_from(a, "A entry"));
    for (const auto& b : doc["b"]) pair.b.push_back(vec_from(b, "b entry").transpose());
    pair.closed = closed_flag(doc);
    return pair;
}

HorizontalPolygon horizontal_from_json(const json& doc) {
    expect_kind(doc, "horizontal");
    if (!doc.contains("vertices") || !doc["vertices"].is_array()) {
        throw Error(ErrorKind::ParseError, "missing \"vertices\" array");
    }
    HorizontalPolygon poly;
    for (const auto& v : doc["vertices"]) {
        if (!v.is_object() || !v.contains("A") || !v.contains("b")) {
            throw Error(ErrorKind::ParseError, "horizontal vertex needs \"A\" and \"b\"");
        }
        poly.points.push_back({vec_from(v["A"], "A"), vec_from(v["b"], "b").transpose()});
    }
    poly.closed = closed_flag(doc);
    return poly;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ParseError, path + ": " + e.what());
    }
}

void write_json_file(const std::string& path, const json& doc) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::ParseError, "cannot write " + path);
    out << doc.dump(2) << '\n';
}

Quaternion parse_quaternion(const std::string& text) {
    std::vector<double> c;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            c.push_back(std::stod(item, &used));
            if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw Error(ErrorKind::ParseError, "bad quaternion component \"" + item + "\"");
        }
    }
    if (c.size() != 4) throw Error(ErrorKind::ParseError, "quaternion needs four comma-separated values s,x,y,z");
    return {c[0], c[1], c[2], c[3]};
}

namespace {

struct Chart {
    int k, i, j;
    explicit Chart(int axis) : k(axis), i((axis + 1) % 3), j((axis + 2) % 3) {}

    std::optional<Eigen::Vector2d> map(const Vec3& p) const {
        if (std::abs(p(k)) < 1e-12 * p.norm()) return std::nullopt;
        return Eigen::Vector2d(p(i) / p(k), p(j) / p(k));
    }
};

// Clip the line u b_i + w b_j + b_k = 0 to the box.
std::optional<std::pair<Eigen::Vector2d, Eigen::Vector2d>> clip_line(const Chart& c, const Covec3& b,
                                                                     const Eigen::Vector2d& lo,
                                                                     const Eigen::Vector2d& hi) {
    const double bu = b(c.i), bw = b(c.j), bk = b(c.k);
    std::vector<Eigen::Vector2d> hits;
    const double eps = 1e-9 * (hi - lo).norm();
    if (std::abs(bw) > 1e-14) {
        for (double u : {lo.x(), hi.x()}) {
            const double w = -(bk + bu * u) / bw;
            if (w >= lo.y() - eps && w <= hi.y() + eps) hits.emplace_back(u, w);
        }
    }
    if (std::abs(bu) > 1e-14) {
        for (double w : {lo.y(), hi.y()}) {
            const double u = -(bk + bw * w) / bu;
            if (u >= lo.x() - eps && u <= hi.x() + eps) hits.emplace_back(u, w);
        }
    }
    if (hits.size() < 2) return std::nullopt;
    std::size_t a = 0, z = 0;
    double best = -1.0;
    for (std::size_t p = 0; p < hits.size(); ++p) {
        for (std::size_t q = p + 1; q < hits.size(); ++q) {
            const double d = (hits[p] - hits[q]).norm();
            if (d > best) {
                best = d;
                a = p;
                z = q;
            }
        }
    }
    return std::make_pair(hits[a], hits[z]);
}

}  // namespace

std::string dancing_pair_svg(const DancingPair& pair, const SvgOptions& options) {
    if (options.chart_axis < 0 || options.chart_axis > 2) throw Error(ErrorKind::InvalidArgument, "chart axis must be 0, 1 or 2");
    const Chart chart(options.chart_axis);
    const std::size_t n = pair.size();

    std::vector<std::optional<Eigen::Vector2d>> A2, B2;
    for (std::size_t i = 0; i < n; ++i) A2.push_back(chart.map(pair.A[i]));
    const std::size_t edges = pair.closed ? n : (n ? n - 1 : 0);
    for (std::size_t i = 0; i < edges; ++i) B2.push_back(chart.map(covec_cross(pair.b[i], pair.b[(i + 1) % n])));

    Eigen::Vector2d lo = Eigen::Vector2d::Constant(std::numeric_limits<double>::infinity());
    Eigen::Vector2d hi = -lo;
    for (const auto* list : {&A2, &B2}) {
        for (const auto& p : *list) {
            if (!p || p->cwiseAbs().maxCoeff() > 1e6) continue;
            lo = lo.cwiseMin(*p);
            hi = hi.cwiseMax(*p);
        }
    }
    if (!(lo.x() <= hi.x())) {
        lo = Eigen::Vector2d(-1.0, -1.0);
        hi = Eigen::Vector2d(1.0, 1.0);
    }
    const double span = std::max({hi.x() - lo.x(), hi.y() - lo.y(), 1e-9});
    const Eigen::Vector2d mid = 0.5 * (lo + hi);
    lo = mid - Eigen::Vector2d::Constant(0.65 * span);
    hi = mid + Eigen::Vector2d::Constant(0.65 * span);

    const double size = options.size;
    auto px = [&](const Eigen::Vector2d& p) {
        return Eigen::Vector2d((p.x() - lo.x()) / (hi.x() - lo.x()) * size,
                               size - (p.y() - lo.y()) / (hi.y() - lo.y()) * size);
    };

    std::ostringstream svg;
    svg.precision(6);
    svg << std::fixed;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
        << "\" viewBox=\"0 0 " << size << ' ' << size << "\">\n";
    svg << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    svg << "  <g stroke=\"#c0392b\" stroke-width=\"1\" fill=\"none\">\n";
    for (std::size_t i = 0; i < n; ++i) {
        const auto seg = clip_line(chart, pair.b[i], lo, hi);
        if (!seg) continue;
        const Eigen::Vector2d p = px(seg->first), q = px(seg->second);
        svg << "    <line x1=\"" << p.x() << "\" y1=\"" << p.y() << "\" x2=\"" << q.x() << "\" y2=\"" << q.y()
            << "\"/>\n";
    }
    svg << "  </g>\n";

    svg << "  <g stroke=\"#1f3a93\" stroke-width=\"2\" fill=\"none\">\n";
    for (std::size_t i = 0; i < edges; ++i) {
        const auto& a = A2[i];
        const auto& b = A2[(i + 1) % n];
        if (!a || !b) continue;
        const Eigen::Vector2d p = px(*a), q = px(*b);
        svg << "    <line x1=\"" << p.x() << "\" y1=\"" << p.y() << "\" x2=\"" << q.x() << "\" y2=\"" << q.y()
            << "\"/>\n";
    }
    svg << "  </g>\n";

    svg << "  <g fill=\"#c0392b\">\n";
    for (const auto& b : B2) {
        if (!b) continue;
        const Eigen::Vector2d p = px(*b);
        svg << "    <circle cx=\"" << p.x() << "\" cy=\"" << p.y() << "\" r=\"3\"/>\n";
    }
    svg << "  </g>\n";

    svg << "  <g fill=\"#1f3a93\" font-family=\"sans-serif\" font-size=\"12\">\n";
    for (std::size_t i = 0; i < n; ++i) {
        if (!A2[i]) continue;
        const Eigen::Vector2d p = px(*A2[i]);
        svg << "    <circle cx=\"" << p.x() << "\" cy=\"" << p.y() << "\" r=\"4\"/>\n";
        svg << "    <text x=\"" << p.x() + 6 << "\" y=\"" << p.y() - 6 << "\">A" << i + 1 << "</text>\n";
    }
    svg << "  </g>\n";
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace rolldance
