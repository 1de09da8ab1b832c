#include "bubble/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "bubble/errors.hpp"

namespace bubble {

Json to_json(const BubbleComplex& c, const Json& metadata) {
    Json doc;
    doc["format_version"] = kFormatVersion;
    Json vs = Json::array(), es = Json::array(), fs = Json::array();
    for (VertexId v = 0; v < c.vertex_count(); ++v) vs.push_back({{"id", v}, {"x", c.vertex(v).x}, {"y", c.vertex(v).y}});
    for (EdgeId e = 0; e < c.edge_count(); ++e) {
        const Edge& ed = c.edge(e);
        es.push_back({{"id", e},
                      {"v_from", ed.from},
                      {"v_to", ed.to},
                      {"half_angle", ed.half_angle},
                      {"face_left", c.left_face(e)},
                      {"face_right", c.right_face(e)}});
    }
    for (FaceId f = 0; f < c.face_count(); ++f) fs.push_back({{"id", f}, {"region_label", c.face(f).region}});
    doc["vertices"] = std::move(vs);
    doc["edges"] = std::move(es);
    doc["faces"] = std::move(fs);
    doc["metadata"] = metadata.is_null() ? Json::object() : metadata;
    return doc;
}

namespace {

// objects of `list` indexed by their dense ids 0..n-1
std::vector<const Json*> by_id(const Json& doc, const char* key) {
    if (!doc.contains(key) || !doc[key].is_array()) throw InputError(std::string("document lacks an array '") + key + "'");
    const Json& list = doc[key];
    std::vector<const Json*> out(list.size(), nullptr);
    for (const Json& item : list) {
        if (!item.is_object() || !item.contains("id") || !item["id"].is_number_integer())
            throw InputError(std::string(key) + " entry without an integer id");
        const auto id = item["id"].get<long long>();
        if (id < 0 || id >= static_cast<long long>(out.size()) || out[id])
            throw InputError(std::string(key) + " ids must be unique and run from 0");
        out[id] = &item;
    }
    return out;
}

double number(const Json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number()) throw InputError(std::string("missing number '") + key + "'");
    return j[key].get<double>();
}

long long integer(const Json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_integer()) throw InputError(std::string("missing integer '") + key + "'");
    return j[key].get<long long>();
}

}  // namespace

Document document_from_json(const Json& j) {
    if (!j.is_object()) throw InputError("document must be a JSON object");
    if (!j.contains("format_version") || j["format_version"] != kFormatVersion)
        throw InputError("unsupported format_version");
    const auto vs = by_id(j, "vertices"), es = by_id(j, "edges"), fs = by_id(j, "faces");
    std::vector<RegionLabel> region(fs.size());
    for (std::size_t f = 0; f < fs.size(); ++f) region[f] = static_cast<RegionLabel>(integer(*fs[f], "region_label"));
    auto face_label = [&](long long f) {
        if (f < 0 || f >= static_cast<long long>(region.size())) throw InputError("edge refers to an unknown face");
        return region[f];
    };
    ComplexBuilder b;
    for (const Json* v : vs) b.add_vertex({number(*v, "x"), number(*v, "y")});
    for (const Json* e : es) {
        const long long from = integer(*e, "v_from"), to = integer(*e, "v_to");
        if (from < 0 || to < 0 || from >= static_cast<long long>(vs.size()) || to >= static_cast<long long>(vs.size()))
            throw InputError("edge refers to an unknown vertex");
        b.add_edge(static_cast<VertexId>(from), static_cast<VertexId>(to), number(*e, "half_angle"),
                   face_label(integer(*e, "face_left")), face_label(integer(*e, "face_right")));
    }
    Document d{b.build(), j.value("metadata", Json::object())};
    if (d.complex.face_count() != static_cast<int>(fs.size()))
        throw InputError("face list does not match the traced faces");
    return d;
}

std::string dump_document(const BubbleComplex& c, const Json& metadata) { return to_json(c, metadata).dump(2) + "\n"; }

Document parse_document(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw InputError(std::string("invalid JSON: ") + e.what());
    }
    try {
        return document_from_json(j);
    } catch (const Json::exception& e) {
        throw InputError(std::string("malformed document: ") + e.what());
    }
}

Document load_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_document(ss.str());
}

void save_document(const std::string& path, const BubbleComplex& c, const Json& metadata) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path);
    out << dump_document(c, metadata);
}

Json to_json(const ValidationReport& r) {
    Json j;
    j["passed"] = r.passed();
    j["tolerance"] = r.tolerance;
    Json conds = Json::object();
    for (const auto& [name, cr] : r.conditions())
        conds[name] = {{"pass", cr->pass}, {"residual", cr->residual}, {"detail", cr->detail}};
    conds["minimality"] = {{"pass", nullptr}, {"detail", ValidationReport::minimality}};
    j["conditions"] = std::move(conds);
    Json findings = Json::array();
    for (const Finding& f : r.findings) findings.push_back({{"kind", to_string(f.kind)}, {"faces", f.faces}});
    j["findings"] = std::move(findings);
    j["first_violation"] = r.first_violation();
    return j;
}

Json to_json(const MoveReport& r, bool include_result) {
    Json j;
    j["move"] = r.move;
    j["perimeter_delta"] = r.perimeter_delta;
    Json areas = Json::object();
    for (const auto& [label, d] : r.area_deltas) areas[std::to_string(label)] = d;
    j["area_deltas"] = std::move(areas);
    j["witness"] = to_string(r.witness);
    j["violation"] = r.violation;
    if (include_result) j["result"] = to_json(r.result);
    return j;
}

Json measurements(const BubbleComplex& c, double tol) {
    Json j;
    j["perimeter"] = total_perimeter(c);
    j["diameter"] = c.edge_count() ? diameter(c) : 0.0;
    j["euler_characteristic"] = euler_characteristic(c);
    Json areas = Json::object();
    for (const auto& [label, a] : region_areas(c)) areas[std::to_string(label)] = a;
    j["areas"] = std::move(areas);
    try {
        Json ps = Json::object();
        for (const auto& [label, p] : pressures(c, tol)) ps[std::to_string(label)] = p;
        j["pressures"] = std::move(ps);
    } catch (const PreconditionError&) {
        j["pressures"] = nullptr;  // path dependent
    }
    Json faces = Json::array();
    for (FaceId f = 1; f < c.face_count(); ++f)
        faces.push_back({{"id", f}, {"region_label", c.face(f).region}, {"sides", c.face(f).side_count},
                         {"area", face_area(c, f)}});
    j["faces"] = std::move(faces);
    return j;
}

namespace {

const char* const kPalette[] = {"#8fb8de", "#f2b880", "#9ccc9c", "#e79aa8", "#c8b3e0",
                                "#f0dc82", "#8fd3d0", "#d9a88c", "#b5c98a", "#aab0bd"};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v == 0.0 ? 0.0 : v);  // no negative zero
    return buf;
}

std::string pt(Point p) { return fmt(p.x) + " " + fmt(-p.y); }

// path segment drawing the arc from its start to its end
std::string segment(const ArcSpec& a) {
    if (is_straight(a)) return "L " + pt(a.end);
    const double r = std::abs(chord_length(a) / (2 * std::sin(a.half_angle)));
    const int large = std::abs(a.half_angle) > kPi / 2 ? 1 : 0;
    // with y pointing down, sweep 1 turns clockwise on screen, which is where a left bulge goes
    const int sweep = a.half_angle > 0 ? 1 : 0;
    return "A " + fmt(r) + " " + fmt(r) + " 0 " + std::to_string(large) + " " + std::to_string(sweep) + " " + pt(a.end);
}

}  // namespace

std::string render_svg(const BubbleComplex& c) {
    double x0 = -1, y0 = -1, x1 = 1, y1 = 1;
    if (c.edge_count() > 0) {
        x0 = y0 = INFINITY, x1 = y1 = -INFINITY;
        for (EdgeId e = 0; e < c.edge_count(); ++e)
            for (int i = 0; i <= 64; ++i) {
                const Point p = arc_point(c.edge_arc(e), i / 64.0);
                x0 = std::min(x0, p.x), x1 = std::max(x1, p.x), y0 = std::min(y0, p.y), y1 = std::max(y1, p.y);
            }
    }
    const double pad = 0.05 * std::max(x1 - x0, y1 - y0);
    const double stroke = 0.004 * std::max(x1 - x0, y1 - y0);
    std::ostringstream s;
    s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" << fmt(x0 - pad) << " "
      << fmt(-y1 - pad) << " " << fmt(x1 - x0 + 2 * pad) << " " << fmt(y1 - y0 + 2 * pad) << "\">\n";
    s << "<g id=\"faces\" stroke=\"none\" fill-rule=\"evenodd\">\n";
    for (FaceId f = 1; f < c.face_count(); ++f) {
        const RegionLabel r = c.face(f).region;
        const std::string fill = r > 0 ? kPalette[(r - 1) % 10] : "#ffffff";
        s << "<path data-region=\"" << r << "\" fill=\"" << fill << "\" d=\"";
        for (const auto& cycle : c.face(f).cycles) {
            s << "M " << pt(c.vertex(c.origin(cycle.front())));
            for (HalfEdgeId h : cycle) s << " " << segment(c.arc(h));
            s << " Z ";
        }
        s << "\"/>\n";
    }
    s << "</g>\n<g id=\"edges\" fill=\"none\" stroke=\"#000000\" stroke-width=\"" << fmt(stroke) << "\">\n";
    for (EdgeId e = 0; e < c.edge_count(); ++e) {
        const ArcSpec a = c.edge_arc(e);
        s << "<path d=\"M " << pt(a.start) << " " << segment(a) << "\"/>\n";
    }
    s << "</g>\n</svg>\n";
    return s.str();
}

}  // namespace bubble
