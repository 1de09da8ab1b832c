#include "bubble/complex.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

#include "bubble/errors.hpp"

namespace bubble {

namespace {

constexpr double kTangentTie = 1e-12;
constexpr double kSmoothTol = 1e-8;

double departure_angle(const ArcSpec& a) {
    double t = std::fmod(start_tangent(a), kTwoPi);
    if (t < 0) t += kTwoPi;
    if (t >= kTwoPi - kTangentTie) t = 0.0;
    return t;
}

std::string at_edge(EdgeId e) { return " (edge " + std::to_string(e) + ")"; }

}  // namespace

BubbleComplex::BubbleComplex() : faces_{Face{kExteriorFace, kExteriorLabel, {}, 0}} {}

BubbleComplex::BubbleComplex(std::vector<Point> vertices, std::vector<Edge> edges,
                             const std::vector<LabelSeed>& seeds)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
    const int n = vertex_count();
    const int m = edge_count();
    double scale = 1.0;
    for (const Point& p : vertices_) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw InputError("non-finite vertex coordinate");
        scale = std::max({scale, std::abs(p.x), std::abs(p.y)});
    }
    for (EdgeId e = 0; e < m; ++e) {
        const Edge& ed = edges_[e];
        if (ed.from < 0 || ed.from >= n || ed.to < 0 || ed.to >= n)
            throw InputError("edge references a missing vertex" + at_edge(e));
        if (!std::isfinite(ed.half_angle) || std::abs(ed.half_angle) >= kPi)
            throw InputError("half-angle outside (-pi, pi)" + at_edge(e));
        if (ed.from == ed.to || distance(vertices_[ed.from], vertices_[ed.to]) <= 1e-12 * scale)
            throw InputError("degenerate chord" + at_edge(e));
    }

    // rotation system
    outgoing_.assign(n, {});
    std::vector<double> angle(2 * m), turn(2 * m);
    for (HalfEdgeId h = 0; h < 2 * m; ++h) {
        outgoing_[origin(h)].push_back(h);
        const ArcSpec a = arc(h);
        angle[h] = departure_angle(a);
        turn[h] = -std::sin(a.half_angle) / chord_length(a);
    }
    for (auto& out : outgoing_) {
        std::sort(out.begin(), out.end(), [&](HalfEdgeId a, HalfEdgeId b) {
            if (std::abs(angle[a] - angle[b]) > kTangentTie) return angle[a] < angle[b];
            return turn[a] < turn[b];
        });
    }
    next_.assign(2 * m, -1);
    for (HalfEdgeId h = 0; h < 2 * m; ++h) {
        const auto& out = outgoing_[target(h)];
        const auto it = std::find(out.begin(), out.end(), twin(h));
        const int deg = static_cast<int>(out.size());
        const int i = static_cast<int>(it - out.begin());
        next_[h] = out[(i + deg - 1) % deg];
    }

    // trace boundary cycles
    std::vector<std::vector<HalfEdgeId>> interior;
    std::vector<std::vector<HalfEdgeId>> outer;
    std::vector<char> seen(2 * m, 0);
    for (HalfEdgeId h0 = 0; h0 < 2 * m; ++h0) {
        if (seen[h0]) continue;
        std::vector<HalfEdgeId> cycle;
        HalfEdgeId h = h0;
        do {
            if (seen[h]) throw InputError("inconsistent rotation system" + at_edge(edge_of(h)));
            seen[h] = 1;
            cycle.push_back(h);
            h = next_[h];
        } while (h != h0);
        if (cycle_area(*this, cycle) > 0.0)
            interior.push_back(std::move(cycle));
        else
            outer.push_back(std::move(cycle));
    }

    faces_.clear();
    faces_.push_back(Face{kExteriorFace, kExteriorLabel, std::move(outer), 0});
    for (auto& cycle : interior)
        faces_.push_back(Face{face_count(), kUnsetLabel, {std::move(cycle)}, 0});
    face_of_.assign(2 * m, kExteriorFace);
    for (const Face& f : faces_)
        for (const auto& cycle : f.cycles)
            for (HalfEdgeId h : cycle) face_of_[h] = f.id;

    // labels
    auto stated = [&](HalfEdgeId h) { return h % 2 == 0 ? edges_[edge_of(h)].left : edges_[edge_of(h)].right; };
    for (const LabelSeed& s : seeds) {
        const FaceId f = locate(s.at);
        if (f == kExteriorFace) {
            if (s.region != kExteriorLabel) throw InputError("label seed lies outside every face");
            continue;
        }
        if (faces_[f].region != kUnsetLabel && faces_[f].region != s.region)
            throw InputError("conflicting label seeds in one face");
        faces_[f].region = s.region;
    }
    for (Face& f : faces_) {
        if (f.id == kExteriorFace) {
            for (const auto& cycle : f.cycles)
                for (HalfEdgeId h : cycle)
                    if (stated(h) != kUnsetLabel && stated(h) != kExteriorLabel)
                        throw InputError("labeled cycle does not bound a face (nested components are unsupported)" +
                                         at_edge(edge_of(h)));
            continue;
        }
        if (f.region == kUnsetLabel) {
            for (HalfEdgeId h : f.boundary()) {
                const RegionLabel r = stated(h);
                if (r == kUnsetLabel) continue;
                if (f.region != kUnsetLabel && f.region != r)
                    throw InputError("face bordered by edges with different labels" + at_edge(edge_of(h)));
                f.region = r;
            }
        }
        if (f.region == kUnsetLabel) throw InputError("face has no region label");
        if (f.region <= 0 && f.region != kEmptyLabel) throw InputError("bounded face carries the exterior label");
    }
    for (EdgeId e = 0; e < m; ++e) {
        edges_[e].left = faces_[face_of_[forward(e)]].region;
        edges_[e].right = faces_[face_of_[twin(forward(e))]].region;
    }
    for (Face& f : faces_)
        if (f.id != kExteriorFace) f.side_count = static_cast<int>(sides(f.id).size());
}

VertexId BubbleComplex::origin(HalfEdgeId h) const {
    const Edge& e = edges_.at(edge_of(h));
    return h % 2 == 0 ? e.from : e.to;
}

double BubbleComplex::half_angle(HalfEdgeId h) const {
    const double t = edges_.at(edge_of(h)).half_angle;
    return h % 2 == 0 ? t : -t;
}

ArcSpec BubbleComplex::arc(HalfEdgeId h) const {
    return {vertices_[origin(h)], vertices_[target(h)], half_angle(h)};
}

bool BubbleComplex::is_smooth(VertexId v) const {
    const auto& out = outgoing_.at(v);
    if (out.size() != 2) return false;
    const double a = start_tangent(arc(out[0]));
    const double b = start_tangent(arc(out[1]));
    return std::abs(wrap_angle(a - b - kPi)) <= kSmoothTol;
}

std::vector<std::vector<HalfEdgeId>> BubbleComplex::sides(FaceId f) const {
    std::vector<std::vector<HalfEdgeId>> out;
    for (const auto& cycle : faces_.at(f).cycles) {
        const auto corner = std::find_if(cycle.begin(), cycle.end(),
                                         [&](HalfEdgeId h) { return !is_smooth(origin(h)); });
        if (corner == cycle.end()) {
            out.push_back(cycle);
            continue;
        }
        std::vector<HalfEdgeId> rotated(corner, cycle.end());
        rotated.insert(rotated.end(), cycle.begin(), corner);
        for (HalfEdgeId h : rotated) {
            if (!is_smooth(origin(h)) || out.empty()) out.emplace_back();
            out.back().push_back(h);
        }
    }
    return out;
}

std::vector<RegionLabel> BubbleComplex::labels() const {
    std::set<RegionLabel> s;
    for (const Face& f : faces_)
        if (f.id != kExteriorFace) s.insert(f.region);
    return {s.begin(), s.end()};
}

std::vector<FaceId> BubbleComplex::faces_with_label(RegionLabel r) const {
    std::vector<FaceId> out;
    for (const Face& f : faces_)
        if (f.id != kExteriorFace && f.region == r) out.push_back(f.id);
    return out;
}

FaceId BubbleComplex::locate(Point p) const {
    for (const Face& f : faces_) {
        if (f.id == kExteriorFace) continue;
        if (winding_number(sample_cycle(*this, f.boundary()), p) != 0) return f.id;
    }
    return kExteriorFace;
}

ComplexBuilder::ComplexBuilder(const BubbleComplex& c) : vertices(c.vertices()), edges(c.edges()) {}

VertexId ComplexBuilder::add_vertex(Point p) {
    vertices.push_back(p);
    return static_cast<VertexId>(vertices.size()) - 1;
}

EdgeId ComplexBuilder::add_edge(VertexId from, VertexId to, double half_angle, RegionLabel left,
                                RegionLabel right) {
    edges.push_back({from, to, half_angle, left, right});
    return static_cast<EdgeId>(edges.size()) - 1;
}

VertexId ComplexBuilder::split_edge(EdgeId e, double fraction) {
    const Edge old = edges.at(e);
    const ArcSpec a{vertices.at(old.from), vertices.at(old.to), old.half_angle};
    const VertexId w = add_vertex(arc_point(a, fraction));
    edges[e] = {old.from, w, fraction * old.half_angle, old.left, old.right};
    add_edge(w, old.to, (1.0 - fraction) * old.half_angle, old.left, old.right);
    return w;
}

void ComplexBuilder::remove_edges(std::vector<EdgeId> ids) {
    std::sort(ids.begin(), ids.end());
    std::vector<Edge> kept;
    for (EdgeId e = 0; e < static_cast<EdgeId>(edges.size()); ++e)
        if (!std::binary_search(ids.begin(), ids.end(), e)) kept.push_back(edges[e]);
    std::vector<int> used(vertices.size(), 0);
    for (const Edge& e : kept) used[e.from] = used[e.to] = 1;
    std::vector<VertexId> remap(vertices.size(), -1);
    std::vector<Point> vs;
    for (std::size_t v = 0; v < vertices.size(); ++v)
        if (used[v]) {
            remap[v] = static_cast<VertexId>(vs.size());
            vs.push_back(vertices[v]);
        }
    for (Edge& e : kept) {
        e.from = remap[e.from];
        e.to = remap[e.to];
    }
    vertices = std::move(vs);
    edges = std::move(kept);
}

double cycle_area(const BubbleComplex& c, const std::vector<HalfEdgeId>& cycle) {
    double a = 0.0;
    for (HalfEdgeId h : cycle) {
        const ArcSpec s = c.arc(h);
        a += 0.5 * cross(s.start, s.end) - segment_area(s);
    }
    return a;
}

std::vector<Point> sample_cycle(const BubbleComplex& c, const std::vector<HalfEdgeId>& cycle, int per_edge) {
    std::vector<Point> out;
    for (HalfEdgeId h : cycle) {
        const ArcSpec a = c.arc(h);
        if (is_straight(a)) {
            out.push_back(a.start);
            continue;
        }
        for (int i = 0; i < per_edge; ++i) out.push_back(arc_point(a, static_cast<double>(i) / per_edge));
    }
    return out;
}

int winding_number(const std::vector<Point>& poly, Point p) {
    int w = 0;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point a = poly[i], b = poly[(i + 1) % n];
        const double side = cross(b - a, p - a);
        if (a.y <= p.y) {
            if (b.y > p.y && side > 0) ++w;
        } else if (b.y <= p.y && side < 0) {
            --w;
        }
    }
    return w;
}

double face_area(const BubbleComplex& c, FaceId f) {
    if (f == kExteriorFace || f < 0 || f >= c.face_count()) throw InputError("face_area needs an interior face");
    return cycle_area(c, c.face(f).boundary());
}

double region_area(const BubbleComplex& c, RegionLabel r) {
    if (r == kExteriorLabel) throw InputError("the exterior has no finite area");
    const auto fs = c.faces_with_label(r);
    if (fs.empty()) throw InputError("unknown region label " + std::to_string(r));
    double a = 0.0;
    for (FaceId f : fs) a += face_area(c, f);
    return a;
}

std::map<RegionLabel, double> region_areas(const BubbleComplex& c) {
    std::map<RegionLabel, double> out;
    for (RegionLabel r : c.labels()) out[r] = region_area(c, r);
    return out;
}

double edge_length(const BubbleComplex& c, EdgeId e) { return arc_length(c.edge_arc(e)); }

double total_perimeter(const BubbleComplex& c) {
    double l = 0.0;
    for (EdgeId e = 0; e < c.edge_count(); ++e) l += edge_length(c, e);
    return l;
}

double diameter(const BubbleComplex& c) {
    if (c.edge_count() == 0) return 0.0;
    double x0 = INFINITY, y0 = INFINITY, x1 = -INFINITY, y1 = -INFINITY;
    for (EdgeId e = 0; e < c.edge_count(); ++e) {
        const ArcSpec a = c.edge_arc(e);
        for (int i = 0; i <= 16; ++i) {
            const Point p = arc_point(a, i / 16.0);
            x0 = std::min(x0, p.x), x1 = std::max(x1, p.x);
            y0 = std::min(y0, p.y), y1 = std::max(y1, p.y);
        }
    }
    return std::hypot(x1 - x0, y1 - y0);
}

int euler_characteristic(const BubbleComplex& c) {
    return c.vertex_count() - c.edge_count() + c.face_count();
}

namespace {

BubbleComplex map_vertices(const BubbleComplex& c, auto&& f) {
    std::vector<Point> vs;
    vs.reserve(c.vertices().size());
    for (const Point& p : c.vertices()) vs.push_back(f(p));
    return BubbleComplex(std::move(vs), c.edges());
}

}  // namespace

BubbleComplex rescale(const BubbleComplex& c, double factor) {
    if (!(factor > 0.0)) throw InputError("rescale factor must be positive");
    return map_vertices(c, [&](Point p) { return factor * p; });
}

BubbleComplex translate(const BubbleComplex& c, Point offset) {
    return map_vertices(c, [&](Point p) { return p + offset; });
}

BubbleComplex rotate(const BubbleComplex& c, double angle) {
    return map_vertices(c, [&](Point p) { return bubble::rotate(p, angle); });
}

BubbleComplex reflect(const BubbleComplex& c) {
    std::vector<Point> vs;
    for (const Point& p : c.vertices()) vs.push_back({-p.x, p.y});
    std::vector<Edge> es = c.edges();
    for (Edge& e : es) {
        e.half_angle = -e.half_angle;
        std::swap(e.left, e.right);
    }
    return BubbleComplex(std::move(vs), std::move(es));
}

BubbleComplex construct_circle(double area, RegionLabel r, int pieces, Point center) {
    if (!(area > 0.0)) throw InfeasibleError("circle area must be positive");
    if (pieces < 2) throw InputError("a circle needs at least two arcs");
    const double rho = std::sqrt(area / kPi);
    ComplexBuilder b;
    for (int k = 0; k < pieces; ++k) b.add_vertex(center + rho * unit(kTwoPi * k / pieces));
    for (int k = 0; k < pieces; ++k) b.add_edge(k, (k + 1) % pieces, -kPi / pieces, r, kExteriorLabel);
    return b.build();
}

BubbleComplex relabel(const BubbleComplex& c, const std::map<RegionLabel, RegionLabel>& mapping) {
    if (mapping.contains(kExteriorLabel)) throw InputError("the exterior label cannot be renamed");
    ComplexBuilder b(c);
    auto rename = [&](RegionLabel r) {
        const auto it = mapping.find(r);
        return it == mapping.end() ? r : it->second;
    };
    for (Edge& e : b.edges) e.left = rename(e.left), e.right = rename(e.right);
    return b.build();
}

BubbleComplex add_disjoint_circles(const BubbleComplex& c, const std::map<RegionLabel, double>& extras) {
    for (const auto& [r, a] : extras) {
        if (!(a > 0.0)) throw InputError("extra areas must be positive");
        if (r <= 0) throw InputError("extra circles need an interior label");
    }
    // place circles left to right along the ray from the top-right corner of the bounding box
    Point corner{0.0, 0.0};
    double gap = 0.0;
    if (c.edge_count() > 0) {
        double x1 = -INFINITY, y1 = -INFINITY;
        for (EdgeId e = 0; e < c.edge_count(); ++e)
            for (int i = 0; i <= 32; ++i) {
                const Point p = arc_point(c.edge_arc(e), i / 32.0);
                x1 = std::max(x1, p.x), y1 = std::max(y1, p.y);
            }
        corner = {x1, y1};
        gap = 0.1 * diameter(c);
    }
    ComplexBuilder b(c);
    double x = corner.x + gap;
    for (const auto& [r, a] : extras) {
        const double rho = std::sqrt(a / kPi);
        const Point o{x + rho, corner.y};
        const VertexId v0 = b.add_vertex(o + Point{rho, 0.0});
        const VertexId v1 = b.add_vertex(o - Point{rho, 0.0});
        b.add_edge(v0, v1, -kPi / 2, r, kExteriorLabel);
        b.add_edge(v1, v0, -kPi / 2, r, kExteriorLabel);
        x += 2.0 * rho + std::max(gap, 0.1 * rho);
    }
    return b.build();
}

DualGraph dual_adjacency(const BubbleComplex& c) {
    DualGraph g;
    g.node_count = c.face_count();
    for (EdgeId e = 0; e < c.edge_count(); ++e) g.edges.push_back({c.left_face(e), c.right_face(e), e});
    return g;
}

}  // namespace bubble
