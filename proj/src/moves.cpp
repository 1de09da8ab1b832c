#include "bubble/moves.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "bubble/errors.hpp"
#include "bubble/regularity.hpp"

namespace bubble {

namespace {

using Cycle = std::vector<HalfEdgeId>;

void require(bool ok, const std::string& msg) {
    if (!ok) throw PreconditionError(msg);
}

const Face& interior_face(const BubbleComplex& c, FaceId f) {
    if (f <= kExteriorFace || f >= c.face_count()) throw InputError("face id out of range");
    return c.face(f);
}

double len(const BubbleComplex& c, HalfEdgeId h) { return arc_length(c.arc(h)); }
Point from(const BubbleComplex& c, HalfEdgeId h) { return c.vertex(c.origin(h)); }
Point to(const BubbleComplex& c, HalfEdgeId h) { return c.vertex(c.target(h)); }

// cyclic access into a boundary
HalfEdgeId at(const Cycle& cyc, long i) {
    const long n = static_cast<long>(cyc.size());
    return cyc[((i % n) + n) % n];
}

long index_of(const Cycle& cyc, HalfEdgeId h) {
    const auto it = std::find(cyc.begin(), cyc.end(), h);
    require(it != cyc.end(), "half-edge is not on the face boundary");
    return it - cyc.begin();
}

// the single half-edge of f whose twin lies in g
HalfEdgeId shared(const BubbleComplex& c, FaceId f, FaceId g) {
    std::vector<HalfEdgeId> hs;
    for (HalfEdgeId h : c.face(f).boundary())
        if (c.face_of(BubbleComplex::twin(h)) == g) hs.push_back(h);
    require(!hs.empty(), "faces are not adjacent");
    require(hs.size() == 1, "faces share more than one edge");
    return hs.front();
}

// the single curved half-edge of f facing the exterior
HalfEdgeId exterior_arc(const BubbleComplex& c, FaceId f) {
    std::vector<HalfEdgeId> hs;
    for (HalfEdgeId h : c.face(f).boundary())
        if (c.face_of(BubbleComplex::twin(h)) == kExteriorFace && !is_straight(c.arc(h))) hs.push_back(h);
    require(hs.size() == 1, "face must have exactly one exterior arc");
    return hs.front();
}

FaceId across(const BubbleComplex& c, HalfEdgeId h) { return c.face_of(BubbleComplex::twin(h)); }
RegionLabel label_across(const BubbleComplex& c, HalfEdgeId h) { return c.face(across(c, h)).region; }

bool straight(const BubbleComplex& c, HalfEdgeId h) { return is_straight(c.arc(h)); }

// corners of a face in boundary order
std::vector<Point> corners(const BubbleComplex& c, FaceId f) {
    std::vector<Point> out;
    for (HalfEdgeId h : c.face(f).boundary())
        if (!c.is_smooth(c.origin(h))) out.push_back(from(c, h));
    return out;
}

Point centroid(const std::vector<Point>& ps) {
    Point s{};
    for (Point p : ps) s = s + p;
    return (1.0 / static_cast<double>(ps.size())) * s;
}

// direction from `base` rotated by a third of a turn towards the left side of half-edge h
Point turn_into(const BubbleComplex& c, HalfEdgeId h, Point base) {
    const Point along = to(c, h) - from(c, h);
    const Point d = rotate(base, kThirdTurn);
    return cross(along, d) > 0 ? d : rotate(base, -kThirdTurn);
}

void require_close(double got, double want, double scale, const std::string& what) {
    require(std::abs(got - want) <= 1e-7 * scale, what + " does not match (" + std::to_string(got) + " vs " +
                                                       std::to_string(want) + ")");
}

VertexId split_at(ComplexBuilder& b, EdgeId e, Point p) {
    const Edge& ed = b.edges.at(e);
    const double f = arc_fraction({b.vertices[ed.from], b.vertices[ed.to], ed.half_angle}, p);
    require(f > 1e-9 && f < 1 - 1e-9, "split point is not inside the edge");
    return b.split_edge(e, f);
}

// after splitting edge e (the new piece appended last), the piece ending at v
EdgeId piece_at(const ComplexBuilder& b, EdgeId e, VertexId v) {
    const EdgeId added = static_cast<EdgeId>(b.edges.size()) - 1;
    if (b.edges[e].from == v || b.edges[e].to == v) return e;
    if (b.edges[added].from == v || b.edges[added].to == v) return added;
    throw PreconditionError("split piece not found");
}

void set_side(ComplexBuilder& b, HalfEdgeId h, RegionLabel r) {
    Edge& e = b.edges.at(BubbleComplex::edge_of(h));
    (h % 2 == 0 ? e.left : e.right) = r;
}

// polyline test for a proper crossing of two arcs away from shared endpoints
bool arcs_cross(const ArcSpec& a, const ArcSpec& b) {
    constexpr int kSteps = 256;
    std::vector<Point> pa, pb;
    for (int i = 0; i <= kSteps; ++i) pa.push_back(arc_point(a, double(i) / kSteps));
    for (int i = 0; i <= kSteps; ++i) pb.push_back(arc_point(b, double(i) / kSteps));
    const double eps = 1e-12 * (1 + norm(a.start));
    auto shared_end = [&](Point p) {
        return distance(p, b.start) < eps || distance(p, b.end) < eps;
    };
    for (int i = 0; i < kSteps; ++i) {
        if ((i == 0 && shared_end(pa[0])) || (i == kSteps - 1 && shared_end(pa[kSteps]))) continue;
        for (int j = 0; j < kSteps; ++j) {
            if ((j == 0 && (distance(pb[0], a.start) < eps || distance(pb[0], a.end) < eps)) ||
                (j == kSteps - 1 && (distance(pb[kSteps], a.start) < eps || distance(pb[kSteps], a.end) < eps)))
                continue;
            const LineHit h = intersect_lines(pa[i], pa[i + 1] - pa[i], pb[j], pb[j + 1] - pb[j]);
            if (h.s >= 0 && h.s <= 1 && h.t >= 0 && h.t <= 1) return true;
        }
    }
    return false;
}

std::vector<Point> sample_cycle_points(const ArcSpec& a) {
    constexpr int kSteps = 256;
    std::vector<Point> out;
    for (int i = 0; i < kSteps; ++i) out.push_back(arc_point(a, double(i) / kSteps));
    return out;
}

struct FourGon {
    HalfEdgeId arc, side2, central, side1;  // counterclockwise from the arc
};

FourGon fourgon_parts(const BubbleComplex& c, FaceId f) {
    require(c.face(f).side_count == 4 && c.face(f).boundary().size() == 4, "face is not a 4-gon");
    const Cycle& cyc = c.face(f).boundary();
    const long i = index_of(cyc, exterior_arc(c, f));
    const FourGon g{at(cyc, i), at(cyc, i + 1), at(cyc, i + 2), at(cyc, i + 3)};
    require(straight(c, g.side1) && straight(c, g.side2) && straight(c, g.central), "4-gon sides must be straight");
    return g;
}

void require_fivegon(const BubbleComplex& c, FaceId f) {
    require(c.face(f).side_count == 5 && c.face(f).boundary().size() == 5, "face is not a 5-gon");
}

void require_threegon(const BubbleComplex& c, FaceId f) {
    require(c.face(f).side_count == 3 && c.face(f).boundary().size() == 3, "face is not a 3-gon");
}

}  // namespace

std::string to_string(Witness w) {
    switch (w) {
        case Witness::kNone: return "none";
        case Witness::kShorter: return "shorter";
        case Witness::kEqualLengthNonregular: return "equal_length_nonregular";
    }
    return "unknown";
}

MoveReport measure_move(std::string name, const BubbleComplex& before, BubbleComplex after, double tol) {
    MoveReport r;
    r.move = std::move(name);
    r.result = std::move(after);
    const double l0 = total_perimeter(before);
    r.perimeter_delta = total_perimeter(r.result) - l0;
    std::set<RegionLabel> labels;
    for (RegionLabel x : before.labels()) if (x > 0) labels.insert(x);
    for (RegionLabel x : r.result.labels()) if (x > 0) labels.insert(x);
    auto area = [](const BubbleComplex& c, RegionLabel x) {
        return c.faces_with_label(x).empty() ? 0.0 : region_area(c, x);
    };
    for (RegionLabel x : labels) r.area_deltas[x] = area(r.result, x) - area(before, x);
    r.violation = validate(r.result, tol).first_violation();
    if (r.perimeter_delta < -tol * std::max(1.0, l0))
        r.witness = Witness::kShorter;
    else if (!r.violation.empty())
        r.witness = Witness::kEqualLengthNonregular;
    return r;
}

MoveReport fill_empty_chamber(const BubbleComplex& c, FaceId chamber) {
    const Face& f = interior_face(c, chamber);
    require(f.region == kEmptyLabel, "face is not an empty chamber");
    std::map<RegionLabel, double> shared_length;
    for (HalfEdgeId h : f.boundary())
        if (const RegionLabel r = label_across(c, h); r > 0) shared_length[r] += len(c, h);
    require(!shared_length.empty(), "empty chamber has no interior neighbour");
    RegionLabel best = shared_length.begin()->first;
    for (const auto& [r, l] : shared_length)
        if (l > shared_length[best] * (1 + 1e-12)) best = r;

    ComplexBuilder b(c);
    std::vector<EdgeId> erase;
    for (HalfEdgeId h : f.boundary()) {
        set_side(b, h, best);
        if (label_across(c, h) == best) erase.push_back(BubbleComplex::edge_of(h));
    }
    b.remove_edges(erase);
    return measure_move("fill_empty_chamber", c, b.build());
}

MoveReport slide_2gon(const BubbleComplex& c, FaceId lens, double displacement) {
    const Face& f = interior_face(c, lens);
    require(f.side_count == 2, "face is not a 2-gon");
    if (displacement == 0.0) return measure_move("slide_2gon", c, c);

    std::set<VertexId> moving;
    for (HalfEdgeId h : f.boundary()) moving.insert(c.origin(h));
    // the edge leaving each corner away from the lens
    std::vector<EdgeId> outer;
    for (VertexId v : moving) {
        if (c.is_smooth(v)) continue;
        require(c.degree(v) == 3, "lens corners must be trivalent");
        for (HalfEdgeId h : c.outgoing(v))
            if (c.face_of(h) != lens && across(c, h) != lens) outer.push_back(BubbleComplex::edge_of(h));
    }
    require(outer.size() == 2 && outer[0] != outer[1], "lens must have two separate neighbouring arcs");
    const ArcSpec a0 = c.edge_arc(outer[0]), a1 = c.edge_arc(outer[1]);
    require(!is_straight(a0) && !is_straight(a1), "arcs beside the lens must be curved");
    const Point o = arc_center(a0);
    const double radius = std::abs(arc_radius(a0));
    const double scale = diameter(c);
    require(distance(o, arc_center(a1)) <= 1e-9 * scale && std::abs(std::abs(arc_radius(a1)) - radius) <= 1e-9 * scale,
            "arcs beside the lens are not on one circle");

    const double phi = displacement / radius;
    ComplexBuilder b(c);
    for (VertexId v : moving) b.vertices[v] = o + rotate(c.vertex(v) - o, phi);
    std::vector<EdgeId> vanished;
    for (EdgeId e : outer) {
        Edge& ed = b.edges[e];
        const bool start_moves = moving.contains(ed.from);
        // signed counterclockwise sweep about the circle's center
        const double sweep = -2 * ed.half_angle;
        const double now = start_moves ? sweep - phi : sweep + phi;
        if (std::abs(now) <= 1e-9 * std::abs(sweep)) {
            vanished.push_back(e);
            continue;
        }
        if (now * sweep < 0) throw InfeasibleError("displacement exceeds the arc ahead of the lens");
        ed.half_angle = -now / 2;
    }
    for (EdgeId e : vanished) {
        // the lens corner lands on the far end of the vanished arc
        const Edge ed = b.edges[e];
        const VertexId gone = moving.contains(ed.from) ? ed.from : ed.to;
        const VertexId keep = gone == ed.from ? ed.to : ed.from;
        for (Edge& x : b.edges) {
            if (x.from == gone) x.from = keep;
            if (x.to == gone) x.to = keep;
        }
    }
    b.remove_edges(vanished);
    return measure_move("slide_2gon", c, b.build());
}

MoveReport reflect_4gon_into_3gon(const BubbleComplex& c, FaceId fourgon, FaceId threegon) {
    interior_face(c, fourgon), interior_face(c, threegon);
    require_threegon(c, threegon);
    const FourGon g = fourgon_parts(c, fourgon);
    const HalfEdgeId beta = shared(c, fourgon, threegon);
    require(beta == g.side1 || beta == g.side2, "3-gon must share a side of the 4-gon");
    // side2 runs from the arc inwards, side1 from the inside to the arc
    const bool inward = beta == g.side2;
    const HalfEdgeId far_side = inward ? g.side1 : g.side2;
    const Point p = inward ? to(c, beta) : from(c, beta);
    const Point x = inward ? from(c, beta) : to(c, beta);
    const RegionLabel t_label = c.face(threegon).region, f_label = c.face(fourgon).region;
    require(t_label != f_label, "faces carry the same label");
    require(label_across(c, far_side) == t_label, "face beyond the 4-gon must carry the 3-gon's label");

    const Point m = 0.5 * (p + x);
    const Point d = turn_into(c, BubbleComplex::twin(beta), unit(p - m));
    const HalfEdgeId t_arc = exterior_arc(c, threegon);
    const double s = ray_hits_arc(m, d, c.arc(t_arc));
    require(std::isfinite(s), "new edge misses the 3-gon's arc");
    const double scale = diameter(c);
    require_close(s, len(c, far_side), scale, "new edge length");
    const Point n = m + s * d;

    std::vector<Point> t_corners = corners(c, threegon);
    Point y{};
    for (Point q : t_corners)
        if (distance(q, p) > 1e-9 * scale && distance(q, x) > 1e-9 * scale) y = q;
    const std::vector<Point> f_corners = corners(c, fourgon);

    ComplexBuilder b(c);
    const EdgeId eb = BubbleComplex::edge_of(beta);
    const VertexId vx = c.origin(inward ? beta : BubbleComplex::twin(beta));
    const VertexId vm = split_at(b, eb, m);
    const EdgeId outer_half = piece_at(b, eb, vx);
    const VertexId vn = split_at(b, BubbleComplex::edge_of(t_arc), n);
    b.add_edge(vm, vn, 0.0);
    b.seed(centroid({m, p, y, n}), f_label);
    b.seed(centroid(f_corners), t_label);
    b.remove_edges({outer_half, BubbleComplex::edge_of(far_side)});
    return measure_move("reflect_4gon_into_3gon", c, b.build());
}

namespace {

struct Token {
    double length, curvature, corner;
};

std::vector<Token> tokens(const BubbleComplex& c, FaceId f) {
    const auto sides = c.sides(f);
    std::vector<Token> out;
    for (std::size_t i = 0; i < sides.size(); ++i) {
        const auto& s = sides[i];
        double l = 0.0;
        for (HalfEdgeId h : s) l += len(c, h);
        const HalfEdgeId last = s.back(), first_next = sides[(i + 1) % sides.size()].front();
        out.push_back({l, arc_curvature(c.arc(s.front())),
                       meeting_angle(reversed(c.arc(last)), c.arc(first_next), to(c, last))});
    }
    return out;
}

bool congruent(const BubbleComplex& c, FaceId f1, FaceId f2) {
    const auto a = tokens(c, f1), b = tokens(c, f2);
    if (a.size() != b.size()) return false;
    const std::size_t n = a.size();
    const double scale = diameter(c), tol = 1e-8;
    auto same = [&](const Token& x, const Token& y) {
        return std::abs(x.length - y.length) <= tol * scale && std::abs(x.curvature - y.curvature) * scale <= tol &&
               std::abs(x.corner - y.corner) <= tol;
    };
    for (std::size_t r = 0; r < n; ++r) {
        bool direct = true, mirror = true;
        for (std::size_t i = 0; i < n; ++i) {
            direct = direct && same(a[(i + r) % n], b[i]);
            // reversed traversal: sides backwards, each followed by the corner before it
            const Token& side = a[(r + n - i) % n];
            const Token& corner = a[(r + 2 * n - i - 1) % n];
            mirror = mirror && same({side.length, side.curvature, corner.corner}, b[i]);
        }
        if (direct || mirror) return true;
    }
    return false;
}

}  // namespace

MoveReport swap_regions(const BubbleComplex& c, FaceId f1, FaceId f2) {
    const RegionLabel r1 = interior_face(c, f1).region, r2 = interior_face(c, f2).region;
    require(f1 != f2 && r1 != r2, "faces carry the same label");
    require(r1 > 0 && r2 > 0, "only labelled regions can be swapped");
    require(congruent(c, f1, f2), "faces are not congruent");
    ComplexBuilder b(c);
    for (HalfEdgeId h : c.face(f1).boundary()) set_side(b, h, r2);
    for (HalfEdgeId h : c.face(f2).boundary()) set_side(b, h, r1);
    std::vector<EdgeId> erase;
    for (EdgeId e = 0; e < static_cast<EdgeId>(b.edges.size()); ++e)
        if (b.edges[e].left == b.edges[e].right) erase.push_back(e);
    require(!erase.empty(), "swap leaves no edge between equal labels");
    b.remove_edges(erase);
    return measure_move("swap_regions", c, b.build());
}

namespace {

MoveReport reflect_small_fourgon(const BubbleComplex& c, FaceId small, FaceId large) {
    const FourGon s = fourgon_parts(c, small), l = fourgon_parts(c, large);
    const double scale = diameter(c);
    const double t = 0.5 * (len(c, s.side1) + len(c, s.side2));
    require_close(len(c, s.side1), len(c, s.side2), scale, "small 4-gon sides");
    require(t < len(c, l.side1) && t < len(c, l.side2), "small 4-gon must have shorter sides");
    const RegionLabel rs = c.face(small).region, rl = c.face(large).region;
    require(label_across(c, s.central) == rl, "face behind the small 4-gon must carry the large 4-gon's label");

    const Point e1 = from(c, l.arc), e2 = to(c, l.arc);
    const Point w2 = to(c, l.side2), w1 = from(c, l.side1);
    const Point u2 = e2 + t * unit(w2 - e2), u1 = e1 + t * unit(w1 - e1);
    require_close(distance(u1, u2), len(c, s.central), scale, "inserted edge length");

    ComplexBuilder b(c);
    const VertexId v2 = split_at(b, BubbleComplex::edge_of(l.side2), u2);
    const VertexId v1 = split_at(b, BubbleComplex::edge_of(l.side1), u1);
    b.add_edge(v1, v2, 0.0);
    b.seed(centroid({e1, e2, u2, u1}), rs);
    b.seed(centroid({u1, u2, w2, w1}), rl);
    b.seed(centroid(corners(c, small)), rl);
    b.remove_edges({BubbleComplex::edge_of(s.central)});
    return measure_move("reflect_small_into_large", c, b.build());
}

MoveReport reflect_small_fivegon(const BubbleComplex& c, FaceId small, FaceId large) {
    const HalfEdgeId hs = shared(c, small, large);
    require(straight(c, hs), "shared edge must be straight");
    const Cycle& cs = c.face(small).boundary();
    const Cycle& cl = c.face(large).boundary();
    const long i = index_of(cs, hs);
    const bool arc_after = across(c, at(cs, i + 1)) == kExteriorFace;
    require(arc_after || across(c, at(cs, i - 1)) == kExteriorFace, "shared edge must meet the exterior");
    // alpha and A run away from the shared vertex V inside the small 5-gon
    const HalfEdgeId alpha = arc_after ? at(cs, i - 1) : at(cs, i + 1);
    const HalfEdgeId a_edge = arc_after ? at(cs, i - 2) : at(cs, i + 2);
    const VertexId v = arc_after ? c.origin(hs) : c.target(hs);
    const VertexId e0 = arc_after ? c.target(hs) : c.origin(hs);

    const HalfEdgeId hl = BubbleComplex::twin(hs);
    const long j = index_of(cl, hl);
    const bool v_first = c.origin(hl) == v;
    const HalfEdgeId beta = v_first ? at(cl, j - 1) : at(cl, j + 1);
    const HalfEdgeId l_arc = v_first ? at(cl, j + 1) : at(cl, j - 1);
    const HalfEdgeId far_side = v_first ? at(cl, j + 2) : at(cl, j - 2);
    require(across(c, l_arc) == kExteriorFace, "large 5-gon's arc must follow the shared edge");
    require(straight(c, alpha) && straight(c, beta) && straight(c, far_side), "inner edges must be straight");
    const double la = len(c, alpha), lb = len(c, beta);
    require(la < lb, "edge next to the shared side must be shorter in the small 5-gon");
    const RegionLabel rs = c.face(small).region, rl = c.face(large).region;
    require(label_across(c, a_edge) == rl, "face beyond the small 5-gon must carry the large 5-gon's label");

    const Point pv = c.vertex(v);
    const Point s2 = c.vertex(c.origin(beta)) == pv ? to(c, beta) : from(c, beta);
    const Point m = pv + la * unit(s2 - pv);
    const Point d = turn_into(c, beta, unit(pv - m));
    const LineHit hit = intersect_lines(m, d, from(c, far_side), to(c, far_side) - from(c, far_side));
    require(hit.s > 0 && hit.t > 0 && hit.t < 1, "new edge misses the far side of the large 5-gon");
    const Point n = m + hit.s * d;
    const double scale = diameter(c);
    require_close(hit.s, len(c, a_edge), scale, "new edge length");
    const Point e2 = v_first ? to(c, l_arc) : from(c, l_arc);

    ComplexBuilder b(c);
    const VertexId vm = split_at(b, BubbleComplex::edge_of(beta), m);
    const VertexId vn = split_at(b, BubbleComplex::edge_of(far_side), n);
    b.add_edge(vm, vn, 0.0);
    b.seed(centroid({pv, c.vertex(e0), e2, n, m}), rs);
    b.seed(centroid(corners(c, small)), rl);
    b.remove_edges({BubbleComplex::edge_of(a_edge)});
    return measure_move("reflect_small_into_large", c, b.build());
}

}  // namespace

MoveReport reflect_small_into_large(const BubbleComplex& c, FaceId small, FaceId large) {
    const Face& fs = interior_face(c, small);
    const Face& fl = interior_face(c, large);
    require(fs.side_count == fl.side_count && (fs.side_count == 4 || fs.side_count == 5),
            "faces must both be 4-gons or both 5-gons");
    require(fs.region != fl.region, "faces carry the same label");
    const double ks = arc_curvature(c.arc(exterior_arc(c, small)));
    const double kl = arc_curvature(c.arc(exterior_arc(c, large)));
    require(std::abs(ks - kl) * diameter(c) <= 1e-8, "faces belong to different curvature families");
    const double as = face_area(c, small), al = face_area(c, large);
    require(std::abs(as - al) > 1e-9 * std::max(as, al), "faces have equal size; swap them instead");
    require(as < al, "first face must be the smaller one");
    return fs.side_count == 4 ? reflect_small_fourgon(c, small, large) : reflect_small_fivegon(c, small, large);
}

MoveReport reflect_5gon_into_3gon(const BubbleComplex& c, FaceId fivegon, FaceId threegon) {
    interior_face(c, fivegon), interior_face(c, threegon);
    require_fivegon(c, fivegon);
    require_threegon(c, threegon);
    const HalfEdgeId hg = shared(c, fivegon, threegon);
    require(straight(c, hg), "shared edge must be straight");
    const HalfEdgeId t_arc = exterior_arc(c, threegon);
    const VertexId ta = c.origin(t_arc), tb = c.target(t_arc);
    // P is the 3-gon's inner vertex, Y the shared edge's exterior end
    const VertexId vp = (c.origin(hg) == ta || c.origin(hg) == tb) ? c.target(hg) : c.origin(hg);
    const VertexId vy = vp == c.origin(hg) ? c.target(hg) : c.origin(hg);
    require(vp != ta && vp != tb, "shared edge must run from the 3-gon's inner vertex");

    const Cycle& cg = c.face(fivegon).boundary();
    const long i = index_of(cg, hg);
    const int step = c.target(hg) == vp ? 1 : -1;
    const HalfEdgeId ea = at(cg, i + step), eb = at(cg, i + 2 * step), ec = at(cg, i + 3 * step);
    require(across(c, at(cg, i + 4 * step)) == kExteriorFace, "5-gon arc must lie beyond its far side");
    require(straight(c, ea) && straight(c, eb) && straight(c, ec), "5-gon sides must be straight");
    const RegionLabel rt = c.face(threegon).region, rg = c.face(fivegon).region;
    require(rt != rg, "faces carry the same label");
    require(label_across(c, ec) == rt, "face beyond the 5-gon must carry the 3-gon's label");

    const double a = len(c, ea), b_len = len(c, eb), c_len = len(c, ec);
    const Point p = c.vertex(vp), y = c.vertex(vy);
    const Point m = p + a * unit(y - p);
    const Point d1 = turn_into(c, BubbleComplex::twin(hg), unit(p - m));
    // the second segment turns back by a sixth of a turn, parallel to the 3-gon's other side
    const double sense = cross(unit(p - m), d1) > 0 ? 1.0 : -1.0;
    const Point d2 = rotate(d1, -sense * kPi / 3);
    const Point k = m + b_len * d1;
    const double s = ray_hits_arc(k, d2, c.arc(t_arc));
    require(std::isfinite(s), "copy misses the 3-gon's arc");
    const double scale = diameter(c);
    require_close(s, c_len, scale, "copied far side");
    const Point n = k + s * d2;
    const Point x = c.vertex(ta == vy ? tb : ta);

    ComplexBuilder bld(c);
    const EdgeId e_sigma = BubbleComplex::edge_of(hg);
    const VertexId vm = split_at(bld, e_sigma, m);
    const EdgeId top_half = piece_at(bld, e_sigma, vy);
    const VertexId vn = split_at(bld, BubbleComplex::edge_of(t_arc), n);
    const VertexId vk = bld.add_vertex(k);
    bld.add_edge(vm, vk, 0.0);
    bld.add_edge(vk, vn, 0.0);
    bld.seed(centroid({m, p, x, n, k}), rg);
    bld.seed(centroid(corners(c, fivegon)), rt);
    bld.remove_edges({top_half, BubbleComplex::edge_of(ec)});
    return measure_move("reflect_5gon_into_3gon", c, bld.build());
}

MoveReport reflect_5gon_into_4gon(const BubbleComplex& c, FaceId fivegon, FaceId fourgon) {
    interior_face(c, fivegon), interior_face(c, fourgon);
    require_fivegon(c, fivegon);
    const FourGon f = fourgon_parts(c, fourgon);
    require(shared(c, fourgon, fivegon) == f.central, "5-gon must share the 4-gon's central edge");
    const RegionLabel rf = c.face(fourgon).region, rg = c.face(fivegon).region;
    require(rf != rg, "faces carry the same label");

    const Cycle& cg = c.face(fivegon).boundary();
    const long ia = index_of(cg, exterior_arc(c, fivegon));
    std::vector<HalfEdgeId> doomed;
    for (HalfEdgeId h : {at(cg, ia - 1), at(cg, ia + 1)})
        if (label_across(c, h) == rf) doomed.push_back(h);
    require(doomed.size() == 1, "exactly one side of the 5-gon must face the 4-gon's label");

    const double scale = diameter(c);
    const double side = len(c, f.side2);
    require_close(len(c, f.central), side / 2, scale, "4-gon central edge");
    const Point e2 = from(c, f.side2), w2 = to(c, f.side2);
    const Point m = 0.5 * (e2 + w2);
    const Point d = turn_into(c, f.side2, unit(w2 - m));
    const double s = ray_hits_arc(m, d, c.arc(f.arc));
    require(std::isfinite(s), "new edge misses the 4-gon's arc");
    require_close(s, side, scale, "new edge length");
    require_close(len(c, doomed.front()), side, scale, "5-gon side");
    const Point n = m + s * d;

    ComplexBuilder b(c);
    const VertexId vm = split_at(b, BubbleComplex::edge_of(f.side2), m);
    const VertexId vn = split_at(b, BubbleComplex::edge_of(f.arc), n);
    b.add_edge(vm, vn, 0.0);
    b.seed(centroid({m, w2, to(c, f.central), to(c, f.side1), n}), rg);
    b.seed(centroid(corners(c, fivegon)), rf);
    b.remove_edges({BubbleComplex::edge_of(doomed.front())});
    return measure_move("reflect_5gon_into_4gon", c, b.build());
}

MoveReport pop_and_expand(const BubbleComplex& c, FaceId pop, FaceId grow, double theta) {
    if (!(theta > kPi / 2 && theta < kPi)) throw InputError("theta must lie in (pi/2, pi)");
    interior_face(c, pop), interior_face(c, grow);
    require_threegon(c, pop);
    require_threegon(c, grow);
    require(pop != grow, "pop and grow must be different 3-gons");
    require(c.face(pop).region == c.face(grow).region, "3-gons must belong to the same region");
    const HalfEdgeId hp = exterior_arc(c, pop), hg = exterior_arc(c, grow);

    ComplexBuilder b(c);
    for (HalfEdgeId h : c.face(pop).boundary())
        if (h != hp) set_side(b, h, kExteriorLabel);
    const EdgeId eg = BubbleComplex::edge_of(hg), ep = BubbleComplex::edge_of(hp);
    b.edges[eg].half_angle = std::copysign(theta, b.edges[eg].half_angle);
    const ArcSpec grown{b.vertices[b.edges[eg].from], b.vertices[b.edges[eg].to], b.edges[eg].half_angle};
    for (EdgeId e = 0; e < c.edge_count(); ++e) {
        if (e == eg || e == ep) continue;
        if (arcs_cross(grown, c.edge_arc(e))) throw InfeasibleError("widened arc runs into the complex");
    }
    // nothing may sit in the region swept between the old and the widened arc
    std::vector<Point> swept = sample_cycle_points(grown);
    for (Point p : sample_cycle_points(reversed(c.edge_arc(eg)))) swept.push_back(p);
    const VertexId ga = c.edge(eg).from, gb = c.edge(eg).to;
    for (VertexId v = 0; v < c.vertex_count(); ++v)
        if (v != ga && v != gb && winding_number(swept, c.vertex(v)) != 0)
            throw InfeasibleError("widened arc encloses part of the complex");
    b.remove_edges({ep});
    return measure_move("pop_and_expand", c, b.build());
}

double pop_break_even_angle() {
    double lo = 2.2, hi = 2.4;
    auto f = [](double t) { return t - kPi * std::sin(t); };
    while (hi - lo > 1e-15) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) < 0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

std::vector<FaceId> detect_double_exterior(const BubbleComplex& c) { return double_exterior_faces(c); }

}  // namespace bubble
