#include "bubble/fixtures.hpp"

#include <cmath>

#include "bubble/families.hpp"

namespace bubble {

namespace {

Point centroid(std::initializer_list<Point> ps) {
    Point s{};
    for (Point p : ps) s = s + p;
    return (1.0 / static_cast<double>(ps.size())) * s;
}

double deg(double d) { return d * kPi / 180.0; }

}  // namespace

BubbleComplex tri_pentagon(double kappa, std::array<RegionLabel, 6> labels) {
    const double b = threegon_flat_side(kappa);
    ComplexBuilder c;
    const Point o{0, 0};
    const VertexId io = c.add_vertex(o);
    std::array<Point, 3> w{}, em{}, ep{};
    std::array<VertexId, 3> iw{}, iem{}, iep{};
    for (int k = 0; k < 3; ++k) {
        const double sigma = deg(90 + 120 * k);
        w[k] = 0.5 * b * unit(sigma);
        em[k] = w[k] + b * unit(sigma - deg(60));
        ep[k] = w[k] + b * unit(sigma + deg(60));
        iw[k] = c.add_vertex(w[k]), iem[k] = c.add_vertex(em[k]), iep[k] = c.add_vertex(ep[k]);
    }
    for (int k = 0; k < 3; ++k) {
        const int j = (k + 1) % 3;
        c.add_edge(io, iw[k], 0.0);
        c.add_edge(iw[k], iem[k], 0.0);
        c.add_edge(iw[k], iep[k], 0.0);
        c.add_edge(iem[k], iep[k], -arc_half_angle(3));
        c.add_edge(iep[k], iem[j], -arc_half_angle(5));
        c.seed(centroid({w[k], em[k], ep[k]}), labels[2 * k]);
        c.seed(centroid({o, w[k], ep[k], em[j], w[j]}), labels[2 * k + 1]);
    }
    return c.build();
}

BubbleComplex pentagon_complex(double kappa, std::array<RegionLabel, 5> labels) {
    const double b = threegon_flat_side(kappa), a = b / 2;
    const Point q{0, 0}, p{0, a}, w = a * unit(deg(330));
    const Point x = p + b * unit(deg(150)), y = p + b * unit(deg(30));
    const Point r = b * unit(deg(210));
    const Point y1 = w + b * unit(deg(30)), z = w + b * unit(deg(270));
    ComplexBuilder c;
    enum { Q, P, W, X, Y, R, Y1, Z };
    for (Point v : {q, p, w, x, y, r, y1, z}) c.add_vertex(v);
    c.add_edge(P, X, 0.0), c.add_edge(P, Y, 0.0), c.add_edge(P, Q, 0.0);
    c.add_edge(Q, W, 0.0), c.add_edge(Q, R, 0.0);
    c.add_edge(W, Y1, 0.0), c.add_edge(W, Z, 0.0);
    c.add_edge(Y, X, -arc_half_angle(3));
    c.add_edge(X, R, -arc_half_angle(4));
    c.add_edge(R, Z, -arc_half_angle(4));
    c.add_edge(Z, Y1, -arc_half_angle(3));
    c.add_edge(Y1, Y, -arc_half_angle(5));
    c.seed(centroid({p, y, x}), labels[0]);
    c.seed(centroid({p, x, r, q}), labels[1]);
    c.seed(centroid({p, q, w, y1, y}), labels[2]);
    c.seed(centroid({q, r, z, w}), labels[3]);
    c.seed(centroid({w, z, y1}), labels[4]);
    return c.build();
}

BubbleComplex slide_lenses(double lens_radius) {
    const double r1 = 1.0, r2 = lens_radius;
    const double d = two_arc_center_distance(r1, r2);
    const double x = (d * d + r1 * r1 - r2 * r2) / (2 * d);
    const double y = std::sqrt(r1 * r1 - x * x);
    const Point o{0, 0};
    const std::array<double, 2> psi{deg(90), deg(210)};
    ComplexBuilder c;
    std::array<VertexId, 2> top{}, bottom{};
    for (int k = 0; k < 2; ++k) {
        top[k] = c.add_vertex(rotate(Point{x, y}, psi[k]));
        bottom[k] = c.add_vertex(rotate(Point{x, -y}, psi[k]));
    }
    for (int k = 0; k < 2; ++k) {
        const Point center = d * unit(psi[k]);
        const Point t = c.vertices[top[k]], s = c.vertices[bottom[k]];
        c.add_edge(bottom[k], top[k], half_angle_about(center, s, t, true), 2 + k, kExteriorLabel);
        c.add_edge(top[k], bottom[k], std::asin((1 / r1 - 1 / r2) * y), 2 + k, 1);
    }
    // big arcs: the one ahead of the first lens, then the one behind it
    for (auto [from, to] : {std::pair{top[0], bottom[1]}, std::pair{top[1], bottom[0]}})
        c.add_edge(from, to, half_angle_about(o, c.vertices[from], c.vertices[to], true), 1, kExteriorLabel);
    return c.build();
}

BubbleComplex cut_circle(double h) {
    const double x = std::sqrt(1 - h * h);
    const Point o{0, 0};
    ComplexBuilder c;
    enum { TR, TL, BL, BR };
    for (Point v : {Point{x, h}, Point{-x, h}, Point{-x, -h}, Point{x, -h}}) c.add_vertex(v);
    auto arc = [&](int i, int j, RegionLabel r) {
        c.add_edge(i, j, half_angle_about(o, c.vertices[i], c.vertices[j], true), r, kExteriorLabel);
    };
    arc(TR, TL, 1), arc(TL, BL, 2), arc(BL, BR, 3), arc(BR, TR, 2);
    c.add_edge(TL, TR, 0.0, 1, 2);
    c.add_edge(BR, BL, 0.0, 3, 2);
    return c.build();
}

BubbleComplex tangent_circles() {
    ComplexBuilder c;
    c.add_vertex({0, 0}), c.add_vertex({2, 0}), c.add_vertex({-2, 0});
    c.add_edge(0, 1, -kPi / 2, 1, kExteriorLabel), c.add_edge(1, 0, -kPi / 2, 1, kExteriorLabel);
    c.add_edge(0, 2, -kPi / 2, 2, kExteriorLabel), c.add_edge(2, 0, -kPi / 2, 2, kExteriorLabel);
    return c.build();
}

BubbleComplex lens_chamber(double left_half_angle, double right_half_angle) {
    const double b = threegon_flat_side(1.0);
    ComplexBuilder c;
    const Point o{0, 0}, lo{0, 0.3 * b}, hi{0, 0.7 * b};
    std::array<Point, 3> outer{};
    enum { O, Lo, Hi, Out };
    for (Point v : {o, lo, hi}) c.add_vertex(v);
    for (int k = 0; k < 3; ++k) c.add_vertex(outer[k] = b * unit(kPi / 2 + k * kThirdTurn));
    c.add_edge(O, Lo, 0.0), c.add_edge(Hi, Out, 0.0);
    c.add_edge(Lo, Hi, left_half_angle), c.add_edge(Lo, Hi, right_half_angle);
    for (int k = 0; k < 3; ++k) {
        if (k > 0) c.add_edge(O, Out + k, 0.0);
        c.add_edge(Out + k, Out + (k + 1) % 3, -kPi / 2);
        c.seed(centroid({o, outer[k], outer[(k + 1) % 3]}), k + 1);
    }
    const double sl = 0.2 * b * std::tan(left_half_angle / 2), sr = 0.2 * b * std::tan(-right_half_angle / 2);
    c.seed({(sr - sl) / 2, 0.5 * b}, kEmptyLabel);
    return c.build();
}

BubbleComplex five_five() {
    const double w = arc_chord(5, 1.0);
    const Point e0{0, 0}, v{0, -1}, e1{-w, 0}, t1{-w, -0.75}, e2{w, 0}, t2{w, -1.05};
    auto meet = [](Point p, double a, Point q, double b) {
        const LineHit h = intersect_lines(p, unit(deg(a)), q, unit(deg(b)));
        return p + h.s * unit(deg(a));
    };
    const Point s1 = meet(v, 210, t1, -30), s2 = meet(v, -30, t2, 210);
    const Point q1{-w, s1.y - 0.4}, q2{w, s2.y - 0.4};
    ComplexBuilder c;
    enum { E0, V, E1, T1, E2, T2, S1, S2, Q1, Q2 };
    for (Point p : {e0, v, e1, t1, e2, t2, s1, s2, q1, q2}) c.add_vertex(p);
    c.add_edge(E0, E1, -arc_half_angle(5)), c.add_edge(E2, E0, -arc_half_angle(5));
    for (auto [p, q] : {std::pair{E1, T1}, {T1, Q1}, {T1, S1}, {S1, V}, {V, E0}, {V, S2}, {S2, T2}, {T2, E2},
                        {T2, Q2}, {S1, Q1}, {S2, Q2}, {Q1, Q2}})
        c.add_edge(p, q, 0.0);
    c.seed(centroid({e0, e1, t1, s1, v}), 1);
    c.seed(centroid({e0, v, s2, t2, e2}), 2);
    c.seed(centroid({t1, s1, q1}), 2);
    c.seed(centroid({v, s1, q1, q2, s2}), 3);
    c.seed(centroid({t2, s2, q2}), 1);
    return c.build();
}

BubbleComplex three_five_five(double a) {
    const double b3 = threegon_flat_side(1.0), b = b3 - a, side = (3 * a + b) / 2;
    const Point p{0, 0}, q{0, -a};
    const Point y1 = b3 * unit(deg(150)), y2 = b3 * unit(deg(30));
    const Point r1 = q + b * unit(deg(210)), r2 = q + b * unit(deg(330));
    const Point z1 = r1 + side * unit(deg(150)), z2 = r2 + side * unit(deg(30));
    const Point l1{z1.x, -1.2}, l2{z2.x, -1.2};
    ComplexBuilder c;
    enum { P, Q, Y1, Y2, R1, R2, Z1, Z2, L1, L2 };
    for (Point v : {p, q, y1, y2, r1, r2, z1, z2, l1, l2}) c.add_vertex(v);
    c.add_edge(Y2, Y1, -arc_half_angle(3));
    c.add_edge(Y1, Z1, -arc_half_angle(5)), c.add_edge(Z2, Y2, -arc_half_angle(5));
    for (auto [u, v] : {std::pair{P, Y1}, {P, Y2}, {P, Q}, {Q, R1}, {Q, R2}, {R1, Z1}, {R2, Z2}, {Z1, L1}, {Z2, L2},
                        {R1, L1}, {R2, L2}, {L1, L2}})
        c.add_edge(u, v, 0.0);
    c.seed(centroid({p, y2, y1}), 1);
    c.seed(centroid({p, y1, z1, r1, q}), 2);
    c.seed(centroid({p, q, r2, z2, y2}), 3);
    c.seed(centroid({z1, r1, l1}), 1);
    c.seed(centroid({q, r1, l1, l2, r2}), 4);
    c.seed(centroid({z2, r2, l2}), 1);
    return c.build();
}

}  // namespace bubble
