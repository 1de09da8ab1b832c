#include "bubble/families.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "bubble/errors.hpp"

namespace bubble {

namespace {

const double kSqrt3 = std::sqrt(3.0);

void require_curvature(double kappa) {
    if (!(kappa > 0.0) || !std::isfinite(kappa)) throw InfeasibleError("curvature must be positive");
}

Point centroid(std::initializer_list<Point> ps) {
    Point s{};
    for (Point p : ps) s = s + p;
    return (1.0 / static_cast<double>(ps.size())) * s;
}

// closed counterclockwise polygon whose first edge carries the arc
BubbleComplex single_face(const std::vector<Point>& corners, double arc_half_angle, RegionLabel r) {
    ComplexBuilder b;
    for (Point p : corners) b.add_vertex(p);
    const int n = static_cast<int>(corners.size());
    for (int i = 0; i < n; ++i) b.add_edge(i, (i + 1) % n, i == 0 ? arc_half_angle : 0.0, r, kExteriorLabel);
    return b.build();
}

}  // namespace

double threegon_flat_side(double kappa) {
    require_curvature(kappa);
    return 2.0 / (kSqrt3 * kappa);
}

double arc_chord(int sides, double kappa) {
    require_curvature(kappa);
    return 2.0 * std::sin(arc_half_angle(sides)) / kappa;
}

double arc_half_angle(int sides) {
    if (sides < 2 || sides > 5) throw InputError("equal-pressure n-gons with one arc have 2 to 5 sides");
    return kPi - sides * kPi / 6.0;
}

BubbleComplex build_ngon(const NgonParams& p) {
    require_curvature(p.kappa);
    const double k = p.kappa;
    switch (p.kind) {
        case NgonKind::kThreeGon: {
            const double c = arc_chord(3, k);
            return single_face({{-c / 2, 0}, {c / 2, 0}, {0, c / (2 * kSqrt3)}}, -arc_half_angle(3), 1);
        }
        case NgonKind::kFourGon: {
            const double c = arc_chord(4, k);
            const double t = p.t.value_or(c / 2);
            if (!(t > 0.0) || !(t < c)) throw InfeasibleError("4-gon side must lie in (0, sqrt3/kappa)");
            const Point a{-c / 2, 0}, b{c / 2, 0};
            return single_face({a, b, b + t * unit(2 * kPi / 3), a + t * unit(kPi / 3)}, -arc_half_angle(4), 1);
        }
        case NgonKind::kFiveGon: {
            const double c = arc_chord(5, k);
            const double flat = threegon_flat_side(k);
            double u = p.u.value_or(flat / 2), v = p.v.value_or(flat / 2);
            if (!(u > 0.0) || !(v > 0.0)) throw InfeasibleError("5-gon inner edges must be positive");
            const double scale = flat / (u + v);
            u *= scale, v *= scale;
            const double side_u = p.t.value_or(flat);
            const double side_v = side_u - (v - u) / 2;
            if (!(side_u > 0.0) || !(side_v > 0.0)) throw InfeasibleError("5-gon sides must be positive");
            const Point a{-c / 2, 0}, b{c / 2, 0};
            const Point pb = b + Point{0, side_v}, pa = a + Point{0, side_u};
            // inner vertex where the edges leaving the two sides at 2pi/3 meet
            const LineHit hit = intersect_lines(pb, unit(5 * kPi / 6), pa, unit(kPi / 6));
            if (!(hit.s > 0.0) || !(hit.t > 0.0)) throw InfeasibleError("5-gon inner edges do not meet");
            return single_face({a, b, pb, pb + hit.s * unit(5 * kPi / 6), pa}, -arc_half_angle(5), 1);
        }
    }
    throw InputError("unknown n-gon kind");
}

std::array<double, 3> TriangleSpec::angles() const {
    if (!(a > 0 && b > 0 && c > 0) || a >= b + c || b >= a + c || c >= a + b)
        throw InfeasibleError("side lengths violate the triangle inequality");
    const double alpha = std::acos(std::clamp((b * b + c * c - a * a) / (2 * b * c), -1.0, 1.0));
    const double beta = std::acos(std::clamp((a * a + c * c - b * b) / (2 * a * c), -1.0, 1.0));
    return {alpha, beta, kPi - alpha - beta};
}

std::array<double, 3> threegon_from_triangle(const TriangleSpec& t) {
    const auto [alpha, beta, gamma] = t.angles();
    return {alpha - kPi / 6, beta - kPi / 6, gamma - kPi / 6};
}

BubbleComplex build_threegon(const TriangleSpec& t, RegionLabel r) {
    const auto ang = t.angles();
    const auto bulge = threegon_from_triangle(t);
    const Point B{0, 0}, C{t.a, 0}, A = t.c * unit(ang[1]);
    ComplexBuilder b;
    b.add_vertex(B), b.add_vertex(C), b.add_vertex(A);
    // counterclockwise, so an outward bulge is to the right
    b.add_edge(0, 1, -bulge[0], r, kExteriorLabel);
    b.add_edge(1, 2, -bulge[1], r, kExteriorLabel);
    b.add_edge(2, 0, -bulge[2], r, kExteriorLabel);
    return b.build();
}

BubbleComplex threegon_from_curvatures(double k1, double k2, double k3, bool mirrored) {
    // With circumradius R the angle opposite side i obeys cot(alpha_i) = sqrt3 - 2 R k_i;
    // R is fixed by requiring the angles to sum to pi.
    const std::array<double, 3> k{k1, k2, k3};
    for (double x : k)
        if (!std::isfinite(x)) throw InputError("curvatures must be finite");
    auto angle = [&](int i, double r) { return kPi / 2 - std::atan(kSqrt3 - 2 * r * k[i]); };
    auto excess = [&](double r) { return angle(0, r) + angle(1, r) + angle(2, r) - kPi; };
    const double kmax = std::max({std::abs(k1), std::abs(k2), std::abs(k3)});
    if (kmax == 0.0) throw InfeasibleError("three straight sides cannot meet at 2pi/3");
    double lo = 0.0, hi = NAN;
    for (double r = 1e-6 / kmax; r < 1e8 / kmax; r *= 1.05) {
        if (excess(r) > 0) {
            hi = r;
            break;
        }
        lo = r;
    }
    if (std::isnan(hi)) throw InfeasibleError("no 3-gon has these curvatures");
    for (int it = 0; it < 200 && hi - lo > 1e-16 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (excess(mid) > 0 ? hi : lo) = mid;
    }
    const double r = 0.5 * (lo + hi);
    const TriangleSpec t{2 * r * std::sin(angle(0, r)), 2 * r * std::sin(angle(1, r)), 2 * r * std::sin(angle(2, r))};
    const BubbleComplex c = build_threegon(t);
    return mirrored ? reflect(c) : c;
}

namespace {

BubbleComplex double_from_radii(double r1, double r2) {
    const double d = two_arc_center_distance(r1, r2);
    const double x = (d * d + r1 * r1 - r2 * r2) / (2 * d);
    const double y = std::sqrt(std::max(r1 * r1 - x * x, 0.0));
    const Point o1{0, 0}, o2{d, 0}, top{x, y}, bottom{x, -y};
    ComplexBuilder b;
    b.add_vertex(top), b.add_vertex(bottom);
    b.add_edge(0, 1, half_angle_about(o1, top, bottom, true), 1, kExteriorLabel);
    b.add_edge(1, 0, half_angle_about(o2, bottom, top, true), 2, kExteriorLabel);
    // downward middle edge has region 2 on its left; curvature p1 - p2
    const double kappa = 1.0 / r1 - 1.0 / r2;
    b.add_edge(0, 1, std::asin(std::clamp(kappa * y, -1.0, 1.0)), 2, 1);
    return b.build();
}

}  // namespace

BubbleComplex construct_standard_double(double a1, double a2) {
    if (!(a1 > 0.0) || !(a2 > 0.0)) throw InfeasibleError("areas must be positive");
    // equal-area lobe of radius r encloses r^2 (2pi/3 + sqrt3/4)
    const double lobe = 2 * kPi / 3 + kSqrt3 / 4;
    double r1 = std::sqrt(a1 / lobe), r2 = std::sqrt(a2 / lobe);
    auto residual = [&](double s1, double s2) {
        const BubbleComplex c = double_from_radii(s1, s2);
        return std::array<double, 2>{region_area(c, 1) - a1, region_area(c, 2) - a2};
    };
    auto size = [&](const std::array<double, 2>& f) { return std::max(std::abs(f[0]) / a1, std::abs(f[1]) / a2); };
    auto f = residual(r1, r2);
    for (int it = 0; it < 100 && size(f) > 1e-14; ++it) {
        const double h1 = 1e-7 * r1, h2 = 1e-7 * r2;
        const auto f1p = residual(r1 + h1, r2), f1m = residual(r1 - h1, r2);
        const auto f2p = residual(r1, r2 + h2), f2m = residual(r1, r2 - h2);
        const double j11 = (f1p[0] - f1m[0]) / (2 * h1), j21 = (f1p[1] - f1m[1]) / (2 * h1);
        const double j12 = (f2p[0] - f2m[0]) / (2 * h2), j22 = (f2p[1] - f2m[1]) / (2 * h2);
        const double det = j11 * j22 - j12 * j21;
        const double d1 = (f[0] * j22 - f[1] * j12) / det, d2 = (j11 * f[1] - j21 * f[0]) / det;
        double step = 1.0;
        for (; step > 1e-6; step *= 0.5) {
            const double n1 = r1 - step * d1, n2 = r2 - step * d2;
            if (n1 <= 0 || n2 <= 0) continue;
            const auto fn = residual(n1, n2);
            if (size(fn) < size(f)) {
                r1 = n1, r2 = n2, f = fn;
                break;
            }
        }
        if (step <= 1e-6) break;
    }
    if (size(f) > 1e-12) throw NumericalError("double bubble areas did not converge");
    return double_from_radii(r1, r2);
}

BubbleComplex construct_standard_triple(double kappa) {
    const double b = threegon_flat_side(kappa);
    ComplexBuilder c;
    const Point o{0, 0};
    c.add_vertex(o);
    std::array<Point, 3> outer{};
    for (int k = 0; k < 3; ++k) c.add_vertex(outer[k] = b * unit(kPi / 2 + k * kThirdTurn));
    for (int k = 0; k < 3; ++k) {
        c.add_edge(0, 1 + k, 0.0);
        c.add_edge(1 + k, 1 + (k + 1) % 3, -kPi / 2);
        c.seed(centroid({o, outer[k], outer[(k + 1) % 3]}), k + 1);
    }
    return c.build();
}

BubbleComplex construct_standard_quadruple(double kappa, std::array<RegionLabel, 4> labels) {
    const double b = threegon_flat_side(kappa), a = b / 2;
    const Point p{0, a / 2}, q{0, -a / 2};
    const Point x = p + b * unit(kPi / 6), y = p + b * unit(5 * kPi / 6);
    const Point r = q + b * unit(-kPi / 6), s = q + b * unit(7 * kPi / 6);
    ComplexBuilder c;
    for (Point v : {p, q, x, y, r, s}) c.add_vertex(v);
    enum { P, Q, X, Y, R, S };
    c.add_edge(P, Q, 0.0), c.add_edge(P, X, 0.0), c.add_edge(P, Y, 0.0);
    c.add_edge(Q, R, 0.0), c.add_edge(Q, S, 0.0);
    c.add_edge(X, Y, -arc_half_angle(3));
    c.add_edge(Y, S, -arc_half_angle(4));
    c.add_edge(S, R, -arc_half_angle(3));
    c.add_edge(R, X, -arc_half_angle(4));
    c.seed(centroid({p, x, y}), labels[0]);
    c.seed(centroid({p, x, r, q}), labels[1]);
    c.seed(centroid({p, y, s, q}), labels[2]);
    c.seed(centroid({q, r, s}), labels[3]);
    return c.build();
}

FlowerParams FlowerParams::symmetric(double kappa, double side) {
    FlowerParams p;
    p.fourgon_sides.fill(side);
    const double c4 = arc_chord(4, kappa), c5 = arc_chord(5, kappa);
    const Point wp = c5 * unit(0.0) + (c4 - side) * unit(kPi / 6);
    const Point wm = c5 * unit(kPi / 3) + (c4 - side) * unit(kPi / 6);
    const LineHit h = intersect_lines(wp, unit(kPi / 6 + kThirdTurn), wm, unit(kPi / 6 - kThirdTurn));
    // regular central hexagon reaching halfway to the 5-gons' inner vertices
    p.spoke = 0.5 * norm(wp + h.s * unit(kPi / 6 + kThirdTurn));
    return p;
}

BubbleComplex construct_flower(double kappa) {
    return construct_flower(kappa, FlowerParams::symmetric(kappa, arc_chord(4, kappa) / 2));
}

BubbleComplex construct_flower(double kappa, const FlowerParams& fp) {
    const double c4 = arc_chord(4, kappa), c5 = arc_chord(5, kappa);
    for (double t : fp.fourgon_sides)
        if (!(t > 0.0) || !(t < c4)) throw InfeasibleError("4-gon sides must lie in (0, sqrt3/kappa)");
    if (!(fp.spoke > 0.0)) throw InfeasibleError("spoke length must be positive");

    std::array<Point, 6> em, ep, wm, wp, s, z;
    for (int i = 0; i < 6; ++i) {
        const double psi = i * kPi / 3;
        const Point apex = c5 * unit(psi);
        em[i] = apex + c4 * unit(psi - kPi / 6);
        ep[i] = apex + c4 * unit(psi + kPi / 6);
        const double cut = c4 - fp.fourgon_sides[i];
        wm[i] = apex + cut * unit(psi - kPi / 6);
        wp[i] = apex + cut * unit(psi + kPi / 6);
    }
    auto omega = [](int i) { return i * kPi / 3 + kPi / 6; };
    for (int i = 0; i < 6; ++i) {
        const int j = (i + 1) % 6;
        const LineHit h = intersect_lines(wp[i], unit(omega(i) + kThirdTurn), wm[j], unit(omega(i) - kThirdTurn));
        if (!(h.s > 0.0) || !(h.t > 0.0)) throw InfeasibleError("5-gon inner edges do not meet");
        s[i] = wp[i] + h.s * unit(omega(i) + kThirdTurn);
    }
    z[0] = s[0] - fp.spoke * unit(omega(0));
    const double scale = norm(ep[0]);
    for (int i = 1; i <= 6; ++i) {
        const int k = i % 6;
        const LineHit h = intersect_lines(z[i - 1], unit(omega(i - 1) + kThirdTurn), s[k], -1.0 * unit(omega(k)));
        if (!(h.s > 0.0) || !(h.t > 0.0)) throw InfeasibleError("hub edges or spokes collapse");
        const Point next = s[k] - h.t * unit(omega(k));
        if (k == 0) {
            if (distance(next, z[0]) > 1e-10 * scale)
                throw InfeasibleError("flower ring does not close (gap " + std::to_string(distance(next, z[0])) + ")");
        } else {
            z[k] = next;
        }
    }

    ComplexBuilder b;
    std::array<VertexId, 6> iem{}, iep{}, iwm{}, iwp{}, is{}, iz{};
    for (int i = 0; i < 6; ++i) {
        iem[i] = b.add_vertex(em[i]), iep[i] = b.add_vertex(ep[i]);
        iwm[i] = b.add_vertex(wm[i]), iwp[i] = b.add_vertex(wp[i]);
        is[i] = b.add_vertex(s[i]), iz[i] = b.add_vertex(z[i]);
    }
    for (int i = 0; i < 6; ++i) {
        const int j = (i + 1) % 6, h = (i + 5) % 6;
        b.add_edge(iem[i], iep[i], -arc_half_angle(4));
        b.add_edge(iep[i], iem[j], -arc_half_angle(5));
        b.add_edge(iwm[i], iem[i], 0.0);
        b.add_edge(iwp[i], iep[i], 0.0);
        b.add_edge(iwm[i], iwp[i], 0.0);
        b.add_edge(iwp[i], is[i], 0.0);
        b.add_edge(is[i], iwm[j], 0.0);
        b.add_edge(is[i], iz[i], 0.0);
        b.add_edge(iz[i], iz[j], 0.0);
        const RegionLabel ring = i % 2 == 0 ? 1 : 3;
        b.seed(centroid({wm[i], em[i], ep[i], wp[i]}), ring);
        b.seed(centroid({ep[i], wp[i], s[i], wm[j], em[j]}), 2);
        b.seed(centroid({wm[i], wp[i], s[i], z[i], z[h], s[h]}), 4 - ring);
    }
    b.seed(centroid({z[0], z[1], z[2], z[3], z[4], z[5]}), 2);
    return b.build();
}

BubbleComplex circle_with_radii(const std::vector<double>& areas) {
    if (areas.size() < 2) throw InputError("need at least two areas");
    double total = 0.0;
    for (double a : areas) {
        if (!(a > 0.0)) throw InfeasibleError("areas must be positive");
        total += a;
    }
    const double rho = std::sqrt(total / kPi);
    ComplexBuilder b;
    b.add_vertex({0, 0});
    const int n = static_cast<int>(areas.size());
    double angle = kPi / 2;
    for (int k = 0; k < n; ++k) {
        b.add_vertex(rho * unit(angle));
        const double sweep = kTwoPi * areas[k] / total;
        b.seed(0.5 * rho * unit(angle + sweep / 2), k + 1);
        angle += sweep;
    }
    for (int k = 0; k < n; ++k) {
        const double sweep = kTwoPi * areas[k] / total;
        b.add_edge(0, 1 + k, 0.0);
        b.add_edge(1 + k, 1 + (k + 1) % n, -sweep / 2);
    }
    return b.build();
}

}  // namespace bubble
