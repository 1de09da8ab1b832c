#include "bubble/arc.hpp"

#include <algorithm>
#include <limits>

#include "bubble/errors.hpp"

namespace bubble {

namespace {

constexpr double kSeriesCutoff = 1e-6;

double positive_mod(double a, double m) {
    a = std::fmod(a, m);
    return a < 0 ? a + m : a;
}

}  // namespace

double length_factor(double t) {
    if (std::abs(t) < kSeriesCutoff) return 1.0 + t * t / 6.0;
    return t / std::sin(t);
}

double length_factor_derivative(double t) {
    if (std::abs(t) < kSeriesCutoff) return t / 3.0 + 7.0 * t * t * t / 90.0;
    const double s = std::sin(t);
    if (std::abs(t) > 0.5) return (s - t * std::cos(t)) / (s * s);
    // sin t - t cos t = sum (-1)^(k+1) 2k t^(2k+1) / (2k+1)!
    double power = t * t * t / 6.0, sum = 0.0;
    for (int k = 1; k < 20; ++k) {
        const double term = 2.0 * k * power;
        sum += term;
        if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
        power *= -t * t / ((2.0 * k + 2.0) * (2.0 * k + 3.0));
    }
    return sum / (s * s);
}

// theta - sin(theta)cos(theta) = (x - sin x)/2 with x = 2 theta, summed as a
// series for small x where the direct difference loses all its digits
double sector_excess(double t) {
    const double x = 2.0 * t;
    if (std::abs(x) > 0.5) return 0.5 * (x - std::sin(x));
    double term = x * x * x / 6.0, sum = 0.0;
    for (int k = 1; k < 20 && std::abs(term) > 1e-18 * std::abs(sum); ++k) {
        sum += term;
        term *= -x * x / ((2.0 * k + 2.0) * (2.0 * k + 3.0));
    }
    return 0.5 * sum;
}

double area_factor(double t) {
    if (std::abs(t) < kSeriesCutoff) return t / 6.0 + t * t * t / 45.0;
    const double s = std::sin(t);
    return sector_excess(t) / (4.0 * s * s);
}

double area_factor_derivative(double t) {
    if (std::abs(t) < kSeriesCutoff) return 1.0 / 6.0 + t * t / 15.0;
    const double s = std::sin(t), c = std::cos(t);
    return 0.5 - sector_excess(t) * c / (2.0 * s * s * s);
}

double arc_length(double chord, double half_angle) { return chord * length_factor(half_angle); }

double segment_area(double chord, double half_angle) {
    return chord * chord * area_factor(half_angle);
}

double chord_length(const ArcSpec& a) {
    const double c = distance(a.start, a.end);
    if (!(c > 0.0)) throw InputError("degenerate chord");
    return c;
}

bool is_straight(const ArcSpec& a) { return a.half_angle == 0.0; }

double arc_radius(const ArcSpec& a) {
    const double c = chord_length(a);
    if (is_straight(a)) return std::numeric_limits<double>::infinity();
    return c / (2.0 * std::sin(a.half_angle));
}

double arc_curvature(const ArcSpec& a) { return 2.0 * std::sin(a.half_angle) / chord_length(a); }

double arc_length(const ArcSpec& a) { return arc_length(chord_length(a), a.half_angle); }

double segment_area(const ArcSpec& a) { return segment_area(chord_length(a), a.half_angle); }

Point arc_center(const ArcSpec& a) {
    const double c = chord_length(a);
    if (is_straight(a)) throw InputError("segment has no center");
    const Point mid = 0.5 * (a.start + a.end);
    const Point n = perp((1.0 / c) * (a.end - a.start));
    const double t = a.half_angle;
    return mid - (c * std::cos(t) / (2.0 * std::sin(t))) * n;
}

Point arc_point(const ArcSpec& a, double f) {
    const double c = chord_length(a);
    const double t = a.half_angle;
    const double phi = direction(a.end - a.start);
    const double ratio = std::abs(t) < 1e-8 ? f : std::sin(f * t) / std::sin(t);
    return a.start + (c * ratio) * unit(phi + (1.0 - f) * t);
}

double arc_fraction(const ArcSpec& a, Point p) {
    const double c = chord_length(a);
    if (std::abs(a.half_angle) < 1e-8) return dot(p - a.start, a.end - a.start) / (c * c);
    const Point o = arc_center(a);
    const double swept = direction(p - o) - direction(a.start - o);
    const double sweep = a.half_angle < 0 ? positive_mod(swept, kTwoPi) : positive_mod(-swept, kTwoPi);
    return sweep / (2.0 * std::abs(a.half_angle));
}

ArcSpec reversed(const ArcSpec& a) { return {a.end, a.start, -a.half_angle}; }

double start_tangent(const ArcSpec& a) { return direction(a.end - a.start) + a.half_angle; }

double end_tangent(const ArcSpec& a) { return direction(a.end - a.start) - a.half_angle; }

double meeting_angle(const ArcSpec& a, const ArcSpec& b, Point at) {
    const double scale = 1e-9 * std::max({1.0, norm(at), chord_length(a), chord_length(b)});
    auto outgoing = [&](const ArcSpec& arc) {
        if (distance(arc.start, at) <= scale) return start_tangent(arc);
        if (distance(arc.end, at) <= scale) return end_tangent(arc) + kPi;
        throw InputError("meeting point is not an endpoint of both arcs");
    };
    return std::abs(wrap_angle(outgoing(a) - outgoing(b)));
}

double two_arc_center_distance(double r1, double r2) {
    if (!(r1 > 0.0) || !(r2 > 0.0)) throw InputError("radii must be positive");
    return std::sqrt(r1 * r1 + r2 * r2 - r1 * r2);
}

double ray_hits_arc(Point origin, Point dir, const ArcSpec& a) {
    const double slack = 1e-9;
    double best = NAN;
    auto consider = [&](double s) {
        if (!(s > slack)) return;
        const double f = arc_fraction(a, origin + s * dir);
        if (f < -slack || f > 1 + slack) return;
        if (std::isnan(best) || s < best) best = s;
    };
    if (is_straight(a)) {
        const LineHit h = intersect_lines(origin, dir, a.start, a.end - a.start);
        if (!std::isnan(h.s)) consider(h.s);
        return best;
    }
    const Point o = arc_center(a);
    const double r = std::abs(arc_radius(a));
    const Point w = origin - o;
    const double qa = dot(dir, dir), qb = 2 * dot(w, dir), qc = dot(w, w) - r * r;
    const double disc = qb * qb - 4 * qa * qc;
    if (disc < 0) return best;
    const double root = std::sqrt(disc);
    consider((-qb - root) / (2 * qa));
    consider((-qb + root) / (2 * qa));
    return best;
}

double half_angle_about(Point center, Point p, Point q, bool counterclockwise) {
    const double swept = direction(q - center) - direction(p - center);
    if (counterclockwise) return -0.5 * positive_mod(swept, kTwoPi);
    return 0.5 * positive_mod(-swept, kTwoPi);
}

}  // namespace bubble
