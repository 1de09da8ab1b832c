#pragma once

#include <cmath>

namespace bubble {

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend constexpr Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
    friend constexpr Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
    friend constexpr Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
    friend constexpr Point operator*(Point a, double s) { return {s * a.x, s * a.y}; }
    friend constexpr bool operator==(Point, Point) = default;
};

constexpr double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double distance(Point a, Point b) { return norm(b - a); }
inline Point unit(double angle) { return {std::cos(angle), std::sin(angle)}; }
inline Point unit(Point a) {
    const double n = norm(a);
    return {a.x / n, a.y / n};
}
constexpr Point perp(Point a) { return {-a.y, a.x}; }  // rotate +90
inline Point rotate(Point a, double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    return {c * a.x - s * a.y, s * a.x + c * a.y};
}
inline double direction(Point a) { return std::atan2(a.y, a.x); }

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr double kThirdTurn = kTwoPi / 3.0;

// parameters (s, t) with p + s*d == q + t*e; nan when the lines are parallel
struct LineHit {
    double s;
    double t;
};
inline LineHit intersect_lines(Point p, Point d, Point q, Point e) {
    const double den = cross(d, e);
    if (std::abs(den) < 1e-300) return {NAN, NAN};
    const Point w = q - p;
    return {cross(w, e) / den, cross(w, d) / den};
}

// maps to (-pi, pi]
inline double wrap_angle(double a) {
    a = std::remainder(a, kTwoPi);
    if (a <= -kPi) a += kTwoPi;
    return a;
}

}  // namespace bubble
