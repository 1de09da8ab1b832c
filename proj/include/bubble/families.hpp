#pragma once

#include <array>
#include <optional>
#include <vector>

#include "bubble/complex.hpp"

namespace bubble {

// Lengths of the equal-pressure family with exterior curvature kappa. Each
// n-gon has one exterior arc of half-angle pi - n*pi/6 and straight sides.
double threegon_flat_side(double kappa);  // 2/(sqrt3 kappa)
double arc_chord(int sides, double kappa);  // 2/kappa, sqrt3/kappa, 1/kappa
double arc_half_angle(int sides);           // pi/2, pi/3, pi/6

enum class NgonKind { kThreeGon, kFourGon, kFiveGon };

struct NgonParams {
    NgonKind kind = NgonKind::kThreeGon;
    double kappa = 1.0;
    // 4-gon: side next to the arc. 5-gon: side next to the inner edge u.
    std::optional<double> t;
    // 5-gon inner edges; only their ratio is free since u + v is the 3-gon flat side
    std::optional<double> u;
    std::optional<double> v;
};

// Single face (label 1) with the arc along the bottom, traversed counterclockwise.
BubbleComplex build_ngon(const NgonParams& p);

struct TriangleSpec {
    double a = 1.0;  // opposite vertex A
    double b = 1.0;
    double c = 1.0;

    std::array<double, 3> angles() const;  // alpha, beta, gamma
};

// outward bulge of each side: the angle at the opposite vertex minus pi/6
std::array<double, 3> threegon_from_triangle(const TriangleSpec& t);
BubbleComplex build_threegon(const TriangleSpec& t, RegionLabel r = 1);
// curvatures are positive when the side bulges out of the 3-gon
BubbleComplex threegon_from_curvatures(double k1, double k2, double k3, bool mirrored = false);

BubbleComplex construct_standard_double(double a1, double a2);
BubbleComplex construct_standard_triple(double kappa);
// faces: top 3-gon, right 4-gon, left 4-gon, bottom 3-gon
BubbleComplex construct_standard_quadruple(double kappa, std::array<RegionLabel, 4> labels = {1, 2, 3, 4});

// Ring of six 4-gons alternating with six 5-gons around a hexagonal hub.
// Each 4-gon is fixed by its side length; the spokes from the 5-gons' inner
// vertices to the hub are found by shooting around the ring from `spoke`.
struct FlowerParams {
    std::array<double, 6> fourgon_sides{};
    double spoke = 0.0;

    static FlowerParams symmetric(double kappa, double side);
};
BubbleComplex construct_flower(double kappa, const FlowerParams& p);
BubbleComplex construct_flower(double kappa);

// circle cut into sectors of the given areas by radii from the center
BubbleComplex circle_with_radii(const std::vector<double>& areas);

}  // namespace bubble
