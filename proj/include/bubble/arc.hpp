#pragma once

#include "bubble/point.hpp"

namespace bubble {

// Circular arc or segment from start to end. half_angle is half the central
// angle, positive when the arc bulges to the left of the directed chord.
struct ArcSpec {
    Point start;
    Point end;
    double half_angle = 0.0;
};

// chord-free forms, used by the minimizer and the pop arithmetic
double arc_length(double chord, double half_angle);
double segment_area(double chord, double half_angle);

// theta/sin(theta) and (theta - sin cos)/(4 sin^2) with their derivatives,
// series-expanded near zero
double length_factor(double half_angle);
double length_factor_derivative(double half_angle);
double area_factor(double half_angle);
double area_factor_derivative(double half_angle);
double sector_excess(double half_angle);  // theta - sin(theta) cos(theta)

double chord_length(const ArcSpec& a);
double arc_radius(const ArcSpec& a);     // +inf for a segment
double arc_curvature(const ArcSpec& a);  // signed, 2 sin(theta)/C
double arc_length(const ArcSpec& a);
double segment_area(const ArcSpec& a);
bool is_straight(const ArcSpec& a);

Point arc_center(const ArcSpec& a);  // throws for a segment
Point arc_point(const ArcSpec& a, double fraction);
// fraction of the arc (by angle, equivalently by length) at which p lies
double arc_fraction(const ArcSpec& a, Point p);
ArcSpec reversed(const ArcSpec& a);

// direction of travel at the two ends
double start_tangent(const ArcSpec& a);
double end_tangent(const ArcSpec& a);

double meeting_angle(const ArcSpec& a, const ArcSpec& b, Point at);

// centers of two circles meeting at 2pi/3
double two_arc_center_distance(double r1, double r2);

// smallest s > 0 such that origin + s*dir lies on the arc, or nan
double ray_hits_arc(Point origin, Point dir, const ArcSpec& a);

// half-angle of the arc of the circle about `center` running from p to q,
// sweeping counterclockwise or clockwise around the center
double half_angle_about(Point center, Point p, Point q, bool counterclockwise);

}  // namespace bubble
