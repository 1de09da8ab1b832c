#pragma once

#include <map>
#include <string>
#include <vector>

#include "bubble/complex.hpp"

namespace bubble {

enum class Witness { kNone, kShorter, kEqualLengthNonregular };
std::string to_string(Witness w);

// Outcome of a surgery. Deltas are measured on the result, never tracked.
struct MoveReport {
    std::string move;
    BubbleComplex result;
    double perimeter_delta = 0.0;                // new minus old
    std::map<RegionLabel, double> area_deltas;   // positive labels only
    Witness witness = Witness::kNone;
    std::string violation;                       // first failing condition of the result
};

MoveReport measure_move(std::string name, const BubbleComplex& before, BubbleComplex after, double tol = 1e-9);

// Gives an empty chamber to the neighbouring region with the longest shared
// boundary (ties to the lower label) and erases the boundary between them.
MoveReport fill_empty_chamber(const BubbleComplex& c, FaceId chamber);

// Rotates a lens about the circle carrying the arcs on either side of it.
// Positive displacement (arc length) moves it counterclockwise. When the arc
// ahead vanishes its endpoints merge into a 4-valent vertex.
MoveReport slide_2gon(const BubbleComplex& c, FaceId lens, double displacement);

// Carves a copy of the 4-gon out of the adjacent 3-gon, erases the 4-gon's
// side opposite the shared edge and the outer half of the shared edge. The
// face across that side must carry the 3-gon's label.
MoveReport reflect_4gon_into_3gon(const BubbleComplex& c, FaceId fourgon, FaceId threegon);

// Exchanges the labels of two congruent faces, then erases every edge that
// ends up with the same label on both sides.
MoveReport swap_regions(const BubbleComplex& c, FaceId f1, FaceId f2);

// 4-gons: the smaller 4-gon's central edge moves into the larger one.
// 5-gons sharing a side: a copy of the smaller is cut out of the larger.
MoveReport reflect_small_into_large(const BubbleComplex& c, FaceId small, FaceId large);

// Builds a copy of the 5-gon inside the adjacent 3-gon starting from the
// 3-gon's inner vertex. The face beyond the 5-gon's far side must carry the
// 3-gon's label.
MoveReport reflect_5gon_into_3gon(const BubbleComplex& c, FaceId fivegon, FaceId threegon);

// Builds a copy of a symmetric 5-gon inside the 4-gon sharing its central
// edge. The face beyond one of the 5-gon's sides must carry the 4-gon's label.
MoveReport reflect_5gon_into_4gon(const BubbleComplex& c, FaceId fivegon, FaceId fourgon);

// Removes the exterior arc of one 3-gon and widens the arc of another 3-gon of
// the same region to the given half-angle at fixed chord.
MoveReport pop_and_expand(const BubbleComplex& c, FaceId pop, FaceId grow, double theta = 2.3);

// root of theta = pi sin(theta) in (pi/2, pi): the widened arc then has the
// length of the two semicircles it replaces
double pop_break_even_angle();

std::vector<FaceId> detect_double_exterior(const BubbleComplex& c);

}  // namespace bubble
