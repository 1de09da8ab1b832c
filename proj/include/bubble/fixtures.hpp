#pragma once

#include <array>

#include "bubble/complex.hpp"

namespace bubble {

// Named configurations used by the move witnesses and lemma checks. All are
// built from equal-pressure n-gons with exterior curvature kappa unless noted.

// Three 3-gons alternating with three 5-gons around a central vertex.
// Faces counterclockwise from the top: 3-gon, 5-gon, 3-gon, 5-gon, 3-gon, 5-gon.
BubbleComplex tri_pentagon(double kappa, std::array<RegionLabel, 6> labels);

// A 5-gon (G) touching two 3-gons (T, H) and two 4-gons (F, O):
// faces counterclockwise from the top are T, F, O, H, G.
BubbleComplex pentagon_complex(double kappa, std::array<RegionLabel, 5> labels);

// Unit circle (label 1) carrying two lenses of radius `lens_radius` (labels 2
// and 3) centred at angles 90 and 210 degrees. Region 1 is a 4-gon whose arc
// ahead of the first lens is shorter than the one behind it.
BubbleComplex slide_lenses(double lens_radius = 0.4);

// Unit circle cut by the chords y = +-h: caps labelled 1 and 3, strip 2.
BubbleComplex cut_circle(double h = 0.3);

// Standard triple (kappa = 1) whose upward spoke is interrupted by an empty
// chamber between two arcs with the given half-angles (left one positive).
BubbleComplex lens_chamber(double left_half_angle = 0.5, double right_half_angle = -0.3);

// Two 5-gons (labels 1 and 2, kappa = 1) of unequal size sharing a vertical
// side, closed below by three faces labelled 2, 3, 1. Not regular along the
// closing edges.
BubbleComplex five_five();

// A 3-gon (label 1) on top of two mirrored 5-gons (labels 2 and 3) whose inner
// edges at the 3-gon's apex have length `a`, closed below by faces labelled
// 1, 4, 1. Not regular along the closing edges.
BubbleComplex three_five_five(double a = 0.4);

// Unit circles centred at (-1, 0) and (1, 0), touching at a 4-valent origin.
BubbleComplex tangent_circles();

}  // namespace bubble
