#include <algorithm>
#include <cmath>

#include "bubble/errors.hpp"
#include "bubble/families.hpp"
#include "bubble/fixtures.hpp"
#include "bubble/moves.hpp"
#include "bubble/regularity.hpp"
#include "doctest.h"

using namespace bubble;
using doctest::Approx;

namespace {

// nth face with the given label and side count
FaceId pick(const BubbleComplex& c, RegionLabel r, int sides, int nth = 0) {
    for (FaceId f = 1; f < c.face_count(); ++f)
        if (c.face(f).region == r && c.face(f).side_count == sides && nth-- == 0) return f;
    FAIL("no such face");
    return -1;
}

int bent_two_valent(const BubbleComplex& c) {
    int n = 0;
    for (VertexId v = 0; v < c.vertex_count(); ++v) n += c.degree(v) == 2 && !c.is_smooth(v);
    return n;
}

int max_degree(const BubbleComplex& c) {
    int d = 0;
    for (VertexId v = 0; v < c.vertex_count(); ++v) d = std::max(d, c.degree(v));
    return d;
}

// the report's bookkeeping against independent measurements
void check_report(const BubbleComplex& before, const MoveReport& m) {
    CHECK(m.perimeter_delta == Approx(total_perimeter(m.result) - total_perimeter(before)).epsilon(1e-12));
    CHECK(m.perimeter_delta <= 1e-9);
    const auto a0 = region_areas(before), a1 = region_areas(m.result);
    for (const auto& [r, a] : a0) {
        if (r <= 0) continue;
        CHECK(a1.at(r) - a >= -1e-9);
        CHECK(m.area_deltas.at(r) == Approx(a1.at(r) - a).epsilon(1e-12));
    }
    if (m.witness == Witness::kEqualLengthNonregular) {
        CHECK(!m.violation.empty());
        CHECK(!validate(m.result).passed());
    }
    if (m.witness == Witness::kShorter) CHECK(m.perimeter_delta < -1e-9);
}

}  // namespace

TEST_CASE("fill an empty chamber") {
    const BubbleComplex c = lens_chamber(0.5, -0.3);
    const FaceId chamber = c.faces_with_label(kEmptyLabel).front();
    const double chamber_area = face_area(c, chamber);
    const MoveReport m = fill_empty_chamber(c, chamber);
    check_report(c, m);
    CHECK(m.witness == Witness::kShorter);
    // the left arc has the longer shared boundary, so region 1 takes the chamber
    const double chord = 0.4 * threegon_flat_side(1.0);
    CHECK(m.perimeter_delta == Approx(-arc_length(chord, 0.5)).epsilon(1e-12));
    CHECK(m.area_deltas.at(1) == Approx(chamber_area).epsilon(1e-12));
    CHECK(m.area_deltas.at(3) == Approx(0.0).scale(1));
    CHECK(m.result.faces_with_label(kEmptyLabel).empty());

    // mirrored bulges hand the chamber to region 3; equal ones fall to the lower label
    CHECK(fill_empty_chamber(lens_chamber(0.3, -0.5), chamber).area_deltas.at(3) > 0.0);
    const MoveReport tie = fill_empty_chamber(lens_chamber(0.4, -0.4), chamber);
    CHECK(tie.area_deltas.at(1) > 0.0);
    CHECK(tie.area_deltas.at(3) == Approx(0.0).scale(1));

    CHECK_THROWS_AS(fill_empty_chamber(c, pick(c, 2, 3)), PreconditionError);
    CHECK_THROWS_AS(fill_empty_chamber(c, 99), InputError);
}

TEST_CASE("slide a 2-gon along its circle") {
    const BubbleComplex c = slide_lenses();
    const FaceId lens = pick(c, 2, 2);
    CHECK(validate(c).passed());

    const MoveReport zero = slide_2gon(c, lens, 0.0);
    CHECK(zero.result.vertices() == c.vertices());
    CHECK(zero.perimeter_delta == 0.0);

    const MoveReport small = slide_2gon(c, lens, 0.1);
    check_report(c, small);
    CHECK(std::abs(small.perimeter_delta) < 1e-10);
    for (const auto& [r, d] : small.area_deltas) CHECK(std::abs(d) < 1e-10);
    CHECK(small.witness == Witness::kNone);
    CHECK(validate(small.result).passed());

    // several small steps land where one summed step does
    BubbleComplex stepped = c;
    for (int i = 0; i < 4; ++i) stepped = slide_2gon(stepped, pick(stepped, 2, 2), 0.05).result;
    const BubbleComplex once = slide_2gon(c, lens, 0.2).result;
    REQUIRE(stepped.vertex_count() == once.vertex_count());
    for (VertexId v = 0; v < once.vertex_count(); ++v)
        CHECK(distance(stepped.vertex(v), once.vertex(v)) < 1e-9);

    // sliding the full length of the arc ahead makes the lenses touch
    double ahead = 0.0;
    for (HalfEdgeId h : c.face(lens).boundary())
        for (HalfEdgeId o : c.outgoing(c.origin(h)))
            if (c.face_of(o) != lens && c.face_of(BubbleComplex::twin(o)) != lens && c.origin(o) == c.origin(h))
                if (c.face(c.face_of(o)).region == 1 || c.face(c.face_of(BubbleComplex::twin(o))).region == 1) {
                    const double l = edge_length(c, BubbleComplex::edge_of(o));
                    ahead = ahead == 0.0 ? l : std::min(ahead, l);
                }
    const MoveReport full = slide_2gon(c, lens, ahead);
    check_report(c, full);
    CHECK(max_degree(full.result) == 4);
    CHECK(full.witness == Witness::kEqualLengthNonregular);
    CHECK(full.violation == "trivalent");
    CHECK(std::abs(full.perimeter_delta) < 1e-10);

    CHECK_THROWS_AS(slide_2gon(c, lens, 10.0), InfeasibleError);
    CHECK_THROWS_AS(slide_2gon(c, pick(c, 1, 4), 0.1), PreconditionError);
}

TEST_CASE("reflect a 4-gon into a 3-gon") {
    const BubbleComplex c = construct_standard_quadruple(1.0, {1, 2, 3, 1});
    const FaceId f = pick(c, 2, 4), t = pick(c, 1, 3, 0);
    const MoveReport m = reflect_4gon_into_3gon(c, f, t);
    check_report(c, m);
    CHECK(m.witness == Witness::kShorter);
    // the outer half of the shared side goes; the new edge replaces the far side
    CHECK(m.perimeter_delta == Approx(-threegon_flat_side(1.0) / 2).epsilon(1e-12));
    for (const auto& [r, d] : m.area_deltas) CHECK(std::abs(d) < 1e-9);

    // by symmetry the lower 3-gon works the same way
    CHECK(reflect_4gon_into_3gon(c, f, pick(c, 1, 3, 1)).perimeter_delta == Approx(m.perimeter_delta).epsilon(1e-12));
    const BubbleComplex plain = construct_standard_quadruple(1.0);
    CHECK_THROWS_AS(reflect_4gon_into_3gon(plain, pick(plain, 2, 4), pick(plain, 1, 3)), PreconditionError);
    const BubbleComplex tri = construct_standard_triple(1.0);
    CHECK_THROWS_AS(reflect_4gon_into_3gon(tri, 1, 2), PreconditionError);
}

TEST_CASE("swap congruent regions") {
    const double b = threegon_flat_side(1.0);
    // 5-gons beside a 3-gon: a single new same-label contact
    const BubbleComplex one = tri_pentagon(1.0, {1, 2, 3, 4, 2, 5});
    const MoveReport m1 = swap_regions(one, pick(one, 2, 5), pick(one, 5, 5));
    check_report(one, m1);
    CHECK(m1.witness == Witness::kShorter);
    CHECK(m1.perimeter_delta == Approx(-b).epsilon(1e-12));
    for (const auto& [r, d] : m1.area_deltas) CHECK(std::abs(d) < 1e-9);

    // with alternating labels both 5-gons gain a contact
    const BubbleComplex two = tri_pentagon(1.0, {1, 2, 3, 1, 2, 3});
    const MoveReport m2 = swap_regions(two, pick(two, 2, 5), pick(two, 3, 5));
    check_report(two, m2);
    CHECK(m2.perimeter_delta == Approx(-2 * b).epsilon(1e-12));

    // identical 4-gons of the flower lose their central edges
    const BubbleComplex fl = construct_flower(1.0);
    const MoveReport m3 = swap_regions(fl, pick(fl, 1, 4), pick(fl, 3, 4));
    check_report(fl, m3);
    CHECK(m3.witness == Witness::kShorter);
    CHECK(m3.perimeter_delta == Approx(-arc_chord(4, 1.0)).epsilon(1e-12));

    CHECK_THROWS_AS(swap_regions(two, pick(two, 2, 5), pick(two, 2, 3)), PreconditionError);
    CHECK_THROWS_AS(swap_regions(fl, pick(fl, 1, 4, 0), pick(fl, 1, 4, 1)), PreconditionError);
    CHECK_THROWS_AS(swap_regions(fl, pick(fl, 1, 4), pick(fl, 2, 5)), PreconditionError);
    // congruent, but the swap creates no same-label contact
    const BubbleComplex lone = tri_pentagon(1.0, {1, 2, 3, 4, 5, 6});
    CHECK_THROWS_AS(swap_regions(lone, pick(lone, 2, 5), pick(lone, 6, 5)), PreconditionError);
}

TEST_CASE("reflect small 4-gon into a larger one") {
    FlowerParams p = FlowerParams::symmetric(1.0, 0.8);
    p.fourgon_sides = {0.7, 0.8, 0.9, 1.0, 0.8, 0.9};
    const BubbleComplex fl = construct_flower(1.0, p);
    const FaceId small = pick(fl, 1, 4, 0), large = pick(fl, 3, 4, 0);
    REQUIRE(face_area(fl, small) < face_area(fl, large));
    const MoveReport m = reflect_small_into_large(fl, small, large);
    check_report(fl, m);
    CHECK(std::abs(m.perimeter_delta) < 1e-9);
    CHECK(m.witness == Witness::kEqualLengthNonregular);
    CHECK(m.violation == "trivalent");
    for (const auto& [r, d] : m.area_deltas) CHECK(std::abs(d) < 1e-9);
    CHECK_THROWS_AS(reflect_small_into_large(fl, large, small), PreconditionError);

    const BubbleComplex sym = construct_flower(1.0);
    CHECK_THROWS_AS(reflect_small_into_large(sym, pick(sym, 1, 4), pick(sym, 3, 4)), PreconditionError);
    CHECK_THROWS_AS(reflect_small_into_large(sym, pick(sym, 1, 4), pick(sym, 2, 5)), PreconditionError);
}

TEST_CASE("reflect small 5-gon into a larger one") {
    const BubbleComplex c = five_five();
    const FaceId small = pick(c, 1, 5), large = pick(c, 2, 5);
    const MoveReport m = reflect_small_into_large(c, small, large);
    check_report(c, m);
    CHECK(std::abs(m.perimeter_delta) < 1e-9);
    CHECK(m.witness == Witness::kEqualLengthNonregular);
    // the deleted edge leaves a bent corner behind
    CHECK(bent_two_valent(m.result) > bent_two_valent(c));
    for (const auto& [r, d] : m.area_deltas) CHECK(std::abs(d) < 1e-9);
    CHECK_THROWS_AS(reflect_small_into_large(c, large, small), PreconditionError);
}

TEST_CASE("reflect a 5-gon into a 3-gon") {
    // symmetric 5-gon: inner edges a, far side 2a
    const BubbleComplex c = pentagon_complex(1.0, {1, 2, 3, 4, 1});
    const MoveReport m = reflect_5gon_into_3gon(c, pick(c, 3, 5), pick(c, 1, 3));
    check_report(c, m);
    CHECK(std::abs(m.perimeter_delta) < 1e-9);
    CHECK(m.witness == Witness::kEqualLengthNonregular);
    CHECK(m.violation == "trivalent");

    // asymmetric 5-gons with inner edges a and b
    for (double a : {0.3, 0.4, 0.5}) {
        const BubbleComplex l = three_five_five(a);
        const MoveReport ml = reflect_5gon_into_3gon(l, pick(l, 2, 5), pick(l, 1, 3));
        check_report(l, ml);
        CHECK(std::abs(ml.perimeter_delta) < 1e-9);
        CHECK(ml.witness == Witness::kEqualLengthNonregular);
        CHECK(bent_two_valent(ml.result) > bent_two_valent(l));
    }

    const BubbleComplex wrong = pentagon_complex(1.0, {1, 2, 3, 4, 5});
    CHECK_THROWS_AS(reflect_5gon_into_3gon(wrong, pick(wrong, 3, 5), pick(wrong, 1, 3)), PreconditionError);
}

TEST_CASE("reflect a 5-gon into a 4-gon") {
    const BubbleComplex c = pentagon_complex(1.0, {1, 2, 3, 4, 2});
    const FaceId g = pick(c, 3, 5), f = pick(c, 2, 4);
    const MoveReport m = reflect_5gon_into_4gon(c, g, f);
    check_report(c, m);
    CHECK(std::abs(m.perimeter_delta) < 1e-9);
    CHECK(m.witness == Witness::kEqualLengthNonregular);
    CHECK(m.violation == "trivalent");
    // the inserted edge ends on the 4-gon's arc
    const ArcSpec arc = c.arc([&] {
        for (HalfEdgeId h : c.face(f).boundary())
            if (c.face_of(BubbleComplex::twin(h)) == kExteriorFace) return h;
        return HalfEdgeId{-1};
    }());
    int on_arc = 0;
    for (Point v : m.result.vertices())
        on_arc += std::abs(distance(v, arc_center(arc)) - std::abs(arc_radius(arc))) < 1e-12 &&
                  distance(v, arc.start) > 1e-6 && distance(v, arc.end) > 1e-6;
    CHECK(on_arc == 1);

    const BubbleComplex wrong = pentagon_complex(1.0, {1, 2, 3, 4, 5});
    CHECK_THROWS_AS(reflect_5gon_into_4gon(wrong, pick(wrong, 3, 5), pick(wrong, 2, 4)), PreconditionError);
}

TEST_CASE("pop one 3-gon and widen another") {
    // kappa = 2 puts the 3-gon arcs on unit chords
    const BubbleComplex c = tri_pentagon(2.0, {1, 2, 1, 3, 2, 4});
    const FaceId grow = pick(c, 1, 3, 0), pop = pick(c, 1, 3, 1);
    const double lost = face_area(c, pop);
    CHECK(lost == Approx(kPi / 8 + 1 / (4 * std::sqrt(3.0))).epsilon(1e-12));
    CHECK(lost == Approx(0.5370).epsilon(1e-4));
    CHECK(segment_area(1.0, 2.3) - kPi / 8 == Approx(0.8646).epsilon(1e-4));
    CHECK(arc_length(1.0, 2.3) < kPi);

    const MoveReport m = pop_and_expand(c, pop, grow);
    check_report(c, m);
    CHECK(m.witness == Witness::kShorter);
    CHECK(m.perimeter_delta == Approx(arc_length(1.0, 2.3) - kPi).epsilon(1e-12));
    CHECK(m.area_deltas.at(1) == Approx(segment_area(1.0, 2.3) - kPi / 8 - lost).epsilon(1e-12));
    CHECK(m.area_deltas.at(1) > 0.0);

    const double star = pop_break_even_angle();
    CHECK(star == Approx(kPi * std::sin(star)).epsilon(1e-14));
    CHECK(star > 2.2);
    CHECK(star < 2.4);
    CHECK(std::abs(pop_and_expand(c, pop, grow, star).perimeter_delta) <= 1e-6);

    CHECK_THROWS_AS(pop_and_expand(c, pop, grow, 1.0), InputError);
    CHECK_THROWS_AS(pop_and_expand(c, pop, grow, kPi), InputError);
    CHECK(pop_and_expand(c, pop, grow, 3.1).perimeter_delta > 0.0);

    // a small bubble floating above the widened arc is in the way
    Point mid{};
    for (HalfEdgeId h : c.face(grow).boundary())
        if (c.face_of(BubbleComplex::twin(h)) == kExteriorFace) mid = arc_point(c.arc(h), 0.5);
    // the semicircle reaches 0.5 beyond its chord, the widened arc about 1.12
    auto with_bubble = [&](double height) {
        ComplexBuilder b(c);
        const Point o = mid + height * (1.0 / norm(mid)) * mid;
        const VertexId v0 = b.add_vertex(o + Point{0.05, 0}), v1 = b.add_vertex(o - Point{0.05, 0});
        b.add_edge(v0, v1, -kPi / 2, 9, kExteriorLabel), b.add_edge(v1, v0, -kPi / 2, 9, kExteriorLabel);
        return b.build();
    };
    const BubbleComplex crossing = with_bubble(0.62), inside = with_bubble(0.3);
    CHECK_NOTHROW(pop_and_expand(crossing, pop, grow, 1.7));
    CHECK_THROWS_AS(pop_and_expand(crossing, pop, grow, 2.3), InfeasibleError);
    CHECK_THROWS_AS(pop_and_expand(inside, pop, grow, 2.3), InfeasibleError);
    CHECK_THROWS_AS(pop_and_expand(c, pop, pick(c, 2, 3), 2.3), PreconditionError);
}

TEST_CASE("double exterior detection") {
    CHECK(detect_double_exterior(construct_standard_triple(1.0)).empty());
    CHECK(detect_double_exterior(construct_flower(1.0)).empty());
    const BubbleComplex cut = cut_circle();
    const auto found = detect_double_exterior(cut);
    REQUIRE(found.size() == 1);
    CHECK(cut.face(found.front()).region == 2);
}

TEST_CASE("moves commute with rescaling") {
    const BubbleComplex c = tri_pentagon(1.0, {1, 2, 3, 1, 2, 3});
    const BubbleComplex big = rescale(c, 2.5);
    const double d1 = swap_regions(c, pick(c, 2, 5), pick(c, 3, 5)).perimeter_delta;
    const double d2 = swap_regions(big, pick(big, 2, 5), pick(big, 3, 5)).perimeter_delta;
    CHECK(d2 == Approx(2.5 * d1).epsilon(1e-12));
    const BubbleComplex q = rescale(construct_standard_quadruple(1.0, {1, 2, 3, 1}), 0.3);
    CHECK(reflect_4gon_into_3gon(q, pick(q, 2, 4), pick(q, 1, 3)).perimeter_delta ==
          Approx(-0.3 * threegon_flat_side(1.0) / 2).epsilon(1e-12));
}
