#include "bubble/lemmas.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "bubble/arc.hpp"
#include "bubble/errors.hpp"
#include "bubble/families.hpp"
#include "bubble/fixtures.hpp"
#include "bubble/regularity.hpp"

namespace bubble {

std::string format_check(const LemmaCheck& c) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-28s measured=%.12g expected=%.12g residual=%.3e %s", c.name.c_str(), c.measured,
                  c.expected, c.residual, c.pass ? "PASS" : "FAIL");
    return buf;
}

namespace {

FaceId pick(const BubbleComplex& c, RegionLabel r, int sides, int nth = 0) {
    for (FaceId f = 1; f < c.face_count(); ++f)
        if (c.face(f).region == r && c.face(f).side_count == sides && nth-- == 0) return f;
    throw PreconditionError("reference fixture lacks the expected face");
}

// length of f's boundary shared with faces having `sides` sides
double shared_with(const BubbleComplex& c, FaceId f, int sides) {
    double l = 0.0;
    for (HalfEdgeId h : c.face(f).boundary()) {
        const FaceId g = c.face_of(BubbleComplex::twin(h));
        if (g != kExteriorFace && c.face(g).side_count == sides) l += arc_length(c.arc(h));
    }
    return l;
}

LemmaCheck within(std::string name, double measured, double expected, double tol, bool relative = false) {
    double r = std::abs(measured - expected);
    if (relative) r /= std::max(std::abs(expected), 1e-300);
    return {std::move(name), measured, expected, r, r <= tol};
}

// one-sided: measured <= bound
LemmaCheck at_most(std::string name, double measured, double bound, double tol) {
    const double r = std::max(0.0, measured - bound);
    return {std::move(name), measured, bound, r, r <= tol};
}

std::vector<BubbleComplex> regular_fixtures() {
    return {construct_standard_double(1.0, 1.0), construct_standard_double(1.0, 2.0),
            construct_standard_double(0.5, 3.0), construct_standard_triple(1.0),
            construct_standard_quadruple(1.0),   construct_flower(1.0)};
}

}  // namespace

double fourgon_central_ratio(double kappa) {
    const BubbleComplex c = construct_standard_quadruple(kappa);
    double worst = 0.0;
    bool found = false;
    for (FaceId f = 1; f < c.face_count(); ++f) {
        if (c.face(f).side_count != 4) continue;
        // each 4-gon meets the two 3-gons along its sides and the other 4-gon along its central edge
        const double ratio = shared_with(c, f, 4) / (shared_with(c, f, 3) / 2);
        if (!found || std::abs(ratio - 0.5) > std::abs(worst - 0.5)) worst = ratio;
        found = true;
    }
    if (!found) throw PreconditionError("quadruple bubble without 4-gons");
    return worst;
}

double fivegon_inner_sum(double kappa, double side_a, double side_b) {
    if (!(kappa > 0.0) || !(side_a > 0.0) || !(side_b > 0.0)) throw InputError("need positive curvature and sides");
    const Point a_top{0.0, side_a}, b_top{1.0 / kappa, side_b};
    // the inner edges leave the side tops turning by pi/3 towards each other
    const Point from_b = unit(kPi / 2 + kPi / 3), from_a = unit(kPi / 2 - kPi / 3);
    const LineHit hit = intersect_lines(a_top, from_a, b_top, from_b);
    if (!(hit.s > 0.0) || !(hit.t > 0.0)) throw InfeasibleError("inner edges do not meet inside the 5-gon");
    const Point apex = a_top + hit.s * from_a;
    return distance(a_top, apex) + distance(b_top, apex);
}

std::vector<MoveCase> canonical_moves() {
    std::vector<MoveCase> out;
    auto add = [&](std::string name, BubbleComplex c, auto&& move) {
        MoveReport r = move(c);
        out.push_back({std::move(name), std::move(c), std::move(r)});
    };
    add("fill_empty_chamber", lens_chamber(), [](const BubbleComplex& c) {
        return fill_empty_chamber(c, c.faces_with_label(kEmptyLabel).front());
    });
    add("slide_2gon", slide_lenses(), [](const BubbleComplex& c) {
        // slide the lens the full length of the shortest region-1 arc leaving its corners
        const FaceId lens = pick(c, 2, 2);
        double ahead = INFINITY;
        for (HalfEdgeId h : c.face(lens).boundary())
            for (HalfEdgeId o : c.outgoing(c.origin(h))) {
                const FaceId l = c.face_of(o), r = c.face_of(BubbleComplex::twin(o));
                if (l == lens || r == lens) continue;
                if (c.face(l).region == 1 || c.face(r).region == 1)
                    ahead = std::min(ahead, edge_length(c, BubbleComplex::edge_of(o)));
            }
        return slide_2gon(c, lens, ahead);
    });
    add("reflect_4gon_into_3gon", construct_standard_quadruple(1.0, {1, 2, 3, 1}),
        [](const BubbleComplex& c) { return reflect_4gon_into_3gon(c, pick(c, 2, 4), pick(c, 1, 3)); });
    add("swap_regions_5gon", tri_pentagon(1.0, {1, 2, 3, 4, 2, 5}),
        [](const BubbleComplex& c) { return swap_regions(c, pick(c, 2, 5), pick(c, 5, 5)); });
    add("swap_regions_4gon", construct_flower(1.0),
        [](const BubbleComplex& c) { return swap_regions(c, pick(c, 1, 4), pick(c, 3, 4)); });
    FlowerParams p = FlowerParams::symmetric(1.0, 0.8);
    p.fourgon_sides = {0.7, 0.8, 0.9, 1.0, 0.8, 0.9};
    add("reflect_small_4gon", construct_flower(1.0, p),
        [](const BubbleComplex& c) { return reflect_small_into_large(c, pick(c, 1, 4), pick(c, 3, 4)); });
    add("reflect_small_5gon", five_five(),
        [](const BubbleComplex& c) { return reflect_small_into_large(c, pick(c, 1, 5), pick(c, 2, 5)); });
    add("reflect_5gon_into_3gon", pentagon_complex(1.0, {1, 2, 3, 4, 1}),
        [](const BubbleComplex& c) { return reflect_5gon_into_3gon(c, pick(c, 3, 5), pick(c, 1, 3)); });
    add("reflect_5gon_into_4gon", pentagon_complex(1.0, {1, 2, 3, 4, 2}),
        [](const BubbleComplex& c) { return reflect_5gon_into_4gon(c, pick(c, 3, 5), pick(c, 2, 4)); });
    add("pop_and_expand", tri_pentagon(2.0, {1, 2, 1, 3, 2, 4}),
        [](const BubbleComplex& c) { return pop_and_expand(c, pick(c, 1, 3, 1), pick(c, 1, 3, 0)); });
    return out;
}

bool move_witness_holds(const MoveCase& m, double tol) {
    // measured from the complexes rather than taken from the report
    const double delta = total_perimeter(m.report.result) - total_perimeter(m.before);
    const auto a0 = region_areas(m.before), a1 = region_areas(m.report.result);
    for (const auto& [r, a] : a0) {
        if (r <= 0) continue;
        const auto it = a1.find(r);
        if ((it == a1.end() ? 0.0 : it->second) - a < -tol) return false;
    }
    if (delta > tol) return false;
    return delta < -tol || !validate(m.report.result, tol).first_violation().empty();
}

std::vector<LemmaCheck> verify_lemmas(std::uint64_t seed) {
    std::vector<LemmaCheck> out;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit01(0.0, 1.0);

    for (double kappa : {0.5, 1.0, 2.0})
        out.push_back(within("fourgon_central_half k=" + std::to_string(kappa).substr(0, 3),
                             fourgon_central_ratio(kappa), 0.5, 1e-9));

    for (double kappa : {0.5, 1.0, 2.0}) {
        const double b = threegon_flat_side(kappa);
        double worst = 0.0, measured = b;
        for (int i = 0; i < 50; ++i) {
            const double sa = (0.05 + 2.0 * unit01(rng)) / kappa;
            const double sb = std::max(0.01 / kappa, sa + (unit01(rng) - 0.5) * 0.9 * b);
            const double s = fivegon_inner_sum(kappa, sa, sb);
            if (std::abs(s - b) >= worst) worst = std::abs(s - b), measured = s;
        }
        out.push_back(within("fivegon_inner_sum k=" + std::to_string(kappa).substr(0, 3), measured, b, 1e-9));
    }

    {
        const BubbleComplex t = construct_standard_triple(1.0);
        out.push_back(within("triple_perimeter", total_perimeter(t), 3 * kPi + 2 * std::sqrt(3.0), 1e-12, true));
        double worst = 0.0;
        for (const BubbleComplex& c : regular_fixtures()) worst = std::max(worst, perimeter_pressure_residual(c));
        out.push_back(within("perimeter_pressure_identity", worst, 0.0, 1e-8));
    }

    {
        double worst = 0.0;
        for (const BubbleComplex& c : regular_fixtures())
            for (FaceId f = 1; f < c.face_count(); ++f) worst = std::max(worst, gauss_bonnet_residual(c, f));
        for (int i = 0; i < 50; ++i) {
            const double kappa = 0.3 + 2.0 * unit01(rng), b = threegon_flat_side(kappa);
            const double t4 = (0.02 + 0.96 * unit01(rng)) * arc_chord(4, kappa);
            const BubbleComplex four = build_ngon({NgonKind::kFourGon, kappa, t4, {}, {}});
            const double u = (0.02 + 0.96 * unit01(rng)) * b, t5 = (0.6 + unit01(rng)) * b;
            const BubbleComplex five = build_ngon({NgonKind::kFiveGon, kappa, t5, u, b - u});
            worst = std::max({worst, gauss_bonnet_residual(four, 1), gauss_bonnet_residual(five, 1)});
        }
        out.push_back(within("gauss_bonnet", worst, 0.0, 1e-9));
    }

    out.push_back(within("pop_arc_length", arc_length(1.0, 2.3), 3.08, 5e-3));
    out.push_back(within("pop_segment_area", segment_area(1.0, 2.3), 1.2574, 5e-4));
    {
        const double root = pop_break_even_angle();
        LemmaCheck c = within("pop_break_even", root, kPi * std::sin(root), 1e-12);
        c.pass = c.pass && root > 2.2 && root < 2.4;
        out.push_back(c);
    }

    for (const MoveCase& m : canonical_moves()) {
        LemmaCheck c = at_most("move " + m.name, m.report.perimeter_delta, 0.0, 1e-9);
        c.pass = c.pass && move_witness_holds(m);
        out.push_back(c);
    }
    return out;
}

}  // namespace bubble
