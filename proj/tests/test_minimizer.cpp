#include <cmath>
#include <random>

#include "bubble/errors.hpp"
#include "bubble/families.hpp"
#include "bubble/minimizer.hpp"
#include "doctest.h"

using namespace bubble;
using doctest::Approx;

namespace {

BubbleComplex perturb(const BubbleComplex& c, double fraction, unsigned seed) {
    std::mt19937 gen(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    ComplexBuilder b(c);
    const double d = diameter(c);
    for (Point& v : b.vertices) v = v + Point{fraction * d * u(gen), fraction * d * u(gen)};
    return b.build();
}

// the properties every converged run must have
void check_converged(const MinimizeProblem& p, const MinimizeResult& r) {
    REQUIRE(r.converged);
    CHECK(r.final_grad_norm <= p.grad_tol);
    for (const auto& [label, a] : p.target_areas) {
        CHECK(std::abs(region_area(r.complex, label) - a) <= p.area_tol * std::max(1.0, a));
        CHECK(r.lagrange_multipliers.at(label) == Approx(pressure(r.complex, label, 1e-6)).epsilon(1e-5));
    }
    double two_pa = 0.0;
    for (const auto& [label, a] : p.target_areas) two_pa += 2 * r.lagrange_multipliers.at(label) * a;
    CHECK(std::abs(r.perimeter - two_pa) <= 1e-5 * r.perimeter);
    CHECK_MESSAGE(r.regularity.passed(), r.regularity.first_violation());
    CHECK(r.perimeter == Approx(total_perimeter(r.complex)).epsilon(1e-15));
    // the merit function never rises within a multiplier round
    for (std::size_t i = 1; i < r.trace.size(); ++i)
        if (r.trace[i].outer == r.trace[i - 1].outer)
            CHECK(r.trace[i].merit <= r.trace[i - 1].merit + 1e-12 * std::abs(r.trace[i - 1].merit));
}

}  // namespace

TEST_CASE("analytic gradients match central differences") {
    std::mt19937 gen(7);
    int points = 0;
    for (unsigned seed = 0; points < 100; ++seed) {
        const BubbleComplex start = perturb(construct_standard_triple(1.0), 0.05, seed);
        const PerimeterModel m(start);
        std::vector<double> x = m.initial();
        // random pressures near the fitted ones
        std::uniform_real_distribution<double> jitter(-0.05, 0.05);
        for (std::size_t i = 2 * m.vertex_count(); i < x.size(); ++i) x[i] += jitter(gen);
        if (!m.feasible(x)) continue;
        ++points;
        std::vector<double> g;
        std::vector<std::vector<double>> jac;
        m.perimeter(x, &g);
        m.areas(x, &jac);
        const double h = 1e-6;
        for (std::size_t i = 0; i < x.size(); ++i) {
            auto xp = x, xm = x;
            xp[i] += h, xm[i] -= h;
            const double fd = (m.perimeter(xp) - m.perimeter(xm)) / (2 * h);
            CHECK(std::abs(fd - g[i]) <= 1e-6 * std::max(1.0, std::abs(g[i])));
            const auto ap = m.areas(xp), am = m.areas(xm);
            for (std::size_t r = 0; r < ap.size(); ++r) {
                const double fa = (ap[r] - am[r]) / (2 * h);
                CHECK(std::abs(fa - jac[r][i]) <= 1e-6 * std::max(1.0, std::abs(jac[r][i])));
            }
        }
    }
}

TEST_CASE("model geometry agrees with the complex") {
    const BubbleComplex start = perturb(construct_standard_double(1.0, 2.0), 0.04, 3);
    const PerimeterModel m(start);
    const auto x = m.initial();
    const BubbleComplex c = m.realize(x, false);
    CHECK(m.perimeter(x) == Approx(total_perimeter(c)).epsilon(1e-13));
    const auto a = m.areas(x);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == Approx(region_area(c, m.labels()[i])).epsilon(1e-13));

    // translating every vertex leaves the perimeter unchanged
    std::vector<double> g;
    m.perimeter(x, &g);
    double gx = 0.0, gy = 0.0;
    for (std::size_t v = 0; v < m.vertex_count(); ++v) gx += g[2 * v], gy += g[2 * v + 1];
    CHECK(std::abs(gx) < 1e-12);
    CHECK(std::abs(gy) < 1e-12);
}

TEST_CASE("straight edges pull along their chords") {
    // equal pressures keep the triple's spokes straight wherever the centre goes
    const BubbleComplex t = construct_standard_triple(1.0);
    const PerimeterModel m(t);
    auto x = m.initial();
    for (std::size_t i = 2 * m.vertex_count(); i < x.size(); ++i) x[i] = 1.0;
    const Point o{0.1, 0.05};
    x[0] = o.x, x[1] = o.y;
    std::vector<double> g;
    m.perimeter(x, &g);
    Point expected{};
    for (VertexId v = 1; v <= 3; ++v) {
        const Point d = t.vertex(v) - o;
        expected = expected - (1.0 / norm(d)) * d;
    }
    CHECK(g[0] == Approx(expected.x).epsilon(1e-12));
    CHECK(g[1] == Approx(expected.y).epsilon(1e-12));
}

TEST_CASE("single bubble becomes a circle") {
    MinimizeProblem p{perturb(construct_circle(kPi, 1, 3), 0.05, 11), {{1, kPi}}};
    const MinimizeResult r = minimize(p);
    check_converged(p, r);
    CHECK(std::abs(r.perimeter - 2 * kPi) < 1e-6);
    CHECK(r.lagrange_multipliers.at(1) == Approx(1.0).epsilon(1e-7));
    CHECK(r.perimeter <= upper_bound_length({kPi}) + 1e-9);
}

TEST_CASE("double bubble is reproduced") {
    const BubbleComplex exact = construct_standard_double(1.0, 2.0);
    MinimizeProblem p{perturb(exact, 0.05, 5), {{1, 1.0}, {2, 2.0}}};
    const MinimizeResult r = minimize(p);
    check_converged(p, r);
    CHECK(std::abs(r.perimeter - total_perimeter(exact)) < 1e-6);
    CHECK(r.lagrange_multipliers.at(1) == Approx(pressure(exact, 1)).epsilon(1e-7));
    CHECK(r.lagrange_multipliers.at(2) == Approx(pressure(exact, 2)).epsilon(1e-7));
    CHECK(r.perimeter <= upper_bound_length({1.0, 2.0}) + 1e-9);
}

TEST_CASE("triple bubble is reproduced from perturbed starts") {
    const BubbleComplex t = construct_standard_triple(1.0);
    const double s = 1.0 / std::sqrt(region_area(t, 1));  // scale to unit areas
    const double expected = s * (3 * kPi + 2 * std::sqrt(3.0));
    for (unsigned seed = 0; seed < 5; ++seed) {
        MinimizeProblem p{perturb(rescale(t, s), 0.05, 100 + seed), {{1, 1.0}, {2, 1.0}, {3, 1.0}}};
        const MinimizeResult r = minimize(p);
        check_converged(p, r);
        CHECK(std::abs(r.perimeter - expected) < 1e-6 * expected);
        CHECK(r.perimeter <= upper_bound_length({1, 1, 1}) + 1e-9);
    }
}

TEST_CASE("unequal triple stays below the circle-and-radii bound") {
    const BubbleComplex t = construct_standard_triple(1.0);
    MinimizeProblem p{t, {{1, 1.0}, {2, 1.5}, {3, 2.0}}};
    const MinimizeResult r = minimize(p);
    check_converged(p, r);
    CHECK(r.perimeter <= upper_bound_length({1.0, 1.5, 2.0}) + 1e-9);
}

TEST_CASE("minimizer errors") {
    const BubbleComplex t = construct_standard_triple(1.0);
    CHECK_THROWS_AS(minimize({t, {{1, 1.0}, {2, 1.0}}}), InputError);
    CHECK_THROWS_AS(minimize({t, {{1, 1.0}, {2, 1.0}, {3, -1.0}}}), InputError);
    CHECK_THROWS_AS(minimize({t, {{1, 1.0}, {2, 1.0}, {3, 1.0}, {4, 1.0}}}), InputError);
    // asking one region to vanish collapses its face
    CHECK_THROWS_AS(minimize({t, {{1, 1.0}, {2, 1.0}, {3, 1e-9}}}), NumericalError);
    MinimizeProblem few{perturb(t, 0.05, 1), {{1, 2.0}, {2, 2.0}, {3, 2.0}}};
    few.max_iterations = 5;
    const MinimizeResult r = minimize(few);
    CHECK_FALSE(r.converged);
    CHECK(r.iterations == 5);
}

TEST_CASE("upper bound from a circle and radii") {
    const double total = 3.0;
    const double expected = 2 * std::sqrt(kPi * total) + 3 * std::sqrt(total / kPi);
    CHECK(upper_bound_length({1, 1, 1}) == Approx(expected).epsilon(1e-13));
    CHECK(upper_bound_length({1, 1, 1}) == Approx(9.0716).epsilon(1e-4));
    // length scales with the square root of the area
    CHECK(upper_bound_length({kPi, kPi, kPi}) == Approx(std::sqrt(kPi) * upper_bound_length({1, 1, 1})).epsilon(1e-13));
}
