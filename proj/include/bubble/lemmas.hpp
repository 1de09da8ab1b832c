#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bubble/complex.hpp"
#include "bubble/moves.hpp"

namespace bubble {

struct LemmaCheck {
    std::string name;
    double measured = 0.0;
    double expected = 0.0;
    double residual = 0.0;
    bool pass = false;
};

// "name measured=... expected=... residual=... PASS|FAIL"
std::string format_check(const LemmaCheck& c);

// central edge over the side shared with a 3-gon, for the 4-gons of the
// standard quadruple bubble at curvature kappa (worst of the two)
double fourgon_central_ratio(double kappa);

// Sum of the two inner edges of the 5-gon built directly from coordinates:
// the arc chord 1/kappa on the x axis, parallel sides of lengths side_a (left)
// and side_b (right) perpendicular to it, apex where the 2pi/3 corners meet.
// Throws InfeasibleError when the apex falls outside the polygon.
double fivegon_inner_sum(double kappa, double side_a, double side_b);

// every move applied to its reference fixture
struct MoveCase {
    std::string name;
    BubbleComplex before;
    MoveReport report;
};
std::vector<MoveCase> canonical_moves();

// the move improves length, or keeps it while breaking regularity, without losing area
bool move_witness_holds(const MoveCase& m, double tol = 1e-9);

std::vector<LemmaCheck> verify_lemmas(std::uint64_t seed = 1);

}  // namespace bubble
