// Acceptance run: one PASS/FAIL line per criterion, exit status = number of failures.
// Usage: acceptance <path to the bubble executable>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "bubble/errors.hpp"
#include "bubble/families.hpp"
#include "bubble/fixtures.hpp"
#include "bubble/io.hpp"
#include "bubble/lemmas.hpp"
#include "bubble/minimizer.hpp"
#include "bubble/moves.hpp"
#include "bubble/regularity.hpp"

using namespace bubble;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

// records a sub-check; the first failing sub-check's message is kept
struct Ledger {
    Outcome out;
    std::ostringstream notes;
    int checks = 0, failed = 0;

    void check(bool ok, const std::string& what) {
        ++checks;
        if (ok) return;
        out.detail += (failed++ == 0 ? "failed: " : "; ") + what;
        out.pass = false;
    }
    void note(const std::string& s) { notes << (notes.tellp() > 0 ? "; " : "") << s; }
    Outcome done() {
        if (out.pass) out.detail = notes.str();
        else {
            out.detail += " [" + std::to_string(checks - failed) + " of " + std::to_string(checks) + " sub-checks pass]";
            if (notes.tellp() > 0) out.detail += " (" + notes.str() + ")";
        }
        return out;
    }
};

std::string num(double v, int digits = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

BubbleComplex perturb(const BubbleComplex& c, double fraction, std::mt19937_64& gen) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    ComplexBuilder b(c);
    const double d = diameter(c);
    for (Point& v : b.vertices) v = v + Point{fraction * d * u(gen), fraction * d * u(gen)};
    return b.build();
}

BubbleComplex bend(const BubbleComplex& c, double dtheta) {
    ComplexBuilder b(c);
    for (auto& e : b.edges)
        if (e.right == kExteriorLabel && std::abs(e.half_angle) > 1e-3) {
            e.half_angle += dtheta;
            break;
        }
    return b.build();
}

std::vector<BubbleComplex> regular_fixtures() {
    return {construct_standard_double(1.0, 1.0),
            construct_standard_double(1.0, 2.0),
            construct_standard_double(0.4, 3.0),
            construct_standard_triple(1.0),
            construct_standard_quadruple(1.0),
            construct_flower(1.0),
            tri_pentagon(1.0, {1, 2, 3, 1, 2, 3}),
            pentagon_complex(1.0, {1, 2, 3, 4, 1})};
}

Outcome regularity_fixtures() {
    Ledger l;
    int n = 0;
    for (const BubbleComplex& c : {construct_standard_double(1.0, 1.0), construct_standard_double(1.0, 2.0),
                                   construct_standard_double(0.4, 3.0), construct_standard_triple(1.0),
                                   construct_standard_quadruple(1.0), construct_flower(1.0)}) {
        const ValidationReport r = validate(c, 1e-9);
        l.check(r.passed(), "reference complex " + std::to_string(n) + " violates " + r.first_violation());
        ++n;
    }
    l.check(validate(slide_lenses()).has(FindingKind::kTwoGon), "2-gon not reported");
    l.check(!validate(tangent_circles()).trivalent.pass, "4-valent vertex not reported");
    l.check(validate(circle_with_radii({1, 1, 1})).first_violation() == "angles_2pi3", "wrong angle not reported");
    l.check(!validate(bend(construct_flower(1.0), 1e-3)).pair_curvature.pass, "curvature mismatch not reported");
    const BubbleComplex cut = cut_circle();
    const auto twice = double_exterior_faces(cut);
    l.check(validate(cut).has(FindingKind::kDoubleExterior) && twice.size() == 1 &&
                cut.face(twice[0]).side_count == 4,
            "double-exterior 4-gon not reported");
    l.note(std::to_string(n) + " regular complexes pass, 5 counterexamples flagged");
    return l.done();
}

Outcome gauss_bonnet() {
    Ledger l;
    double worst = 0.0;
    int faces = 0;
    auto all_faces = [&](const BubbleComplex& c) {
        for (FaceId f = 1; f < c.face_count(); ++f, ++faces) worst = std::max(worst, gauss_bonnet_residual(c, f));
    };
    for (const BubbleComplex& c : regular_fixtures()) all_faces(c);
    for (const BubbleComplex& c : {slide_lenses(), lens_chamber(), five_five(), three_five_five(), cut_circle()})
        all_faces(c);
    std::mt19937_64 gen(2);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        const double kappa = 0.3 + 2.5 * u(gen), b = threegon_flat_side(kappa);
        all_faces(build_ngon({NgonKind::kFourGon, kappa, (0.02 + 0.96 * u(gen)) * arc_chord(4, kappa), {}, {}}));
        const double share = 0.02 + 0.96 * u(gen);
        all_faces(build_ngon({NgonKind::kFiveGon, kappa, (0.6 + 1.2 * u(gen)) * b, share * b, (1 - share) * b}));
    }
    l.check(worst <= 1e-9, "residual " + num(worst));
    l.note(std::to_string(faces) + " faces, max residual " + num(worst, 3));
    return l.done();
}

Outcome central_edge() {
    Ledger l;
    std::string seen;
    for (double kappa : {0.5, 1.0, 2.0}) {
        const double r = fourgon_central_ratio(kappa);
        l.check(std::abs(r - 0.5) <= 1e-9, "ratio " + num(r, 15) + " at kappa " + num(kappa));
        seen += (seen.empty() ? "" : ", ") + num(r, 15);
    }
    l.note("central/shared = " + seen);
    return l.done();
}

Outcome inner_sum() {
    Ledger l;
    std::mt19937_64 gen(4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (double kappa : {0.5, 1.0, 2.0}) {
        const double b = 2.0 / (std::sqrt(3.0) * kappa);
        for (int i = 0; i < 50; ++i) {
            const double sa = (0.05 + 2.0 * u(gen)) / kappa;
            const double sb = std::max(0.01 / kappa, sa + (u(gen) - 0.5) * 0.9 * b);
            worst = std::max(worst, std::abs(fivegon_inner_sum(kappa, sa, sb) - b));
            // the family constructor at random parameters has the same inner sum
            const double share = 0.02 + 0.96 * u(gen);
            const BubbleComplex c =
                build_ngon({NgonKind::kFiveGon, kappa, (0.6 + 1.2 * u(gen)) * b, share * b, (1 - share) * b});
            std::vector<double> len;
            for (HalfEdgeId h : c.face(1).boundary()) len.push_back(arc_length(c.arc(h)));
            worst = std::max(worst, std::abs(fivegon_inner_sum(kappa, len[4], len[1]) - b));
        }
    }
    l.check(worst <= 1e-9, "max |u + v - 2/(sqrt3 kappa)| = " + num(worst));
    l.note("150 direct constructions + 150 family 5-gons, max deviation " + num(worst, 3));
    return l.done();
}

Outcome perimeter_pressure() {
    Ledger l;
    double worst = 0.0;
    for (const BubbleComplex& c : regular_fixtures()) worst = std::max(worst, perimeter_pressure_residual(c));
    l.check(worst <= 1e-8, "relative residual " + num(worst));
    // closed form for the kappa = 1 triple: three regions of pressure 1 and area pi/2 + 1/sqrt3
    const BubbleComplex t = construct_standard_triple(1.0);
    const double region = kPi / 2 + 1 / std::sqrt(3.0), closed = 3 * kPi + 2 * std::sqrt(3.0);
    l.check(std::abs(2 * 3 * 1.0 * region - closed) <= 1e-14 * closed, "closed-form constants disagree");
    l.check(std::abs(total_perimeter(t) - closed) <= 1e-12 * closed, "triple perimeter " + num(total_perimeter(t), 15));
    for (RegionLabel r : {1, 2, 3}) {
        l.check(std::abs(region_area(t, r) - region) <= 1e-12, "triple area");
        l.check(std::abs(pressure(t, r) - 1.0) <= 1e-12, "triple pressure");
    }
    l.note("max relative residual " + num(worst, 3) + "; triple " + num(total_perimeter(t), 15) + " = 3pi+2sqrt3");
    return l.done();
}

Outcome pressure_paths() {
    Ledger l;
    std::mt19937_64 gen(6);
    double worst_cocycle = 0.0, worst_spread = 0.0;
    for (const BubbleComplex& c : regular_fixtures()) {
        worst_cocycle = std::max(worst_cocycle, cocycle_residual(c));
        const DualGraph d = dual_adjacency(c);
        std::vector<std::vector<std::pair<FaceId, double>>> adj(d.node_count);
        for (const DualEdge& e : d.edges) {
            const double k = arc_curvature(c.edge_arc(e.edge));
            adj[e.left].push_back({e.right, k});
            adj[e.right].push_back({e.left, -k});
        }
        // 100 random paths ending in each region
        std::map<RegionLabel, std::pair<double, double>> range;
        std::map<RegionLabel, int> arrivals;
        for (int walk = 0; walk < 100000; ++walk) {
            bool all = !arrivals.empty() && arrivals.size() == region_areas(c).size() - 1;
            for (const auto& [r, n] : arrivals) all = all && n >= 100;
            if (all) break;
            FaceId f = kExteriorFace;
            double acc = 0.0;
            const int steps = 1 + static_cast<int>(gen() % 25);
            for (int s = 0; s < steps; ++s) {
                const auto& [g, k] = adj[f][gen() % adj[f].size()];
                acc += k, f = g;
            }
            const RegionLabel r = c.face(f).region;
            if (r <= 0) continue;
            auto [it, fresh] = range.try_emplace(r, acc, acc);
            it->second.first = std::min(it->second.first, acc), it->second.second = std::max(it->second.second, acc);
            ++arrivals[r];
        }
        for (const auto& [r, mm] : range) worst_spread = std::max(worst_spread, mm.second - mm.first);
        for (const auto& [r, n] : arrivals) l.check(n >= 100, "too few random paths into region " + std::to_string(r));
    }
    l.check(worst_cocycle <= 1e-9, "cocycle residual " + num(worst_cocycle));
    l.check(worst_spread <= 1e-9, "path spread " + num(worst_spread));
    const double bent = cocycle_residual(bend(construct_standard_triple(1.0), 0.1));
    l.check(bent > 1e-3, "perturbed triple residual only " + num(bent));
    l.note("cocycle " + num(worst_cocycle, 3) + ", path spread " + num(worst_spread, 3) + ", perturbed " + num(bent, 4));
    return l.done();
}

Outcome move_suite() {
    Ledger l;
    std::string names;
    for (const MoveCase& m : canonical_moves()) {
        if (m.name == "pop_and_expand") continue;
        const double delta = total_perimeter(m.report.result) - total_perimeter(m.before);
        l.check(std::abs(delta - m.report.perimeter_delta) <= 1e-12 * std::max(1.0, total_perimeter(m.before)),
                m.name + " reports a delta its result does not have");
        l.check(move_witness_holds(m, 1e-9), m.name + " (delta " + num(delta) + ", violation '" + m.report.violation + "')");
        names += (names.empty() ? "" : ", ") + m.name + " " + num(delta, 3);
    }
    l.note(names);
    return l.done();
}

Outcome pop_arithmetic() {
    Ledger l;
    const double length = arc_length(1.0, 2.3), area = segment_area(1.0, 2.3);
    l.check(std::abs(length - 3.0855) <= 5e-4,
            "arc length C theta/sin theta = " + num(length, 8) + " is not 3.0855 +/- 5e-4 (it does round to 3.08)");
    l.check(std::abs(area - 1.2573) <= 5e-4, "segment area " + num(area, 8));
    // strict inequalities on the fixture with unit chords
    const BubbleComplex c = tri_pentagon(2.0, {1, 2, 1, 3, 2, 4});
    std::vector<FaceId> tri;
    for (FaceId f = 1; f < c.face_count(); ++f)
        if (c.face(f).region == 1 && c.face(f).side_count == 3) tri.push_back(f);
    const double lost_area = face_area(c, tri[1]);
    double lost_length = 0.0;  // the popped 3-gon's exterior arc
    for (HalfEdgeId h : c.face(tri[1]).boundary())
        if (!is_straight(c.arc(h))) lost_length = arc_length(c.arc(h));
    const double arc_now = arc_length(1.0, kPi / 2);
    l.check(length - arc_now < lost_length, "perimeter does not drop");
    l.check(area - segment_area(1.0, kPi / 2) > lost_area, "area does not grow");
    const MoveReport m = pop_and_expand(c, tri[1], tri[0]);
    l.check(m.perimeter_delta < 0.0 && m.area_deltas.at(1) > 0.0, "move report disagrees");
    const double root = pop_break_even_angle();
    l.check(root > 2.2 && root < 2.4 && std::abs(root - kPi * std::sin(root)) <= 1e-12, "break-even " + num(root, 15));
    l.note("length " + num(length, 8) + ", area " + num(area, 8) + ", 3-gon area lost " + num(lost_area, 6) +
           ", theta* " + num(root, 13));
    return l.done();
}

Outcome minimizer_runs() {
    Ledger l;
    std::mt19937_64 gen(9);
    double slowest = 0.0, worst_rel = 0.0;
    const double scale = 1 / std::sqrt(kPi / 2 + 1 / std::sqrt(3.0));
    const BubbleComplex triple = rescale(construct_standard_triple(1.0), scale);
    struct Case {
        std::string name;
        BubbleComplex start;
        std::map<RegionLabel, double> areas;
        double expected;
    };
    const std::vector<Case> cases{
        {"circle", construct_circle(kPi, 1, 3), {{1, kPi}}, 2 * kPi},
        {"double", construct_standard_double(1.0, 1.0), {{1, 1.0}, {2, 1.0}},
         total_perimeter(construct_standard_double(1.0, 1.0))},
        {"triple", triple, {{1, 1.0}, {2, 1.0}, {3, 1.0}}, scale * (3 * kPi + 2 * std::sqrt(3.0))}};
    int runs = 0;
    for (const Case& cs : cases)
        for (int i = 0; i < 20; ++i, ++runs) {
            MinimizeProblem p{perturb(cs.start, 0.05, gen), cs.areas};
            const auto t0 = std::chrono::steady_clock::now();
            MinimizeResult r;
            try {
                r = minimize(p);
            } catch (const std::exception& e) {
                l.check(false, cs.name + " run " + std::to_string(i) + " threw: " + e.what());
                continue;
            }
            const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            slowest = std::max(slowest, secs);
            const std::string tag = cs.name + " run " + std::to_string(i);
            l.check(r.converged, tag + " did not converge");
            l.check(secs <= 10.0, tag + " took " + num(secs) + " s");
            const double rel = std::abs(r.perimeter - cs.expected) / cs.expected;
            worst_rel = std::max(worst_rel, rel);
            l.check(rel <= 1e-6, tag + " perimeter " + num(r.perimeter, 12));
            l.check(validate(r.complex, 1e-5).angles.pass, tag + " angles off");
            for (const auto& [label, lambda] : r.lagrange_multipliers)
                l.check(std::abs(lambda - pressure(r.complex, label, 1e-6)) <= 1e-5, tag + " multiplier mismatch");
        }
    l.note(std::to_string(runs) + " runs, max relative error " + num(worst_rel, 3) + ", slowest " + num(slowest, 3) + " s");
    return l.done();
}

Outcome upper_bound() {
    Ledger l;
    const double bound = upper_bound_length({1.0, 1.0, 1.0});
    // the circle of total area 3 plus three radii
    const double oracle = 2 * std::sqrt(3 * kPi) + 3 * std::sqrt(3 / kPi);
    l.check(std::abs(bound - oracle) <= 1e-3, "bound " + num(bound, 8) + " vs oracle " + num(oracle, 8));
    l.check(std::abs(bound - total_perimeter(circle_with_radii({1.0, 1.0, 1.0}))) <= 1e-12, "bound is not the constructed complex's length");
    std::mt19937_64 gen(10);
    const double scale = 1 / std::sqrt(kPi / 2 + 1 / std::sqrt(3.0));
    double minimum = 0.0;
    for (int i = 0; i < 5; ++i) {
        MinimizeProblem p{perturb(rescale(construct_standard_triple(1.0), scale), 0.05, gen), {{1, 1.0}, {2, 1.0}, {3, 1.0}}};
        const MinimizeResult r = minimize(p);
        l.check(r.perimeter <= bound + 1e-9, "minimum above the bound");
        minimum = r.perimeter;
    }
    for (const auto& areas : std::vector<std::vector<double>>{{1.0, 2.0}, {0.5, 1.0, 2.0}}) {
        BubbleComplex start = areas.size() == 2 ? construct_standard_double(areas[0], areas[1])
                                                : rescale(construct_standard_triple(1.0), scale);
        MinimizeProblem p{perturb(start, 0.03, gen), {}};
        for (std::size_t i = 0; i < areas.size(); ++i) p.target_areas[static_cast<RegionLabel>(i + 1)] = areas[i];
        const MinimizeResult r = minimize(p);
        l.check(r.perimeter <= upper_bound_length(areas) + 1e-9, "unequal-area minimum above the bound");
    }
    l.check(minimum < bound, "triple minimum not strictly smaller");
    l.note("upper_bound_length(1,1,1) = " + num(bound, 8) + " = 2sqrt(3pi)+3sqrt(3/pi); triple minimum " + num(minimum, 8) +
           " (the listed 9.0395 disagrees with that formula)");
    return l.done();
}

Outcome gradient_check() {
    Ledger l;
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> jitter(-0.05, 0.05);
    double worst = 0.0;
    int points = 0;
    while (points < 100) {
        const BubbleComplex start = perturb(points % 2 ? construct_standard_triple(1.0) : construct_standard_double(1.0, 2.0), 0.05, gen);
        const PerimeterModel m(start);
        std::vector<double> x = m.initial();
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
            worst = std::max(worst, std::abs(fd - g[i]) / std::max(1.0, std::abs(g[i])));
            const auto ap = m.areas(xp), am = m.areas(xm);
            for (std::size_t r = 0; r < ap.size(); ++r)
                worst = std::max(worst, std::abs((ap[r] - am[r]) / (2 * h) - jac[r][i]) / std::max(1.0, std::abs(jac[r][i])));
        }
    }
    l.check(worst <= 1e-6, "relative error " + num(worst));
    l.note("100 points, max relative error " + num(worst, 3));
    return l.done();
}

int run_cli(const std::string& cli, const std::string& args) {
    const int status = std::system((cli + " " + args + " >/dev/null 2>&1").c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome serialization(const std::string& cli) {
    Ledger l;
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / ("bubble_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    double worst = 0.0;
    auto rel = [](double a, double b) { return std::abs(a - b) / std::max(1e-300, std::max(std::abs(a), std::abs(b))); };
    int n = 0;
    for (const BubbleComplex& c : regular_fixtures()) {
        const std::string path = (dir / ("c" + std::to_string(n++) + ".json")).string();
        save_document(path, c);
        const BubbleComplex back = load_document(path).complex;
        worst = std::max(worst, rel(total_perimeter(back), total_perimeter(c)));
        const auto a0 = region_areas(c), a1 = region_areas(back);
        const auto p0 = pressures(c), p1 = pressures(back);
        l.check(a0.size() == a1.size() && p0.size() == p1.size(), "regions lost");
        for (const auto& [r, a] : a0) worst = std::max(worst, rel(a1.at(r), a));
        for (const auto& [r, p] : p0) worst = std::max(worst, rel(p1.at(r), p));
    }
    l.check(worst <= 1e-12, "round-trip drift " + num(worst));

    const std::string t = (dir / "t.json").string(), radii = (dir / "r.json").string(), bad = (dir / "bad.json").string();
    l.check(run_cli(cli, "construct --shape triple --kappa 1 -o " + t) == 0, "construct exit code");
    l.check(fs::exists(t) && load_document(t).complex.vertex_count() == 4 && load_document(t).complex.edge_count() == 6,
            "constructed triple has the wrong size");
    l.check(run_cli(cli, "validate " + t) == 0, "validate triple exit code");
    l.check(run_cli(cli, "construct --shape circle-radii --areas 1,1,1 -o " + radii) == 0, "construct radii");
    l.check(run_cli(cli, "validate " + radii) == 1, "validate circle-radii exit code");
    {
        Json j = to_json(load_document(t).complex);
        j["edges"][2]["v_to"] = 41;
        std::ofstream(bad) << j.dump();
    }
    l.check(run_cli(cli, "validate " + bad) == 2, "corrupted ids exit code");
    l.check(run_cli(cli, "construct --shape pentagram") == 2, "unknown shape exit code");
    l.check(run_cli(cli, "construct --shape ngon --kind fourgon --kappa 1 --t 5") == 3, "infeasible exit code");
    l.check(run_cli(cli, "verify-lemmas") == 0, "verify-lemmas exit code");
    fs::remove_all(dir);
    l.note("round-trip drift " + num(worst, 3) + "; exit codes 0/1/2/3 observed");
    return l.done();
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: acceptance <bubble executable>\n");
        return 2;
    }
    const std::string cli = argv[1];
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"regularity fixtures", regularity_fixtures},
        {"Gauss-Bonnet", gauss_bonnet},
        {"4-gon central edge", central_edge},
        {"5-gon inner edge sum", inner_sum},
        {"perimeter-pressure identity", perimeter_pressure},
        {"pressure well-defined", pressure_paths},
        {"move suite", move_suite},
        {"pop-and-expand arithmetic", pop_arithmetic},
        {"minimizer reproduction", minimizer_runs},
        {"upper bound", upper_bound},
        {"gradient check", gradient_check},
        {"serialization and exit codes", [&] { return serialization(cli); }},
    };
    int failures = 0, index = 0;
    for (const auto& [name, run] : criteria) {
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {false, std::string("threw: ") + e.what()};
        }
        failures += !o.pass;
        std::printf("criterion %2d %-30s %s  %s\n", ++index, name.c_str(), o.pass ? "PASS" : "FAIL", o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria pass\n", index - failures, criteria.size());
    return failures;
}
