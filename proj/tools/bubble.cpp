#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
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

enum Exit { kOk = 0, kValidationFailure = 1, kInputError = 2, kInfeasible = 3 };

struct Options {
    std::string file, out, shape, kind = "threegon", move;
    double tol = 1e-9, kappa = 1.0, area = kPi, theta = 2.3, displacement = 0.0;
    std::optional<double> t, u, v;
    std::vector<double> areas;
    std::vector<int> labels, faces;
    int max_iter = 20000;
    std::uint64_t seed = 1;
};

void emit(const Options& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(o.out);
    if (!f) throw InputError("cannot write " + o.out);
    f << text;
}

template <std::size_t N>
std::array<RegionLabel, N> labels_or(const Options& o, std::array<RegionLabel, N> fallback) {
    if (o.labels.empty()) return fallback;
    if (o.labels.size() != N) throw InputError("--labels needs " + std::to_string(N) + " values");
    std::copy(o.labels.begin(), o.labels.end(), fallback.begin());
    return fallback;
}

std::vector<double> areas_or(const Options& o, std::vector<double> fallback) {
    return o.areas.empty() ? fallback : o.areas;
}

BubbleComplex build_shape(const Options& o) {
    const std::string& s = o.shape;
    if (s == "circle") return construct_circle(o.area);
    if (s == "double") {
        const auto a = areas_or(o, {1.0, 1.0});
        if (a.size() != 2) throw InputError("double needs two areas");
        return construct_standard_double(a[0], a[1]);
    }
    if (s == "triple") return construct_standard_triple(o.kappa);
    if (s == "quadruple") return construct_standard_quadruple(o.kappa, labels_or<4>(o, {1, 2, 3, 4}));
    if (s == "flower") return construct_flower(o.kappa);
    if (s == "circle-radii") return circle_with_radii(areas_or(o, {1.0, 1.0, 1.0}));
    if (s == "ngon") {
        static const std::map<std::string, NgonKind> kinds{
            {"threegon", NgonKind::kThreeGon}, {"fourgon", NgonKind::kFourGon}, {"fivegon", NgonKind::kFiveGon}};
        const auto k = kinds.find(o.kind);
        if (k == kinds.end()) throw InputError("unknown n-gon kind '" + o.kind + "'");
        return build_ngon({k->second, o.kappa, o.t, o.u, o.v});
    }
    // reference fixtures for the moves
    if (s == "tri-pentagon") return tri_pentagon(o.kappa, labels_or<6>(o, {1, 2, 3, 4, 2, 5}));
    if (s == "pentagon-complex") return pentagon_complex(o.kappa, labels_or<5>(o, {1, 2, 3, 4, 2}));
    if (s == "slide-lenses") return slide_lenses();
    if (s == "lens-chamber") return lens_chamber();
    if (s == "cut-circle") return cut_circle();
    if (s == "five-five") return five_five();
    if (s == "three-five-five") return three_five_five();
    if (s == "tangent-circles") return tangent_circles();
    throw InputError("unknown shape '" + s + "'");
}

int cmd_construct(const Options& o) {
    Json meta{{"shape", o.shape}};
    if (o.shape == "triple" || o.shape == "quadruple" || o.shape == "flower" || o.shape == "ngon") meta["kappa"] = o.kappa;
    emit(o, dump_document(build_shape(o), meta));
    return kOk;
}

int cmd_validate(const Options& o) {
    const ValidationReport r = validate(load_document(o.file).complex, o.tol);
    emit(o, to_json(r).dump(2) + "\n");
    return r.passed() ? kOk : kValidationFailure;
}

int cmd_measure(const Options& o) {
    emit(o, measurements(load_document(o.file).complex, o.tol).dump(2) + "\n");
    return kOk;
}

int cmd_apply_move(const Options& o) {
    const BubbleComplex c = load_document(o.file).complex;
    auto face = [&](std::size_t i) {
        if (o.faces.size() <= i) throw InputError("move '" + o.move + "' needs " + std::to_string(i + 1) + " face ids");
        return static_cast<FaceId>(o.faces[i]);
    };
    MoveReport r;
    if (o.move == "fill") r = fill_empty_chamber(c, face(0));
    else if (o.move == "slide") r = slide_2gon(c, face(0), o.displacement);
    else if (o.move == "reflect-4-3") r = reflect_4gon_into_3gon(c, face(0), face(1));
    else if (o.move == "swap") r = swap_regions(c, face(0), face(1));
    else if (o.move == "reflect-small") r = reflect_small_into_large(c, face(0), face(1));
    else if (o.move == "reflect-5-3") r = reflect_5gon_into_3gon(c, face(0), face(1));
    else if (o.move == "reflect-5-4") r = reflect_5gon_into_4gon(c, face(0), face(1));
    else if (o.move == "pop") r = pop_and_expand(c, face(0), face(1), o.theta);
    else throw InputError("unknown move '" + o.move + "'");
    // the report goes to standard output, the resulting complex to --out
    std::cout << to_json(r).dump(2) << "\n";
    if (!o.out.empty()) save_document(o.out, r.result, {{"move", r.move}});
    return kOk;
}

int cmd_minimize(const Options& o) {
    MinimizeProblem p{load_document(o.file).complex, {}};
    const auto current = region_areas(p.topology);
    std::vector<RegionLabel> labels;
    for (const auto& [r, a] : current)
        if (r > 0) labels.push_back(r);
    if (o.areas.empty()) {
        for (RegionLabel r : labels) p.target_areas[r] = current.at(r);
    } else {
        if (o.areas.size() != labels.size())
            throw InputError("--areas needs one value per region (" + std::to_string(labels.size()) + ")");
        for (std::size_t i = 0; i < labels.size(); ++i) p.target_areas[labels[i]] = o.areas[i];
    }
    p.max_iterations = o.max_iter;
    const MinimizeResult res = minimize(p, [](const TraceRecord& t) {
        std::printf("iter %d outer %d perimeter %.15g merit %.15g area_residual %.3e grad %.3e\n", t.iteration,
                    t.outer, t.perimeter, t.merit, t.max_area_residual, t.grad_norm);
    });
    std::vector<double> targets;
    for (const auto& [r, a] : p.target_areas) targets.push_back(a);
    std::printf("converged %s iterations %d perimeter %.15g grad %.3e upper_bound %.15g regular %s\n",
                res.converged ? "yes" : "no", res.iterations, res.perimeter, res.final_grad_norm,
                upper_bound_length(targets), res.regularity.passed() ? "yes" : "no");
    if (!o.out.empty()) {
        Json meta{{"converged", res.converged}, {"iterations", res.iterations}};
        for (const auto& [r, l] : res.lagrange_multipliers) meta["multipliers"][std::to_string(r)] = l;
        save_document(o.out, res.complex, meta);
    }
    return res.converged ? kOk : kValidationFailure;
}

int cmd_verify_lemmas(const Options& o) {
    bool all = true;
    for (const LemmaCheck& c : verify_lemmas(o.seed)) {
        std::printf("%s\n", format_check(c).c_str());
        all = all && c.pass;
    }
    return all ? kOk : kValidationFailure;
}

int cmd_render(const Options& o) {
    emit(o, render_svg(load_document(o.file).complex));
    return kOk;
}

int guarded(int (*cmd)(const Options&), const Options& o) {
    try {
        return cmd(o);
    } catch (const InfeasibleError& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return kInfeasible;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kInfeasible;
    } catch (const PreconditionError& e) {
        std::cerr << "precondition: " << e.what() << "\n";
        return kInputError;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Planar soap-bubble complexes: construct, validate, measure, transform, minimize"};
    app.require_subcommand(1);
    Options o;

    auto* construct = app.add_subcommand("construct", "write a reference complex as JSON");
    construct->add_option("--shape", o.shape,
                          "circle, double, triple, quadruple, flower, ngon, circle-radii, tri-pentagon, "
                          "pentagon-complex, slide-lenses, lens-chamber, cut-circle, five-five, "
                          "three-five-five, tangent-circles")
        ->required();
    construct->add_option("--kappa", o.kappa, "exterior arc curvature");
    construct->add_option("--area", o.area, "circle area");
    construct->add_option("--areas", o.areas, "region areas")->delimiter(',');
    construct->add_option("--kind", o.kind, "n-gon kind: threegon, fourgon, fivegon");
    construct->add_option("--t", o.t, "4-gon side next to the arc, or 5-gon side next to u");
    construct->add_option("--u", o.u, "5-gon inner edge u");
    construct->add_option("--v", o.v, "5-gon inner edge v");
    construct->add_option("--labels", o.labels, "region labels of the fixture's faces")->delimiter(',');

    auto* validate_cmd = app.add_subcommand("validate", "check the regularity conditions");
    auto* measure = app.add_subcommand("measure", "perimeter, areas, pressures and faces");
    auto* apply = app.add_subcommand("apply-move", "apply a perimeter-reducing move");
    apply->add_option("--move", o.move, "fill, slide, reflect-4-3, swap, reflect-small, reflect-5-3, reflect-5-4, pop")
        ->required();
    apply->add_option("--faces", o.faces, "face ids as listed by measure")->delimiter(',')->required();
    apply->add_option("--displacement", o.displacement, "slide distance");
    apply->add_option("--theta", o.theta, "half-angle of the widened arc");
    auto* minimize_cmd = app.add_subcommand("minimize", "minimize perimeter at fixed areas");
    minimize_cmd->add_option("--areas", o.areas, "target areas by ascending label (default: current)")->delimiter(',');
    minimize_cmd->add_option("--max-iter", o.max_iter, "iteration limit");
    auto* lemmas = app.add_subcommand("verify-lemmas", "run the invariant suite");
    lemmas->add_option("--seed", o.seed, "seed for the random shapes");
    auto* render = app.add_subcommand("render", "draw the complex as SVG");

    for (auto* sub : {validate_cmd, measure, apply, minimize_cmd, render})
        sub->add_option("file", o.file, "complex document")->required();
    for (auto* sub : {validate_cmd, measure})
        sub->add_option("--tol", o.tol, "tolerance")->capture_default_str();
    for (auto* sub : {construct, validate_cmd, measure, apply, minimize_cmd, render})
        sub->add_option("-o,--out", o.out, "output file (default: standard output)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInputError;
    }
    if (!(o.tol > 0.0)) {
        std::cerr << "input error: --tol must be positive\n";
        return kInputError;
    }

    if (*construct) return guarded(cmd_construct, o);
    if (*validate_cmd) return guarded(cmd_validate, o);
    if (*measure) return guarded(cmd_measure, o);
    if (*apply) return guarded(cmd_apply_move, o);
    if (*minimize_cmd) return guarded(cmd_minimize, o);
    if (*lemmas) return guarded(cmd_verify_lemmas, o);
    return guarded(cmd_render, o);
}
