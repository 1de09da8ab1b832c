#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bubble/errors.hpp"
#include "bubble/families.hpp"
#include "bubble/io.hpp"
#include "bubble/lemmas.hpp"
#include "bubble/minimizer.hpp"
#include "bubble/moves.hpp"
#include "bubble/regularity.hpp"

namespace py = pybind11;
using namespace bubble;

namespace {

MoveReport apply_move(const std::string& name, const BubbleComplex& c, const std::vector<FaceId>& faces, double param) {
    auto face = [&](std::size_t i) {
        if (faces.size() <= i) throw InputError("move '" + name + "' needs " + std::to_string(i + 1) + " faces");
        return faces[i];
    };
    if (name == "fill") return fill_empty_chamber(c, face(0));
    if (name == "slide") return slide_2gon(c, face(0), param);
    if (name == "reflect-4-3") return reflect_4gon_into_3gon(c, face(0), face(1));
    if (name == "swap") return swap_regions(c, face(0), face(1));
    if (name == "reflect-small") return reflect_small_into_large(c, face(0), face(1));
    if (name == "reflect-5-3") return reflect_5gon_into_3gon(c, face(0), face(1));
    if (name == "reflect-5-4") return reflect_5gon_into_4gon(c, face(0), face(1));
    if (name == "pop") return pop_and_expand(c, face(0), face(1), param);
    throw InputError("unknown move '" + name + "'");
}

NgonKind kind_of(const std::string& k) {
    if (k == "threegon") return NgonKind::kThreeGon;
    if (k == "fourgon") return NgonKind::kFourGon;
    if (k == "fivegon") return NgonKind::kFiveGon;
    throw InputError("unknown n-gon kind '" + k + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "planar soap-bubble complexes";

    auto input = py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<PreconditionError>(m, "PreconditionError", input.ptr());
    py::register_exception<InfeasibleError>(m, "InfeasibleError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

    py::class_<BubbleComplex>(m, "Complex")
        .def_property_readonly("vertex_count", &BubbleComplex::vertex_count)
        .def_property_readonly("edge_count", &BubbleComplex::edge_count)
        .def_property_readonly("face_count", &BubbleComplex::face_count)
        .def_property_readonly("perimeter", [](const BubbleComplex& c) { return total_perimeter(c); })
        .def_property_readonly("areas", [](const BubbleComplex& c) { return region_areas(c); })
        .def("pressures", [](const BubbleComplex& c, double tol) { return pressures(c, tol); }, py::arg("tol") = 1e-9)
        .def("face_sides", [](const BubbleComplex& c, FaceId f) { return c.face(f).side_count; })
        .def("face_region", [](const BubbleComplex& c, FaceId f) { return c.face(f).region; })
        .def("validation_json", [](const BubbleComplex& c, double tol) { return to_json(validate(c, tol)).dump(); },
             py::arg("tol") = 1e-9)
        .def("measurements_json", [](const BubbleComplex& c) { return measurements(c).dump(); })
        .def("to_json", [](const BubbleComplex& c) { return dump_document(c); })
        .def("render_svg", &render_svg)
        .def("rescale", &rescale)
        .def("__repr__", [](const BubbleComplex& c) {
            return "<Complex " + std::to_string(c.vertex_count()) + " vertices, " + std::to_string(c.edge_count()) +
                   " edges, " + std::to_string(c.face_count() - 1) + " faces>";
        });

    m.def("from_json", [](const std::string& text) { return parse_document(text).complex; });
    m.def("circle", [](double area) { return construct_circle(area); }, py::arg("area"));
    m.def("standard_double", &construct_standard_double, py::arg("a1"), py::arg("a2"));
    m.def("standard_triple", &construct_standard_triple, py::arg("kappa") = 1.0);
    m.def("standard_quadruple", [](double k) { return construct_standard_quadruple(k); }, py::arg("kappa") = 1.0);
    m.def("flower", [](double k) { return construct_flower(k); }, py::arg("kappa") = 1.0);
    m.def("circle_with_radii", &circle_with_radii, py::arg("areas"));
    m.def(
        "ngon",
        [](const std::string& kind, double kappa, std::optional<double> t, std::optional<double> u,
           std::optional<double> v) { return build_ngon({kind_of(kind), kappa, t, u, v}); },
        py::arg("kind"), py::arg("kappa") = 1.0, py::arg("t") = py::none(), py::arg("u") = py::none(),
        py::arg("v") = py::none());

    py::class_<MoveReport>(m, "MoveReport")
        .def_readonly("move", &MoveReport::move)
        .def_readonly("perimeter_delta", &MoveReport::perimeter_delta)
        .def_readonly("area_deltas", &MoveReport::area_deltas)
        .def_readonly("violation", &MoveReport::violation)
        .def_readonly("result", &MoveReport::result)
        .def_property_readonly("witness", [](const MoveReport& r) { return to_string(r.witness); });
    m.def("apply_move", &apply_move, py::arg("name"), py::arg("complex"), py::arg("faces"), py::arg("param") = 2.3);

    py::class_<MinimizeResult>(m, "MinimizeResult")
        .def_readonly("complex", &MinimizeResult::complex)
        .def_readonly("lagrange_multipliers", &MinimizeResult::lagrange_multipliers)
        .def_readonly("converged", &MinimizeResult::converged)
        .def_readonly("iterations", &MinimizeResult::iterations)
        .def_readonly("perimeter", &MinimizeResult::perimeter)
        .def_readonly("final_grad_norm", &MinimizeResult::final_grad_norm);
    m.def(
        "minimize",
        [](const BubbleComplex& c, const std::map<RegionLabel, double>& areas, int max_iterations) {
            MinimizeProblem p{c, areas};
            p.max_iterations = max_iterations;
            py::gil_scoped_release release;
            return minimize(p);
        },
        py::arg("complex"), py::arg("areas"), py::arg("max_iterations") = 20000);
    m.def("upper_bound_length", &upper_bound_length, py::arg("areas"));

    m.def("verify_lemmas", [](std::uint64_t seed) {
        std::vector<py::tuple> out;
        for (const LemmaCheck& c : verify_lemmas(seed))
            out.push_back(py::make_tuple(c.name, c.measured, c.expected, c.residual, c.pass));
        return out;
    }, py::arg("seed") = 1);
}
