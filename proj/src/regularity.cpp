#include "bubble/regularity.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>

#include "bubble/errors.hpp"

namespace bubble {

namespace {

double scale_of(const BubbleComplex& c) { return std::max(diameter(c), 1e-300); }

double departure(const BubbleComplex& c, HalfEdgeId h) { return start_tangent(c.arc(h)); }

// left-turning curvature of a half-edge
double turning_curvature(const BubbleComplex& c, HalfEdgeId h) {
    const ArcSpec a = c.arc(h);
    return -2.0 * std::sin(a.half_angle) / chord_length(a);
}

void fail_if_above(ConditionResult& r, double tol) { r.pass = r.residual <= tol; }

std::string ids(const std::vector<int>& v) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    return os.str();
}

int positive_label_count(const BubbleComplex& c) {
    const auto ls = c.labels();
    return static_cast<int>(std::count_if(ls.begin(), ls.end(), [](RegionLabel r) { return r > 0; }));
}

}  // namespace

std::string to_string(FindingKind k) {
    switch (k) {
        case FindingKind::kTwoGon: return "two_gon";
        case FindingKind::kTooManySides: return "more_than_six_sides";
        case FindingKind::kDoubleExterior: return "double_exterior";
        case FindingKind::kEmptyChamber: return "empty_chamber";
    }
    return "unknown";
}

std::vector<std::pair<std::string, const ConditionResult*>> ValidationReport::conditions() const {
    return {{"finite", &finite},
            {"constant_curvature", &constant_curvature},
            {"trivalent", &trivalent},
            {"angles_2pi3", &angles},
            {"pair_curvature_consistency", &pair_curvature},
            {"cocycle", &cocycle}};
}

bool ValidationReport::passed() const { return first_violation().empty(); }

std::string ValidationReport::first_violation() const {
    for (const auto& [name, r] : conditions())
        if (!r->pass) return name;
    return {};
}

bool ValidationReport::has(FindingKind k) const {
    return std::any_of(findings.begin(), findings.end(), [&](const Finding& f) { return f.kind == k; });
}

ValidationReport validate(const BubbleComplex& c, double tol) {
    if (!(tol > 0.0)) throw InputError("tolerance must be positive");
    ValidationReport rep;
    rep.tolerance = tol;
    const double d = scale_of(c);

    bool finite = true;
    for (const Point& p : c.vertices()) finite = finite && std::isfinite(p.x) && std::isfinite(p.y);
    for (const Edge& e : c.edges()) finite = finite && std::isfinite(e.half_angle);
    rep.finite.residual = finite ? 0.0 : INFINITY;
    fail_if_above(rep.finite, tol);

    std::vector<int> bad_degree;
    for (VertexId v = 0; v < c.vertex_count(); ++v) {
        const int deg = c.degree(v);
        if (deg == 3) continue;
        if (deg == 2) {
            const auto& out = c.outgoing(v);
            // a 2-valent vertex is an interior point of a smooth arc, up to the tolerance
            const double kink = std::abs(std::remainder(
                start_tangent(c.arc(out[0])) - start_tangent(c.arc(out[1])) - kPi, kTwoPi));
            rep.angles.residual = std::max(rep.angles.residual, kink);
            if (kink > tol) {
                bad_degree.push_back(v);
                continue;
            }
            // curvature entering along out[0] reversed versus leaving along out[1]
            const double jump = std::abs(-turning_curvature(c, out[0]) - turning_curvature(c, out[1]));
            rep.constant_curvature.residual = std::max(rep.constant_curvature.residual, jump * d);
            continue;
        }
        bad_degree.push_back(v);
    }
    fail_if_above(rep.constant_curvature, tol);
    rep.trivalent.residual = static_cast<double>(bad_degree.size());
    rep.trivalent.pass = bad_degree.empty();
    if (!bad_degree.empty()) rep.trivalent.detail = "vertices " + ids(bad_degree);

    std::vector<int> bad_angle;
    for (VertexId v = 0; v < c.vertex_count(); ++v) {
        if (c.degree(v) != 3) continue;
        const auto& out = c.outgoing(v);
        double worst = 0.0;
        for (int i = 0; i < 3; ++i) {
            const double gap = std::fmod(departure(c, out[(i + 1) % 3]) - departure(c, out[i]) + 2 * kTwoPi, kTwoPi);
            worst = std::max(worst, std::abs(gap - kThirdTurn));
        }
        if (worst > tol) bad_angle.push_back(v);
        rep.angles.residual = std::max(rep.angles.residual, worst);
    }
    fail_if_above(rep.angles, tol);
    if (!bad_angle.empty()) rep.angles.detail = "vertices " + ids(bad_angle);

    // curvature of every edge oriented from the lower label to the higher one;
    // empty chambers are keyed per face since they are separate regions
    std::map<std::pair<long, long>, std::pair<double, double>> span;
    for (EdgeId e = 0; e < c.edge_count(); ++e) {
        const FaceId fl = c.left_face(e), fr = c.right_face(e);
        auto key = [&](FaceId f) {
            const RegionLabel r = c.face(f).region;
            return r == kEmptyLabel ? -1L - f : static_cast<long>(r);
        };
        const long l = key(fl), r = key(fr);
        double k = arc_curvature(c.edge_arc(e));
        if (l > r) k = -k;
        auto [it, fresh] = span.try_emplace({std::min(l, r), std::max(l, r)}, k, k);
        if (l == r) it->second.first = std::min(it->second.first, 0.0), it->second.second = std::max(it->second.second, 0.0);
        it->second.first = std::min(it->second.first, k);
        it->second.second = std::max(it->second.second, k);
    }
    std::vector<std::string> bad_pairs;
    for (const auto& [pair, mm] : span) {
        const double spread = (mm.second - mm.first) * d;
        if (spread > tol) bad_pairs.push_back(std::to_string(pair.first) + "|" + std::to_string(pair.second));
        rep.pair_curvature.residual = std::max(rep.pair_curvature.residual, spread);
    }
    fail_if_above(rep.pair_curvature, tol);
    for (const auto& s : bad_pairs) rep.pair_curvature.detail += (rep.pair_curvature.detail.empty() ? "pairs " : " ") + s;

    rep.cocycle.residual = cocycle_residual(c) * d;
    fail_if_above(rep.cocycle, tol);

    const bool many_regions = positive_label_count(c) > 2;
    for (const Face& f : c.faces()) {
        if (f.id == kExteriorFace) continue;
        if (f.side_count == 2 && many_regions) rep.findings.push_back({FindingKind::kTwoGon, {f.id}});
        if (f.side_count > 6) rep.findings.push_back({FindingKind::kTooManySides, {f.id}});
        if (f.region == kEmptyLabel) rep.findings.push_back({FindingKind::kEmptyChamber, {f.id}});
    }
    for (FaceId f : double_exterior_faces(c)) rep.findings.push_back({FindingKind::kDoubleExterior, {f}});
    return rep;
}

double gauss_bonnet_residual(const BubbleComplex& c, FaceId f) {
    if (f == kExteriorFace || f < 0 || f >= c.face_count()) throw InputError("Gauss-Bonnet needs an interior face");
    double total = 0.0;
    for (HalfEdgeId h : c.face(f).boundary()) {
        const ArcSpec a = c.arc(h);
        total += -2.0 * a.half_angle;
        total += wrap_angle(start_tangent(c.arc(c.next(h))) - end_tangent(a));
    }
    return std::abs(total - kTwoPi);
}

std::vector<double> face_pressures(const BubbleComplex& c) {
    std::vector<double> p(c.face_count(), NAN);
    p[kExteriorFace] = 0.0;
    std::deque<FaceId> queue{kExteriorFace};
    while (!queue.empty()) {
        const FaceId f = queue.front();
        queue.pop_front();
        for (const auto& cycle : c.face(f).cycles)
            for (HalfEdgeId h : cycle) {
                const FaceId g = c.face_of(BubbleComplex::twin(h));
                if (!std::isnan(p[g])) continue;
                p[g] = p[f] + arc_curvature(c.arc(h));
                queue.push_back(g);
            }
    }
    return p;
}

double cocycle_residual(const BubbleComplex& c) {
    const auto p = face_pressures(c);
    double worst = 0.0;
    for (HalfEdgeId h = 0; h < c.half_edge_count(); h += 2) {
        const FaceId f = c.face_of(h), g = c.face_of(BubbleComplex::twin(h));
        worst = std::max(worst, std::abs(p[g] - p[f] - arc_curvature(c.arc(h))));
    }
    for (RegionLabel r : c.labels()) {
        if (r == kEmptyLabel) continue;
        double lo = INFINITY, hi = -INFINITY;
        for (FaceId f : c.faces_with_label(r)) lo = std::min(lo, p[f]), hi = std::max(hi, p[f]);
        worst = std::max(worst, hi - lo);
    }
    return worst;
}

PressureMap pressures(const BubbleComplex& c, double tol) {
    if (cocycle_residual(c) * scale_of(c) > tol) throw PreconditionError("pressure is path dependent (cocycle violated)");
    const auto p = face_pressures(c);
    PressureMap out{{kExteriorLabel, 0.0}};
    for (RegionLabel r : c.labels())
        if (r != kEmptyLabel) out[r] = p[c.faces_with_label(r).front()];
    return out;
}

double pressure(const BubbleComplex& c, RegionLabel r, double tol) {
    const auto m = pressures(c, tol);
    const auto it = m.find(r);
    if (it == m.end()) throw InputError("unknown region label " + std::to_string(r));
    return it->second;
}

double perimeter_pressure_residual(const BubbleComplex& c, double tol) {
    if (cocycle_residual(c) * scale_of(c) > tol) throw PreconditionError("pressure is path dependent (cocycle violated)");
    const auto p = face_pressures(c);
    double work = 0.0;
    for (const Face& f : c.faces())
        if (f.id != kExteriorFace) work += p[f.id] * face_area(c, f.id);
    const double l = total_perimeter(c);
    return std::abs(l - 2.0 * work) / l;
}

PressureVerdict compare_by_pressure(const BubbleComplex& c1, const BubbleComplex& c2, double tol) {
    const auto a1 = region_areas(c1), a2 = region_areas(c2);
    if (a1.size() != a2.size()) throw InputError("complexes enclose different regions");
    for (const auto& [r, a] : a1) {
        const auto it = a2.find(r);
        if (it == a2.end() || std::abs(it->second - a) > tol * std::max(1.0, a))
            throw InputError("area mismatch for region " + std::to_string(r));
    }
    // the length identity behind the comparison holds only for regular complexes
    for (const BubbleComplex* c : {&c1, &c2})
        if (const auto v = validate(*c, tol).first_violation(); !v.empty())
            throw PreconditionError("pressure comparison needs a regular complex (" + v + " fails)");
    const auto p1 = pressures(c1, tol), p2 = pressures(c2, tol);
    bool first_higher = true, second_higher = true;
    for (const auto& [r, a] : a1) {
        (void)a;
        if (r == kEmptyLabel) continue;
        first_higher = first_higher && p1.at(r) > p2.at(r);
        second_higher = second_higher && p2.at(r) > p1.at(r);
    }
    if (first_higher) return PressureVerdict::kFirstLonger;
    if (second_higher) return PressureVerdict::kSecondLonger;
    return PressureVerdict::kInconclusive;
}

std::vector<FaceId> double_exterior_faces(const BubbleComplex& c) {
    std::vector<FaceId> out;
    for (const Face& f : c.faces()) {
        if (f.id == kExteriorFace || (f.side_count != 4 && f.side_count != 5)) continue;
        int exterior = 0;
        for (const auto& side : c.sides(f.id))
            exterior += c.face_of(BubbleComplex::twin(side.front())) == kExteriorFace;
        if (exterior >= 2) out.push_back(f.id);
    }
    return out;
}

}  // namespace bubble
