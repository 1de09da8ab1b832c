#include "bubble/minimizer.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "bubble/errors.hpp"
#include "bubble/families.hpp"

namespace bubble {

namespace {

constexpr double kMaxPieceAngle = kPi / 4;

using Vec = Eigen::VectorXd;

Vec to_eigen(const std::vector<double>& v) { return Eigen::Map<const Vec>(v.data(), static_cast<long>(v.size())); }
std::vector<double> to_std(const Vec& v) { return {v.data(), v.data() + v.size()}; }

// per-piece geometry with derivatives in chord length and curvature
struct PieceEval {
    Point a, b, d;
    double chord, kappa, theta, cos_theta;
    bool ok;
};

}  // namespace

PerimeterModel::PerimeterModel(const BubbleComplex& topology) : original_(topology) {
    for (const Face& f : topology.faces())
        if (f.region == kEmptyLabel) throw InputError("minimize does not handle empty chambers");
    for (RegionLabel r : topology.labels())
        if (r > 0) labels_.push_back(r);
    if (labels_.empty()) throw InputError("topology has no labelled region");
    auto index_of = [&](RegionLabel r) {
        if (r == kExteriorLabel) return -1;
        return static_cast<int>(std::lower_bound(labels_.begin(), labels_.end(), r) - labels_.begin());
    };

    ComplexBuilder b(topology);
    chains_.resize(topology.edge_count());
    for (EdgeId e = 0; e < topology.edge_count(); ++e) {
        const int k = static_cast<int>(std::ceil(std::abs(topology.edge(e).half_angle) / kMaxPieceAngle - 1e-12));
        chains_[e].push_back(e);
        EdgeId rest = e;
        for (int i = k; i > 1; --i) {
            b.split_edge(rest, 1.0 / i);
            rest = static_cast<EdgeId>(b.edges.size()) - 1;
            chains_[e].push_back(rest);
        }
    }
    const BubbleComplex split = b.build();
    positions_ = split.vertices();
    for (EdgeId e = 0; e < split.edge_count(); ++e) {
        const Edge& ed = split.edge(e);
        pieces_.push_back({ed.from, ed.to, index_of(split.face(split.left_face(e)).region),
                           index_of(split.face(split.right_face(e)).region), split.left_face(e), split.right_face(e)});
    }
    for (const Face& f : split.faces()) face_label_.push_back(index_of(f.region));

    // pressures fitted to the starting curvatures by least squares
    const long n = static_cast<long>(labels_.size());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(split.edge_count(), n);
    Vec rhs(split.edge_count());
    for (EdgeId e = 0; e < split.edge_count(); ++e) {
        const Piece& p = pieces_[e];
        if (p.right >= 0) a(e, p.right) += 1;
        if (p.left >= 0) a(e, p.left) -= 1;
        rhs(e) = arc_curvature(split.edge_arc(e));
    }
    start_pressures_ = to_std(a.colPivHouseholderQr().solve(rhs));
}

std::vector<double> PerimeterModel::initial() const {
    std::vector<double> x;
    for (Point p : positions_) x.push_back(p.x), x.push_back(p.y);
    x.insert(x.end(), start_pressures_.begin(), start_pressures_.end());
    return x;
}

namespace {

template <class Piece>
PieceEval eval_piece(const Piece& p, const std::vector<double>& x, std::size_t pressure_offset) {
    PieceEval r{};
    r.a = {x[2 * p.from], x[2 * p.from + 1]};
    r.b = {x[2 * p.to], x[2 * p.to + 1]};
    r.d = r.b - r.a;
    r.chord = norm(r.d);
    const double pr = p.right >= 0 ? x[pressure_offset + p.right] : 0.0;
    const double pl = p.left >= 0 ? x[pressure_offset + p.left] : 0.0;
    r.kappa = pr - pl;
    const double s = r.kappa * r.chord / 2;
    r.ok = std::isfinite(s) && r.chord > 0 && std::abs(s) < 1 - 1e-12;
    if (r.ok) r.theta = std::asin(s), r.cos_theta = std::sqrt(1 - s * s);
    return r;
}

}  // namespace

bool PerimeterModel::feasible(const std::vector<double>& x) const {
    if (x.size() != size()) throw InputError("parameter vector has the wrong size");
    for (const Piece& p : pieces_)
        if (!eval_piece(p, x, 2 * positions_.size()).ok) return false;
    return true;
}

double PerimeterModel::perimeter(const std::vector<double>& x, std::vector<double>* grad) const {
    if (x.size() != size()) throw InputError("parameter vector has the wrong size");
    const std::size_t off = 2 * positions_.size();
    if (grad) grad->assign(size(), 0.0);
    double total = 0.0;
    for (const Piece& p : pieces_) {
        const PieceEval e = eval_piece(p, x, off);
        if (!e.ok) return INFINITY;
        const double f = length_factor(e.theta), df = length_factor_derivative(e.theta);
        total += e.chord * f;
        if (!grad) continue;
        const double dtheta_dc = e.kappa / (2 * e.cos_theta), dtheta_dk = e.chord / (2 * e.cos_theta);
        const double dl_dc = f + e.chord * df * dtheta_dc, dl_dk = e.chord * df * dtheta_dk;
        const Point u = (1.0 / e.chord) * e.d;
        (*grad)[2 * p.from] -= dl_dc * u.x, (*grad)[2 * p.from + 1] -= dl_dc * u.y;
        (*grad)[2 * p.to] += dl_dc * u.x, (*grad)[2 * p.to + 1] += dl_dc * u.y;
        if (p.right >= 0) (*grad)[off + p.right] += dl_dk;
        if (p.left >= 0) (*grad)[off + p.left] -= dl_dk;
    }
    return total;
}

std::vector<double> PerimeterModel::areas(const std::vector<double>& x, std::vector<std::vector<double>>* jac) const {
    if (x.size() != size()) throw InputError("parameter vector has the wrong size");
    const std::size_t off = 2 * positions_.size();
    std::vector<double> out(labels_.size(), 0.0);
    if (jac) jac->assign(labels_.size(), std::vector<double>(size(), 0.0));
    for (const Piece& p : pieces_) {
        const PieceEval e = eval_piece(p, x, off);
        if (!e.ok) return std::vector<double>(labels_.size(), NAN);
        // signed area this piece contributes to its left face (the right face gets the negative)
        const double g = area_factor(e.theta), dg = area_factor_derivative(e.theta);
        const double w = 0.5 * cross(e.a, e.b) - e.chord * e.chord * g;
        if (p.left >= 0) out[p.left] += w;
        if (p.right >= 0) out[p.right] -= w;
        if (!jac) continue;
        const double dtheta_dc = e.kappa / (2 * e.cos_theta), dtheta_dk = e.chord / (2 * e.cos_theta);
        const double dseg_dc = 2 * e.chord * g + e.chord * e.chord * dg * dtheta_dc;
        const double dseg_dk = e.chord * e.chord * dg * dtheta_dk;
        const Point u = (1.0 / e.chord) * e.d;
        std::vector<std::pair<std::size_t, double>> dw = {
            {2 * p.from, 0.5 * e.b.y + dseg_dc * u.x},
            {2 * p.from + 1, -0.5 * e.b.x + dseg_dc * u.y},
            {2 * p.to, -0.5 * e.a.y - dseg_dc * u.x},
            {2 * p.to + 1, 0.5 * e.a.x - dseg_dc * u.y},
        };
        if (p.right >= 0) dw.push_back({off + p.right, -dseg_dk});
        if (p.left >= 0) dw.push_back({off + p.left, dseg_dk});
        for (auto [i, v] : dw) {
            if (p.left >= 0) (*jac)[p.left][i] += v;
            if (p.right >= 0) (*jac)[p.right][i] -= v;
        }
    }
    return out;
}

std::vector<double> PerimeterModel::face_areas(const std::vector<double>& x) const {
    const std::size_t off = 2 * positions_.size();
    std::vector<double> out(face_label_.size(), 0.0);
    for (const Piece& p : pieces_) {
        const PieceEval e = eval_piece(p, x, off);
        if (!e.ok) return std::vector<double>(face_label_.size(), NAN);
        const double w = 0.5 * cross(e.a, e.b) - segment_area(e.chord, e.theta);
        out[p.left_face] += w;
        out[p.right_face] -= w;
    }
    return out;
}

BubbleComplex PerimeterModel::realize(const std::vector<double>& x, bool merge) const {
    if (!feasible(x)) throw NumericalError("parameters outside the feasible domain");
    const std::size_t off = 2 * positions_.size();
    std::vector<double> theta;
    for (const Piece& p : pieces_) theta.push_back(eval_piece(p, x, off).theta);
    ComplexBuilder b;
    const std::size_t nv = merge ? original_.vertices().size() : positions_.size();
    for (std::size_t v = 0; v < nv; ++v) b.add_vertex({x[2 * v], x[2 * v + 1]});
    for (EdgeId e = 0; e < original_.edge_count(); ++e) {
        const Edge& ed = original_.edge(e);
        const auto& chain = chains_[e];
        if (merge) {
            double sum = 0.0;
            for (int piece : chain) sum += theta[piece];
            b.add_edge(ed.from, ed.to, sum, ed.left, ed.right);
            continue;
        }
        for (int piece : chain)
            b.add_edge(pieces_[piece].from, pieces_[piece].to, theta[piece], ed.left, ed.right);
    }
    return b.build();
}

MinimizeResult minimize(const MinimizeProblem& p, const TraceCallback& on_step) {
    const PerimeterModel model(p.topology);
    const auto& labels = model.labels();
    Vec target(static_cast<long>(labels.size()));
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const auto it = p.target_areas.find(labels[i]);
        if (it == p.target_areas.end()) throw InputError("no target area for region " + std::to_string(labels[i]));
        if (!(it->second > 0)) throw InputError("target areas must be positive");
        target(static_cast<long>(i)) = it->second;
    }
    if (p.target_areas.size() != labels.size()) throw InputError("target areas name a region the topology lacks");
    if (!(p.area_tol > 0) || !(p.grad_tol > 0) || p.max_iterations <= 0) throw InputError("bad tolerances");

    const long n = static_cast<long>(model.size());
    const std::size_t off = 2 * model.vertex_count();
    const double min_target = target.minCoeff();
    const double area_scale = std::max(1.0, target.maxCoeff());
    Vec x = to_eigen(model.initial());
    if (!model.feasible(to_std(x))) throw InputError("starting geometry cannot carry the fitted pressures");
    Vec lambda = x.tail(static_cast<long>(labels.size()));
    // steps never move a vertex further than a fraction of the shortest edge
    double span = INFINITY;
    for (EdgeId e = 0; e < p.topology.edge_count(); ++e) span = std::min(span, chord_length(p.topology.edge_arc(e)));
    double mu = model.perimeter(to_std(x)) / (min_target * min_target);

    struct Eval {
        double phi, perimeter;
        Vec grad, c;
        Eigen::MatrixXd jac;
    };
    auto evaluate = [&](const Vec& at, Eval& out) {
        const auto xs = to_std(at);
        std::vector<double> gl;
        std::vector<std::vector<double>> ja;
        out.perimeter = model.perimeter(xs, &gl);
        if (!std::isfinite(out.perimeter)) return false;
        const auto a = model.areas(xs, &ja);
        out.c = to_eigen(a) - target;
        out.jac.resize(static_cast<long>(labels.size()), n);
        for (std::size_t i = 0; i < labels.size(); ++i) out.jac.row(static_cast<long>(i)) = to_eigen(ja[i]).transpose();
        const Vec mult = lambda - mu * out.c;
        out.phi = out.perimeter - lambda.dot(out.c) + 0.5 * mu * out.c.squaredNorm();
        out.grad = to_eigen(gl) - out.jac.transpose() * mult;
        return std::isfinite(out.phi) && out.grad.allFinite();
    };
    auto check_faces = [&](const Vec& at) {
        const auto fa = model.face_areas(to_std(at));
        for (std::size_t f = 1; f < fa.size(); ++f)
            if (!(fa[f] > 1e-6 * min_target)) throw NumericalError("a face collapsed during minimisation");
    };

    MinimizeResult result;
    int iterations = 0;
    double last_violation = INFINITY;
    Eval cur;
    if (!evaluate(x, cur)) throw NumericalError("objective is not finite at the start");
    for (int outer = 0; outer < 200 && iterations < p.max_iterations; ++outer) {
        // BFGS on the augmented Lagrangian
        Eigen::MatrixXd h = Eigen::MatrixXd::Identity(n, n);
        bool fresh = true;
        evaluate(x, cur);
        double best_grad = cur.grad.norm();
        int stalled = 0;
        while (iterations < p.max_iterations && cur.grad.norm() > 0.5 * p.grad_tol && stalled < 200) {
            Vec d = -h * cur.grad;
            if (cur.grad.dot(d) >= 0) {
                h.setIdentity();
                d = -cur.grad;
            }
            const double move = d.head(static_cast<long>(off)).lpNorm<Eigen::Infinity>();
            double t = move > 0.25 * span ? 0.25 * span / move : 1.0;
            Eval next;
            bool accepted = false;
            for (int k = 0; k < 80; ++k, t *= 0.5) {
                const Vec trial = x + t * d;
                if (!evaluate(trial, next)) continue;
                // near the optimum the decrease drowns in rounding; then a smaller gradient decides
                const bool armijo = next.phi <= cur.phi + 1e-4 * t * cur.grad.dot(d);
                const bool flat = next.phi <= cur.phi + 1e-13 * std::abs(cur.phi) && next.grad.norm() < cur.grad.norm();
                if (armijo || flat) {
                    accepted = true;
                    break;
                }
            }
            if (!accepted) {
                if (fresh) break;  // no progress even along the gradient
                h.setIdentity();
                fresh = true;
                continue;
            }
            const Vec s = t * d, y = next.grad - cur.grad;
            x += s;
            cur = std::move(next);
            check_faces(x);
            ++iterations;
            if (cur.grad.norm() < 0.999 * best_grad) best_grad = cur.grad.norm(), stalled = 0;
            else ++stalled;
            const double sy = s.dot(y);
            if (sy > 1e-14 * s.norm() * y.norm()) {
                if (fresh) h *= sy / y.squaredNorm();
                const Vec hy = h * y;
                const double rho = 1.0 / sy;
                h += (rho * rho * y.dot(hy) + rho) * s * s.transpose() - rho * (hy * s.transpose() + s * hy.transpose());
                fresh = false;
            }
            const TraceRecord rec{iterations, outer, cur.perimeter, cur.phi, cur.c.lpNorm<Eigen::Infinity>(), cur.grad.norm()};
            result.trace.push_back(rec);
            if (on_step) on_step(rec);
        }
        lambda -= mu * cur.c;
        // stationarity of the plain Lagrangian with the updated multipliers
        std::vector<double> gl;
        model.perimeter(to_std(x), &gl);
        const double kkt = (to_eigen(gl) - cur.jac.transpose() * lambda).norm();
        const double violation = cur.c.lpNorm<Eigen::Infinity>();
        result.final_grad_norm = kkt;
        if (violation <= p.area_tol * area_scale && kkt <= p.grad_tol) {
            result.converged = true;
            break;
        }
        if (violation > 0.25 * last_violation) mu = std::min(mu * 10, 1e14);
        last_violation = violation;
    }
    if (!x.allFinite()) throw NumericalError("minimisation diverged");

    const auto xs = to_std(x);
    result.iterations = iterations;
    // split arcs stay split so the reported complex is exactly the optimised one
    result.complex = model.realize(xs, false);
    result.perimeter = total_perimeter(result.complex);
    for (std::size_t i = 0; i < labels.size(); ++i) result.lagrange_multipliers[labels[i]] = lambda(static_cast<long>(i));
    result.regularity = validate(result.complex, 1e-6);
    return result;
}

double upper_bound_length(const std::vector<double>& areas) {
    if (areas.size() == 1) {
        if (!(areas[0] > 0)) throw InputError("areas must be positive");
        return 2 * std::sqrt(kPi * areas[0]);
    }
    return total_perimeter(circle_with_radii(areas));
}

}  // namespace bubble
