#pragma once

#include <functional>
#include <map>
#include <vector>

#include "bubble/complex.hpp"
#include "bubble/regularity.hpp"

namespace bubble {

// Total perimeter and region areas as smooth functions of the vertex
// positions and one pressure per labelled region. Each edge's curvature is the
// pressure jump across it, so its half-angle is asin(kappa * chord / 2).
// Arcs wider than a quarter turn are split first so every piece stays well
// inside the |theta| < pi/2 branch.
class PerimeterModel {
public:
    explicit PerimeterModel(const BubbleComplex& topology);

    // vertex coordinates (x0, y0, x1, y1, ...) followed by the pressures
    std::size_t size() const { return 2 * positions_.size() + labels_.size(); }
    std::size_t vertex_count() const { return positions_.size(); }
    const std::vector<RegionLabel>& labels() const { return labels_; }
    std::vector<double> initial() const;

    // false when some edge cannot carry its curvature (|kappa * chord / 2| >= 1)
    bool feasible(const std::vector<double>& x) const;
    double perimeter(const std::vector<double>& x, std::vector<double>* grad = nullptr) const;
    // one entry per label; jac receives one gradient row per label
    std::vector<double> areas(const std::vector<double>& x, std::vector<std::vector<double>>* jac = nullptr) const;
    std::vector<double> face_areas(const std::vector<double>& x) const;

    // the complex at x; `merge` joins split arcs back into single edges
    BubbleComplex realize(const std::vector<double>& x, bool merge = true) const;

private:
    struct Piece {
        int from, to;
        int left, right;  // pressure index, -1 for the exterior
        int left_face, right_face;
    };
    BubbleComplex original_;
    std::vector<Point> positions_;
    std::vector<Piece> pieces_;
    std::vector<std::vector<int>> chains_;  // pieces of each original edge, in order
    std::vector<RegionLabel> labels_;
    std::vector<int> face_label_;           // pressure index of each traced face
    std::vector<double> start_pressures_;
};

struct TraceRecord {
    int iteration = 0;
    int outer = 0;          // multiplier update round
    double perimeter = 0.0;
    double merit = 0.0;     // augmented Lagrangian, non-increasing within a round
    double max_area_residual = 0.0;
    double grad_norm = 0.0;
};

struct MinimizeProblem {
    BubbleComplex topology;
    std::map<RegionLabel, double> target_areas;
    double area_tol = 1e-10;
    double grad_tol = 1e-8;
    int max_iterations = 20000;
};

struct MinimizeResult {
    BubbleComplex complex;
    std::map<RegionLabel, double> lagrange_multipliers;
    bool converged = false;
    int iterations = 0;
    double final_grad_norm = 0.0;
    double perimeter = 0.0;
    ValidationReport regularity;
    std::vector<TraceRecord> trace;
};

using TraceCallback = std::function<void(const TraceRecord&)>;

// Area-constrained perimeter minimisation over the topology's combinatorial
// type: augmented Lagrangian outer loop, BFGS inner loop with backtracking.
// Throws NumericalError when a face collapses or the iteration diverges.
MinimizeResult minimize(const MinimizeProblem& p, const TraceCallback& on_step = {});

// perimeter of a circle of the total area cut into sectors by radii
// (just the circle for a single area)
double upper_bound_length(const std::vector<double>& areas);

}  // namespace bubble
