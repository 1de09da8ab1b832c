#pragma once

#include <map>
#include <string>
#include <vector>

#include "bubble/complex.hpp"

namespace bubble {

struct ConditionResult {
    bool pass = true;
    double residual = 0.0;  // dimensionless: curvatures are multiplied by the complex diameter
    std::string detail;
};

enum class FindingKind { kTwoGon, kTooManySides, kDoubleExterior, kEmptyChamber };
std::string to_string(FindingKind k);

struct Finding {
    FindingKind kind;
    std::vector<FaceId> faces;
};

struct ValidationReport {
    double tolerance = 1e-9;
    ConditionResult finite;
    ConditionResult constant_curvature;
    ConditionResult trivalent;
    ConditionResult angles;          // meeting angles of 2pi/3
    ConditionResult pair_curvature;  // one curvature per pair of regions
    ConditionResult cocycle;         // pressure is path independent
    // the variational condition cannot be decided locally
    static constexpr const char* minimality = "not evaluated";
    std::vector<Finding> findings;

    std::vector<std::pair<std::string, const ConditionResult*>> conditions() const;
    bool passed() const;
    std::string first_violation() const;  // empty when every condition holds
    bool has(FindingKind k) const;
};

ValidationReport validate(const BubbleComplex& c, double tol = 1e-9);

double gauss_bonnet_residual(const BubbleComplex& c, FaceId f);

// Pressure per face by breadth-first search over the dual graph from the
// exterior. Crossing an edge from its left to its right adds its curvature.
std::vector<double> face_pressures(const BubbleComplex& c);
double cocycle_residual(const BubbleComplex& c);

using PressureMap = std::map<RegionLabel, double>;
// throws PreconditionError when the pressure is path dependent
PressureMap pressures(const BubbleComplex& c, double tol = 1e-9);
double pressure(const BubbleComplex& c, RegionLabel r, double tol = 1e-9);
double perimeter_pressure_residual(const BubbleComplex& c, double tol = 1e-9);

enum class PressureVerdict { kFirstLonger, kSecondLonger, kInconclusive };
// For equal areas the complex with uniformly higher pressures is the longer one.
PressureVerdict compare_by_pressure(const BubbleComplex& c1, const BubbleComplex& c2, double tol = 1e-9);

// 4-gons and 5-gons with at least two sides on the exterior
std::vector<FaceId> double_exterior_faces(const BubbleComplex& c);

}  // namespace bubble
