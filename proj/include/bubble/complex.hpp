#pragma once

#include <limits>
#include <map>
#include <vector>

#include "bubble/arc.hpp"

namespace bubble {

using VertexId = int;
using EdgeId = int;
using HalfEdgeId = int;
using FaceId = int;
using RegionLabel = int;

inline constexpr RegionLabel kExteriorLabel = 0;
inline constexpr RegionLabel kEmptyLabel = -1;  // a chamber enclosing none of the areas
inline constexpr RegionLabel kUnsetLabel = std::numeric_limits<int>::min();
inline constexpr FaceId kExteriorFace = 0;

// Undirected edge. The forward half-edge (from -> to) has `left` on its left.
struct Edge {
    VertexId from = 0;
    VertexId to = 0;
    double half_angle = 0.0;
    RegionLabel left = kUnsetLabel;
    RegionLabel right = kUnsetLabel;
};

// Assigns `region` to whichever interior face contains `at`.
struct LabelSeed {
    Point at;
    RegionLabel region = kUnsetLabel;
};

struct Face {
    FaceId id = 0;
    RegionLabel region = kExteriorLabel;
    // interior faces have exactly one counterclockwise cycle; the exterior
    // collects the clockwise outer cycles of every component
    std::vector<std::vector<HalfEdgeId>> cycles;
    int side_count = 0;

    const std::vector<HalfEdgeId>& boundary() const { return cycles.front(); }
};

class BubbleComplex {
public:
    BubbleComplex();
    // Traces faces from geometry. Face labels come from seeds when given,
    // otherwise from the edge labels bordering the face, which must agree.
    BubbleComplex(std::vector<Point> vertices, std::vector<Edge> edges,
                  const std::vector<LabelSeed>& seeds = {});

    const std::vector<Point>& vertices() const { return vertices_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<Face>& faces() const { return faces_; }
    const Point& vertex(VertexId v) const { return vertices_.at(v); }
    const Edge& edge(EdgeId e) const { return edges_.at(e); }
    const Face& face(FaceId f) const { return faces_.at(f); }
    int vertex_count() const { return static_cast<int>(vertices_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    int face_count() const { return static_cast<int>(faces_.size()); }
    int half_edge_count() const { return 2 * edge_count(); }

    static constexpr HalfEdgeId twin(HalfEdgeId h) { return h ^ 1; }
    static constexpr EdgeId edge_of(HalfEdgeId h) { return h >> 1; }
    static constexpr HalfEdgeId forward(EdgeId e) { return 2 * e; }

    VertexId origin(HalfEdgeId h) const;
    VertexId target(HalfEdgeId h) const { return origin(twin(h)); }
    double half_angle(HalfEdgeId h) const;
    ArcSpec arc(HalfEdgeId h) const;
    ArcSpec edge_arc(EdgeId e) const { return arc(forward(e)); }
    HalfEdgeId next(HalfEdgeId h) const { return next_.at(h); }
    FaceId face_of(HalfEdgeId h) const { return face_of_.at(h); }
    RegionLabel region_of(HalfEdgeId h) const { return faces_[face_of(h)].region; }
    FaceId left_face(EdgeId e) const { return face_of(forward(e)); }
    FaceId right_face(EdgeId e) const { return face_of(twin(forward(e))); }

    // outgoing half-edges sorted counterclockwise by departure tangent
    const std::vector<HalfEdgeId>& outgoing(VertexId v) const { return outgoing_.at(v); }
    int degree(VertexId v) const { return static_cast<int>(outgoing_.at(v).size()); }
    // degree two with a continuous tangent: an interior point of one side
    bool is_smooth(VertexId v) const;

    // maximal runs of boundary half-edges joined at smooth vertices
    std::vector<std::vector<HalfEdgeId>> sides(FaceId f) const;

    // interior labels in use (positive labels and the empty label), sorted
    std::vector<RegionLabel> labels() const;
    std::vector<FaceId> faces_with_label(RegionLabel r) const;
    // interior face containing p, or the exterior
    FaceId locate(Point p) const;

private:
    std::vector<Point> vertices_;
    std::vector<Edge> edges_;
    std::vector<Face> faces_;
    std::vector<std::vector<HalfEdgeId>> outgoing_;
    std::vector<HalfEdgeId> next_;
    std::vector<FaceId> face_of_;
};

// Mutable edge list used to stage edits before rebuilding a complex.
struct ComplexBuilder {
    std::vector<Point> vertices;
    std::vector<Edge> edges;
    std::vector<LabelSeed> seeds;

    ComplexBuilder() = default;
    explicit ComplexBuilder(const BubbleComplex& c);

    VertexId add_vertex(Point p);
    EdgeId add_edge(VertexId from, VertexId to, double half_angle, RegionLabel left = kUnsetLabel,
                    RegionLabel right = kUnsetLabel);
    // splits at an angular fraction; edge e keeps the first part
    VertexId split_edge(EdgeId e, double fraction);
    // drops the edges and any vertex left isolated; ids are compacted
    void remove_edges(std::vector<EdgeId> ids);
    void seed(Point at, RegionLabel r) { seeds.push_back({at, r}); }
    BubbleComplex build() const { return BubbleComplex(vertices, edges, seeds); }
};

// Signed area enclosed by a closed chain of half-edges (positive if counterclockwise).
double cycle_area(const BubbleComplex& c, const std::vector<HalfEdgeId>& cycle);
// Polyline approximation of a cycle, used for containment tests and rendering bounds.
std::vector<Point> sample_cycle(const BubbleComplex& c, const std::vector<HalfEdgeId>& cycle,
                                int per_edge = 32);
int winding_number(const std::vector<Point>& polygon, Point p);

double face_area(const BubbleComplex& c, FaceId f);
double region_area(const BubbleComplex& c, RegionLabel r);
std::map<RegionLabel, double> region_areas(const BubbleComplex& c);
double total_perimeter(const BubbleComplex& c);
double edge_length(const BubbleComplex& c, EdgeId e);
double diameter(const BubbleComplex& c);
int euler_characteristic(const BubbleComplex& c);

BubbleComplex rescale(const BubbleComplex& c, double factor);
BubbleComplex translate(const BubbleComplex& c, Point offset);
BubbleComplex rotate(const BubbleComplex& c, double angle);
BubbleComplex reflect(const BubbleComplex& c);  // mirror in the y axis
// renames region labels; labels missing from the map are kept
BubbleComplex relabel(const BubbleComplex& c, const std::map<RegionLabel, RegionLabel>& mapping);

// a circle of the given area, split into `pieces` equal arcs
BubbleComplex construct_circle(double area, RegionLabel r = 1, int pieces = 2, Point center = {});
BubbleComplex add_disjoint_circles(const BubbleComplex& c, const std::map<RegionLabel, double>& extras);

struct DualEdge {
    FaceId left;
    FaceId right;
    EdgeId edge;
};

struct DualGraph {
    int node_count = 0;
    std::vector<DualEdge> edges;
};

DualGraph dual_adjacency(const BubbleComplex& c);

}  // namespace bubble
