#pragma once

// Gluing of regions along isometric closed boundary hypersurfaces, gluing of
// solutions under trace + flux continuity, and the moduli-dimension check.

#include <optional>
#include <string>
#include <vector>

#include "ymhelix/dec.hpp"
#include "ymhelix/generators.hpp"

namespace ymhelix {

struct GluingMap {
    std::vector<SimplexId> sigma1;  // (n-1)-simplices in the boundary of U1
    std::vector<SimplexId> sigma2;  // their partners in the boundary of U2
    // Vertex bijection between the vertex sets of sigma1 and sigma2.
    std::vector<std::pair<VertexId, VertexId>> vertex_map;
    double isometry_tolerance = 1e-9;
};

struct GlueResult {
    Mesh mesh;
    std::vector<VertexId> vertex_map_1;  // U1 vertex -> glued vertex
    std::vector<VertexId> vertex_map_2;  // U2 vertex -> glued vertex
};

// Quotient of U1 u U2 identifying sigma1 with sigma2. Pass the same mesh
// twice for a self-identification (e.g. a box glued into a ring). The glued
// metric is inherited cell-locally from the sources; vertex coordinates are
// kept chart-wise and are not isometric across the seam.
GlueResult glue(const Mesh& u1, const Mesh& u2, const GluingMap& map);

struct TraceMismatch {
    SimplexId interface_simplex;  // glued edge or face id
    double mismatch;
};

struct GlueSolutionReport {
    bool accepted = false;
    double max_dirichlet_mismatch = 0.0;
    double max_neumann_mismatch = 0.0;
    double glued_interior_residual = 0.0;
    std::vector<TraceMismatch> offenders;  // nonempty on rejection
};

// Concatenate two solutions across the interface. Requires matching
// tangential traces on interface edges and matching stiffness fluxes
// (K1 n1 + K2 n2 = 0 on interface edges), both within `tol`.
std::pair<Cochain, GlueSolutionReport> glue_solutions(
    const Mesh& u1, const Cochain& eta1, const Mesh& u2, const Cochain& eta2,
    const GluingMap& map, const GlueResult& glued, double tol = 1e-9);

struct GluingDimensionReport {
    long matched_pair_dim = 0;   // dim of trace+flux matched linearized pairs
    long pair_gauge_dim = 0;     // interior gauges of the pieces + interface gauge
    long lhs = 0;                // matched pairs modulo gauge
    long glued_solution_dim = 0; // dim of linearized solutions on the glued region
    long glued_gauge_dim = 0;    // interior gauge on the glued region
    long rhs = 0;                // glued solutions modulo gauge
    int glued_b1 = 0;
    bool equal = false;
};

// Both sides of the gluing theorem, computed independently by rank
// computations on the pieces and on the glued complex.
GluingDimensionReport gluing_dimension_check(const Mesh& u1, const Mesh& u2,
                                             const GluingMap& map);

// Split a mesh along a cell bipartition (cells with in_minus true go to the
// first piece); returns the two pieces, the gluing map that undoes the
// split, and the vertex correspondences piece -> original.
struct SplitResult {
    Mesh u1, u2;
    GluingMap map;
    std::vector<VertexId> vertex_to_parent_1, vertex_to_parent_2;
    std::vector<SimplexId> cell_to_parent_1, cell_to_parent_2;
};
SplitResult split_along(const Mesh& mesh, const std::vector<std::uint8_t>& in_minus);

// Flat 3-torus: Kuhn triangulation of the periodic cube [0,L)^3 with `res`
// segments per axis (res >= 3). Metric data is built cell-locally from the
// unwrapped geometry, so the flat torus metric is exact.
Mesh make_periodic_box3(int res, double L);

// Gluing map between two axis-aligned box walls related by translation,
// located by coordinates. `axis`/`value` select the wall x_axis == value.
GluingMap make_translation_gluing(const Mesh& u1, int axis1, double value1,
                                  const Mesh& u2, int axis2, double value2);

}  // namespace ymhelix
