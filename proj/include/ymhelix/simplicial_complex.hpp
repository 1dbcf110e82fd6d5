#pragma once

// Oriented simplicial complexes with boundary subcomplex.
//
// Simplices of every degree are stored as sorted vertex tuples in
// lexicographic order; that order is the canonical index used by cochains,
// operators and file formats. The boundary operator uses the standard
// alternating-face signs relative to the sorted tuples, so dd = 0 holds in
// integer arithmetic. Top cells additionally carry a geometric orientation
// sign relative to the sorted tuple (sign of the embedding determinant),
// which is what integration of n-cochains uses.

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ymhelix {

using VertexId = std::int32_t;
using SimplexId = std::int32_t;

struct BoundaryEntry {
    SimplexId face;   // index of the (k-1)-face
    std::int8_t sign; // (-1)^i for dropped vertex position i
};

// Integer chain in a fixed degree: coefficient per simplex, sparse.
struct Chain {
    int degree = 0;
    std::vector<SimplexId> simplices;
    std::vector<std::int64_t> coeffs;
};

class SimplicialComplex {
  public:
    // `cells`: each entry lists the n+1 vertex ids of a top cell, any order.
    // `cell_orientations`: optional per-cell sign relative to the sorted
    // tuple; +1 everywhere if empty.
    SimplicialComplex(int dimension, std::size_t vertex_count,
                      std::vector<std::vector<VertexId>> cells,
                      std::vector<std::int8_t> cell_orientations = {});

    int dimension() const { return dim_; }
    std::size_t vertex_count() const { return nverts_; }
    std::size_t count(int k) const { return simplices_[k].size(); }

    // Sorted vertex tuple of simplex (k, s).
    std::span<const VertexId> vertices(int k, SimplexId s) const;

    // Lookup by sorted tuple; -1 if absent.
    SimplexId find(int k, std::span<const VertexId> sorted_tuple) const;

    // Faces with alternating signs (empty for k = 0).
    std::span<const BoundaryEntry> faces(int k, SimplexId s) const;

    // Cofaces in degree k+1.
    std::span<const SimplexId> cofaces(int k, SimplexId s) const;

    // All degree-j subsimplices of the degree-k simplex s (j <= k), in
    // lexicographic order of their tuples.
    std::vector<SimplexId> subsimplices(int k, SimplexId s, int j) const;

    bool is_boundary(int k, SimplexId s) const { return boundary_flag_[k][s] != 0; }
    std::size_t boundary_count(int k) const;
    // Indices of interior (non-boundary) simplices of degree k.
    std::vector<SimplexId> interior(int k) const;
    // Indices of boundary simplices of degree k.
    std::vector<SimplexId> boundary(int k) const;

    std::int8_t cell_orientation(SimplexId c) const { return cell_orient_[c]; }

    // Sign of the (n-1)-face f inside cell c, or 0 if f is not a face of c.
    int incidence_sign(int k, SimplexId s, SimplexId face) const;

    // Connected components of the vertex graph; returns component id per
    // vertex and the number of components.
    std::pair<std::vector<int>, int> vertex_components() const;

    // The boundary (n-1)-subcomplex as a standalone complex, plus the maps
    // from its simplices back to this complex (per degree).
    struct BoundaryComplex {
        SimplicialComplex complex;
        std::vector<VertexId> vertex_to_parent;            // boundary vtx -> parent vtx
        std::vector<std::vector<SimplexId>> simplex_to_parent; // per degree
    };
    BoundaryComplex boundary_complex() const;

    // Structural invariants (dd = 0, coface counts, flag closure); throws on
    // violation. Meant for tests and post-construction audits.
    void check_invariants() const;

  private:
    void build_skeleton(const std::vector<std::vector<VertexId>>& cells);
    void build_boundary_flags();

    int dim_;
    std::size_t nverts_;
    // simplices_[k]: flattened tuples, (k+1) ids per simplex, lexicographic.
    std::vector<std::vector<VertexId>> simplices_;
    std::vector<std::vector<BoundaryEntry>> face_lists_;   // per degree, flattened
    std::vector<std::vector<std::int64_t>> face_offsets_;
    std::vector<std::vector<SimplexId>> coface_lists_;
    std::vector<std::vector<std::int64_t>> coface_offsets_;
    std::vector<std::vector<std::uint8_t>> boundary_flag_;
    std::vector<std::int8_t> cell_orient_;
};

}  // namespace ymhelix
