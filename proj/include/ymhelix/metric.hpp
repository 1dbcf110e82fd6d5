#pragma once

// Piecewise-flat metric data: vertex coordinates, unsigned primal volumes,
// and barycentric dual volumes. Dual volumes are stored as per-cell pieces
// (the flag-sum of each dual cell restricted to one top cell), because the
// per-cell split is what one-sided flux sums and mesh gluing need; the
// global dual volume is their sum.

#include <vector>

#include "ymhelix/simplicial_complex.hpp"

namespace ymhelix {

class MetricData {
  public:
    MetricData() = default;

    // Compute from embedding coordinates (row-major, embed_dim per vertex).
    MetricData(const SimplicialComplex& complex, std::vector<double> coords,
               int embed_dim);

    int embed_dim() const { return embed_dim_; }
    std::span<const double> coord(VertexId v) const {
        return {coords_.data() + static_cast<std::size_t>(v) * embed_dim_,
                static_cast<std::size_t>(embed_dim_)};
    }
    const std::vector<double>& coords_flat() const { return coords_; }

    double volume(int k, SimplexId s) const { return volumes_[k][s]; }
    double dual_volume(int k, SimplexId s) const { return dual_volumes_[k][s]; }
    // Hodge weight |*s| / |s|.
    double weight(int k, SimplexId s) const {
        return dual_volumes_[k][s] / volumes_[k][s];
    }
    const std::vector<double>& weights(int k) const { return weights_[k]; }

    // Piece of the dual volume of subsimplex `local` (lexicographic index
    // into cell_subsimplices(k, c)) contributed by cell c.
    double cell_dual_piece(int k, SimplexId c, int local) const;
    std::span<const SimplexId> cell_subsimplices(int k, SimplexId c) const;

    double total_volume() const;

    // Assemble from precomputed parts (used by mesh gluing, where embedding
    // coordinates are chart-wise and only the cell-local geometry is
    // trusted).
    static MetricData from_parts(const SimplicialComplex& complex,
                                 std::vector<double> coords, int embed_dim,
                                 std::vector<std::vector<double>> volumes,
                                 std::vector<std::vector<double>> cell_pieces);

    void check_invariants(const SimplicialComplex& complex) const;

  private:
    void finalize(const SimplicialComplex& complex);

    int embed_dim_ = 0;
    std::vector<double> coords_;
    std::vector<std::vector<double>> volumes_;       // [k][simplex]
    std::vector<std::vector<double>> dual_volumes_;  // [k][simplex]
    std::vector<std::vector<double>> weights_;       // [k][simplex]
    // [k][c * n_subs_k + local] dual piece values; subs ids alongside.
    std::vector<std::vector<double>> cell_pieces_;
    std::vector<std::vector<SimplexId>> cell_subs_;
    std::vector<std::size_t> n_subs_;  // per degree: C(n+1, k+1)
};

// Unsigned k-volume of the simplex with the given vertex coordinates.
double simplex_volume(const std::vector<std::vector<double>>& pts);

// Sign of the determinant of the edge matrix (embed_dim == k only).
int orientation_sign(const std::vector<std::vector<double>>& pts);

// Cell-local geometry: for one n-simplex given by its n+1 vertex points (in
// the order matching the sorted vertex tuple), the volumes and barycentric
// dual pieces of every vertex subset, indexed per degree in lexicographic
// subset order. Gluing rebuilds metric data from this, cell by cell.
struct CellGeometry {
    std::vector<std::vector<double>> sub_volumes;  // [k][local]
    std::vector<std::vector<double>> dual_pieces;  // [k][local]
};
CellGeometry compute_cell_geometry(const std::vector<std::vector<double>>& pts);

}  // namespace ymhelix
