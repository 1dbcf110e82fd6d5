#pragma once

// Admissible hypersurfaces and the one-sided Green-identity flux pairing.
//
// A cut is stored as a face-jump cochain: an integer jump across each
// interface (n-1)-simplex, oriented from the lower-index to the higher-index
// coface. Cell bipartitions are the jumps of a 0/1 cell height; cuts with
// nonzero relative homology class (which no bipartition can realize) carry
// jumps whose local cell-fan potentials exist but do not glue globally.
//
// The pairing is
//
//   Flux_S(v; w) = - sum_e w(e) sum_{c > e} side_e(c) (K_c v)(e)
//
// where side_e is the fan potential of the jumps around edge e, normalized
// to zero on the lowest-indexed coface. For a bipartition this is exactly
// <dw, dv>_{S-} - sum_{e in E-} w(e) (K v)(e) with the lowest-index-coface
// tie rule for interface-touching edges, and it discretizes the interface
// integral of w ^ *dv.

#include <memory>
#include <string>
#include <vector>

#include "ymhelix/dec.hpp"
#include "ymhelix/generators.hpp"

namespace ymhelix {

class Hypersurface {
  public:
    // Bipartition cut: in_minus flags one n-cell side.
    static Hypersurface from_bipartition(const Mesh& mesh,
                                         std::vector<std::uint8_t> in_minus);

    // Generalized cut from explicit face jumps (+-1), oriented from the
    // lower-index to the higher-index coface.
    static Hypersurface from_jumps(const Mesh& mesh, std::vector<SimplexId> faces,
                                   std::vector<double> jumps);

    const SimplicialComplex& complex() const { return *cx_; }
    bool is_bipartition() const { return !in_minus_.empty(); }
    const std::vector<std::uint8_t>& cell_minus() const { return in_minus_; }
    const std::vector<std::uint8_t>& edge_minus() const { return edge_minus_; }
    const std::vector<SimplexId>& interface_faces() const { return faces_; }
    const std::vector<double>& jumps() const { return jumps_; }

    // Pairing of the cut against the mesh's relative period cochains when
    // present (all zero for bipartitions).
    const std::vector<double>& relative_class() const { return rel_class_; }

    // Support edges (edges of interface faces) with their nonzero fan sides.
    struct FanEntry {
        SimplexId edge;
        std::vector<std::pair<SimplexId, double>> cell_sides;
    };
    const std::vector<FanEntry>& fans() const { return fans_; }

  private:
    void build_fans(const Mesh& mesh);

    const SimplicialComplex* cx_ = nullptr;
    std::vector<std::uint8_t> in_minus_;   // empty for generalized cuts
    std::vector<std::uint8_t> edge_minus_; // bipartition edge rule (record)
    std::vector<SimplexId> faces_;
    std::vector<double> jumps_;
    std::vector<double> rel_class_;
    std::vector<FanEntry> fans_;
};

// Level-set cut: cells whose barycenter field value is below the level.
Hypersurface cut_from_level(const Mesh& mesh, const Cochain& vertex_field,
                            double level);

// Cut recorded by the mesh builder (nonzero relative class).
Hypersurface cut_from_generator(const Mesh& mesh, std::size_t index);

// One-sided Green-identity flux pairing; realizes the interface integral of
// i*(w ^ *dv). Exactly gauge invariant for interior gauge shifts of w when
// v solves the interior equations.
double flux_pairing(const StiffnessOperator& K, const Hypersurface& cut,
                    const Cochain& v, const Cochain& w);

// Reference implementation of the bipartition formula
// <dw,dv>_{S-} - sum_{E-} w (Kv), used as a test oracle.
double flux_pairing_bipartition_reference(const StiffnessOperator& K,
                                          const Hypersurface& cut,
                                          const Cochain& v, const Cochain& w);

}  // namespace ymhelix
