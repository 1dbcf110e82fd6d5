#pragma once

// Discrete exterior calculus on a simplicial complex with diagonal
// (barycentric dual) Hodge star.
//
//   d        coboundary, the transpose of the incidence matrix
//   delta    codifferential M_{k-1}^{-1} d^T M_k, the exact adjoint of d
//            in the weighted inner products
//   inner    <a,b> = sum_s a(s) b(s) w_k(s)
//   K        stiffness d^T M_2 d on 1-cochains, with per-cell pieces

#include <vector>

#include "ymhelix/kernels.hpp"
#include "ymhelix/metric.hpp"
#include "ymhelix/simplicial_complex.hpp"

namespace ymhelix {

struct Cochain {
    const SimplicialComplex* complex = nullptr;
    int degree = 0;
    std::vector<double> values;

    Cochain() = default;
    Cochain(const SimplicialComplex& cx, int k)
        : complex(&cx), degree(k), values(cx.count(k), 0.0) {}
    Cochain(const SimplicialComplex& cx, int k, std::vector<double> v)
        : complex(&cx), degree(k), values(std::move(v)) {}

    double& operator[](SimplexId s) { return values[s]; }
    double operator[](SimplexId s) const { return values[s]; }
    std::size_t size() const { return values.size(); }

    Cochain& operator+=(const Cochain& o);
    Cochain& operator-=(const Cochain& o);
    Cochain& operator*=(double a);
    friend Cochain operator+(Cochain a, const Cochain& b) { return a += b; }
    friend Cochain operator-(Cochain a, const Cochain& b) { return a -= b; }
    friend Cochain operator*(double a, Cochain c) { return c *= a; }

    double max_abs() const;
};

// Coboundary (d alpha)(s) = sum of signed face values.
Cochain d(const Cochain& alpha);

// Codifferential; adjoint of d: <d a, b> = <a, delta b> exactly.
Cochain delta(const Cochain& beta, const MetricData& metric);

// Weighted L2 inner product and norm.
double inner(const Cochain& a, const Cochain& b, const MetricData& metric);
double norm(const Cochain& a, const MetricData& metric);

// Evaluate a chain against a cochain of the same degree.
double pair_chain(const Cochain& a, const Chain& c);

// Simplicial cup product of a 1-cochain with a 2-cochain on an oriented
// 3-complex, symmetrized over the front/back decompositions:
//   (a ~ b)(v0..v3) = 1/2 [ a(v0 v1) b(v1 v2 v3) + b(v0 v1 v2) a(v2 v3) ]
// using the global (sorted) vertex order of each tetrahedron.
Cochain cup(const Cochain& alpha, const Cochain& beta);

// Integral of an n-cochain against the fundamental class (cell orientation
// signs from the embedding).
double integrate(const Cochain& top);

// Total helicity: integral of alpha ~ d(alpha) over a closed 3-complex.
double helicity(const Cochain& alpha);

// Stiffness operator K = d^T M_2 d on 1-cochains, kept per cell so one-sided
// sums over cell sets are available.
class StiffnessOperator {
  public:
    StiffnessOperator(const SimplicialComplex& cx, const MetricData& metric);

    const kernels::CsrMatrix& matrix() const { return K_; }
    const SimplicialComplex& complex() const { return *cx_; }

    // (K v) on all edges.
    std::vector<double> apply(const Cochain& v) const;

    // (K_c v)(e) for one cell: sum over the 2-faces of c containing e.
    double cell_apply_edge(SimplexId c, SimplexId e, const Cochain& v) const;

    // <d w, d v>_c = w^T K_c v for one cell.
    double cell_energy(SimplexId c, const Cochain& w, const Cochain& v) const;

    // Per-cell 2-face weight |*f ^ c| / |f|.
    double cell_face_weight(SimplexId c, int local_face) const {
        return face_weight_[static_cast<std::size_t>(c) * nfaces_local_ + local_face];
    }

    // Local 2-faces and 1-edges of a cell (lexicographic order).
    std::span<const SimplexId> cell_faces(SimplexId c) const;
    std::span<const SimplexId> cell_edges(SimplexId c) const;

  private:
    const SimplicialComplex* cx_;
    const MetricData* metric_;
    kernels::CsrMatrix K_;
    std::size_t nfaces_local_ = 0, nedges_local_ = 0;
    std::vector<double> face_weight_;       // [c * nfaces_local + lf]
    std::vector<SimplexId> cell_faces_;     // [c * nfaces_local + lf]
    std::vector<SimplexId> cell_edges_;     // [c * nedges_local + le]
};

// d restricted to a sub-block as a CSR matrix: rows = degree k+1 simplices
// (optionally a subset), cols = degree k simplices (optionally a subset).
kernels::CsrMatrix coboundary_matrix(const SimplicialComplex& cx, int k);

}  // namespace ymhelix
