#pragma once

// Discrete abelian Yang-Mills machinery on a fixed mesh: the interior
// equations (K phi)(e) = 0 with Dirichlet boundary data, gauge
// transformations, Lorentz (Coulomb) gauge fixing, the Hodge-Morrey-
// Friedrichs splitting, harmonic field spaces, and the boundary-conditions
// map of solutions modulo gauge.

#include <memory>
#include <optional>
#include <vector>

#include "ymhelix/dec.hpp"
#include "ymhelix/generators.hpp"
#include "ymhelix/solver.hpp"

namespace ymhelix {

// Affine point eta = eta0 + phi of the discrete solution space.
struct Connection {
    Cochain eta0;
    Cochain phi;

    Cochain total() const {
        Cochain t = eta0;
        t += phi;
        return t;
    }
};

Connection make_connection(const SimplicialComplex& cx, Cochain phi);

// Vertex gauge function; acts by eta -> eta + df. Interior transformations
// vanish on every boundary vertex (the discrete G_U; free ones model G^_U).
struct GaugeTransformation {
    Cochain f;  // degree 0
    bool is_interior(const SimplicialComplex& cx, double tol = 0.0) const;
};

Connection apply_gauge(const Connection& c, const GaugeTransformation& g);

// The value of the radial evolutionary field along a solution: the
// connection's own cochain.
Cochain radial_variation(const Connection& c);

struct SolutionCheck {
    bool ok = false;
    double residual = 0.0;  // max |(K eta)(e)| over interior edges
};

struct BoundaryData {
    std::vector<double> dirichlet_raw;      // trace on boundary edges
    std::vector<double> dirichlet_reduced;  // trace modulo d of boundary functions
    std::vector<double> neumann;            // *d eta flux per boundary (n-1)-simplex
};

struct HmfDecomposition {
    Cochain exact_dirichlet;   // d of a vertex function vanishing on dU
    Cochain harmonic_neumann;  // projection onto H1_N
    Cochain harmonic_exact;    // d of a harmonic extension
    Cochain coexact_neumann;   // remainder, verified coexact
    double reconstruction_error = 0.0;
    double max_pairwise_orthogonality = 0.0;  // relative
    double coexactness_residual = 0.0;        // |delta r| + |<r, H1_N>|
};

struct ModuliReport {
    long solution_dim_fixed_dirichlet = 0;  // interior gauge + relative harmonic
    long interior_gauge_dim = 0;
    long dim_h1_neumann = 0;
    long dim_h1_dirichlet = 0;
    long domain_dim = 0;  // boundary-data sector + fiber sector
    long rank = 0;
    long kernel_dim = 0;
};

struct BoundaryMapResult {
    std::vector<std::vector<double>> matrix;  // column per domain basis vector
    std::vector<Cochain> domain_basis;
    std::vector<Cochain> kernel_basis;
    ModuliReport report;
};

struct GaugeVerdict {
    bool equivalent = false;        // eta' - eta = df with f = 0 on dU
    bool free_exact = false;        // eta' - eta = df for some vertex function
    Cochain witness;                // the recovered f (interior if equivalent)
    double interior_residual = 0.0; // relative
    double free_residual = 0.0;
};

enum class GaugeFlavor { Dirichlet, Neumann };

class YmOps {
  public:
    explicit YmOps(const Mesh& mesh);

    const Mesh& mesh() const { return *mesh_; }
    const StiffnessOperator& stiffness() const { return K_; }
    const std::vector<SimplexId>& interior_edges() const { return interior_edges_; }
    const std::vector<SimplexId>& boundary_edges() const { return boundary_edges_; }

    // Interior Yang-Mills equations with the given trace on boundary edges
    // (ordered like boundary_edges()). Returns the interior-Coulomb
    // representative: delta phi = 0 on interior vertices, trace preserved.
    std::pair<Connection, SolveReport> solve_ym(
        const std::vector<double>& dirichlet, bool report_kernel = false,
        double tolerance = 1e-13) const;

    SolutionCheck is_solution(const Connection& c, double tol = 1e-10) const;
    SolutionCheck is_linearized_solution(const Cochain& v, double tol = 1e-10) const;

    // Poisson gauge fix: psi solves the vertex Laplace problem for delta phi;
    // Dirichlet flavor zeroes psi on the boundary (trace preserved, delta = 0
    // at interior vertices), Neumann flavor solves the unconstrained
    // singular problem (delta = 0 at every vertex, the discrete no-normal-
    // component condition). Returns (phi - d psi, psi).
    std::pair<Cochain, Cochain> lorentz_gauge_fix(const Cochain& phi,
                                                  GaugeFlavor flavor) const;

    HmfDecomposition hmf_decompose(const Cochain& alpha) const;

    // Orthonormal basis of H1_N (absolute) or H1_D (relative) harmonic
    // fields. Built from the mesh's exact integer period cochains when
    // available (Coulomb-projected, so closedness is exact), otherwise from
    // the dense near-kernel; either way the dimension is cross-checked
    // against the dense nullspace count and the Betti number.
    std::vector<Cochain> harmonic_basis(GaugeFlavor flavor) const;

    BoundaryData boundary_data(const Cochain& eta) const;

    BoundaryMapResult boundary_map() const;

    GaugeVerdict gauge_equivalent(const Connection& a, const Connection& b,
                                  double tol = 1e-8) const;

    // dim ker of the 1-form Laplacian quadratic form (absolute or relative),
    // via the dense eigensolver with the spectral-gap guard.
    long harmonic_nullity(GaugeFlavor flavor) const;

    const kernels::CsrMatrix& vertex_laplacian() const { return L0_; }
    Cochain d0_adjoint_m1(const Cochain& phi) const;  // D0^T M1 phi as 0-cochain

    // Cached Betti numbers (rational homology is exact but not cheap).
    const std::vector<int>& betti(bool relative) const;

  private:
    std::vector<double> solve_vertex_poisson(const std::vector<double>& rhs,
                                             bool dirichlet_bc,
                                             double tol = 1e-13) const;
    kernels::CsrMatrix one_form_quadratic_form(bool relative,
                                               std::vector<SimplexId>& edges) const;
    std::vector<Cochain> harmonic_eigenbasis(GaugeFlavor flavor) const;

    const Mesh* mesh_;
    StiffnessOperator K_;
    kernels::CsrMatrix L0_;
    std::vector<SimplexId> interior_edges_, boundary_edges_;
    std::vector<VertexId> interior_verts_, boundary_verts_;

    mutable std::optional<std::vector<int>> betti_abs_, betti_rel_;
    mutable std::optional<std::vector<Cochain>> harm_neumann_, harm_dirichlet_;

    // Boundary complex with its own metric, for the trace reduction.
    struct BoundaryCtx {
        SimplicialComplex::BoundaryComplex bc;
        std::shared_ptr<MetricData> metric;
        kernels::CsrMatrix laplacian;
        std::vector<SimplexId> edge_to_parent;  // boundary-complex edge -> parent edge
    };
    std::shared_ptr<BoundaryCtx> bctx_;
};

}  // namespace ymhelix
