#include "ymhelix/ym.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include <Eigen/Dense>

namespace ymhelix {

Connection make_connection(const SimplicialComplex& cx, Cochain phi) {
    Connection c;
    c.eta0 = Cochain(cx, 1);
    c.phi = std::move(phi);
    return c;
}

bool GaugeTransformation::is_interior(const SimplicialComplex& cx, double tol) const {
    for (VertexId v : cx.boundary(0))
        if (std::abs(f[v]) > tol) return false;
    return true;
}

Connection apply_gauge(const Connection& c, const GaugeTransformation& g) {
    Connection out = c;
    out.phi += d(g.f);
    return out;
}

Cochain radial_variation(const Connection& c) { return c.total(); }

YmOps::YmOps(const Mesh& mesh) : mesh_(&mesh), K_(*mesh.complex, *mesh.metric) {
    const auto& cx = *mesh.complex;
    interior_edges_ = cx.interior(1);
    boundary_edges_ = cx.boundary(1);
    interior_verts_ = cx.interior(0);
    boundary_verts_ = cx.boundary(0);

    // Vertex Laplacian L0 = D0^T M1 D0: the weighted graph Laplacian.
    {
        std::vector<std::int64_t> is, js;
        std::vector<double> vs;
        for (std::size_t e = 0; e < cx.count(1); ++e) {
            auto tv = cx.vertices(1, static_cast<SimplexId>(e));
            double w = mesh.metric->weight(1, static_cast<SimplexId>(e));
            is.insert(is.end(), {tv[0], tv[0], tv[1], tv[1]});
            js.insert(js.end(), {tv[0], tv[1], tv[0], tv[1]});
            vs.insert(vs.end(), {w, -w, -w, w});
        }
        L0_ = kernels::csr_from_triplets(cx.vertex_count(), cx.vertex_count(),
                                         std::move(is), std::move(js), std::move(vs));
    }

    if (!boundary_edges_.empty()) {
        auto ctx = std::make_shared<BoundaryCtx>(BoundaryCtx{
            cx.boundary_complex(), nullptr, {}, {}});
        const auto& bcx = ctx->bc.complex;
        const int ed = mesh.metric->embed_dim();
        std::vector<double> coords(bcx.vertex_count() * ed);
        for (std::size_t v = 0; v < bcx.vertex_count(); ++v) {
            auto c = mesh.metric->coord(ctx->bc.vertex_to_parent[v]);
            std::copy(c.begin(), c.end(), coords.begin() + v * ed);
        }
        ctx->metric = std::make_shared<MetricData>(bcx, std::move(coords), ed);
        ctx->edge_to_parent = ctx->bc.simplex_to_parent[1];
        std::vector<std::int64_t> is, js;
        std::vector<double> vs;
        for (std::size_t e = 0; e < bcx.count(1); ++e) {
            auto tv = bcx.vertices(1, static_cast<SimplexId>(e));
            double w = ctx->metric->weight(1, static_cast<SimplexId>(e));
            is.insert(is.end(), {tv[0], tv[0], tv[1], tv[1]});
            js.insert(js.end(), {tv[0], tv[1], tv[0], tv[1]});
            vs.insert(vs.end(), {w, -w, -w, w});
        }
        ctx->laplacian = kernels::csr_from_triplets(
            bcx.vertex_count(), bcx.vertex_count(), std::move(is), std::move(js),
            std::move(vs));
        bctx_ = std::move(ctx);
    }
}

Cochain YmOps::d0_adjoint_m1(const Cochain& phi) const {
    const auto& cx = *mesh_->complex;
    Cochain out(cx, 0);
    for (std::size_t e = 0; e < cx.count(1); ++e) {
        auto tv = cx.vertices(1, static_cast<SimplexId>(e));
        double w = mesh_->metric->weight(1, static_cast<SimplexId>(e)) *
                   phi[static_cast<SimplexId>(e)];
        out[tv[1]] += w;
        out[tv[0]] -= w;
    }
    return out;
}

std::vector<double> YmOps::solve_vertex_poisson(const std::vector<double>& rhs,
                                                bool dirichlet_bc, double tol) const {
    Constraints cons;
    if (dirichlet_bc) {
        for (VertexId v : boundary_verts_) {
            cons.indices.push_back(v);
            cons.values.push_back(0.0);
        }
    }
    SolveOptions opts;
    opts.tolerance = tol;
    auto [x, rep] = solve_spsd(L0_, rhs, cons, opts);
    return x;
}

std::pair<Connection, SolveReport> YmOps::solve_ym(
    const std::vector<double>& dirichlet, bool report_kernel,
    double tolerance) const {
    if (dirichlet.size() != boundary_edges_.size())
        throw std::invalid_argument("solve_ym: dirichlet data must cover boundary edges");
    const auto& cx = *mesh_->complex;

    Constraints cons;
    cons.indices.assign(boundary_edges_.begin(), boundary_edges_.end());
    cons.values = dirichlet;
    SolveOptions opts;
    opts.tolerance = tolerance;
    std::vector<double> zero(cx.count(1), 0.0);
    auto [phi_raw, rep] = solve_spsd(K_.matrix(), zero, cons, opts);

    // Coulomb representative: remove the interior-exact part.
    auto [phi, psi] = lorentz_gauge_fix(Cochain(cx, 1, std::move(phi_raw)),
                                        GaugeFlavor::Dirichlet);
    (void)psi;
    if (report_kernel) rep.kernel_dimension = betti(true)[1];

    return {make_connection(cx, std::move(phi)), rep};
}

SolutionCheck YmOps::is_solution(const Connection& c, double tol) const {
    return is_linearized_solution(c.total(), tol);
}

SolutionCheck YmOps::is_linearized_solution(const Cochain& v, double tol) const {
    auto kv = K_.apply(v);
    SolutionCheck out;
    for (SimplexId e : interior_edges_)
        out.residual = std::max(out.residual, std::abs(kv[e]));
    out.ok = out.residual <= tol;
    return out;
}

std::pair<Cochain, Cochain> YmOps::lorentz_gauge_fix(const Cochain& phi,
                                                     GaugeFlavor flavor) const {
    const auto& cx = *mesh_->complex;
    Cochain rhs = d0_adjoint_m1(phi);
    if (flavor == GaugeFlavor::Neumann) {
        // Compatibility: component sums of the right-hand side must vanish
        // (they do up to roundoff: 1^T D0^T = 0).
        auto [comp, ncomp] = cx.vertex_components();
        std::vector<double> sums(ncomp, 0.0), scale(ncomp, 0.0);
        for (std::size_t v = 0; v < cx.vertex_count(); ++v) {
            sums[comp[v]] += rhs[static_cast<VertexId>(v)];
            scale[comp[v]] += std::abs(rhs[static_cast<VertexId>(v)]);
        }
        for (int c = 0; c < ncomp; ++c)
            if (std::abs(sums[c]) > 1e-8 * (1 + scale[c]))
                throw SolverError("lorentz_gauge_fix: Neumann data not mean-zero",
                                  SolveReport{});
    }
    auto psi = solve_vertex_poisson(rhs.values, flavor == GaugeFlavor::Dirichlet);
    Cochain psic(cx, 0, std::move(psi));
    Cochain fixed = phi;
    fixed -= d(psic);
    return {std::move(fixed), std::move(psic)};
}

const std::vector<int>& YmOps::betti(bool relative) const {
    auto& cache = relative ? betti_rel_ : betti_abs_;
    if (!cache) cache = betti_numbers(*mesh_->complex, relative);
    return *cache;
}

std::vector<Cochain> YmOps::harmonic_basis(GaugeFlavor flavor) const {
    const auto& metric = *mesh_->metric;
    const bool neumann = flavor == GaugeFlavor::Neumann;
    auto& cache = neumann ? harm_neumann_ : harm_dirichlet_;
    if (cache) return *cache;

    const auto& hints =
        neumann ? mesh_->h1_period_cochains : mesh_->h1_relative_period_cochains;
    const int expected = betti(!neumann)[1];

    std::vector<Cochain> basis;
    if (expected == 0) {
        cache = basis;
        return basis;
    }

    if (static_cast<int>(hints.size()) == expected) {
        for (const auto& z : hints) {
            Cochain zc(cx, 1, z);
            auto [h, psi] = lorentz_gauge_fix(
                zc, neumann ? GaugeFlavor::Neumann : GaugeFlavor::Dirichlet);
            (void)psi;
            basis.push_back(std::move(h));
        }
    } else {
        // No geometric generators recorded: fall back to the dense
        // near-kernel of the 1-form quadratic form.
        basis = harmonic_eigenbasis(flavor);
    }
    if (static_cast<int>(basis.size()) != expected)
        throw SolverError("harmonic_basis: generator count does not match Betti number",
                          SolveReport{});

    // Gram-Schmidt in the M1 inner product.
    std::vector<Cochain> ortho;
    for (auto& h : basis) {
        Cochain v = h;
        for (const auto& u : ortho) {
            double c = inner(v, u, metric);
            Cochain cu = u;
            cu *= c;
            v -= cu;
        }
        double nv = norm(v, metric);
        if (nv < 1e-12)
            throw SolverError("harmonic_basis: degenerate generator set", SolveReport{});
        v *= 1.0 / nv;
        ortho.push_back(std::move(v));
    }
    cache = ortho;
    return ortho;
}

HmfDecomposition YmOps::hmf_decompose(const Cochain& alpha) const {
    const auto& cx = *mesh_->complex;
    const auto& metric = *mesh_->metric;
    HmfDecomposition out;

    Cochain rhs = d0_adjoint_m1(alpha);
    // (i) projection onto d of Dirichlet-zero vertex functions.
    Cochain fD(cx, 0, solve_vertex_poisson(rhs.values, true));
    out.exact_dirichlet = d(fD);
    // exact part with free boundary values; the complement inside d C^0 is
    // the harmonic-extension (exact harmonic) component.
    Cochain fN(cx, 0, solve_vertex_poisson(rhs.values, false));
    out.harmonic_exact = d(fN);
    out.harmonic_exact -= out.exact_dirichlet;
    // (ii) projection onto the harmonic-Neumann space.
    out.harmonic_neumann = Cochain(cx, 1);
    for (const auto& h : harmonic_basis(GaugeFlavor::Neumann)) {
        double c = inner(alpha, h, metric);
        Cochain ch = h;
        ch *= c;
        out.harmonic_neumann += ch;
    }
    // (iv) remainder.
    out.coexact_neumann = alpha;
    out.coexact_neumann -= out.exact_dirichlet;
    out.coexact_neumann -= out.harmonic_exact;
    out.coexact_neumann -= out.harmonic_neumann;

    // Verification: reconstruction, pairwise orthogonality, coexactness.
    Cochain rec = out.exact_dirichlet;
    rec += out.harmonic_exact;
    rec += out.harmonic_neumann;
    rec += out.coexact_neumann;
    rec -= alpha;
    double na = norm(alpha, metric);
    out.reconstruction_error = norm(rec, metric) / (1 + na);

    const Cochain* parts[4] = {&out.exact_dirichlet, &out.harmonic_neumann,
                               &out.harmonic_exact, &out.coexact_neumann};
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            double ip = std::abs(inner(*parts[i], *parts[j], metric));
            double sc = norm(*parts[i], metric) * norm(*parts[j], metric);
            if (sc > 0)
                out.max_pairwise_orthogonality =
                    std::max(out.max_pairwise_orthogonality, ip / (sc + 1e-30));
        }

    Cochain dr = d0_adjoint_m1(out.coexact_neumann);
    double co = 0;
    for (double v : dr.values) co = std::max(co, std::abs(v));
    for (const auto& h : harmonic_basis(GaugeFlavor::Neumann))
        co = std::max(co, std::abs(inner(out.coexact_neumann, h, metric)));
    out.coexactness_residual = co / (1 + na);
    return out;
}

kernels::CsrMatrix YmOps::one_form_quadratic_form(
    bool relative, std::vector<SimplexId>& edges) const {
    const auto& cx = *mesh_->complex;
    const auto& metric = *mesh_->metric;

    std::vector<long> col_of(cx.count(1), -1);
    edges.clear();
    for (std::size_t e = 0; e < cx.count(1); ++e) {
        if (relative && cx.is_boundary(1, static_cast<SimplexId>(e))) continue;
        col_of[e] = static_cast<long>(edges.size());
        edges.push_back(static_cast<SimplexId>(e));
    }

    std::vector<std::int64_t> is, js;
    std::vector<double> vs;
    // ||d phi||^2: per-face M2 blocks restricted to the subspace.
    for (std::size_t f = 0; f < cx.count(2); ++f) {
        double w = metric.weight(2, static_cast<SimplexId>(f));
        auto fe = cx.faces(2, static_cast<SimplexId>(f));
        for (auto& a : fe)
            for (auto& b : fe) {
                if (col_of[a.face] < 0 || col_of[b.face] < 0) continue;
                is.push_back(col_of[a.face]);
                js.push_back(col_of[b.face]);
                vs.push_back(w * a.sign * b.sign);
            }
    }
    // ||delta phi||^2: rows at every vertex (absolute) or interior only.
    for (std::size_t v = 0; v < cx.vertex_count(); ++v) {
        if (relative && cx.is_boundary(0, static_cast<VertexId>(v))) continue;
        double w0 = metric.weight(0, static_cast<VertexId>(v));
        auto cf = cx.cofaces(0, static_cast<VertexId>(v));
        for (SimplexId e1 : cf)
            for (SimplexId e2 : cf) {
                if (col_of[e1] < 0 || col_of[e2] < 0) continue;
                auto t1 = cx.vertices(1, e1);
                auto t2 = cx.vertices(1, e2);
                int s1 = t1[1] == static_cast<VertexId>(v) ? 1 : -1;
                int s2 = t2[1] == static_cast<VertexId>(v) ? 1 : -1;
                is.push_back(col_of[e1]);
                js.push_back(col_of[e2]);
                vs.push_back(s1 * s2 * metric.weight(1, e1) * metric.weight(1, e2) / w0);
            }
    }
    return kernels::csr_from_triplets(edges.size(), edges.size(), std::move(is),
                                      std::move(js), std::move(vs));
}

long YmOps::harmonic_nullity(GaugeFlavor flavor) const {
    std::vector<SimplexId> edges;
    auto Q = one_form_quadratic_form(flavor == GaugeFlavor::Dirichlet, edges);
    std::vector<double> w1;
    for (SimplexId e : edges) w1.push_back(mesh_->metric->weight(1, e));
    return static_cast<long>(nullspace(Q, {}, &w1).size());
}

std::vector<Cochain> YmOps::harmonic_eigenbasis(GaugeFlavor flavor) const {
    const auto& cx = *mesh_->complex;
    std::vector<SimplexId> edges;
    auto Q = one_form_quadratic_form(flavor == GaugeFlavor::Dirichlet, edges);
    std::vector<double> w1;
    for (SimplexId e : edges) w1.push_back(mesh_->metric->weight(1, e));
    auto vecs = nullspace(Q, {}, &w1);

    std::vector<Cochain> out;
    for (auto& v : vecs) {
        Cochain c(cx, 1);
        for (std::size_t i = 0; i < edges.size(); ++i) c[edges[i]] = v[i];
        out.push_back(std::move(c));
    }
    return out;
}

BoundaryData YmOps::boundary_data(const Cochain& eta) const {
    const auto& cx = *mesh_->complex;
    const auto& metric = *mesh_->metric;
    const int n = cx.dimension();
    if (!bctx_) throw std::invalid_argument("boundary_data: closed complex");

    BoundaryData out;
    out.dirichlet_raw.reserve(boundary_edges_.size());
    for (SimplexId e : boundary_edges_) out.dirichlet_raw.push_back(eta[e]);

    // Reduce modulo d of boundary vertex functions, in the boundary Hodge
    // inner product: project out the image of d0 on the boundary complex.
    const auto& bcx = bctx_->bc.complex;
    std::vector<double> t(bcx.count(1));
    std::vector<long> parent_pos(cx.count(1), -1);
    for (std::size_t i = 0; i < boundary_edges_.size(); ++i)
        parent_pos[boundary_edges_[i]] = static_cast<long>(i);
    for (std::size_t e = 0; e < bcx.count(1); ++e) {
        SimplexId pe = bctx_->edge_to_parent[e];
        auto btv = bcx.vertices(1, static_cast<SimplexId>(e));
        auto ptv = cx.vertices(1, pe);
        // +1 when the boundary-complex sorted order matches the parent's.
        int s = bctx_->bc.vertex_to_parent[btv[0]] == ptv[0] ? 1 : -1;
        t[e] = s * eta[pe];
    }
    // rhs = (d0)^T M1 t on the boundary complex.
    std::vector<double> rhs(bcx.vertex_count(), 0.0);
    for (std::size_t e = 0; e < bcx.count(1); ++e) {
        auto tv = bcx.vertices(1, static_cast<SimplexId>(e));
        double w = bctx_->metric->weight(1, static_cast<SimplexId>(e)) * t[e];
        rhs[tv[1]] += w;
        rhs[tv[0]] -= w;
    }
    SolveOptions opts;
    opts.tolerance = 1e-13;
    auto [g, rep] = solve_spsd(bctx_->laplacian, rhs, {}, opts);
    (void)rep;
    out.dirichlet_reduced.assign(boundary_edges_.size(), 0.0);
    for (std::size_t e = 0; e < bcx.count(1); ++e) {
        auto tv = bcx.vertices(1, static_cast<SimplexId>(e));
        double red = t[e] - (g[tv[1]] - g[tv[0]]);
        SimplexId pe = bctx_->edge_to_parent[e];
        auto ptv = cx.vertices(1, pe);
        int s = bctx_->bc.vertex_to_parent[tv[0]] == ptv[0] ? 1 : -1;
        out.dirichlet_reduced[parent_pos[pe]] = s * red;
    }

    // Neumann trace: the *d eta flux through the dual edge crossing each
    // boundary (n-1)-simplex.
    Cochain de = d(eta);
    auto bfaces = cx.boundary(n - 1);
    out.neumann.reserve(bfaces.size());
    for (SimplexId f : bfaces) {
        if (n == 2) {
            SimplexId c = cx.cofaces(1, f)[0];
            out.neumann.push_back(metric.weight(2, c) * de[c]);
        } else if (n == 3) {
            out.neumann.push_back(metric.weight(2, f) * de[f]);
        } else {
            // One-sided sum of the 2-face fluxes inside the unique coface.
            SimplexId c = cx.cofaces(n - 1, f)[0];
            double acc = 0;
            auto cf = K_.cell_faces(c);
            for (std::size_t lf = 0; lf < cf.size(); ++lf) {
                if (cx.incidence_sign(n - 1, f, cf[lf]) == 0) continue;
                acc += K_.cell_face_weight(c, static_cast<int>(lf)) * de[cf[lf]];
            }
            out.neumann.push_back(acc);
        }
    }
    return out;
}

BoundaryMapResult YmOps::boundary_map() const {
    const auto& cx = *mesh_->complex;
    const auto& metric = *mesh_->metric;
    const int n = cx.dimension();

    BoundaryMapResult out;
    out.report.interior_gauge_dim = static_cast<long>(interior_verts_.size());
    out.report.dim_h1_neumann = betti(false)[1];
    out.report.dim_h1_dirichlet = betti(true)[1];
    out.report.solution_dim_fixed_dirichlet =
        out.report.interior_gauge_dim + out.report.dim_h1_dirichlet;

    // Fiber sector: exactly-closed, zero-trace relative generators.
    std::vector<Cochain> fiber = harmonic_basis(GaugeFlavor::Dirichlet);

    // Boundary-data sector: coclosed (everywhere) solutions from unit
    // Dirichlet data, rank-reduced.
    std::vector<Cochain> data_raw;
    for (std::size_t k = 0; k < boundary_edges_.size(); ++k) {
        std::vector<double> b(boundary_edges_.size(), 0.0);
        b[k] = 1.0;
        auto [conn, rep] = solve_ym(b);
        (void)rep;
        auto [cc, psi] = lorentz_gauge_fix(conn.phi, GaugeFlavor::Neumann);
        (void)psi;
        data_raw.push_back(std::move(cc));
    }
    // Gram rank reveal in the M1 inner product.
    const std::size_t m = data_raw.size();
    Eigen::MatrixXd G(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j)
            G(i, j) = G(j, i) = inner(data_raw[i], data_raw[j], metric);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(G);
    const double lmax = eig.eigenvalues().cwiseAbs().maxCoeff();
    std::vector<Cochain> data_basis;
    for (std::size_t i = 0; i < m; ++i) {
        double lam = eig.eigenvalues()[i];
        if (lam > 1e-10 * lmax) {
            Cochain v(cx, 1);
            for (std::size_t j = 0; j < m; ++j) {
                Cochain c = data_raw[j];
                c *= eig.eigenvectors()(j, i) / std::sqrt(lam);
                v += c;
            }
            data_basis.push_back(std::move(v));
        }
    }

    out.domain_basis = fiber;
    for (auto& v : data_basis) out.domain_basis.push_back(std::move(v));
    out.report.domain_dim = static_cast<long>(out.domain_basis.size());

    // Boundary data columns, weighted for the kernel computation.
    std::vector<double> wD(boundary_edges_.size());
    for (std::size_t i = 0; i < boundary_edges_.size(); ++i)
        wD[i] = metric.weight(1, boundary_edges_[i]);
    auto bfaces = cx.boundary(n - 1);
    std::vector<double> wN(bfaces.size());
    for (std::size_t i = 0; i < bfaces.size(); ++i)
        wN[i] = metric.volume(n - 1, bfaces[i]);

    const std::size_t rows = boundary_edges_.size() + bfaces.size();
    Eigen::MatrixXd R(rows, out.domain_basis.size());
    for (std::size_t c = 0; c < out.domain_basis.size(); ++c) {
        BoundaryData bd = boundary_data(out.domain_basis[c]);
        for (std::size_t i = 0; i < boundary_edges_.size(); ++i)
            R(i, c) = std::sqrt(wD[i]) * bd.dirichlet_reduced[i];
        for (std::size_t i = 0; i < bfaces.size(); ++i)
            R(boundary_edges_.size() + i, c) = std::sqrt(wN[i]) * bd.neumann[i];
        out.matrix.emplace_back(R.col(c).data(), R.col(c).data() + rows);
    }

    // Kernel of R via the dense near-kernel of R^T R.
    Eigen::MatrixXd RtR = R.transpose() * R;
    std::vector<std::int64_t> is, js;
    std::vector<double> vs;
    for (long i = 0; i < RtR.rows(); ++i)
        for (long j = 0; j < RtR.cols(); ++j)
            if (RtR(i, j) != 0) {
                is.push_back(i);
                js.push_back(j);
                vs.push_back(RtR(i, j));
            }
    auto Rtr = kernels::csr_from_triplets(out.domain_basis.size(),
                                          out.domain_basis.size(), std::move(is),
                                          std::move(js), std::move(vs));
    auto kern = nullspace(Rtr);
    out.report.kernel_dim = static_cast<long>(kern.size());
    out.report.rank = out.report.domain_dim - out.report.kernel_dim;
    for (auto& coeff : kern) {
        Cochain v(cx, 1);
        for (std::size_t j = 0; j < out.domain_basis.size(); ++j) {
            Cochain c = out.domain_basis[j];
            c *= coeff[j];
            v += c;
        }
        out.kernel_basis.push_back(std::move(v));
    }
    return out;
}

GaugeVerdict YmOps::gauge_equivalent(const Connection& a, const Connection& b,
                                     double tol) const {
    const auto& cx = *mesh_->complex;
    const auto& metric = *mesh_->metric;
    Cochain g = b.total();
    g -= a.total();
    const double ng = norm(g, metric);

    GaugeVerdict out;
    Cochain rhs = d0_adjoint_m1(g);

    // Free witness: unconstrained singular solve.
    Cochain f_free(cx, 0, solve_vertex_poisson(rhs.values, false));
    Cochain r_free = g;
    r_free -= d(f_free);
    out.free_residual = norm(r_free, metric) / (1 + ng);
    out.free_exact = out.free_residual < tol;

    if (!boundary_verts_.empty()) {
        Cochain f_int(cx, 0, solve_vertex_poisson(rhs.values, true));
        Cochain r_int = g;
        r_int -= d(f_int);
        out.interior_residual = norm(r_int, metric) / (1 + ng);
        out.equivalent = out.interior_residual < tol;
        out.witness = out.equivalent ? std::move(f_int) : std::move(f_free);
    } else {
        out.interior_residual = out.free_residual;
        out.equivalent = out.free_exact;
        out.witness = std::move(f_free);
    }
    return out;
}

}  // namespace ymhelix
