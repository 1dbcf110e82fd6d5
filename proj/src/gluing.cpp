#include "ymhelix/gluing.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "ymhelix/solver.hpp"

namespace ymhelix {

namespace {

// Transport sign of an edge under a vertex relabeling: +1 when the sorted
// order of the endpoints is preserved.
int edge_transport_sign(VertexId a, VertexId b, VertexId A, VertexId B) {
    return ((a < b) == (A < B)) ? 1 : -1;
}

void validate_map(const Mesh& u1, const Mesh& u2, const GluingMap& map) {
    const auto& cx1 = *u1.complex;
    const auto& cx2 = *u2.complex;
    const int n = cx1.dimension();
    if (cx2.dimension() != n) throw std::invalid_argument("glue: dimension mismatch");
    if (map.sigma1.size() != map.sigma2.size() || map.sigma1.empty())
        throw std::invalid_argument("glue: interface face lists mismatch");

    std::map<VertexId, VertexId> v12;
    for (auto& [a, b] : map.vertex_map)
        if (!v12.emplace(a, b).second)
            throw std::invalid_argument("glue: duplicate vertex in map");

    std::set<SimplexId> s1(map.sigma1.begin(), map.sigma1.end());
    std::set<SimplexId> s2(map.sigma2.begin(), map.sigma2.end());
    const bool self = u1.complex.get() == u2.complex.get();
    if (self) {
        for (SimplexId f : map.sigma1)
            if (s2.count(f))
                throw std::invalid_argument("glue: self-gluing interfaces overlap");
        for (auto& [a, b] : map.vertex_map)
            if (v12.count(b))
                throw std::invalid_argument("glue: chained vertex identification");
    }

    // Interfaces lie in the boundary; each face maps to its partner.
    for (std::size_t i = 0; i < map.sigma1.size(); ++i) {
        if (!cx1.is_boundary(n - 1, map.sigma1[i]) ||
            !cx2.is_boundary(n - 1, map.sigma2[i]))
            throw std::invalid_argument("glue: interface face not on the boundary");
        auto tv = cx1.vertices(n - 1, map.sigma1[i]);
        std::vector<VertexId> mapped;
        for (VertexId v : tv) {
            auto it = v12.find(v);
            if (it == v12.end())
                throw std::invalid_argument("glue: interface vertex missing from map");
            mapped.push_back(it->second);
        }
        if (cx2.find(n - 1, mapped) != map.sigma2[i])
            throw std::invalid_argument("glue: vertex map does not carry sigma1 to sigma2");
    }

    // Closed hypersurfaces: every (n-2)-subsimplex is shared by exactly two
    // interface faces.
    if (n >= 2) {
        std::map<SimplexId, int> ridge_count;
        for (SimplexId f : map.sigma1)
            for (auto& be : cx1.faces(n - 1, f)) ridge_count[be.face]++;
        for (auto& [r, c] : ridge_count)
            if (c != 2)
                throw std::invalid_argument(
                    "glue: interface is not a closed hypersurface");
    }

    // Isometry: edge lengths inside the interface match within tolerance.
    for (SimplexId f : map.sigma1) {
        auto edges = cx1.subsimplices(n - 1, f, 1);
        for (SimplexId e : edges) {
            auto tv = cx1.vertices(1, e);
            std::vector<VertexId> mapped{v12.at(tv[0]), v12.at(tv[1])};
            SimplexId e2 = cx2.find(1, mapped);
            if (e2 < 0) throw std::invalid_argument("glue: unmatched interface edge");
            double l1 = u1.metric->volume(1, e), l2 = u2.metric->volume(1, e2);
            if (std::abs(l1 - l2) > map.isometry_tolerance * (1 + std::abs(l1)))
                throw std::invalid_argument("glue: isometry violation on interface edge");
        }
    }
}

}  // namespace

GlueResult glue(const Mesh& u1, const Mesh& u2, const GluingMap& map) {
    validate_map(u1, u2, map);
    const auto& cx1 = *u1.complex;
    const auto& cx2 = *u2.complex;
    const int n = cx1.dimension();
    const bool self = u1.complex.get() == u2.complex.get();
    const int ed = u1.metric->embed_dim();
    if (u2.metric->embed_dim() != ed)
        throw std::invalid_argument("glue: embedding dimension mismatch");

    std::map<VertexId, VertexId> v21;  // sigma2 vertex -> sigma1 vertex
    for (auto& [a, b] : map.vertex_map) v21[b] = a;

    GlueResult out;
    out.vertex_map_1.assign(cx1.vertex_count(), -1);
    out.vertex_map_2.assign(cx2.vertex_count(), -1);

    VertexId next = 0;
    if (self) {
        for (std::size_t v = 0; v < cx1.vertex_count(); ++v) {
            auto it = v21.find(static_cast<VertexId>(v));
            if (it != v21.end()) continue;  // assigned via representative
            out.vertex_map_1[v] = next++;
        }
        for (auto& [b, a] : v21) out.vertex_map_1[b] = out.vertex_map_1[a];
        out.vertex_map_2 = out.vertex_map_1;
    } else {
        for (std::size_t v = 0; v < cx1.vertex_count(); ++v)
            out.vertex_map_1[v] = next++;
        for (std::size_t v = 0; v < cx2.vertex_count(); ++v) {
            auto it = v21.find(static_cast<VertexId>(v));
            out.vertex_map_2[v] =
                it != v21.end() ? out.vertex_map_1[it->second] : next++;
        }
    }
    const std::size_t nverts = next;

    // Assemble cells with provenance, in source tuple order so the complex
    // constructor folds the relabeling parity into the orientation.
    std::vector<std::vector<VertexId>> cells;
    std::vector<std::int8_t> orient;
    struct Prov {
        int side;
        SimplexId cell;
    };
    std::vector<Prov> prov;
    auto add_cells = [&](const SimplicialComplex& cx,
                         const std::vector<VertexId>& vmap, int side) {
        for (std::size_t c = 0; c < cx.count(n); ++c) {
            auto tv = cx.vertices(n, static_cast<SimplexId>(c));
            std::vector<VertexId> mapped;
            for (VertexId v : tv) mapped.push_back(vmap[v]);
            cells.push_back(std::move(mapped));
            orient.push_back(cx.cell_orientation(static_cast<SimplexId>(c)));
            prov.push_back({side, static_cast<SimplexId>(c)});
        }
    };
    add_cells(cx1, out.vertex_map_1, 0);
    if (!self) add_cells(cx2, out.vertex_map_2, 1);

    // Coordinates: representative's chart (interface keeps side 1's chart).
    std::vector<double> coords(nverts * ed, 0.0);
    for (std::size_t v = 0; v < cx2.vertex_count(); ++v) {
        auto c = u2.metric->coord(static_cast<VertexId>(v));
        std::copy(c.begin(), c.end(),
                  coords.begin() + static_cast<std::size_t>(out.vertex_map_2[v]) * ed);
    }
    for (std::size_t v = 0; v < cx1.vertex_count(); ++v) {
        auto c = u1.metric->coord(static_cast<VertexId>(v));
        std::copy(c.begin(), c.end(),
                  coords.begin() + static_cast<std::size_t>(out.vertex_map_1[v]) * ed);
    }

    auto complex = std::make_shared<SimplicialComplex>(n, nverts, cells, orient);

    // Orientation coherence across every interior face.
    for (std::size_t f = 0; f < complex->count(n - 1); ++f) {
        auto cf = complex->cofaces(n - 1, static_cast<SimplexId>(f));
        if (cf.size() != 2) continue;
        int s0 = complex->cell_orientation(cf[0]) *
                 complex->incidence_sign(n, cf[0], static_cast<SimplexId>(f));
        int s1 = complex->cell_orientation(cf[1]) *
                 complex->incidence_sign(n, cf[1], static_cast<SimplexId>(f));
        if (s0 + s1 != 0)
            throw std::invalid_argument(
                "glue: orientation mismatch producing non-manifold interface");
    }

    // Metric inherited cell-locally from the sources.
    std::vector<std::vector<double>> volumes(n + 1);
    std::vector<std::vector<double>> pieces(n + 1);
    std::vector<std::vector<std::uint8_t>> have(n + 1);
    for (int k = 0; k <= n; ++k) {
        volumes[k].assign(complex->count(k), 0.0);
        have[k].assign(complex->count(k), 0);
    }

    const std::size_t ncells = complex->count(n);
    for (int k = 0; k <= n; ++k)
        pieces[k].assign(ncells * complex->subsimplices(n, 0, k).size(), 0.0);

    for (std::size_t ci = 0; ci < cells.size(); ++ci) {
        const auto& mesh = prov[ci].side == 0 ? u1 : u2;
        const auto& cx = prov[ci].side == 0 ? cx1 : cx2;
        SimplexId src = prov[ci].cell;
        // Locate the glued cell.
        std::vector<VertexId> sorted_new(cells[ci]);
        std::sort(sorted_new.begin(), sorted_new.end());
        SimplexId gc = complex->find(n, sorted_new);
        if (gc < 0) throw std::logic_error("glue: lost cell");

        // Source points ordered by the new sorted tuple.
        auto src_tv = cx.vertices(n, src);
        std::map<VertexId, VertexId> new_to_src;
        for (int i = 0; i <= n; ++i) new_to_src[cells[ci][i]] = src_tv[i];
        std::vector<std::vector<double>> pts;
        for (VertexId nv : sorted_new) {
            auto c = mesh.metric->coord(new_to_src[nv]);
            pts.emplace_back(c.begin(), c.end());
        }
        CellGeometry geo = compute_cell_geometry(pts);

        for (int k = 0; k <= n; ++k) {
            auto subs = complex->subsimplices(n, gc, k);
            const std::size_t ns = subs.size();
            for (std::size_t l = 0; l < ns; ++l) {
                pieces[k][static_cast<std::size_t>(gc) * ns + l] = geo.dual_pieces[k][l];
                double v = geo.sub_volumes[k][l];
                if (have[k][subs[l]]) {
                    if (std::abs(volumes[k][subs[l]] - v) >
                        map.isometry_tolerance * (1 + std::abs(v)))
                        throw std::invalid_argument(
                            "glue: inherited volumes disagree across the seam");
                } else {
                    volumes[k][subs[l]] = v;
                    have[k][subs[l]] = 1;
                }
            }
        }
    }

    out.mesh.complex = complex;
    out.mesh.metric = std::make_shared<MetricData>(MetricData::from_parts(
        *complex, std::move(coords), ed, std::move(volumes), std::move(pieces)));
    out.mesh.name = self ? u1.name + "+self" : u1.name + "+" + u2.name;
    return out;
}

std::pair<Cochain, GlueSolutionReport> glue_solutions(
    const Mesh& u1, const Cochain& eta1, const Mesh& u2, const Cochain& eta2,
    const GluingMap& map, const GlueResult& glued, double tol) {
    const auto& cx1 = *u1.complex;
    const auto& cx2 = *u2.complex;
    const auto& gcx = *glued.mesh.complex;
    const bool self = u1.complex.get() == u2.complex.get();

    GlueSolutionReport rep;
    Cochain out(gcx, 1);
    std::vector<std::uint8_t> written(gcx.count(1), 0);

    auto transport = [&](const SimplicialComplex& cx, const Cochain& eta,
                         const std::vector<VertexId>& vmap) {
        for (std::size_t e = 0; e < cx.count(1); ++e) {
            auto tv = cx.vertices(1, static_cast<SimplexId>(e));
            VertexId A = vmap[tv[0]], B = vmap[tv[1]];
            std::vector<VertexId> t{A, B};
            SimplexId ge = gcx.find(1, t);
            if (ge < 0) throw std::logic_error("glue_solutions: lost edge");
            double val = eta[static_cast<SimplexId>(e)] *
                         edge_transport_sign(tv[0], tv[1], A, B);
            if (written[ge]) {
                double m = std::abs(out[ge] - val);
                rep.max_dirichlet_mismatch = std::max(rep.max_dirichlet_mismatch, m);
                if (m > tol) rep.offenders.push_back({ge, m});
                out[ge] = 0.5 * (out[ge] + val);
            } else {
                out[ge] = val;
                written[ge] = 1;
            }
        }
    };
    transport(cx1, eta1, glued.vertex_map_1);
    if (!self) transport(cx2, eta2, glued.vertex_map_2);

    // Stiffness-flux continuity on interface edges: the glued equation at an
    // interface edge is exactly the sum of the one-sided fluxes.
    StiffnessOperator K1(cx1, *u1.metric);
    auto k1 = K1.apply(eta1);
    std::vector<double> k2v;
    if (!self) {
        StiffnessOperator K2(cx2, *u2.metric);
        k2v = K2.apply(eta2);
    }
    const auto& k2 = self ? k1 : k2v;

    std::map<VertexId, VertexId> v12;
    for (auto& [a, b] : map.vertex_map) v12[a] = b;
    std::set<SimplexId> seen;
    for (SimplexId f : map.sigma1) {
        for (SimplexId e1 : cx1.subsimplices(cx1.dimension() - 1, f, 1)) {
            if (!seen.insert(e1).second) continue;
            auto tv = cx1.vertices(1, e1);
            std::vector<VertexId> m2{v12.at(tv[0]), v12.at(tv[1])};
            SimplexId e2 = cx2.find(1, m2);
            VertexId A = glued.vertex_map_1[tv[0]], B = glued.vertex_map_1[tv[1]];
            SimplexId ge = gcx.find(1, std::vector<VertexId>{A, B});
            int s1 = edge_transport_sign(tv[0], tv[1], A, B);
            auto tv2 = cx2.vertices(1, e2);
            int s2 = edge_transport_sign(tv2[0], tv2[1], glued.vertex_map_2[tv2[0]],
                                         glued.vertex_map_2[tv2[1]]);
            double r = s1 * k1[e1] + s2 * k2[e2];
            rep.max_neumann_mismatch = std::max(rep.max_neumann_mismatch, std::abs(r));
            if (std::abs(r) > tol) rep.offenders.push_back({ge, std::abs(r)});
        }
    }

    rep.accepted = rep.max_dirichlet_mismatch <= tol && rep.max_neumann_mismatch <= tol;

    // Interior residual on the glued complex.
    StiffnessOperator Kg(gcx, *glued.mesh.metric);
    auto kg = Kg.apply(out);
    for (SimplexId e : gcx.interior(1))
        rep.glued_interior_residual =
            std::max(rep.glued_interior_residual, std::abs(kg[e]));
    return {std::move(out), rep};
}

namespace {

// dim of { f : supp(f) allowed, df = 0 } = number of components of the
// induced vertex subgraph without edges into the complement.
long locally_constant_dim(const SimplicialComplex& cx,
                          const std::vector<std::uint8_t>& allowed) {
    std::vector<long> parent(cx.vertex_count());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<long(long)> find = [&](long x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::vector<std::uint8_t> tainted(cx.vertex_count(), 0);
    for (std::size_t e = 0; e < cx.count(1); ++e) {
        auto tv = cx.vertices(1, static_cast<SimplexId>(e));
        bool a = allowed[tv[0]], b = allowed[tv[1]];
        if (a && b) {
            parent[find(tv[0])] = find(tv[1]);
        } else if (a) {
            tainted[tv[0]] = 1;
        } else if (b) {
            tainted[tv[1]] = 1;
        }
    }
    std::map<long, bool> comp_clean;
    for (std::size_t v = 0; v < cx.vertex_count(); ++v) {
        if (!allowed[v]) continue;
        long r = find(static_cast<long>(v));
        auto it = comp_clean.emplace(r, true).first;
        if (tainted[v]) it->second = false;
    }
    long dim = 0;
    for (auto& [r, clean] : comp_clean)
        if (clean) ++dim;
    return dim;
}

long gauge_dimension(const SimplicialComplex& cx,
                     const std::vector<std::uint8_t>& allowed) {
    long nallowed = 0;
    for (auto a : allowed) nallowed += a;
    return nallowed - locally_constant_dim(cx, allowed);
}

}  // namespace

GluingDimensionReport gluing_dimension_check(const Mesh& u1, const Mesh& u2,
                                             const GluingMap& map) {
    validate_map(u1, u2, map);
    const auto& cx1 = *u1.complex;
    const auto& cx2 = *u2.complex;
    const int n = cx1.dimension();
    const bool self = u1.complex.get() == u2.complex.get();

    GluingDimensionReport rep;
    GlueResult glued = glue(u1, u2, map);

    // ---- Left side: matched linearized pairs on the pieces.
    StiffnessOperator K1(cx1, *u1.metric);
    StiffnessOperator K2v = self ? K1 : StiffnessOperator(cx2, *u2.metric);
    const StiffnessOperator& K2 = self ? K1 : K2v;

    const std::size_t E1 = cx1.count(1);
    const std::size_t cols = self ? E1 : E1 + cx2.count(1);
    const std::size_t off2 = self ? 0 : E1;

    std::vector<std::int64_t> is, js;
    std::vector<double> vs;
    std::int64_t row = 0;
    auto add_csr_row = [&](const kernels::CsrMatrix& K, SimplexId e,
                           std::size_t off, double scale) {
        for (auto k = K.row_ptr[e]; k < K.row_ptr[e + 1]; ++k) {
            is.push_back(row);
            js.push_back(off + K.col_idx[k]);
            vs.push_back(scale * K.values[k]);
        }
    };

    for (SimplexId e : cx1.interior(1)) {
        add_csr_row(K1.matrix(), e, 0, 1.0);
        ++row;
    }
    if (!self) {
        for (SimplexId e : cx2.interior(1)) {
            add_csr_row(K2.matrix(), e, off2, 1.0);
            ++row;
        }
    }

    std::map<VertexId, VertexId> v12;
    for (auto& [a, b] : map.vertex_map) v12[a] = b;
    std::set<SimplexId> seen;
    for (SimplexId f : map.sigma1) {
        for (SimplexId e1 : cx1.subsimplices(n - 1, f, 1)) {
            if (!seen.insert(e1).second) continue;
            auto tv = cx1.vertices(1, e1);
            std::vector<VertexId> m2{v12.at(tv[0]), v12.at(tv[1])};
            SimplexId e2 = cx2.find(1, m2);
            int s = edge_transport_sign(tv[0], tv[1], v12.at(tv[0]), v12.at(tv[1]));
            // Trace continuity: v1(e1) - s * v2(e2) = 0 (triplets on a
            // shared column sum, which handles a self-identified edge).
            is.push_back(row);
            js.push_back(e1);
            vs.push_back(1.0);
            is.push_back(row);
            js.push_back(off2 + e2);
            vs.push_back(-static_cast<double>(s));
            ++row;
            // Flux continuity: (K1 v1)(e1) + s (K2 v2)(e2) = 0.
            add_csr_row(K1.matrix(), e1, 0, 1.0);
            add_csr_row(K2.matrix(), e2, off2, static_cast<double>(s));
            ++row;
        }
    }

    auto B = kernels::csr_from_triplets(static_cast<std::size_t>(row), cols,
                                        std::move(is), std::move(js), std::move(vs));
    // Kernel of B via the dense near-kernel of B^T B.
    std::vector<std::int64_t> gis, gjs;
    std::vector<double> gvs;
    for (std::size_t r = 0; r < B.rows; ++r)
        for (auto a = B.row_ptr[r]; a < B.row_ptr[r + 1]; ++a)
            for (auto b = B.row_ptr[r]; b < B.row_ptr[r + 1]; ++b) {
                gis.push_back(B.col_idx[a]);
                gjs.push_back(B.col_idx[b]);
                gvs.push_back(B.values[a] * B.values[b]);
            }
    auto G = kernels::csr_from_triplets(cols, cols, std::move(gis), std::move(gjs),
                                        std::move(gvs));
    rep.matched_pair_dim = static_cast<long>(nullspace(G).size());

    // Gauge on the pieces: interior gauge of each plus the interface gauge
    // (vertex functions living on the identified interface).
    {
        std::vector<std::uint8_t> allowed(glued.mesh.complex->vertex_count(), 0);
        auto mark = [&](const SimplicialComplex& cx, const std::vector<VertexId>& vmap,
                        const std::set<SimplexId>& sigma_faces) {
            for (std::size_t v = 0; v < cx.vertex_count(); ++v)
                if (!cx.is_boundary(0, static_cast<VertexId>(v)))
                    allowed[vmap[v]] = 1;
            for (SimplexId f : sigma_faces)
                for (VertexId v : cx.vertices(n - 1, f)) allowed[vmap[v]] = 1;
        };
        std::set<SimplexId> sf1(map.sigma1.begin(), map.sigma1.end());
        std::set<SimplexId> sf2(map.sigma2.begin(), map.sigma2.end());
        mark(cx1, glued.vertex_map_1, sf1);
        mark(cx2, glued.vertex_map_2, sf2);
        rep.pair_gauge_dim = gauge_dimension(*glued.mesh.complex, allowed);
    }
    rep.lhs = rep.matched_pair_dim - rep.pair_gauge_dim;

    // ---- Right side: solutions on the glued region modulo interior gauge.
    {
        const auto& gcx = *glued.mesh.complex;
        StiffnessOperator Kg(gcx, *glued.mesh.metric);
        std::vector<std::int64_t> ris, rjs;
        std::vector<double> rvs;
        std::int64_t rrow = 0;
        for (SimplexId e : gcx.interior(1)) {
            for (auto k = Kg.matrix().row_ptr[e]; k < Kg.matrix().row_ptr[e + 1]; ++k) {
                ris.push_back(rrow);
                rjs.push_back(Kg.matrix().col_idx[k]);
                rvs.push_back(Kg.matrix().values[k]);
            }
            ++rrow;
        }
        auto Bg = kernels::csr_from_triplets(static_cast<std::size_t>(rrow),
                                             gcx.count(1), std::move(ris),
                                             std::move(rjs), std::move(rvs));
        std::vector<std::int64_t> gis2, gjs2;
        std::vector<double> gvs2;
        for (std::size_t r = 0; r < Bg.rows; ++r)
            for (auto a = Bg.row_ptr[r]; a < Bg.row_ptr[r + 1]; ++a)
                for (auto b = Bg.row_ptr[r]; b < Bg.row_ptr[r + 1]; ++b) {
                    gis2.push_back(Bg.col_idx[a]);
                    gjs2.push_back(Bg.col_idx[b]);
                    gvs2.push_back(Bg.values[a] * Bg.values[b]);
                }
        auto Gg = kernels::csr_from_triplets(gcx.count(1), gcx.count(1),
                                             std::move(gis2), std::move(gjs2),
                                             std::move(gvs2));
        rep.glued_solution_dim = static_cast<long>(nullspace(Gg).size());

        std::vector<std::uint8_t> allowed(gcx.vertex_count(), 0);
        for (std::size_t v = 0; v < gcx.vertex_count(); ++v)
            if (!gcx.is_boundary(0, static_cast<VertexId>(v))) allowed[v] = 1;
        rep.glued_gauge_dim = gauge_dimension(gcx, allowed);
        rep.rhs = rep.glued_solution_dim - rep.glued_gauge_dim;
        rep.glued_b1 = betti_numbers(gcx, false)[1];
    }

    rep.equal = rep.lhs == rep.rhs;
    return rep;
}

SplitResult split_along(const Mesh& mesh, const std::vector<std::uint8_t>& in_minus) {
    const auto& cx = *mesh.complex;
    const int n = cx.dimension();
    const int ed = mesh.metric->embed_dim();
    if (in_minus.size() != cx.count(n))
        throw std::invalid_argument("split: flag per cell required");

    SplitResult out;
    for (int side = 0; side < 2; ++side) {
        std::vector<SimplexId> cells;
        for (std::size_t c = 0; c < cx.count(n); ++c)
            if ((in_minus[c] != 0) == (side == 0))
                cells.push_back(static_cast<SimplexId>(c));
        if (cells.empty()) throw std::invalid_argument("split: empty side");

        std::vector<VertexId> vmap(cx.vertex_count(), -1);
        std::vector<VertexId>& back =
            side == 0 ? out.vertex_to_parent_1 : out.vertex_to_parent_2;
        for (SimplexId c : cells)
            for (VertexId v : cx.vertices(n, c))
                if (vmap[v] < 0) vmap[v] = 0;
        for (std::size_t v = 0; v < cx.vertex_count(); ++v)
            if (vmap[v] == 0) {
                vmap[v] = static_cast<VertexId>(back.size());
                back.push_back(static_cast<VertexId>(v));
            }

        std::vector<double> coords(back.size() * ed);
        for (std::size_t v = 0; v < back.size(); ++v) {
            auto c = mesh.metric->coord(back[v]);
            std::copy(c.begin(), c.end(), coords.begin() + v * ed);
        }
        std::vector<std::vector<VertexId>> piece_cells;
        std::vector<std::int8_t> orient;
        for (SimplexId c : cells) {
            std::vector<VertexId> t;
            for (VertexId v : cx.vertices(n, c)) t.push_back(vmap[v]);
            piece_cells.push_back(std::move(t));
            orient.push_back(cx.cell_orientation(c));
        }
        Mesh piece;
        piece.complex = std::make_shared<SimplicialComplex>(
            n, back.size(), std::move(piece_cells), std::move(orient));
        piece.metric = std::make_shared<MetricData>(*piece.complex, std::move(coords), ed);
        piece.name = mesh.name + (side == 0 ? "-minus" : "-plus");
        (side == 0 ? out.u1 : out.u2) = std::move(piece);
        (side == 0 ? out.cell_to_parent_1 : out.cell_to_parent_2) = std::move(cells);
    }

    // Interface faces and the vertex map between the pieces.
    std::vector<VertexId> inv1(cx.vertex_count(), -1), inv2(cx.vertex_count(), -1);
    for (std::size_t v = 0; v < out.vertex_to_parent_1.size(); ++v)
        inv1[out.vertex_to_parent_1[v]] = static_cast<VertexId>(v);
    for (std::size_t v = 0; v < out.vertex_to_parent_2.size(); ++v)
        inv2[out.vertex_to_parent_2[v]] = static_cast<VertexId>(v);

    std::set<VertexId> shared;
    for (std::size_t f = 0; f < cx.count(n - 1); ++f) {
        auto cf = cx.cofaces(n - 1, static_cast<SimplexId>(f));
        if (cf.size() != 2) continue;
        if ((in_minus[cf[0]] != 0) == (in_minus[cf[1]] != 0)) continue;
        auto tv = cx.vertices(n - 1, static_cast<SimplexId>(f));
        std::vector<VertexId> t1, t2;
        for (VertexId v : tv) {
            t1.push_back(inv1[v]);
            t2.push_back(inv2[v]);
            shared.insert(v);
        }
        out.map.sigma1.push_back(out.u1.complex->find(n - 1, t1));
        out.map.sigma2.push_back(out.u2.complex->find(n - 1, t2));
    }
    if (out.map.sigma1.empty()) throw std::invalid_argument("split: no interface");
    for (VertexId v : shared)
        out.map.vertex_map.push_back({inv1[v], inv2[v]});
    return out;
}

Mesh make_periodic_box3(int res, double L) {
    if (res < 3)
        throw std::invalid_argument("periodic box needs res >= 3 (no duplicate simplices)");
    const int n = 3;
    const double h = L / res;
    auto vid = [&](int i, int j, int k) {
        auto m = [&](int a) { return ((a % res) + res) % res; };
        return static_cast<VertexId>((m(k) * res + m(j)) * res + m(i));
    };
    const std::size_t nv = static_cast<std::size_t>(res) * res * res;

    std::vector<double> coords(nv * 3);
    for (int k = 0; k < res; ++k)
        for (int j = 0; j < res; ++j)
            for (int i = 0; i < res; ++i) {
                VertexId v = vid(i, j, k);
                coords[v * 3 + 0] = h * i;
                coords[v * 3 + 1] = h * j;
                coords[v * 3 + 2] = h * k;
            }

    struct CellRec {
        std::vector<VertexId> verts;            // wrapped ids, path order
        std::vector<std::array<int, 3>> grid;   // unwrapped indices
    };
    std::vector<CellRec> recs;
    for (int k = 0; k < res; ++k)
        for (int j = 0; j < res; ++j)
            for (int i = 0; i < res; ++i) {
                std::array<int, 3> p{0, 1, 2};
                std::sort(p.begin(), p.end());
                do {
                    CellRec r;
                    std::array<int, 3> g{i, j, k};
                    r.verts.push_back(vid(g[0], g[1], g[2]));
                    r.grid.push_back(g);
                    for (int step = 0; step < 3; ++step) {
                        g[p[step]] += 1;
                        r.verts.push_back(vid(g[0], g[1], g[2]));
                        r.grid.push_back(g);
                    }
                    recs.push_back(std::move(r));
                } while (std::next_permutation(p.begin(), p.end()));
            }

    std::vector<std::vector<VertexId>> cells;
    std::vector<std::int8_t> orient;
    for (auto& r : recs) {
        cells.push_back(r.verts);
        std::vector<std::vector<double>> pts;
        for (auto& g : r.grid)
            pts.push_back({h * g[0], h * g[1], h * g[2]});
        orient.push_back(static_cast<std::int8_t>(orientation_sign(pts)));
    }

    auto complex = std::make_shared<SimplicialComplex>(n, nv, cells, orient);

    // Metric from the unwrapped cell geometry.
    std::vector<std::vector<double>> volumes(n + 1);
    std::vector<std::vector<double>> pieces(n + 1);
    for (int k = 0; k <= n; ++k) {
        volumes[k].assign(complex->count(k), 0.0);
        pieces[k].assign(complex->count(n) * complex->subsimplices(n, 0, k).size(), 0.0);
    }
    std::vector<std::vector<std::uint8_t>> have(n + 1);
    for (int k = 0; k <= n; ++k) have[k].assign(complex->count(k), 0);

    for (auto& r : recs) {
        std::vector<VertexId> sorted_new(r.verts);
        std::sort(sorted_new.begin(), sorted_new.end());
        SimplexId gc = complex->find(n, sorted_new);
        std::map<VertexId, std::array<int, 3>> new_to_grid;
        for (int i = 0; i < 4; ++i) new_to_grid[r.verts[i]] = r.grid[i];
        std::vector<std::vector<double>> pts;
        for (VertexId v : sorted_new) {
            auto& g = new_to_grid[v];
            pts.push_back({h * g[0], h * g[1], h * g[2]});
        }
        CellGeometry geo = compute_cell_geometry(pts);
        for (int k = 0; k <= n; ++k) {
            auto subs = complex->subsimplices(n, gc, k);
            for (std::size_t l = 0; l < subs.size(); ++l) {
                pieces[k][static_cast<std::size_t>(gc) * subs.size() + l] =
                    geo.dual_pieces[k][l];
                if (!have[k][subs[l]]) {
                    volumes[k][subs[l]] = geo.sub_volumes[k][l];
                    have[k][subs[l]] = 1;
                }
            }
        }
    }

    Mesh mesh;
    mesh.complex = complex;
    mesh.metric = std::make_shared<MetricData>(MetricData::from_parts(
        *complex, std::move(coords), 3, std::move(volumes), std::move(pieces)));
    mesh.name = "torus3";

    // Winding cochains across the three seams.
    for (int axis = 0; axis < 3; ++axis) {
        std::vector<double> z(complex->count(1), 0.0);
        for (std::size_t e = 0; e < complex->count(1); ++e) {
            auto tv = complex->vertices(1, static_cast<SimplexId>(e));
            auto gi = [&](VertexId v, int a) {
                int rem = v;
                int out[3] = {rem % res, (rem / res) % res, rem / (res * res)};
                return out[a];
            };
            int iu = gi(tv[0], axis), iv = gi(tv[1], axis);
            if (iu == res - 1 && iv == 0) z[e] = 1.0;
            else if (iu == 0 && iv == res - 1) z[e] = -1.0;
        }
        mesh.h1_period_cochains.push_back(std::move(z));
    }
    return mesh;
}

GluingMap make_translation_gluing(const Mesh& u1, int axis1, double value1,
                                  const Mesh& u2, int axis2, double value2) {
    const auto& cx1 = *u1.complex;
    const auto& cx2 = *u2.complex;
    const int n = cx1.dimension();
    const int ed = u1.metric->embed_dim();
    const double tol = 1e-9;

    auto wall_faces = [&](const Mesh& u, int axis, double value) {
        std::vector<SimplexId> out;
        for (SimplexId f : u.complex->boundary(n - 1)) {
            bool on = true;
            for (VertexId v : u.complex->vertices(n - 1, f))
                if (std::abs(u.metric->coord(v)[axis] - value) > tol) on = false;
            if (on) out.push_back(f);
        }
        return out;
    };
    GluingMap map;
    map.sigma1 = wall_faces(u1, axis1, value1);
    map.sigma2 = wall_faces(u2, axis2, value2);
    if (map.sigma1.size() != map.sigma2.size() || map.sigma1.empty())
        throw std::invalid_argument("translation gluing: wall face count mismatch");

    // Match vertices by the coordinates orthogonal to the wall axis.
    auto key_of = [&](const Mesh& u, VertexId v, int axis) {
        std::vector<long long> key;
        auto c = u.metric->coord(v);
        for (int d = 0; d < ed; ++d) {
            if (d == axis) continue;
            key.push_back(std::llround(c[d] * 1e9));
        }
        return key;
    };
    std::map<std::vector<long long>, VertexId> lookup;
    std::set<VertexId> v2set;
    for (SimplexId f : map.sigma2)
        for (VertexId v : cx2.vertices(n - 1, f)) v2set.insert(v);
    for (VertexId v : v2set) lookup[key_of(u2, v, axis2)] = v;

    std::set<VertexId> v1set;
    for (SimplexId f : map.sigma1)
        for (VertexId v : cx1.vertices(n - 1, f)) v1set.insert(v);
    for (VertexId v : v1set) {
        auto it = lookup.find(key_of(u1, v, axis1));
        if (it == lookup.end())
            throw std::invalid_argument("translation gluing: unmatched wall vertex");
        map.vertex_map.push_back({v, it->second});
    }
    return map;
}

}  // namespace ymhelix
