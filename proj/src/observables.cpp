#include "ymhelix/observables.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace ymhelix {

ObservableValue helicity_observable(const YmOps& ops, const Observable& obs,
                                    const Connection& eta, double tol) {
    ObservableValue out;
    Cochain total = eta.total();
    out.value = 0.5 * (flux_pairing(ops.stiffness(), *obs.cut, obs.generator, total) -
                       flux_pairing(ops.stiffness(), *obs.cut, total, obs.generator));
    out.generator_residual = ops.is_linearized_solution(obs.generator, tol).residual;
    out.argument_residual = ops.is_linearized_solution(total, tol).residual;
    out.on_shell = out.generator_residual <= tol && out.argument_residual <= tol;
    return out;
}

double symplectic_pairing(const YmOps& ops, const Hypersurface& cut,
                          const Cochain& v, const Cochain& w) {
    return 0.5 * (flux_pairing(ops.stiffness(), cut, v, w) -
                  flux_pairing(ops.stiffness(), cut, w, v));
}

double presymplectic_potential(const YmOps& ops, const Hypersurface& cut,
                               const Connection& eta, const Cochain& v) {
    return -flux_pairing(ops.stiffness(), cut, v, eta.total());
}

double poisson_bracket(const YmOps& ops, const Observable& a, const Observable& b) {
    if (a.cut.get() != b.cut.get())
        throw std::invalid_argument("poisson_bracket: observables on different cuts");
    return symplectic_pairing(ops, *a.cut, a.generator, b.generator);
}

double lie_derivative(const YmOps& ops, const Observable& obs, const Connection& eta,
                      const Cochain& w, LieMode mode) {
    if (mode == LieMode::ExactAffine) {
        Connection shifted = eta;
        shifted.phi += w;
        return helicity_observable(ops, obs, shifted, 1e30).value -
               helicity_observable(ops, obs, eta, 1e30).value;
    }
    const double eps = 1e-4;
    Connection up = eta, dn = eta;
    Cochain we = w;
    we *= eps;
    up.phi += we;
    dn.phi -= we;
    return (helicity_observable(ops, obs, up, 1e30).value -
            helicity_observable(ops, obs, dn, 1e30).value) /
           (2 * eps);
}

double hamilton_check(const YmOps& ops, const Observable& obs,
                      const Connection& eta, const Cochain& w) {
    double lie = lie_derivative(ops, obs, eta, w);
    double omega = symplectic_pairing(ops, *obs.cut, obs.generator, w);
    return std::abs(lie - omega);
}

// ---------------------------------------------------------------------------

BoxGrid BoxGrid::detect(const Mesh& mesh) {
    const auto& cx = *mesh.complex;
    const auto& m = *mesh.metric;
    const int n = cx.dimension();
    if (m.embed_dim() != n)
        throw std::invalid_argument("box grid: embedding dimension mismatch");

    BoxGrid g;
    g.n = n;
    for (int a = 0; a < n; ++a) {
        std::set<long long> vals;
        double lo = 1e300, hi = -1e300;
        for (std::size_t v = 0; v < cx.vertex_count(); ++v) {
            double x = m.coord(static_cast<VertexId>(v))[a];
            vals.insert(std::llround(x * 1e10));
            lo = std::min(lo, x);
            hi = std::max(hi, x);
        }
        const int levels = static_cast<int>(vals.size());
        if (levels < 2) throw std::invalid_argument("box grid: degenerate axis");
        g.cells_per_axis.push_back(levels - 1);
        g.spacing.push_back((hi - lo) / (levels - 1));
        g.origin.push_back(lo);
    }
    // A Kuhn box has n! cells per cube.
    std::size_t fact = 1;
    for (int i = 2; i <= n; ++i) fact *= i;
    if (g.cube_count() * fact != cx.count(n))
        throw std::invalid_argument("box grid: mesh is not a structured box");
    return g;
}

std::size_t BoxGrid::cube_count() const {
    std::size_t c = 1;
    for (int r : cells_per_axis) c *= r;
    return c;
}

namespace {

// Cube-center component fields of a 1-cochain on a structured box:
// comp[a][cube] = mean of the axis-a edge values of the cube / spacing.
struct CubeFields {
    BoxGrid grid;
    std::vector<std::vector<double>> comp;  // [axis][cube index]

    std::size_t idx(const std::vector<int>& c) const {
        std::size_t id = 0;
        for (int a = grid.n - 1; a >= 0; --a) id = id * grid.cells_per_axis[a] + c[a];
        return id;
    }
};

CubeFields sample_components(const Mesh& mesh, const BoxGrid& grid,
                             const Cochain& alpha) {
    const auto& cx = *mesh.complex;
    const auto& m = *mesh.metric;
    const int n = grid.n;

    CubeFields out;
    out.grid = grid;
    out.comp.assign(n, std::vector<double>(grid.cube_count(), 0.0));
    std::vector<std::vector<int>> counts(n, std::vector<int>(grid.cube_count(), 0));

    auto grid_index = [&](VertexId v) {
        std::vector<int> gi(n);
        for (int a = 0; a < n; ++a) {
            double x = m.coord(v)[a];
            gi[a] = static_cast<int>(std::llround((x - grid.origin[a]) / grid.spacing[a]));
        }
        return gi;
    };

    for (std::size_t e = 0; e < cx.count(1); ++e) {
        auto tv = cx.vertices(1, static_cast<SimplexId>(e));
        auto g0 = grid_index(tv[0]);
        auto g1 = grid_index(tv[1]);
        int axis = -1, diffs = 0;
        for (int a = 0; a < n; ++a) {
            if (g0[a] != g1[a]) {
                ++diffs;
                axis = a;
            }
        }
        if (diffs != 1) continue;  // grid-axis edges only
        // The cubes this edge borders: all cubes whose index range contains
        // the edge; average into each.
        std::vector<int> base(n);
        for (int a = 0; a < n; ++a) base[a] = std::min(g0[a], g1[a]);
        // Enumerate neighbor offsets in the axes orthogonal to `axis`.
        std::vector<int> others;
        for (int a = 0; a < n; ++a)
            if (a != axis) others.push_back(a);
        const int ncombo = 1 << others.size();
        for (int mask = 0; mask < ncombo; ++mask) {
            std::vector<int> cube(base);
            bool ok = true;
            for (std::size_t b = 0; b < others.size(); ++b) {
                if (mask & (1 << b)) cube[others[b]] -= 1;
                if (cube[others[b]] < 0 ||
                    cube[others[b]] >= grid.cells_per_axis[others[b]])
                    ok = false;
            }
            if (!ok) continue;
            std::size_t id = out.idx(cube);
            double sign = g0[axis] < g1[axis] ? 1.0 : -1.0;
            out.comp[axis][id] += sign * alpha[static_cast<SimplexId>(e)] /
                                  grid.spacing[axis];
            counts[axis][id] += 1;
        }
    }
    for (int a = 0; a < n; ++a)
        for (std::size_t i = 0; i < grid.cube_count(); ++i)
            if (counts[a][i] > 0) out.comp[a][i] /= counts[a][i];
    return out;
}

// Centered difference of a cube-center field along an axis (one-sided at the
// ends).
double cube_derivative(const CubeFields& f, int comp, int axis,
                       const std::vector<int>& cube) {
    const auto& g = f.grid;
    std::vector<int> up(cube), dn(cube);
    up[axis] += 1;
    dn[axis] -= 1;
    const double h = g.spacing[axis];
    const bool has_up = up[axis] < g.cells_per_axis[axis];
    const bool has_dn = dn[axis] >= 0;
    if (has_up && has_dn)
        return (f.comp[comp][f.idx(up)] - f.comp[comp][f.idx(dn)]) / (2 * h);
    if (has_up) return (f.comp[comp][f.idx(up)] - f.comp[comp][f.idx(cube)]) / h;
    if (has_dn) return (f.comp[comp][f.idx(cube)] - f.comp[comp][f.idx(dn)]) / h;
    return 0.0;
}

}  // namespace

CoordinateCurrentResult helicity_current_coordinate(const YmOps& ops,
                                                    const Cochain& phi,
                                                    const Connection& eta) {
    const Mesh& mesh = ops.mesh();
    BoxGrid grid = BoxGrid::detect(mesh);
    const int n = grid.n;

    Cochain total = eta.total();
    CubeFields fphi = sample_components(mesh, grid, phi);
    CubeFields fA = sample_components(mesh, grid, total);

    CoordinateCurrentResult out;
    out.grid = grid;
    out.density_axis0.assign(grid.cube_count(), 0.0);

    // F_i = sum_j w^{ij} [ phi^j (A^j_i - A^i_j) - A^j (d_i phi^j - d_j phi^i) ]
    // with unit flat metric weights; only the i = 0 component is integrated.
    std::vector<int> cube(n, 0);
    while (true) {
        std::size_t id = fphi.idx(cube);
        double F0 = 0;
        for (int j = 0; j < n; ++j) {
            double Aji = cube_derivative(fA, j, 0, cube);
            double Aij = cube_derivative(fA, 0, j, cube);
            double pji = cube_derivative(fphi, j, 0, cube);
            double pij = cube_derivative(fphi, 0, j, cube);
            F0 += fphi.comp[j][id] * (Aji - Aij) - fA.comp[j][id] * (pji - pij);
        }
        out.density_axis0[id] = F0;
        int a = 0;
        for (; a < n; ++a) {
            if (++cube[a] < grid.cells_per_axis[a]) break;
            cube[a] = 0;
        }
        if (a == n) break;
    }

    // Plane integral at the mid grid plane of axis 0 (average of the two
    // adjacent cube layers), against the flux-pairing kernel across the
    // matching bipartition.
    const int mid = grid.cells_per_axis[0] / 2;
    if (mid < 1 || mid >= grid.cells_per_axis[0])
        throw std::invalid_argument("coordinate current: box too coarse");
    double area_element = 1.0;
    for (int a = 1; a < n; ++a) area_element *= grid.spacing[a];
    double plane = 0;
    std::vector<int> c(n, 0);
    c[0] = mid - 1;
    // Iterate over the orthogonal indices.
    std::vector<int> ortho(n - 1);
    std::function<void(int)> rec = [&](int depth) {
        if (depth == n - 1) {
            std::vector<int> left(n), right(n);
            left[0] = mid - 1;
            right[0] = mid;
            for (int a = 1; a < n; ++a) left[a] = right[a] = ortho[a - 1];
            plane += 0.5 *
                     (out.density_axis0[fphi.idx(left)] +
                      out.density_axis0[fphi.idx(right)]) *
                     area_element;
            return;
        }
        for (int i = 0; i < grid.cells_per_axis[depth + 1]; ++i) {
            ortho[depth] = i;
            rec(depth + 1);
        }
    };
    rec(0);
    out.coordinate_plane_flux = plane;

    // The same current through the flux pairing: the coordinate kernel is
    // the unhalved antisymmetric combination Flux(eta; phi) - Flux(phi; eta).
    Cochain field(*mesh.complex, 0);
    for (std::size_t v = 0; v < mesh.complex->vertex_count(); ++v)
        field[static_cast<VertexId>(v)] =
            mesh.metric->coord(static_cast<VertexId>(v))[0];
    double level = grid.origin[0] + grid.spacing[0] * mid;
    Hypersurface cut = cut_from_level(mesh, field, level - 1e-9);
    out.pairing_value = flux_pairing(ops.stiffness(), cut, total, phi) -
                        flux_pairing(ops.stiffness(), cut, phi, total);
    out.discrepancy = std::abs(out.coordinate_plane_flux - out.pairing_value);
    return out;
}

CommutatorResult commutator_field(const YmOps& ops, const Cochain& phi1,
                                  const Cochain& phi2) {
    const Mesh& mesh = ops.mesh();
    const auto& cx = *mesh.complex;
    const auto& m = *mesh.metric;
    BoxGrid grid = BoxGrid::detect(mesh);
    const int n = grid.n;

    CubeFields f1 = sample_components(mesh, grid, phi1);
    CubeFields f2 = sample_components(mesh, grid, phi2);

    // Bracket components at cube centers.
    std::vector<std::vector<double>> br(n, std::vector<double>(grid.cube_count(), 0.0));
    std::vector<int> cube(n, 0);
    while (true) {
        std::size_t id = f1.idx(cube);
        for (int j = 0; j < n; ++j) {
            double acc = 0;
            for (int i = 0; i < n; ++i)
                acc += f1.comp[i][id] * cube_derivative(f2, j, i, cube) -
                       f2.comp[i][id] * cube_derivative(f1, j, i, cube);
            br[j][id] = acc;
        }
        int a = 0;
        for (; a < n; ++a) {
            if (++cube[a] < grid.cells_per_axis[a]) break;
            cube[a] = 0;
        }
        if (a == n) break;
    }

    // Edge cochain by midpoint sampling of the bracket field.
    CommutatorResult out{Cochain(cx, 1), {}, 0.0};
    auto grid_index = [&](VertexId v, int a) {
        return static_cast<int>(
            std::llround((m.coord(v)[a] - grid.origin[a]) / grid.spacing[a]));
    };
    for (std::size_t e = 0; e < cx.count(1); ++e) {
        auto tv = cx.vertices(1, static_cast<SimplexId>(e));
        // Direction cosines from coordinates; integrate the interpolated
        // field along the edge with the midpoint rule.
        std::vector<double> mid_val(n, 0.0);
        // Nearest cubes to the edge midpoint.
        std::vector<double> mid(n);
        for (int a = 0; a < n; ++a)
            mid[a] = 0.5 * (m.coord(tv[0])[a] + m.coord(tv[1])[a]);
        std::vector<int> base(n);
        for (int a = 0; a < n; ++a) {
            double t = (mid[a] - grid.origin[a]) / grid.spacing[a] - 0.5;
            base[a] = std::clamp(static_cast<int>(std::floor(t + 0.5)), 0,
                                 grid.cells_per_axis[a] - 1);
        }
        std::size_t id = f1.idx(base);
        for (int j = 0; j < n; ++j) mid_val[j] = br[j][id];
        double acc = 0;
        for (int a = 0; a < n; ++a) {
            double da = m.coord(tv[1])[a] - m.coord(tv[0])[a];
            acc += mid_val[a] * da;
        }
        out.field[static_cast<SimplexId>(e)] = acc;
        (void)grid_index;
    }

    // eta-dependence of the bracket observable across sample solutions.
    Cochain xfield(cx, 0);
    for (std::size_t v = 0; v < cx.vertex_count(); ++v)
        xfield[static_cast<VertexId>(v)] = m.coord(static_cast<VertexId>(v))[0];
    double level = grid.origin[0] + grid.spacing[0] * (grid.cells_per_axis[0] / 2);
    auto cut = std::make_shared<Hypersurface>(
        cut_from_level(mesh, xfield, level - 1e-9));
    Observable obs{out.field, cut};

    const auto& bedges = ops.boundary_edges();
    for (int trial = 0; trial < 4; ++trial) {
        std::vector<double> data(bedges.size(), 0.0);
        for (std::size_t i = 0; i < bedges.size(); ++i) {
            auto etv = cx.vertices(1, bedges[i]);
            double s = 0;
            for (int a = 0; a < n; ++a)
                s += (0.3 + 0.7 * trial) * (m.coord(etv[1])[a] - m.coord(etv[0])[a]) *
                     std::cos((1 + a + trial) * m.coord(etv[0])[(a + 1) % n]);
            data[i] = s;
        }
        auto [conn, rep] = ops.solve_ym(data);
        (void)rep;
        out.observable_values.push_back(
            helicity_observable(ops, obs, conn, 1e30).value);
    }
    double lo = out.observable_values[0], hi = lo;
    for (double v : out.observable_values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    out.eta_dependence_spread = hi - lo;
    return out;
}

// ---------------------------------------------------------------------------

SeparationContext SeparationContext::standard(const YmOps& ops) {
    const Mesh& mesh = ops.mesh();
    const auto& cx = *mesh.complex;
    const auto& m = *mesh.metric;
    const int n = cx.dimension();

    SeparationContext ctx;
    for (const auto& h : ops.harmonic_basis(GaugeFlavor::Neumann))
        ctx.generators.push_back(h);
    for (const auto& h : ops.harmonic_basis(GaugeFlavor::Dirichlet))
        ctx.generators.push_back(h);
    for (std::size_t k = 0; k < ops.boundary_edges().size(); ++k) {
        std::vector<double> b(ops.boundary_edges().size(), 0.0);
        b[k] = 1.0;
        ctx.generators.push_back(ops.solve_ym(b).first.phi);
    }

    // Coordinate level cuts at three fractions per axis.
    for (int a = 0; a < m.embed_dim(); ++a) {
        Cochain field(cx, 0);
        double lo = 1e300, hi = -1e300;
        for (std::size_t v = 0; v < cx.vertex_count(); ++v) {
            double x = m.coord(static_cast<VertexId>(v))[a];
            field[static_cast<VertexId>(v)] = x;
            lo = std::min(lo, x);
            hi = std::max(hi, x);
        }
        for (double frac : {0.35, 0.5, 0.65}) {
            try {
                auto cut = cut_from_level(mesh, field, lo + frac * (hi - lo));
                ctx.cuts.push_back(std::make_shared<Hypersurface>(std::move(cut)));
                ctx.cut_labels.push_back("axis" + std::to_string(a) + ":" +
                                         std::to_string(frac));
            } catch (const std::invalid_argument&) {
                // degenerate level; skip
            }
        }
    }
    // Radius cuts (annulus-style bodies).
    {
        Cochain field(cx, 0);
        for (std::size_t v = 0; v < cx.vertex_count(); ++v) {
            double r2 = 0;
            auto c = m.coord(static_cast<VertexId>(v));
            for (int a = 0; a < std::min(2, m.embed_dim()); ++a) r2 += c[a] * c[a];
            field[static_cast<VertexId>(v)] = std::sqrt(r2);
        }
        double lo = 1e300, hi = -1e300;
        for (double x : field.values) {
            lo = std::min(lo, x);
            hi = std::max(hi, x);
        }
        if (hi - lo > 1e-9) {
            for (double frac : {0.35, 0.5, 0.65}) {
                try {
                    auto cut = cut_from_level(mesh, field, lo + frac * (hi - lo));
                    ctx.cuts.push_back(std::make_shared<Hypersurface>(std::move(cut)));
                    ctx.cut_labels.push_back("radius:" + std::to_string(frac));
                } catch (const std::invalid_argument&) {
                }
            }
        }
    }
    // Near-boundary cuts: cells touching one wall of the bounding box.
    for (int a = 0; a < m.embed_dim(); ++a) {
        for (int side = 0; side < 2; ++side) {
            double lo = 1e300, hi = -1e300;
            for (std::size_t v = 0; v < cx.vertex_count(); ++v) {
                double x = m.coord(static_cast<VertexId>(v))[a];
                lo = std::min(lo, x);
                hi = std::max(hi, x);
            }
            double wall = side == 0 ? lo : hi;
            std::vector<std::uint8_t> in_minus(cx.count(n), 0);
            std::size_t cnt = 0;
            for (std::size_t c = 0; c < cx.count(n); ++c) {
                bool touches = false;
                for (VertexId v : cx.vertices(n, static_cast<SimplexId>(c)))
                    if (std::abs(m.coord(v)[a] - wall) < 1e-9) touches = true;
                if (touches) {
                    in_minus[c] = 1;
                    ++cnt;
                }
            }
            if (cnt == 0 || cnt == cx.count(n)) continue;
            try {
                ctx.cuts.push_back(std::make_shared<Hypersurface>(
                    Hypersurface::from_bipartition(mesh, std::move(in_minus))));
                ctx.cut_labels.push_back("wall" + std::to_string(a) +
                                         (side == 0 ? "-" : "+"));
            } catch (const std::invalid_argument&) {
            }
        }
    }
    // Generator cuts (nonzero relative class).
    for (std::size_t i = 0; i < mesh.generator_cuts.size(); ++i) {
        ctx.cuts.push_back(
            std::make_shared<Hypersurface>(cut_from_generator(mesh, i)));
        ctx.cut_labels.push_back("generator:" + mesh.generator_cuts[i].label);
    }
    return ctx;
}

SeparationResult separation_certificate(const YmOps& ops,
                                        const SeparationContext& ctx,
                                        const Connection& a, const Connection& b,
                                        double gauge_tol) {
    SeparationResult out;
    const auto& metric = *ops.mesh().metric;

    GaugeVerdict gv = ops.gauge_equivalent(a, b, gauge_tol);
    if (gv.equivalent) {
        out.kind = SeparationResult::Kind::GaugeWitness;
        out.witness = std::move(gv.witness);
        return out;
    }

    Cochain ta = a.total(), tb = b.total();
    out.threshold = 1e-6 * (norm(ta, metric) + norm(tb, metric) + 1.0);

    for (std::size_t g = 0; g < ctx.generators.size(); ++g) {
        for (std::size_t c = 0; c < ctx.cuts.size(); ++c) {
            Observable obs{ctx.generators[g], ctx.cuts[c]};
            double va = helicity_observable(ops, obs, a, 1e30).value;
            double vb = helicity_observable(ops, obs, b, 1e30).value;
            if (std::abs(vb - va) > out.threshold) {
                out.kind = SeparationResult::Kind::Separated;
                out.generator_index = static_cast<int>(g);
                out.cut_index = static_cast<int>(c);
                out.cut_label = ctx.cut_labels[c];
                out.value_a = va;
                out.value_b = vb;
                out.difference = std::abs(vb - va);
                return out;
            }
        }
    }
    out.kind = SeparationResult::Kind::Undecided;
    return out;
}

}  // namespace ymhelix
