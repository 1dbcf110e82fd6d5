#include "ymhelix/hypersurface.hpp"

#include <map>
#include <queue>
#include <set>
#include <stdexcept>

namespace ymhelix {

namespace {

// All n-cells containing a given edge.
std::vector<SimplexId> cells_of_edge(const SimplicialComplex& cx, SimplexId e) {
    const int n = cx.dimension();
    std::set<SimplexId> cur{e};
    for (int k = 1; k < n; ++k) {
        std::set<SimplexId> next;
        for (SimplexId s : cur)
            for (SimplexId c : cx.cofaces(k, s)) next.insert(c);
        cur = std::move(next);
    }
    return {cur.begin(), cur.end()};
}

}  // namespace

Hypersurface Hypersurface::from_bipartition(const Mesh& mesh,
                                            std::vector<std::uint8_t> in_minus) {
    const auto& cx = *mesh.complex;
    const int n = cx.dimension();
    if (in_minus.size() != cx.count(n))
        throw std::invalid_argument("cut: flag per n-cell required");
    std::size_t nm = 0;
    for (auto f : in_minus) nm += (f != 0);
    if (nm == 0 || nm == cx.count(n))
        throw std::invalid_argument("cut: one side of the bipartition is empty");

    Hypersurface h;
    h.cx_ = &cx;
    h.in_minus_ = std::move(in_minus);

    // Interface: faces whose two cofaces lie on different sides; jump is the
    // height difference from the lower-index to the higher-index coface.
    for (std::size_t f = 0; f < cx.count(n - 1); ++f) {
        auto cf = cx.cofaces(n - 1, static_cast<SimplexId>(f));
        if (cf.size() != 2) continue;
        double s0 = h.in_minus_[cf[0]] ? 0.0 : 1.0;
        double s1 = h.in_minus_[cf[1]] ? 0.0 : 1.0;
        if (s0 == s1) continue;
        SimplexId lo = std::min(cf[0], cf[1]), hi = std::max(cf[0], cf[1]);
        double slo = h.in_minus_[lo] ? 0.0 : 1.0;
        double shi = h.in_minus_[hi] ? 0.0 : 1.0;
        h.faces_.push_back(static_cast<SimplexId>(f));
        h.jumps_.push_back(shi - slo);
    }
    if (h.faces_.empty()) throw std::invalid_argument("cut: empty interface");

    // Edge rule: all cofaces in S- , or lowest-index coface in S- for
    // interface-touching edges.
    h.edge_minus_.assign(cx.count(1), 0);
    for (std::size_t e = 0; e < cx.count(1); ++e) {
        auto cells = cells_of_edge(cx, static_cast<SimplexId>(e));
        SimplexId lowest = cells.front();
        h.edge_minus_[e] = h.in_minus_[lowest];
    }

    h.build_fans(mesh);
    return h;
}

Hypersurface Hypersurface::from_jumps(const Mesh& mesh,
                                      std::vector<SimplexId> faces,
                                      std::vector<double> jumps) {
    const auto& cx = *mesh.complex;
    const int n = cx.dimension();
    if (faces.size() != jumps.size() || faces.empty())
        throw std::invalid_argument("cut: face/jump arity mismatch");
    for (SimplexId f : faces)
        if (cx.cofaces(n - 1, f).size() != 2)
            throw std::invalid_argument("cut: jump across a boundary face");

    Hypersurface h;
    h.cx_ = &cx;
    h.faces_ = std::move(faces);
    h.jumps_ = std::move(jumps);
    h.build_fans(mesh);
    return h;
}

void Hypersurface::build_fans(const Mesh& mesh) {
    const auto& cx = *cx_;
    const int n = cx.dimension();

    std::map<SimplexId, double> jump_of;
    for (std::size_t i = 0; i < faces_.size(); ++i) jump_of[faces_[i]] = jumps_[i];

    // Admissibility at the (n-2) level: around every interior (n-2)-simplex
    // the jumps must admit a potential on the cell fan. The edge fans below
    // check this for n >= 3; for n = 2 check the vertex fans explicitly.
    if (n == 2) {
        for (std::size_t v = 0; v < cx.vertex_count(); ++v) {
            if (cx.is_boundary(0, static_cast<VertexId>(v))) continue;
            // Cells around v, adjacency through edges containing v; the jump
            // potential must be single-valued around the closed fan.
            std::vector<SimplexId> cells;
            for (SimplexId e : cx.cofaces(0, static_cast<VertexId>(v)))
                for (SimplexId c : cx.cofaces(1, e))
                    if (std::find(cells.begin(), cells.end(), c) == cells.end())
                        cells.push_back(c);
            std::map<SimplexId, double> side;
            std::queue<SimplexId> q;
            side[cells.front()] = 0;
            q.push(cells.front());
            while (!q.empty()) {
                SimplexId c = q.front();
                q.pop();
                for (SimplexId e : cx.cofaces(0, static_cast<VertexId>(v))) {
                    if (cx.incidence_sign(2, c, e) == 0) continue;
                    auto cf = cx.cofaces(1, e);
                    if (cf.size() != 2) continue;
                    SimplexId other = cf[0] == c ? cf[1] : cf[0];
                    auto it = jump_of.find(e);
                    double j = it == jump_of.end() ? 0.0 : it->second;
                    double sgn = (other > c) ? 1.0 : -1.0;  // lo -> hi orientation
                    double val = side[c] + sgn * j;
                    auto [sit, inserted] = side.emplace(other, val);
                    if (inserted)
                        q.push(other);
                    else if (std::abs(sit->second - val) > 1e-12)
                        throw std::invalid_argument(
                            "cut: jumps are not admissible (dSigma leaves dU)");
                }
            }
        }
    }

    // Support edges: all edges of interface faces.
    std::set<SimplexId> support;
    for (SimplexId f : faces_)
        for (SimplexId e : cx.subsimplices(n - 1, f, 1)) support.insert(e);

    for (SimplexId e : support) {
        auto cells = cells_of_edge(cx, e);
        // Fan potential by BFS over cells adjacent through (n-1)-faces
        // containing e; base value 0 at the lowest-index cell.
        std::map<SimplexId, double> side;
        std::queue<SimplexId> q;
        side[cells.front()] = 0.0;
        q.push(cells.front());
        // Faces containing e: shared walls of the fan.
        std::vector<SimplexId> walls;
        if (n == 2) {
            walls.push_back(e);
        } else {
            std::set<SimplexId> cur{e};
            for (int k = 1; k < n - 1; ++k) {
                std::set<SimplexId> nxt;
                for (SimplexId s : cur)
                    for (SimplexId c : cx.cofaces(k, s)) nxt.insert(c);
                cur = std::move(nxt);
            }
            walls.assign(cur.begin(), cur.end());
        }
        while (!q.empty()) {
            SimplexId c = q.front();
            q.pop();
            for (SimplexId w : walls) {
                auto cf = cx.cofaces(n - 1, w);
                if (cf.size() != 2) continue;
                if (cf[0] != c && cf[1] != c) continue;
                SimplexId other = cf[0] == c ? cf[1] : cf[0];
                auto it = jump_of.find(w);
                double j = it == jump_of.end() ? 0.0 : it->second;
                double sgn = (other > c) ? 1.0 : -1.0;
                double val = side[c] + sgn * j;
                auto [sit, inserted] = side.emplace(other, val);
                if (inserted)
                    q.push(other);
                else if (std::abs(sit->second - val) > 1e-12)
                    throw std::invalid_argument(
                        "cut: jumps are not admissible around an edge fan");
            }
        }
        if (side.size() != cells.size())
            throw std::invalid_argument("cut: disconnected cell fan");

        FanEntry fe;
        fe.edge = e;
        for (auto& [c, s] : side)
            if (s != 0.0) fe.cell_sides.push_back({c, s});
        if (!fe.cell_sides.empty()) fans_.push_back(std::move(fe));
    }

    // Relative class: pairing against the recorded relative period cochains
    // (n = 2 only, where interface faces are edges); bipartitions pair to 0.
    if (n == 2) {
        for (const auto& z : mesh.h1_relative_period_cochains) {
            double p = 0;
            for (std::size_t i = 0; i < faces_.size(); ++i)
                p += jumps_[i] * z[faces_[i]];
            rel_class_.push_back(p);
        }
    } else if (!mesh.generator_cuts.empty() || !in_minus_.empty()) {
        rel_class_.assign(mesh.h1_relative_period_cochains.size(), 0.0);
    }
}

Hypersurface cut_from_level(const Mesh& mesh, const Cochain& vertex_field,
                            double level) {
    const auto& cx = *mesh.complex;
    const int n = cx.dimension();
    if (vertex_field.degree != 0)
        throw std::invalid_argument("cut_from_level: vertex field required");
    std::vector<std::uint8_t> in_minus(cx.count(n), 0);
    for (std::size_t c = 0; c < cx.count(n); ++c) {
        double mean = 0;
        auto tv = cx.vertices(n, static_cast<SimplexId>(c));
        for (VertexId v : tv) mean += vertex_field[v];
        mean /= static_cast<double>(tv.size());
        in_minus[c] = mean < level ? 1 : 0;
    }
    return Hypersurface::from_bipartition(mesh, std::move(in_minus));
}

Hypersurface cut_from_generator(const Mesh& mesh, std::size_t index) {
    if (index >= mesh.generator_cuts.size())
        throw std::invalid_argument("cut_from_generator: no such generator cut");
    const auto& spec = mesh.generator_cuts[index];
    return Hypersurface::from_jumps(mesh, spec.faces, spec.jumps);
}

double flux_pairing(const StiffnessOperator& K, const Hypersurface& cut,
                    const Cochain& v, const Cochain& w) {
    if (v.complex != &cut.complex() || w.complex != &cut.complex())
        throw std::invalid_argument("flux_pairing: mesh mismatch");
    double acc = 0;
    for (const auto& fe : cut.fans()) {
        double inner_acc = 0;
        for (auto& [c, s] : fe.cell_sides)
            inner_acc += s * K.cell_apply_edge(c, fe.edge, v);
        acc -= w[fe.edge] * inner_acc;
    }
    return acc;
}

double flux_pairing_bipartition_reference(const StiffnessOperator& K,
                                          const Hypersurface& cut,
                                          const Cochain& v, const Cochain& w) {
    if (!cut.is_bipartition())
        throw std::invalid_argument("reference formula needs a bipartition");
    const auto& cx = cut.complex();
    const int n = cx.dimension();
    double acc = 0;
    for (std::size_t c = 0; c < cx.count(n); ++c)
        if (cut.cell_minus()[c])
            acc += K.cell_energy(static_cast<SimplexId>(c), w, v);
    auto kv = K.apply(v);
    for (std::size_t e = 0; e < cx.count(1); ++e)
        if (cut.edge_minus()[e]) acc -= w[static_cast<SimplexId>(e)] * kv[e];
    return acc;
}

}  // namespace ymhelix
