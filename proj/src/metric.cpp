#include "ymhelix/metric.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>

#include <Eigen/Dense>

namespace ymhelix {

namespace {

double factorial(int k) {
    double f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

std::size_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::size_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Volume of the simplex spanned by the given points (Gram determinant).
double points_volume(const std::vector<Eigen::VectorXd>& pts) {
    const int k = static_cast<int>(pts.size()) - 1;
    if (k == 0) return 1.0;
    Eigen::MatrixXd E(pts[0].size(), k);
    for (int j = 0; j < k; ++j) E.col(j) = pts[j + 1] - pts[0];
    Eigen::MatrixXd G = E.transpose() * E;
    double det = G.determinant();
    if (det < 0) det = 0;
    return std::sqrt(det) / factorial(k);
}

}  // namespace

double simplex_volume(const std::vector<std::vector<double>>& pts) {
    std::vector<Eigen::VectorXd> p;
    for (auto& v : pts) p.push_back(Eigen::Map<const Eigen::VectorXd>(v.data(), v.size()));
    return points_volume(p);
}

int orientation_sign(const std::vector<std::vector<double>>& pts) {
    const int k = static_cast<int>(pts.size()) - 1;
    Eigen::MatrixXd E(k, k);
    for (int j = 0; j < k; ++j)
        for (int d = 0; d < k; ++d) E(d, j) = pts[j + 1][d] - pts[0][d];
    double det = E.determinant();
    return det > 0 ? 1 : (det < 0 ? -1 : 0);
}

CellGeometry compute_cell_geometry(const std::vector<std::vector<double>>& pts) {
    const int n = static_cast<int>(pts.size()) - 1;
    const int nv = n + 1;
    const int ed = static_cast<int>(pts[0].size());

    // Lexicographic local index of every vertex-subset mask.
    std::vector<int> mask_local(1u << nv, -1);
    std::vector<int> mask_deg(1u << nv, -1);
    CellGeometry g;
    g.sub_volumes.assign(n + 1, {});
    g.dual_pieces.assign(n + 1, {});
    for (int k = 0; k <= n; ++k) {
        int local = 0;
        std::vector<int> idx(k + 1);
        for (int i = 0; i <= k; ++i) idx[i] = i;
        while (true) {
            unsigned mask = 0;
            for (int i = 0; i <= k; ++i) mask |= 1u << idx[i];
            mask_local[mask] = local++;
            mask_deg[mask] = k;
            int i = k;
            while (i >= 0 && idx[i] == n - k + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (int t = i + 1; t <= k; ++t) idx[t] = idx[t - 1] + 1;
        }
        g.sub_volumes[k].assign(local, 0.0);
        g.dual_pieces[k].assign(local, 0.0);
    }

    std::vector<Eigen::VectorXd> bary(1u << nv);
    for (unsigned mask = 1; mask < (1u << nv); ++mask) {
        Eigen::VectorXd b = Eigen::VectorXd::Zero(ed);
        int cnt = 0;
        for (int i = 0; i < nv; ++i)
            if (mask & (1u << i)) {
                b += Eigen::Map<const Eigen::VectorXd>(pts[i].data(), ed);
                ++cnt;
            }
        bary[mask] = b / cnt;
        // Subset volume.
        std::vector<Eigen::VectorXd> sp;
        for (int i = 0; i < nv; ++i)
            if (mask & (1u << i))
                sp.push_back(Eigen::Map<const Eigen::VectorXd>(pts[i].data(), ed));
        g.sub_volumes[mask_deg[mask]][mask_local[mask]] = points_volume(sp);
    }

    // Flags sigma = tau_k < ... < tau_n = cell, one vertex added per step;
    // each contributes the volume of its barycenter simplex to sigma's piece.
    const unsigned full = (1u << nv) - 1;
    std::vector<Eigen::VectorXd> chain_pts{bary[full]};
    auto recurse = [&](auto&& self, unsigned mask) -> void {
        g.dual_pieces[mask_deg[mask]][mask_local[mask]] += points_volume(chain_pts);
        if (mask_deg[mask] == 0) return;
        for (int i = 0; i < nv; ++i) {
            if (mask & (1u << i)) {
                unsigned sub = mask & ~(1u << i);
                chain_pts.push_back(bary[sub]);
                self(self, sub);
                chain_pts.pop_back();
            }
        }
    };
    recurse(recurse, full);
    return g;
}

MetricData::MetricData(const SimplicialComplex& cx, std::vector<double> coords,
                       int embed_dim)
    : embed_dim_(embed_dim), coords_(std::move(coords)) {
    if (coords_.size() != cx.vertex_count() * static_cast<std::size_t>(embed_dim))
        throw std::invalid_argument("coordinate array size mismatch");
    const int n = cx.dimension();
    if (embed_dim_ < n) throw std::invalid_argument("embedding dimension below n");

    volumes_.assign(n + 1, {});
    for (int k = 0; k <= n; ++k) {
        volumes_[k].resize(cx.count(k));
        for (std::size_t s = 0; s < cx.count(k); ++s) {
            auto tv = cx.vertices(k, static_cast<SimplexId>(s));
            std::vector<Eigen::VectorXd> pts;
            for (VertexId v : tv) {
                auto c = coord(v);
                pts.push_back(Eigen::Map<const Eigen::VectorXd>(c.data(), embed_dim_));
            }
            volumes_[k][s] = points_volume(pts);
            if (k > 0 && volumes_[k][s] <= 0)
                throw std::invalid_argument("degenerate simplex (zero volume)");
        }
    }

    cell_pieces_.assign(n + 1, {});
    cell_subs_.assign(n + 1, {});
    n_subs_.assign(n + 1, 0);
    const std::size_t ncells = cx.count(n);
    for (int k = 0; k <= n; ++k) {
        n_subs_[k] = binomial(n + 1, k + 1);
        cell_pieces_[k].assign(ncells * n_subs_[k], 0.0);
        cell_subs_[k].assign(ncells * n_subs_[k], -1);
    }

    for (std::size_t c = 0; c < ncells; ++c) {
        auto cell_tv = cx.vertices(n, static_cast<SimplexId>(c));
        std::vector<std::vector<double>> pts;
        for (VertexId v : cell_tv) {
            auto cc = coord(v);
            pts.emplace_back(cc.begin(), cc.end());
        }
        CellGeometry geo = compute_cell_geometry(pts);
        for (int k = 0; k <= n; ++k) {
            auto subs = cx.subsimplices(n, static_cast<SimplexId>(c), k);
            for (std::size_t l = 0; l < subs.size(); ++l) {
                cell_subs_[k][c * n_subs_[k] + l] = subs[l];
                cell_pieces_[k][c * n_subs_[k] + l] = geo.dual_pieces[k][l];
            }
        }
    }

    finalize(cx);
}

MetricData MetricData::from_parts(const SimplicialComplex& cx,
                                  std::vector<double> coords, int embed_dim,
                                  std::vector<std::vector<double>> volumes,
                                  std::vector<std::vector<double>> cell_pieces) {
    MetricData m;
    m.embed_dim_ = embed_dim;
    m.coords_ = std::move(coords);
    m.volumes_ = std::move(volumes);
    m.cell_pieces_ = std::move(cell_pieces);
    const int n = cx.dimension();
    m.n_subs_.assign(n + 1, 0);
    m.cell_subs_.assign(n + 1, {});
    for (int k = 0; k <= n; ++k) {
        m.n_subs_[k] = binomial(n + 1, k + 1);
        m.cell_subs_[k].assign(cx.count(n) * m.n_subs_[k], -1);
        for (std::size_t c = 0; c < cx.count(n); ++c) {
            auto subs = cx.subsimplices(n, static_cast<SimplexId>(c), k);
            for (std::size_t l = 0; l < subs.size(); ++l)
                m.cell_subs_[k][c * m.n_subs_[k] + l] = subs[l];
        }
    }
    m.finalize(cx);
    return m;
}

void MetricData::finalize(const SimplicialComplex& cx) {
    const int n = cx.dimension();
    dual_volumes_.assign(n + 1, {});
    weights_.assign(n + 1, {});
    for (int k = 0; k <= n; ++k) {
        dual_volumes_[k].assign(cx.count(k), 0.0);
        for (std::size_t c = 0; c < cx.count(n); ++c)
            for (std::size_t l = 0; l < n_subs_[k]; ++l)
                dual_volumes_[k][cell_subs_[k][c * n_subs_[k] + l]] +=
                    cell_pieces_[k][c * n_subs_[k] + l];
        weights_[k].resize(cx.count(k));
        for (std::size_t s = 0; s < cx.count(k); ++s) {
            weights_[k][s] = dual_volumes_[k][s] / volumes_[k][s];
            if (!(weights_[k][s] > 0))
                throw std::invalid_argument("non-positive Hodge weight");
        }
    }
}

double MetricData::cell_dual_piece(int k, SimplexId c, int local) const {
    return cell_pieces_[k][static_cast<std::size_t>(c) * n_subs_[k] + local];
}

std::span<const SimplexId> MetricData::cell_subsimplices(int k, SimplexId c) const {
    return {cell_subs_[k].data() + static_cast<std::size_t>(c) * n_subs_[k],
            n_subs_[k]};
}

double MetricData::total_volume() const {
    double v = 0;
    for (double x : volumes_.back()) v += x;
    return v;
}

void MetricData::check_invariants(const SimplicialComplex& cx) const {
    const int n = cx.dimension();
    for (int k = 0; k <= n; ++k)
        for (std::size_t s = 0; s < cx.count(k); ++s) {
            if (!(volume(k, static_cast<SimplexId>(s)) > 0))
                throw std::logic_error("non-positive primal volume");
            if (!(dual_volume(k, static_cast<SimplexId>(s)) > 0))
                throw std::logic_error("non-positive dual volume");
        }
    // Vertex dual volumes partition each cell: sum over k=0 pieces == vol.
    for (std::size_t c = 0; c < cx.count(n); ++c) {
        double s = 0;
        for (std::size_t l = 0; l < n_subs_[0]; ++l)
            s += cell_pieces_[0][c * n_subs_[0] + l];
        double v = volumes_[n][c];
        if (std::abs(s - v) > 1e-10 * (1 + v))
            throw std::logic_error("vertex dual pieces do not partition cell");
    }
}

}  // namespace ymhelix
