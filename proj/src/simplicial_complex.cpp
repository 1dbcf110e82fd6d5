#include "ymhelix/simplicial_complex.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace ymhelix {

namespace {

std::vector<VertexId> sorted_tuple(std::span<const VertexId> v) {
    std::vector<VertexId> t(v.begin(), v.end());
    std::sort(t.begin(), t.end());
    return t;
}

// Parity of the permutation taking `from` to ascending order.
int sort_parity(std::span<const VertexId> from) {
    std::vector<VertexId> v(from.begin(), from.end());
    int swaps = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        for (std::size_t j = i + 1; j < v.size(); ++j) {
            if (v[j] < v[i]) {
                std::swap(v[i], v[j]);
                ++swaps;
            }
        }
    }
    return (swaps % 2 == 0) ? 1 : -1;
}

}  // namespace

SimplicialComplex::SimplicialComplex(int dimension, std::size_t vertex_count,
                                     std::vector<std::vector<VertexId>> cells,
                                     std::vector<std::int8_t> cell_orientations)
    : dim_(dimension), nverts_(vertex_count) {
    if (dim_ < 1 || dim_ > 4) throw std::invalid_argument("dimension must be 1..4");
    if (cells.empty()) throw std::invalid_argument("complex needs at least one cell");
    for (auto& c : cells) {
        if (static_cast<int>(c.size()) != dim_ + 1)
            throw std::invalid_argument("cell arity does not match dimension");
        for (VertexId v : c)
            if (v < 0 || static_cast<std::size_t>(v) >= nverts_)
                throw std::invalid_argument("cell references unknown vertex");
    }

    // Normalize cells to sorted tuples, folding the sort parity into the
    // orientation sign.
    cell_orient_.assign(cells.size(), 1);
    for (std::size_t i = 0; i < cells.size(); ++i) {
        int par = sort_parity(cells[i]);
        std::sort(cells[i].begin(), cells[i].end());
        for (std::size_t j = 1; j < cells[i].size(); ++j)
            if (cells[i][j] == cells[i][j - 1])
                throw std::invalid_argument("degenerate cell (repeated vertex)");
        std::int8_t base = cell_orientations.empty() ? std::int8_t{1}
                                                     : cell_orientations[i];
        cell_orient_[i] = static_cast<std::int8_t>(base * par);
    }

    build_skeleton(cells);
    build_boundary_flags();
}

void SimplicialComplex::build_skeleton(
    const std::vector<std::vector<VertexId>>& cells) {
    simplices_.assign(dim_ + 1, {});
    face_lists_.assign(dim_ + 1, {});
    face_offsets_.assign(dim_ + 1, {});
    coface_lists_.assign(dim_ + 1, {});
    coface_offsets_.assign(dim_ + 1, {});

    // Cells: dedupe sorted tuples lexicographically. Orientations follow.
    {
        std::vector<std::size_t> order(cells.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return cells[a] < cells[b];
        });
        std::vector<std::int8_t> orient;
        auto& flat = simplices_[dim_];
        for (std::size_t oi = 0; oi < order.size(); ++oi) {
            if (oi > 0 && cells[order[oi]] == cells[order[oi - 1]])
                throw std::invalid_argument("duplicate cell");
            flat.insert(flat.end(), cells[order[oi]].begin(), cells[order[oi]].end());
            orient.push_back(cell_orient_[order[oi]]);
        }
        cell_orient_ = std::move(orient);
    }

    // Lower skeleta: generate all faces of the level above, dedupe.
    for (int k = dim_ - 1; k >= 0; --k) {
        const int above = k + 1;
        const std::size_t n_above = count(above);
        std::vector<std::vector<VertexId>> tuples;
        tuples.reserve(n_above * (above + 1));
        for (std::size_t s = 0; s < n_above; ++s) {
            auto tv = vertices(above, static_cast<SimplexId>(s));
            for (int drop = 0; drop <= above; ++drop) {
                std::vector<VertexId> f;
                f.reserve(above);
                for (int j = 0; j <= above; ++j)
                    if (j != drop) f.push_back(tv[j]);
                tuples.push_back(std::move(f));
            }
        }
        std::sort(tuples.begin(), tuples.end());
        tuples.erase(std::unique(tuples.begin(), tuples.end()), tuples.end());
        auto& flat = simplices_[k];
        for (auto& t : tuples) flat.insert(flat.end(), t.begin(), t.end());
    }

    // Face lists with alternating signs, then coface lists by transposition.
    for (int k = 1; k <= dim_; ++k) {
        const std::size_t nk = count(k);
        auto& fl = face_lists_[k];
        auto& fo = face_offsets_[k];
        fo.assign(nk + 1, 0);
        fl.reserve(nk * (k + 1));
        for (std::size_t s = 0; s < nk; ++s) {
            auto tv = vertices(k, static_cast<SimplexId>(s));
            for (int drop = 0; drop <= k; ++drop) {
                std::vector<VertexId> f;
                f.reserve(k);
                for (int j = 0; j <= k; ++j)
                    if (j != drop) f.push_back(tv[j]);
                SimplexId fi = find(k - 1, f);
                if (fi < 0) throw std::logic_error("missing face during build");
                fl.push_back({fi, static_cast<std::int8_t>(drop % 2 == 0 ? 1 : -1)});
            }
            fo[s + 1] = static_cast<std::int64_t>(fl.size());
        }
    }
    for (int k = 0; k < dim_; ++k) {
        const std::size_t nk = count(k);
        const std::size_t nup = count(k + 1);
        std::vector<std::int64_t> cnt(nk + 1, 0);
        for (std::size_t s = 0; s < nup; ++s)
            for (auto& be : faces(k + 1, static_cast<SimplexId>(s)))
                cnt[be.face + 1]++;
        auto& co = coface_offsets_[k];
        co.assign(nk + 1, 0);
        for (std::size_t i = 0; i < nk; ++i) co[i + 1] = co[i] + cnt[i + 1];
        coface_lists_[k].assign(static_cast<std::size_t>(co[nk]), 0);
        std::vector<std::int64_t> fill(co.begin(), co.end() - 1);
        for (std::size_t s = 0; s < nup; ++s)
            for (auto& be : faces(k + 1, static_cast<SimplexId>(s)))
                coface_lists_[k][fill[be.face]++] = static_cast<SimplexId>(s);
    }
}

void SimplicialComplex::build_boundary_flags() {
    boundary_flag_.assign(dim_ + 1, {});
    for (int k = 0; k <= dim_; ++k) boundary_flag_[k].assign(count(k), 0);

    // An (n-1)-simplex is boundary iff it has exactly one n-coface.
    if (dim_ >= 1) {
        const std::size_t nf = count(dim_ - 1);
        for (std::size_t f = 0; f < nf; ++f) {
            auto cf = cofaces(dim_ - 1, static_cast<SimplexId>(f));
            if (cf.size() == 1) boundary_flag_[dim_ - 1][f] = 1;
            else if (cf.size() != 2)
                throw std::invalid_argument(
                    "non-manifold interface: (n-1)-simplex with " +
                    std::to_string(cf.size()) + " cofaces");
        }
    }
    // Close downward: faces of boundary simplices are boundary.
    for (int k = dim_ - 1; k >= 1; --k) {
        const std::size_t nk = count(k);
        for (std::size_t s = 0; s < nk; ++s) {
            if (!boundary_flag_[k][s]) continue;
            for (auto& be : faces(k, static_cast<SimplexId>(s)))
                boundary_flag_[k - 1][be.face] = 1;
        }
    }
}

std::span<const VertexId> SimplicialComplex::vertices(int k, SimplexId s) const {
    return {simplices_[k].data() + static_cast<std::size_t>(s) * (k + 1),
            static_cast<std::size_t>(k + 1)};
}

SimplexId SimplicialComplex::find(int k, std::span<const VertexId> tuple) const {
    auto key = sorted_tuple(tuple);
    const std::size_t nk = count(k);
    // Binary search over the lexicographically sorted flat array.
    std::size_t lo = 0, hi = nk;
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        auto tv = vertices(k, static_cast<SimplexId>(mid));
        if (std::lexicographical_compare(tv.begin(), tv.end(), key.begin(), key.end()))
            lo = mid + 1;
        else
            hi = mid;
    }
    if (lo < nk) {
        auto tv = vertices(k, static_cast<SimplexId>(lo));
        if (std::equal(tv.begin(), tv.end(), key.begin(), key.end()))
            return static_cast<SimplexId>(lo);
    }
    return -1;
}

std::span<const BoundaryEntry> SimplicialComplex::faces(int k, SimplexId s) const {
    if (k == 0) return {};
    const auto b = face_offsets_[k][s], e = face_offsets_[k][s + 1];
    return {face_lists_[k].data() + b, static_cast<std::size_t>(e - b)};
}

std::span<const SimplexId> SimplicialComplex::cofaces(int k, SimplexId s) const {
    if (k >= dim_) return {};
    const auto b = coface_offsets_[k][s], e = coface_offsets_[k][s + 1];
    return {coface_lists_[k].data() + b, static_cast<std::size_t>(e - b)};
}

std::vector<SimplexId> SimplicialComplex::subsimplices(int k, SimplexId s,
                                                       int j) const {
    auto tv = vertices(k, s);
    std::vector<SimplexId> out;
    // Enumerate (j+1)-subsets of the sorted tuple in lexicographic order.
    std::vector<int> idx(j + 1);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        std::vector<VertexId> sub(j + 1);
        for (int i = 0; i <= j; ++i) sub[i] = tv[idx[i]];
        SimplexId id = find(j, sub);
        if (id < 0) throw std::logic_error("missing subsimplex");
        out.push_back(id);
        int i = j;
        while (i >= 0 && idx[i] == k - j + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int t = i + 1; t <= j; ++t) idx[t] = idx[t - 1] + 1;
    }
    return out;
}

std::size_t SimplicialComplex::boundary_count(int k) const {
    std::size_t c = 0;
    for (auto f : boundary_flag_[k]) c += f;
    return c;
}

std::vector<SimplexId> SimplicialComplex::interior(int k) const {
    std::vector<SimplexId> out;
    for (std::size_t s = 0; s < count(k); ++s)
        if (!boundary_flag_[k][s]) out.push_back(static_cast<SimplexId>(s));
    return out;
}

std::vector<SimplexId> SimplicialComplex::boundary(int k) const {
    std::vector<SimplexId> out;
    for (std::size_t s = 0; s < count(k); ++s)
        if (boundary_flag_[k][s]) out.push_back(static_cast<SimplexId>(s));
    return out;
}

int SimplicialComplex::incidence_sign(int k, SimplexId s, SimplexId face) const {
    for (auto& be : faces(k, s))
        if (be.face == face) return be.sign;
    return 0;
}

std::pair<std::vector<int>, int> SimplicialComplex::vertex_components() const {
    std::vector<int> comp(nverts_, -1);
    int nc = 0;
    for (std::size_t seed = 0; seed < nverts_; ++seed) {
        if (comp[seed] >= 0) continue;
        std::queue<VertexId> q;
        q.push(static_cast<VertexId>(seed));
        comp[seed] = nc;
        while (!q.empty()) {
            VertexId v = q.front();
            q.pop();
            for (SimplexId e : cofaces(0, v)) {
                for (VertexId w : vertices(1, e)) {
                    if (comp[w] < 0) {
                        comp[w] = nc;
                        q.push(w);
                    }
                }
            }
        }
        ++nc;
    }
    return {comp, nc};
}

SimplicialComplex::BoundaryComplex SimplicialComplex::boundary_complex() const {
    const int bk = dim_ - 1;
    std::vector<SimplexId> bfaces = boundary(bk);
    if (bfaces.empty()) throw std::invalid_argument("complex has empty boundary");

    std::vector<VertexId> vmap(nverts_, -1);
    std::vector<VertexId> vback;
    for (SimplexId f : bfaces)
        for (VertexId v : vertices(bk, f))
            if (vmap[v] < 0) {
                vmap[v] = static_cast<VertexId>(vback.size());
                vback.push_back(v);
            }

    std::vector<std::vector<VertexId>> cells;
    cells.reserve(bfaces.size());
    for (SimplexId f : bfaces) {
        std::vector<VertexId> c;
        for (VertexId v : vertices(bk, f)) c.push_back(vmap[v]);
        cells.push_back(std::move(c));
    }
    BoundaryComplex out{SimplicialComplex(bk, vback.size(), std::move(cells)),
                        std::move(vback), {}};

    out.simplex_to_parent.assign(bk + 1, {});
    for (int k = 0; k <= bk; ++k) {
        auto& m = out.simplex_to_parent[k];
        m.resize(out.complex.count(k));
        for (std::size_t s = 0; s < out.complex.count(k); ++s) {
            auto tv = out.complex.vertices(k, static_cast<SimplexId>(s));
            std::vector<VertexId> parent;
            for (VertexId v : tv) parent.push_back(out.vertex_to_parent[v]);
            SimplexId p = find(k, parent);
            if (p < 0) throw std::logic_error("boundary simplex missing in parent");
            m[s] = p;
        }
    }
    return out;
}

void SimplicialComplex::check_invariants() const {
    // dd = 0 in integer arithmetic.
    for (int k = 2; k <= dim_; ++k) {
        for (std::size_t s = 0; s < count(k); ++s) {
            std::map<SimplexId, int> acc;
            for (auto& be : faces(k, static_cast<SimplexId>(s)))
                for (auto& be2 : faces(k - 1, be.face))
                    acc[be2.face] += be.sign * be2.sign;
            for (auto& [f, v] : acc)
                if (v != 0) throw std::logic_error("dd != 0");
        }
    }
    // Coface counts and flag closure.
    for (std::size_t f = 0; f < count(dim_ - 1); ++f) {
        auto cf = cofaces(dim_ - 1, static_cast<SimplexId>(f));
        bool bd = is_boundary(dim_ - 1, static_cast<SimplexId>(f));
        if (bd && cf.size() != 1) throw std::logic_error("boundary face coface count");
        if (!bd && cf.size() != 2) throw std::logic_error("interior face coface count");
    }
    for (int k = 1; k <= dim_ - 1; ++k)
        for (std::size_t s = 0; s < count(k); ++s)
            if (is_boundary(k, static_cast<SimplexId>(s)))
                for (auto& be : faces(k, static_cast<SimplexId>(s)))
                    if (!is_boundary(k - 1, be.face))
                        throw std::logic_error("boundary flags not closed under faces");
}

}  // namespace ymhelix
