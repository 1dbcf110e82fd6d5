#include "ymhelix/generators.hpp"

#include <array>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

namespace ymhelix {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::int8_t embed_orientation(const std::vector<double>& coords, int dim,
                              const std::vector<VertexId>& cell) {
    std::vector<std::vector<double>> pts;
    for (VertexId v : cell) {
        std::vector<double> p(coords.begin() + static_cast<std::size_t>(v) * dim,
                              coords.begin() + static_cast<std::size_t>(v) * dim + dim);
        pts.push_back(std::move(p));
    }
    int s = orientation_sign(pts);
    if (s == 0) throw std::invalid_argument("degenerate cell in generator");
    return static_cast<std::int8_t>(s);
}

}  // namespace

Mesh build_box(int n, const std::vector<int>& resolution,
               const std::vector<double>& edge_lengths) {
    if (n < 2 || n > 4) throw std::invalid_argument("box dimension must be 2..4");
    if (static_cast<int>(resolution.size()) != n ||
        static_cast<int>(edge_lengths.size()) != n)
        throw std::invalid_argument("resolution/edge_lengths arity mismatch");
    for (int r : resolution)
        if (r < 1) throw std::invalid_argument("resolution must be >= 1 per axis");
    for (double L : edge_lengths)
        if (!(L > 0)) throw std::invalid_argument("edge lengths must be positive");

    std::vector<int> vdim(n);
    for (int d = 0; d < n; ++d) vdim[d] = resolution[d] + 1;
    std::size_t nv = 1;
    for (int d = 0; d < n; ++d) nv *= vdim[d];

    auto vid = [&](const std::vector<int>& idx) {
        std::size_t id = 0;
        for (int d = n - 1; d >= 0; --d) id = id * vdim[d] + idx[d];
        return static_cast<VertexId>(id);
    };

    std::vector<double> coords(nv * n);
    {
        std::vector<int> idx(n, 0);
        for (std::size_t v = 0; v < nv; ++v) {
            for (int d = 0; d < n; ++d)
                coords[v * n + d] = edge_lengths[d] * idx[d] / resolution[d];
            for (int d = 0; d < n; ++d) {
                if (++idx[d] < vdim[d]) break;
                idx[d] = 0;
            }
        }
    }

    // Kuhn triangulation: per grid cube, one simplex per axis permutation.
    std::vector<std::vector<VertexId>> cells;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<int> base(n, 0);
    while (true) {
        std::vector<int> p(perm);
        std::sort(p.begin(), p.end());
        do {
            std::vector<VertexId> cell;
            std::vector<int> idx(base);
            cell.push_back(vid(idx));
            for (int k = 0; k < n; ++k) {
                idx[p[k]] += 1;
                cell.push_back(vid(idx));
            }
            cells.push_back(std::move(cell));
        } while (std::next_permutation(p.begin(), p.end()));

        int d = 0;
        for (; d < n; ++d) {
            if (++base[d] < resolution[d]) break;
            base[d] = 0;
        }
        if (d == n) break;
    }

    std::vector<std::int8_t> orient;
    orient.reserve(cells.size());
    for (auto& c : cells) orient.push_back(embed_orientation(coords, n, c));

    Mesh m;
    m.complex = std::make_shared<SimplicialComplex>(n, nv, std::move(cells),
                                                    std::move(orient));
    m.metric = std::make_shared<MetricData>(*m.complex, std::move(coords), n);
    m.name = "box" + std::to_string(n);
    return m;
}

Mesh build_annulus(int radial_resolution, int angular_segments, double r_in,
                   double r_out) {
    if (angular_segments < 3)
        throw std::invalid_argument("annulus needs >= 3 angular segments");
    if (radial_resolution < 1)
        throw std::invalid_argument("annulus needs >= 1 radial layer");
    if (!(0 < r_in && r_in < r_out))
        throw std::invalid_argument("annulus radii must satisfy 0 < r_in < r_out");

    const int R = radial_resolution, A = angular_segments;
    const std::size_t nv = static_cast<std::size_t>(R + 1) * A;
    auto vid = [&](int j, int i) {
        return static_cast<VertexId>(j * A + ((i % A) + A) % A);
    };
    auto ring_of = [&](VertexId v) { return v / A; };
    auto ang_of = [&](VertexId v) { return v % A; };

    std::vector<double> coords(nv * 2);
    for (int j = 0; j <= R; ++j) {
        double r = r_in + (r_out - r_in) * j / R;
        for (int i = 0; i < A; ++i) {
            double th = 2 * kPi * i / A;
            coords[vid(j, i) * 2 + 0] = r * std::cos(th);
            coords[vid(j, i) * 2 + 1] = r * std::sin(th);
        }
    }

    std::vector<std::vector<VertexId>> cells;
    for (int j = 0; j < R; ++j) {
        for (int i = 0; i < A; ++i) {
            VertexId a = vid(j, i), b = vid(j, i + 1);
            VertexId c = vid(j + 1, i), d = vid(j + 1, i + 1);
            cells.push_back({a, b, d});
            cells.push_back({a, d, c});
        }
    }
    std::vector<std::int8_t> orient;
    for (auto& c : cells) orient.push_back(embed_orientation(coords, 2, c));

    Mesh m;
    m.complex = std::make_shared<SimplicialComplex>(2, nv, std::move(cells),
                                                    std::move(orient));
    m.metric = std::make_shared<MetricData>(*m.complex, std::move(coords), 2);
    m.name = "annulus";

    const auto& cx = *m.complex;

    // Absolute H^1 generator: angular winding (branch between i=A-1 and i=0).
    std::vector<double> wind(cx.count(1), 0.0);
    // Relative H^1 generator: radial crossing of the mid circle.
    std::vector<double> cross(cx.count(1), 0.0);
    const int jmid = (R - 1) / 2;  // crossing between rings jmid and jmid+1
    for (std::size_t e = 0; e < cx.count(1); ++e) {
        auto tv = cx.vertices(1, static_cast<SimplexId>(e));
        int iu = ang_of(tv[0]), iv = ang_of(tv[1]);
        if (iu == 0 && iv == A - 1) wind[e] = -1.0;
        else if (iu == A - 1 && iv == 0) wind[e] = 1.0;
        int ju = ring_of(tv[0]), jv = ring_of(tv[1]);
        if (ju <= jmid && jv > jmid) cross[e] = 1.0;
        else if (jv <= jmid && ju > jmid) cross[e] = -1.0;
    }
    m.h1_period_cochains.push_back(std::move(wind));
    m.h1_relative_period_cochains.push_back(std::move(cross));

    // Core cycle: the middle vertex ring, oriented in +theta.
    {
        Chain core;
        core.degree = 1;
        int jc = R / 2;
        for (int i = 0; i < A; ++i) {
            std::array<VertexId, 2> uv{vid(jc, i), vid(jc, i + 1)};
            VertexId lo = std::min(uv[0], uv[1]), hi = std::max(uv[0], uv[1]);
            SimplexId e = cx.find(1, std::array<VertexId, 2>{lo, hi});
            core.simplices.push_back(e);
            core.coeffs.push_back(uv[0] == lo ? 1 : -1);
        }
        m.h1_cycles.push_back(std::move(core));
    }
    // Relative cycle: radial path at i = 0 from inner to outer boundary.
    {
        Chain ray;
        ray.degree = 1;
        for (int j = 0; j < R; ++j) {
            SimplexId e = cx.find(1, std::array<VertexId, 2>{vid(j, 0), vid(j + 1, 0)});
            ray.simplices.push_back(e);
            ray.coeffs.push_back(1);
        }
        m.h1_relative_cycles.push_back(std::move(ray));
    }
    // Generator cut: the same radial path as a jump chain, co-oriented so
    // crossing in +theta counts +1.
    {
        GeneratorCutSpec spec;
        spec.label = "radial-seam";
        for (int j = 0; j < R; ++j) {
            SimplexId e = cx.find(1, std::array<VertexId, 2>{vid(j, 0), vid(j + 1, 0)});
            auto cf = cx.cofaces(1, e);
            if (cf.size() != 2) throw std::logic_error("seam edge not interior");
            SimplexId hi = std::max(cf[0], cf[1]);
            // The cell on the +theta side contains a vertex at angular
            // index 1; the -theta side one at index A-1.
            bool hi_is_plus = false;
            for (VertexId v : cx.vertices(2, hi))
                if (ang_of(v) == 1) hi_is_plus = true;
            spec.faces.push_back(e);
            spec.jumps.push_back(hi_is_plus ? 1.0 : -1.0);
        }
        m.generator_cuts.push_back(std::move(spec));
    }
    return m;
}

Mesh build_solid_torus(int major_segments, int minor_resolution,
                       double major_radius, double minor_radius) {
    if (major_segments < 3)
        throw std::invalid_argument("solid torus needs >= 3 major segments");
    if (minor_resolution < 1)
        throw std::invalid_argument("solid torus needs >= 1 minor ring");
    if (!(minor_radius > 0) || !(major_radius > minor_radius))
        throw std::invalid_argument("solid torus radii degenerate");

    const int S = major_segments, M = minor_resolution;
    const int P = 8;  // angular points per disk ring
    const int disk_nv = 1 + M * P;
    const std::size_t nv = static_cast<std::size_t>(S) * disk_nv;

    // Disk-local vertex layout: 0 = center, ring j point p = 1 + (j-1)*P + p.
    auto disk_id = [&](int j, int p) {
        return j == 0 ? 0 : 1 + (j - 1) * P + ((p % P) + P) % P;
    };
    auto vid = [&](int s, int d) {
        return static_cast<VertexId>(((s % S) + S) % S * disk_nv + d);
    };
    auto section_of = [&](VertexId v) { return v / disk_nv; };

    std::vector<double> coords(nv * 3);
    for (int s = 0; s < S; ++s) {
        double Th = 2 * kPi * s / S;
        for (int d = 0; d < disk_nv; ++d) {
            int j = d == 0 ? 0 : 1 + (d - 1) / P;
            int p = d == 0 ? 0 : (d - 1) % P;
            double rho = minor_radius * j / M;
            double phi = 2 * kPi * p / P;
            double x = rho * std::cos(phi), y = rho * std::sin(phi);
            VertexId v = vid(s, d);
            coords[v * 3 + 0] = (major_radius + x) * std::cos(Th);
            coords[v * 3 + 1] = (major_radius + x) * std::sin(Th);
            coords[v * 3 + 2] = y;
        }
    }

    // Disk triangles (local ids).
    std::vector<std::array<int, 3>> disk_tris;
    for (int p = 0; p < P; ++p)
        disk_tris.push_back({disk_id(0, 0), disk_id(1, p), disk_id(1, p + 1)});
    for (int j = 1; j < M; ++j) {
        for (int p = 0; p < P; ++p) {
            int a = disk_id(j, p), b = disk_id(j, p + 1);
            int c = disk_id(j + 1, p), d = disk_id(j + 1, p + 1);
            disk_tris.push_back({a, b, d});
            disk_tris.push_back({a, d, c});
        }
    }

    // Prisms between consecutive sections, Kuhn-split along the disk-local
    // vertex order so shared quad diagonals agree across prisms and the wrap.
    std::vector<std::vector<VertexId>> cells;
    for (int s = 0; s < S; ++s) {
        for (auto tri : disk_tris) {
            std::array<int, 3> t = tri;
            std::sort(t.begin(), t.end());
            VertexId a0 = vid(s, t[0]), b0 = vid(s, t[1]), c0 = vid(s, t[2]);
            VertexId a1 = vid(s + 1, t[0]), b1 = vid(s + 1, t[1]), c1 = vid(s + 1, t[2]);
            cells.push_back({a0, b0, c0, c1});
            cells.push_back({a0, b0, b1, c1});
            cells.push_back({a0, a1, b1, c1});
        }
    }
    std::vector<std::int8_t> orient;
    for (auto& c : cells) orient.push_back(embed_orientation(coords, 3, c));

    Mesh m;
    m.complex = std::make_shared<SimplicialComplex>(3, nv, std::move(cells),
                                                    std::move(orient));
    m.metric = std::make_shared<MetricData>(*m.complex, std::move(coords), 3);
    m.name = "solidtorus";

    const auto& cx = *m.complex;

    // Toroidal winding cochain: branch between sections S-1 and 0.
    std::vector<double> wind(cx.count(1), 0.0);
    for (std::size_t e = 0; e < cx.count(1); ++e) {
        auto tv = cx.vertices(1, static_cast<SimplexId>(e));
        int su = section_of(tv[0]), sv = section_of(tv[1]);
        if (su == 0 && sv == S - 1) wind[e] = -1.0;
        else if (su == S - 1 && sv == 0) wind[e] = 1.0;
    }
    m.h1_period_cochains.push_back(std::move(wind));

    // Core loop through the section centers.
    Chain core;
    core.degree = 1;
    for (int s = 0; s < S; ++s) {
        VertexId u = vid(s, 0), v = vid(s + 1, 0);
        VertexId lo = std::min(u, v), hi = std::max(u, v);
        SimplexId e = cx.find(1, std::array<VertexId, 2>{lo, hi});
        if (e < 0) throw std::logic_error("missing core edge");
        core.simplices.push_back(e);
        core.coeffs.push_back(u == lo ? 1 : -1);
    }
    m.h1_cycles.push_back(std::move(core));

    // Generator cut: the meridian disk at section 0 (disk triangles are
    // faces of both adjacent prisms), co-oriented in +Theta.
    {
        GeneratorCutSpec spec;
        spec.label = "meridian-disk";
        for (auto tri : disk_tris) {
            std::vector<VertexId> t{vid(0, tri[0]), vid(0, tri[1]), vid(0, tri[2])};
            SimplexId f = cx.find(2, t);
            if (f < 0) throw std::logic_error("missing meridian face");
            auto cf = cx.cofaces(2, f);
            if (cf.size() != 2) throw std::logic_error("meridian face not interior");
            SimplexId hi = std::max(cf[0], cf[1]);
            bool hi_is_plus = false;  // contains a section-1 vertex
            for (VertexId v : cx.vertices(3, hi))
                if (section_of(v) == 1) hi_is_plus = true;
            spec.faces.push_back(f);
            spec.jumps.push_back(hi_is_plus ? 1.0 : -1.0);
        }
        m.generator_cuts.push_back(std::move(spec));
    }
    return m;
}

// ---------------------------------------------------------------------------
// Homology over Q.

namespace {

struct Rat {
    long long n = 0, d = 1;
};

long long gcd_ll(long long a, long long b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        long long t = a % b;
        a = b;
        b = t;
    }
    return a;
}

Rat normalize(__int128 n, __int128 d) {
    if (d < 0) {
        n = -n;
        d = -d;
    }
    __int128 a = n < 0 ? -n : n, b = d;
    while (b) {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    if (a > 1) {
        n /= a;
        d /= a;
    }
    constexpr __int128 lim = 0x7fffffffffffffffLL;
    if (n > lim || n < -lim || d > lim)
        throw std::overflow_error("rational overflow in homology elimination");
    return {static_cast<long long>(n), static_cast<long long>(d)};
}

Rat sub_mul(const Rat& a, const Rat& f, const Rat& b) {
    // a - f*b
    __int128 n = static_cast<__int128>(a.n) * f.d * b.d -
                 static_cast<__int128>(f.n) * b.n * a.d;
    __int128 d = static_cast<__int128>(a.d) * f.d * b.d;
    return normalize(n, d);
}

Rat div_rat(const Rat& a, const Rat& b) {
    __int128 n = static_cast<__int128>(a.n) * b.d;
    __int128 d = static_cast<__int128>(a.d) * b.n;
    return normalize(n, d);
}

}  // namespace

long rational_rank(std::size_t rows, std::size_t cols,
                   const std::vector<std::array<long long, 3>>& triplets) {
    (void)gcd_ll;
    // Sparse rows as ordered maps column -> value.
    std::vector<std::map<long, Rat>> R(rows);
    for (auto& t : triplets) {
        if (t[2] == 0) continue;
        auto& cell = R[t[0]][t[1]];
        cell = normalize(static_cast<__int128>(cell.n) * 1 +
                             static_cast<__int128>(t[2]) * cell.d,
                         cell.d);
    }
    for (auto& row : R)
        for (auto it = row.begin(); it != row.end();)
            it = it->second.n == 0 ? row.erase(it) : std::next(it);

    long rank = 0;
    // Group active rows by leading column; process columns in order.
    std::vector<std::vector<long>> by_lead(cols);
    for (std::size_t r = 0; r < rows; ++r)
        if (!R[r].empty()) by_lead[R[r].begin()->first].push_back(static_cast<long>(r));

    for (std::size_t col = 0; col < cols; ++col) {
        auto& bucket = by_lead[col];
        if (bucket.empty()) continue;
        // Lexicographic tie-breaking: the smallest row index pivots.
        std::sort(bucket.begin(), bucket.end());
        long piv = bucket.front();
        ++rank;
        Rat pv = R[piv].begin()->second;
        for (std::size_t bi = 1; bi < bucket.size(); ++bi) {
            long r = bucket[bi];
            Rat f = div_rat(R[r].begin()->second, pv);
            // row r -= f * pivot row
            auto& row = R[r];
            for (auto& [c, v] : R[piv]) {
                auto it = row.find(c);
                if (it == row.end()) {
                    Rat nv = sub_mul(Rat{0, 1}, f, v);
                    if (nv.n != 0) row[c] = nv;
                } else {
                    it->second = sub_mul(it->second, f, v);
                    if (it->second.n == 0) row.erase(it);
                }
            }
            if (!row.empty()) {
                long lead = row.begin()->first;
                if (lead <= static_cast<long>(col))
                    throw std::logic_error("elimination failed to clear column");
                by_lead[lead].push_back(r);
            }
        }
        bucket.clear();
        bucket.push_back(piv);
    }
    return rank;
}

std::vector<int> betti_numbers(const SimplicialComplex& cx, bool relative) {
    const int n = cx.dimension();
    // Index maps: in relative mode only interior simplices survive.
    std::vector<std::vector<long>> idx(n + 1);
    std::vector<std::size_t> dims(n + 1, 0);
    for (int k = 0; k <= n; ++k) {
        idx[k].assign(cx.count(k), -1);
        for (std::size_t s = 0; s < cx.count(k); ++s) {
            if (relative && cx.is_boundary(k, static_cast<SimplexId>(s))) continue;
            idx[k][s] = static_cast<long>(dims[k]++);
        }
    }

    // rank of boundary maps d_k : C_k -> C_{k-1}
    std::vector<long> rk(n + 2, 0);
    for (int k = 1; k <= n; ++k) {
        std::vector<std::array<long long, 3>> trip;
        for (std::size_t s = 0; s < cx.count(k); ++s) {
            if (idx[k][s] < 0) continue;
            for (auto& be : cx.faces(k, static_cast<SimplexId>(s))) {
                if (idx[k - 1][be.face] < 0) continue;  // project out boundary
                trip.push_back({idx[k - 1][be.face], idx[k][s],
                                static_cast<long long>(be.sign)});
            }
        }
        // Rank is orientation-independent; eliminate along the smaller side.
        if (dims[k - 1] <= dims[k]) {
            for (auto& t : trip) std::swap(t[0], t[1]);
            rk[k] = rational_rank(dims[k], dims[k - 1], trip);
        } else {
            rk[k] = rational_rank(dims[k - 1], dims[k], trip);
        }
    }

    std::vector<int> betti(n + 1, 0);
    for (int k = 0; k <= n; ++k)
        betti[k] = static_cast<int>(static_cast<long>(dims[k]) - rk[k] - rk[k + 1]);
    return betti;
}

}  // namespace ymhelix
