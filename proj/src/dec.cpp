#include "ymhelix/dec.hpp"

#include <cmath>
#include <stdexcept>

namespace ymhelix {

namespace {

void require_same(const Cochain& a, const Cochain& b) {
    if (a.complex != b.complex || a.degree != b.degree)
        throw std::invalid_argument("cochain degree/complex mismatch");
}

}  // namespace

Cochain& Cochain::operator+=(const Cochain& o) {
    require_same(*this, o);
    kernels::axpy(1.0, o.values, values);
    return *this;
}

Cochain& Cochain::operator-=(const Cochain& o) {
    require_same(*this, o);
    kernels::axpy(-1.0, o.values, values);
    return *this;
}

Cochain& Cochain::operator*=(double a) {
    for (auto& v : values) v *= a;
    return *this;
}

double Cochain::max_abs() const {
    double m = 0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

Cochain d(const Cochain& alpha) {
    const auto& cx = *alpha.complex;
    const int k = alpha.degree;
    if (k >= cx.dimension())
        throw std::invalid_argument("d: cochain already at top degree");
    Cochain out(cx, k + 1);
    for (std::size_t s = 0; s < cx.count(k + 1); ++s) {
        double acc = 0;
        for (auto& be : cx.faces(k + 1, static_cast<SimplexId>(s)))
            acc += be.sign * alpha[be.face];
        out[static_cast<SimplexId>(s)] = acc;
    }
    return out;
}

Cochain delta(const Cochain& beta, const MetricData& metric) {
    const auto& cx = *beta.complex;
    const int k = beta.degree;
    if (k < 1) throw std::invalid_argument("delta: degree must be >= 1");
    Cochain out(cx, k - 1);
    // (M_{k-1}^{-1} d^T M_k b): scatter signed weighted values to faces.
    for (std::size_t s = 0; s < cx.count(k); ++s) {
        double wv = metric.weight(k, static_cast<SimplexId>(s)) * beta[static_cast<SimplexId>(s)];
        for (auto& be : cx.faces(k, static_cast<SimplexId>(s)))
            out[be.face] += be.sign * wv;
    }
    for (std::size_t f = 0; f < cx.count(k - 1); ++f)
        out[static_cast<SimplexId>(f)] /= metric.weight(k - 1, static_cast<SimplexId>(f));
    return out;
}

double inner(const Cochain& a, const Cochain& b, const MetricData& metric) {
    require_same(a, b);
    return kernels::dot3(metric.weights(a.degree), a.values, b.values);
}

double norm(const Cochain& a, const MetricData& metric) {
    return std::sqrt(std::max(0.0, inner(a, a, metric)));
}

double pair_chain(const Cochain& a, const Chain& c) {
    if (a.degree != c.degree)
        throw std::invalid_argument("chain/cochain degree mismatch");
    double s = 0;
    for (std::size_t i = 0; i < c.simplices.size(); ++i)
        s += static_cast<double>(c.coeffs[i]) * a[c.simplices[i]];
    return s;
}

Cochain cup(const Cochain& alpha, const Cochain& beta) {
    const auto& cx = *alpha.complex;
    if (cx.dimension() != 3) throw std::invalid_argument("cup: dimension 3 only");
    if (alpha.degree != 1 || beta.degree != 2)
        throw std::invalid_argument("cup: expects a 1-cochain and a 2-cochain");
    Cochain out(cx, 3);
    std::array<VertexId, 2> e;
    std::array<VertexId, 3> f;
    for (std::size_t t = 0; t < cx.count(3); ++t) {
        auto v = cx.vertices(3, static_cast<SimplexId>(t));  // sorted v0<v1<v2<v3
        // front edge / back face
        e = {v[0], v[1]};
        f = {v[1], v[2], v[3]};
        double front = alpha[cx.find(1, e)] * beta[cx.find(2, f)];
        // front face / back edge
        std::array<VertexId, 3> f2{v[0], v[1], v[2]};
        std::array<VertexId, 2> e2{v[2], v[3]};
        double back = beta[cx.find(2, f2)] * alpha[cx.find(1, e2)];
        out[static_cast<SimplexId>(t)] = 0.5 * (front + back);
    }
    return out;
}

double integrate(const Cochain& top) {
    const auto& cx = *top.complex;
    if (top.degree != cx.dimension())
        throw std::invalid_argument("integrate: top-degree cochain required");
    double s = 0;
    for (std::size_t c = 0; c < cx.count(cx.dimension()); ++c)
        s += cx.cell_orientation(static_cast<SimplexId>(c)) * top[static_cast<SimplexId>(c)];
    return s;
}

double helicity(const Cochain& alpha) {
    return integrate(cup(alpha, d(alpha)));
}

kernels::CsrMatrix coboundary_matrix(const SimplicialComplex& cx, int k) {
    std::vector<std::int64_t> is, js;
    std::vector<double> vs;
    for (std::size_t s = 0; s < cx.count(k + 1); ++s)
        for (auto& be : cx.faces(k + 1, static_cast<SimplexId>(s))) {
            is.push_back(static_cast<std::int64_t>(s));
            js.push_back(be.face);
            vs.push_back(be.sign);
        }
    return kernels::csr_from_triplets(cx.count(k + 1), cx.count(k), std::move(is),
                                      std::move(js), std::move(vs));
}

StiffnessOperator::StiffnessOperator(const SimplicialComplex& cx,
                                     const MetricData& metric)
    : cx_(&cx), metric_(&metric) {
    const int n = cx.dimension();
    const std::size_t ncells = cx.count(n);
    // Local tables.
    {
        auto f0 = cx.subsimplices(n, 0, 2);
        auto e0 = cx.subsimplices(n, 0, 1);
        nfaces_local_ = f0.size();
        nedges_local_ = e0.size();
    }
    cell_faces_.resize(ncells * nfaces_local_);
    cell_edges_.resize(ncells * nedges_local_);
    face_weight_.resize(ncells * nfaces_local_);

    // The dual volume of a 2-simplex splits over its top cells; the local
    // subsimplex order of MetricData matches subsimplices().
    for (std::size_t c = 0; c < ncells; ++c) {
        auto fs = cx.subsimplices(n, static_cast<SimplexId>(c), 2);
        auto es = cx.subsimplices(n, static_cast<SimplexId>(c), 1);
        for (std::size_t l = 0; l < nfaces_local_; ++l) {
            cell_faces_[c * nfaces_local_ + l] = fs[l];
            double piece = metric.cell_dual_piece(2, static_cast<SimplexId>(c),
                                                  static_cast<int>(l));
            face_weight_[c * nfaces_local_ + l] = piece / metric.volume(2, fs[l]);
        }
        for (std::size_t l = 0; l < nedges_local_; ++l)
            cell_edges_[c * nedges_local_ + l] = es[l];
    }

    // Assemble K = sum_c K_c.
    std::vector<std::int64_t> is, js;
    std::vector<double> vs;
    for (std::size_t c = 0; c < ncells; ++c) {
        for (std::size_t lf = 0; lf < nfaces_local_; ++lf) {
            SimplexId f = cell_faces_[c * nfaces_local_ + lf];
            double w = face_weight_[c * nfaces_local_ + lf];
            auto fe = cx.faces(2, f);
            for (auto& a : fe)
                for (auto& b : fe) {
                    is.push_back(a.face);
                    js.push_back(b.face);
                    vs.push_back(w * a.sign * b.sign);
                }
        }
    }
    K_ = kernels::csr_from_triplets(cx.count(1), cx.count(1), std::move(is),
                                    std::move(js), std::move(vs));
}

std::vector<double> StiffnessOperator::apply(const Cochain& v) const {
    std::vector<double> out(cx_->count(1));
    K_.apply(v.values, out);
    return out;
}

double StiffnessOperator::cell_apply_edge(SimplexId c, SimplexId e,
                                          const Cochain& v) const {
    double acc = 0;
    for (std::size_t lf = 0; lf < nfaces_local_; ++lf) {
        SimplexId f = cell_faces_[static_cast<std::size_t>(c) * nfaces_local_ + lf];
        int sgn = cx_->incidence_sign(2, f, e);
        if (sgn == 0) continue;
        double df = 0;
        for (auto& be : cx_->faces(2, f)) df += be.sign * v[be.face];
        acc += face_weight_[static_cast<std::size_t>(c) * nfaces_local_ + lf] * sgn * df;
    }
    return acc;
}

double StiffnessOperator::cell_energy(SimplexId c, const Cochain& w,
                                      const Cochain& v) const {
    double acc = 0;
    for (std::size_t lf = 0; lf < nfaces_local_; ++lf) {
        SimplexId f = cell_faces_[static_cast<std::size_t>(c) * nfaces_local_ + lf];
        double dw = 0, dv = 0;
        for (auto& be : cx_->faces(2, f)) {
            dw += be.sign * w[be.face];
            dv += be.sign * v[be.face];
        }
        acc += face_weight_[static_cast<std::size_t>(c) * nfaces_local_ + lf] * dw * dv;
    }
    return acc;
}

std::span<const SimplexId> StiffnessOperator::cell_faces(SimplexId c) const {
    return {cell_faces_.data() + static_cast<std::size_t>(c) * nfaces_local_,
            nfaces_local_};
}

std::span<const SimplexId> StiffnessOperator::cell_edges(SimplexId c) const {
    return {cell_edges_.data() + static_cast<std::size_t>(c) * nedges_local_,
            nedges_local_};
}

}  // namespace ymhelix
