#include "ymhelix/kernels.hpp"

#include <algorithm>
#include <cassert>
#include <cstdlib>
#include <numeric>
#include <stdexcept>

namespace ymhelix::kernels {

namespace detail {

void axpy_scalar(double a, std::span<const double> x, std::span<double> y) {
    const std::size_t n = x.size();
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void xpby_scalar(std::span<const double> x, double b, std::span<double> y) {
    const std::size_t n = x.size();
    for (std::size_t i = 0; i < n; ++i) y[i] = x[i] + b * y[i];
}

// Four-way striped accumulation: matches the lane structure of the AVX2
// kernel so both backends agree to rounding of the final 4-term sum.
double dot_scalar(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    double s0 = 0, s1 = 0, s2 = 0, s3 = 0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        s0 += x[i] * y[i];
        s1 += x[i + 1] * y[i + 1];
        s2 += x[i + 2] * y[i + 2];
        s3 += x[i + 3] * y[i + 3];
    }
    for (; i < n; ++i) s0 += x[i] * y[i];
    return (s0 + s1) + (s2 + s3);
}

double dot3_scalar(std::span<const double> w, std::span<const double> x,
                   std::span<const double> y) {
    const std::size_t n = x.size();
    double s0 = 0, s1 = 0, s2 = 0, s3 = 0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        s0 += w[i] * x[i] * y[i];
        s1 += w[i + 1] * x[i + 1] * y[i + 1];
        s2 += w[i + 2] * x[i + 2] * y[i + 2];
        s3 += w[i + 3] * x[i + 3] * y[i + 3];
    }
    for (; i < n; ++i) s0 += w[i] * x[i] * y[i];
    return (s0 + s1) + (s2 + s3);
}

void spmv_scalar(const CsrMatrix& A, std::span<const double> x,
                 std::span<double> y) {
    for (std::size_t r = 0; r < A.rows; ++r) {
        double s = 0;
        const auto b = A.row_ptr[r], e = A.row_ptr[r + 1];
        for (auto k = b; k < e; ++k) s += A.values[k] * x[A.col_idx[k]];
        y[r] = s;
    }
}

}  // namespace detail

namespace {

Backend detect_backend() {
    const char* env = std::getenv("YMHELIX_KERNELS");
    if (env) {
        std::string v(env);
        if (v == "scalar") return Backend::Scalar;
        if (v == "avx2" && avx2_available()) return Backend::Avx2;
    }
    return avx2_available() ? Backend::Avx2 : Backend::Scalar;
}

Backend& backend_state() {
    static Backend b = detect_backend();
    return b;
}

}  // namespace

bool avx2_available() {
#if defined(__x86_64__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Backend backend() { return backend_state(); }

void set_backend(Backend b) {
    if (b == Backend::Avx2 && !avx2_available())
        throw std::runtime_error("AVX2 backend requested but not available");
    backend_state() = b;
}

std::string backend_name() {
    return backend() == Backend::Avx2 ? "avx2" : "scalar";
}

void axpy(double a, std::span<const double> x, std::span<double> y) {
    assert(x.size() == y.size());
#if defined(__x86_64__)
    if (backend() == Backend::Avx2) return detail::axpy_avx2(a, x, y);
#endif
    detail::axpy_scalar(a, x, y);
}

void xpby(std::span<const double> x, double b, std::span<double> y) {
    assert(x.size() == y.size());
#if defined(__x86_64__)
    if (backend() == Backend::Avx2) return detail::xpby_avx2(x, b, y);
#endif
    detail::xpby_scalar(x, b, y);
}

double dot(std::span<const double> x, std::span<const double> y) {
    assert(x.size() == y.size());
#if defined(__x86_64__)
    if (backend() == Backend::Avx2) return detail::dot_avx2(x, y);
#endif
    return detail::dot_scalar(x, y);
}

double dot3(std::span<const double> w, std::span<const double> x,
            std::span<const double> y) {
    assert(w.size() == x.size() && x.size() == y.size());
#if defined(__x86_64__)
    if (backend() == Backend::Avx2) return detail::dot3_avx2(w, x, y);
#endif
    return detail::dot3_scalar(w, x, y);
}

void CsrMatrix::apply(std::span<const double> x, std::span<double> y) const {
    assert(x.size() == cols && y.size() == rows);
#if defined(__x86_64__)
    if (backend() == Backend::Avx2) return detail::spmv_avx2(*this, x, y);
#endif
    detail::spmv_scalar(*this, x, y);
}

std::vector<double> CsrMatrix::diagonal() const {
    std::vector<double> d(rows, 0.0);
    for (std::size_t r = 0; r < rows && r < cols; ++r) {
        for (auto k = row_ptr[r]; k < row_ptr[r + 1]; ++k)
            if (static_cast<std::size_t>(col_idx[k]) == r) d[r] += values[k];
    }
    return d;
}

CsrMatrix csr_from_triplets(std::size_t rows, std::size_t cols,
                            std::vector<std::int64_t> is,
                            std::vector<std::int64_t> js,
                            std::vector<double> vs) {
    assert(is.size() == js.size() && js.size() == vs.size());
    const std::size_t nnz_in = is.size();
    std::vector<std::size_t> order(nnz_in);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (is[a] != is[b]) return is[a] < is[b];
        return js[a] < js[b];
    });

    CsrMatrix A;
    A.rows = rows;
    A.cols = cols;
    A.row_ptr.assign(rows + 1, 0);
    A.col_idx.reserve(nnz_in);
    A.values.reserve(nnz_in);

    std::size_t k = 0;
    for (std::size_t r = 0; r < rows; ++r) {
        A.row_ptr[r] = static_cast<std::int64_t>(A.values.size());
        while (k < nnz_in && is[order[k]] == static_cast<std::int64_t>(r)) {
            const auto j = js[order[k]];
            double v = vs[order[k]];
            ++k;
            while (k < nnz_in && is[order[k]] == static_cast<std::int64_t>(r) &&
                   js[order[k]] == j) {
                v += vs[order[k]];
                ++k;
            }
            A.col_idx.push_back(static_cast<std::int32_t>(j));
            A.values.push_back(v);
        }
    }
    A.row_ptr[rows] = static_cast<std::int64_t>(A.values.size());
    return A;
}

}  // namespace ymhelix::kernels
