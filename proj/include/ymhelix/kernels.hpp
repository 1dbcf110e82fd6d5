#pragma once

// Vector and sparse matrix-vector primitives used by the solvers and the
// cochain inner products. Every kernel has a scalar reference implementation
// and (on x86-64) an AVX2 variant; the active backend is chosen once at
// runtime from CPU capabilities and can be overridden with
// set_backend() or the YMHELIX_KERNELS environment variable
// ("scalar" or "avx2").
//
// All kernels use a fixed reduction order for a given backend, so results
// are bitwise reproducible on the same machine and backend.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ymhelix::kernels {

enum class Backend { Scalar, Avx2 };

// Active backend (auto-detected on first use).
Backend backend();
void set_backend(Backend b);
bool avx2_available();
std::string backend_name();

// y[i] += a * x[i]
void axpy(double a, std::span<const double> x, std::span<double> y);

// y[i] = x[i] + b * y[i]
void xpby(std::span<const double> x, double b, std::span<double> y);

// sum_i x[i] * y[i]
double dot(std::span<const double> x, std::span<const double> y);

// sum_i w[i] * x[i] * y[i]   (diagonal-weighted inner product)
double dot3(std::span<const double> w, std::span<const double> x,
            std::span<const double> y);

// Compressed sparse row matrix, symmetric or general.
struct CsrMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<std::int64_t> row_ptr;  // rows + 1
    std::vector<std::int32_t> col_idx;
    std::vector<double> values;

    void apply(std::span<const double> x, std::span<double> y) const;  // y = A x
    std::vector<double> diagonal() const;
};

// Triplet assembly helper; duplicate entries are summed.
CsrMatrix csr_from_triplets(std::size_t rows, std::size_t cols,
                            std::vector<std::int64_t> is,
                            std::vector<std::int64_t> js,
                            std::vector<double> vs);

namespace detail {
// Reference implementations (always compiled; used in equivalence tests).
void axpy_scalar(double a, std::span<const double> x, std::span<double> y);
void xpby_scalar(std::span<const double> x, double b, std::span<double> y);
double dot_scalar(std::span<const double> x, std::span<const double> y);
double dot3_scalar(std::span<const double> w, std::span<const double> x,
                   std::span<const double> y);
void spmv_scalar(const CsrMatrix& A, std::span<const double> x,
                 std::span<double> y);

#if defined(__x86_64__)
void axpy_avx2(double a, std::span<const double> x, std::span<double> y);
void xpby_avx2(std::span<const double> x, double b, std::span<double> y);
double dot_avx2(std::span<const double> x, std::span<const double> y);
double dot3_avx2(std::span<const double> w, std::span<const double> x,
                 std::span<const double> y);
void spmv_avx2(const CsrMatrix& A, std::span<const double> x,
               std::span<double> y);
#endif
}  // namespace detail

}  // namespace ymhelix::kernels
