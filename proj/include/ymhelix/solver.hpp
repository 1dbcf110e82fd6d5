#pragma once

// Sparse symmetric solves and small dense near-kernel extraction.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ymhelix/kernels.hpp"

namespace ymhelix {

struct SolveReport {
    long iterations = 0;
    double relative_residual = 0.0;  // true residual, recomputed after the solve
    int kernel_dimension = -1;       // filled only when requested
    double wall_time_sec = 0.0;
    bool converged = false;
};

class SolverError : public std::runtime_error {
  public:
    SolverError(const std::string& what, SolveReport rep)
        : std::runtime_error(what), report(rep) {}
    SolveReport report;
};

struct SolveOptions {
    double tolerance = 1e-12;  // relative to ||b|| (absolute if b == 0)
    long max_iterations = 0;   // 0: 20 * n + 200
    bool jacobi = true;
};

// Index/value constraints eliminated from the system (exact satisfaction).
struct Constraints {
    std::vector<std::int32_t> indices;
    std::vector<double> values;
};

// Conjugate gradients for a symmetric positive-semidefinite system A x = b
// with constrained entries eliminated. Starts from zero, so on a singular
// consistent reduced system the Krylov iterates stay in range(A) and the
// minimum-norm solution is produced. Inconsistent right-hand sides surface
// as residual stagnation.
std::pair<std::vector<double>, SolveReport> solve_spsd(
    const kernels::CsrMatrix& A, const std::vector<double>& b,
    const Constraints& constraints = {}, const SolveOptions& opts = {});

struct NullspaceOptions {
    double threshold = 1e-9;       // relative to the largest eigenvalue
    double min_gap = 1e3;          // required ratio rejected/accepted
    std::size_t max_dimension = 20000;
};

// Orthonormal basis of the near-kernel of a symmetric operator, via dense
// eigendecomposition. When `weights` is given the basis is orthonormal in
// the diagonal inner product <x,y> = sum w_i x_i y_i (the operator must be
// self-adjoint in that product; it is conjugated symmetrically).
// Fails loudly when the spectral gap between accepted and rejected
// eigenvalues is below min_gap.
std::vector<std::vector<double>> nullspace(
    const kernels::CsrMatrix& A, const NullspaceOptions& opts = {},
    const std::vector<double>* weights = nullptr);

}  // namespace ymhelix
