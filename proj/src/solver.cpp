#include "ymhelix/solver.hpp"

#include <chrono>
#include <cmath>

#include <Eigen/Dense>

namespace ymhelix {

using kernels::axpy;
using kernels::dot;
using kernels::xpby;

namespace {

// Reduced operator: A restricted to free indices, with constrained columns
// folded into the right-hand side.
struct Reduced {
    kernels::CsrMatrix A;
    std::vector<double> b;
    std::vector<std::int32_t> free_of_full;  // free index -> full index
};

Reduced reduce(const kernels::CsrMatrix& A, const std::vector<double>& b,
               const Constraints& cons) {
    const std::size_t n = A.rows;
    std::vector<double> fixed_val(n, 0.0);
    std::vector<std::uint8_t> is_fixed(n, 0);
    for (std::size_t i = 0; i < cons.indices.size(); ++i) {
        is_fixed[cons.indices[i]] = 1;
        fixed_val[cons.indices[i]] = cons.values[i];
    }
    Reduced r;
    std::vector<std::int32_t> full_to_free(n, -1);
    for (std::size_t i = 0; i < n; ++i)
        if (!is_fixed[i]) {
            full_to_free[i] = static_cast<std::int32_t>(r.free_of_full.size());
            r.free_of_full.push_back(static_cast<std::int32_t>(i));
        }

    const std::size_t m = r.free_of_full.size();
    r.b.assign(m, 0.0);
    std::vector<std::int64_t> is, js;
    std::vector<double> vs;
    for (std::size_t fi = 0; fi < m; ++fi) {
        const std::size_t row = r.free_of_full[fi];
        double rhs = b[row];
        for (auto k = A.row_ptr[row]; k < A.row_ptr[row + 1]; ++k) {
            const auto col = A.col_idx[k];
            if (is_fixed[col]) {
                rhs -= A.values[k] * fixed_val[col];
            } else {
                is.push_back(static_cast<std::int64_t>(fi));
                js.push_back(full_to_free[col]);
                vs.push_back(A.values[k]);
            }
        }
        r.b[fi] = rhs;
    }
    r.A = kernels::csr_from_triplets(m, m, std::move(is), std::move(js), std::move(vs));
    return r;
}

}  // namespace

std::pair<std::vector<double>, SolveReport> solve_spsd(
    const kernels::CsrMatrix& A, const std::vector<double>& b,
    const Constraints& cons, const SolveOptions& opts) {
    const auto t0 = std::chrono::steady_clock::now();
    Reduced red = reduce(A, b, cons);
    const std::size_t m = red.A.rows;

    std::vector<double> x(m, 0.0), r(red.b), z(m), p(m), q(m);
    std::vector<double> dinv(m, 1.0);
    if (opts.jacobi) {
        auto diag = red.A.diagonal();
        for (std::size_t i = 0; i < m; ++i)
            dinv[i] = diag[i] > 0 ? 1.0 / diag[i] : 1.0;
    }

    const double bnorm = std::sqrt(dot(red.b, red.b));
    const double stop = opts.tolerance * (bnorm > 0 ? bnorm : 1.0);
    const long maxit =
        opts.max_iterations > 0 ? opts.max_iterations : 20 * static_cast<long>(m) + 200;

    SolveReport rep;
    double rz = 0;
    double best = std::sqrt(dot(r, r));
    long stagnant = 0;
    if (best > stop) {
        for (std::size_t i = 0; i < m; ++i) z[i] = dinv[i] * r[i];
        p = z;
        rz = dot(r, z);
        for (long it = 1; it <= maxit; ++it) {
            red.A.apply(p, q);
            const double pq = dot(p, q);
            if (!(pq > 0)) {
                // Direction of (numerical) zero curvature: singular system
                // exhausted its consistent component.
                rep.iterations = it;
                break;
            }
            const double alpha = rz / pq;
            axpy(alpha, p, x);
            axpy(-alpha, q, r);
            const double rnorm = std::sqrt(dot(r, r));
            rep.iterations = it;
            if (rnorm < stop) break;
            if (rnorm < best * (1 - 1e-12)) {
                best = rnorm;
                stagnant = 0;
            } else if (++stagnant > 50 + static_cast<long>(m) / 4) {
                break;  // stagnation: inconsistent right-hand side
            }
            for (std::size_t i = 0; i < m; ++i) z[i] = dinv[i] * r[i];
            const double rz_new = dot(r, z);
            const double beta = rz_new / rz;
            rz = rz_new;
            xpby(z, beta, p);
        }
    }

    // Assemble the full vector and recompute the true residual.
    std::vector<double> full(A.rows, 0.0);
    for (std::size_t i = 0; i < cons.indices.size(); ++i)
        full[cons.indices[i]] = cons.values[i];
    for (std::size_t i = 0; i < m; ++i) full[red.free_of_full[i]] = x[i];

    std::vector<double> Ax(A.rows);
    A.apply(full, Ax);
    double rr = 0;
    for (std::size_t i = 0; i < m; ++i) {
        const double d = b[red.free_of_full[i]] - Ax[red.free_of_full[i]];
        rr += d * d;
    }
    rep.relative_residual = std::sqrt(rr) / (bnorm > 0 ? bnorm : 1.0);
    rep.converged = rep.relative_residual <= 10 * opts.tolerance;
    rep.wall_time_sec =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    if (!rep.converged)
        throw SolverError("conjugate gradient did not converge (residual " +
                              std::to_string(rep.relative_residual) + ")",
                          rep);
    return {std::move(full), rep};
}

std::vector<std::vector<double>> nullspace(const kernels::CsrMatrix& A,
                                           const NullspaceOptions& opts,
                                           const std::vector<double>* weights) {
    const std::size_t n = A.rows;
    if (n > opts.max_dimension)
        throw SolverError("nullspace: operator dimension exceeds the dense cap",
                          SolveReport{});

    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (auto k = A.row_ptr[r]; k < A.row_ptr[r + 1]; ++k)
            M(r, A.col_idx[k]) += A.values[k];

    Eigen::VectorXd wsqrt, winv;
    if (weights) {
        wsqrt.resize(n);
        winv.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            wsqrt[i] = std::sqrt((*weights)[i]);
            winv[i] = 1.0 / wsqrt[i];
        }
        // Conjugate to the weighted inner product: W^{-1/2} M W^{-1/2}.
        M = winv.asDiagonal() * M * winv.asDiagonal();
    }
    M = 0.5 * (M + M.transpose());

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(M);
    if (eig.info() != Eigen::Success)
        throw SolverError("nullspace: eigendecomposition failed", SolveReport{});
    const Eigen::VectorXd& ev = eig.eigenvalues();
    const double lmax = std::max(std::abs(ev[0]), std::abs(ev[n - 1]));
    const double cut = opts.threshold * (lmax > 0 ? lmax : 1.0);

    std::vector<std::size_t> accepted;
    double acc_max = 0, rej_min = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        const double lam = std::abs(ev[i]);
        if (lam < cut) {
            accepted.push_back(i);
            acc_max = std::max(acc_max, lam);
        } else {
            rej_min = std::min(rej_min, lam);
        }
    }
    if (!accepted.empty() && std::isfinite(rej_min)) {
        const double gap = acc_max > 0 ? rej_min / acc_max
                                       : std::numeric_limits<double>::infinity();
        if (gap < opts.min_gap)
            throw SolverError("nullspace: spectral gap " + std::to_string(gap) +
                                  " below the required ratio",
                              SolveReport{});
    }

    std::vector<std::vector<double>> basis;
    for (std::size_t i : accepted) {
        Eigen::VectorXd v = eig.eigenvectors().col(i);
        if (weights) v = winv.asDiagonal() * v;  // W-orthonormal
        basis.emplace_back(v.data(), v.data() + n);
    }
    return basis;
}

}  // namespace ymhelix
