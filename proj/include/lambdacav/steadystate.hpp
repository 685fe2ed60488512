#pragma once
// Steady-state solve L vec(rho) = 0 with unit trace, plus the
// steady-state observables.
//
// Two independent routes are provided on purpose:
//   solve_steady          - replace one row of L by the trace constraint,
//                           dense LU (the workhorse);
//   solve_steady_nullspace - SVD null-space extraction (the cross-check).

#include <cmath>
#include <optional>
#include <stdexcept>

#include <Eigen/Dense>

#include "lambdacav/liouvillian.hpp"
#include "lambdacav/operators.hpp"
#include "lambdacav/params.hpp"

namespace lambdacav {

struct SteadyStateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The zero eigenvalue of L is degenerate: there is no unique steady state.
struct NonUniqueSteadyState : SteadyStateError {
    using SteadyStateError::SteadyStateError;
};

namespace detail {

// Hermitize, normalize the trace exactly, and reject states that are not
// positive semidefinite beyond tolerance.
inline DensityMatrix finalize_state(DensityMatrix rho, double min_eig_tol = -1e-8) {
    rho = 0.5 * (rho + rho.adjoint()).eval();
    const double tr = rho.trace().real();
    if (!(std::abs(tr) > 1e-12))
        throw SteadyStateError("steady state has (near-)zero trace; solve is degenerate");
    rho /= tr;
    Eigen::SelfAdjointEigenSolver<DensityMatrix> es(rho, Eigen::EigenvaluesOnly);
    const double min_eig = es.eigenvalues().minCoeff();
    if (min_eig < min_eig_tol)
        throw SteadyStateError("steady state is not positive semidefinite: min eigenvalue " +
                               std::to_string(min_eig));
    return rho;
}

// Number of (near-)zero singular values of L, used to diagnose a failed
// solve: nullity >= 2 means a degenerate steady manifold.
inline int liouvillian_nullity(const Superoperator& L) {
    Eigen::JacobiSVD<Superoperator> svd(L);
    const auto& sv = svd.singularValues();
    const double tol = sv(0) * 1e-10 * std::sqrt(double(L.rows()));
    int nullity = 0;
    for (Eigen::Index k = 0; k < sv.size(); ++k)
        if (sv(k) <= tol) ++nullity;
    return nullity;
}

}  // namespace detail

inline DensityMatrix solve_steady(const Superoperator& L) {
    const auto dim2 = L.rows();
    const int dim = static_cast<int>(std::llround(std::sqrt(double(dim2))));
    if (Eigen::Index(dim) * dim != dim2 || L.cols() != dim2)
        throw std::invalid_argument("solve_steady: L must be D^2 x D^2");

    Superoperator A = L;
    A.row(0) = trace_row(dim);
    Eigen::VectorXcd b = Eigen::VectorXcd::Zero(dim2);
    b(0) = 1.0;

    const Eigen::VectorXcd x = Eigen::PartialPivLU<Superoperator>(A).solve(b);
    const double residual = (L * x).norm();
    const double scale = L.norm();
    if (!x.allFinite() || residual > 1e-10 * scale) {
        if (detail::liouvillian_nullity(L) >= 2)
            throw NonUniqueSteadyState(
                "Liouvillian has a degenerate zero eigenvalue; steady state is not unique");
        throw SteadyStateError("steady-state solve failed: residual " +
                               std::to_string(residual / scale) + " (relative)");
    }
    return detail::finalize_state(unvec(x));
}

inline DensityMatrix solve_steady_nullspace(const Superoperator& L) {
    Eigen::JacobiSVD<Superoperator> svd(L, Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const Eigen::Index last = sv.size() - 1;
    const double tol = sv(0) * 1e-10 * std::sqrt(double(L.rows()));
    if (last >= 1 && sv(last - 1) <= tol)
        throw NonUniqueSteadyState(
            "Liouvillian has a degenerate zero eigenvalue; steady state is not unique");
    if (sv(last) > tol)
        throw SteadyStateError("null-space solve: smallest singular value " +
                               std::to_string(sv(last)) + " is not numerically zero");
    return detail::finalize_state(unvec(svd.matrixV().col(last)));
}

struct SteadyObservables {
    double n_cav = 0.0;
    std::optional<double> g2_zero;  // empty below the vacuum guard
    double pop_g = 0.0, pop_e = 0.0, pop_m = 0.0;
    bool truncation_converged = true;  // n_cav <= n_max / 2
};

// Vacuum guard: g2(0) is a 0/0 quotient in exact vacuum.
inline constexpr double g2_vacuum_guard = 1e-14;

inline SteadyObservables observables(const DensityMatrix& rho, const LambdaOperators& ops) {
    SteadyObservables out;
    out.n_cav = (rho * ops.n_photon).trace().real();
    if (out.n_cav >= g2_vacuum_guard) {
        const OperatorMatrix ad = ops.a.adjoint();
        const double num = (rho * ad * ad * ops.a * ops.a).trace().real();
        out.g2_zero = num / (out.n_cav * out.n_cav);
    }
    const int fd = ops.trunc.field_dim();
    const auto diag = rho.diagonal();
    out.pop_g = diag.segment(0, fd).real().sum();
    out.pop_e = diag.segment(fd, fd).real().sum();
    out.pop_m = diag.segment(2 * fd, fd).real().sum();
    out.truncation_converged = out.n_cav <= 0.5 * ops.trunc.n_max;
    return out;
}

inline SteadyObservables observables(const DensityMatrix& rho, const SystemParams& p) {
    return observables(rho, LambdaOperators(FockTruncation(p.n_max)));
}

}  // namespace lambdacav
