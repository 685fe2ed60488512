#pragma once
// Master-equation propagation and two-time photon correlations.
//
// evolve() integrates vec(rho) through the dense generator with an
// adaptive Cash-Karp 5(4) stepper. propagate_expm() is the independent
// reference path (scaling-and-squaring matrix exponential); keeping both
// catches convention bugs that a single propagation route would hide.
//
// g2_tau() uses the quantum regression theorem: the normalized
// correlation g2(tau) is Tr[n_op exp(L tau) (a rho_ss a^dag)] / n_cav^2.

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>
#include <boost/numeric/odeint.hpp>

#include "lambdacav/liouvillian.hpp"
#include "lambdacav/operators.hpp"
#include "lambdacav/steadystate.hpp"

namespace lambdacav {

struct IntegrationFailure : std::runtime_error {
    double t_fail;
    IntegrationFailure(const std::string& what, double t)
        : std::runtime_error(what + " (at t = " + std::to_string(t) + ")"), t_fail(t) {}
};

struct IntegratorOptions {
    double rel_tol = 1e-8;
    double abs_tol = 1e-10;
    double initial_dt = 1e-4;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<DensityMatrix> states;
    std::vector<double> n_cav;
    std::vector<std::array<double, 3>> populations;  // g, e, m
};

namespace detail {

using OdeState = std::vector<Complex>;

// dx/dt = L x for column-stacked states
struct LinearRhs {
    const Superoperator& L;
    void operator()(const OdeState& x, OdeState& dxdt, double) const {
        dxdt.resize(x.size());
        Eigen::Map<const Eigen::VectorXcd> xv(x.data(), Eigen::Index(x.size()));
        Eigen::Map<Eigen::VectorXcd> dv(dxdt.data(), Eigen::Index(dxdt.size()));
        dv.noalias() = L * xv;
    }
};

template <typename Observer>
inline void integrate_grid(const Superoperator& L, Eigen::VectorXcd v0,
                           const std::vector<double>& t_grid, const IntegratorOptions& opts,
                           Observer&& observe) {
    if (t_grid.empty()) throw std::invalid_argument("time grid must be nonempty");
    if (t_grid.front() < 0) throw std::invalid_argument("time grid must start at t >= 0");
    for (std::size_t k = 1; k < t_grid.size(); ++k)
        if (t_grid[k] <= t_grid[k - 1])
            throw std::invalid_argument("time grid must be strictly increasing");

    OdeState state(v0.data(), v0.data() + v0.size());
    namespace ode = boost::numeric::odeint;
    auto stepper = ode::make_controlled(opts.abs_tol, opts.rel_tol,
                                        ode::runge_kutta_cash_karp54<OdeState>());
    double t_now = t_grid.front();
    try {
        ode::integrate_times(
            stepper, LinearRhs{L}, state, t_grid.begin(), t_grid.end(), opts.initial_dt,
            [&](const OdeState& x, double t) {
                t_now = t;
                observe(Eigen::Map<const Eigen::VectorXcd>(x.data(), Eigen::Index(x.size())), t);
            });
    } catch (const std::overflow_error& e) {
        // odeint signals step-size exhaustion this way
        throw IntegrationFailure(std::string("adaptive step size underflow: ") + e.what(), t_now);
    }
}

}  // namespace detail

inline Trajectory evolve(const DensityMatrix& rho0, const Superoperator& L,
                         const std::vector<double>& t_grid, const LambdaOperators& ops,
                         const IntegratorOptions& opts = {}) {
    if (rho0.rows() != ops.dim() || rho0.cols() != ops.dim())
        throw std::invalid_argument("evolve: rho0 dimension mismatch");
    if (L.rows() != Eigen::Index(ops.dim()) * ops.dim())
        throw std::invalid_argument("evolve: L dimension mismatch");

    Trajectory traj;
    traj.times.reserve(t_grid.size());
    const int fd = ops.trunc.field_dim();
    detail::integrate_grid(L, vec(rho0), t_grid, opts, [&](const auto& xv, double t) {
        DensityMatrix rho = unvec(xv);
        const double trace_err = std::abs(rho.trace() - Complex(1.0, 0.0));
        const double herm_err = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
        if (trace_err > 1e-8 || herm_err > 1e-10)
            throw IntegrationFailure("state left the physical manifold (trace error " +
                                         std::to_string(trace_err) + ", hermiticity error " +
                                         std::to_string(herm_err) + ")",
                                     t);
        traj.times.push_back(t);
        traj.n_cav.push_back((rho * ops.n_photon).trace().real());
        const auto diag = rho.diagonal();
        traj.populations.push_back({diag.segment(0, fd).real().sum(),
                                    diag.segment(fd, fd).real().sum(),
                                    diag.segment(2 * fd, fd).real().sum()});
        traj.states.push_back(std::move(rho));
    });
    return traj;
}

struct G2Point {
    double tau;
    double g2;
    double seed_trace;  // Tr of the regressed operator; constant in tau
};

inline std::vector<G2Point> g2_tau(const DensityMatrix& rho_ss, const Superoperator& L,
                                   const std::vector<double>& tau_grid,
                                   const LambdaOperators& ops,
                                   const IntegratorOptions& opts = {}) {
    const double n_cav = (rho_ss * ops.n_photon).trace().real();
    if (n_cav < g2_vacuum_guard)
        throw std::domain_error("g2_tau: cavity is in vacuum, g2 is undefined");

    const OperatorMatrix seed = ops.a * rho_ss * ops.a.adjoint();
    std::vector<G2Point> out;
    out.reserve(tau_grid.size());
    detail::integrate_grid(L, vec(seed), tau_grid, opts, [&](const auto& xv, double tau) {
        const OperatorMatrix X = unvec(xv);
        out.push_back({tau, (X * ops.n_photon).trace().real() / (n_cav * n_cav),
                       X.trace().real()});
    });
    return out;
}

// Reference propagation through the dense matrix exponential
// (scaling-and-squaring). Quadratic memory in the superoperator size;
// meant for small truncations and cross-checks.
inline Eigen::VectorXcd propagate_expm(const Superoperator& L, double t,
                                       const Eigen::VectorXcd& v0) {
    return (L * t).exp() * v0;
}

inline DensityMatrix propagate_expm(const Superoperator& L, double t, const DensityMatrix& rho0) {
    return unvec(propagate_expm(L, t, Eigen::VectorXcd(vec(rho0))));
}

// Default correlation-delay grid: zero plus log-spaced points.
inline std::vector<double> log_tau_grid(double tau_min = 1e-2, double tau_max = 20.0,
                                        int points = 200) {
    if (!(tau_min > 0) || !(tau_max > tau_min) || points < 2)
        throw std::invalid_argument("log_tau_grid: need 0 < tau_min < tau_max, points >= 2");
    std::vector<double> grid;
    grid.reserve(std::size_t(points));
    grid.push_back(0.0);
    const double l0 = std::log10(tau_min), l1 = std::log10(tau_max);
    for (int k = 0; k < points - 1; ++k)
        grid.push_back(std::pow(10.0, l0 + (l1 - l0) * k / double(points - 2)));
    return grid;
}

}  // namespace lambdacav
