#pragma once
// Deterministic steady-state sweeps over (delta_p, omega_L) grids and the
// grid search for the control intensity minimizing g2(0).
//
// The per-point solve exploits that L is affine in the two swept
// parameters: the three superoperator terms are assembled once, their
// union sparsity pattern is fixed, and every grid point only refreshes
// the stored values and refactorizes. Results are written into
// preassigned slots, so worker count and completion order cannot change
// the output.

#include <algorithm>
#include <cmath>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <thread>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include "lambdacav/liouvillian.hpp"
#include "lambdacav/params.hpp"
#include "lambdacav/steadystate.hpp"

namespace lambdacav {

// Inclusive linear grid start, start+step, ..., stop.
struct Grid {
    double start;
    double stop;
    double step;

    std::size_t size() const {
        if (!(step > 0)) throw std::invalid_argument("Grid: step must be > 0");
        if (stop < start) throw std::invalid_argument("Grid: stop must be >= start");
        return static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    }

    std::vector<double> points() const {
        const std::size_t n = size();
        std::vector<double> p(n);
        for (std::size_t k = 0; k < n; ++k) p[k] = start + double(k) * step;
        return p;
    }
};

struct SweepRecord {
    double delta_p = 0.0;
    double omega_L = 0.0;
    double delta_L = 0.0;
    std::optional<double> n_cav;
    std::optional<double> g2_zero;        // missing in vacuum or on failure
    std::optional<double> log10_g2_zero;
    std::optional<double> pop_g, pop_e, pop_m;
    bool converged = false;  // solve succeeded and truncation trusted
};

// Fixed-pattern sparse solver for one sweep. Not thread-safe; each worker
// owns one.
class SteadyPointSolver {
public:
    explicit SteadyPointSolver(const SystemParams& base)
        : ops_(FockTruncation(base.n_max)), dim_(ops_.dim()) {
        base.validate();
        const LiouvillianTerms terms = liouvillian_terms(base, ops_);
        build_pattern(terms);
        lu_.analyzePattern(matrix_);
        rhs_ = Eigen::VectorXcd::Zero(dim_ * dim_);
        rhs_(0) = 1.0;
    }

    const LambdaOperators& operators() const { return ops_; }

    // Steady state at (delta_p, omega_L); throws SteadyStateError on a
    // failed or unphysical solve.
    DensityMatrix solve(double delta_p, double omega_L) {
        refresh_values(delta_p, omega_L);
        lu_.factorize(matrix_);
        if (lu_.info() != Eigen::Success)
            throw SteadyStateError("sparse LU factorization failed");
        const Eigen::VectorXcd x = lu_.solve(rhs_);
        if (!x.allFinite()) throw SteadyStateError("sparse solve produced non-finite values");

        // residual against the true generator (row 0 of the matrix holds
        // the trace constraint, not L)
        Eigen::VectorXcd r = matrix_ * x;
        r(0) = row0_dot(x);
        double norm_L_sq = row0_norm_sq_;
        for (std::size_t k = 0; k < slots_.size(); ++k)
            if (!slots_[k].trace_entry) norm_L_sq += std::norm(current_value(k));
        const double rel = r.norm() / std::sqrt(norm_L_sq);
        if (rel > 1e-10)
            throw SteadyStateError("steady-state residual too large: " + std::to_string(rel));
        return detail::finalize_state(unvec(x));
    }

    SteadyObservables solve_observables(double delta_p, double omega_L) {
        return observables(solve(delta_p, omega_L), ops_);
    }

private:
    struct Slot {
        Complex v_const, v_dp, v_om;
        bool trace_entry;
    };

    void build_pattern(const LiouvillianTerms& t) {
        const Eigen::Index n2 = Eigen::Index(dim_) * dim_;
        std::vector<Eigen::Triplet<Complex>> trips;
        row0_cols_.clear();
        // Collect column-major so the compressed order matches slots_.
        for (Eigen::Index j = 0; j < n2; ++j) {
            if (j % (dim_ + 1) == 0) {  // trace-constraint entry in row 0
                trips.emplace_back(0, j, Complex(1.0, 0.0));
                slots_.push_back({Complex(1.0, 0.0), {}, {}, true});
            }
            for (Eigen::Index i = 0; i < n2; ++i) {
                const Complex c0 = t.constant(i, j), c1 = t.per_delta_p(i, j),
                              c2 = t.per_omega_L(i, j);
                if (c0 == Complex(0.0) && c1 == Complex(0.0) && c2 == Complex(0.0)) continue;
                if (i == 0) {
                    row0_cols_.push_back({j, c0, c1, c2});
                    continue;  // replaced by the trace constraint
                }
                trips.emplace_back(int(i), int(j), c0);
                slots_.push_back({c0, c1, c2, false});
            }
        }
        matrix_.resize(n2, n2);
        matrix_.setFromTriplets(trips.begin(), trips.end());
        matrix_.makeCompressed();
        if (std::size_t(matrix_.nonZeros()) != slots_.size())
            throw std::logic_error("SteadyPointSolver: pattern/slot mismatch");
    }

    void refresh_values(double dp, double om) {
        dp_ = dp;
        om_ = om;
        Complex* vals = matrix_.valuePtr();
        for (std::size_t k = 0; k < slots_.size(); ++k) vals[k] = current_value(k);
        row0_norm_sq_ = 0.0;
        for (const auto& e : row0_cols_)
            row0_norm_sq_ += std::norm(e.v_const + dp * e.v_dp + om * e.v_om);
    }

    Complex current_value(std::size_t k) const {
        const Slot& s = slots_[k];
        if (s.trace_entry) return Complex(1.0, 0.0);
        return s.v_const + dp_ * s.v_dp + om_ * s.v_om;
    }

    Complex row0_dot(const Eigen::VectorXcd& x) const {
        Complex acc(0.0, 0.0);
        for (const auto& e : row0_cols_) acc += (e.v_const + dp_ * e.v_dp + om_ * e.v_om) * x(e.col);
        return acc;
    }

    struct Row0Entry {
        Eigen::Index col;
        Complex v_const, v_dp, v_om;
    };

    LambdaOperators ops_;
    int dim_;
    Eigen::SparseMatrix<Complex> matrix_;
    std::vector<Slot> slots_;
    std::vector<Row0Entry> row0_cols_;
    Eigen::SparseLU<Eigen::SparseMatrix<Complex>, Eigen::COLAMDOrdering<int>> lu_;
    Eigen::VectorXcd rhs_;
    double dp_ = 0.0, om_ = 0.0;
    double row0_norm_sq_ = 0.0;
};

namespace detail {

inline SweepRecord sweep_point(SteadyPointSolver& solver, const SystemParams& base,
                               double delta_p, double omega_L) {
    SweepRecord rec;
    rec.delta_p = delta_p;
    rec.omega_L = omega_L;
    rec.delta_L = base.delta_L;
    try {
        const SteadyObservables obs = solver.solve_observables(delta_p, omega_L);
        rec.n_cav = obs.n_cav;
        rec.g2_zero = obs.g2_zero;
        if (obs.g2_zero && *obs.g2_zero > 0) rec.log10_g2_zero = std::log10(*obs.g2_zero);
        rec.pop_g = obs.pop_g;
        rec.pop_e = obs.pop_e;
        rec.pop_m = obs.pop_m;
        rec.converged = obs.truncation_converged;
    } catch (const SteadyStateError&) {
        rec.converged = false;  // isolate per-point failures
    }
    return rec;
}

template <typename PointFn>
inline std::vector<SweepRecord> run_sweep(const SystemParams& base, std::size_t n_points,
                                          PointFn&& point_of, int workers) {
    base.validate();
    std::vector<SweepRecord> records(n_points);
    const auto run_range = [&](std::size_t lo, std::size_t hi) {
        SteadyPointSolver solver(base);
        for (std::size_t k = lo; k < hi; ++k) {
            const auto [dp, om] = point_of(k);
            records[k] = sweep_point(solver, base, dp, om);
        }
    };
    const unsigned w =
        std::max(1u, std::min<unsigned>(unsigned(std::max(workers, 1)), unsigned(n_points)));
    if (w <= 1) {
        run_range(0, n_points);
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (n_points + w - 1) / w;
        std::exception_ptr first_error;
        std::mutex error_mutex;
        for (unsigned t = 0; t < w; ++t) {
            const std::size_t lo = t * chunk, hi = std::min(n_points, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back([&, lo, hi] {
                try {
                    run_range(lo, hi);
                } catch (...) {
                    std::lock_guard<std::mutex> g(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        if (first_error) std::rethrow_exception(first_error);
    }
    return records;
}

}  // namespace detail

inline std::vector<SweepRecord> sweep_1d(const SystemParams& base, const Grid& delta_p_grid,
                                         int workers = 1) {
    const std::vector<double> dps = delta_p_grid.points();
    if (dps.empty()) throw std::invalid_argument("sweep_1d: empty grid");
    return detail::run_sweep(
        base, dps.size(),
        [&](std::size_t k) { return std::pair<double, double>(dps[k], base.omega_L); }, workers);
}

// Cross product, omega_L outer / delta_p inner (row-major records).
inline std::vector<SweepRecord> sweep_2d(const SystemParams& base, const Grid& delta_p_grid,
                                         const Grid& omega_L_grid, int workers = 1) {
    const std::vector<double> dps = delta_p_grid.points();
    const std::vector<double> oms = omega_L_grid.points();
    if (dps.empty() || oms.empty()) throw std::invalid_argument("sweep_2d: empty grid");
    return detail::run_sweep(
        base, dps.size() * oms.size(),
        [&](std::size_t k) {
            return std::pair<double, double>(dps[k % dps.size()], oms[k / dps.size()]);
        },
        workers);
}

struct MagicResult {
    double omega_L_star = 0.0;
    double delta_p_star = 0.0;
    double g2_min = 0.0;
    double n_cav_at_min = 0.0;
    double photon_floor = 0.0;
};

struct InfeasibleMagicSearch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Grid argmin of g2(0) subject to n_cav >= photon_floor. No interpolation;
// exact ties break toward smaller omega_L, then smaller |delta_p|.
inline MagicResult find_magic(const SystemParams& base, const Grid& omega_L_grid,
                              const Grid& delta_p_grid, double photon_floor, int workers = 1) {
    if (photon_floor < 0) throw std::invalid_argument("find_magic: photon_floor must be >= 0");
    const std::vector<SweepRecord> records = sweep_2d(base, delta_p_grid, omega_L_grid, workers);

    const SweepRecord* best = nullptr;
    for (const auto& rec : records) {
        if (!rec.converged || !rec.n_cav || !rec.g2_zero) continue;
        if (*rec.n_cav < photon_floor) continue;
        if (!best || *rec.g2_zero < *best->g2_zero ||
            (*rec.g2_zero == *best->g2_zero &&
             (rec.omega_L < best->omega_L ||
              (rec.omega_L == best->omega_L &&
               std::abs(rec.delta_p) < std::abs(best->delta_p)))))
            best = &rec;
    }
    if (!best)
        throw InfeasibleMagicSearch(
            "no grid point reaches photon floor " + std::to_string(photon_floor) +
            "; the feasible set is empty");
    return {best->omega_L, best->delta_p, *best->g2_zero, *best->n_cav, photon_floor};
}

}  // namespace lambdacav
