#pragma once
// Single-excitation-sector structure of the model: the 3x3 block
// Hamiltonian of the n-photon space, its analytic eigensystem at zero
// control detuning, and the bare Jaynes-Cummings reference ladder.
//
// The block lives in the basis {|g,n>, |+,n-1>, |-,n-1>} with
// |+-> = (|m> +- |e>)/sqrt(2):
//
//   H_n = [      0        g sqrt(n/2)   -g sqrt(n/2) ]
//         [ g sqrt(n/2)   omega_L+dL/2      dL/2     ]
//         [ -g sqrt(n/2)      dL/2      -omega_L+dL/2]
//
// Sign convention: within this block the bare |m,n-1> level sits at
// +delta_L (at zero probe detuning). The full model of params.hpp uses
// delta_m = delta_p - delta_L, which places that level at -delta_L; a
// full-model control detuning therefore enters this block with its sign
// flipped. probe_resonances() below does that translation.

#include <array>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "lambdacav/operators.hpp"

namespace lambdacav {

using BlockMatrix = Eigen::Matrix3cd;
using BlockVector = Eigen::Vector3cd;

inline BlockMatrix block_hamiltonian(int n, double g, double omega_L, double delta_L) {
    if (n < 1) throw std::invalid_argument("block_hamiltonian: photon sector n must be >= 1");
    const double c = g * std::sqrt(n / 2.0);
    BlockMatrix h;
    h << 0.0, c, -c,
         c, omega_L + delta_L / 2.0, delta_L / 2.0,
        -c, delta_L / 2.0, -omega_L + delta_L / 2.0;
    return h;
}

// Change of basis for block vectors: {|g,n>, |+,n-1>, |-,n-1>} -> bare
// {|g,n>, |e,n-1>, |m,n-1>}.
inline BlockVector block_to_bare(const BlockVector& v) {
    const double r = 1.0 / std::sqrt(2.0);
    BlockVector out;
    out(0) = v(0);
    out(1) = r * (v(1) - v(2));  // e component
    out(2) = r * (v(1) + v(2));  // m component
    return out;
}

inline BlockVector bare_to_block(const BlockVector& v) {
    const double r = 1.0 / std::sqrt(2.0);
    BlockVector out;
    out(0) = v(0);
    out(1) = r * (v(1) + v(2));  // + component
    out(2) = r * (v(2) - v(1));  // - component
    return out;
}

struct BlockEigen {
    std::array<double, 3> values;       // ascending
    std::array<BlockVector, 3> vectors; // block basis, unit norm
};

// Dense eigensolve of one sector block. Eigenvalues ascending; on exact
// degeneracy the vector with the larger |g,n> amplitude comes first.
inline BlockEigen numeric_block_eigen(const BlockMatrix& h) {
    Eigen::SelfAdjointEigenSolver<BlockMatrix> es(h);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("numeric_block_eigen: eigensolver failed");
    std::array<int, 3> order{0, 1, 2};
    for (int k = 0; k < 2; ++k) {
        const bool tie = es.eigenvalues()(order[k]) == es.eigenvalues()(order[k + 1]);
        if (tie && std::abs(es.eigenvectors().col(order[k])(0)) <
                       std::abs(es.eigenvectors().col(order[k + 1])(0)))
            std::swap(order[k], order[k + 1]);
    }
    BlockEigen out;
    for (int k = 0; k < 3; ++k) {
        out.values[k] = es.eigenvalues()(order[k]);
        out.vectors[k] = es.eigenvectors().col(order[k]);
    }
    return out;
}

struct AnalyticEigen {
    double lambda_minus, lambda_zero, lambda_plus;
    // unit eigenvectors in the bare basis {|g,n>, |e,n-1>, |m,n-1>}
    BlockVector psi_minus, psi_zero, psi_plus;
};

// Closed-form eigensystem of the block at delta_L = 0:
//   lambda_0 = 0, lambda_+- = +-sqrt(omega_L^2 + n g^2).
// The zero-eigenvalue state is dark: it has no |e,n-1> component, so the
// cavity coupling cannot excite it.
inline AnalyticEigen analytic_eigen(int n, double g, double omega_L) {
    if (n < 1) throw std::invalid_argument("analytic_eigen: photon sector n must be >= 1");
    if (!(omega_L > 0))
        throw std::domain_error(
            "analytic_eigen: omega_L = 0 is the degenerate limit; use "
            "block_hamiltonian + numeric_block_eigen instead");
    const double root = std::sqrt(omega_L * omega_L + n * g * g);
    const double c = g * std::sqrt(n / 2.0);

    AnalyticEigen out;
    out.lambda_minus = -root;
    out.lambda_zero = 0.0;
    out.lambda_plus = root;

    BlockVector dark;  // bare basis: amplitude only on |g,n> and |m,n-1>
    dark << 1.0, 0.0, -g * std::sqrt(static_cast<double>(n)) / omega_L;
    out.psi_zero = dark.normalized();

    const auto bright = [&](double lambda) {
        BlockVector v;  // block basis
        v << 1.0, c / (lambda - omega_L), -c / (lambda + omega_L);
        return block_to_bare(v).normalized().eval();
    };
    out.psi_minus = bright(-root);
    out.psi_plus = bright(root);
    return out;
}

struct JaynesCummingsDoublet {
    double lambda_minus, lambda_plus;  // -+ g sqrt(n)
    BlockVector phi_minus, phi_plus;   // bare basis
};

// Reference ladder of the bare atom-cavity subsystem (control off):
// doublets at +-g sqrt(n) with Phi_+- = (+-|g,n> + |e,n-1>)/sqrt(2).
inline JaynesCummingsDoublet jc_ladder(int n, double g) {
    if (n < 1) throw std::invalid_argument("jc_ladder: photon sector n must be >= 1");
    const double split = g * std::sqrt(static_cast<double>(n));
    const double r = 1.0 / std::sqrt(2.0);
    JaynesCummingsDoublet d;
    d.lambda_minus = -split;
    d.lambda_plus = split;
    d.phi_plus << r, r, 0.0;
    d.phi_minus << -r, r, 0.0;
    return d;
}

struct LadderRow {
    double omega_L;
    int n;
    double lambda_minus, lambda_zero, lambda_plus;
};

// Sector eigenvalues over a control-field grid, one row per (omega_L, n),
// ordered omega_L outer / n inner.
inline std::vector<LadderRow> ladder_scan(double g, double delta_L,
                                          const std::vector<double>& omega_L_grid,
                                          const std::vector<int>& sectors) {
    if (omega_L_grid.empty() || sectors.empty())
        throw std::invalid_argument("ladder_scan: grids must be nonempty");
    std::vector<LadderRow> rows;
    rows.reserve(omega_L_grid.size() * sectors.size());
    for (double om : omega_L_grid)
        for (int n : sectors) {
            const BlockEigen e = numeric_block_eigen(block_hamiltonian(n, g, om, delta_L));
            rows.push_back({om, n, e.values[0], e.values[1], e.values[2]});
        }
    return rows;
}

struct EigenLadderEntry {
    int n;
    std::array<double, 3> values;
    std::array<BlockVector, 3> vectors;  // block basis
};

using EigenLadder = std::vector<EigenLadderEntry>;

inline EigenLadder eigen_ladder(double g, double omega_L, double delta_L, int max_sector) {
    if (max_sector < 1) throw std::invalid_argument("eigen_ladder: max_sector must be >= 1");
    EigenLadder ladder;
    ladder.reserve(max_sector);
    for (int n = 1; n <= max_sector; ++n) {
        const BlockEigen e = numeric_block_eigen(block_hamiltonian(n, g, omega_L, delta_L));
        ladder.push_back({n, e.values, e.vectors});
    }
    return ladder;
}

// Probe detunings at which the three n-sector eigenstates of the *full*
// model (params.hpp conventions, probe treated in the n-photon resonance
// condition) cross zero energy: delta_p = -mu_i / n with mu_i the
// eigenvalues of the sector block at flipped control detuning.
inline std::array<double, 3> probe_resonances(int n, double g, double omega_L,
                                              double delta_L_system) {
    const BlockEigen e =
        numeric_block_eigen(block_hamiltonian(n, g, omega_L, -delta_L_system));
    // -mu/n, reordered ascending in delta_p
    return {-e.values[2] / n, -e.values[1] / n, -e.values[0] / n};
}

}  // namespace lambdacav
