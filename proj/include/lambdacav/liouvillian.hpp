#pragma once
// Vectorized Lindblad generator of the model.
//
// Vectorization is column-stacking throughout: vec(rho)_k = rho(i, j)
// with k = j*D + i, so vec(A rho B) = kron(B^T, A) vec(rho). Eigen's
// column-major storage makes vec/unvec a plain reinterpretation.
//
// The master equation generated here is
//
//   d rho/dt = -i [H, rho] + kappa D[a] + Gamma_ge D[sigma_ge]
//              + Gamma_me D[sigma_me] + Gamma_gm D[sigma_gm],
//
// with D[C] rho = C rho C^dag - (C^dag C rho + rho C^dag C)/2. The rates
// are population decay rates: a bare cavity loses photons as exp(-kappa t)
// and the excited state empties at Gamma_ge + Gamma_me. kappa == 1 sets
// the unit system.

#include <stdexcept>

#include <Eigen/Dense>

#include "lambdacav/hamiltonian.hpp"
#include "lambdacav/operators.hpp"
#include "lambdacav/params.hpp"

namespace lambdacav {

using Superoperator = Eigen::MatrixXcd;
using DensityMatrix = Eigen::MatrixXcd;

inline Eigen::VectorXcd vec(const OperatorMatrix& rho) {
    return Eigen::Map<const Eigen::VectorXcd>(rho.data(), rho.size());
}

inline OperatorMatrix unvec(const Eigen::VectorXcd& v) {
    const auto dim = static_cast<Eigen::Index>(std::llround(std::sqrt(double(v.size()))));
    if (dim * dim != v.size())
        throw std::invalid_argument("unvec: length is not a perfect square");
    return Eigen::Map<const OperatorMatrix>(v.data(), dim, dim);
}

inline Superoperator kron(const OperatorMatrix& A, const OperatorMatrix& B) {
    Superoperator out(A.rows() * B.rows(), A.cols() * B.cols());
    for (Eigen::Index i = 0; i < A.rows(); ++i)
        for (Eigen::Index j = 0; j < A.cols(); ++j)
            out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    return out;
}

// rho -> A rho
inline Superoperator spre(const OperatorMatrix& A) {
    return kron(OperatorMatrix::Identity(A.rows(), A.cols()), A);
}

// rho -> rho B
inline Superoperator spost(const OperatorMatrix& B) {
    return kron(B.transpose(), OperatorMatrix::Identity(B.rows(), B.cols()));
}

// rho -> [H, rho]
inline Superoperator commutator_superop(const OperatorMatrix& H) {
    return spre(H) - spost(H);
}

// rho -> rate * (2 C rho C^dag - C^dag C rho - rho C^dag C).
// Note the absence of a 1/2: this form makes a pure cavity decay at
// rate kappa drain the photon number as exp(-2 kappa t).
inline Superoperator dissipator(const OperatorMatrix& C, double rate) {
    if (C.rows() != C.cols()) throw std::invalid_argument("dissipator: C must be square");
    if (rate < 0) throw std::invalid_argument("dissipator: rate must be >= 0");
    const OperatorMatrix CdC = C.adjoint() * C;
    return rate * (2.0 * kron(C.conjugate(), C) - spre(CdC) - spost(CdC));
}

// gamma * D[C] with D[C] rho = C rho C^dag - {C^dag C, rho}/2: gamma is
// the population decay rate of the channel.
inline Superoperator decay_channel(const OperatorMatrix& C, double gamma) {
    return dissipator(C, 0.5 * gamma);
}

inline Superoperator dissipator_sum(const SystemParams& p, const LambdaOperators& ops) {
    constexpr double kappa = 1.0;
    return decay_channel(ops.a, kappa) + decay_channel(ops.sigma_ge, p.gamma_ge) +
           decay_channel(ops.sigma_me, p.gamma_me) + decay_channel(ops.sigma_gm, p.gamma_gm);
}

// Full generator: vec(d rho/dt) = L vec(rho).
inline Superoperator assemble_liouvillian(const SystemParams& p, const LambdaOperators& ops) {
    p.validate();
    const Complex i(0.0, 1.0);
    return -i * commutator_superop(assemble_hamiltonian(p, ops)) + dissipator_sum(p, ops);
}

inline Superoperator assemble_liouvillian(const SystemParams& p) {
    return assemble_liouvillian(p, LambdaOperators(FockTruncation(p.n_max)));
}

// Liouvillian of the sweep family
//   L(delta_p, omega_L) = constant + delta_p * per_delta_p + omega_L * per_omega_L,
// everything else held at the base parameters.
struct LiouvillianTerms {
    Superoperator constant;
    Superoperator per_delta_p;
    Superoperator per_omega_L;
};

inline LiouvillianTerms liouvillian_terms(const SystemParams& p, const LambdaOperators& ops) {
    p.validate();
    const Complex i(0.0, 1.0);
    const HamiltonianTerms h = hamiltonian_terms(p, ops);
    LiouvillianTerms t;
    t.constant = -i * commutator_superop(h.constant) + dissipator_sum(p, ops);
    t.per_delta_p = -i * commutator_superop(h.per_delta_p);
    t.per_omega_L = -i * commutator_superop(h.per_omega_L);
    return t;
}

// vec(I)^dag, the left null vector a trace-preserving generator must have.
inline Eigen::RowVectorXcd trace_row(int dim) {
    Eigen::RowVectorXcd t = Eigen::RowVectorXcd::Zero(dim * dim);
    for (int i = 0; i < dim; ++i) t(i * (dim + 1)) = 1.0;
    return t;
}

}  // namespace lambdacav
