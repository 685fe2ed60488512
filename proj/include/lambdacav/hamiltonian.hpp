#pragma once
// Rotating-frame Hamiltonian of the driven Lambda-atom cavity system:
//
//   H = delta_e sigma_ee + delta_m sigma_mm + delta_c a^dag a
//       + g (a sigma_eg + a^dag sigma_ge)
//       + omega_L (sigma_em + sigma_me)
//       + eta (sigma_eg + sigma_ge)
//
// with delta_e = delta_c = delta_p and delta_m = delta_p - delta_L.
// omega_L and eta are real and non-negative; drive phases add nothing
// to the observables computed here.

#include "lambdacav/operators.hpp"
#include "lambdacav/params.hpp"

namespace lambdacav {

// The Hamiltonian split into the pieces that stay constant over a
// (delta_p, omega_L) sweep and the generators those two multiply:
//   H = constant + delta_p * per_delta_p + omega_L * per_omega_L
struct HamiltonianTerms {
    OperatorMatrix constant;
    OperatorMatrix per_delta_p;  // sigma_ee + sigma_mm + a^dag a
    OperatorMatrix per_omega_L;  // sigma_em + sigma_me
};

inline HamiltonianTerms hamiltonian_terms(const SystemParams& p, const LambdaOperators& ops) {
    p.validate();
    HamiltonianTerms t;
    t.per_delta_p = ops.sigma_ee + ops.sigma_mm + ops.n_photon;
    t.per_omega_L = ops.sigma_em + ops.sigma_me;
    t.constant = -p.delta_L * ops.sigma_mm +
                 p.g * (ops.a * ops.sigma_eg + ops.a.adjoint() * ops.sigma_ge) +
                 p.eta * (ops.sigma_eg + ops.sigma_ge);
    return t;
}

inline OperatorMatrix assemble_hamiltonian(const SystemParams& p, const LambdaOperators& ops) {
    const HamiltonianTerms t = hamiltonian_terms(p, ops);
    return t.constant + p.delta_p * t.per_delta_p + p.omega_L * t.per_omega_L;
}

inline OperatorMatrix assemble_hamiltonian(const SystemParams& p) {
    return assemble_hamiltonian(p, LambdaOperators(FockTruncation(p.n_max)));
}

}  // namespace lambdacav
