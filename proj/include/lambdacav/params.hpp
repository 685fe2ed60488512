#pragma once
// Physical parameters of the driven Lambda-atom cavity model.
//
// Everything is dimensionless in units of the cavity linewidth kappa
// (kappa == 1 internally): rates, Rabi frequencies and detunings alike.
// kappa is the photon-number decay rate of the bare cavity, and the
// gamma_* are population decay rates of their channels (see
// liouvillian.hpp for the precise generator).

#include <stdexcept>
#include <string>
#include <vector>

namespace lambdacav {

struct SystemParams {
    double g = 10.0;        // atom-cavity coupling
    double eta = 0.1;       // probe Rabi frequency, drives |g> <-> |e>
    double omega_L = 0.0;   // control Rabi frequency, drives |m> <-> |e>
    double delta_p = 0.0;   // probe detuning
    double delta_L = 0.0;   // control detuning
    double gamma_ge = 1.5;  // |e> -> |g> decay
    double gamma_me = 1.5;  // |e> -> |m> decay
    double gamma_gm = 5e-4; // |m> -> |g> decay
    int n_max = 8;          // Fock truncation

    // Derived detunings. The cavity is resonant with the g-e transition,
    // so the cavity and excited-state detunings both equal delta_p; the
    // two-photon (Raman) detuning of |m> is delta_p - delta_L.
    double delta_e() const { return delta_p; }
    double delta_c() const { return delta_p; }
    double delta_m() const { return delta_p - delta_L; }

    void validate() const {
        if (!(g > 0)) throw std::invalid_argument("SystemParams: g must be > 0");
        if (eta < 0) throw std::invalid_argument("SystemParams: eta must be >= 0");
        if (omega_L < 0) throw std::invalid_argument("SystemParams: omega_L must be >= 0");
        if (gamma_ge < 0) throw std::invalid_argument("SystemParams: gamma_ge must be >= 0");
        if (gamma_me < 0) throw std::invalid_argument("SystemParams: gamma_me must be >= 0");
        if (gamma_gm < 0) throw std::invalid_argument("SystemParams: gamma_gm must be >= 0");
        if (n_max < 1) throw std::invalid_argument("SystemParams: n_max must be >= 1");
    }

    // Non-fatal diagnostics. A strong probe needs a deeper Fock ladder;
    // below n_max = 10 the truncation error grows quickly once eta
    // exceeds about half a linewidth.
    std::vector<std::string> warnings() const {
        std::vector<std::string> w;
        if (eta > 0.5 && n_max < 10)
            w.push_back("probe drive eta = " + std::to_string(eta) +
                        " is strong for n_max = " + std::to_string(n_max) +
                        "; check truncation convergence");
        return w;
    }
};

}  // namespace lambdacav
