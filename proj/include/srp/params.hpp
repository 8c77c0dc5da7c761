#pragma once

#include <optional>

#include "srp/hilbert.hpp"

namespace srp {

// Every scalar of the two-atom models in one validated record.
//
// Unit conventions (also enforced at the CLI boundary):
//  - Rabi frequencies, detunings and couplings quoted as "X/2pi = y MHz"
//    are stored as X = 2*pi*y rad/us (Omega, Omega_s, Omega_B, Omega_R,
//    Omega_w, Delta, J, delta_defect, U_vdw, C3).
//  - Plainly quoted rates and drives ("gamma = 0.1 MHz", "Omega_p = 1.354
//    MHz", lifetimes) are stored without the 2*pi factor, in 1/us
//    (Gamma, gamma_flat, Omega_p, Omega_b); lifetimes are in ms.
struct PhysicalParams {
    double Omega = 0.0;                  // resonant |1>-|r> drive, rad/us
    double Omega_s = 0.0;                // dispersive |0>-|r> drive, rad/us
    std::optional<double> Omega_B;       // blue component, defaults to Omega_s
    std::optional<double> Omega_R;       // red component, defaults to Omega_s
    double Omega_w = 0.0;                // weak ground-ground drive, rad/us
    double Omega_p = 0.0;                // engineered-emission drive, 1/us
    double Omega_b = 0.0;                // recycling pump drive, 1/us
    std::optional<double> Delta;         // one-photon detuning; defaults to sqrt(2)*J
    double J = 0.0;                      // dipole-dipole exchange, rad/us
    double delta_defect = 0.0;           // Foerster defect, rad/us
    double U_vdw = 0.0;                  // van der Waals shift, rad/us
    double C3 = two_pi * 2390.0;         // rad um^3/us  (C3/2pi = 2.39 GHz um^3)
    double R = 0.0;                      // interatomic distance, um
    double Gamma = 0.0;                  // short-lived-state decay, 1/us
    double gamma_flat = 0.0;             // proof-of-principle rate gamma, 1/us
    double tau_r = 0.2;                  // |r> lifetime, ms
    double tau_p1 = 0.48;                // |p'> lifetime, ms
    double tau_p2 = 0.13;                // |p''> lifetime, ms
    double lambda = 1.0;                 // fraction of |r> decay into {|0>,|1>}
    double gamma_split = 0.5;            // gamma_r^0 as fraction of lambda*gamma_r
    double branch0 = 0.5;                // gamma_m^0 as fraction of gamma_m
    std::optional<double> branch1;       // gamma_m^1 fraction; defaults to 1 - branch0

    // Static compensation shifts of the antiblockade comparison model:
    // per-atom |1> shift, Rydberg-pair-manifold shift and extra |11> shift.
    // When unset, analytic defaults derived from Omega_s and Delta are used
    // (the |11> shift defaults to zero; see build_hamiltonian).
    std::optional<double> ab_comp_single;
    std::optional<double> ab_comp_rydberg;
    std::optional<double> ab_comp_pair;

    double resolved_Omega_B() const { return Omega_B.value_or(Omega_s); }
    double resolved_Omega_R() const { return Omega_R.value_or(Omega_s); }
    double resolved_Delta() const;
    double resolved_branch1() const { return branch1.value_or(1.0 - branch0); }

    // Natural rates gamma_m = 1/tau_m in 1/us.
    double gamma_r() const { return 1.0 / (tau_r * 1e3); }
    double gamma_p1() const { return 1.0 / (tau_p1 * 1e3); }
    double gamma_p2() const { return 1.0 / (tau_p2 * 1e3); }

    // Throws std::invalid_argument on out-of-range values.
    void validate() const;
};

}  // namespace srp
