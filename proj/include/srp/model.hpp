#pragma once

#include <string>
#include <vector>

#include "srp/hilbert.hpp"
#include "srp/params.hpp"

namespace srp {

// Time coefficient amplitude * exp(i*(omega*t + phase)).
struct DriveCoefficient {
    cplx amplitude{0.0, 0.0};        // rad/us
    double angular_frequency = 0.0;  // rad/us
    double phase = 0.0;              // rad

    cplx operator()(double t) const {
        return amplitude * std::polar(1.0, angular_frequency * t + phase);
    }
    bool is_static() const { return angular_frequency == 0.0; }
};

// One drive term. With hermitian_closure the term contributes
// c(t) * op + conj(c(t)) * op^dag; without it the operator itself must be
// Hermitian and the coefficient real and static (diagonal shifts).
struct HamiltonianTerm {
    Operator op;
    DriveCoefficient coeff;
    bool hermitian_closure = true;
    std::string label;
};

// Sum of drive terms on a fixed space; H(t) is Hermitian for all t.
class HamiltonianSpec {
public:
    HamiltonianSpec(HilbertSpace space, std::vector<HamiltonianTerm> terms);

    const HilbertSpace& space() const { return space_; }
    const std::vector<HamiltonianTerm>& terms() const { return terms_; }

    // Dense H(t).
    Matrix evaluate(double t) const;

    // Largest |angular_frequency| among drive terms.
    double max_drive_frequency() const;
    // Gershgorin-style bound on the eigenvalue scale with all drive
    // amplitudes at modulus; used for integrator step selection.
    double magnitude_scale() const;

private:
    HilbertSpace space_;
    std::vector<HamiltonianTerm> terms_;
};

// Jump operator with a nonnegative rate (1/us).
struct DecayChannel {
    Operator jump;
    double rate = 0.0;
    std::string label;
};

// One tag per implemented equation of the paper.
enum class ModelVariant {
    FullSRP,                    // Eq. (1)
    FullWithDefect,             // Eq. (6) defect block added to Eq. (1)
    IntermediateEffective,      // Eq. (3)
    EffectiveSRP,               // Eq. (4)
    VdwComparison,              // Sec. III.A van der Waals model
    Antiblockade,               // Fig. 3(b) comparison model
    GroundBlockadeEffective,    // Eq. (9)
    GroundBlockadeSubspace,     // Eq. (10)
    EffectiveDissipative,       // Eq. (11) (Hamiltonian = Eq. (9))
    FullDissipative,            // Eqs. (12)-(13)
    RecyclingFull,              // Eq. (19)
    EngineeredDecaySingleAtom,  // Eq. (14)
};

const char* variant_name(ModelVariant v);

// Fixed level set per variant (golden matrix indices depend on it).
HilbertSpace default_space(ModelVariant v);
// Space used by the variant's decay channels (may add the leakage level).
HilbertSpace default_dissipative_space(ModelVariant v);

HamiltonianSpec build_hamiltonian(ModelVariant v, const PhysicalParams& p);
HamiltonianSpec build_hamiltonian(ModelVariant v, const PhysicalParams& p,
                                  const HilbertSpace& space);

std::vector<DecayChannel> build_decay_channels(ModelVariant v, const PhysicalParams& p);
std::vector<DecayChannel> build_decay_channels(ModelVariant v, const PhysicalParams& p,
                                               const HilbertSpace& space);

// All-Rydberg leakage at natural rates (the ground-state-blockade setting:
// every Rydberg level decays out of the computational basis).
std::vector<DecayChannel> natural_leak_channels(const HilbertSpace& space,
                                                const PhysicalParams& p);

// Engineered emission rates (gamma_eff^0, gamma_eff^1) = (0.6, 0.4)*4*Omega_p^2/Gamma.
std::pair<double, double> engineered_rates(double omega_p, double gamma_big);

// J = C3 / R^3.
double dipole_coupling_from_distance(double c3, double r_um);

struct FoersterDeviation {
    double exact;   // |sqrt(2) J - (delta + sqrt(8 J^2 + delta^2))/2|
    double approx;  // delta/2 + sqrt(2) delta^2 / (16 J)
};
FoersterDeviation foerster_deviation(double j, double delta);

// Named dressed states of the SRP level structure plus the Bell pair.
struct DressedBasis {
    StateVector T0, S0;                  // (|r0> +- |0r>)/sqrt(2)
    StateVector E_plus, E_minus;         // [sqrt(2)|rr> +- (|p'p''> + |p''p'>)]/2
    StateVector alpha_plus, alpha_minus; // eigenvectors of the Omega_s block
    StateVector beta_plus, beta_minus;
    StateVector psi_plus, psi_minus;     // (|01> +- |10>)/sqrt(2)
};
DressedBasis dressed_basis(const HilbertSpace& space);

// Bell states and the bright Rydberg state on spaces without the p levels.
StateVector bell_psi_plus(const HilbertSpace& space);
StateVector bell_psi_minus(const HilbertSpace& space);
StateVector bright_state(const HilbertSpace& space);  // (|r1> + |1r>)/sqrt(2)

struct SrpConditionReport {
    double delta_residual;        // Delta - sqrt(2) J
    double ratio_delta_omega_s;   // Delta / Omega_s
    double ratio_omega_s_omega;   // Omega_s / Omega
    std::vector<std::string> warnings;
    bool ok() const { return warnings.empty(); }
};
// Checks Delta = sqrt(2) J and the hierarchy Delta >> Omega_s >> Omega
// (WARN when a ratio is below 10).
SrpConditionReport srp_condition_report(const PhysicalParams& p);

}  // namespace srp
