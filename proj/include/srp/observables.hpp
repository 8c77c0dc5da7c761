#pragma once

#include <Eigen/Dense>
#include <span>
#include <string>

#include "srp/hilbert.hpp"

namespace srp {

// Scalar read-out evaluated on a state vector or density matrix while a
// trajectory is being recorded.
class ObservableSpec {
public:
    enum class Kind {
        PopulationOfState,       // |<target|psi>|^2 or <target|rho|target>
        PureStateFidelity,       // same arithmetic, distinct reporting intent
        ProjectorExpectation,    // <P>
        ExcitationProbability,   // 1 - population of the non-Rydberg block
        OperatorExpectation,     // Re <O> (O Hermitian)
        CoherenceMagnitude,      // |<bra|rho|ket>|
    };

    static ObservableSpec population(std::string name, StateVector target);
    static ObservableSpec fidelity(std::string name, StateVector target);
    static ObservableSpec projector(std::string name, Operator p);
    static ObservableSpec excitation(std::string name, const HilbertSpace& space);
    static ObservableSpec operator_expectation(std::string name, Operator o);
    static ObservableSpec coherence(std::string name, StateVector bra, StateVector ket);

    double eval(const Vector& psi) const;
    double eval(const Matrix& rho) const;

    const std::string& name() const { return name_; }
    Kind kind() const { return kind_; }
    const HilbertSpace& space() const { return space_; }

private:
    ObservableSpec(std::string name, Kind kind, HilbertSpace space);

    std::string name_;
    Kind kind_;
    HilbertSpace space_;
    Vector target_;      // PopulationOfState / PureStateFidelity / Coherence bra
    Vector target2_;     // Coherence ket
    Matrix op_;          // ProjectorExpectation / OperatorExpectation / block projector
};

// Eq. (5): F = |Tr(U^dag U_cz)|^2 / 16.
double gate_fidelity_unitary(const Eigen::Matrix4cd& u, const Eigen::Matrix4cd& u_cz);

// Choi-overlap process fidelity, normalized to coincide with Eq. (5) for
// unitary channels: Tr[choi(U_cz) choi_actual] / 16.
double gate_fidelity_process(const Eigen::MatrixXcd& choi_actual, const Eigen::Matrix4cd& u_cz);

// Choi matrix of conjugation by a 4x4 unitary.
Eigen::MatrixXcd choi_of_unitary(const Eigen::Matrix4cd& u);

Eigen::Matrix4cd cz_gate();

// Total Rydberg excitation probability P_e = 1 - Tr[rho * Pi_g (x) Pi_g]
// with Pi_g projecting on {|0>, |1>, |alpha>}.
double excitation_probability(const DensityMatrix& rho);
double excitation_probability(const HilbertSpace& space, const Matrix& rho);

// Population of a pure target state in rho or psi.
double population(const DensityMatrix& rho, const StateVector& target);
double population(const StateVector& psi, const StateVector& target);

struct ExponentialFit {
    double rate;      // 1/us, positive for decaying series
    double residual;  // rms residual of the log-linear fit
};

// Least-squares slope of ln y versus t. Requires >= 8 strictly positive
// samples.
ExponentialFit fit_exponential_rate(std::span<const double> t, std::span<const double> y);

}  // namespace srp
