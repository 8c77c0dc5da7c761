#include "srp/observables.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace srp {

ObservableSpec::ObservableSpec(std::string name, Kind kind, HilbertSpace space)
    : name_(std::move(name)), kind_(kind), space_(std::move(space)) {}

ObservableSpec ObservableSpec::population(std::string name, StateVector target) {
    ObservableSpec o(std::move(name), Kind::PopulationOfState, target.space());
    o.target_ = target.vector();
    return o;
}

ObservableSpec ObservableSpec::fidelity(std::string name, StateVector target) {
    ObservableSpec o(std::move(name), Kind::PureStateFidelity, target.space());
    o.target_ = target.vector();
    return o;
}

ObservableSpec ObservableSpec::projector(std::string name, Operator p) {
    ObservableSpec o(std::move(name), Kind::ProjectorExpectation, p.space());
    o.op_ = p.matrix();
    return o;
}

ObservableSpec ObservableSpec::excitation(std::string name, const HilbertSpace& space) {
    if (space.sites() != 2)
        throw std::invalid_argument("excitation observable: two-atom space required");
    ObservableSpec o(std::move(name), Kind::ExcitationProbability, space);
    Matrix block = Matrix::Zero(space.dim(), space.dim());
    for (Level a : {Level::g0, Level::g1, Level::alpha})
        for (Level b : {Level::g0, Level::g1, Level::alpha}) {
            if (!space.has_level(0, a) || !space.has_level(1, b))
                throw std::invalid_argument("excitation observable: missing level");
            int i = space.basis_index(std::array{a, b});
            block(i, i) = 1.0;
        }
    o.op_ = std::move(block);
    return o;
}

ObservableSpec ObservableSpec::operator_expectation(std::string name, Operator op) {
    ObservableSpec o(std::move(name), Kind::OperatorExpectation, op.space());
    o.op_ = op.matrix();
    return o;
}

ObservableSpec ObservableSpec::coherence(std::string name, StateVector bra, StateVector ket) {
    if (!(bra.space() == ket.space()))
        throw std::invalid_argument("coherence observable: space mismatch");
    ObservableSpec o(std::move(name), Kind::CoherenceMagnitude, bra.space());
    o.target_ = bra.vector();
    o.target2_ = ket.vector();
    return o;
}

double ObservableSpec::eval(const Vector& psi) const {
    switch (kind_) {
        case Kind::PopulationOfState:
        case Kind::PureStateFidelity:
            return std::norm(target_.dot(psi));
        case Kind::ProjectorExpectation:
        case Kind::OperatorExpectation:
        case Kind::ExcitationProbability: {
            double v = (psi.dot(op_ * psi)).real();
            return kind_ == Kind::ExcitationProbability ? 1.0 - v : v;
        }
        case Kind::CoherenceMagnitude:
            return std::abs(target_.dot(psi) * std::conj(target2_.dot(psi)));
    }
    return 0.0;
}

double ObservableSpec::eval(const Matrix& rho) const {
    switch (kind_) {
        case Kind::PopulationOfState:
        case Kind::PureStateFidelity:
            return (target_.adjoint() * rho * target_)(0).real();
        case Kind::ProjectorExpectation:
        case Kind::OperatorExpectation:
        case Kind::ExcitationProbability: {
            double v = (rho * op_).trace().real();
            return kind_ == Kind::ExcitationProbability ? 1.0 - v : v;
        }
        case Kind::CoherenceMagnitude:
            return std::abs((target_.adjoint() * rho * target2_)(0));
    }
    return 0.0;
}

double gate_fidelity_unitary(const Eigen::Matrix4cd& u, const Eigen::Matrix4cd& u_cz) {
    const cplx tr = (u.adjoint() * u_cz).trace();
    return std::norm(tr) / 16.0;
}

Eigen::MatrixXcd choi_of_unitary(const Eigen::Matrix4cd& u) {
    Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(16, 16);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            Eigen::Matrix4cd e = Eigen::Matrix4cd::Zero();
            e(i, j) = 1.0;
            Eigen::Matrix4cd mapped = u * e * u.adjoint();
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) c(i * 4 + k, j * 4 + l) = mapped(k, l);
        }
    return c;
}

double gate_fidelity_process(const Eigen::MatrixXcd& choi_actual, const Eigen::Matrix4cd& u_cz) {
    if (choi_actual.rows() != 16 || choi_actual.cols() != 16)
        throw std::invalid_argument("gate_fidelity_process: 16x16 Choi matrix required");
    if ((choi_actual - choi_actual.adjoint()).cwiseAbs().maxCoeff() > 1e-9)
        throw std::invalid_argument("gate_fidelity_process: Choi matrix is not Hermitian");
    const Eigen::MatrixXcd ideal = choi_of_unitary(u_cz);
    return (ideal * choi_actual).trace().real() / 16.0;
}

Eigen::Matrix4cd cz_gate() {
    Eigen::Matrix4cd u = Eigen::Matrix4cd::Identity();
    u(3, 3) = -1.0;
    return u;
}

double excitation_probability(const HilbertSpace& space, const Matrix& rho) {
    return ObservableSpec::excitation("P_e", space).eval(rho);
}

double excitation_probability(const DensityMatrix& rho) {
    return excitation_probability(rho.space(), rho.matrix());
}

double population(const DensityMatrix& rho, const StateVector& target) {
    if (!(rho.space() == target.space()))
        throw std::invalid_argument("population: space mismatch");
    return (target.vector().adjoint() * rho.matrix() * target.vector())(0).real();
}

double population(const StateVector& psi, const StateVector& target) {
    if (!(psi.space() == target.space()))
        throw std::invalid_argument("population: space mismatch");
    return std::norm(target.vector().dot(psi.vector()));
}

ExponentialFit fit_exponential_rate(std::span<const double> t, std::span<const double> y) {
    if (t.size() != y.size()) throw std::invalid_argument("fit_exponential_rate: size mismatch");
    if (t.size() < 8) throw std::invalid_argument("fit_exponential_rate: need >= 8 points");
    const size_t n = t.size();
    double st = 0, sl = 0, stt = 0, stl = 0;
    for (size_t i = 0; i < n; ++i) {
        if (!(y[i] > 0.0))
            throw std::invalid_argument("fit_exponential_rate: non-positive sample");
        const double ly = std::log(y[i]);
        st += t[i];
        sl += ly;
        stt += t[i] * t[i];
        stl += t[i] * ly;
    }
    const double denom = n * stt - st * st;
    if (denom == 0.0) throw std::invalid_argument("fit_exponential_rate: degenerate abscissa");
    const double slope = (n * stl - st * sl) / denom;
    const double intercept = (sl - slope * st) / n;
    double ss = 0;
    for (size_t i = 0; i < n; ++i) {
        const double r = std::log(y[i]) - (intercept + slope * t[i]);
        ss += r * r;
    }
    return {-slope, std::sqrt(ss / n)};
}

}  // namespace srp
