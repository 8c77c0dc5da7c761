#include "srp/model.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace srp {

namespace {

const std::vector<Level> kFullLevels = {Level::g0, Level::g1, Level::r, Level::p1, Level::p2};
const std::vector<Level> kFullLeakLevels = {Level::g0, Level::g1, Level::r,
                                            Level::p1, Level::p2, Level::alpha};
const std::vector<Level> kThreeLevels = {Level::g0, Level::g1, Level::r};
const std::vector<Level> kGroundLevels = {Level::g0, Level::g1};
const std::vector<Level> kSingleAtomLevels = {Level::g0, Level::g1, Level::r, Level::a_short};

void require_positive(double v, const char* what) {
    if (!(v > 0.0)) throw std::invalid_argument(std::string(what) + " must be > 0");
}

StateVector pair_state(const HilbertSpace& s, Level a, Level b) {
    return basis_state(s, {a, b});
}

Operator pair_transition(const HilbertSpace& s, Level to1, Level to2, Level from1, Level from2) {
    return outer(pair_state(s, to1, to2), pair_state(s, from1, from2));
}

// J |rr>(<p'p''| + <p''p'|), the static exchange operator (one side; the
// Hermitian closure supplies the conjugate).
Operator exchange_operator(const HilbertSpace& s) {
    return pair_transition(s, Level::r, Level::r, Level::p1, Level::p2) +
           pair_transition(s, Level::r, Level::r, Level::p2, Level::p1);
}

HamiltonianTerm static_closed(Operator op, double amp, std::string label) {
    return {std::move(op), DriveCoefficient{cplx(amp, 0.0), 0.0, 0.0}, true, std::move(label)};
}

HamiltonianTerm static_shift(Operator op, double amp, std::string label) {
    return {std::move(op), DriveCoefficient{cplx(amp, 0.0), 0.0, 0.0}, false, std::move(label)};
}

// The three drive terms of Eq. (1) on both atoms: resonant Omega on
// |1>-|r|, red Omega_R at -Delta and blue Omega_B at +Delta with the extra
// phase (n-1)*pi on atom 2.
void append_srp_drives(std::vector<HamiltonianTerm>& terms, const HilbertSpace& s,
                       const PhysicalParams& p) {
    const double delta = p.resolved_Delta();
    for (int n = 0; n < 2; ++n) {
        terms.push_back(static_closed(transition_operator(s, n, Level::r, Level::g1), p.Omega,
                                      "Omega atom" + std::to_string(n + 1)));
        terms.push_back({transition_operator(s, n, Level::r, Level::g0),
                         DriveCoefficient{cplx(p.resolved_Omega_R(), 0.0), -delta, 0.0},
                         true,
                         "Omega_R atom" + std::to_string(n + 1)});
        terms.push_back({transition_operator(s, n, Level::r, Level::g0),
                         DriveCoefficient{cplx(p.resolved_Omega_B(), 0.0), delta,
                                          n == 0 ? 0.0 : std::acos(-1.0)},
                         true,
                         "Omega_B atom" + std::to_string(n + 1)});
    }
    terms.push_back(static_closed(exchange_operator(s), p.J, "J exchange"));
}

void append_weak_ground_drive(std::vector<HamiltonianTerm>& terms, const HilbertSpace& s,
                              const PhysicalParams& p) {
    for (int n = 0; n < 2; ++n)
        terms.push_back(static_closed(transition_operator(s, n, Level::g1, Level::g0), p.Omega_w,
                                      "Omega_w atom" + std::to_string(n + 1)));
}

DecayChannel channel(const HilbertSpace& s, int site, Level from, Level to, double rate,
                     std::string label) {
    if (rate < 0.0) throw std::invalid_argument("DecayChannel: rate must be >= 0");
    return {transition_operator(s, site, from, to), rate, std::move(label)};
}

}  // namespace

double PhysicalParams::resolved_Delta() const {
    return Delta.value_or(std::sqrt(2.0) * J);
}

void PhysicalParams::validate() const {
    auto nonneg = [](double v, const char* what) {
        if (v < 0.0) throw std::invalid_argument(std::string(what) + " must be >= 0");
    };
    nonneg(Omega, "Omega");
    nonneg(Omega_s, "Omega_s");
    nonneg(resolved_Omega_B(), "Omega_B");
    nonneg(resolved_Omega_R(), "Omega_R");
    nonneg(Omega_w, "Omega_w");
    nonneg(Omega_p, "Omega_p");
    nonneg(Omega_b, "Omega_b");
    nonneg(Gamma, "Gamma");
    nonneg(gamma_flat, "gamma_flat");
    if (lambda < 0.0 || lambda > 1.0) throw std::invalid_argument("lambda must be in [0, 1]");
    if (gamma_split < 0.0 || gamma_split > 1.0)
        throw std::invalid_argument("gamma_split must be in [0, 1]");
    if (branch0 < 0.0 || branch0 > 1.0) throw std::invalid_argument("branch0 must be in [0, 1]");
    double b1 = resolved_branch1();
    if (b1 < 0.0 || b1 > 1.0) throw std::invalid_argument("branch1 must be in [0, 1]");
    if (branch0 + b1 > 1.0 + 1e-12)
        throw std::invalid_argument("branching fractions exceed the total rate");
    require_positive(tau_r, "tau_r");
    require_positive(tau_p1, "tau_p1");
    require_positive(tau_p2, "tau_p2");
    if (R != 0.0) require_positive(R, "R");
}

HamiltonianSpec::HamiltonianSpec(HilbertSpace space, std::vector<HamiltonianTerm> terms)
    : space_(std::move(space)), terms_(std::move(terms)) {
    for (const auto& term : terms_) {
        if (!(term.op.space() == space_))
            throw std::invalid_argument("HamiltonianSpec: term on a different space");
        if (!term.hermitian_closure) {
            if (!term.coeff.is_static() || term.coeff.phase != 0.0 ||
                term.coeff.amplitude.imag() != 0.0)
                throw std::invalid_argument(
                    "HamiltonianSpec: non-closed terms must be static with real amplitude");
            if (!term.op.is_hermitian())
                throw std::invalid_argument("HamiltonianSpec: non-closed term is not Hermitian");
        }
    }
}

Matrix HamiltonianSpec::evaluate(double t) const {
    Matrix h = Matrix::Zero(space_.dim(), space_.dim());
    for (const auto& term : terms_) {
        const cplx c = term.coeff(t);
        h += c * term.op.matrix();
        if (term.hermitian_closure) h += std::conj(c) * term.op.matrix().adjoint();
    }
    return h;
}

double HamiltonianSpec::max_drive_frequency() const {
    double w = 0.0;
    for (const auto& term : terms_) w = std::max(w, std::abs(term.coeff.angular_frequency));
    return w;
}

double HamiltonianSpec::magnitude_scale() const {
    Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(space_.dim(), space_.dim());
    for (const auto& term : terms_) {
        const double a = std::abs(term.coeff.amplitude);
        acc += a * term.op.matrix().cwiseAbs();
        if (term.hermitian_closure) acc += a * term.op.matrix().adjoint().cwiseAbs();
    }
    return acc.rowwise().sum().maxCoeff();
}

const char* variant_name(ModelVariant v) {
    switch (v) {
        case ModelVariant::FullSRP: return "FullSRP";
        case ModelVariant::FullWithDefect: return "FullWithDefect";
        case ModelVariant::IntermediateEffective: return "IntermediateEffective";
        case ModelVariant::EffectiveSRP: return "EffectiveSRP";
        case ModelVariant::VdwComparison: return "VdwComparison";
        case ModelVariant::Antiblockade: return "Antiblockade";
        case ModelVariant::GroundBlockadeEffective: return "GroundBlockadeEffective";
        case ModelVariant::GroundBlockadeSubspace: return "GroundBlockadeSubspace";
        case ModelVariant::EffectiveDissipative: return "EffectiveDissipative";
        case ModelVariant::FullDissipative: return "FullDissipative";
        case ModelVariant::RecyclingFull: return "RecyclingFull";
        case ModelVariant::EngineeredDecaySingleAtom: return "EngineeredDecaySingleAtom";
    }
    return "?";
}

HilbertSpace default_space(ModelVariant v) {
    switch (v) {
        case ModelVariant::FullSRP:
        case ModelVariant::FullWithDefect:
        case ModelVariant::IntermediateEffective:
        case ModelVariant::Antiblockade:
            return HilbertSpace::two_atoms(kFullLevels);
        case ModelVariant::EffectiveSRP:
        case ModelVariant::VdwComparison:
        case ModelVariant::GroundBlockadeEffective:
        case ModelVariant::EffectiveDissipative:
            return HilbertSpace::two_atoms(kThreeLevels);
        case ModelVariant::GroundBlockadeSubspace:
            return HilbertSpace::two_atoms(kGroundLevels);
        case ModelVariant::FullDissipative:
        case ModelVariant::RecyclingFull:
            return HilbertSpace::two_atoms(kFullLeakLevels);
        case ModelVariant::EngineeredDecaySingleAtom:
            return HilbertSpace::single(kSingleAtomLevels);
    }
    throw std::invalid_argument("unknown variant");
}

HilbertSpace default_dissipative_space(ModelVariant v) {
    switch (v) {
        case ModelVariant::FullSRP:
        case ModelVariant::FullWithDefect:
            // Eq. (8) adds the leakage level to the Eq. (1) space.
            return HilbertSpace::two_atoms(kFullLeakLevels);
        default:
            return default_space(v);
    }
}

HamiltonianSpec build_hamiltonian(ModelVariant v, const PhysicalParams& p) {
    return build_hamiltonian(v, p, default_space(v));
}

HamiltonianSpec build_hamiltonian(ModelVariant v, const PhysicalParams& p,
                                  const HilbertSpace& s) {
    p.validate();
    std::vector<HamiltonianTerm> terms;
    switch (v) {
        case ModelVariant::FullSRP: {
            append_srp_drives(terms, s, p);
            break;
        }
        case ModelVariant::FullWithDefect: {
            append_srp_drives(terms, s, p);
            // The defect detunes both bare pair states; the coupled
            // symmetric combination then reproduces the Eq. (6) block.
            terms.push_back(static_shift(projector_op(s, 0, Level::p1) * projector_op(s, 1, Level::p2),
                                         p.delta_defect, "defect p'p''"));
            terms.push_back(static_shift(projector_op(s, 0, Level::p2) * projector_op(s, 1, Level::p1),
                                         p.delta_defect, "defect p''p'"));
            break;
        }
        case ModelVariant::IntermediateEffective: {
            const DressedBasis d = dressed_basis(s);
            const StateVector s11 = basis_state(s, {Level::g1, Level::g1});
            const StateVector s01 = basis_state(s, {Level::g0, Level::g1});
            const StateVector s10 = basis_state(s, {Level::g1, Level::g0});
            const StateVector sr1 = basis_state(s, {Level::r, Level::g1});
            const StateVector s1r = basis_state(s, {Level::g1, Level::r});
            const double rt2 = std::sqrt(2.0);
            terms.push_back(static_closed(outer(s11, sr1) + outer(s11, s1r), p.Omega, "Omega 11"));
            terms.push_back(static_closed(outer(s01, d.T0) - outer(s01, d.S0), p.Omega / rt2,
                                          "Omega 01"));
            terms.push_back(static_closed(outer(s10, d.T0) + outer(s10, d.S0), p.Omega / rt2,
                                          "Omega 10"));
            terms.push_back(static_closed(outer(d.T0, d.E_minus), p.Omega_s, "Omega_s T0-E-"));
            terms.push_back(static_closed(outer(d.S0, d.E_plus), -p.Omega_s, "Omega_s S0-E+"));
            break;
        }
        case ModelVariant::EffectiveSRP: {
            Operator o = pair_transition(s, Level::g1, Level::g1, Level::r, Level::g1) +
                         pair_transition(s, Level::g1, Level::g1, Level::g1, Level::r);
            terms.push_back(static_closed(std::move(o), p.Omega, "Omega 11"));
            break;
        }
        case ModelVariant::VdwComparison: {
            const double delta = p.resolved_Delta();
            for (int n = 0; n < 2; ++n) {
                terms.push_back(static_closed(transition_operator(s, n, Level::r, Level::g1),
                                              p.Omega, "Omega atom" + std::to_string(n + 1)));
                // Both atoms share the same phase and a single detuned drive.
                terms.push_back({transition_operator(s, n, Level::r, Level::g0),
                                 DriveCoefficient{cplx(p.Omega_s, 0.0), delta, 0.0},
                                 true,
                                 "Omega_s atom" + std::to_string(n + 1)});
            }
            terms.push_back(static_shift(projector_op(s, 0, Level::r) * projector_op(s, 1, Level::r),
                                         p.U_vdw, "U_vdw rr"));
            break;
        }
        case ModelVariant::Antiblockade: {
            const double delta = p.resolved_Delta();
            require_positive(delta, "Delta");
            for (int n = 0; n < 2; ++n)
                terms.push_back({transition_operator(s, n, Level::r, Level::g1),
                                 DriveCoefficient{cplx(p.Omega_s, 0.0), -delta, 0.0},
                                 true,
                                 "Omega_s atom" + std::to_string(n + 1)});
            terms.push_back(static_closed(exchange_operator(s), p.J, "J exchange"));
            // Static compensation of the second-order light shifts. The
            // per-atom |1> shift cancels the single-atom dressed shift;
            // the pair-manifold shift lifts the resonant dressed state
            // back to zero energy so |11> returns with a bare -1 phase
            // instead of an extra dynamical phase exp(i Omega_s^2/Delta
            // t_g). An optional extra |11> shift remains configurable.
            const double comp1 = p.ab_comp_single.value_or(
                0.5 * (std::sqrt(delta * delta + 4.0 * p.Omega_s * p.Omega_s) - delta));
            const double comp_ryd =
                p.ab_comp_rydberg.value_or(p.Omega_s * p.Omega_s / delta);
            const double comp11 = p.ab_comp_pair.value_or(0.0);
            terms.push_back(static_shift(projector_op(s, 0, Level::g1), comp1, "comp |1>_1"));
            terms.push_back(static_shift(projector_op(s, 1, Level::g1), comp1, "comp |1>_2"));
            Operator pair_manifold =
                projector_op(s, 0, Level::r) * projector_op(s, 1, Level::r) +
                projector_op(s, 0, Level::p1) * projector_op(s, 1, Level::p2) +
                projector_op(s, 0, Level::p2) * projector_op(s, 1, Level::p1);
            terms.push_back(static_shift(std::move(pair_manifold), comp_ryd, "comp pair manifold"));
            terms.push_back(static_shift(projector_op(s, 0, Level::g1) * projector_op(s, 1, Level::g1),
                                         comp11, "comp |11>"));
            break;
        }
        case ModelVariant::GroundBlockadeEffective:
        case ModelVariant::EffectiveDissipative: {
            append_weak_ground_drive(terms, s, p);
            Operator o = pair_transition(s, Level::g1, Level::g1, Level::r, Level::g1) +
                         pair_transition(s, Level::g1, Level::g1, Level::g1, Level::r);
            terms.push_back(static_closed(std::move(o), p.Omega, "Omega 11"));
            break;
        }
        case ModelVariant::GroundBlockadeSubspace: {
            Operator o = pair_transition(s, Level::g0, Level::g0, Level::g0, Level::g1) +
                         pair_transition(s, Level::g0, Level::g0, Level::g1, Level::g0);
            terms.push_back(static_closed(std::move(o), p.Omega_w, "Omega_w 00"));
            break;
        }
        case ModelVariant::FullDissipative:
        case ModelVariant::RecyclingFull: {
            append_weak_ground_drive(terms, s, p);
            append_srp_drives(terms, s, p);
            break;
        }
        case ModelVariant::EngineeredDecaySingleAtom: {
            terms.push_back(static_closed(transition_operator(s, 0, Level::a_short, Level::r),
                                          p.Omega_p, "Omega_p"));
            break;
        }
    }
    return HamiltonianSpec(s, std::move(terms));
}

std::vector<DecayChannel> build_decay_channels(ModelVariant v, const PhysicalParams& p) {
    return build_decay_channels(v, p, default_dissipative_space(v));
}

std::vector<DecayChannel> build_decay_channels(ModelVariant v, const PhysicalParams& p,
                                               const HilbertSpace& s) {
    p.validate();
    std::vector<DecayChannel> out;
    switch (v) {
        case ModelVariant::FullSRP:
        case ModelVariant::FullWithDefect: {
            // Eq. (8): single-leakage-level simplification of Eq. (7).
            const double gr = p.gamma_r();
            const double g0 = p.gamma_split * p.lambda * gr;
            const double g1 = (1.0 - p.gamma_split) * p.lambda * gr;
            const double ga = (1.0 - p.lambda) * gr;
            for (int n = 0; n < 2; ++n) {
                std::string atom = " atom" + std::to_string(n + 1);
                out.push_back(channel(s, n, Level::r, Level::g0, g0, "gamma_r^0" + atom));
                out.push_back(channel(s, n, Level::r, Level::g1, g1, "gamma_r^1" + atom));
                out.push_back(channel(s, n, Level::r, Level::alpha, ga, "gamma_r^alpha" + atom));
            }
            break;
        }
        case ModelVariant::EffectiveDissipative: {
            // Eq. (11): equal branching gamma/2 into both qubit states.
            for (int n = 0; n < 2; ++n) {
                std::string atom = " atom" + std::to_string(n + 1);
                out.push_back(channel(s, n, Level::r, Level::g0, 0.5 * p.gamma_flat,
                                      "gamma/2 r->0" + atom));
                out.push_back(channel(s, n, Level::r, Level::g1, 0.5 * p.gamma_flat,
                                      "gamma/2 r->1" + atom));
            }
            break;
        }
        case ModelVariant::FullDissipative: {
            // Eq. (13): engineered emission plus natural decay fully into
            // the computational basis.
            const double b0 = p.branch0;
            const double b1 = p.resolved_branch1();
            if (std::abs(b0 + b1 - 1.0) > 1e-9)
                throw std::invalid_argument(
                    "Eq. (13) channel set requires gamma_m^0 + gamma_m^1 = gamma_m");
            auto [ge0, ge1] = engineered_rates(p.Omega_p, p.Gamma);
            const double gm[3] = {p.gamma_r(), p.gamma_p1(), p.gamma_p2()};
            const Level lv[3] = {Level::r, Level::p1, Level::p2};
            const char* nm[3] = {"r", "p'", "p''"};
            for (int n = 0; n < 2; ++n) {
                std::string atom = " atom" + std::to_string(n + 1);
                out.push_back(channel(s, n, Level::r, Level::g0, ge0, "gamma_eff^0" + atom));
                out.push_back(channel(s, n, Level::r, Level::g1, ge1, "gamma_eff^1" + atom));
                for (int m = 0; m < 3; ++m) {
                    out.push_back(channel(s, n, lv[m], Level::g0, b0 * gm[m],
                                          std::string("gamma_") + nm[m] + "^0" + atom));
                    out.push_back(channel(s, n, lv[m], Level::g1, b1 * gm[m],
                                          std::string("gamma_") + nm[m] + "^1" + atom));
                }
            }
            break;
        }
        case ModelVariant::RecyclingFull: {
            // Eq. (19): Eq. (13) channels, natural leakage into |alpha>
            // with the remainder gamma_m - gamma_m^0 - gamma_m^1, and the
            // recycling pump out of |alpha> with the 5P branching
            // fractions (1/2, 1/3, 1/6).
            const double b0 = p.branch0;
            const double b1 = p.resolved_branch1();
            auto [ge0, ge1] = engineered_rates(p.Omega_p, p.Gamma);
            require_positive(p.Gamma, "Gamma");
            const double pump_total = 4.0 * p.Omega_b * p.Omega_b / p.Gamma;
            const double gm[3] = {p.gamma_r(), p.gamma_p1(), p.gamma_p2()};
            const Level lv[3] = {Level::r, Level::p1, Level::p2};
            const char* nm[3] = {"r", "p'", "p''"};
            for (int n = 0; n < 2; ++n) {
                std::string atom = " atom" + std::to_string(n + 1);
                out.push_back(channel(s, n, Level::r, Level::g0, ge0, "gamma_eff^0" + atom));
                out.push_back(channel(s, n, Level::r, Level::g1, ge1, "gamma_eff^1" + atom));
                for (int m = 0; m < 3; ++m) {
                    out.push_back(channel(s, n, lv[m], Level::g0, b0 * gm[m],
                                          std::string("gamma_") + nm[m] + "^0" + atom));
                    out.push_back(channel(s, n, lv[m], Level::g1, b1 * gm[m],
                                          std::string("gamma_") + nm[m] + "^1" + atom));
                    out.push_back(channel(s, n, lv[m], Level::alpha, (1.0 - b0 - b1) * gm[m],
                                          std::string("gamma_") + nm[m] + "^alpha" + atom));
                }
                out.push_back(channel(s, n, Level::alpha, Level::g0, pump_total / 2.0,
                                      "gamma_p^0" + atom));
                out.push_back(channel(s, n, Level::alpha, Level::g1, pump_total / 3.0,
                                      "gamma_p^1" + atom));
                out.push_back(channel(s, n, Level::alpha, Level::alpha, pump_total / 6.0,
                                      "gamma_p^alpha" + atom));
            }
            break;
        }
        case ModelVariant::EngineeredDecaySingleAtom: {
            // Eq. (14): 5P branching 3/5 and 2/5.
            require_positive(p.Gamma, "Gamma");
            out.push_back(channel(s, 0, Level::a_short, Level::g0, 0.6 * p.Gamma, "3Gamma/5"));
            out.push_back(channel(s, 0, Level::a_short, Level::g1, 0.4 * p.Gamma, "2Gamma/5"));
            break;
        }
        default:
            throw std::invalid_argument(std::string(variant_name(v)) +
                                        " has no dissipative channel set");
    }
    return out;
}

std::vector<DecayChannel> natural_leak_channels(const HilbertSpace& s, const PhysicalParams& p) {
    p.validate();
    std::vector<DecayChannel> out;
    const double gm[3] = {p.gamma_r(), p.gamma_p1(), p.gamma_p2()};
    const Level lv[3] = {Level::r, Level::p1, Level::p2};
    const char* nm[3] = {"r", "p'", "p''"};
    for (int n = 0; n < 2; ++n)
        for (int m = 0; m < 3; ++m)
            out.push_back(channel(s, n, lv[m], Level::alpha, gm[m],
                                  std::string("gamma_") + nm[m] + " atom" + std::to_string(n + 1)));
    return out;
}

std::pair<double, double> engineered_rates(double omega_p, double gamma_big) {
    require_positive(gamma_big, "Gamma");
    if (omega_p < 0.0) throw std::invalid_argument("Omega_p must be >= 0");
    const double total = 4.0 * omega_p * omega_p / gamma_big;
    return {0.6 * total, 0.4 * total};
}

double dipole_coupling_from_distance(double c3, double r_um) {
    require_positive(r_um, "R");
    return c3 / (r_um * r_um * r_um);
}

FoersterDeviation foerster_deviation(double j, double delta) {
    require_positive(j, "J");
    if (delta < 0.0) throw std::invalid_argument("delta must be >= 0");
    const double rt2 = std::sqrt(2.0);
    FoersterDeviation d;
    d.exact = std::abs(rt2 * j - 0.5 * (delta + std::sqrt(8.0 * j * j + delta * delta)));
    d.approx = 0.5 * delta + rt2 * delta * delta / (16.0 * j);
    return d;
}

namespace {

StateVector two_state_combo(const HilbertSpace& s, Level a1, Level a2, Level b1, Level b2,
                            double sign) {
    Vector v = Vector::Zero(s.dim());
    v(s.basis_index(std::array{a1, a2})) = 1.0 / std::sqrt(2.0);
    v(s.basis_index(std::array{b1, b2})) = sign / std::sqrt(2.0);
    return StateVector(s, std::move(v));
}

}  // namespace

DressedBasis dressed_basis(const HilbertSpace& s) {
    if (s.sites() != 2)
        throw std::invalid_argument("dressed_basis: two-atom space required");
    for (Level l : {Level::g0, Level::g1, Level::r, Level::p1, Level::p2})
        for (int n = 0; n < 2; ++n)
            if (!s.has_level(n, l))
                throw std::invalid_argument(std::string("dressed_basis: missing level ") +
                                            level_name(l));
    auto idx = [&](Level a, Level b) { return s.basis_index(std::array{a, b}); };
    const double rt2 = std::sqrt(2.0);

    Vector ep = Vector::Zero(s.dim());
    ep(idx(Level::r, Level::r)) = rt2 / 2.0;
    ep(idx(Level::p1, Level::p2)) = 0.5;
    ep(idx(Level::p2, Level::p1)) = 0.5;
    Vector em = Vector::Zero(s.dim());
    em(idx(Level::r, Level::r)) = rt2 / 2.0;
    em(idx(Level::p1, Level::p2)) = -0.5;
    em(idx(Level::p2, Level::p1)) = -0.5;

    StateVector t0 = two_state_combo(s, Level::r, Level::g0, Level::g0, Level::r, +1.0);
    StateVector s0 = two_state_combo(s, Level::r, Level::g0, Level::g0, Level::r, -1.0);
    StateVector e_plus(s, ep);
    StateVector e_minus(s, em);

    // alpha_pm = [(T0 - S0) +- (E+ + E-)]/2, beta_pm = [(T0 + S0) -+ (E+ - E-)]/2.
    Vector d_ts = t0.vector() - s0.vector();   // sqrt(2)|0r>
    Vector s_ts = t0.vector() + s0.vector();   // sqrt(2)|r0>
    Vector s_e = ep + em;                      // sqrt(2)|rr>
    Vector d_e = ep - em;                      // |p'p''> + |p''p'|

    auto mk = [&](const Vector& v) { return StateVector(s, v / v.norm()); };
    StateVector alpha_plus = mk(0.5 * (d_ts + s_e));
    StateVector alpha_minus = mk(0.5 * (d_ts - s_e));
    StateVector beta_plus = mk(0.5 * (s_ts - d_e));
    StateVector beta_minus = mk(0.5 * (s_ts + d_e));

    return DressedBasis{t0,
                        s0,
                        e_plus,
                        e_minus,
                        alpha_plus,
                        alpha_minus,
                        beta_plus,
                        beta_minus,
                        bell_psi_plus(s),
                        bell_psi_minus(s)};
}

StateVector bell_psi_plus(const HilbertSpace& s) {
    return two_state_combo(s, Level::g0, Level::g1, Level::g1, Level::g0, +1.0);
}

StateVector bell_psi_minus(const HilbertSpace& s) {
    return two_state_combo(s, Level::g0, Level::g1, Level::g1, Level::g0, -1.0);
}

StateVector bright_state(const HilbertSpace& s) {
    return two_state_combo(s, Level::r, Level::g1, Level::g1, Level::r, +1.0);
}

SrpConditionReport srp_condition_report(const PhysicalParams& p) {
    SrpConditionReport rep;
    const double delta = p.resolved_Delta();
    rep.delta_residual = delta - std::sqrt(2.0) * p.J;
    rep.ratio_delta_omega_s =
        p.Omega_s > 0.0 ? delta / p.Omega_s : std::numeric_limits<double>::infinity();
    rep.ratio_omega_s_omega =
        p.Omega > 0.0 ? p.Omega_s / p.Omega : std::numeric_limits<double>::infinity();
    if (rep.ratio_delta_omega_s < 10.0)
        rep.warnings.push_back("WARN: Delta/Omega_s < 10; large-detuning limit violated");
    if (rep.ratio_omega_s_omega < 10.0)
        rep.warnings.push_back("WARN: Omega_s/Omega < 10; blockade hierarchy violated");
    return rep;
}

}  // namespace srp
