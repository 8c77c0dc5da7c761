#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "srp/model.hpp"

using namespace srp;

namespace {

PhysicalParams fig2_params() {
    PhysicalParams p;
    p.Omega = two_pi * 0.02;
    p.Omega_s = two_pi * 1.0;
    p.J = two_pi * 50.0;
    return p;
}

double hermiticity_defect(const Matrix& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

// The static exchange operator built independently of the model code.
Matrix exchange_dd(const HilbertSpace& s, double j) {
    Matrix h = Matrix::Zero(s.dim(), s.dim());
    int rr = s.basis_index(std::array{Level::r, Level::r});
    int pq = s.basis_index(std::array{Level::p1, Level::p2});
    int qp = s.basis_index(std::array{Level::p2, Level::p1});
    h(rr, pq) = h(rr, qp) = j;
    h(pq, rr) = h(qp, rr) = j;
    return h;
}

}  // namespace

TEST_CASE("FullSRP matrix elements at t = 0") {
    auto p = fig2_params();
    auto h = build_hamiltonian(ModelVariant::FullSRP, p);
    const auto& s = h.space();
    Matrix m = h.evaluate(0.0);

    int rr = s.basis_index(std::array{Level::r, Level::r});
    int pq = s.basis_index(std::array{Level::p1, Level::p2});
    int qp = s.basis_index(std::array{Level::p2, Level::p1});
    CHECK(m(rr, pq).real() == doctest::Approx(p.J).epsilon(1e-12));
    CHECK(m(rr, qp).real() == doctest::Approx(p.J).epsilon(1e-12));

    // blue drive carries the extra phase pi on atom 2
    for (const auto& term : h.terms()) {
        if (term.label == "Omega_B atom2") {
            cplx amp_at_0 = term.coeff(0.0);
            CHECK(amp_at_0.real() == doctest::Approx(-p.resolved_Omega_B()).epsilon(1e-12));
            CHECK(std::abs(amp_at_0.imag()) < 1e-12);
        }
        if (term.label == "Omega_B atom1") {
            CHECK(term.coeff(0.0).real() == doctest::Approx(p.resolved_Omega_B()).epsilon(1e-12));
        }
    }

    // resonant drive couples |11> to |r1>, |1r>
    int i11 = s.basis_index(std::array{Level::g1, Level::g1});
    int ir1 = s.basis_index(std::array{Level::r, Level::g1});
    CHECK(m(ir1, i11).real() == doctest::Approx(p.Omega).epsilon(1e-12));
}

TEST_CASE("EffectiveSRP couples only |11>") {
    auto p = fig2_params();
    auto h = build_hamiltonian(ModelVariant::EffectiveSRP, p);
    const auto& s = h.space();
    Matrix m = h.evaluate(0.0);
    int i11 = s.basis_index(std::array{Level::g1, Level::g1});
    int ir1 = s.basis_index(std::array{Level::r, Level::g1});
    int i1r = s.basis_index(std::array{Level::g1, Level::r});
    CHECK(m(ir1, i11).real() == doctest::Approx(p.Omega).epsilon(1e-12));
    CHECK(m(i1r, i11).real() == doctest::Approx(p.Omega).epsilon(1e-12));
    // all other ground-state couplings vanish
    for (Level a : {Level::g0, Level::g1})
        for (Level b : {Level::g0, Level::g1}) {
            int ig = s.basis_index(std::array{a, b});
            if (ig == i11) continue;
            for (int k = 0; k < s.dim(); ++k)
                if (k != ig) CHECK(std::abs(m(k, ig)) == 0.0);
        }
}

TEST_CASE("every variant evaluates Hermitian") {
    PhysicalParams p = fig2_params();
    p.Omega_w = two_pi * 0.005;
    p.delta_defect = two_pi * 8.5;
    p.U_vdw = two_pi * 50.0;
    p.Omega_p = 1.354;
    p.Omega_b = 1.9154;
    p.Gamma = 1.0 / 0.02569;
    p.gamma_flat = 0.1;
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> ut(0.0, 20.0);
    for (ModelVariant v :
         {ModelVariant::FullSRP, ModelVariant::FullWithDefect, ModelVariant::IntermediateEffective,
          ModelVariant::EffectiveSRP, ModelVariant::VdwComparison, ModelVariant::Antiblockade,
          ModelVariant::GroundBlockadeEffective, ModelVariant::GroundBlockadeSubspace,
          ModelVariant::EffectiveDissipative, ModelVariant::FullDissipative,
          ModelVariant::RecyclingFull, ModelVariant::EngineeredDecaySingleAtom}) {
        auto h = build_hamiltonian(v, p);
        for (double t : {0.0, 0.37, 5.0}) CHECK(hermiticity_defect(h.evaluate(t)) <= 1e-12);
        for (int k = 0; k < 20; ++k) CHECK(hermiticity_defect(h.evaluate(ut(rng))) <= 1e-12);
    }
}

TEST_CASE("FullSRP with Omega = 0 has no coupling out of |1>") {
    // The Omega drive is the only coupling on the |1>-|r> leg; with it off,
    // every matrix element exciting an atom out of |1> vanishes at all
    // times, so the bright pair {|r1>, |1r>} is unreachable from |11> and
    // the frozen states only connect to virtual |0>-leg excitations.
    auto p = fig2_params();
    p.Omega = 0.0;
    auto h = build_hamiltonian(ModelVariant::FullSRP, p);
    const auto& s = h.space();
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> ut(0.0, 30.0);
    auto idx = [&](Level a, Level b) { return s.basis_index(std::array{a, b}); };
    const std::pair<int, int> one_leg[] = {
        {idx(Level::g0, Level::r), idx(Level::g0, Level::g1)},   // |01> -> |0r>
        {idx(Level::r, Level::g0), idx(Level::g1, Level::g0)},   // |10> -> |r0>
        {idx(Level::r, Level::g1), idx(Level::g1, Level::g1)},   // |11> -> |r1>
        {idx(Level::g1, Level::r), idx(Level::g1, Level::g1)},   // |11> -> |1r>
        {idx(Level::r, Level::g1), idx(Level::g0, Level::g0)},   // |00> -> |r1>
        {idx(Level::g1, Level::r), idx(Level::g0, Level::g0)},   // |00> -> |1r>
        {idx(Level::r, Level::g1), idx(Level::g1, Level::g0)},   // |10> -> |r1>
        {idx(Level::g1, Level::r), idx(Level::g0, Level::g1)},   // |01> -> |1r>
    };
    for (int k = 0; k < 10; ++k) {
        Matrix m = h.evaluate(ut(rng));
        for (auto [e, f] : one_leg) CHECK(std::abs(m(e, f)) == 0.0);
    }
}

TEST_CASE("FullWithDefect at delta = 0 equals FullSRP entry by entry") {
    auto p = fig2_params();
    p.delta_defect = 0.0;
    auto a = build_hamiltonian(ModelVariant::FullSRP, p);
    auto b = build_hamiltonian(ModelVariant::FullWithDefect, p);
    for (double t : {0.0, 0.37, 2.0, 11.1})
        CHECK((a.evaluate(t) - b.evaluate(t)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("defect block eigenvalues are (delta +- sqrt(8J^2 + delta^2))/2") {
    auto p = fig2_params();
    p.delta_defect = two_pi * 8.5;
    auto h = build_hamiltonian(ModelVariant::FullWithDefect, p);
    const auto& s = h.space();
    Matrix m = h.evaluate(0.0);
    int rr = s.basis_index(std::array{Level::r, Level::r});
    int pq = s.basis_index(std::array{Level::p1, Level::p2});
    int qp = s.basis_index(std::array{Level::p2, Level::p1});
    // block basis {|rr>, (|p'p''> + |p''p'>)/sqrt(2)}
    const double rt2 = std::sqrt(2.0);
    Eigen::Matrix2cd block;
    block(0, 0) = m(rr, rr);
    block(0, 1) = (m(rr, pq) + m(rr, qp)) / rt2;
    block(1, 0) = (m(pq, rr) + m(qp, rr)) / rt2;
    block(1, 1) = 0.5 * (m(pq, pq) + m(pq, qp) + m(qp, pq) + m(qp, qp));
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(block);
    const double d = p.delta_defect, j = p.J;
    const double lo = 0.5 * (d - std::sqrt(8 * j * j + d * d));
    const double hi = 0.5 * (d + std::sqrt(8 * j * j + d * d));
    CHECK(es.eigenvalues()(0) == doctest::Approx(lo).epsilon(1e-12));
    CHECK(es.eigenvalues()(1) == doctest::Approx(hi).epsilon(1e-12));
    // antisymmetric pair combination stays decoupled from |rr>
    CHECK(std::abs(m(rr, pq) - m(rr, qp)) == 0.0);

    SUBCASE("delta = 0 gives +-sqrt(2) J") {
        p.delta_defect = 0.0;
        auto h0 = build_hamiltonian(ModelVariant::FullWithDefect, p);
        Matrix m0 = h0.evaluate(0.0);
        Eigen::Matrix2cd b0;
        b0 << m0(rr, rr), (m0(rr, pq) + m0(rr, qp)) / rt2, (m0(pq, rr) + m0(qp, rr)) / rt2,
            m0(pq, pq);
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> e0(b0);
        CHECK(e0.eigenvalues()(1) == doctest::Approx(std::sqrt(2.0) * p.J).epsilon(1e-12));
        CHECK(e0.eigenvalues()(0) == doctest::Approx(-std::sqrt(2.0) * p.J).epsilon(1e-12));
    }
}

TEST_CASE("dressed basis") {
    auto p = fig2_params();
    auto s = default_space(ModelVariant::FullSRP);
    DressedBasis d = dressed_basis(s);

    SUBCASE("orthonormality") {
        for (const StateVector* v : {&d.T0, &d.S0, &d.E_plus, &d.E_minus, &d.alpha_plus,
                                     &d.alpha_minus, &d.beta_plus, &d.beta_minus, &d.psi_plus,
                                     &d.psi_minus})
            CHECK(std::abs(v->vector().norm() - 1.0) <= 1e-12);
        CHECK(std::abs(d.T0.vector().dot(d.S0.vector())) <= 1e-12);
        CHECK(std::abs(d.E_plus.vector().dot(d.E_minus.vector())) <= 1e-12);
        CHECK(std::abs(d.psi_plus.vector().dot(d.psi_minus.vector())) <= 1e-12);
    }

    SUBCASE("<E+-|H_dd|E+-> = +-sqrt(2) J") {
        Matrix hdd = exchange_dd(s, p.J);
        cplx ep = d.E_plus.vector().dot(hdd * d.E_plus.vector());
        cplx em = d.E_minus.vector().dot(hdd * d.E_minus.vector());
        CHECK(ep.real() == doctest::Approx(std::sqrt(2.0) * p.J).epsilon(1e-12));
        CHECK(em.real() == doctest::Approx(-std::sqrt(2.0) * p.J).epsilon(1e-12));
    }

    SUBCASE("alpha/beta are eigenvectors of the Omega_s block") {
        // Block Hamiltonian Omega_s (|T0><E-| - |S0><E+|) + H.c., built
        // independently from the dressed vectors.
        Matrix hb = p.Omega_s * (d.T0.vector() * d.E_minus.vector().adjoint() -
                                 d.S0.vector() * d.E_plus.vector().adjoint());
        hb = (hb + hb.adjoint()).eval();
        auto resid = [&](const StateVector& v, double ev) {
            return (hb * v.vector() - ev * v.vector()).norm();
        };
        CHECK(resid(d.alpha_plus, p.Omega_s) < 1e-10);
        CHECK(resid(d.alpha_minus, -p.Omega_s) < 1e-10);
        CHECK(resid(d.beta_plus, p.Omega_s) < 1e-10);
        CHECK(resid(d.beta_minus, -p.Omega_s) < 1e-10);

        // cross-check through a numeric eigendecomposition of the block
        Eigen::SelfAdjointEigenSolver<Matrix> es(hb);
        int n_plus = 0, n_minus = 0;
        for (int i = 0; i < es.eigenvalues().size(); ++i) {
            if (std::abs(es.eigenvalues()(i) - p.Omega_s) < 1e-9) ++n_plus;
            if (std::abs(es.eigenvalues()(i) + p.Omega_s) < 1e-9) ++n_minus;
        }
        CHECK(n_plus == 2);
        CHECK(n_minus == 2);
    }

    SUBCASE("missing level is an error") {
        CHECK_THROWS(dressed_basis(default_space(ModelVariant::EffectiveSRP)));
    }
}

TEST_CASE("Eq. (8) decay channels") {
    PhysicalParams p = fig2_params();
    p.lambda = 0.5;
    p.gamma_split = 0.5;
    p.tau_r = 0.2;  // ms -> gamma_r = 0.005 /us
    auto chans = build_decay_channels(ModelVariant::FullSRP, p);
    REQUIRE(chans.size() == 6);
    // per atom: (0.00125, 0.00125, 0.0025) /us
    CHECK(chans[0].rate == doctest::Approx(0.00125).epsilon(1e-12));
    CHECK(chans[1].rate == doctest::Approx(0.00125).epsilon(1e-12));
    CHECK(chans[2].rate == doctest::Approx(0.0025).epsilon(1e-12));

    SUBCASE("lambda = 0 sends everything to |alpha>") {
        p.lambda = 0.0;
        auto c0 = build_decay_channels(ModelVariant::FullSRP, p);
        CHECK(c0[0].rate == 0.0);
        CHECK(c0[1].rate == 0.0);
        CHECK(c0[2].rate == doctest::Approx(0.005).epsilon(1e-12));
    }
}

TEST_CASE("Eq. (14) channel rates: (3, 2)/5 of Gamma") {
    PhysicalParams p;
    p.Gamma = 1.0 / 0.02569;  // 25.69 ns lifetime
    p.Omega_p = 1.354;
    auto chans = build_decay_channels(ModelVariant::EngineeredDecaySingleAtom, p);
    REQUIRE(chans.size() == 2);
    CHECK(chans[0].rate == doctest::Approx(23.36).epsilon(5e-4));
    CHECK(chans[1].rate == doctest::Approx(15.57).epsilon(5e-4));
}

TEST_CASE("engineered rates") {
    auto [g0, g1] = engineered_rates(1.354, 38.93);
    CHECK(g0 + g1 == doctest::Approx(0.1884).epsilon(5e-4));    // ~ 2*pi*0.03 /us
    CHECK(g0 / (g0 + g1) == doctest::Approx(0.6).epsilon(1e-12));

    auto [z0, z1] = engineered_rates(0.0, 38.93);
    CHECK(z0 == 0.0);
    CHECK(z1 == 0.0);

    auto [d0, d1] = engineered_rates(2.0 * 1.354, 38.93);
    CHECK(d0 == doctest::Approx(4.0 * g0).epsilon(1e-12));
    CHECK(d1 == doctest::Approx(4.0 * g1).epsilon(1e-12));

    CHECK_THROWS(engineered_rates(1.0, 0.0));
}

TEST_CASE("dipole coupling versus distance") {
    PhysicalParams p;
    CHECK(dipole_coupling_from_distance(p.C3, 2.5) / two_pi ==
          doctest::Approx(152.96).epsilon(1e-4));
    CHECK(dipole_coupling_from_distance(p.C3, 10.0) / two_pi ==
          doctest::Approx(2.39).epsilon(1e-9));
    // invert the cubic for J/2pi = 50 MHz
    double r50 = std::cbrt(2390.0 / 50.0);
    CHECK(r50 == doctest::Approx(3.6292).epsilon(1e-4));
    CHECK(dipole_coupling_from_distance(p.C3, r50) / two_pi == doctest::Approx(50.0).epsilon(1e-9));
    // cross-check the quoted distances for DeltaJ in {1.7, -2.25} MHz
    CHECK(std::cbrt(2390.0 / 51.7) == doctest::Approx(3.589).epsilon(2e-4));
    CHECK(std::cbrt(2390.0 / 47.75) == doctest::Approx(3.685).epsilon(2e-4));
    CHECK_THROWS(dipole_coupling_from_distance(p.C3, 0.0));
}

TEST_CASE("Foerster deviation") {
    SUBCASE("no defect, no deviation") {
        auto d = foerster_deviation(two_pi * 50.0, 0.0);
        CHECK(d.exact == 0.0);
        CHECK(d.approx == 0.0);
    }
    SUBCASE("paper point J/2pi = 50, delta/2pi = 8.5 MHz") {
        auto d = foerster_deviation(two_pi * 50.0, two_pi * 8.5);
        CHECK(d.exact / two_pi == doctest::Approx(4.3776).epsilon(1e-4));
        CHECK(d.approx / two_pi == doctest::Approx(4.3777).epsilon(1e-4));
        CHECK(std::abs(d.exact - d.approx) / d.exact < 1e-3);
    }
    SUBCASE("expansion converges as J grows") {
        const double delta = two_pi * 8.5;
        double prev = 1e300;
        for (double ratio : {10.0, 100.0, 1000.0}) {
            auto d = foerster_deviation(ratio * delta, delta);
            double gap = std::abs(d.exact - d.approx);
            CHECK(gap < prev);
            prev = gap;
        }
    }
    CHECK_THROWS(foerster_deviation(0.0, 1.0));
}

TEST_CASE("SRP condition report") {
    auto p = fig2_params();  // Delta defaults to sqrt(2) J
    auto rep = srp_condition_report(p);
    CHECK(std::abs(rep.delta_residual) < 1e-9);
    CHECK(rep.ratio_delta_omega_s == doctest::Approx(70.71).epsilon(1e-3));
    CHECK(rep.ratio_omega_s_omega == doctest::Approx(50.0).epsilon(1e-12));
    CHECK(rep.ok());

    SUBCASE("Delta = 0 warns") {
        p.Delta = 0.0;
        auto r0 = srp_condition_report(p);
        CHECK(r0.delta_residual == doctest::Approx(-std::sqrt(2.0) * p.J).epsilon(1e-12));
        CHECK(!r0.ok());
    }
    SUBCASE("Omega = Omega_s warns") {
        p.Omega = p.Omega_s;
        auto r1 = srp_condition_report(p);
        CHECK(r1.ratio_omega_s_omega == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(!r1.ok());
    }
}

TEST_CASE("vdW comparison drives both atoms in phase") {
    auto p = fig2_params();
    p.U_vdw = two_pi * 50.0;
    p.Delta = std::sqrt(2.0) * two_pi * 50.0;
    auto h = build_hamiltonian(ModelVariant::VdwComparison, p);
    const auto& s = h.space();
    Matrix m = h.evaluate(0.123);
    int i00 = s.basis_index(std::array{Level::g0, Level::g0});
    int ir0 = s.basis_index(std::array{Level::r, Level::g0});
    int i0r = s.basis_index(std::array{Level::g0, Level::r});
    CHECK(std::abs(m(ir0, i00) - m(i0r, i00)) < 1e-12);
    int rr = s.basis_index(std::array{Level::r, Level::r});
    CHECK(m(rr, rr).real() == doctest::Approx(p.U_vdw).epsilon(1e-12));
}

TEST_CASE("dissipative channel sets for the full models") {
    PhysicalParams p = fig2_params();
    p.Omega_w = two_pi * 0.005;
    p.J = two_pi * 100.0;
    p.Omega_p = 1.354;
    p.Omega_b = 1.9154;
    p.Gamma = 1.0 / 0.02569;

    SUBCASE("Eq. (13): engineered plus natural into the qubit basis") {
        p.branch0 = 0.2;
        auto chans = build_decay_channels(ModelVariant::FullDissipative, p);
        CHECK(chans.size() == 16);  // per atom: 2 engineered + 3 levels x 2
        double total_r = 0.0;
        for (const auto& c : chans)
            if (c.label.find("gamma_r^") != std::string::npos &&
                c.label.find("atom1") != std::string::npos)
                total_r += c.rate;
        CHECK(total_r == doctest::Approx(p.gamma_r()).epsilon(1e-12));
        SUBCASE("branchings must sum to one") {
            p.branch1 = 0.5;
            CHECK_THROWS(build_decay_channels(ModelVariant::FullDissipative, p));
        }
    }

    SUBCASE("Eq. (19): pump fractions (1/2, 1/3, 1/6)") {
        p.branch0 = 0.3;
        p.branch1 = 0.3;
        auto chans = build_decay_channels(ModelVariant::RecyclingFull, p);
        const double pump = 4.0 * p.Omega_b * p.Omega_b / p.Gamma;
        double seen0 = -1, seen1 = -1, seena = -1, leak_r = -1;
        for (const auto& c : chans) {
            if (c.label == "gamma_p^0 atom1") seen0 = c.rate;
            if (c.label == "gamma_p^1 atom1") seen1 = c.rate;
            if (c.label == "gamma_p^alpha atom1") seena = c.rate;
            if (c.label == "gamma_r^alpha atom1") leak_r = c.rate;
        }
        CHECK(seen0 == doctest::Approx(pump / 2.0).epsilon(1e-12));
        CHECK(seen1 == doctest::Approx(pump / 3.0).epsilon(1e-12));
        CHECK(seena == doctest::Approx(pump / 6.0).epsilon(1e-12));
        CHECK(leak_r == doctest::Approx(0.4 * p.gamma_r()).epsilon(1e-12));
    }

    SUBCASE("Eq. (11): flat gamma/2 branching") {
        p.gamma_flat = 0.1;
        auto chans = build_decay_channels(ModelVariant::EffectiveDissipative, p);
        CHECK(chans.size() == 4);
        for (const auto& c : chans) CHECK(c.rate == doctest::Approx(0.05).epsilon(1e-12));
    }

    SUBCASE("natural leakage set for the ground-state-blockade run") {
        auto s = default_space(ModelVariant::FullDissipative);
        auto chans = natural_leak_channels(s, p);
        CHECK(chans.size() == 6);
        CHECK(chans[0].rate == doctest::Approx(1.0 / 200.0).epsilon(1e-12));
        CHECK(chans[1].rate == doctest::Approx(1.0 / 480.0).epsilon(1e-12));
        CHECK(chans[2].rate == doctest::Approx(1.0 / 130.0).epsilon(1e-12));
    }

    SUBCASE("non-dissipative variants have no channel set") {
        CHECK_THROWS(build_decay_channels(ModelVariant::EffectiveSRP, p));
    }
}

TEST_CASE("parameter validation") {
    PhysicalParams p;
    p.lambda = 1.2;
    CHECK_THROWS(p.validate());
    p.lambda = 0.5;
    p.branch0 = 0.8;
    p.branch1 = 0.5;
    CHECK_THROWS(p.validate());
    p.branch1.reset();
    p.tau_r = 0.0;
    CHECK_THROWS(p.validate());
}

TEST_CASE("antiblockade two-photon resonance at the Fig. 3(b) parameters") {
    PhysicalParams p;
    p.Omega_s = two_pi * std::pow(2.0, -0.25);
    p.Delta = two_pi * 25.0 * std::sqrt(2.0);
    p.J = two_pi * 50.0;
    CHECK(2.0 * *p.Delta == doctest::Approx(std::sqrt(2.0) * p.J).epsilon(1e-12));
    // gating-time equivalence: Omega_s^2 / Delta = 2*pi*0.02 MHz
    CHECK(p.Omega_s * p.Omega_s / *p.Delta == doctest::Approx(two_pi * 0.02).epsilon(1e-12));
    auto h = build_hamiltonian(ModelVariant::Antiblockade, p);
    CHECK(hermiticity_defect(h.evaluate(1.234)) <= 1e-12);
}
