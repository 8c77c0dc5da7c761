#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "srp/dynamics.hpp"
#include "srp/observables.hpp"

using namespace srp;

TEST_CASE("gate fidelity, unitary form") {
    auto u_cz = cz_gate();
    CHECK(gate_fidelity_unitary(u_cz, u_cz) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(gate_fidelity_unitary(Eigen::Matrix4cd::Identity(), u_cz) ==
          doctest::Approx(0.25).epsilon(1e-15));

    SUBCASE("global phase invariance") {
        std::mt19937 rng(31);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        Eigen::Matrix4cd m;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) m(i, j) = cplx(u(rng), u(rng));
        double base = gate_fidelity_unitary(m, u_cz);
        for (double theta : {0.3, 1.7, 4.4}) {
            Eigen::Matrix4cd rotated = std::polar(1.0, theta) * m;
            CHECK(std::abs(gate_fidelity_unitary(rotated, u_cz) - base) < 1e-12);
        }
    }
}

TEST_CASE("gate fidelity, process form") {
    auto u_cz = cz_gate();

    SUBCASE("identity channel against the identity gate") {
        auto choi = choi_of_unitary(Eigen::Matrix4cd::Identity());
        CHECK(gate_fidelity_process(choi, Eigen::Matrix4cd::Identity()) ==
              doctest::Approx(1.0).epsilon(1e-12));
    }

    SUBCASE("coincides with Eq. (5) for unitary channels") {
        std::mt19937 rng(7);
        std::normal_distribution<double> g(0.0, 1.0);
        Eigen::Matrix4cd a;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) a(i, j) = cplx(g(rng), g(rng));
        Eigen::HouseholderQR<Eigen::Matrix4cd> qr(a);
        Eigen::Matrix4cd q = qr.householderQ();
        CHECK(std::abs(gate_fidelity_process(choi_of_unitary(q), u_cz) -
                       gate_fidelity_unitary(q, u_cz)) < 1e-12);
    }

    SUBCASE("fully leaking channel scores zero") {
        Eigen::MatrixXcd zero_choi = Eigen::MatrixXcd::Zero(16, 16);
        CHECK(gate_fidelity_process(zero_choi, u_cz) == 0.0);
    }

    SUBCASE("non-Hermitian input is rejected") {
        Eigen::MatrixXcd bad = Eigen::MatrixXcd::Zero(16, 16);
        bad(0, 1) = 1.0;
        CHECK_THROWS(gate_fidelity_process(bad, u_cz));
    }
}

TEST_CASE("excitation probability") {
    auto s = HilbertSpace::two_atoms(
        {Level::g0, Level::g1, Level::r, Level::p1, Level::p2, Level::alpha});
    CHECK(excitation_probability(pure_density(basis_state(s, {Level::g0, Level::g0}))) ==
          doctest::Approx(0.0).epsilon(1e-12));
    CHECK(excitation_probability(pure_density(basis_state(s, {Level::r, Level::g1}))) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(excitation_probability(pure_density(basis_state(s, {Level::alpha, Level::g1}))) ==
          doctest::Approx(0.0).epsilon(1e-12));

    SUBCASE("complements the non-Rydberg block population") {
        std::mt19937 rng(13);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (int rep = 0; rep < 5; ++rep) {
            Vector v(s.dim());
            for (int i = 0; i < s.dim(); ++i) v(i) = cplx(u(rng), u(rng));
            v.normalize();
            auto rho = pure_density(StateVector(s, v));
            double pe = excitation_probability(rho);
            double block = 0.0;
            for (Level a : {Level::g0, Level::g1, Level::alpha})
                for (Level b : {Level::g0, Level::g1, Level::alpha})
                    block += population(rho, basis_state(s, {a, b}));
            CHECK(std::abs(pe + block - 1.0) < 1e-10);
        }
    }

    SUBCASE("missing levels are an error") {
        auto s3 = HilbertSpace::two_atoms({Level::g0, Level::g1, Level::r});
        CHECK_THROWS(ObservableSpec::excitation("P_e", s3));
    }
}

TEST_CASE("population") {
    auto s = HilbertSpace::two_atoms({Level::g0, Level::g1, Level::r});
    auto psi_plus = bell_psi_plus(s);
    auto psi_minus = bell_psi_minus(s);
    CHECK(population(pure_density(psi_plus), psi_plus) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(population(pure_density(psi_plus), psi_minus) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(population(psi_plus, psi_minus) == doctest::Approx(0.0).epsilon(1e-12));
    auto s4 = HilbertSpace::two_atoms({Level::g0, Level::g1});
    CHECK_THROWS(population(pure_density(psi_plus), bell_psi_plus(s4)));
}

TEST_CASE("exponential rate fit") {
    SUBCASE("synthetic exponential") {
        std::vector<double> t, y;
        for (int i = 0; i <= 40; ++i) {
            t.push_back(0.5 * i);
            y.push_back(std::exp(-0.2 * 0.5 * i));
        }
        auto fit = fit_exponential_rate(t, y);
        CHECK(std::abs(fit.rate - 0.2) < 1e-4);
        CHECK(fit.residual < 1e-10);
    }

    SUBCASE("recovers rates over three decades") {
        for (double rate : {0.01, 0.1, 1.0, 10.0}) {
            std::vector<double> t, y;
            for (int i = 0; i <= 30; ++i) {
                double ti = i / (rate * 10.0);
                t.push_back(ti);
                y.push_back(std::exp(-rate * ti));
            }
            auto fit = fit_exponential_rate(t, y);
            CHECK(std::abs(fit.rate - rate) / rate < 1e-3);
        }
    }

    SUBCASE("input validation") {
        std::vector<double> t = {0, 1, 2, 3, 4, 5, 6, 7};
        std::vector<double> y = {1, 1, 1, 1, 1, 1, 1, -1};
        CHECK_THROWS(fit_exponential_rate(t, y));
        std::vector<double> t_short = {0, 1, 2};
        std::vector<double> y_short = {1, 0.9, 0.8};
        CHECK_THROWS(fit_exponential_rate(t_short, y_short));
    }
}

TEST_CASE("observable specs evaluate consistently on psi and rho") {
    auto s = HilbertSpace::two_atoms({Level::g0, Level::g1, Level::r});
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Vector v(s.dim());
    for (int i = 0; i < s.dim(); ++i) v(i) = cplx(u(rng), u(rng));
    v.normalize();
    StateVector psi(s, v);
    auto rho = pure_density(psi);

    auto specs = std::vector<ObservableSpec>{
        ObservableSpec::population("p", basis_state(s, {Level::g1, Level::g1})),
        ObservableSpec::fidelity("f", bell_psi_minus(s)),
        ObservableSpec::projector("proj", projector_op(s, 0, Level::r)),
        ObservableSpec::coherence("c", basis_state(s, {Level::r, Level::g0}),
                                  basis_state(s, {Level::g0, Level::g0})),
    };
    for (const auto& spec : specs)
        CHECK(std::abs(spec.eval(psi.vector()) - spec.eval(rho.matrix())) < 1e-12);
}
