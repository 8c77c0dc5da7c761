#include "srp/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <functional>
#include <map>
#include <stdexcept>

namespace srp {

namespace {

constexpr double kPi = 3.14159265358979323846;

double srp_gate_time(double omega) { return kPi / (std::sqrt(2.0) * omega); }

// ---------------------------------------------------------------------
// scenario definition plumbing
// ---------------------------------------------------------------------

struct Resolved {
    PhysicalParams params;
    IntegratorConfig integrator;
    std::map<std::string, double> knobs;
    int jobs = 1;
    // knobs explicitly overridden by the caller
    std::vector<std::string> overridden;

    double knob(const std::string& name) const { return knobs.at(name); }
    bool is_overridden(const std::string& name) const {
        return std::find(overridden.begin(), overridden.end(), name) != overridden.end();
    }
};

struct ScenarioDef {
    ScenarioInfo info;
    PhysicalParams params;
    IntegratorConfig integrator;
    std::map<std::string, double> knobs;
    std::function<void(const ScenarioDef&, Resolved&, Report&)> run;
};

void add_metric(Report& rep, std::string name, double value) {
    rep.metrics.emplace_back(std::move(name), value);
}

void add_check(Report& rep, std::string name, std::string cmp, double measured, double target,
               double tol, std::string provenance) {
    bool pass = false;
    if (cmp == "abs")
        pass = std::abs(measured - target) <= tol;
    else if (cmp == "ge")
        pass = measured >= target;
    else if (cmp == "le")
        pass = measured <= target;
    else
        throw std::logic_error("unknown comparison " + cmp);
    rep.checks.push_back(
        {std::move(name), std::move(cmp), measured, target, tol, pass, std::move(provenance)});
}

// Column-wise CSV assembly from trajectories that share a grid.
void set_csv(Report& rep, const std::vector<double>& t,
             std::vector<std::pair<std::string, const std::vector<double>*>> cols) {
    rep.csv_header.clear();
    rep.csv_header.push_back("t_us");
    for (auto& [name, ptr] : cols) rep.csv_header.push_back(name);
    rep.csv_rows.assign(t.size(), {});
    for (size_t i = 0; i < t.size(); ++i) {
        rep.csv_rows[i].push_back(t[i]);
        for (auto& [name, ptr] : cols) rep.csv_rows[i].push_back((*ptr)[i]);
    }
}

double max_of(const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); }
double min_of(const std::vector<double>& v) { return *std::min_element(v.begin(), v.end()); }

DensityMatrix mixed_ground_state(const HilbertSpace& s) {
    Matrix rho = Matrix::Zero(s.dim(), s.dim());
    for (Level a : {Level::g0, Level::g1})
        for (Level b : {Level::g0, Level::g1}) {
            int i = s.basis_index(std::array{a, b});
            rho(i, i) = 0.25;
        }
    return DensityMatrix(s, rho);
}

StateVector uniform_superposition(const HilbertSpace& s) {
    Vector v = Vector::Zero(s.dim());
    for (Level a : {Level::g0, Level::g1})
        for (Level b : {Level::g0, Level::g1}) v(s.basis_index(std::array{a, b})) = 0.5;
    return StateVector(s, v);
}

// (|00> + |01> + |10> - |11>)/2, the controlled-Z image of the uniform
// superposition.
StateVector cz_target_state(const HilbertSpace& s) {
    Vector v = Vector::Zero(s.dim());
    for (Level a : {Level::g0, Level::g1})
        for (Level b : {Level::g0, Level::g1}) v(s.basis_index(std::array{a, b})) = 0.5;
    v(s.basis_index(std::array{Level::g1, Level::g1})) = -0.5;
    return StateVector(s, v);
}

// Dissipative gate fidelity in the Table I sense: the uniform
// superposition evolved under the master equation, projected on its ideal
// controlled-Z image.
double table1_state_fidelity(const HamiltonianSpec& h, std::span<const DecayChannel> chans,
                             double t_gate, const IntegratorConfig& cfg) {
    const auto& s = h.space();
    auto obs = std::vector<ObservableSpec>{ObservableSpec::fidelity("F", cz_target_state(s))};
    const double grid[2] = {0.0, t_gate};
    auto traj = evolve_lindblad(h, chans, pure_density(uniform_superposition(s)), grid, cfg, obs);
    return traj.series[0].back();
}

double ideal_gate_fidelity(const HamiltonianSpec& h, double t_gate, const IntegratorConfig& cfg) {
    return gate_fidelity_unitary(compute_gate_unitary(h, t_gate, cfg), cz_gate());
}

// ---------------------------------------------------------------------
// scenario implementations
// ---------------------------------------------------------------------

void run_fig2_srp(const ScenarioDef&, Resolved& r, Report& rep) {
    const auto& p = r.params;
    auto h = build_hamiltonian(ModelVariant::FullSRP, p);
    const auto& s = h.space();
    const double t_g = srp_gate_time(p.Omega);
    auto grid = make_grid(t_g, static_cast<int>(r.knob("samples")));

    const StateVector inits[4] = {
        basis_state(s, {Level::g0, Level::g0}), basis_state(s, {Level::g0, Level::g1}),
        basis_state(s, {Level::g1, Level::g0}), basis_state(s, {Level::g1, Level::g1})};
    std::vector<Trajectory> trajs(4);
    parallel_for_indexed(4, r.jobs, [&](int i) {
        auto obs = std::vector<ObservableSpec>{
            ObservableSpec::population("P", inits[i]),
            ObservableSpec::population("P_bright", bright_state(s))};
        trajs[i] = evolve_schrodinger(h, inits[i], grid, r.integrator, obs);
    });

    add_metric(rep, "t_gate_us", t_g);
    const char* names[4] = {"P00", "P01", "P10", "P11"};
    for (int i = 0; i < 3; ++i) {
        add_metric(rep, std::string("min_") + names[i], min_of(trajs[i].series[0]));
        add_check(rep, std::string(names[i]) + " frozen", "ge", min_of(trajs[i].series[0]), 0.995,
                  0.0, "PAPER Sec. III.A: fidelities higher than 99.5%");
    }
    double max_bright = max_of(trajs[3].series[1]);
    add_metric(rep, "max_P_bright", max_bright);
    add_check(rep, "bright-state oscillation", "ge", max_bright, 0.99, 0.0,
              "PAPER Fig. 2(d): |11> resonantly coupled to (|r1>+|1r>)/sqrt(2)");
    add_metric(rep, "P11_return", trajs[3].series[0].back());

    int i11 = s.basis_index(std::array{Level::g1, Level::g1});
    cplx amp11 = trajs[3].final_state(i11);
    add_metric(rep, "return_amp_re", amp11.real());
    add_metric(rep, "return_amp_im", amp11.imag());
    add_check(rep, "controlled-Z phase", "le", std::abs(amp11 - cplx(-1.0, 0.0)), 0.05, 0.0,
              "PAPER Sec. III.B: gate = diag(1,1,1,-1) at t_g = pi/(sqrt(2) Omega)");

    add_metric(rep, "gate_fidelity", ideal_gate_fidelity(h, t_g, r.integrator));

    set_csv(rep, trajs[0].times,
            {{"P00", &trajs[0].series[0]},
             {"P01", &trajs[1].series[0]},
             {"P10", &trajs[2].series[0]},
             {"P11", &trajs[3].series[0]},
             {"P_bright", &trajs[3].series[1]}});
}

void run_fig2_vdw(const ScenarioDef&, Resolved& r, Report& rep) {
    const auto& p = r.params;
    auto h = build_hamiltonian(ModelVariant::VdwComparison, p);
    const auto& s = h.space();
    auto grid = make_grid(r.knob("t_end_us"), static_cast<int>(r.knob("samples")));
    auto psi01 = basis_state(s, {Level::g0, Level::g1});
    auto psi10 = basis_state(s, {Level::g1, Level::g0});
    // antisymmetric single-excitation combination that mediates the
    // transfer
    Vector med = Vector::Zero(s.dim());
    med(s.basis_index(std::array{Level::g0, Level::r})) = 1.0 / std::sqrt(2.0);
    med(s.basis_index(std::array{Level::r, Level::g0})) = -1.0 / std::sqrt(2.0);
    auto obs = std::vector<ObservableSpec>{
        ObservableSpec::population("P01", psi01), ObservableSpec::population("P10", psi10),
        ObservableSpec::population("P_mediator", StateVector(s, med))};
    auto traj = evolve_schrodinger(h, psi01, grid, r.integrator, obs);
    double max10 = max_of(traj.series[1]);
    add_metric(rep, "max_P10", max10);
    add_check(rep, "|01> -> |10> transfer", "ge", max10, 0.5, 0.0,
              "PAPER Sec. III.A: undesired resonant transition between states");
    set_csv(rep, traj.times,
            {{"P01", &traj.series[0]},
             {"P10", &traj.series[1]},
             {"P_mediator", &traj.series[2]}});
}

double fig3_fidelity_at(ModelVariant variant, PhysicalParams p, double delta_j_mhz,
                        const IntegratorConfig& cfg) {
    p.J = two_pi * (50.0 + delta_j_mhz);
    auto h = build_hamiltonian(variant, p);
    return ideal_gate_fidelity(h, srp_gate_time(two_pi * 0.02), cfg);
}

void run_fig3(ModelVariant variant, const Resolved& r, Report& rep,
              std::vector<double> default_points) {
    std::vector<double> points = default_points;
    if (r.is_overridden("deltaJ_MHz")) points = {r.knob("deltaJ_MHz")};
    std::vector<double> fid(points.size());
    parallel_for_indexed(static_cast<int>(points.size()), r.jobs, [&](int i) {
        fid[static_cast<size_t>(i)] =
            fig3_fidelity_at(variant, r.params, points[static_cast<size_t>(i)], r.integrator);
    });
    rep.csv_header = {"deltaJ_MHz", "gate_fidelity"};
    for (size_t i = 0; i < points.size(); ++i) rep.csv_rows.push_back({points[i], fid[i]});
    for (size_t i = 0; i < points.size(); ++i)
        if (points[i] == 0.0) add_metric(rep, "gate_fidelity", fid[i]);
    if (points.size() == 1 && !rep.has_metric("gate_fidelity"))
        add_metric(rep, "gate_fidelity", fid[0]);
}

void run_fig3a(const ScenarioDef&, Resolved& r, Report& rep) {
    run_fig3(ModelVariant::FullSRP, r, rep, {-4.0, -3.0, -2.25, -2.0, -1.0, 0.0, 1.0, 1.7, 2.0, 3.0, 4.0});
    if (r.is_overridden("deltaJ_MHz")) return;
    double lo_band = 1.0;
    for (const auto& row : rep.csv_rows)
        if (row[0] >= -2.25 && row[0] <= 1.7) lo_band = std::min(lo_band, row[1]);
    add_metric(rep, "min_fidelity_in_band", lo_band);
    add_check(rep, "fidelity >= 0.99 across DeltaJ in [-2.25, 1.7] MHz", "ge", lo_band, 0.99, 0.0,
              "PAPER Sec. III.B: fidelity of gate remains above 99%");
}

void run_fig3b(const ScenarioDef&, Resolved& r, Report& rep) {
    // half of one-tenth of the SRP 99%-band (3.95 MHz) on each side
    const double w10 = 0.395 / 2.0;
    run_fig3(ModelVariant::Antiblockade, r, rep, {-w10, -0.05, 0.0, 0.05, w10});
    if (r.is_overridden("deltaJ_MHz")) return;
    auto at = [&](double x) {
        for (const auto& row : rep.csv_rows)
            if (row[0] == x) return row[1];
        throw std::logic_error("missing sweep point");
    };
    add_check(rep, "peak fidelity at DeltaJ = 0", "ge", at(0.0), 0.99, 0.0,
              "DERIVED: compensation calibrated so the antiblockade gate peaks above 99%");
    add_check(rep, "peak is at the resonance", "ge", at(0.0) - std::max(at(0.05), at(-0.05)), 0.0,
              0.0, "PAPER Fig. 3(b): fidelity peaks at DeltaJ = 0");
    add_check(rep, "99% width at least 10x narrower than SRP", "le",
              std::max(at(w10), at(-w10)), 0.99, 0.0,
              "PAPER Sec. III.B: a minor change on the interatomic distance destroys the dynamics");
}

void run_fig4(const ScenarioDef&, Resolved& r, Report& rep) {
    PhysicalParams p = r.params;
    auto h_def = build_hamiltonian(ModelVariant::FullWithDefect, p);
    PhysicalParams p0 = p;
    p0.delta_defect = 0.0;
    auto h_ref = build_hamiltonian(ModelVariant::FullSRP, p0);
    const auto& s = h_def.space();
    const double t_g = srp_gate_time(p.Omega);
    auto grid = make_grid(t_g, static_cast<int>(r.knob("samples")));
    const StateVector inits[3] = {basis_state(s, {Level::g0, Level::g0}),
                                  basis_state(s, {Level::g0, Level::g1}),
                                  basis_state(s, {Level::g1, Level::g0})};
    std::vector<Trajectory> def_trajs(3), ref_trajs(3);
    parallel_for_indexed(6, r.jobs, [&](int k) {
        int i = k % 3;
        auto obs = std::vector<ObservableSpec>{ObservableSpec::population("P", inits[i])};
        if (k < 3)
            def_trajs[i] = evolve_schrodinger(h_def, inits[i], grid, r.integrator, obs);
        else
            ref_trajs[i] = evolve_schrodinger(h_ref, inits[i], grid, r.integrator, obs);
    });
    const char* names[3] = {"P00", "P01", "P10"};
    for (int i = 0; i < 3; ++i) {
        double lo_def = min_of(def_trajs[i].series[0]);
        double lo_ref = min_of(ref_trajs[i].series[0]);
        add_metric(rep, std::string("min_") + names[i], lo_def);
        add_metric(rep, std::string("min_") + names[i] + "_no_defect", lo_ref);
        add_check(rep, std::string(names[i]) + " suppressed to its initial value", "ge", lo_def,
                  0.98, 0.0, "PAPER Sec. III.B with the 0.98 floor of the spec interpretation");
        add_check(rep, std::string(names[i]) + " slightly below the defect-free run", "le", lo_def,
                  lo_ref + 1e-9, 0.0, "PAPER Sec. III.B: values slightly lower than in Fig. 2");
    }
    set_csv(rep, def_trajs[0].times,
            {{"P00", &def_trajs[0].series[0]},
             {"P01", &def_trajs[1].series[0]},
             {"P10", &def_trajs[2].series[0]}});
}

void run_fig5(const ScenarioDef&, Resolved& r, Report& rep) {
    struct Leg {
        double omega_mhz;
        double bound;
    };
    const Leg legs[2] = {{0.02, 2.5e-4}, {0.06, 1.9e-3}};
    std::vector<Trajectory> trajs(2);
    std::vector<double> tg(2);
    parallel_for_indexed(2, r.jobs, [&](int i) {
        PhysicalParams p = r.params;
        p.Omega = two_pi * legs[i].omega_mhz;
        auto h = build_hamiltonian(ModelVariant::FullSRP, p);
        const auto& s = h.space();
        tg[i] = srp_gate_time(p.Omega);
        auto grid = make_grid(tg[i], static_cast<int>(r.knob("samples")));
        auto obs = std::vector<ObservableSpec>{
            ObservableSpec::population("Ppq", basis_state(s, {Level::p1, Level::p2})),
            ObservableSpec::population("Pqp", basis_state(s, {Level::p2, Level::p1})),
            ObservableSpec::population("Prr", basis_state(s, {Level::r, Level::r}))};
        trajs[i] = evolve_schrodinger(h, uniform_superposition(s), grid, r.integrator, obs);
    });
    for (int i = 0; i < 2; ++i) {
        std::vector<double> pair_sum(trajs[i].times.size());
        for (size_t k = 0; k < pair_sum.size(); ++k)
            pair_sum[k] = trajs[i].series[0][k] + trajs[i].series[1][k];
        double peak = max_of(pair_sum);
        char mname[64];
        std::snprintf(mname, sizeof mname, "max_Ppair_omega%.2f", legs[i].omega_mhz);
        add_metric(rep, mname, peak);
        char cname[96];
        std::snprintf(cname, sizeof cname,
                      "double excitation <= %.1e at Omega/2pi = %.2f MHz over t_g = %.1f us",
                      legs[i].bound, legs[i].omega_mhz, tg[i]);
        add_check(rep, cname, "le", peak, legs[i].bound, 0.0,
                  "PAPER Sec. III.C: populations of |p'p''> (|p''p'>)");
    }
    // two legs with their own grids側: report both time axes explicitly
    rep.csv_header = {"t_us_omega002", "Ppair_omega002", "t_us_omega006", "Ppair_omega006"};
    size_t n = std::min(trajs[0].times.size(), trajs[1].times.size());
    for (size_t k = 0; k < n; ++k)
        rep.csv_rows.push_back({trajs[0].times[k],
                                trajs[0].series[0][k] + trajs[0].series[1][k], trajs[1].times[k],
                                trajs[1].series[0][k] + trajs[1].series[1][k]});
}

void run_table1(const ScenarioDef&, Resolved& r, Report& rep) {
    struct Cell {
        double lambda;
        double omega_mhz;
        double target;
    };
    const Cell all_cells[8] = {{1.0, 0.02, 0.9898}, {0.5, 0.02, 0.9888}, {0.2, 0.02, 0.9884},
                               {0.0, 0.02, 0.9880}, {1.0, 0.06, 0.9948}, {0.5, 0.06, 0.9946},
                               {0.2, 0.06, 0.9944}, {0.0, 0.06, 0.9942}};
    std::vector<Cell> cells;
    for (const Cell& c : all_cells) {
        if (r.is_overridden("lambda") && c.lambda != r.knob("lambda")) continue;
        if (r.is_overridden("omega_MHz") && c.omega_mhz != r.knob("omega_MHz")) continue;
        cells.push_back(c);
    }
    if (cells.empty()) throw std::invalid_argument("table1_decay: no cell matches the knobs");

    const bool with_choi = r.knob("with_choi") != 0.0;
    std::vector<double> f_state(cells.size()), f_choi(cells.size(), -1.0);
    parallel_for_indexed(static_cast<int>(cells.size()), r.jobs, [&](int i) {
        PhysicalParams p = r.params;
        p.lambda = cells[static_cast<size_t>(i)].lambda;
        p.Omega = two_pi * cells[static_cast<size_t>(i)].omega_mhz;
        auto space = default_dissipative_space(ModelVariant::FullSRP);
        auto h = build_hamiltonian(ModelVariant::FullSRP, p, space);
        auto chans = build_decay_channels(ModelVariant::FullSRP, p, space);
        const double t_g = srp_gate_time(p.Omega);
        f_state[static_cast<size_t>(i)] = table1_state_fidelity(h, chans, t_g, r.integrator);
        if (with_choi)
            f_choi[static_cast<size_t>(i)] = gate_fidelity_process(
                compute_process_choi(h, chans, t_g, r.integrator, 1), cz_gate());
    });

    rep.csv_header = {"lambda", "omega_MHz", "fidelity_state", "fidelity_choi", "target"};
    for (size_t i = 0; i < cells.size(); ++i) {
        char mname[64];
        std::snprintf(mname, sizeof mname, "F_lambda%.1f_omega%.2f", cells[i].lambda,
                      cells[i].omega_mhz);
        add_metric(rep, mname, f_state[i]);
        if (with_choi) {
            std::snprintf(mname, sizeof mname, "F_choi_lambda%.1f_omega%.2f", cells[i].lambda,
                          cells[i].omega_mhz);
            add_metric(rep, mname, f_choi[i]);
        }
        char cname[96];
        std::snprintf(cname, sizeof cname, "F^%g(t_g) at Omega/2pi = %.2f MHz", cells[i].lambda,
                      cells[i].omega_mhz);
        add_check(rep, cname, "abs", f_state[i], cells[i].target, 0.005,
                  "PAPER Table I (pure-state fidelity definition; see summary)");
        rep.csv_rows.push_back(
            {cells[i].lambda, cells[i].omega_mhz, f_state[i], f_choi[i], cells[i].target});
    }
    if (!rep.has_metric("gate_fidelity")) add_metric(rep, "gate_fidelity", f_state[0]);
}

void run_fig6(const ScenarioDef&, Resolved& r, Report& rep) {
    const std::vector<double> omegas = {0.01, 0.02, 0.03, 0.04, 0.05,  0.06, 0.07, 0.08,
                                        0.089, 0.10, 0.11, 0.12, 0.13, 0.14, 0.15};
    std::vector<double> fid(omegas.size());
    parallel_for_indexed(static_cast<int>(omegas.size()), r.jobs, [&](int i) {
        PhysicalParams p = r.params;
        p.Omega = two_pi * omegas[static_cast<size_t>(i)];
        auto h = build_hamiltonian(ModelVariant::FullSRP, p);
        fid[static_cast<size_t>(i)] = ideal_gate_fidelity(h, srp_gate_time(p.Omega), r.integrator);
    });
    size_t best = 0;
    for (size_t i = 1; i < omegas.size(); ++i)
        if (fid[i] > fid[best]) best = i;
    add_metric(rep, "best_omega_MHz", omegas[best]);
    add_metric(rep, "best_fidelity", fid[best]);
    add_check(rep, "optimal Omega/2pi near 0.089 MHz", "abs", omegas[best], 0.089, 0.015,
              "PAPER Sec. III.C: an optimal value Omega/2pi = 0.089 MHz");
    add_check(rep, "ideal fidelity at the optimum", "abs", fid[best], 0.9994, 0.0005,
              "PAPER Sec. III.C: a fidelity of 99.94% at t = 3.97 us");
    add_check(rep, "interior maximum (unimodal sweep)", "ge",
              (best > 0 && best + 1 < omegas.size()) ? 1.0 : 0.0, 1.0, 0.0,
              "DERIVED: Fig. 6 shows a single interior optimum");

    // worst case: every Rydberg state radiates into |alpha> (lambda = 0)
    PhysicalParams pw = r.params;
    pw.Omega = two_pi * 0.089;
    pw.lambda = 0.0;
    auto space = default_dissipative_space(ModelVariant::FullSRP);
    auto hw = build_hamiltonian(ModelVariant::FullSRP, pw, space);
    auto chans = build_decay_channels(ModelVariant::FullSRP, pw, space);
    double worst = table1_state_fidelity(hw, chans, srp_gate_time(pw.Omega), r.integrator);
    add_metric(rep, "worst_case_fidelity", worst);
    add_check(rep, "worst-case fidelity at the optimum", "abs", worst, 0.9966, 0.005,
              "PAPER Sec. III.C: 99.66% even if all Rydberg states decay into |alpha>");

    rep.csv_header = {"omega_MHz", "fidelity_ideal"};
    for (size_t i = 0; i < omegas.size(); ++i) rep.csv_rows.push_back({omegas[i], fid[i]});
}

void run_fig8(const ScenarioDef&, Resolved& r, Report& rep) {
    const auto& p = r.params;
    auto space = default_space(ModelVariant::FullDissipative);
    auto h = build_hamiltonian(ModelVariant::FullDissipative, p, space);
    auto chans = natural_leak_channels(space, p);
    const double t_star = 88.39;
    const double extra[1] = {t_star};
    auto grid = make_grid(r.knob("t_end_us"), static_cast<int>(r.knob("samples")), extra);
    auto obs = std::vector<ObservableSpec>{
        ObservableSpec::population("P00", basis_state(space, {Level::g0, Level::g0})),
        ObservableSpec::population("P01", basis_state(space, {Level::g0, Level::g1})),
        ObservableSpec::population("P10", basis_state(space, {Level::g1, Level::g0})),
        ObservableSpec::population("P11", basis_state(space, {Level::g1, Level::g1})),
        ObservableSpec::fidelity("F_psi_plus", bell_psi_plus(space)),
        ObservableSpec::excitation("P_e", space)};
    auto traj =
        evolve_lindblad(h, chans, pure_density(basis_state(space, {Level::g0, Level::g0})), grid,
                        r.integrator, obs);
    double f_star = traj.value_at("F_psi_plus", t_star);
    add_metric(rep, "F_psi_plus_at_88.39us", f_star);
    add_metric(rep, "max_P11", max_of(traj.series_for("P11")));
    add_metric(rep, "max_P_e", max_of(traj.series_for("P_e")));
    add_check(rep, "F(|Psi+>) at t = 88.39 us", "abs", f_star, 0.9966, 0.005,
              "PAPER Sec. IV: F = 99.66% at t = 88.39 us");
    add_check(rep, "ground-state blockade of |11>", "le", max_of(traj.series_for("P11")), 1e-4,
              0.0, "PAPER Sec. IV: population of |11> suppressed below 1e-5");
    add_check(rep, "Rydberg excitation probability", "le", max_of(traj.series_for("P_e")), 5.2e-3,
              0.0, "PAPER Sec. IV: P_e always kept below 5.2e-3");
    set_csv(rep, traj.times,
            {{"P00", &traj.series_for("P00")},
             {"P01", &traj.series_for("P01")},
             {"P10", &traj.series_for("P10")},
             {"P11", &traj.series_for("P11")},
             {"F_psi_plus", &traj.series_for("F_psi_plus")},
             {"P_e", &traj.series_for("P_e")}});
}

void run_fig9(const ScenarioDef&, Resolved& r, Report& rep) {
    const double base = r.params.gamma_flat;
    const double gammas[3] = {base, 0.1 * base, 0.01 * base};
    std::vector<Trajectory> trajs(3);
    auto h = build_hamiltonian(ModelVariant::EffectiveDissipative, r.params);
    const auto& s = h.space();
    auto grid = make_grid(r.knob("t_end_us"), static_cast<int>(r.knob("samples")));
    parallel_for_indexed(3, r.jobs, [&](int i) {
        PhysicalParams p = r.params;
        p.gamma_flat = gammas[i];
        auto chans = build_decay_channels(ModelVariant::EffectiveDissipative, p);
        auto obs = std::vector<ObservableSpec>{
            ObservableSpec::fidelity("F_singlet", bell_psi_minus(s))};
        trajs[i] = evolve_lindblad(h, chans, mixed_ground_state(s), grid, r.integrator, obs);
    });
    double f0 = trajs[0].series[0].back();
    double f1 = trajs[1].series[0].back();
    double f2 = trajs[2].series[0].back();
    add_metric(rep, "F_at_end_gamma1", f0);
    add_metric(rep, "F_at_end_gamma0.1x", f1);
    add_metric(rep, "F_at_end_gamma0.01x", f2);
    add_check(rep, "F(|Psi->) at 1.2 ms for gamma = 0.1/us", "abs", f0, 0.9977, 0.005,
              "PAPER Sec. V: a fidelity of 99.77% is achievable at t = 1.2 ms");
    add_check(rep, "slower decay delays convergence (0.1x)", "ge", f0 - f1, 0.0, 0.0,
              "PAPER Fig. 9: smaller gamma converges later");
    add_check(rep, "slower decay delays convergence (0.01x)", "ge", f1 - f2, 0.0, 0.0,
              "PAPER Fig. 9: smaller gamma converges later");

    // stationarity of the singlet under the full generator
    auto chans0 = build_decay_channels(ModelVariant::EffectiveDissipative, r.params);
    Superoperator gen(h, chans0);
    Matrix rho_s = pure_density(bell_psi_minus(s)).matrix();
    Vector x = Eigen::Map<const Vector>(rho_s.data(), s.dim() * s.dim());
    Vector y(x.size());
    gen.apply(0.0, x.data(), y.data());
    add_metric(rep, "singlet_stationarity", y.norm());
    add_check(rep, "singlet is stationary", "le", y.norm(), 1e-10, 0.0,
              "PAPER Sec. V: the unique stationary state solution of Eq. (11)");

    set_csv(rep, trajs[0].times,
            {{"F_gamma", &trajs[0].series[0]},
             {"F_gamma_0.1x", &trajs[1].series[0]},
             {"F_gamma_0.01x", &trajs[2].series[0]}});
}

void run_fig11(const ScenarioDef&, Resolved& r, Report& rep) {
    const double branchings[3] = {r.params.branch0, 0.2, 0.8};
    std::vector<Trajectory> trajs(3);
    auto grid = make_grid(r.knob("t_end_us"), static_cast<int>(r.knob("samples")));
    parallel_for_indexed(3, r.jobs, [&](int i) {
        PhysicalParams p = r.params;
        p.branch0 = branchings[i];
        p.branch1.reset();
        auto space = default_space(ModelVariant::FullDissipative);
        auto h = build_hamiltonian(ModelVariant::FullDissipative, p, space);
        auto chans = build_decay_channels(ModelVariant::FullDissipative, p, space);
        auto obs = std::vector<ObservableSpec>{
            ObservableSpec::fidelity("F_singlet", bell_psi_minus(space))};
        trajs[i] = evolve_lindblad(h, chans, mixed_ground_state(space), grid, r.integrator, obs);
    });
    // spread of the steady fidelity across branching ratios over the
    // window [1.2, 2] ms
    double spread = 0.0;
    for (size_t k = 0; k < trajs[0].times.size(); ++k) {
        if (trajs[0].times[k] < r.knob("window_start_us")) continue;
        double lo = 1e300, hi = -1e300;
        for (int i = 0; i < 3; ++i) {
            lo = std::min(lo, trajs[i].series[0][k]);
            hi = std::max(hi, trajs[i].series[0][k]);
        }
        spread = std::max(spread, hi - lo);
    }
    for (int i = 0; i < 3; ++i) {
        char name[48];
        std::snprintf(name, sizeof name, "F_end_branch%.1f", branchings[i]);
        add_metric(rep, name, trajs[i].series[0].back());
    }
    add_metric(rep, "steady_spread", spread);
    add_check(rep, "steady fidelity spread across branching ratios", "le", spread, 0.01, 0.0,
              "PAPER Sec. V: basically unaffected by the variation of branching ratio");
    set_csv(rep, trajs[0].times,
            {{"F_branch0.5", &trajs[0].series[0]},
             {"F_branch0.2", &trajs[1].series[0]},
             {"F_branch0.8", &trajs[2].series[0]}});
}

void run_fig13(const ScenarioDef&, Resolved& r, Report& rep) {
    auto grid = make_grid(r.knob("t_end_us"), static_cast<int>(r.knob("samples")));
    Trajectory full_traj, eff_traj;
    auto run_full = [&] {
        PhysicalParams p = r.params;
        auto space = default_space(ModelVariant::RecyclingFull);
        auto h = build_hamiltonian(ModelVariant::RecyclingFull, p, space);
        auto chans = build_decay_channels(ModelVariant::RecyclingFull, p, space);
        auto obs = std::vector<ObservableSpec>{
            ObservableSpec::fidelity("F_singlet", bell_psi_minus(space))};
        full_traj = evolve_lindblad(h, chans, mixed_ground_state(space), grid, r.integrator, obs);
    };
    auto run_eff = [&] {
        // effective Eq. (11) comparison at the engineered total rate
        PhysicalParams p = r.params;
        p.gamma_flat = 4.0 * p.Omega_p * p.Omega_p / p.Gamma;
        auto h = build_hamiltonian(ModelVariant::EffectiveDissipative, p);
        auto chans = build_decay_channels(ModelVariant::EffectiveDissipative, p);
        IntegratorConfig cfg = r.integrator;
        cfg.method = Method::RK45Adaptive;
        auto obs = std::vector<ObservableSpec>{
            ObservableSpec::fidelity("F_singlet", bell_psi_minus(h.space()))};
        eff_traj = evolve_lindblad(h, chans, mixed_ground_state(h.space()), grid, cfg, obs);
    };
    if (r.jobs > 1) {
        std::function<void(int)> dispatch = [&](int i) { i == 0 ? run_full() : run_eff(); };
        parallel_for_indexed(2, 2, dispatch);
    } else {
        run_full();
        run_eff();
    }
    double gap = 0.0;
    for (size_t k = 0; k < grid.size(); ++k) {
        if (grid[k] < r.knob("window_start_us")) continue;
        gap = std::max(gap, std::abs(full_traj.series[0][k] - eff_traj.series[0][k]));
    }
    add_metric(rep, "max_gap_after_window", gap);
    add_metric(rep, "F_full_end", full_traj.series[0].back());
    add_metric(rep, "F_effective_end", eff_traj.series[0].back());
    add_check(rep, "full recycling model tracks the effective master equation", "le", gap, 0.02,
              0.0, "PAPER Appendix B: consistent with the dynamic behavior of Eq. (11)");
    set_csv(rep, full_traj.times,
            {{"F_full", &full_traj.series[0]}, {"F_effective", &eff_traj.series[0]}});
}

void run_appA(const ScenarioDef&, Resolved& r, Report& rep) {
    const PhysicalParams& p = r.params;
    auto space = default_space(ModelVariant::EngineeredDecaySingleAtom);
    auto h = build_hamiltonian(ModelVariant::EngineeredDecaySingleAtom, p);
    auto chans = build_decay_channels(ModelVariant::EngineeredDecaySingleAtom, p);
    const double total_rate = 4.0 * p.Omega_p * p.Omega_p / p.Gamma;
    auto grid = make_grid(r.knob("t_end_us"), static_cast<int>(r.knob("samples")));

    auto psi_r = basis_state(space, {Level::r});
    auto psi_0 = basis_state(space, {Level::g0});
    auto obs = std::vector<ObservableSpec>{
        ObservableSpec::population("P_r", psi_r),
        ObservableSpec::coherence("coh_r0", psi_r, psi_0)};

    // full model from |r><r| and from the r/0 superposition
    auto traj_pop = evolve_lindblad(h, chans, pure_density(psi_r), grid, r.integrator, obs);
    Vector v = Vector::Zero(space.dim());
    v(space.basis_index(std::array{Level::r})) = 1.0 / std::sqrt(2.0);
    v(space.basis_index(std::array{Level::g0})) = 1.0 / std::sqrt(2.0);
    auto traj_coh =
        evolve_lindblad(h, chans, pure_density(StateVector(space, v)), grid, r.integrator, obs);

    // effective Eq. (17): pure engineered decay, no Hamiltonian
    auto [ge0, ge1] = engineered_rates(p.Omega_p, p.Gamma);
    std::vector<DecayChannel> eff_chans = {
        {transition_operator(space, 0, Level::r, Level::g0), ge0, "gamma_eff^0"},
        {transition_operator(space, 0, Level::r, Level::g1), ge1, "gamma_eff^1"}};
    HamiltonianSpec h_eff(space, {});
    auto traj_eff =
        evolve_lindblad(h_eff, eff_chans, pure_density(psi_r), grid, r.integrator, obs);

    // rate fits, skipping the first 3/Gamma of non-Markovian transient
    const double skip = 3.0 / p.Gamma;
    std::vector<double> ts, pop, coh;
    for (size_t i = 0; i < grid.size(); ++i) {
        if (grid[i] < skip) continue;
        ts.push_back(grid[i]);
        pop.push_back(traj_pop.series[0][i]);
        coh.push_back(traj_coh.series[1][i]);
    }
    auto fit_pop = fit_exponential_rate(ts, pop);
    auto fit_coh = fit_exponential_rate(ts, coh);
    add_metric(rep, "fitted_population_rate", fit_pop.rate);
    add_metric(rep, "fitted_coherence_rate", fit_coh.rate);
    add_metric(rep, "engineered_total_rate", total_rate);
    add_check(rep, "population decays at 4 Omega_p^2/Gamma", "abs", fit_pop.rate / total_rate, 1.0,
              0.02, "PAPER Appendix A: rho_rr' = -4 Omega_p^2/Gamma rho_rr");
    add_check(rep, "coherence decays at 2 Omega_p^2/Gamma", "abs",
              fit_coh.rate / (0.5 * total_rate), 1.0, 0.02,
              "PAPER Appendix A: rho_r0' = -2 Omega_p^2/Gamma rho_r0");
    add_check(rep, "total rate reproduces 2 pi x 0.03 MHz", "abs", total_rate / (two_pi * 0.03),
              1.0, 0.005, "PAPER Appendix A: 4 Omega_p^2/Gamma = 2 pi x 0.03 MHz");

    // full vs effective agreement, here and at Gamma/Omega_p = 20
    double gap = 0.0;
    for (size_t i = 0; i < grid.size(); ++i)
        gap = std::max(gap, std::abs(traj_pop.series[0][i] - traj_eff.series[0][i]));
    add_metric(rep, "full_vs_effective_gap", gap);
    add_check(rep, "full model tracks Eq. (17) within 1%", "le", gap, 0.01, 0.0,
              "PAPER Appendix A: adiabatic elimination for Gamma >> Omega_p");

    {
        PhysicalParams p20 = p;
        p20.Omega_p = p.Gamma / 20.0;
        auto h20 = build_hamiltonian(ModelVariant::EngineeredDecaySingleAtom, p20);
        auto chans20 = build_decay_channels(ModelVariant::EngineeredDecaySingleAtom, p20);
        auto [g0b, g1b] = engineered_rates(p20.Omega_p, p20.Gamma);
        std::vector<DecayChannel> eff20 = {
            {transition_operator(space, 0, Level::r, Level::g0), g0b, "gamma_eff^0"},
            {transition_operator(space, 0, Level::r, Level::g1), g1b, "gamma_eff^1"}};
        const double total20 = 4.0 * p20.Omega_p * p20.Omega_p / p20.Gamma;
        auto grid20 = make_grid(3.0 / total20, 200);
        auto t_full = evolve_lindblad(h20, chans20, pure_density(psi_r), grid20, r.integrator,
                                      obs);
        auto t_eff =
            evolve_lindblad(h_eff, eff20, pure_density(psi_r), grid20, r.integrator, obs);
        double gap20 = 0.0;
        for (size_t i = 0; i < grid20.size(); ++i)
            gap20 = std::max(gap20, std::abs(t_full.series[0][i] - t_eff.series[0][i]));
        add_metric(rep, "full_vs_effective_gap_ratio20", gap20);
        add_check(rep, "agreement within 1% down to Gamma/Omega_p = 20", "le", gap20, 0.01, 0.0,
                  "PAPER Appendix A: validity regime of the engineered rates");
    }

    set_csv(rep, traj_pop.times,
            {{"Prr_full", &traj_pop.series[0]},
             {"Prr_effective", &traj_eff.series[0]},
             {"coh_r0", &traj_coh.series[1]}});
}

// ---------------------------------------------------------------------
// catalog
// ---------------------------------------------------------------------

std::vector<ScenarioDef> build_catalog() {
    std::vector<ScenarioDef> defs;
    auto add = [&](ScenarioDef def) { defs.push_back(std::move(def)); };

    {
        ScenarioDef d;
        d.info = {"fig2_srp",
                  "Blockade freezing and the |11> bright-state oscillation of the full model",
                  "Fig. 2 (left panel)"};
        d.params.Omega = two_pi * 0.02;
        d.params.Omega_s = two_pi * 1.0;
        d.params.J = two_pi * 50.0;
        d.integrator.fast_divisor = 60;
        d.knobs = {{"samples", 400}};
        d.run = run_fig2_srp;
        add(std::move(d));
    }
    {
        ScenarioDef d;
        d.info = {"fig2_vdw",
                  "van der Waals comparison: |01> -> |10> transfer destroys the freezing",
                  "Fig. 2 (right panel), Sec. III.A"};
        d.params.Omega = two_pi * 0.02;
        d.params.Omega_s = two_pi * 1.0;
        d.params.U_vdw = two_pi * 50.0;
        d.params.Delta = std::sqrt(2.0) * two_pi * 50.0;
        // the transfer states carry full population on resonant modes
        d.integrator.fast_divisor = 120;
        d.knobs = {{"t_end_us", 60.0}, {"samples", 600}};
        d.run = run_fig2_vdw;
        add(std::move(d));
    }
    {
        ScenarioDef d;
        d.info = {"fig3a_srp_deviation",
                  "Gate fidelity versus dipole-coupling deviation DeltaJ for the SRP gate",
                  "Fig. 3(a), Sec. III.B"};
        d.params.Omega = two_pi * 0.02;
        d.params.Omega_s = two_pi * 1.0;
        d.params.J = two_pi * 50.0;
        d.params.Delta = std::sqrt(2.0) * two_pi * 50.0;
        d.integrator.fast_divisor = 60;
        d.knobs = {{"deltaJ_MHz", 0.0}};
        d.run = run_fig3a;
        add(std::move(d));
    }
    {
        ScenarioDef d;
        d.info = {"fig3b_antiblockade_deviation",
                  "Antiblockade comparison gate: sharp fidelity peak at DeltaJ = 0",
                  "Fig. 3(b), Sec. III.B"};
        d.params.Omega_s = two_pi * std::pow(2.0, -0.25);
        d.params.Delta = two_pi * 25.0 * std::sqrt(2.0);
        d.params.J = two_pi * 50.0;
        d.integrator.fast_divisor = 300;
        d.knobs = {{"deltaJ_MHz", 0.0}};
        d.run = run_fig3b;
        add(std::move(d));
    }
    {
        ScenarioDef d;
        d.info = {"fig4_defect", "Freezing in the presence of the Foerster defect delta",
                  "Fig. 4, Sec. III.B"};
        d.params.Omega = two_pi * 0.02;
        d.params.Omega_s = two_pi * 1.0;
        d.params.J = two_pi * 50.0;
        d.params.delta_defect = two_pi * 8.5;
        d.integrator.fast_divisor = 60;
        d.knobs = {{"samples", 400}};
        d.run = run_fig4;
        add(std::move(d));
    }
    {
        ScenarioDef d;
        d.info = {"fig5_double_excitation",
                  "Double-excitation suppression during the gate for two drive strengths",
                  "Fig. 5, Sec. III.C"};
        d.params.Omega_s = two_pi * 1.0;
        d.params.J = two_pi * 50.0;
        d.integrator.fast_divisor = 60;
        d.knobs = {{"samples", 400}};
        d.run = run_fig5;
        add(std::move(d));
    }
    {
        ScenarioDef d;
        d.info = {"table1_decay",
                  "Controlled-Z fidelity under Rydberg decay for lambda in {1, 0.5, 0.2, 0}",
                  "Table I, Sec. III.C"};
        d.params.Omega_s = two_pi * 1.0;
        d.params.J = two_pi * 50.0;
        d.knobs = {{"lambda", -1.0}, {"omega_MHz", -1.0}, {"with_choi", 1.0}};
        d.run = run_table1;
        add(std::move(d));
    }
    {
        ScenarioDef d;
        d.info = {"fig6_optimal_omega",
                  "Gate fidelity versus the resonant drive strength; optimum near 0.089 MHz",
                  "Fig. 6, Sec. III.C"};
        d.params.Omega_s = two_pi * 1.0;
        d.params.J = two_pi * 50.0;
        d.integrator.fast_divisor = 60;
        d.knobs = {};
        d.run = run_fig6;
        add(std::move(d));
    }
    {
        ScenarioDef d;
        d.info = {"fig8_ground_blockade",
                  "Ground-state blockade: dissipative preparation of |Psi+> from |00>",
                  "Fig. 8, Sec. IV"};
        d.params.Omega_w = two_pi * 0.002;
        d.params.Omega = two_pi * 0.06;
        d.params.Omega_s = two_pi * 2.0;
        d.params.J = two_pi * 100.0;
        d.knobs = {{"t_end_us", 120.0}, {"samples", 480}};
        d.run = run_fig8;
        add(std::move(d));
    }
    {
        ScenarioDef d;
        d.info = {"fig9_dissipative",
                  "Effective dissipative model: singlet preparation for three decay rates",
                  "Fig. 9, Sec. V"};
        d.params.Omega_w = two_pi * 0.005;
        d.params.Omega = two_pi * 0.01;
        d.params.gamma_flat = 0.1;
        d.integrator.method = Method::RK45Adaptive;
        d.knobs = {{"t_end_us", 1200.0}, {"samples", 600}};
        d.run = run_fig9;
        add(std::move(d));
    }
    {
        ScenarioDef d;
        d.info = {"fig11_full_steady",
                  "Full dissipative model with engineered decay: steady singlet fidelity",
                  "Fig. 11, Sec. V"};
        d.params.Omega_w = two_pi * 0.005;
        d.params.Omega = two_pi * 0.01;
        d.params.Omega_s = two_pi * 1.0;
        d.params.J = two_pi * 100.0;
        d.params.Omega_p = 1.354;
        d.params.Gamma = 1.0 / 0.02569;
        d.params.branch0 = 0.5;
        d.knobs = {{"t_end_us", 2000.0}, {"samples", 200}, {"window_start_us", 1200.0}};
        d.run = run_fig11;
        add(std::move(d));
    }
    {
        ScenarioDef d;
        d.info = {"fig13_recycling",
                  "Recycling pump model versus the effective master equation",
                  "Fig. 13, Appendix B"};
        d.params.Omega_w = two_pi * 0.005;
        d.params.Omega = two_pi * 0.01;
        d.params.Omega_s = two_pi * 1.0;
        d.params.J = two_pi * 100.0;
        d.params.Omega_p = 1.354;
        d.params.Gamma = 1.0 / 0.02569;
        d.params.branch0 = 0.3;
        d.params.branch1 = 0.3;
        // 4 Omega_b^2 / Gamma = 2 pi x 0.06 MHz
        d.params.Omega_b = std::sqrt(two_pi * 0.06 * (1.0 / 0.02569) / 4.0);
        d.knobs = {{"t_end_us", 1200.0}, {"samples", 120}, {"window_start_us", 200.0}};
        d.run = run_fig13;
        add(std::move(d));
    }
    {
        ScenarioDef d;
        d.info = {"appA_engineered_decay",
                  "Single-atom engineered spontaneous emission and its effective rates",
                  "Eq. (14) and Appendix A"};
        d.params.Omega_p = 1.354;
        d.params.Gamma = 1.0 / 0.02569;
        d.knobs = {{"t_end_us", 20.0}, {"samples", 400}};
        d.run = run_appA;
        add(std::move(d));
    }
    return defs;
}

const std::vector<ScenarioDef>& catalog() {
    static const std::vector<ScenarioDef> defs = build_catalog();
    return defs;
}

const ScenarioDef& find_def(const std::string& name) {
    for (const auto& def : catalog())
        if (def.info.name == name) return def;
    throw std::invalid_argument("unknown scenario: " + name);
}

// ---------------------------------------------------------------------
// override handling
// ---------------------------------------------------------------------

// Parameter fields quoted as X/2pi in MHz (stored with a 2*pi factor) and
// those quoted plainly (stored in 1/us).
struct ParamField {
    const char* name;
    double PhysicalParams::* member;
    bool two_pi_family;
};

struct OptField {
    const char* name;
    std::optional<double> PhysicalParams::* member;
    bool two_pi_family;
};

constexpr ParamField kParamFields[] = {
    {"Omega", &PhysicalParams::Omega, true},
    {"Omega_s", &PhysicalParams::Omega_s, true},
    {"Omega_w", &PhysicalParams::Omega_w, true},
    {"J", &PhysicalParams::J, true},
    {"delta_defect", &PhysicalParams::delta_defect, true},
    {"U_vdw", &PhysicalParams::U_vdw, true},
    {"C3", &PhysicalParams::C3, true},
    {"Omega_p", &PhysicalParams::Omega_p, false},
    {"Omega_b", &PhysicalParams::Omega_b, false},
    {"Gamma", &PhysicalParams::Gamma, false},
    {"gamma_flat", &PhysicalParams::gamma_flat, false},
    {"R", &PhysicalParams::R, false},
    {"tau_r", &PhysicalParams::tau_r, false},
    {"tau_p1", &PhysicalParams::tau_p1, false},
    {"tau_p2", &PhysicalParams::tau_p2, false},
    {"lambda", &PhysicalParams::lambda, false},
    {"gamma_split", &PhysicalParams::gamma_split, false},
    {"branch0", &PhysicalParams::branch0, false},
};

constexpr OptField kOptFields[] = {
    {"Omega_B", &PhysicalParams::Omega_B, true},
    {"Omega_R", &PhysicalParams::Omega_R, true},
    {"Delta", &PhysicalParams::Delta, true},
    {"branch1", &PhysicalParams::branch1, false},
    {"ab_comp_single", &PhysicalParams::ab_comp_single, false},
    {"ab_comp_rydberg", &PhysicalParams::ab_comp_rydberg, false},
    {"ab_comp_pair", &PhysicalParams::ab_comp_pair, false},
};

bool apply_param_override(PhysicalParams& p, const std::string& key, double value) {
    auto match = [&](const char* name, bool two_pi_family, auto setter) {
        std::string base(name);
        if (key == base) {
            setter(value);
            return true;
        }
        if (two_pi_family && key == base + "_MHz") {
            setter(two_pi * value);
            return true;
        }
        if (!two_pi_family && key == base + "_rate_MHz") {
            setter(value);  // plainly quoted rates carry no 2*pi factor
            return true;
        }
        return false;
    };
    for (const auto& f : kParamFields)
        if (match(f.name, f.two_pi_family, [&](double v) { p.*(f.member) = v; })) return true;
    for (const auto& f : kOptFields)
        if (match(f.name, f.two_pi_family, [&](double v) { p.*(f.member) = v; })) return true;
    return false;
}

bool apply_integrator_override(IntegratorConfig& cfg, const std::string& key, double value) {
    if (key == "fixed_step") {
        cfg.fixed_step = value;
    } else if (key == "fast_divisor") {
        cfg.fast_divisor = static_cast<int>(value);
    } else if (key == "rel_tol") {
        cfg.rel_tol = value;
    } else if (key == "abs_tol") {
        cfg.abs_tol = value;
    } else if (key == "max_span_steps") {
        cfg.max_span_steps = static_cast<int>(value);
    } else if (key == "method") {
        cfg.method = value == 0.0 ? Method::RK4Fixed : Method::RK45Adaptive;
    } else if (key == "monitor_positivity") {
        cfg.monitor_positivity = value != 0.0;
    } else {
        return false;
    }
    return true;
}

Resolved resolve(const ScenarioDef& def, const Overrides& overrides, int jobs) {
    Resolved r;
    r.params = def.params;
    r.integrator = def.integrator;
    r.knobs = def.knobs;
    r.jobs = std::max(1, jobs);
    for (const auto& [key, value] : overrides) {
        if (key.rfind("params.", 0) == 0) {
            if (!apply_param_override(r.params, key.substr(7), value))
                throw std::invalid_argument("unknown parameter key: " + key);
        } else if (key.rfind("integrator.", 0) == 0) {
            if (!apply_integrator_override(r.integrator, key.substr(11), value))
                throw std::invalid_argument("unknown integrator key: " + key);
        } else {
            auto it = r.knobs.find(key);
            if (it == r.knobs.end())
                throw std::invalid_argument("unknown override key for scenario " + def.info.name +
                                            ": " + key);
            it->second = value;
            r.overridden.push_back(key);
        }
    }
    r.params.validate();
    return r;
}

}  // namespace

bool Report::all_passed() const {
    for (const auto& c : checks)
        if (!c.passed) return false;
    return true;
}

bool Report::has_metric(std::string_view name) const {
    for (const auto& [k, v] : metrics)
        if (k == name) return true;
    return false;
}

double Report::metric(std::string_view name) const {
    for (const auto& [k, v] : metrics)
        if (k == name) return v;
    throw std::invalid_argument("no metric named " + std::string(name));
}

std::vector<ScenarioInfo> list_scenarios() {
    std::vector<ScenarioInfo> out;
    for (const auto& def : catalog()) out.push_back(def.info);
    return out;
}

bool scenario_exists(const std::string& name) {
    for (const auto& def : catalog())
        if (def.info.name == name) return true;
    return false;
}

Report run_scenario(const std::string& name, const Overrides& overrides, int jobs) {
    const ScenarioDef& def = find_def(name);
    Resolved r = resolve(def, overrides, jobs);
    Report rep;
    rep.scenario = name;
    rep.params = r.params;
    rep.integrator = r.integrator;
    def.run(def, r, rep);
    return rep;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
    const ScenarioDef& def = find_def(spec.scenario);
    (void)def;
    std::vector<SweepRow> rows(spec.values.size());
    parallel_for_indexed(static_cast<int>(spec.values.size()), std::max(1, spec.jobs), [&](int i) {
        SweepRow& row = rows[static_cast<size_t>(i)];
        row.value = spec.values[static_cast<size_t>(i)];
        try {
            Report rep = run_scenario(spec.scenario, {{spec.parameter, row.value}}, 1);
            row.metric = rep.metric(spec.metric);
            row.ok = true;
        } catch (const std::exception& e) {
            row.ok = false;
            row.error = e.what();
        }
    });
    return rows;
}

}  // namespace srp
