#include "srp/dynamics.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace srp {

namespace {

using Triplet = std::pair<std::pair<int, int>, cplx>;

constexpr double kTinyStep = 1e-14;

void check_grid(std::span<const double> grid) {
    if (grid.empty()) throw std::invalid_argument("time grid is empty");
    for (size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw std::invalid_argument("time grid must be strictly increasing");
}

// One-sided drive piece a * exp(i w t) * M after folding phases and the
// Hermitian closure into the matrix.
struct SidedTerm {
    cplx amp;
    double freq;
    const Matrix* m;
    bool adjoint;
};

// Groups the term list of a HamiltonianSpec by drive frequency; the static
// group carries frequency 0.
std::map<double, Matrix> group_terms(const HamiltonianSpec& h) {
    std::map<double, Matrix> groups;
    const int d = h.space().dim();
    auto add = [&](double w, const Matrix& m, cplx a) {
        if (a == cplx(0.0, 0.0)) return;
        auto [it, fresh] = groups.try_emplace(w, Matrix::Zero(d, d));
        it->second += a * m;
    };
    for (const auto& term : h.terms()) {
        const cplx a = term.coeff.amplitude * std::polar(1.0, term.coeff.phase);
        add(term.coeff.angular_frequency, term.op.matrix(), a);
        if (term.hermitian_closure)
            add(-term.coeff.angular_frequency, term.op.matrix().adjoint(), std::conj(a));
    }
    return groups;
}

void append_left_mult(std::vector<Triplet>& trips, const Matrix& a, cplx scale) {
    // (I (x) A): block-diagonal copies of A.
    const int d = static_cast<int>(a.rows());
    for (int r = 0; r < d; ++r)
        for (int k = 0; k < d; ++k) {
            if (a(r, k) == cplx(0.0, 0.0)) continue;
            for (int m = 0; m < d; ++m)
                trips.push_back({{m * d + r, m * d + k}, scale * a(r, k)});
        }
}

void append_right_mult(std::vector<Triplet>& trips, const Matrix& b, cplx scale) {
    // (B^T (x) I): vec(rho B).
    const int d = static_cast<int>(b.rows());
    for (int l = 0; l < d; ++l)
        for (int c = 0; c < d; ++c) {
            if (b(l, c) == cplx(0.0, 0.0)) continue;
            for (int r = 0; r < d; ++r)
                trips.push_back({{c * d + r, l * d + r}, scale * b(l, c)});
        }
}

void append_sandwich(std::vector<Triplet>& trips, const Matrix& j, double rate) {
    // rate * (conj(J) (x) J): vec(J rho J^dag).
    const int d = static_cast<int>(j.rows());
    for (int c = 0; c < d; ++c)
        for (int l = 0; l < d; ++l) {
            const cplx bj = std::conj(j(c, l));
            if (bj == cplx(0.0, 0.0)) continue;
            for (int r = 0; r < d; ++r)
                for (int k = 0; k < d; ++k) {
                    if (j(r, k) == cplx(0.0, 0.0)) continue;
                    trips.push_back({{c * d + r, l * d + k}, rate * bj * j(r, k)});
                }
        }
}

// -i [A rho - rho A] contribution of a Hamiltonian group.
void append_commutator(std::vector<Triplet>& trips, const Matrix& a) {
    const cplx mi(0.0, -1.0);
    append_left_mult(trips, a, mi);
    append_right_mult(trips, a, -mi);
}

}  // namespace

Csr Csr::from_triplets(int n, std::vector<Triplet> trips) {
    std::sort(trips.begin(), trips.end(),
              [](const Triplet& a, const Triplet& b) { return a.first < b.first; });
    Csr csr;
    csr.rows = n;
    csr.row_ptr.assign(static_cast<size_t>(n) + 1, 0);
    std::vector<Triplet> merged;
    merged.reserve(trips.size());
    for (const auto& t : trips) {
        if (!merged.empty() && merged.back().first == t.first)
            merged.back().second += t.second;
        else
            merged.push_back(t);
    }
    bool any_re = false, any_im = false;
    for (const auto& t : merged) {
        if (t.second == cplx(0.0, 0.0)) continue;
        csr.row_ptr[static_cast<size_t>(t.first.first) + 1]++;
        // column index pre-doubled: vectors are addressed through their
        // interleaved (re, im) double layout
        csr.col.push_back(2 * t.first.second);
        csr.val_re.push_back(t.second.real());
        csr.val_im.push_back(t.second.imag());
        any_re |= t.second.real() != 0.0;
        any_im |= t.second.imag() != 0.0;
    }
    for (int i = 0; i < n; ++i) csr.row_ptr[i + 1] += csr.row_ptr[i];
    if (!any_im)
        csr.kind = ValueKind::RealOnly;
    else if (!any_re)
        csr.kind = ValueKind::ImagOnly;
    return csr;
}

// Row accumulation loops specialized on the value kind.
#define SRP_CSR_ROW_LOOP(ACC_RE, ACC_IM)                              \
    double ar = 0.0, ai = 0.0;                                        \
    for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {               \
        const double xr = xd[col[k]], xi = xd[col[k] + 1];            \
        ACC_RE;                                                       \
        ACC_IM;                                                       \
    }

void Csr::mul(const cplx* x, cplx* y) const {
    const double* xd = reinterpret_cast<const double*>(x);
    double* yd = reinterpret_cast<double*>(y);
    switch (kind) {
        case ValueKind::RealOnly:
            for (int i = 0; i < rows; ++i) {
                SRP_CSR_ROW_LOOP(ar += val_re[k] * xr, ai += val_re[k] * xi)
                yd[2 * i] = ar;
                yd[2 * i + 1] = ai;
            }
            break;
        case ValueKind::ImagOnly:
            for (int i = 0; i < rows; ++i) {
                SRP_CSR_ROW_LOOP(ar -= val_im[k] * xi, ai += val_im[k] * xr)
                yd[2 * i] = ar;
                yd[2 * i + 1] = ai;
            }
            break;
        case ValueKind::General:
            for (int i = 0; i < rows; ++i) {
                SRP_CSR_ROW_LOOP(ar += val_re[k] * xr - val_im[k] * xi,
                                 ai += val_re[k] * xi + val_im[k] * xr)
                yd[2 * i] = ar;
                yd[2 * i + 1] = ai;
            }
            break;
    }
}

void Csr::mul_add(const cplx* x, cplx* y, cplx c) const {
    const double* xd = reinterpret_cast<const double*>(x);
    double* yd = reinterpret_cast<double*>(y);
    const double cr = c.real(), ci = c.imag();
    switch (kind) {
        case ValueKind::RealOnly:
            for (int i = 0; i < rows; ++i) {
                SRP_CSR_ROW_LOOP(ar += val_re[k] * xr, ai += val_re[k] * xi)
                yd[2 * i] += cr * ar - ci * ai;
                yd[2 * i + 1] += cr * ai + ci * ar;
            }
            break;
        case ValueKind::ImagOnly:
            for (int i = 0; i < rows; ++i) {
                SRP_CSR_ROW_LOOP(ar -= val_im[k] * xi, ai += val_im[k] * xr)
                yd[2 * i] += cr * ar - ci * ai;
                yd[2 * i + 1] += cr * ai + ci * ar;
            }
            break;
        case ValueKind::General:
            for (int i = 0; i < rows; ++i) {
                SRP_CSR_ROW_LOOP(ar += val_re[k] * xr - val_im[k] * xi,
                                 ai += val_re[k] * xi + val_im[k] * xr)
                yd[2 * i] += cr * ar - ci * ai;
                yd[2 * i + 1] += cr * ai + ci * ar;
            }
            break;
    }
}

#undef SRP_CSR_ROW_LOOP

Matrix Csr::dense() const {
    Matrix m = Matrix::Zero(rows, rows);
    for (int i = 0; i < rows; ++i)
        for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k)
            m(i, col[k] / 2) += cplx(val_re[k], val_im[k]);
    return m;
}

Superoperator::Superoperator(const HamiltonianSpec& h, std::span<const DecayChannel> channels)
    : dim_(h.space().dim()) {
    const int n = dim_ * dim_;
    double rate_sum = 0.0;
    std::vector<Triplet> diss_trips;
    for (const auto& ch : channels) {
        if (!(ch.jump.space() == h.space()))
            throw std::invalid_argument("Superoperator: channel on a different space");
        if (ch.rate < 0.0) throw std::invalid_argument("Superoperator: negative rate");
        if (ch.rate == 0.0) continue;
        rate_sum += ch.rate;
        const Matrix& j = ch.jump.matrix();
        append_sandwich(diss_trips, j, ch.rate);
        const Matrix jj = j.adjoint() * j;
        append_left_mult(diss_trips, jj, cplx(-0.5 * ch.rate, 0.0));
        append_right_mult(diss_trips, jj, cplx(-0.5 * ch.rate, 0.0));
    }
    std::vector<Triplet> ham_trips;
    for (auto& [w, m] : group_terms(h)) {
        if (w == 0.0) {
            append_commutator(ham_trips, m);
            continue;
        }
        std::vector<Triplet> trips;
        append_commutator(trips, m);
        Csr csr = Csr::from_triplets(n, std::move(trips));
        if (csr.nonzeros() > 0) drive_parts_.emplace_back(w, std::move(csr));
        max_freq_ = std::max(max_freq_, std::abs(w));
    }
    for (auto* trips : {&diss_trips, &ham_trips}) {
        Csr csr = Csr::from_triplets(n, std::move(*trips));
        if (csr.nonzeros() > 0) static_parts_.push_back(std::move(csr));
    }
    if (static_parts_.empty()) static_parts_.push_back(Csr::from_triplets(n, {}));
    magnitude_ = h.magnitude_scale() + rate_sum;
}

void Superoperator::apply(double t, const cplx* x, cplx* y) const {
    static_parts_.front().mul(x, y);
    for (size_t i = 1; i < static_parts_.size(); ++i)
        static_parts_[i].mul_add(x, y, cplx(1.0, 0.0));
    for (const auto& [w, csr] : drive_parts_) csr.mul_add(x, y, std::polar(1.0, w * t));
}

Matrix Superoperator::dense(double t) const {
    Matrix m = Matrix::Zero(dim_ * dim_, dim_ * dim_);
    for (const auto& part : static_parts_) m += part.dense();
    for (const auto& [w, csr] : drive_parts_) m += std::polar(1.0, w * t) * csr.dense();
    return m;
}

SchrodingerGenerator::SchrodingerGenerator(const HamiltonianSpec& h) : dim_(h.space().dim()) {
    const cplx mi(0.0, -1.0);
    std::vector<Triplet> static_trips;
    for (auto& [w, m] : group_terms(h)) {
        std::vector<Triplet>* dst = &static_trips;
        std::vector<Triplet> local;
        if (w != 0.0) dst = &local;
        for (int r = 0; r < dim_; ++r)
            for (int c = 0; c < dim_; ++c)
                if (m(r, c) != cplx(0.0, 0.0)) dst->push_back({{r, c}, mi * m(r, c)});
        if (w != 0.0) {
            Csr csr = Csr::from_triplets(dim_, std::move(local));
            if (csr.nonzeros() > 0) drive_parts_.emplace_back(w, std::move(csr));
            max_freq_ = std::max(max_freq_, std::abs(w));
        }
    }
    static_part_ = Csr::from_triplets(dim_, std::move(static_trips));
    magnitude_ = h.magnitude_scale();
}

void SchrodingerGenerator::apply(double t, const cplx* x, cplx* y) const {
    static_part_.mul(x, y);
    for (const auto& [w, csr] : drive_parts_) csr.mul_add(x, y, std::polar(1.0, w * t));
}

std::vector<double> make_grid(double t_end, int samples, std::span<const double> extra) {
    if (!(t_end > 0.0) || samples < 1) throw std::invalid_argument("make_grid: bad arguments");
    std::vector<double> g;
    g.reserve(static_cast<size_t>(samples) + 1 + extra.size());
    for (int i = 0; i <= samples; ++i) g.push_back(t_end * i / samples);
    for (double t : extra)
        if (t > 0.0 && t < t_end) g.push_back(t);
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end(),
                        [](double a, double b) { return std::abs(a - b) < 1e-12; }),
            g.end());
    return g;
}

const std::vector<double>& Trajectory::series_for(std::string_view name) const {
    for (size_t k = 0; k < names.size(); ++k)
        if (names[k] == name) return series[k];
    throw std::invalid_argument("Trajectory: no series named " + std::string(name));
}

double Trajectory::value_at(std::string_view name, double t) const {
    const auto& s = series_for(name);
    auto it = std::lower_bound(times.begin(), times.end(), t);
    size_t i = static_cast<size_t>(it - times.begin());
    if (i >= times.size()) i = times.size() - 1;
    if (i > 0 && std::abs(times[i - 1] - t) < std::abs(times[i] - t)) --i;
    return s[i];
}

namespace {

// Fixed-step classical RK4 and the Dormand-Prince embedded 4(5) pair share
// this workspace; generators are applied through a type-erased reference.
struct Rhs {
    const std::function<void(double, const cplx*, cplx*)>& f;
    void operator()(double t, const Vector& x, Vector& y) const { f(t, x.data(), y.data()); }
};

struct StepperState {
    Vector y, k1, k2, k3, k4, k5, k6, k7, tmp, y5;
};

void rk4_advance(const Rhs& rhs, StepperState& w, double t0, double t1, double h_target) {
    const double span = t1 - t0;
    const int nsub = std::max(1, static_cast<int>(std::ceil(span / h_target)));
    const double h = span / nsub;
    if (h < kTinyStep) throw std::runtime_error("integrator step-size underflow");
    double t = t0;
    for (int i = 0; i < nsub; ++i) {
        rhs(t, w.y, w.k1);
        w.tmp = w.y + (0.5 * h) * w.k1;
        rhs(t + 0.5 * h, w.tmp, w.k2);
        w.tmp = w.y + (0.5 * h) * w.k2;
        rhs(t + 0.5 * h, w.tmp, w.k3);
        w.tmp = w.y + h * w.k3;
        rhs(t + h, w.tmp, w.k4);
        w.y += (h / 6.0) * (w.k1 + 2.0 * w.k2 + 2.0 * w.k3 + w.k4);
        t = t0 + (i + 1) * h;
    }
}

// Dormand-Prince 4(5) coefficients.
namespace dp {
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;
}  // namespace dp

struct AdaptiveControl {
    double h;
    bool have_k1 = false;
};

void rk45_advance(const Rhs& rhs, StepperState& w, double t0, double t1,
                  const IntegratorConfig& cfg, AdaptiveControl& ctl) {
    using namespace dp;
    double t = t0;
    const double n = static_cast<double>(w.y.size());
    while (t < t1 - kTinyStep) {
        double h = std::min(ctl.h, t1 - t);
        if (h < kTinyStep) throw std::runtime_error("integrator step-size underflow");
        if (!ctl.have_k1) {
            rhs(t, w.y, w.k1);
            ctl.have_k1 = true;
        }
        w.tmp = w.y + h * (a21 * w.k1);
        rhs(t + c2 * h, w.tmp, w.k2);
        w.tmp = w.y + h * (a31 * w.k1 + a32 * w.k2);
        rhs(t + c3 * h, w.tmp, w.k3);
        w.tmp = w.y + h * (a41 * w.k1 + a42 * w.k2 + a43 * w.k3);
        rhs(t + c4 * h, w.tmp, w.k4);
        w.tmp = w.y + h * (a51 * w.k1 + a52 * w.k2 + a53 * w.k3 + a54 * w.k4);
        rhs(t + c5 * h, w.tmp, w.k5);
        w.tmp = w.y + h * (a61 * w.k1 + a62 * w.k2 + a63 * w.k3 + a64 * w.k4 + a65 * w.k5);
        rhs(t + h, w.tmp, w.k6);
        w.y5 = w.y + h * (b1 * w.k1 + b3 * w.k3 + b4 * w.k4 + b5 * w.k5 + b6 * w.k6);
        rhs(t + h, w.y5, w.k7);
        // Embedded error estimate.
        double err2 = 0.0;
        for (Eigen::Index i = 0; i < w.y.size(); ++i) {
            const cplx e = h * (dp::e1 * w.k1(i) + dp::e3 * w.k3(i) + dp::e4 * w.k4(i) +
                                dp::e5 * w.k5(i) + dp::e6 * w.k6(i) + dp::e7 * w.k7(i));
            const double sc =
                cfg.abs_tol + cfg.rel_tol * std::max(std::abs(w.y(i)), std::abs(w.y5(i)));
            const double q = std::abs(e) / sc;
            err2 += q * q;
        }
        const double err = std::sqrt(err2 / n);
        if (err <= 1.0) {
            t += h;
            w.y.swap(w.y5);
            w.k1.swap(w.k7);  // FSAL
            const double fac = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
            ctl.h = h * fac;
        } else {
            ctl.h = h * std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9);
            // k1 still valid at t.
        }
    }
}

double auto_fixed_step(double omega_max, double span, const IntegratorConfig& cfg) {
    if (cfg.fixed_step > 0.0) return cfg.fixed_step;
    double h = span / cfg.max_span_steps;
    if (omega_max > 0.0) h = std::min(h, two_pi / (omega_max * cfg.fast_divisor));
    return h;
}

struct PropagationChecks {
    bool conserve_norm = false;   // Schroedinger
    bool conserve_trace = false;  // Lindblad on density matrices
    bool positivity = false;
};

// Core driver shared by all propagation front ends: advances the state
// across the sample grid and records observables at each sample.
template <typename Generator, typename RecordFn>
void propagate(const Generator& gen, Vector& state, std::span<const double> grid,
               const IntegratorConfig& cfg, const RecordFn& record) {
    check_grid(grid);
    std::function<void(double, const cplx*, cplx*)> f =
        [&gen](double t, const cplx* x, cplx* y) { gen.apply(t, x, y); };
    Rhs rhs{f};
    StepperState w;
    w.y = state;
    const Eigen::Index n = state.size();
    for (Vector* v : {&w.k1, &w.k2, &w.k3, &w.k4, &w.k5, &w.k6, &w.k7, &w.tmp, &w.y5})
        v->resize(n);
    record(0, w.y);
    const double span = grid.back() - grid.front();
    if (cfg.method == Method::RK4Fixed) {
        const double omega = gen.max_drive_frequency() + gen.magnitude_scale();
        const double h = auto_fixed_step(omega, span, cfg);
        for (size_t i = 1; i < grid.size(); ++i) {
            rk4_advance(rhs, w, grid[i - 1], grid[i], h);
            record(i, w.y);
        }
    } else {
        AdaptiveControl ctl;
        double h0 = span / cfg.max_span_steps;
        if (gen.magnitude_scale() > 0.0) h0 = std::min(h0, 0.5 / gen.magnitude_scale());
        ctl.h = h0;
        for (size_t i = 1; i < grid.size(); ++i) {
            rk45_advance(rhs, w, grid[i - 1], grid[i], cfg, ctl);
            ctl.have_k1 = false;  // drive coefficients are discontinuous in precision at joins
            record(i, w.y);
        }
    }
    state = w.y;
}

}  // namespace

void parallel_for_indexed(int n, int jobs, const std::function<void(int)>& f) {
    jobs = std::max(1, std::min(jobs, n));
    if (jobs == 1) {
        for (int i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(jobs));
    for (int w = 0; w < jobs; ++w)
        pool.emplace_back([&] {
            for (;;) {
                const int i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    f(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

Trajectory evolve_schrodinger(const HamiltonianSpec& h, const StateVector& psi0,
                              std::span<const double> grid, const IntegratorConfig& cfg,
                              std::span<const ObservableSpec> observables, int snapshot_stride) {
    if (!(psi0.space() == h.space()))
        throw std::invalid_argument("evolve_schrodinger: state space mismatch");
    for (const auto& o : observables)
        if (!(o.space() == h.space()))
            throw std::invalid_argument("evolve_schrodinger: observable space mismatch");
    SchrodingerGenerator gen(h);
    Trajectory traj;
    traj.times.assign(grid.begin(), grid.end());
    for (const auto& o : observables) {
        traj.names.push_back(o.name());
        traj.series.emplace_back();
        traj.series.back().reserve(grid.size());
    }
    Vector psi = psi0.vector();
    propagate(gen, psi, grid, cfg, [&](size_t i, const Vector& y) {
        const double drift = std::abs(y.norm() - 1.0);
        if (drift > cfg.conservation_tol) {
            char msg[96];
            std::snprintf(msg, sizeof msg, "evolve_schrodinger: norm drift %.3e beyond tolerance",
                          drift);
            throw std::runtime_error(msg);
        }
        for (size_t k = 0; k < observables.size(); ++k)
            traj.series[k].push_back(observables[k].eval(y));
        if (snapshot_stride > 0 && i % static_cast<size_t>(snapshot_stride) == 0) {
            traj.snapshot_times.push_back(traj.times[i]);
            traj.snapshots.push_back(y);
        }
    });
    traj.final_state = psi;
    return traj;
}

namespace {

Trajectory evolve_master_matrix(const HamiltonianSpec& h, std::span<const DecayChannel> channels,
                                Matrix m0, std::span<const double> grid,
                                const IntegratorConfig& cfg,
                                std::span<const ObservableSpec> observables, int snapshot_stride,
                                const PropagationChecks& checks) {
    for (const auto& o : observables)
        if (!(o.space() == h.space()))
            throw std::invalid_argument("evolve_lindblad: observable space mismatch");
    Superoperator gen(h, channels);
    const int d = gen.state_dim();
    Trajectory traj;
    traj.times.assign(grid.begin(), grid.end());
    for (const auto& o : observables) {
        traj.names.push_back(o.name());
        traj.series.emplace_back();
        traj.series.back().reserve(grid.size());
    }
    Vector y = Eigen::Map<const Vector>(m0.data(), static_cast<Eigen::Index>(d) * d);
    Matrix rho(d, d);
    propagate(gen, y, grid, cfg, [&](size_t i, const Vector& v) {
        rho = Eigen::Map<const Matrix>(v.data(), d, d);
        if (checks.conserve_trace) {
            const double drift = std::abs(rho.trace().real() - 1.0) + std::abs(rho.trace().imag());
            if (drift > cfg.conservation_tol)
                throw std::runtime_error("evolve_lindblad: trace drift " + std::to_string(drift) +
                                         " beyond tolerance");
        }
        if (checks.positivity && cfg.monitor_positivity &&
            i % static_cast<size_t>(std::max(1, cfg.positivity_stride)) == 0) {
            Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (rho + rho.adjoint()),
                                                     Eigen::EigenvaluesOnly);
            if (es.eigenvalues().minCoeff() < -1e-7)
                throw std::runtime_error("evolve_lindblad: positivity violation at t=" +
                                         std::to_string(traj.times[i]));
        }
        for (size_t k = 0; k < observables.size(); ++k)
            traj.series[k].push_back(observables[k].eval(rho));
        if (snapshot_stride > 0 && i % static_cast<size_t>(snapshot_stride) == 0) {
            traj.snapshot_times.push_back(traj.times[i]);
            traj.snapshots.push_back(rho);
        }
    });
    traj.final_density = Eigen::Map<const Matrix>(y.data(), d, d);
    return traj;
}

}  // namespace

Trajectory evolve_lindblad(const HamiltonianSpec& h, std::span<const DecayChannel> channels,
                           const DensityMatrix& rho0, std::span<const double> grid,
                           const IntegratorConfig& cfg,
                           std::span<const ObservableSpec> observables, int snapshot_stride) {
    if (!(rho0.space() == h.space()))
        throw std::invalid_argument("evolve_lindblad: state space mismatch");
    PropagationChecks checks;
    checks.conserve_trace = true;
    checks.positivity = true;
    return evolve_master_matrix(h, channels, rho0.matrix(), grid, cfg, observables,
                                snapshot_stride, checks);
}

Eigen::Matrix4cd compute_gate_unitary(const HamiltonianSpec& h, double t_gate,
                                      const IntegratorConfig& cfg) {
    const HilbertSpace& s = h.space();
    if (s.sites() != 2)
        throw std::invalid_argument("compute_gate_unitary: two-atom space required");
    const Level basis[2] = {Level::g0, Level::g1};
    int idx[4];
    for (int i = 0; i < 4; ++i)
        idx[i] = s.basis_index(std::array{basis[i / 2], basis[i % 2]});
    const double grid[2] = {0.0, t_gate};
    Eigen::Matrix4cd u;
    for (int j = 0; j < 4; ++j) {
        Vector v0 = Vector::Zero(s.dim());
        v0(idx[j]) = 1.0;
        Trajectory traj = evolve_schrodinger(h, StateVector(s, v0), grid, cfg, {});
        for (int i = 0; i < 4; ++i) u(i, j) = traj.final_state(idx[i]);
    }
    return u;
}

Eigen::MatrixXcd compute_process_choi(const HamiltonianSpec& h,
                                      std::span<const DecayChannel> channels, double t_gate,
                                      const IntegratorConfig& cfg, int jobs) {
    const HilbertSpace& s = h.space();
    if (s.sites() != 2)
        throw std::invalid_argument("compute_process_choi: two-atom space required");
    const Level basis[2] = {Level::g0, Level::g1};
    int idx[4];
    for (int i = 0; i < 4; ++i)
        idx[i] = s.basis_index(std::array{basis[i / 2], basis[i % 2]});
    const double grid[2] = {0.0, t_gate};

    // Evolve the operator basis |c_i><c_j| for i <= j; the adjoint pairs
    // follow from L(X^dag) = (L X)^dag.
    std::vector<std::pair<int, int>> probes;
    for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) probes.push_back({i, j});
    std::vector<Matrix> mapped(probes.size());
    PropagationChecks checks;  // no trace/positivity constraints on matrix units
    parallel_for_indexed(static_cast<int>(probes.size()), jobs, [&](int k) {
        auto [i, j] = probes[static_cast<size_t>(k)];
        Matrix e0 = Matrix::Zero(s.dim(), s.dim());
        e0(idx[i], idx[j]) = 1.0;
        Trajectory traj =
            evolve_master_matrix(h, channels, std::move(e0), grid, cfg, {}, 0, checks);
        mapped[static_cast<size_t>(k)] = traj.final_density;
    });

    Eigen::MatrixXcd choi = Eigen::MatrixXcd::Zero(16, 16);
    for (size_t q = 0; q < probes.size(); ++q) {
        auto [i, j] = probes[q];
        const Matrix& m = mapped[q];
        for (int k = 0; k < 4; ++k)
            for (int l = 0; l < 4; ++l) {
                choi(i * 4 + k, j * 4 + l) = m(idx[k], idx[l]);
                if (i != j) choi(j * 4 + k, i * 4 + l) = std::conj(m(idx[l], idx[k]));
            }
    }
    if ((choi - choi.adjoint()).cwiseAbs().maxCoeff() > 1e-9)
        throw std::runtime_error("compute_process_choi: Choi matrix not Hermitian");
    return 0.5 * (choi + choi.adjoint().eval());
}

}  // namespace srp
