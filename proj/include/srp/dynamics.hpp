#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "srp/model.hpp"
#include "srp/observables.hpp"

namespace srp {

enum class Method { RK4Fixed, RK45Adaptive };

struct IntegratorConfig {
    Method method = Method::RK4Fixed;
    // Fixed step in us; 0 selects h = min(2*pi/(omega_max*fast_divisor),
    // t_span/max_span_steps) with omega_max the largest drive frequency
    // plus the generator magnitude scale.
    double fixed_step = 0.0;
    double rel_tol = 1e-8;
    double abs_tol = 1e-10;
    int fast_divisor = 20;
    int max_span_steps = 1000;
    bool monitor_positivity = false;
    int positivity_stride = 50;
    // Tolerated norm / trace drift over a run before the propagation is
    // declared failed.
    double conservation_tol = 1e-8;
};

// Time grid plus recorded observable series and optional snapshots.
struct Trajectory {
    std::vector<double> times;
    std::vector<std::string> names;
    std::vector<std::vector<double>> series;  // series[k][i] = names[k] at times[i]
    std::vector<double> snapshot_times;
    std::vector<Matrix> snapshots;
    Vector final_state;    // Schroedinger runs
    Matrix final_density;  // Lindblad runs

    const std::vector<double>& series_for(std::string_view name) const;
    double value_at(std::string_view name, double t) const;  // nearest grid point
};

// Uniform grid [0, t_end] with `samples` intervals, plus optional extra
// sample times inserted in order.
std::vector<double> make_grid(double t_end, int samples, std::span<const double> extra = {});

// Sparse complex CSR matrix; the propagation kernel currency. Values are
// stored split into real/imaginary arrays and the vectors are accessed
// through their (re, im) double layout, so the inner loops run on plain
// fused multiply-adds instead of std::complex arithmetic. Hamiltonian
// commutator blocks are purely imaginary and dissipator blocks purely
// real, which the kernel exploits with specialized loops.
struct Csr {
    enum class ValueKind { General, RealOnly, ImagOnly };

    int rows = 0;
    ValueKind kind = ValueKind::General;
    std::vector<int> row_ptr;
    std::vector<int> col;
    std::vector<double> val_re;
    std::vector<double> val_im;

    static Csr from_triplets(int n, std::vector<std::pair<std::pair<int, int>, cplx>> trips);
    size_t nonzeros() const { return val_re.size(); }
    void mul(const cplx* x, cplx* y) const;              // y = A x
    void mul_add(const cplx* x, cplx* y, cplx c) const;  // y += c (A x)
    Matrix dense() const;
};

// Vectorized Lindblad generator L(t) on the dim^2 space, column-major
// vec(rho): a static part (dissipators and static Hamiltonian terms) plus
// one sparse pair per drive frequency.
class Superoperator {
public:
    Superoperator(const HamiltonianSpec& h, std::span<const DecayChannel> channels);

    int state_dim() const { return dim_; }
    int vec_dim() const { return dim_ * dim_; }
    // y = L(t) x
    void apply(double t, const cplx* x, cplx* y) const;
    Matrix dense(double t) const;
    double max_drive_frequency() const { return max_freq_; }
    // Magnitude estimate used for step control.
    double magnitude_scale() const { return magnitude_; }

private:
    int dim_;
    // dissipator (real-valued) and static-Hamiltonian (imaginary-valued)
    // parts kept separate so each runs its specialized kernel
    std::vector<Csr> static_parts_;
    std::vector<std::pair<double, Csr>> drive_parts_;  // (angular frequency, matrix)
    double max_freq_ = 0.0;
    double magnitude_ = 0.0;
};

// Right-hand side -i H(t) psi with the same merged-term layout.
class SchrodingerGenerator {
public:
    explicit SchrodingerGenerator(const HamiltonianSpec& h);
    int dim() const { return dim_; }
    void apply(double t, const cplx* x, cplx* y) const;
    double max_drive_frequency() const { return max_freq_; }
    double magnitude_scale() const { return magnitude_; }

private:
    int dim_;
    Csr static_part_;
    std::vector<std::pair<double, Csr>> drive_parts_;
    double max_freq_ = 0.0;
    double magnitude_ = 0.0;
};

Trajectory evolve_schrodinger(const HamiltonianSpec& h, const StateVector& psi0,
                              std::span<const double> grid, const IntegratorConfig& cfg,
                              std::span<const ObservableSpec> observables,
                              int snapshot_stride = 0);

Trajectory evolve_lindblad(const HamiltonianSpec& h, std::span<const DecayChannel> channels,
                           const DensityMatrix& rho0, std::span<const double> grid,
                           const IntegratorConfig& cfg,
                           std::span<const ObservableSpec> observables,
                           int snapshot_stride = 0);

// Propagates the four computational basis states to t_gate and projects
// onto {|00>,|01>,|10>,|11>}; the matrix is not re-unitarized, so leakage
// shows up as fidelity loss.
Eigen::Matrix4cd compute_gate_unitary(const HamiltonianSpec& h, double t_gate,
                                      const IntegratorConfig& cfg);

// Evolves the 16 computational operator-basis elements under the master
// equation and assembles the (possibly trace-decreasing) Choi matrix.
Eigen::MatrixXcd compute_process_choi(const HamiltonianSpec& h,
                                      std::span<const DecayChannel> channels, double t_gate,
                                      const IntegratorConfig& cfg, int jobs = 1);

// Runs f(0..n-1) on up to `jobs` threads; each index writes its own slot,
// so results are independent of the schedule.
void parallel_for_indexed(int n, int jobs, const std::function<void(int)>& f);

}  // namespace srp
