#pragma once

#include <Eigen/Dense>
#include <complex>
#include <span>
#include <string>
#include <vector>

namespace srp {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double two_pi = 6.283185307179586476925286766559;

// Atomic levels appearing anywhere in the level schemes. g0/g1 are the
// hyperfine ground qubit states, r/p1/p2 the Rydberg levels, alpha the
// lumped external leakage level and a_short the short-lived 5P state used
// by the engineered-emission model (single-atom spaces only).
enum class Level { g0, g1, r, p1, p2, alpha, a_short };

const char* level_name(Level l);

// Tensor-product space of one or two multilevel atoms.
//
// Basis ordering is site-1-major: index = i1 * dim(site 2) + i2, where i_n
// is the position of the level in the per-site level list. Golden-number
// tests address matrix elements through this ordering, so it is fixed.
class HilbertSpace {
public:
    explicit HilbertSpace(std::vector<std::vector<Level>> site_levels);

    static HilbertSpace single(std::vector<Level> levels);
    static HilbertSpace two_atoms(std::vector<Level> levels);

    int sites() const { return static_cast<int>(site_levels_.size()); }
    int site_dim(int site) const;
    int dim() const { return dim_; }
    const std::vector<Level>& levels(int site) const;

    bool has_level(int site, Level l) const;
    // Position of a level within a site's list; throws if absent.
    int level_index(int site, Level l) const;
    // Full basis index of a product state, one level per site.
    int basis_index(std::span<const Level> per_site) const;

    bool operator==(const HilbertSpace& other) const {
        return site_levels_ == other.site_levels_;
    }

private:
    std::vector<std::vector<Level>> site_levels_;
    int dim_ = 0;
};

enum class Storage { Dense, Sparse };

// Complex matrix bound to a space. Everything at these dimensions (<= 36)
// is stored dense; sparsity only pays off at the superoperator level.
class Operator {
public:
    Operator(HilbertSpace space, Matrix m, Storage storage = Storage::Dense);

    const HilbertSpace& space() const { return space_; }
    const Matrix& matrix() const { return m_; }
    Storage storage() const { return storage_; }
    int dim() const { return space_.dim(); }

    Operator adjoint() const;
    bool is_hermitian(double tol = 1e-12) const;

    Operator operator+(const Operator& rhs) const;
    Operator operator-(const Operator& rhs) const;
    Operator operator*(const Operator& rhs) const;
    friend Operator operator*(cplx s, const Operator& a);

private:
    HilbertSpace space_;
    Matrix m_;
    Storage storage_;
};

// Normalized pure state; construction rejects norm deviations > 1e-9.
class StateVector {
public:
    StateVector(HilbertSpace space, Vector v);
    const HilbertSpace& space() const { return space_; }
    const Vector& vector() const { return v_; }

private:
    HilbertSpace space_;
    Vector v_;
};

// Density operator; construction enforces Hermiticity to 1e-12 and unit
// trace to 1e-9.
class DensityMatrix {
public:
    DensityMatrix(HilbertSpace space, Matrix m);
    const HilbertSpace& space() const { return space_; }
    const Matrix& matrix() const { return m_; }

private:
    HilbertSpace space_;
    Matrix m_;
};

// Plain Kronecker product of two matrices, site-1-major ordering.
Matrix kron(const Matrix& a, const Matrix& b);

Operator identity_op(const HilbertSpace& space);

// Kronecker product of two single-site operators onto the combined
// two-site space. Rejects results with dim > 10^4.
Operator tensor_product(const Operator& a, const Operator& b);

// |to><from| at one site, identity on the other.
Operator transition_operator(const HilbertSpace& space, int site, Level from, Level to);

// Projector onto a level at one site.
Operator projector_op(const HilbertSpace& space, int site, Level l);

// Tr(rho O); real to 1e-10 for Hermitian O.
cplx expectation(const DensityMatrix& rho, const Operator& o);

StateVector basis_state(const HilbertSpace& space, std::span<const Level> per_site);
StateVector basis_state(const HilbertSpace& space, std::initializer_list<Level> per_site);

// Normalized superposition sum_k coeff[k] |indices[k]>.
StateVector superposition(const HilbertSpace& space, std::span<const int> indices,
                          std::span<const cplx> coeffs);

DensityMatrix pure_density(const StateVector& psi);

// |a><b| as an Operator.
Operator outer(const StateVector& a, const StateVector& b);

}  // namespace srp
