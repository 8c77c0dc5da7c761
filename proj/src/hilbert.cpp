#include "srp/hilbert.hpp"

#include <algorithm>
#include <stdexcept>

namespace srp {

const char* level_name(Level l) {
    switch (l) {
        case Level::g0: return "0";
        case Level::g1: return "1";
        case Level::r: return "r";
        case Level::p1: return "p'";
        case Level::p2: return "p''";
        case Level::alpha: return "alpha";
        case Level::a_short: return "a";
    }
    return "?";
}

HilbertSpace::HilbertSpace(std::vector<std::vector<Level>> site_levels)
    : site_levels_(std::move(site_levels)) {
    if (site_levels_.empty() || site_levels_.size() > 2)
        throw std::invalid_argument("HilbertSpace: 1 or 2 sites required");
    dim_ = 1;
    for (const auto& levels : site_levels_) {
        if (levels.empty()) throw std::invalid_argument("HilbertSpace: empty site");
        for (size_t i = 0; i < levels.size(); ++i)
            for (size_t j = i + 1; j < levels.size(); ++j)
                if (levels[i] == levels[j])
                    throw std::invalid_argument("HilbertSpace: duplicate level at site");
        if (std::find(levels.begin(), levels.end(), Level::a_short) != levels.end() &&
            site_levels_.size() > 1)
            throw std::invalid_argument("HilbertSpace: |a> appears only in single-atom spaces");
        dim_ *= static_cast<int>(levels.size());
    }
    if (dim_ < 2) throw std::invalid_argument("HilbertSpace: dimension >= 2 required");
}

HilbertSpace HilbertSpace::single(std::vector<Level> levels) {
    return HilbertSpace({std::move(levels)});
}

HilbertSpace HilbertSpace::two_atoms(std::vector<Level> levels) {
    return HilbertSpace({levels, levels});
}

int HilbertSpace::site_dim(int site) const {
    return static_cast<int>(levels(site).size());
}

const std::vector<Level>& HilbertSpace::levels(int site) const {
    if (site < 0 || site >= sites()) throw std::invalid_argument("HilbertSpace: bad site index");
    return site_levels_[static_cast<size_t>(site)];
}

bool HilbertSpace::has_level(int site, Level l) const {
    const auto& ls = levels(site);
    return std::find(ls.begin(), ls.end(), l) != ls.end();
}

int HilbertSpace::level_index(int site, Level l) const {
    const auto& ls = levels(site);
    auto it = std::find(ls.begin(), ls.end(), l);
    if (it == ls.end())
        throw std::invalid_argument(std::string("HilbertSpace: level ") + level_name(l) +
                                    " not present at site " + std::to_string(site + 1));
    return static_cast<int>(it - ls.begin());
}

int HilbertSpace::basis_index(std::span<const Level> per_site) const {
    if (static_cast<int>(per_site.size()) != sites())
        throw std::invalid_argument("basis_index: one level per site required");
    int idx = 0;
    for (int s = 0; s < sites(); ++s) idx = idx * site_dim(s) + level_index(s, per_site[s]);
    return idx;
}

namespace {

void check_same_space(const HilbertSpace& a, const HilbertSpace& b, const char* what) {
    if (!(a == b)) throw std::invalid_argument(std::string(what) + ": space mismatch");
}

}  // namespace

Operator::Operator(HilbertSpace space, Matrix m, Storage storage)
    : space_(std::move(space)), m_(std::move(m)), storage_(storage) {
    if (m_.rows() != space_.dim() || m_.cols() != space_.dim())
        throw std::invalid_argument("Operator: matrix shape does not match space dimension");
}

Operator Operator::adjoint() const { return Operator(space_, m_.adjoint(), storage_); }

bool Operator::is_hermitian(double tol) const {
    return (m_ - m_.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

Operator Operator::operator+(const Operator& rhs) const {
    check_same_space(space_, rhs.space_, "Operator+");
    return Operator(space_, m_ + rhs.m_, storage_);
}

Operator Operator::operator-(const Operator& rhs) const {
    check_same_space(space_, rhs.space_, "Operator-");
    return Operator(space_, m_ - rhs.m_, storage_);
}

Operator Operator::operator*(const Operator& rhs) const {
    check_same_space(space_, rhs.space_, "Operator*");
    return Operator(space_, m_ * rhs.m_, storage_);
}

Operator operator*(cplx s, const Operator& a) { return Operator(a.space_, s * a.m_, a.storage_); }

StateVector::StateVector(HilbertSpace space, Vector v)
    : space_(std::move(space)), v_(std::move(v)) {
    if (v_.size() != space_.dim())
        throw std::invalid_argument("StateVector: size does not match space dimension");
    if (std::abs(v_.norm() - 1.0) > 1e-9)
        throw std::invalid_argument("StateVector: not normalized");
}

DensityMatrix::DensityMatrix(HilbertSpace space, Matrix m)
    : space_(std::move(space)), m_(std::move(m)) {
    if (m_.rows() != space_.dim() || m_.cols() != space_.dim())
        throw std::invalid_argument("DensityMatrix: shape does not match space dimension");
    if ((m_ - m_.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument("DensityMatrix: not Hermitian");
    if (std::abs(m_.trace().real() - 1.0) > 1e-9 || std::abs(m_.trace().imag()) > 1e-9)
        throw std::invalid_argument("DensityMatrix: trace != 1");
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix c(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            c.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return c;
}

Operator identity_op(const HilbertSpace& space) {
    return Operator(space, Matrix::Identity(space.dim(), space.dim()));
}

Operator tensor_product(const Operator& a, const Operator& b) {
    if (a.space().sites() != 1 || b.space().sites() != 1)
        throw std::invalid_argument("tensor_product: both factors must be single-site");
    long dim = static_cast<long>(a.dim()) * b.dim();
    if (dim > 10000) throw std::invalid_argument("tensor_product: dimension overflow (> 10^4)");
    HilbertSpace combined({a.space().levels(0), b.space().levels(0)});
    return Operator(combined, kron(a.matrix(), b.matrix()), a.storage());
}

Operator transition_operator(const HilbertSpace& space, int site, Level from, Level to) {
    const int i_from = space.level_index(site, from);
    const int i_to = space.level_index(site, to);
    const int d = space.site_dim(site);
    Matrix local = Matrix::Zero(d, d);
    local(i_to, i_from) = 1.0;
    if (space.sites() == 1) return Operator(space, local, Storage::Dense);
    const int other = 1 - site;
    Matrix eye = Matrix::Identity(space.site_dim(other), space.site_dim(other));
    Matrix full = (site == 0) ? kron(local, eye) : kron(eye, local);
    return Operator(space, full, Storage::Dense);
}

Operator projector_op(const HilbertSpace& space, int site, Level l) {
    return transition_operator(space, site, l, l);
}

cplx expectation(const DensityMatrix& rho, const Operator& o) {
    check_same_space(rho.space(), o.space(), "expectation");
    return (rho.matrix() * o.matrix()).trace();
}

StateVector basis_state(const HilbertSpace& space, std::span<const Level> per_site) {
    Vector v = Vector::Zero(space.dim());
    v(space.basis_index(per_site)) = 1.0;
    return StateVector(space, std::move(v));
}

StateVector basis_state(const HilbertSpace& space, std::initializer_list<Level> per_site) {
    std::vector<Level> ls(per_site);
    return basis_state(space, std::span<const Level>(ls));
}

StateVector superposition(const HilbertSpace& space, std::span<const int> indices,
                          std::span<const cplx> coeffs) {
    if (indices.size() != coeffs.size())
        throw std::invalid_argument("superposition: index/coefficient count mismatch");
    Vector v = Vector::Zero(space.dim());
    for (size_t k = 0; k < indices.size(); ++k) {
        if (indices[k] < 0 || indices[k] >= space.dim())
            throw std::invalid_argument("superposition: index out of range");
        v(indices[k]) += coeffs[k];
    }
    double n = v.norm();
    if (n == 0.0) throw std::invalid_argument("superposition: zero vector");
    return StateVector(space, v / n);
}

DensityMatrix pure_density(const StateVector& psi) {
    return DensityMatrix(psi.space(), psi.vector() * psi.vector().adjoint());
}

Operator outer(const StateVector& a, const StateVector& b) {
    check_same_space(a.space(), b.space(), "outer");
    return Operator(a.space(), a.vector() * b.vector().adjoint());
}

}  // namespace srp
