#include "lagcorr/symplectic.hpp"

#include <utility>

#include "lagcorr/error.hpp"

namespace lagcorr {

namespace {

void require_ambient(const SymplecticSpace& v, const Subspace& s, const char* op) {
    if (s.ambient_dim() != v.dim()) {
        throw Error(ErrorKind::AmbientMismatch, std::string(op) + ": subspace of Q^" +
                                                    std::to_string(s.ambient_dim()) + " in space '" +
                                                    v.name() + "' of dim " + std::to_string(v.dim()));
    }
}

}  // namespace

SymplecticSpace::SymplecticSpace(std::string name, Matrix form) : name_(std::move(name)), form_(std::move(form)) {
    if (form_.rows() != form_.cols()) {
        throw Error(ErrorKind::InvalidSpace, "form of '" + name_ + "' is not square");
    }
    if (form_.rows() % 2 != 0) {
        throw Error(ErrorKind::InvalidSpace, "space '" + name_ + "' has odd dimension");
    }
    if (!(form_.transposed() + form_).is_zero()) {
        throw Error(ErrorKind::InvalidSpace, "form of '" + name_ + "' is not antisymmetric");
    }
    if (rank(form_) != form_.rows()) {
        throw Error(ErrorKind::InvalidSpace, "form of '" + name_ + "' is degenerate");
    }
}

SymplecticSpace standard_space(std::size_t n, std::string name) {
    Matrix omega(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        omega(i, n + i) = 1;
        omega(n + i, i) = -1;
    }
    return SymplecticSpace(std::move(name), std::move(omega));
}

SymplecticSpace dual(const SymplecticSpace& v) {
    if (v.is_point()) return v;
    std::string name = v.name();
    if (!name.empty() && name.back() == '-') {
        name.pop_back();
    } else {
        name.push_back('-');
    }
    return SymplecticSpace(std::move(name), -v.form());
}

SymplecticSpace product(const SymplecticSpace& a, const SymplecticSpace& b) {
    return SymplecticSpace(a.name() + "*" + b.name(), block_diagonal(a.form(), b.form()));
}

Matrix restricted_form(const SymplecticSpace& v, const Subspace& s) {
    require_ambient(v, s, "restricted_form");
    const Matrix b = s.basis();
    return b.transposed() * v.form() * b;
}

bool is_isotropic(const SymplecticSpace& v, const Subspace& s) { return restricted_form(v, s).is_zero(); }

bool is_lagrangian(const SymplecticSpace& v, const Subspace& s) {
    require_ambient(v, s, "is_lagrangian");
    return 2 * s.dim() == v.dim() && is_isotropic(v, s);
}

Subspace symplectic_complement(const SymplecticSpace& v, const Subspace& s) {
    require_ambient(v, s, "symplectic_complement");
    // w is in the complement iff b^T Omega w = 0 for every basis vector b.
    return kernel(s.basis().transposed() * v.form());
}

bool is_linear_symplectomorphism(const SymplecticSpace& a, const SymplecticSpace& b, const Matrix& psi) {
    if (psi.rows() != b.dim() || psi.cols() != a.dim()) {
        throw Error(ErrorKind::ShapeMismatch, "map must be " + std::to_string(b.dim()) + "x" +
                                                  std::to_string(a.dim()) + ", got " + std::to_string(psi.rows()) +
                                                  "x" + std::to_string(psi.cols()));
    }
    if (a.dim() != b.dim()) return false;
    return psi.transposed() * b.form() * psi == a.form();
}

LagrangianSubspace::LagrangianSubspace(SymplecticSpace space, Subspace subspace)
    : space_(std::move(space)), subspace_(std::move(subspace)) {
    if (!is_lagrangian(space_, subspace_)) {
        throw Error(ErrorKind::NotLagrangian, "subspace of dim " + std::to_string(subspace_.dim()) +
                                                  " is not Lagrangian in '" + space_.name() + "'");
    }
}

}  // namespace lagcorr
