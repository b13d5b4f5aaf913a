#pragma once

#include <cstddef>
#include <string>

#include "lagcorr/linalg.hpp"

namespace lagcorr {

/// A rational symplectic vector space (Q^2n, Omega) with a name. Two spaces are
/// the same object when both the name and the form agree.
class SymplecticSpace {
public:
    /// Throws Error(InvalidSpace) unless form is square, antisymmetric and
    /// nondegenerate.
    SymplecticSpace(std::string name, Matrix form);

    const std::string& name() const noexcept { return name_; }
    std::size_t dim() const noexcept { return form_.rows(); }
    std::size_t half_dim() const noexcept { return form_.rows() / 2; }
    const Matrix& form() const noexcept { return form_; }
    bool is_point() const noexcept { return form_.rows() == 0; }

    bool operator==(const SymplecticSpace& rhs) const = default;

private:
    std::string name_;
    Matrix form_;
};

/// Q^2n with Omega = [[0, I], [-I, 0]]. n = 0 gives the point.
SymplecticSpace standard_space(std::size_t n, std::string name);

/// Same space with the form negated. The name gains a trailing '-' (or loses
/// one), so dual is an involution. The point is self-dual.
SymplecticSpace dual(const SymplecticSpace& v);

/// a x b with form diag(Omega_a, Omega_b).
SymplecticSpace product(const SymplecticSpace& a, const SymplecticSpace& b);

/// Gram matrix B^T Omega B of the basis of s.
Matrix restricted_form(const SymplecticSpace& v, const Subspace& s);

bool is_isotropic(const SymplecticSpace& v, const Subspace& s);
bool is_lagrangian(const SymplecticSpace& v, const Subspace& s);
Subspace symplectic_complement(const SymplecticSpace& v, const Subspace& s);

/// psi^T Omega_b psi == Omega_a, with a and b of equal dimension.
/// Throws Error(ShapeMismatch) if psi is not b.dim x a.dim.
bool is_linear_symplectomorphism(const SymplecticSpace& a, const SymplecticSpace& b, const Matrix& psi);

/// A subspace verified to be Lagrangian in its space.
class LagrangianSubspace {
public:
    /// Throws Error(AmbientMismatch) or Error(NotLagrangian).
    LagrangianSubspace(SymplecticSpace space, Subspace subspace);

    const SymplecticSpace& space() const noexcept { return space_; }
    const Subspace& subspace() const noexcept { return subspace_; }

    bool operator==(const LagrangianSubspace& rhs) const = default;

private:
    SymplecticSpace space_;
    Subspace subspace_;
};

}  // namespace lagcorr
