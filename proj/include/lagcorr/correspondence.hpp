#pragma once

#include <cstddef>
#include <string>
#include <utility>

#include "lagcorr/error.hpp"
#include "lagcorr/linalg.hpp"
#include "lagcorr/symplectic.hpp"

namespace lagcorr {

/// A linear Lagrangian correspondence L in source^- x target.
///
/// Coordinates of the ambient Q^(dim source + dim target) list the source block
/// first. Equality ignores the display name.
class LagrangianCorrespondence {
public:
    /// Throws Error(AmbientMismatch) if the subspace lives in the wrong ambient
    /// and Error(NotLagrangian) if it is not Lagrangian there.
    LagrangianCorrespondence(SymplecticSpace source, SymplecticSpace target, Subspace subspace,
                             std::string name = {});

    const SymplecticSpace& source() const noexcept { return source_; }
    const SymplecticSpace& target() const noexcept { return target_; }
    const Subspace& subspace() const noexcept { return subspace_; }
    const std::string& name() const noexcept { return name_; }

    /// source^- x target
    SymplecticSpace ambient() const;
    LagrangianCorrespondence renamed(std::string name) const;

    bool operator==(const LagrangianCorrespondence& rhs) const {
        return source_ == rhs.source_ && target_ == rhs.target_ && subspace_ == rhs.subspace_;
    }

private:
    SymplecticSpace source_;
    SymplecticSpace target_;
    Subspace subspace_;
    std::string name_;
};

/// Outcome of composing L01 with L12 through the middle space V1.
///
/// Failures to be transverse or injective are recorded here rather than thrown.
struct CompositionReport {
    /// rank [A1 | -C1] == dim V1, A1 and C1 the V1-blocks of the two bases.
    bool transverse = false;
    std::size_t middle_rank = 0;
    /// (L01 x L12) cap (V0 x Delta_1 x V2) inside V0 x V1 x V1 x V2.
    Subspace fiber;
    /// dim of the kernel of pi_02 restricted to the fiber.
    std::size_t projection_kernel_dim = 0;
    bool injective = false;
    /// pi_02(fiber) inside V0 x V2.
    Subspace composed;
    bool composed_is_lagrangian = false;

    bool embedded() const noexcept { return transverse && injective; }
};

/// Thrown when an operation needs an embedded composition and did not get one.
class NotEmbeddedError : public Error {
public:
    NotEmbeddedError(const std::string& message, CompositionReport report)
        : Error(ErrorKind::NotEmbedded, message), report_(std::move(report)) {}

    const CompositionReport& report() const noexcept { return report_; }

private:
    CompositionReport report_;
};

LagrangianCorrespondence diagonal(const SymplecticSpace& v);

/// Graph {(x, psi x)} of a linear symplectomorphism a -> b.
/// Throws Error(NotSymplectomorphism) if psi fails the form check.
LagrangianCorrespondence graph(const SymplecticSpace& a, const SymplecticSpace& b, const Matrix& psi,
                               std::string name = {});

/// The same subspace read from target to source (blocks swapped).
LagrangianCorrespondence transpose(const LagrangianCorrespondence& l);

/// Split correspondence l0 x l1 from dual(l0.space()) to l1.space(). l0 is a
/// Lagrangian of the dual of the intended source, matching the sign convention
/// of source^- x target.
LagrangianCorrespondence product_of_lagrangians(const LagrangianSubspace& l0, const LagrangianSubspace& l1,
                                                std::string name = {});

/// Set-theoretic composite {(x0, x2) : exists x1, (x0,x1) in r01, (x1,x2) in r12}
/// of two linear relations r01 in Q^n0 x Q^n1 and r12 in Q^n1 x Q^n2.
Subspace compose_relations(const Subspace& r01, std::size_t n0, std::size_t n1, const Subspace& r12,
                           std::size_t n2);

/// Throws Error(EndpointMismatch) unless l01.target() == l12.source().
Subspace relation_compose(const LagrangianCorrespondence& l01, const LagrangianCorrespondence& l12);

/// Throws Error(EndpointMismatch) unless l01.target() == l12.source().
CompositionReport geometric_compose(const LagrangianCorrespondence& l01, const LagrangianCorrespondence& l12);

bool is_embedded(const LagrangianCorrespondence& l01, const LagrangianCorrespondence& l12);

/// L01 o L12 as a correspondence. Throws Error(NotEmbedded) when the
/// composition is not embedded (NotEmbeddedError).
LagrangianCorrespondence compose_embedded(const LagrangianCorrespondence& l01, const LagrangianCorrespondence& l12);

/// Display name for a composite, "(a;b)".
std::string composite_name(const std::string& a, const std::string& b);

}  // namespace lagcorr
