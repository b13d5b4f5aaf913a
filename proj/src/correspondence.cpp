#include "lagcorr/correspondence.hpp"

#include <utility>

#include "lagcorr/error.hpp"

namespace lagcorr {

namespace {

void require_composable(const LagrangianCorrespondence& l01, const LagrangianCorrespondence& l12) {
    if (!(l01.target() == l12.source())) {
        throw Error(ErrorKind::EndpointMismatch, "cannot compose: target '" + l01.target().name() +
                                                     "' does not match source '" + l12.source().name() + "'");
    }
}

// Swaps the first `first` coordinates with the remaining `second` ones.
Matrix block_swap(std::size_t first, std::size_t second) {
    Matrix p(first + second, first + second);
    for (std::size_t i = 0; i < second; ++i) p(i, first + i) = 1;
    for (std::size_t i = 0; i < first; ++i) p(second + i, i) = 1;
    return p;
}

}  // namespace

LagrangianCorrespondence::LagrangianCorrespondence(SymplecticSpace source, SymplecticSpace target, Subspace subspace,
                                                   std::string name)
    : source_(std::move(source)), target_(std::move(target)), subspace_(std::move(subspace)), name_(std::move(name)) {
    const SymplecticSpace amb = ambient();
    if (subspace_.ambient_dim() != amb.dim()) {
        throw Error(ErrorKind::AmbientMismatch, "correspondence '" + name_ + "' has ambient " +
                                                    std::to_string(subspace_.ambient_dim()) + ", expected " +
                                                    std::to_string(amb.dim()));
    }
    if (!is_lagrangian(amb, subspace_)) {
        throw Error(ErrorKind::NotLagrangian, "correspondence '" + name_ + "' is not Lagrangian in " + amb.name());
    }
}

SymplecticSpace LagrangianCorrespondence::ambient() const { return product(dual(source_), target_); }

LagrangianCorrespondence LagrangianCorrespondence::renamed(std::string name) const {
    LagrangianCorrespondence out = *this;
    out.name_ = std::move(name);
    return out;
}

LagrangianCorrespondence diagonal(const SymplecticSpace& v) {
    const std::size_t n = v.dim();
    Matrix b(2 * n, n);
    for (std::size_t i = 0; i < n; ++i) {
        b(i, i) = 1;
        b(n + i, i) = 1;
    }
    return LagrangianCorrespondence(v, v, Subspace::span(b), "diag(" + v.name() + ")");
}

LagrangianCorrespondence graph(const SymplecticSpace& a, const SymplecticSpace& b, const Matrix& psi,
                               std::string name) {
    if (!is_linear_symplectomorphism(a, b, psi)) {
        throw Error(ErrorKind::NotSymplectomorphism,
                    "map " + format_matrix(psi) + " is not symplectic from '" + a.name() + "' to '" + b.name() + "'");
    }
    return LagrangianCorrespondence(a, b, Subspace::span(vstack(Matrix::identity(a.dim()), psi)), std::move(name));
}

LagrangianCorrespondence transpose(const LagrangianCorrespondence& l) {
    const Subspace swapped = image(block_swap(l.source().dim(), l.target().dim()), l.subspace());
    std::string name = l.name().empty() ? std::string{} : l.name() + "^t";
    if (name.size() > 4 && name.ends_with("^t^t")) name.resize(name.size() - 4);
    return LagrangianCorrespondence(l.target(), l.source(), swapped, std::move(name));
}

LagrangianCorrespondence product_of_lagrangians(const LagrangianSubspace& l0, const LagrangianSubspace& l1,
                                                std::string name) {
    return LagrangianCorrespondence(dual(l0.space()), l1.space(), direct_sum(l0.subspace(), l1.subspace()),
                                    std::move(name));
}

Subspace compose_relations(const Subspace& r01, std::size_t n0, std::size_t n1, const Subspace& r12,
                           std::size_t n2) {
    if (r01.ambient_dim() != n0 + n1 || r12.ambient_dim() != n1 + n2) {
        throw Error(ErrorKind::AmbientMismatch, "compose_relations: block sizes do not match ambients");
    }
    const Matrix b = r01.basis();
    const Matrix c = r12.basis();
    // Parametrize pairs (a, c) with B1 a = C1 c, then read off (B0 a, C2 c).
    const Subspace params = kernel(hstack(b.row_block(n0, n1), -c.row_block(0, n1)));
    const Matrix b0 = b.row_block(0, n0);
    const Matrix c2 = c.row_block(n1, n2);
    std::vector<Vector> vectors;
    vectors.reserve(params.dim());
    for (const auto& p : params.basis_vectors()) {
        Vector a(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(b.cols()));
        Vector g(p.begin() + static_cast<std::ptrdiff_t>(b.cols()), p.end());
        Vector x0 = b0 * a;
        Vector x2 = c2 * g;
        x0.insert(x0.end(), x2.begin(), x2.end());
        vectors.push_back(std::move(x0));
    }
    return Subspace::span(vectors, n0 + n2);
}

Subspace relation_compose(const LagrangianCorrespondence& l01, const LagrangianCorrespondence& l12) {
    require_composable(l01, l12);
    return compose_relations(l01.subspace(), l01.source().dim(), l01.target().dim(), l12.subspace(),
                             l12.target().dim());
}

CompositionReport geometric_compose(const LagrangianCorrespondence& l01, const LagrangianCorrespondence& l12) {
    require_composable(l01, l12);
    const std::size_t n0 = l01.source().dim();
    const std::size_t n1 = l01.target().dim();
    const std::size_t n2 = l12.target().dim();
    const std::size_t total = n0 + 2 * n1 + n2;

    CompositionReport report;

    const Matrix b = l01.subspace().basis();
    const Matrix c = l12.subspace().basis();
    report.middle_rank = rank(hstack(b.row_block(n0, n1), -c.row_block(0, n1)));
    report.transverse = report.middle_rank == n1;

    // V0 x Delta_1 x V2 inside V0 x V1 x V1 x V2.
    Matrix diag(total, n0 + n1 + n2);
    for (std::size_t i = 0; i < n0; ++i) diag(i, i) = 1;
    for (std::size_t i = 0; i < n1; ++i) {
        diag(n0 + i, n0 + i) = 1;
        diag(n0 + n1 + i, n0 + i) = 1;
    }
    for (std::size_t i = 0; i < n2; ++i) diag(n0 + 2 * n1 + i, n0 + n1 + i) = 1;

    report.fiber = intersect(direct_sum(l01.subspace(), l12.subspace()), Subspace::span(diag));

    Matrix pi02(n0 + n2, total);
    for (std::size_t i = 0; i < n0; ++i) pi02(i, i) = 1;
    for (std::size_t i = 0; i < n2; ++i) pi02(n0 + i, n0 + 2 * n1 + i) = 1;

    report.composed = image(pi02, report.fiber);
    report.projection_kernel_dim = report.fiber.dim() - report.composed.dim();
    report.injective = report.projection_kernel_dim == 0;
    report.composed_is_lagrangian =
        is_lagrangian(product(dual(l01.source()), l12.target()), report.composed);
    return report;
}

bool is_embedded(const LagrangianCorrespondence& l01, const LagrangianCorrespondence& l12) {
    return geometric_compose(l01, l12).embedded();
}

LagrangianCorrespondence compose_embedded(const LagrangianCorrespondence& l01, const LagrangianCorrespondence& l12) {
    CompositionReport report = geometric_compose(l01, l12);
    if (!report.embedded()) {
        throw NotEmbeddedError("composition of '" + l01.name() + "' and '" + l12.name() + "' is not embedded",
                               std::move(report));
    }
    return LagrangianCorrespondence(l01.source(), l12.target(), report.composed,
                                    composite_name(l01.name(), l12.name()));
}

std::string composite_name(const std::string& a, const std::string& b) { return "(" + a + ";" + b + ")"; }

}  // namespace lagcorr
