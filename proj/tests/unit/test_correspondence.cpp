#include <doctest.h>

#include "bridge.hpp"
#include "lagcorr/correspondence.hpp"
#include "lagcorr/error.hpp"
#include "lagcorr/random.hpp"

using namespace lagcorr;

namespace {

const SymplecticSpace R2 = standard_space(1, "R2");

LagrangianCorrespondence split(const Vector& x0, const Vector& x1) {
    return product_of_lagrangians(LagrangianSubspace(dual(R2), Subspace::span({x0}, 2)),
                                  LagrangianSubspace(R2, Subspace::span({x1}, 2)));
}

const Vector X{1, 0};
const Vector Y{0, 1};

oracle::Rows as_rows(const Matrix& m) { return oracle::rows_of(m); }

/// The relation composite computed by the oracle from raw bases.
oracle::Rows oracle_compose(const LagrangianCorrespondence& a, const LagrangianCorrespondence& b) {
    return oracle::compose(oracle::vectors_of(a.subspace()), a.source().dim(), a.target().dim(),
                           oracle::vectors_of(b.subspace()), b.target().dim());
}

/// Product form on V0^- x V2 for the oracle's isotropy check.
oracle::Rows ambient_form(const SymplecticSpace& a, const SymplecticSpace& b) {
    return oracle::block_diag(oracle::negate(as_rows(a.form())), as_rows(b.form()));
}

}  // namespace

TEST_SUITE("correspondence") {

TEST_CASE("diagonal") {
    const auto d = diagonal(R2);
    CHECK(d.subspace() == Subspace::span({{1, 0, 1, 0}, {0, 1, 0, 1}}, 4));
    const SymplecticSpace pt = standard_space(0, "pt");
    CHECK(diagonal(pt).subspace().dim() == 0);
    CHECK(diagonal(pt).subspace().ambient_dim() == 0);
    CHECK(transpose(d) == d);
}

TEST_CASE("graph") {
    CHECK(graph(R2, R2, Matrix::identity(2)) == diagonal(R2));
    CHECK(graph(R2, R2, Matrix{{2, 0}, {0, Scalar(1, 2)}}).subspace() ==
          Subspace::span({{1, 0, 2, 0}, {0, 1, 0, Scalar(1, 2)}}, 4));
    try {
        (void)graph(R2, R2, Matrix{{2, 0}, {0, 2}});
        FAIL("expected NotSymplectomorphism");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotSymplectomorphism);
    }
}

TEST_CASE("transpose") {
    const Matrix psi{{1, 1}, {0, 1}};
    const auto g = graph(R2, R2, psi);
    CHECK(transpose(transpose(g)) == g);
    // inverse computed by hand: [[1,-1],[0,1]]
    CHECK(transpose(g) == graph(R2, R2, Matrix{{1, -1}, {0, 1}}));
    CHECK(transpose(split(X, Y)) == split(Y, X));
    const auto named = g.renamed("g");
    CHECK(transpose(named).name() == "g^t");
    CHECK(transpose(transpose(named)).name() == "g");
}

TEST_CASE("split correspondences") {
    CHECK(split(X, X).subspace() == Subspace::span({{1, 0, 0, 0}, {0, 0, 1, 0}}, 4));
    CHECK(split(X, Y).subspace() == Subspace::span({{1, 0, 0, 0}, {0, 0, 0, 1}}, 4));
    const SymplecticSpace pt = standard_space(0, "pt");
    const auto from_pt = product_of_lagrangians(LagrangianSubspace(pt, Subspace::zero(0)),
                                                LagrangianSubspace(R2, Subspace::span({X}, 2)));
    CHECK(from_pt.source() == pt);
    CHECK(from_pt.subspace() == Subspace::span({X}, 2));
}

TEST_CASE("relation_compose examples") {
    const auto l = split(X, Y);
    CHECK(relation_compose(diagonal(R2), l) == l.subspace());

    const Matrix a{{2, 0}, {0, Scalar(1, 2)}};
    const Matrix b{{1, 1}, {0, 1}};
    CHECK(relation_compose(graph(R2, R2, a), graph(R2, R2, b)) ==
          graph(R2, R2, Matrix{{2, Scalar(1, 2)}, {0, Scalar(1, 2)}}).subspace());

    CHECK(relation_compose(split(X, X), split(X, X)) == split(X, X).subspace());

    const SymplecticSpace r4 = standard_space(2, "R4");
    try {
        (void)relation_compose(diagonal(R2), diagonal(r4));
        FAIL("expected EndpointMismatch");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::EndpointMismatch);
    }
}

TEST_CASE("geometric_compose examples") {
    const auto xx = split(X, X);
    const auto yy = split(Y, Y);

    const auto r1 = geometric_compose(xx, yy);
    CHECK(r1.transverse);
    CHECK(r1.injective);
    CHECK(r1.middle_rank == 2);
    CHECK(r1.composed == split(X, Y).subspace());
    CHECK(r1.composed_is_lagrangian);

    const auto r2 = geometric_compose(xx, xx);
    CHECK_FALSE(r2.transverse);
    CHECK(r2.middle_rank == 1);
    CHECK(r2.composed == xx.subspace());
    CHECK_FALSE(r2.embedded());

    const auto r3 = geometric_compose(xx, diagonal(R2));
    CHECK(r3.embedded());
    CHECK(r3.composed == xx.subspace());

    CHECK(is_embedded(xx, yy));
    CHECK_FALSE(is_embedded(xx, xx));
    CHECK(is_embedded(graph(R2, R2, Matrix{{1, 1}, {0, 1}}), graph(R2, R2, Matrix{{1, 0}, {3, 1}})));
}

TEST_CASE("compose_embedded") {
    const auto c = compose_embedded(split(X, X).renamed("a"), split(Y, Y).renamed("b"));
    CHECK(c == split(X, Y));
    CHECK(c.name() == "(a;b)");
    try {
        (void)compose_embedded(split(X, X), split(X, X));
        FAIL("expected NotEmbedded");
    } catch (const NotEmbeddedError& e) {
        CHECK(e.kind() == ErrorKind::NotEmbedded);
        CHECK_FALSE(e.report().transverse);
    }
}

TEST_CASE("correspondence construction checks") {
    CHECK_THROWS_AS(LagrangianCorrespondence(R2, R2, Subspace::zero(4)), Error);
    CHECK_THROWS_AS(LagrangianCorrespondence(R2, R2, Subspace::span({{1, 0}}, 2)), Error);
    // (x, x) for a 1-dim subspace of a 2+2 ambient is not Lagrangian
    CHECK_THROWS_AS(LagrangianCorrespondence(R2, R2, Subspace::span({{1, 0, 1, 0}}, 4)), Error);
}

TEST_CASE("property: relation_compose matches independent elimination and is isotropic") {
    RandomSource rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        const auto [a, b] = random_composable_pair(rng, true);
        const Subspace r = relation_compose(a, b);
        CHECK(oracle::spans(r, oracle_compose(a, b)));
        CHECK(oracle::isotropic(ambient_form(a.source(), b.target()), oracle::vectors_of(r)));
    }
}

TEST_CASE("property: transversality against the oracle's middle-block rank") {
    RandomSource rng(32);
    for (int trial = 0; trial < 200; ++trial) {
        const auto [a, b] = random_composable_pair(rng, true);
        const std::size_t n0 = a.source().dim();
        const std::size_t n1 = a.target().dim();
        // rows of [A1 | -C1]: middle coordinates of both bases
        oracle::Rows middle(n1);
        for (const auto& v : a.subspace().basis_vectors())
            for (std::size_t i = 0; i < n1; ++i) middle[i].push_back(v[n0 + i]);
        for (const auto& v : b.subspace().basis_vectors())
            for (std::size_t i = 0; i < n1; ++i) middle[i].push_back(-v[i]);
        const auto rep = geometric_compose(a, b);
        CHECK(rep.middle_rank == oracle::rank(middle));
        CHECK(rep.transverse == (oracle::rank(middle) == n1));
        if (rep.transverse) CHECK(rep.projection_kernel_dim == 0);
        if (rep.embedded()) {
            CHECK(rep.composed == relation_compose(a, b));
            CHECK(rep.composed_is_lagrangian);
            CHECK(2 * rep.composed.dim() == n0 + b.target().dim());
        }
    }
}

TEST_CASE("property: graph functoriality against matrix product") {
    RandomSource rng(33);
    for (int trial = 0; trial < 100; ++trial) {
        const auto n = static_cast<std::size_t>(rng.uniform(1, 2));
        const SymplecticSpace v = standard_space(n, "V");
        const Matrix p01 = random_symplectic_matrix(rng, n);
        const Matrix p12 = random_symplectic_matrix(rng, n);
        const auto g01 = graph(v, v, p01);
        const auto g12 = graph(v, v, p12);
        const auto rep = geometric_compose(g01, g12);
        CHECK(rep.embedded());
        const oracle::Rows product = oracle::multiply(as_rows(p12), as_rows(p01));
        CHECK(oracle::spans(rep.composed, oracle::graph_span(product)));
    }
}

TEST_CASE("property: associativity of relation_compose") {
    RandomSource rng(34);
    for (int trial = 0; trial < 100; ++trial) {
        const SymplecticSpace v0 = random_space(rng, 0, 2);
        const SymplecticSpace v1 = random_space(rng, 0, 2);
        const SymplecticSpace v2 = random_space(rng, 0, 2);
        const SymplecticSpace v3 = random_space(rng, 0, 2);
        const auto a = random_correspondence(rng, v0, v1);
        const auto b = random_correspondence(rng, v1, v2);
        const auto c = random_correspondence(rng, v2, v3);
        const Subspace ab = relation_compose(a, b);
        const Subspace bc = relation_compose(b, c);
        const Subspace left = compose_relations(ab, v0.dim(), v2.dim(), c.subspace(), v3.dim());
        const Subspace right = compose_relations(a.subspace(), v0.dim(), v1.dim(), bc, v3.dim());
        CHECK(left == right);
    }
}

}  // TEST_SUITE
