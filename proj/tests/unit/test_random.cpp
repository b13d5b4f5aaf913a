#include <doctest.h>

#include "lagcorr/random.hpp"

using namespace lagcorr;

TEST_SUITE("random") {

TEST_CASE("draws are reproducible and in range") {
    RandomSource a(7);
    RandomSource b(7);
    for (int i = 0; i < 1000; ++i) {
        const auto x = a.uniform(-3, 5);
        CHECK(x == b.uniform(-3, 5));
        CHECK(x >= -3);
        CHECK(x <= 5);
    }
    RandomSource c(8);
    bool differs = false;
    RandomSource d(7);
    for (int i = 0; i < 20; ++i) differs = differs || c.uniform(0, 1000) != d.uniform(0, 1000);
    CHECK(differs);
}

TEST_CASE("every value of a small range is hit") {
    RandomSource rng(1);
    int seen[4] = {0, 0, 0, 0};
    for (int i = 0; i < 400; ++i) ++seen[rng.uniform(0, 3)];
    for (int s : seen) CHECK(s > 50);
}

TEST_CASE("random symplectic matrices are symplectic") {
    RandomSource rng(2);
    for (std::size_t n = 1; n <= 3; ++n) {
        const SymplecticSpace v = standard_space(n, "V");
        for (int i = 0; i < 50; ++i) {
            const Matrix m = random_symplectic_matrix(rng, n);
            CHECK(m.transposed() * v.form() * m == v.form());
        }
    }
}

TEST_CASE("symplectic basis of non-standard forms") {
    const SymplecticSpace a = standard_space(1, "A");
    const SymplecticSpace b = standard_space(2, "B");
    for (const auto& v : {product(dual(a), b), dual(b), SymplecticSpace("W", Matrix{{0, 2, 1, 0},
                                                                                    {-2, 0, 0, 0},
                                                                                    {-1, 0, 0, 3},
                                                                                    {0, 0, -3, 0}})}) {
        const Matrix p = symplectic_basis(v);
        CHECK(p.transposed() * v.form() * p == standard_space(v.half_dim(), "S").form());
    }
}

TEST_CASE("random Lagrangians and correspondences are valid") {
    RandomSource rng(3);
    for (int i = 0; i < 100; ++i) {
        const SymplecticSpace a = random_space(rng, 0, 2);
        const SymplecticSpace b = random_space(rng, 0, 2);
        const auto l = random_lagrangian(rng, product(dual(a), b));
        CHECK(is_lagrangian(l.space(), l.subspace()));
        const auto c = random_correspondence(rng, a, b);
        CHECK(c.source() == a);
        CHECK(c.target() == b);
    }
}

TEST_CASE("composable pairs mix transverse and degenerate cases") {
    RandomSource rng(4);
    int transverse = 0;
    int degenerate = 0;
    for (int i = 0; i < 200; ++i) {
        const auto [l01, l12] = random_composable_pair(rng, true);
        CHECK(l01.target() == l12.source());
        CHECK(l01.target().dim() > 0);
        (geometric_compose(l01, l12).transverse ? transverse : degenerate)++;
    }
    CHECK(transverse > 20);
    CHECK(degenerate > 20);
}

TEST_CASE("random triples chain") {
    RandomSource rng(5);
    for (int i = 0; i < 100; ++i) {
        const auto t = random_triple(rng);
        CHECK(t.first.target() == t.second.source());
        CHECK(t.second.target() == t.third.source());
        CHECK(t.first.length() <= 2);
    }
}

}  // TEST_SUITE
