#include <doctest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "lagcorr/dsl.hpp"
#include "lagcorr/error.hpp"
#include "lagcorr/quilt.hpp"
#include "lagcorr/random.hpp"

using namespace lagcorr;

namespace {

const SymplecticSpace PT = standard_space(0, "pt");
const SymplecticSpace M0 = standard_space(1, "M0");
const SymplecticSpace M1 = standard_space(1, "M1");
const SymplecticSpace M2 = standard_space(1, "M2");
const Vector X{1, 0};
const Vector Y{0, 1};

GeneralizedCorrespondence lag(const SymplecticSpace& m, const Vector& v, const std::string& name) {
    return GeneralizedCorrespondence(LagrangianCorrespondence(PT, m, Subspace::span({v}, 2), name));
}

LagrangianCorrespondence split(const SymplecticSpace& a, const Vector& x0, const SymplecticSpace& b,
                               const Vector& x1, const std::string& name) {
    return product_of_lagrangians(LagrangianSubspace(dual(a), Subspace::span({x0}, 2)),
                                  LagrangianSubspace(b, Subspace::span({x1}, 2)), name);
}

LagrangianCorrespondence shear(const SymplecticSpace& a, const SymplecticSpace& b, const std::string& name) {
    return graph(a, b, Matrix{{1, 1}, {0, 1}}, name);
}

ErrorKind kind_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error thrown");
    return ErrorKind::TypeMismatch;
}

std::vector<std::string> end_keys(const QuiltedSurface& q) {
    std::vector<std::string> out;
    for (const auto& e : q.ends) {
        std::string key = to_string(e.direction) + ":";
        for (const auto& s : e.signature.steps()) key += format_basis(s.subspace()) + "|";
        out.push_back(key);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_SUITE("quilt") {

TEST_CASE("pair of pants") {
    const auto l = lag(M0, X, "L");
    const auto q = pair_of_pants(l, l, l);
    CHECK(validate(q).empty());
    CHECK(q.patches.size() == 1);
    CHECK(q.ends.size() == 3);
    CHECK(q.seams.empty());
    const End* out = q.find_end("out");
    REQUIRE(out != nullptr);
    CHECK(out->direction == Direction::Outgoing);
    CHECK(out->signature == concat(l, transpose(l)));
}

TEST_CASE("quilted cap") {
    const auto l = lag(M0, Y, "L");
    const auto q = quilted_cap(l);
    CHECK(validate(q).empty());
    REQUIRE(q.ends.size() == 1);
    CHECK(q.ends[0].direction == Direction::Outgoing);
    CHECK(q.ends[0].signature == concat(l, transpose(l)));
}

TEST_CASE("builders check label endpoints") {
    CHECK(kind_of([] { (void)pair_of_pants(lag(M0, X, "a"), lag(M1, X, "b"), lag(M0, X, "c")); }) ==
          ErrorKind::EndpointMismatch);
}

TEST_CASE("a mislabeled seam is reported") {
    const auto l01 = GeneralizedCorrespondence(split(M0, X, M1, Y, "L01"));
    auto q = quilted_strip(lag(M0, X, "L"), l01, lag(M1, X, "L1"));
    REQUIRE(validate(q).empty());
    REQUIRE(q.seams.size() == 1);
    q.seams[0].label = split(M2, X, M1, Y, "bad");
    const auto violations = validate(q);
    CHECK(violations.size() == 1);
}

TEST_CASE("identity axiom: cap glued into pants gives a strip") {
    const auto l = lag(M0, X, "L");
    const auto l1 = lag(M0, Y, "L1");
    const auto pants = pair_of_pants(l, l, l1);
    const auto glued = glue(quilted_cap(l), "out", pants, "in1");
    CHECK(validate(glued).empty());
    CHECK(glued.ends.size() == 2);
    CHECK(isomorphic(glued, quilted_strip(l, GeneralizedCorrespondence::identity(M0), l1)));
}

TEST_CASE("glue errors") {
    const auto l = lag(M0, X, "L");
    const auto l1 = lag(M0, Y, "L1");
    const auto pants = pair_of_pants(l, l, l1);
    CHECK(kind_of([&] { (void)glue(quilted_cap(l1), "out", pants, "in1"); }) == ErrorKind::SignatureMismatch);
    CHECK(kind_of([&] { (void)glue(quilted_cap(l), "out", pants, "out"); }) == ErrorKind::DirectionMismatch);
    CHECK(kind_of([&] { (void)glue(quilted_cap(l), "nope", pants, "in1"); }) == ErrorKind::UnknownName);
}

TEST_CASE("gluing pants in either association gives the same ends") {
    const auto a = lag(M0, X, "a");
    const auto b = lag(M0, Y, "b");
    const auto c = lag(M0, Vector{1, 1}, "c");
    const auto d = lag(M0, Vector{1, -1}, "d");
    const auto first = glue(pair_of_pants(a, b, c), "out", pair_of_pants(a, c, d), "in1");
    const auto second = glue(pair_of_pants(b, c, d), "out", pair_of_pants(a, b, d), "in2");
    CHECK(validate(first).empty());
    CHECK(validate(second).empty());
    CHECK(first.ends.size() == 4);
    CHECK(end_keys(first) == end_keys(second));
}

TEST_CASE("shrinking the middle of a three-patch strip") {
    const auto l01 = shear(M0, M1, "L01");
    const auto l12 = split(M1, X, M2, Y, "L12");
    const auto bottom = lag(M0, X, "L");
    const auto top = lag(M2, X, "L2");
    const auto q = quilted_strip(bottom, GeneralizedCorrespondence({l01, l12}), top);
    REQUIRE(validate(q).empty());
    REQUIRE(q.patches.size() == 3);

    const auto r = shrink_strip(q, q.patches[1].id);
    CHECK(validate(r.quilt).empty());
    CHECK(r.shift == 0);
    CHECK(r.configuration == EndConfiguration::InOut);
    CHECK(r.quilt.patches.size() == 2);
    CHECK(r.quilt.seams.size() == 1);
    CHECK(r.quilt.ends.size() == 2);
    CHECK(r.quilt.seams[0].label.subspace() == relation_compose(l01, l12));
    CHECK(isomorphic(r.quilt, quilted_strip(bottom, GeneralizedCorrespondence(compose_embedded(l01, l12)), top)));
}

TEST_CASE("shrink errors") {
    const auto xx = split(M0, X, M1, X, "XX");
    const auto xx2 = split(M1, X, M2, X, "XX2");
    const auto q = quilted_strip(lag(M0, X, "L"), GeneralizedCorrespondence({xx, xx2}), lag(M2, X, "L2"));
    try {
        (void)shrink_strip(q, q.patches[1].id);
        FAIL("expected NotEmbedded");
    } catch (const NotEmbeddedError& e) {
        CHECK_FALSE(e.report().transverse);
    }
    CHECK(kind_of([&] { (void)shrink_strip(q, q.patches[0].id); }) == ErrorKind::NotAStrip);
    const auto l = lag(M0, X, "L");
    CHECK(kind_of([&] { (void)shrink_strip(pair_of_pants(l, l, l), "P"); }) == ErrorKind::NotAStrip);
    CHECK(kind_of([&] { (void)shrink_strip(q, "missing"); }) == ErrorKind::UnknownName);
}

TEST_CASE("functor quilt with a diagonal seam shrinks to the shorter functor") {
    const auto l01 = shear(M0, M1, "L01");
    const auto l = lag(M0, X, "L");
    const auto lp = lag(M0, Y, "L'");
    const auto with_diag = functor_quilt(GeneralizedCorrespondence({l01, diagonal(M1)}), l, lp);
    REQUIRE(validate(with_diag).empty());
    const auto plain = functor_quilt(GeneralizedCorrespondence(l01), l, lp);
    REQUIRE(validate(plain).empty());

    // the band between the L01 seam and the diagonal seam
    std::string band;
    for (const auto& p : with_diag.patches)
        if (p.space == M1 && p.arcs.size() == 4) band = p.id;
    REQUIRE_FALSE(band.empty());
    const auto r = shrink_strip(with_diag, band);
    CHECK(r.configuration == EndConfiguration::TwoOut);
    CHECK(r.shift == static_cast<std::int64_t>(M1.half_dim()));
    CHECK(isomorphic(r.quilt, plain));
}

TEST_CASE("quilted cylinder") {
    const auto lab = GeneralizedCorrespondence(shear(M0, M1, "Lab"));
    const auto lab1 = GeneralizedCorrespondence(split(M0, X, M1, Y, "Lab1"));
    const auto q = quilted_cylinder(lab, lab1);
    CHECK(validate(q).empty());
    CHECK(q.ends.size() == 2);
    CHECK(q.patches.size() == 2);
    CHECK(q.seams.size() == 2);
    for (const auto& e : q.ends) CHECK(e.signature == concat(lab, transpose(lab1)));
}

TEST_CASE("isomorphism ignores identifiers") {
    const auto l = lag(M0, X, "L");
    const auto l1 = lag(M0, Y, "L1");
    auto q = pair_of_pants(l, l1, l);
    auto renamed = q;
    renamed.patches[0].id = "Q";
    for (auto& b : renamed.boundaries) b.arc.patch = "Q";
    for (auto& e : renamed.ends)
        for (auto& s : e.segments) s.patch = "Q";
    renamed.ends[0].id = "zzz";
    CHECK(validate(renamed).empty());
    CHECK(isomorphic(q, renamed));
    CHECK_FALSE(isomorphic(q, pair_of_pants(l, l, l1)));
}

TEST_CASE("property: shrink commutes with glue away from the shrunk patch") {
    RandomSource rng(51);
    for (int trial = 0; trial < 20; ++trial) {
        const auto l01 = graph(M0, M1, random_symplectic_matrix(rng, 1), "A");
        const auto l12 = graph(M1, M2, random_symplectic_matrix(rng, 1), "B");
        const auto l = GeneralizedCorrespondence(LagrangianCorrespondence(PT, M0, random_lagrangian(rng, M0).subspace(), "L"));
        const auto f = functor_quilt(GeneralizedCorrespondence({l01, l12}), l, l);
        std::string band;
        for (const auto& p : f.patches)
            if (p.space == M1) band = p.id;
        REQUIRE_FALSE(band.empty());

        const auto cap = quilted_cap(l);
        const auto shrink_then_glue = glue(cap, "out", shrink_strip(f, band).quilt, "in");
        const auto glued = glue(cap, "out", f, "in");
        std::string glued_band;
        for (const auto& p : glued.patches)
            if (p.space == M1) glued_band = p.id;
        const auto glue_then_shrink = shrink_strip(glued, glued_band).quilt;
        CHECK(validate(shrink_then_glue).empty());
        CHECK(isomorphic(shrink_then_glue, glue_then_shrink));

        // bookkeeping
        CHECK(glued.ends.size() == f.ends.size() + cap.ends.size() - 2);
        const auto shrunk = shrink_strip(f, band);
        CHECK(shrunk.quilt.ends.size() == f.ends.size());
        CHECK(shrunk.quilt.patches.size() + 1 == f.patches.size());
        CHECK(shrunk.quilt.seams.size() + 1 == f.seams.size());
        const Seam* fresh = shrunk.quilt.find_seam(shrunk.new_seam);
        REQUIRE(fresh != nullptr);
        CHECK(fresh->label.subspace() == relation_compose(l01, l12));
    }
}

}  // TEST_SUITE
