#include <doctest.h>

#include <string>
#include <type_traits>
#include <variant>

#include "lagcorr/dsl.hpp"

using namespace lagcorr;

namespace {

const char* const kPrelude = R"(space M0 std 1
space M1 std 1
lag X in M0 basis [[1],[0]]
lag Y in M0 basis [[0],[1]]
corr XX split X X
corr YY split Y Y
corr XY split X Y
)";

ReportEntry only(const Report& r) {
    REQUIRE(r.entries.size() == 1);
    return r.entries.front();
}

std::string field(const ReportEntry& e, const std::string& key) {
    for (const auto& f : e.fields)
        if (f.key == key) return f.value;
    FAIL("missing field " << key);
    return {};
}

Report run(const std::string& body) { return run_script(std::string(kPrelude) + body); }

/// Declares `text`, serializes object `name`, and reruns the serialization.
void check_round_trip(const std::string& text, const std::string& name) {
    Interpreter first;
    const Report r1 = first.run(parse(text));
    for (const auto& e : r1.entries) REQUIRE_MESSAGE(!e.error, e.message);
    const Value* original = first.lookup(name);
    REQUIRE(original != nullptr);

    const std::string emitted = serialize(name, *original);
    Interpreter second;
    const Report r2 = second.run(parse(emitted));
    for (const auto& e : r2.entries) REQUIRE_MESSAGE(!e.error, e.message << "\n" << emitted);
    const Value* copy = second.lookup(name);
    REQUIRE(copy != nullptr);
    REQUIRE(copy->index() == original->index());
    std::visit(
        [&](const auto& a) {
            using T = std::decay_t<decltype(a)>;
            const T& b = std::get<T>(*copy);
            if constexpr (std::is_same_v<T, QuiltedSurface>) {
                CHECK(isomorphic(a, b));
            } else {
                CHECK(a == b);
            }
        },
        *original);
}

}  // namespace

TEST_SUITE("dsl") {

TEST_CASE("declarations are silent") {
    const Report r = run_script("space M0 std 1\nlag X in M0 basis [[1],[0]]\n");
    CHECK(r.entries.empty());
    CHECK(r.exit_code() == 0);
}

TEST_CASE("wrong-dimension Lagrangian is a type mismatch") {
    const Report r = run_script("space M0 std 1\nlag BAD in M0 basis [[1,0],[0,1]]\n");
    const auto& e = only(r);
    REQUIRE(e.error);
    CHECK(*e.error == ErrorKind::TypeMismatch);
    CHECK(e.line == 2);
    CHECK(e.column > 1);
    CHECK(r.exit_code() == 0);
}

TEST_CASE("embedded? on split correspondences") {
    const auto& e = only(run("embedded? XX YY\n"));
    CHECK_FALSE(e.error);
    REQUIRE_FALSE(e.text.empty());
    CHECK(e.text.front() == "embedded: true; composed dim 2");
    CHECK(field(e, "embedded") == "true");
    // inline parenthesized sequences are accepted too
    CHECK(only(run("embedded? (XX) (YY)\n")).text.front() == "embedded: true; composed dim 2");
}

TEST_CASE("normalize through an inline diagonal") {
    const auto& e = only(run("seq S = X # diag M0 # X^t\nnormalize S\n"));
    CHECK_FALSE(e.error);
    CHECK(field(e, "length") == "3");
    CHECK(field(e, "reduced_length") == "2");
    CHECK(field(e, "reductions") == "1");
    CHECK(field(e, "trace") == "0");
}

TEST_CASE("shift on single-space sequences") {
    const auto& e = only(run("seq S = id M0\nseq T = id M1\nshift S T\n"));
    CHECK(e.text.front() == "d = 2");
    CHECK(field(e, "d") == "2");
}

TEST_CASE("shift strip and signs") {
    CHECK(field(only(run_script("shift strip 2 two-in\n")), "d") == "-2");
    CHECK(field(only(run_script("sign koszul 1 1\n")), "sign") == "-1");
    CHECK(field(only(run_script("sign glue-second 1 1\n")), "sign") == "-1");
    CHECK(field(only(run_script("sign reorder 3 5\n")), "sign") == "-1");
    CHECK(field(only(run_script("sign cap-second 1 1\n")), "sign") == "1");
    CHECK(field(only(run_script("sign cap-first 1 1\n")), "sign") == "-1");
}

TEST_CASE("modulus option changes degree arithmetic") {
    RunOptions four;
    four.modulus = 4;
    const Report r = run_script("sign koszul 2 3\n", four);
    CHECK(field(only(r), "sign") == "1");
    CHECK_THROWS_AS(run_script("", RunOptions{0, 3}), Error);
}

TEST_CASE("errors carry line and column and never stop the script") {
    const Report r = run("compose NOPE XX\nfrobnicate\nembedded? XX XX\ncompose XX (X)\n");
    REQUIRE(r.entries.size() == 4);
    CHECK(*r.entries[0].error == ErrorKind::UnknownName);
    CHECK(r.entries[0].line == 8);
    CHECK(r.entries[0].column == 9);
    CHECK(*r.entries[1].error == ErrorKind::SyntaxError);
    CHECK(r.entries[1].column == 1);
    CHECK_FALSE(r.entries[2].error);
    CHECK(field(r.entries[2], "embedded") == "false");
    CHECK(*r.entries[3].error == ErrorKind::EndpointMismatch);
    CHECK(r.exit_code() == 1);
}

TEST_CASE("lexical and block errors") {
    CHECK(*only(run_script("space M0 std 1 $\n")).error == ErrorKind::SyntaxError);
    CHECK(*only(run_script("quilt Q {\npatch P pt arcs a\n")).error == ErrorKind::SyntaxError);
    CHECK(*only(run_script("space M0 std 1\nspace M0 std 2\n")).error == ErrorKind::SyntaxError);
    CHECK(*only(run("lag Z in M0 basis [[1/0],[0]]\n")).error == ErrorKind::SyntaxError);
}

TEST_CASE("exit code ignores engine verdicts and type errors") {
    CHECK(run("compose XX XX\n").exit_code() == 0);
    CHECK(run("space BAD form [[1,0],[0,1]]\n").exit_code() == 0);
    CHECK(run("pi NOPE\n").exit_code() == 1);
}

TEST_CASE("not-embedded compose is a result and quilt-shrink failure carries the report") {
    const std::string quilt = R"(space M2 std 1
lag X1 in M1 basis [[1],[0]]
lag X2 in M2 basis [[1],[0]]
corr A split X X1
corr B split X1 X2
quilt Q strip X (A # B) X2
quilt-shrink R Q S1
)";
    const Report r = run(quilt);
    const auto& e = only(r);
    REQUIRE(e.error);
    CHECK(*e.error == ErrorKind::NotEmbedded);
    CHECK(field(e, "transverse") == "false");
}

TEST_CASE("quilt block form") {
    const std::string text = R"(quilt Q {
  patch P M0 arcs b o
  boundary P.b label X
  end out out at P.o signature (X # X^t)
}
quilt C cap X
quilt-validate Q
quilt-iso? Q C
)";
    const Report r = run(text);
    REQUIRE(r.entries.size() == 2);
    CHECK(field(r.entries[0], "valid") == "true");
    CHECK(field(r.entries[1], "isomorphic") == "true");
}

TEST_CASE("machine format quoting") {
    CHECK(quote_value("plain") == "plain");
    CHECK(quote_value("") == "\"\"");
    CHECK(quote_value("a b") == "\"a b\"");
    CHECK(quote_value("x=\"y\"") == "\"x=\\\"y\\\"\"");
}

TEST_CASE("reports are deterministic") {
    const std::string text = std::string(kPrelude) +
                             "compose XX YY\nnormalize (XX # YY # XX)\ncheck-axioms random 4\n"
                             "quilt P pants X X Y\nquilt C cap X\nquilt-glue G C out P in1\nshow G\n";
    RunOptions opts;
    opts.seed = 99;
    const std::string a = render_machine(run_script(text, opts));
    const std::string b = render_machine(run_script(text, opts));
    CHECK(a == b);
    CHECK(render_text(run_script(text, opts)) == render_text(run_script(text, opts)));
}

TEST_CASE("round trip through serialize") {
    const std::string base = kPrelude;
    check_round_trip(base, "M0");
    check_round_trip(base + "space D dual M0\n", "D");
    check_round_trip(base + "space P prod M0 M1\n", "P");
    check_round_trip(base + "space W form [[0,2],[-2,0]]\n", "W");
    check_round_trip(base, "X");
    check_round_trip(base, "XY");
    check_round_trip(base + "corr G graph M0 M1 [[1,1],[0,1]]\n", "G");
    check_round_trip(base + "seq S = X # XY # diag M0\n", "S");
    check_round_trip(base + "seq E = id M1\n", "E");
    check_round_trip(base + "seq S = XX\nmorph f : S -> S deg 1\n", "f");
    check_round_trip(base + "quilt P pants X Y X\n", "P");
    check_round_trip(base + "quilt F functor (XY) X Y\n", "F");
    check_round_trip(base + "quilt Z cylinder (XY) (XX)\n", "Z");
}

}  // TEST_SUITE
