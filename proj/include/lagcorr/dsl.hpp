#pragma once

// Line-oriented script language.
//
// Declarations
//   space N std n | space N dual S | space N prod A B | space N form <matrix>
//     (the space is named N; std 0 and form [] give the point)
//   lag X in S basis <matrix>
//   corr C : A -> B basis <matrix>
//   corr C graph A B <matrix> | corr C diag A | corr C split X Y
//   corr C transpose D | corr C compose D E
//   seq S = <item> # <item> ...        item: name, name^t, id <space>,
//                                      or diag <space>
//   morph f : S -> T deg k
//   quilt Q pants l l1 l2 | cap l | strip bottom middle top
//         | functor l01 l l1 | cylinder a b
//   quilt Q {
//     patch P <space> arcs a b c ... [order k]
//     seam s (P.a,R.b) label <corr>
//     boundary P.a label <seq>
//     end e in|out at P.a R.c ... [signature <seq>]
//   }
// Commands
//   compose A B | relcompose A B | embedded? A B
//   normalize S | equivalent? S T | pi S
//   shift S T | shift strip n two-out|in-out|two-in
//   sign koszul a b | sign glue-second x h | sign reorder h1 h2
//   sign cap-first x h | sign cap-second x h | sign compose f g f2 g2
//   quilt-validate Q | quilt-glue New Q1 e1 Q2 e2 | quilt-shrink New Q P
//   quilt-iso? Q1 Q2
//   check-axioms S T U | check-axioms random <count>
//   show N
//
// Matrices are bracketed rows, columns are basis vectors. Anywhere a sequence
// or correspondence is expected, a parenthesized item list "(A # B^t)" may be
// written inline. A Lagrangian X in M used as a sequence is the
// correspondence pt -> M with the same subspace. "//" starts a comment.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "lagcorr/correspondence.hpp"
#include "lagcorr/error.hpp"
#include "lagcorr/grading.hpp"
#include "lagcorr/quilt.hpp"
#include "lagcorr/report.hpp"
#include "lagcorr/sequence.hpp"
#include "lagcorr/symplectic.hpp"

namespace lagcorr {

struct Token {
    enum class Kind { Word, Punct } kind = Kind::Word;
    std::string text;
    std::size_t column = 0;
};

struct Diagnostic {
    ErrorKind kind = ErrorKind::SyntaxError;
    std::size_t line = 0;
    std::size_t column = 0;
    std::string message;
};

struct Statement {
    std::size_t line = 0;
    std::vector<Token> tokens;
    std::vector<Statement> body;         // lines of a quilt { ... } block
    std::optional<Diagnostic> problem;   // lexical or block structure error
};

struct Script {
    std::vector<Statement> statements;
};

/// Splits text into statements. Never throws; lexical errors are attached to
/// the statement they occur in.
Script parse(std::string_view text);

struct RunOptions {
    std::uint64_t seed = 0;
    std::int64_t modulus = 2;
};

using Value = std::variant<SymplecticSpace, LagrangianSubspace, LagrangianCorrespondence, GeneralizedCorrespondence,
                           FormalGradedMorphism, QuiltedSurface>;

class Interpreter {
public:
    /// Throws Error(TypeMismatch) for an invalid modulus.
    explicit Interpreter(RunOptions options = {});

    /// Runs every statement in order. Failures become error entries and never
    /// stop later statements.
    Report run(const Script& script);

    const Value* lookup(const std::string& name) const;

private:
    struct Cursor;

    ReportEntry execute(const Statement& st);
    void declare(const std::string& name, Value value, const Token& at);

    SymplecticSpace space_arg(Cursor& c);
    LagrangianSubspace lag_arg(Cursor& c);
    LagrangianCorrespondence corr_arg(Cursor& c);
    GeneralizedCorrespondence seq_arg(Cursor& c);
    GeneralizedCorrespondence seq_items(Cursor& c, const char* terminator);
    GeneralizedCorrespondence seq_item(Cursor& c);
    FormalGradedMorphism morph_arg(Cursor& c);
    const QuiltedSurface& quilt_arg(Cursor& c);
    Degree degree_arg(Cursor& c);
    std::int64_t half_dims_arg(Cursor& c);
    const Value& value_arg(Cursor& c);

    void run_space(Cursor& c, ReportEntry& e);
    void run_lag(Cursor& c, ReportEntry& e);
    void run_corr(Cursor& c, ReportEntry& e);
    void run_seq(Cursor& c, ReportEntry& e);
    void run_morph(Cursor& c, ReportEntry& e);
    void run_quilt(const Statement& st, Cursor& c, ReportEntry& e);
    QuiltedSurface quilt_block(const Statement& st);

    void cmd_compose(Cursor& c, ReportEntry& e);
    void cmd_relcompose(Cursor& c, ReportEntry& e);
    void cmd_embedded(Cursor& c, ReportEntry& e);
    void cmd_normalize(Cursor& c, ReportEntry& e);
    void cmd_equivalent(Cursor& c, ReportEntry& e);
    void cmd_pi(Cursor& c, ReportEntry& e);
    void cmd_shift(Cursor& c, ReportEntry& e);
    void cmd_sign(Cursor& c, ReportEntry& e);
    void cmd_quilt_validate(Cursor& c, ReportEntry& e);
    void cmd_quilt_glue(Cursor& c, ReportEntry& e);
    void cmd_quilt_shrink(Cursor& c, ReportEntry& e);
    void cmd_quilt_iso(Cursor& c, ReportEntry& e);
    void cmd_check_axioms(Cursor& c, ReportEntry& e);
    void cmd_show(Cursor& c, ReportEntry& e);

    RunOptions options_;
    GradingContext grading_;
    std::map<std::string, Value> values_;
    std::map<std::string, std::size_t> failed_;  // name -> line of the failed declaration
};

/// parse + Interpreter::run.
Report run_script(std::string_view text, const RunOptions& options = {});

/// A self-contained script that declares `name` as an object structurally
/// equal to `value`, preceded by whatever it depends on.
std::string serialize(const std::string& name, const Value& value);

/// Basis vectors as "[[..],[..]]", one bracketed vector per basis element.
std::string format_basis(const Subspace& s);

}  // namespace lagcorr
