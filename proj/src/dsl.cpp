#include "lagcorr/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <utility>

#include "lagcorr/random.hpp"

namespace lagcorr {

namespace {

class ScriptError : public Error {
public:
    ScriptError(ErrorKind kind, std::size_t column, const std::string& message, std::size_t line = 0)
        : Error(kind, message), column_(column), line_(line) {}

    std::size_t column() const noexcept { return column_; }
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t column_;
    std::size_t line_;
};

bool is_word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '.' || c == '?' ||
           c == '-' || c == '+' || c == '^' || c == '/' || c == '*';
}

std::vector<Token> lex(std::string_view line, std::optional<Diagnostic>& problem, std::size_t line_no) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        const char c = line[i];
        if (c == ' ' || c == '\t' || c == '\r') {
            ++i;
            continue;
        }
        if (line.substr(i, 2) == "//") break;
        if (line.substr(i, 2) == "->") {
            out.push_back({Token::Kind::Punct, "->", i + 1});
            i += 2;
            continue;
        }
        if (std::string_view("[](),{}#:=").find(c) != std::string_view::npos) {
            out.push_back({Token::Kind::Punct, std::string(1, c), i + 1});
            ++i;
            continue;
        }
        if (is_word_char(c)) {
            const std::size_t start = i;
            while (i < line.size() && is_word_char(line[i]) && line.substr(i, 2) != "->") ++i;
            out.push_back({Token::Kind::Word, std::string(line.substr(start, i - start)), start + 1});
            continue;
        }
        if (!problem) {
            problem = Diagnostic{ErrorKind::SyntaxError, line_no, i + 1,
                                 "unexpected character '" + std::string(1, c) + "'"};
        }
        ++i;
    }
    return out;
}

std::optional<std::int64_t> integer_literal(const std::string& text) {
    std::int64_t v = 0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || first == last) return std::nullopt;
    return v;
}

SymplecticSpace point_space() { return standard_space(0, "pt"); }

std::string kind_name(const Value& v) {
    switch (v.index()) {
        case 0: return "a space";
        case 1: return "a Lagrangian";
        case 2: return "a correspondence";
        case 3: return "a sequence";
        case 4: return "a morphism";
        default: return "a quilt";
    }
}

bool is_declaration(const std::string& cmd) {
    return cmd == "space" || cmd == "lag" || cmd == "corr" || cmd == "seq" || cmd == "morph" || cmd == "quilt" ||
           cmd == "quilt-glue" || cmd == "quilt-shrink";
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

LagrangianCorrespondence corr_from_lag(const LagrangianSubspace& l, const std::string& name) {
    return LagrangianCorrespondence(point_space(), l.space(), l.subspace(), name);
}

std::string step_names(const GeneralizedCorrespondence& g) {
    if (g.empty()) return "id(" + g.source().name() + ")";
    std::string out;
    for (const auto& s : g.steps()) {
        if (!out.empty()) out += ",";
        out += s.name().empty() ? "?" : s.name();
    }
    return out;
}

std::string step_bases(const GeneralizedCorrespondence& g) {
    std::string out;
    for (const auto& s : g.steps()) {
        if (!out.empty()) out += ";";
        out += format_basis(s.subspace());
    }
    return out;
}

}  // namespace

std::string format_basis(const Subspace& s) {
    std::string out = "[";
    for (std::size_t i = 0; i < s.basis_vectors().size(); ++i) {
        if (i) out += ",";
        out += format_vector(s.basis_vectors()[i]);
    }
    return out + "]";
}

// ---------------------------------------------------------------------------
// parse

Script parse(std::string_view text) {
    std::vector<std::pair<std::size_t, std::string_view>> lines;
    std::size_t line_no = 1;
    while (true) {
        const auto nl = text.find('\n');
        lines.emplace_back(line_no++, text.substr(0, nl));
        if (nl == std::string_view::npos) break;
        text.remove_prefix(nl + 1);
    }

    Script script;
    for (std::size_t k = 0; k < lines.size(); ++k) {
        Statement st;
        st.line = lines[k].first;
        st.tokens = lex(lines[k].second, st.problem, st.line);
        if (st.tokens.empty() && !st.problem) continue;

        const bool opens_block = st.tokens.size() >= 3 && st.tokens[0].text == "quilt" &&
                                 st.tokens.back().kind == Token::Kind::Punct && st.tokens.back().text == "{";
        if (opens_block) {
            bool closed = false;
            while (++k < lines.size()) {
                Statement inner;
                inner.line = lines[k].first;
                inner.tokens = lex(lines[k].second, inner.problem, inner.line);
                if (inner.tokens.empty() && !inner.problem) continue;
                if (inner.tokens.size() == 1 && inner.tokens[0].text == "}") {
                    closed = true;
                    break;
                }
                st.body.push_back(std::move(inner));
            }
            if (!closed && !st.problem) {
                st.problem = Diagnostic{ErrorKind::SyntaxError, st.line, st.tokens.back().column,
                                        "quilt block is never closed"};
            }
        }
        script.statements.push_back(std::move(st));
    }
    return script;
}

// ---------------------------------------------------------------------------
// cursor

struct Interpreter::Cursor {
    const std::vector<Token>& tokens;
    std::size_t pos = 0;
    std::size_t end_column = 1;

    bool done() const { return pos >= tokens.size(); }

    std::size_t column() const { return done() ? end_column : tokens[pos].column; }

    [[noreturn]] void fail(ErrorKind kind, const std::string& message) const {
        throw ScriptError(kind, column(), message);
    }

    const Token& peek() const {
        if (done()) fail(ErrorKind::SyntaxError, "unexpected end of line");
        return tokens[pos];
    }

    bool peek_is(std::string_view text) const { return !done() && tokens[pos].text == text; }

    const Token& next() {
        const Token& t = peek();
        ++pos;
        return t;
    }

    std::string word(const char* what) {
        const Token& t = peek();
        if (t.kind != Token::Kind::Word) fail(ErrorKind::SyntaxError, std::string("expected ") + what + ", got '" + t.text + "'");
        ++pos;
        return t.text;
    }

    void expect(std::string_view text) {
        const Token& t = peek();
        if (t.text != text) fail(ErrorKind::SyntaxError, "expected '" + std::string(text) + "', got '" + t.text + "'");
        ++pos;
    }

    bool accept(std::string_view text) {
        if (peek_is(text)) {
            ++pos;
            return true;
        }
        return false;
    }

    std::int64_t integer(const char* what) {
        const std::size_t col = column();
        const std::string w = word(what);
        auto v = integer_literal(w);
        if (!v) throw ScriptError(ErrorKind::SyntaxError, col, std::string("expected ") + what + ", got '" + w + "'");
        return *v;
    }

    Matrix matrix() {
        expect("[");
        std::vector<Vector> rows;
        if (!accept("]")) {
            while (true) {
                expect("[");
                Vector row;
                if (!accept("]")) {
                    while (true) {
                        const std::size_t col = column();
                        const std::string w = word("a number");
                        try {
                            row.push_back(parse_scalar(w));
                        } catch (const Error& e) {
                            throw ScriptError(ErrorKind::SyntaxError, col, e.what());
                        }
                        if (accept("]")) break;
                        expect(",");
                    }
                }
                if (!rows.empty() && row.size() != rows.front().size()) {
                    fail(ErrorKind::SyntaxError, "matrix rows have different lengths");
                }
                rows.push_back(std::move(row));
                if (accept("]")) break;
                expect(",");
            }
        }
        const std::size_t cols = rows.empty() ? 0 : rows.front().size();
        return Matrix::from_rows(rows, cols);
    }

    ArcRef arc_ref() {
        const std::size_t col = column();
        const std::string w = word("an arc P.a");
        const auto dot = w.find('.');
        if (dot == std::string::npos || dot == 0 || dot + 1 == w.size()) {
            throw ScriptError(ErrorKind::SyntaxError, col, "expected an arc P.a, got '" + w + "'");
        }
        return ArcRef{w.substr(0, dot), w.substr(dot + 1)};
    }

    void finish() {
        if (!done()) fail(ErrorKind::SyntaxError, "unexpected '" + tokens[pos].text + "'");
    }
};

// ---------------------------------------------------------------------------
// interpreter

Interpreter::Interpreter(RunOptions options) : options_(options), grading_(options.modulus) {}

const Value* Interpreter::lookup(const std::string& name) const {
    auto it = values_.find(name);
    return it == values_.end() ? nullptr : &it->second;
}

void Interpreter::declare(const std::string& name, Value value, const Token& at) {
    if (values_.count(name)) {
        throw ScriptError(ErrorKind::SyntaxError, at.column, "'" + name + "' is already declared");
    }
    failed_.erase(name);
    values_.emplace(name, std::move(value));
}

Report Interpreter::run(const Script& script) {
    Report report;
    for (const auto& st : script.statements) {
        ReportEntry e = execute(st);
        if (e.error || !e.command.empty()) report.entries.push_back(std::move(e));
    }
    return report;
}

ReportEntry Interpreter::execute(const Statement& st) {
    ReportEntry e;
    e.line = st.line;
    e.column = st.tokens.empty() ? 1 : st.tokens.front().column;
    e.command = st.tokens.empty() ? "?" : st.tokens.front().text;
    if (st.problem) {
        e.line = st.problem->line;
        e.column = st.problem->column;
        e.error = st.problem->kind;
        e.message = st.problem->message;
        if (is_declaration(e.command) && st.tokens.size() > 1 && !values_.count(st.tokens[1].text)) {
            failed_[st.tokens[1].text] = st.line;
        }
        return e;
    }

    Cursor c{st.tokens, 1, st.tokens.back().column + st.tokens.back().text.size()};
    const std::string& cmd = e.command;
    bool silent = false;
    try {
        if (cmd == "space") {
            run_space(c, e);
            silent = true;
        } else if (cmd == "lag") {
            run_lag(c, e);
            silent = true;
        } else if (cmd == "corr") {
            run_corr(c, e);
            silent = true;
        } else if (cmd == "seq") {
            run_seq(c, e);
            silent = true;
        } else if (cmd == "morph") {
            run_morph(c, e);
            silent = true;
        } else if (cmd == "quilt") {
            run_quilt(st, c, e);
            silent = true;
        } else if (cmd == "compose") {
            cmd_compose(c, e);
        } else if (cmd == "relcompose") {
            cmd_relcompose(c, e);
        } else if (cmd == "embedded?") {
            cmd_embedded(c, e);
        } else if (cmd == "normalize") {
            cmd_normalize(c, e);
        } else if (cmd == "equivalent?") {
            cmd_equivalent(c, e);
        } else if (cmd == "pi") {
            cmd_pi(c, e);
        } else if (cmd == "shift") {
            cmd_shift(c, e);
        } else if (cmd == "sign") {
            cmd_sign(c, e);
        } else if (cmd == "quilt-validate") {
            cmd_quilt_validate(c, e);
        } else if (cmd == "quilt-glue") {
            cmd_quilt_glue(c, e);
        } else if (cmd == "quilt-shrink") {
            cmd_quilt_shrink(c, e);
        } else if (cmd == "quilt-iso?") {
            cmd_quilt_iso(c, e);
        } else if (cmd == "check-axioms") {
            cmd_check_axioms(c, e);
        } else if (cmd == "show") {
            cmd_show(c, e);
        } else {
            throw ScriptError(ErrorKind::SyntaxError, e.column, "unknown command '" + cmd + "'");
        }
    } catch (const ScriptError& err) {
        e.error = err.kind();
        e.message = err.what();
        e.column = err.column();
        if (err.line()) e.line = err.line();
    } catch (const NotEmbeddedError& err) {
        e.error = err.kind();
        e.message = err.what();
        e.fields = {{"transverse", bool_text(err.report().transverse)},
                    {"kernel_dim", std::to_string(err.report().projection_kernel_dim)}};
    } catch (const Error& err) {
        e.error = err.kind();
        e.message = err.what();
    }

    if (e.error) {
        if (is_declaration(cmd) && st.tokens.size() > 1 && !values_.count(st.tokens[1].text)) {
            failed_[st.tokens[1].text] = st.line;
        }
        return e;
    }
    if (silent) e.command.clear();
    return e;
}

// --- argument resolution ---------------------------------------------------

const Value& Interpreter::value_arg(Cursor& c) {
    const std::size_t col = c.column();
    const std::string name = c.word("a name");
    auto it = values_.find(name);
    if (it != values_.end()) return it->second;
    auto failed = failed_.find(name);
    if (failed != failed_.end()) {
        throw ScriptError(ErrorKind::TypeMismatch, col,
                          "'" + name + "' has no value; its declaration on line " + std::to_string(failed->second) +
                              " failed");
    }
    throw ScriptError(ErrorKind::UnknownName, col, "unknown name '" + name + "'");
}

SymplecticSpace Interpreter::space_arg(Cursor& c) {
    const std::size_t col = c.column();
    const Value& v = value_arg(c);
    if (auto* s = std::get_if<SymplecticSpace>(&v)) return *s;
    throw ScriptError(ErrorKind::TypeMismatch, col, "'" + c.tokens[c.pos - 1].text + "' is " + kind_name(v) +
                                                       ", expected a space");
}

LagrangianSubspace Interpreter::lag_arg(Cursor& c) {
    const std::size_t col = c.column();
    const Value& v = value_arg(c);
    if (auto* s = std::get_if<LagrangianSubspace>(&v)) return *s;
    throw ScriptError(ErrorKind::TypeMismatch, col, "'" + c.tokens[c.pos - 1].text + "' is " + kind_name(v) +
                                                       ", expected a Lagrangian");
}

FormalGradedMorphism Interpreter::morph_arg(Cursor& c) {
    const std::size_t col = c.column();
    const Value& v = value_arg(c);
    if (auto* m = std::get_if<FormalGradedMorphism>(&v)) return *m;
    throw ScriptError(ErrorKind::TypeMismatch, col, "'" + c.tokens[c.pos - 1].text + "' is " + kind_name(v) +
                                                       ", expected a morphism");
}

const QuiltedSurface& Interpreter::quilt_arg(Cursor& c) {
    const std::size_t col = c.column();
    const Value& v = value_arg(c);
    if (auto* q = std::get_if<QuiltedSurface>(&v)) return *q;
    throw ScriptError(ErrorKind::TypeMismatch, col, "'" + c.tokens[c.pos - 1].text + "' is " + kind_name(v) +
                                                       ", expected a quilt");
}

GeneralizedCorrespondence Interpreter::seq_item(Cursor& c) {
    if (c.accept("(")) return seq_items(c, ")");
    if (c.accept("id")) return GeneralizedCorrespondence::identity(space_arg(c));
    if (c.accept("diag")) return GeneralizedCorrespondence(diagonal(space_arg(c)));

    const std::size_t col = c.column();
    std::string name = c.word("a sequence");
    const bool transposed = name.size() > 2 && name.ends_with("^t");
    if (transposed) name.resize(name.size() - 2);

    auto it = values_.find(name);
    if (it == values_.end()) {
        auto failed = failed_.find(name);
        if (failed != failed_.end()) {
            throw ScriptError(ErrorKind::TypeMismatch, col,
                              "'" + name + "' has no value; its declaration on line " +
                                  std::to_string(failed->second) + " failed");
        }
        throw ScriptError(ErrorKind::UnknownName, col, "unknown name '" + name + "'");
    }
    std::optional<GeneralizedCorrespondence> g;
    if (auto* s = std::get_if<GeneralizedCorrespondence>(&it->second)) {
        g = *s;
    } else if (auto* l = std::get_if<LagrangianCorrespondence>(&it->second)) {
        g = GeneralizedCorrespondence(*l);
    } else if (auto* x = std::get_if<LagrangianSubspace>(&it->second)) {
        g = GeneralizedCorrespondence(corr_from_lag(*x, name));
    } else {
        throw ScriptError(ErrorKind::TypeMismatch, col, "'" + name + "' is " + kind_name(it->second) +
                                                           ", expected a sequence");
    }
    return transposed ? transpose(*g) : *g;
}

GeneralizedCorrespondence Interpreter::seq_items(Cursor& c, const char* terminator) {
    GeneralizedCorrespondence s = seq_item(c);
    while (c.accept("#")) {
        const std::size_t col = c.column();
        GeneralizedCorrespondence t = seq_item(c);
        if (!(s.target() == t.source())) {
            throw ScriptError(ErrorKind::EndpointMismatch, col,
                              "sequence ends at '" + s.target().name() + "' but the next item starts at '" +
                                  t.source().name() + "'");
        }
        s = concat(s, t);
    }
    if (terminator) c.expect(terminator);
    return s;
}

GeneralizedCorrespondence Interpreter::seq_arg(Cursor& c) { return seq_item(c); }

LagrangianCorrespondence Interpreter::corr_arg(Cursor& c) {
    const std::size_t col = c.column();
    GeneralizedCorrespondence g = seq_item(c);
    if (g.length() != 1) {
        throw ScriptError(ErrorKind::TypeMismatch, col,
                          "expected a single correspondence, got a sequence of length " + std::to_string(g.length()));
    }
    return g.steps().front();
}

Degree Interpreter::degree_arg(Cursor& c) {
    if (!c.done()) {
        if (auto v = integer_literal(c.peek().text)) {
            c.next();
            return Degree(*v, grading_);
        }
    }
    return morph_arg(c).degree;
}

std::int64_t Interpreter::half_dims_arg(Cursor& c) {
    if (!c.done()) {
        if (auto v = integer_literal(c.peek().text)) {
            c.next();
            return *v;
        }
    }
    return half_dimension_sum(seq_item(c));
}

// --- declarations ----------------------------------------------------------

void Interpreter::run_space(Cursor& c, ReportEntry&) {
    const Token& at = c.peek();
    const std::string name = c.word("a name");
    const std::size_t col = c.column();
    const std::string how = c.word("std, dual, prod or form");
    std::optional<SymplecticSpace> s;
    if (how == "std") {
        const std::int64_t n = c.integer("a half-dimension");
        if (n < 0) throw ScriptError(ErrorKind::TypeMismatch, col, "negative half-dimension");
        s = n == 0 ? point_space() : standard_space(static_cast<std::size_t>(n), name);
    } else if (how == "dual" || how == "prod") {
        // the declared name becomes the space's name, so scripts round-trip
        SymplecticSpace a = space_arg(c);
        const SymplecticSpace made = how == "dual" ? dual(a) : product(a, space_arg(c));
        s = made.is_point() ? point_space() : SymplecticSpace(name, made.form());
    } else if (how == "form") {
        Matrix m = c.matrix();
        s = m.rows() == 0 && m.cols() == 0 ? point_space() : SymplecticSpace(name, std::move(m));
    } else {
        throw ScriptError(ErrorKind::SyntaxError, col, "expected std, dual, prod or form, got '" + how + "'");
    }
    c.finish();
    declare(name, *s, at);
}

void Interpreter::run_lag(Cursor& c, ReportEntry&) {
    const Token& at = c.peek();
    const std::string name = c.word("a name");
    c.expect("in");
    const SymplecticSpace v = space_arg(c);
    c.expect("basis");
    const std::size_t col = c.column();
    Matrix m = c.matrix();
    c.finish();
    if (m.rows() != v.dim() && !(m.rows() == 0 && v.is_point())) {
        throw ScriptError(ErrorKind::TypeMismatch, col,
                          "basis vectors have length " + std::to_string(m.rows()) + " but '" + v.name() +
                              "' has dimension " + std::to_string(v.dim()));
    }
    const Subspace s = m.rows() == 0 ? Subspace::zero(v.dim()) : Subspace::span(m);
    if (s.dim() != v.half_dim()) {
        throw ScriptError(ErrorKind::TypeMismatch, col,
                          "span has dimension " + std::to_string(s.dim()) + ", a Lagrangian in '" + v.name() +
                              "' needs " + std::to_string(v.half_dim()));
    }
    if (!is_isotropic(v, s)) throw ScriptError(ErrorKind::TypeMismatch, col, "span is not isotropic");
    declare(name, LagrangianSubspace(v, s), at);
}

void Interpreter::run_corr(Cursor& c, ReportEntry&) {
    const Token& at = c.peek();
    const std::string name = c.word("a name");
    std::optional<LagrangianCorrespondence> l;
    if (c.accept(":")) {
        const SymplecticSpace a = space_arg(c);
        c.expect("->");
        const SymplecticSpace b = space_arg(c);
        c.expect("basis");
        const std::size_t col = c.column();
        Matrix m = c.matrix();
        c.finish();
        const std::size_t n = a.dim() + b.dim();
        if (m.rows() != n && !(m.rows() == 0 && n == 0)) {
            throw ScriptError(ErrorKind::TypeMismatch, col,
                              "basis vectors have length " + std::to_string(m.rows()) + ", expected " +
                                  std::to_string(n));
        }
        const Subspace s = m.rows() == 0 ? Subspace::zero(n) : Subspace::span(m);
        try {
            l = LagrangianCorrespondence(a, b, s, name);
        } catch (const Error& e) {
            throw ScriptError(ErrorKind::TypeMismatch, col, e.what());
        }
    } else {
        const std::size_t col = c.column();
        const std::string how = c.word("a correspondence form");
        if (how == "graph") {
            const SymplecticSpace a = space_arg(c);
            const SymplecticSpace b = space_arg(c);
            Matrix psi = c.matrix();
            c.finish();
            l = graph(a, b, psi, name);
        } else if (how == "diag") {
            const SymplecticSpace a = space_arg(c);
            c.finish();
            l = diagonal(a).renamed(name);
        } else if (how == "split") {
            const LagrangianSubspace x = lag_arg(c);
            const LagrangianSubspace y = lag_arg(c);
            c.finish();
            l = product_of_lagrangians(LagrangianSubspace(dual(x.space()), x.subspace()), y, name);
        } else if (how == "transpose") {
            const LagrangianCorrespondence d = corr_arg(c);
            c.finish();
            l = transpose(d).renamed(name);
        } else if (how == "compose") {
            const LagrangianCorrespondence d = corr_arg(c);
            const LagrangianCorrespondence f = corr_arg(c);
            c.finish();
            l = compose_embedded(d, f).renamed(name);
        } else {
            throw ScriptError(ErrorKind::SyntaxError, col, "unknown correspondence form '" + how + "'");
        }
    }
    declare(name, *l, at);
}

void Interpreter::run_seq(Cursor& c, ReportEntry&) {
    const Token& at = c.peek();
    const std::string name = c.word("a name");
    c.expect("=");
    GeneralizedCorrespondence s = seq_items(c, nullptr);
    c.finish();
    declare(name, std::move(s), at);
}

void Interpreter::run_morph(Cursor& c, ReportEntry&) {
    const Token& at = c.peek();
    const std::string name = c.word("a name");
    c.expect(":");
    const std::size_t scol = c.column();
    const std::string source = c.word("a source name");
    c.expect("->");
    const std::size_t tcol = c.column();
    const std::string target = c.word("a target name");
    c.expect("deg");
    const std::int64_t k = c.integer("a degree");
    c.finish();
    for (auto [n, col] : {std::pair{source, scol}, std::pair{target, tcol}}) {
        if (!values_.count(n)) throw ScriptError(ErrorKind::UnknownName, col, "unknown name '" + n + "'");
    }
    declare(name, FormalGradedMorphism{name, Degree(k, grading_), source, target}, at);
}

void Interpreter::run_quilt(const Statement& st, Cursor& c, ReportEntry&) {
    const Token& at = c.peek();
    const std::string name = c.word("a name");
    if (values_.count(name)) throw ScriptError(ErrorKind::SyntaxError, at.column, "'" + name + "' is already declared");
    if (c.accept("{")) {
        c.finish();
        declare(name, quilt_block(st), at);
        return;
    }
    const std::size_t col = c.column();
    const std::string how = c.word("a quilt shape");
    std::optional<QuiltedSurface> q;
    if (how == "pants") {
        auto l = seq_arg(c);
        auto l1 = seq_arg(c);
        auto l2 = seq_arg(c);
        q = pair_of_pants(l, l1, l2);
    } else if (how == "cap") {
        q = quilted_cap(seq_arg(c));
    } else if (how == "strip") {
        auto b = seq_arg(c);
        auto m = seq_arg(c);
        auto t = seq_arg(c);
        q = quilted_strip(b, m, t);
    } else if (how == "functor") {
        auto l01 = seq_arg(c);
        auto l = seq_arg(c);
        auto l1 = seq_arg(c);
        q = functor_quilt(l01, l, l1);
    } else if (how == "cylinder") {
        auto a = seq_arg(c);
        auto b = seq_arg(c);
        q = quilted_cylinder(a, b);
    } else {
        throw ScriptError(ErrorKind::SyntaxError, col, "unknown quilt shape '" + how + "'");
    }
    c.finish();
    declare(name, std::move(*q), at);
}

QuiltedSurface Interpreter::quilt_block(const Statement& st) {
    QuiltedSurface q;
    std::vector<std::size_t> derive;  // ends whose signature is read off the quilt
    for (const auto& b : st.body) {
        if (b.problem) throw ScriptError(b.problem->kind, b.problem->column, b.problem->message, b.problem->line);
        Cursor c{b.tokens, 0, b.tokens.back().column + b.tokens.back().text.size()};
        try {
            const std::string kw = c.word("patch, seam, boundary or end");
            if (kw == "patch") {
                const std::string id = c.word("a patch id");
                SymplecticSpace space = space_arg(c);
                c.expect("arcs");
                std::vector<std::string> arcs;
                while (!c.done() && !c.peek_is("order")) arcs.push_back(c.word("an arc id"));
                int order = 0;
                if (c.accept("order")) order = static_cast<int>(c.integer("an order"));
                c.finish();
                q.patches.push_back(Patch{id, std::move(space), std::move(arcs), order});
            } else if (kw == "seam") {
                const std::string id = c.word("a seam id");
                c.expect("(");
                ArcRef first = c.arc_ref();
                c.expect(",");
                ArcRef second = c.arc_ref();
                c.expect(")");
                c.expect("label");
                LagrangianCorrespondence label = corr_arg(c);
                c.finish();
                q.seams.push_back(Seam{id, std::move(first), std::move(second), std::move(label)});
            } else if (kw == "boundary") {
                ArcRef arc = c.arc_ref();
                c.expect("label");
                GeneralizedCorrespondence label = seq_items(c, nullptr);
                c.finish();
                q.boundaries.push_back(BoundaryLabel{std::move(arc), std::move(label)});
            } else if (kw == "end") {
                const std::string id = c.word("an end id");
                const std::size_t dcol = c.column();
                const std::string dir = c.word("in or out");
                if (dir != "in" && dir != "out") {
                    throw ScriptError(ErrorKind::SyntaxError, dcol, "expected in or out, got '" + dir + "'");
                }
                c.expect("at");
                std::vector<ArcRef> segments;
                while (!c.done() && !c.peek_is("signature")) segments.push_back(c.arc_ref());
                std::optional<GeneralizedCorrespondence> sig;
                if (c.accept("signature")) sig = seq_items(c, nullptr);
                c.finish();
                if (!sig) derive.push_back(q.ends.size());
                q.ends.push_back(End{id, dir == "in" ? Direction::Incoming : Direction::Outgoing, std::move(segments),
                                     sig ? *sig : GeneralizedCorrespondence::identity(point_space())});
            } else {
                throw ScriptError(ErrorKind::SyntaxError, b.tokens.front().column,
                                  "expected patch, seam, boundary or end, got '" + kw + "'");
            }
        } catch (const ScriptError& e) {
            throw ScriptError(e.kind(), e.column(), e.what(), e.line() ? e.line() : b.line);
        } catch (const Error& e) {
            throw ScriptError(e.kind(), b.tokens.front().column, e.what(), b.line);
        }
    }
    for (std::size_t i : derive) {
        if (auto sig = derive_signature(q, q.ends[i])) q.ends[i].signature = std::move(*sig);
    }
    return q;
}

// --- commands --------------------------------------------------------------

void Interpreter::cmd_compose(Cursor& c, ReportEntry& e) {
    const auto a = corr_arg(c);
    const auto b = corr_arg(c);
    c.finish();
    const CompositionReport r = geometric_compose(a, b);
    e.fields = {{"transverse", bool_text(r.transverse)},
                {"middle_rank", std::to_string(r.middle_rank)},
                {"fiber_dim", std::to_string(r.fiber.dim())},
                {"kernel_dim", std::to_string(r.projection_kernel_dim)},
                {"injective", bool_text(r.injective)},
                {"embedded", bool_text(r.embedded())},
                {"composed_dim", std::to_string(r.composed.dim())},
                {"lagrangian", bool_text(r.composed_is_lagrangian)},
                {"composed", format_basis(r.composed)}};
    e.text = {"embedded: " + bool_text(r.embedded()) + "; composed dim " + std::to_string(r.composed.dim()),
              "transverse: " + bool_text(r.transverse) + " (middle rank " + std::to_string(r.middle_rank) +
                  "); fiber dim " + std::to_string(r.fiber.dim()) + "; kernel dim " +
                  std::to_string(r.projection_kernel_dim),
              "composed: " + format_basis(r.composed)};
}

void Interpreter::cmd_embedded(Cursor& c, ReportEntry& e) {
    const auto a = corr_arg(c);
    const auto b = corr_arg(c);
    c.finish();
    const CompositionReport r = geometric_compose(a, b);
    e.fields = {{"embedded", bool_text(r.embedded())},
                {"transverse", bool_text(r.transverse)},
                {"injective", bool_text(r.injective)},
                {"composed_dim", std::to_string(r.composed.dim())}};
    e.text = {"embedded: " + bool_text(r.embedded()) + "; composed dim " + std::to_string(r.composed.dim())};
}

void Interpreter::cmd_relcompose(Cursor& c, ReportEntry& e) {
    const auto a = corr_arg(c);
    const auto b = corr_arg(c);
    c.finish();
    const Subspace s = relation_compose(a, b);
    const SymplecticSpace ambient = product(dual(a.source()), b.target());
    const bool iso = is_isotropic(ambient, s);
    const bool lag = is_lagrangian(ambient, s);
    e.fields = {{"dim", std::to_string(s.dim())},
                {"isotropic", bool_text(iso)},
                {"lagrangian", bool_text(lag)},
                {"basis", format_basis(s)}};
    e.text = {"dim " + std::to_string(s.dim()) + "; isotropic: " + bool_text(iso) + "; lagrangian: " + bool_text(lag),
              "basis: " + format_basis(s)};
}

void Interpreter::cmd_normalize(Cursor& c, ReportEntry& e) {
    const auto s = seq_arg(c);
    c.finish();
    const NormalForm nf = normalize(s);
    std::string trace;
    for (const auto& step : nf.trace) {
        if (!trace.empty()) trace += ",";
        trace += std::to_string(step.index);
    }
    e.fields = {{"length", std::to_string(s.length())},
                {"reduced_length", std::to_string(nf.reduced.length())},
                {"reductions", std::to_string(nf.trace.size())},
                {"trace", trace},
                {"reduced", step_names(nf.reduced)},
                {"bases", step_bases(nf.reduced)}};
    e.text = {"reduced length " + std::to_string(nf.reduced.length()) + " (from " + std::to_string(s.length()) + ")"};
    for (const auto& step : nf.trace) {
        e.text.push_back("at " + std::to_string(step.index) + ": " + step.left.name() + " ; " + step.right.name() +
                         " -> " + step.result.name());
    }
    e.text.push_back("result: " + step_names(nf.reduced));
}

void Interpreter::cmd_equivalent(Cursor& c, ReportEntry& e) {
    const auto s = seq_arg(c);
    const auto t = seq_arg(c);
    c.finish();
    const EquivalenceVerdict v = equivalent(s, t);
    e.fields = {{"verdict", to_string(v.verdict)},
                {"left_reduced", std::to_string(v.left.reduced.length())},
                {"right_reduced", std::to_string(v.right.reduced.length())},
                {"left_pi", format_basis(v.left_pi)},
                {"right_pi", format_basis(v.right_pi)}};
    e.text = {"verdict: " + to_string(v.verdict), "left pi: " + format_basis(v.left_pi),
              "right pi: " + format_basis(v.right_pi)};
}

void Interpreter::cmd_pi(Cursor& c, ReportEntry& e) {
    const auto s = seq_arg(c);
    c.finish();
    const Subspace p = pi_invariant(s);
    e.fields = {{"dim", std::to_string(p.dim())}, {"basis", format_basis(p)}};
    e.text = {"dim " + std::to_string(p.dim()), "basis: " + format_basis(p)};
}

void Interpreter::cmd_shift(Cursor& c, ReportEntry& e) {
    std::int64_t d = 0;
    if (c.accept("strip")) {
        const std::int64_t n = c.integer("a half-dimension");
        const std::size_t col = c.column();
        const std::string how = c.word("two-out, in-out or two-in");
        EndConfiguration config;
        if (how == "two-out") {
            config = EndConfiguration::TwoOut;
        } else if (how == "in-out") {
            config = EndConfiguration::InOut;
        } else if (how == "two-in") {
            config = EndConfiguration::TwoIn;
        } else {
            throw ScriptError(ErrorKind::SyntaxError, col, "expected two-out, in-out or two-in, got '" + how + "'");
        }
        c.finish();
        d = strip_shrink_shift(n, config);
        e.fields.push_back({"config", to_string(config)});
    } else {
        const auto s = seq_arg(c);
        const auto t = seq_arg(c);
        c.finish();
        d = degree_shift(s, t);
    }
    const Degree reduced(d, grading_);
    e.fields.insert(e.fields.begin(), {"d", std::to_string(d)});
    e.fields.push_back({"mod", std::to_string(reduced.value())});
    e.text = {"d = " + std::to_string(d)};
}

void Interpreter::cmd_sign(Cursor& c, ReportEntry& e) {
    const std::size_t col = c.column();
    const std::string rule = c.word("a sign rule");
    int sign = 1;
    if (rule == "koszul") {
        const Degree a = degree_arg(c);
        const Degree b = degree_arg(c);
        sign = koszul_sign(a, b);
    } else if (rule == "glue-second") {
        const Degree x = degree_arg(c);
        sign = gluing_sign_second(x, half_dims_arg(c));
    } else if (rule == "reorder") {
        const std::int64_t h1 = half_dims_arg(c);
        sign = reorder_sign(h1, half_dims_arg(c));
    } else if (rule == "cap-first" || rule == "cap-second") {
        const Degree x = degree_arg(c);
        sign = cap_gluing_sign(rule == "cap-first" ? CapArgument::First : CapArgument::Second, x, half_dims_arg(c));
    } else if (rule == "compose") {
        const auto f = morph_arg(c);
        const auto g = morph_arg(c);
        const auto f2 = morph_arg(c);
        const auto g2 = morph_arg(c);
        c.finish();
        const SignedPair p = product_compose(SignedPair{1, f, g}, SignedPair{1, f2, g2});
        e.fields = {{"rule", rule},
                    {"sign", std::to_string(p.sign)},
                    {"first", p.first.symbol},
                    {"first_deg", std::to_string(p.first.degree.value())},
                    {"second", p.second.symbol},
                    {"second_deg", std::to_string(p.second.degree.value())}};
        e.text = {"sign = " + std::to_string(p.sign) + "; (" + p.first.symbol + ", " + p.second.symbol + ")"};
        return;
    } else {
        throw ScriptError(ErrorKind::SyntaxError, col, "unknown sign rule '" + rule + "'");
    }
    c.finish();
    e.fields = {{"rule", rule}, {"sign", std::to_string(sign)}};
    e.text = {"sign = " + std::to_string(sign)};
}

namespace {

std::vector<Field> quilt_counts(const QuiltedSurface& q) {
    return {{"patches", std::to_string(q.patches.size())},
            {"seams", std::to_string(q.seams.size())},
            {"boundaries", std::to_string(q.boundaries.size())},
            {"ends", std::to_string(q.ends.size())}};
}

std::string count_text(const QuiltedSurface& q) {
    return std::to_string(q.patches.size()) + " patches, " + std::to_string(q.seams.size()) + " seams, " +
           std::to_string(q.ends.size()) + " ends";
}

}  // namespace

void Interpreter::cmd_quilt_validate(Cursor& c, ReportEntry& e) {
    const QuiltedSurface& q = quilt_arg(c);
    c.finish();
    const auto violations = validate(q);
    std::string joined;
    for (const auto& v : violations) joined += (joined.empty() ? "" : " | ") + v;
    e.fields = {{"valid", bool_text(violations.empty())}, {"violations", std::to_string(violations.size())}};
    if (!violations.empty()) e.fields.push_back({"problems", joined});
    e.text = {violations.empty() ? "valid" : std::to_string(violations.size()) + " violations"};
    e.text.insert(e.text.end(), violations.begin(), violations.end());
}

void Interpreter::cmd_quilt_glue(Cursor& c, ReportEntry& e) {
    const Token& at = c.peek();
    const std::string name = c.word("a name");
    if (values_.count(name)) throw ScriptError(ErrorKind::SyntaxError, at.column, "'" + name + "' is already declared");
    const QuiltedSurface q1 = quilt_arg(c);
    const std::string e1 = c.word("an end id");
    const QuiltedSurface q2 = quilt_arg(c);
    const std::string e2 = c.word("an end id");
    c.finish();
    QuiltedSurface r = glue(q1, e1, q2, e2);
    e.fields = quilt_counts(r);
    e.fields.push_back({"valid", bool_text(validate(r).empty())});
    e.text = {"glued: " + count_text(r)};
    declare(name, std::move(r), at);
}

void Interpreter::cmd_quilt_shrink(Cursor& c, ReportEntry& e) {
    const Token& at = c.peek();
    const std::string name = c.word("a name");
    if (values_.count(name)) throw ScriptError(ErrorKind::SyntaxError, at.column, "'" + name + "' is already declared");
    const QuiltedSurface q = quilt_arg(c);
    const std::string patch = c.word("a patch id");
    c.finish();
    ShrinkResult r = shrink_strip(q, patch);
    const Seam& seam = *r.quilt.find_seam(r.new_seam);
    e.fields = {{"shift", std::to_string(r.shift)},
                {"config", to_string(r.configuration)},
                {"seam", r.new_seam},
                {"label", format_basis(seam.label.subspace())}};
    for (auto& f : quilt_counts(r.quilt)) e.fields.push_back(std::move(f));
    e.fields.push_back({"valid", bool_text(validate(r.quilt).empty())});
    e.text = {"shift " + std::to_string(r.shift) + " (" + to_string(r.configuration) + "); new seam " + r.new_seam,
              "label: " + format_basis(seam.label.subspace()), "result: " + count_text(r.quilt)};
    declare(name, std::move(r.quilt), at);
}

void Interpreter::cmd_quilt_iso(Cursor& c, ReportEntry& e) {
    const QuiltedSurface& a = quilt_arg(c);
    const QuiltedSurface& b = quilt_arg(c);
    c.finish();
    const bool iso = isomorphic(a, b);
    e.fields = {{"isomorphic", bool_text(iso)}};
    e.text = {"isomorphic: " + bool_text(iso)};
}

void Interpreter::cmd_check_axioms(Cursor& c, ReportEntry& e) {
    std::vector<ComposableTriple> samples;
    if (c.accept("random")) {
        const std::size_t col = c.column();
        const std::int64_t count = c.integer("a sample count");
        c.finish();
        if (count < 0) throw ScriptError(ErrorKind::TypeMismatch, col, "negative sample count");
        RandomSource rng(options_.seed);
        for (std::int64_t i = 0; i < count; ++i) samples.push_back(random_triple(rng));
        e.fields.push_back({"seed", std::to_string(options_.seed)});
    } else {
        auto f = seq_arg(c);
        auto g = seq_arg(c);
        auto h = seq_arg(c);
        c.finish();
        if (!(f.target() == g.source()) || !(g.target() == h.source())) {
            throw Error(ErrorKind::EndpointMismatch, "the three sequences do not chain");
        }
        samples.push_back(ComposableTriple{std::move(f), std::move(g), std::move(h)});
    }
    const AxiomReport r = check_axioms(samples);
    e.fields.insert(e.fields.begin(), {{"ok", bool_text(r.ok())},
                                       {"samples", std::to_string(r.samples)},
                                       {"checks", std::to_string(r.checks)},
                                       {"failures", std::to_string(r.failures.size())}});
    e.text = {(r.ok() ? "all axioms hold; " : std::to_string(r.failures.size()) + " failures; ") +
              std::to_string(r.checks) + " checks over " + std::to_string(r.samples) + " samples"};
    for (const auto& f : r.failures) {
        e.text.push_back(f.axiom + " at sample " + std::to_string(f.sample) + ": " + f.detail);
    }
    if (!r.ok()) {
        const auto& f = r.failures.front();
        e.fields.push_back({"first_failure", f.axiom + "@" + std::to_string(f.sample)});
    }
}

void Interpreter::cmd_show(Cursor& c, ReportEntry& e) {
    const std::string name = c.peek().text;
    const Value& v = value_arg(c);
    c.finish();
    std::visit(
        [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, SymplecticSpace>) {
                e.fields = {{"kind", "space"}, {"name", x.name()}, {"dim", std::to_string(x.dim())},
                            {"form", format_matrix(x.form())}};
                e.text = {"space " + x.name() + " of dimension " + std::to_string(x.dim())};
            } else if constexpr (std::is_same_v<T, LagrangianSubspace>) {
                e.fields = {{"kind", "lagrangian"}, {"space", x.space().name()}, {"basis", format_basis(x.subspace())}};
                e.text = {"Lagrangian in " + x.space().name() + ": " + format_basis(x.subspace())};
            } else if constexpr (std::is_same_v<T, LagrangianCorrespondence>) {
                e.fields = {{"kind", "correspondence"}, {"source", x.source().name()},
                            {"target", x.target().name()}, {"basis", format_basis(x.subspace())}};
                e.text = {x.source().name() + " -> " + x.target().name() + ": " + format_basis(x.subspace())};
            } else if constexpr (std::is_same_v<T, GeneralizedCorrespondence>) {
                e.fields = {{"kind", "sequence"}, {"source", x.source().name()}, {"target", x.target().name()},
                            {"length", std::to_string(x.length())}, {"steps", step_names(x)}};
                e.text = {x.source().name() + " -> " + x.target().name() + " in " + std::to_string(x.length()) +
                          " steps: " + step_names(x)};
            } else if constexpr (std::is_same_v<T, FormalGradedMorphism>) {
                e.fields = {{"kind", "morphism"}, {"symbol", x.symbol}, {"deg", std::to_string(x.degree.value())},
                            {"source", x.source}, {"target", x.target}};
                e.text = {x.symbol + " : " + x.source + " -> " + x.target + " of degree " +
                          std::to_string(x.degree.value())};
            } else {
                e.fields = {{"kind", "quilt"}};
                for (auto& f : quilt_counts(x)) e.fields.push_back(std::move(f));
                e.text = {"quilt with " + count_text(x)};
            }
        },
        v);
    e.fields.insert(e.fields.begin(), {"object", name});
}

Report run_script(std::string_view text, const RunOptions& options) {
    Interpreter interp(options);
    return interp.run(parse(text));
}

// ---------------------------------------------------------------------------
// serialize

namespace {

struct Emitter {
    std::string prefix;
    std::vector<std::string> lines;
    std::set<std::string> spaces;
    std::size_t counter = 0;

    std::string space(const SymplecticSpace& s) {
        if (spaces.insert(s.name()).second) {
            lines.push_back(s.is_point() ? "space " + s.name() + " std 0"
                                         : "space " + s.name() + " form " + format_matrix(s.form()));
        }
        return s.name();
    }

    std::string corr(const LagrangianCorrespondence& l) {
        const std::string a = space(l.source());
        const std::string b = space(l.target());
        const std::string name = prefix + "_c" + std::to_string(counter++);
        lines.push_back("corr " + name + " : " + a + " -> " + b + " basis " + format_matrix(l.subspace().basis()));
        return name;
    }

    std::string seq(const GeneralizedCorrespondence& g) {
        if (g.empty()) return "id " + space(g.source());
        std::string out;
        for (const auto& s : g.steps()) out += (out.empty() ? "" : " # ") + corr(s);
        return out;
    }
};

std::string arc_text(const ArcRef& a) { return a.patch + "." + a.arc; }

}  // namespace

std::string serialize(const std::string& name, const Value& value) {
    Emitter em;
    em.prefix = name;
    std::visit(
        [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, SymplecticSpace>) {
                em.lines.push_back(x.is_point() ? "space " + name + " std 0"
                                                : "space " + name + " form " + format_matrix(x.form()));
            } else if constexpr (std::is_same_v<T, LagrangianSubspace>) {
                const std::string s = em.space(x.space());
                em.lines.push_back("lag " + name + " in " + s + " basis " + format_matrix(x.subspace().basis()));
            } else if constexpr (std::is_same_v<T, LagrangianCorrespondence>) {
                const std::string a = em.space(x.source());
                const std::string b = em.space(x.target());
                em.lines.push_back("corr " + name + " : " + a + " -> " + b + " basis " +
                                   format_matrix(x.subspace().basis()));
            } else if constexpr (std::is_same_v<T, GeneralizedCorrespondence>) {
                const std::string body = em.seq(x);
                em.lines.push_back("seq " + name + " = " + body);
            } else if constexpr (std::is_same_v<T, FormalGradedMorphism>) {
                const std::string p = em.space(point_space());
                for (const auto& end : {x.source, x.target}) {
                    const std::string decl = "seq " + end + " = id " + p;
                    if (std::find(em.lines.begin(), em.lines.end(), decl) == em.lines.end()) em.lines.push_back(decl);
                }
                em.lines.push_back("morph " + name + " : " + x.source + " -> " + x.target + " deg " +
                                   std::to_string(x.degree.value()));
            } else {
                std::vector<std::string> block{"quilt " + name + " {"};
                for (const auto& p : x.patches) {
                    std::string line = "  patch " + p.id + " " + em.space(p.space) + " arcs";
                    for (const auto& a : p.arcs) line += " " + a;
                    if (p.order != 0) line += " order " + std::to_string(p.order);
                    block.push_back(line);
                }
                for (const auto& s : x.seams) {
                    block.push_back("  seam " + s.id + " (" + arc_text(s.first) + "," + arc_text(s.second) +
                                    ") label " + em.corr(s.label));
                }
                for (const auto& b : x.boundaries) {
                    block.push_back("  boundary " + arc_text(b.arc) + " label " + em.seq(b.label));
                }
                for (const auto& e : x.ends) {
                    std::string line = "  end " + e.id + " " + (e.direction == Direction::Incoming ? "in" : "out") +
                                       " at";
                    for (const auto& s : e.segments) line += " " + arc_text(s);
                    block.push_back(line + " signature " + em.seq(e.signature));
                }
                block.push_back("}");
                em.lines.insert(em.lines.end(), block.begin(), block.end());
            }
        },
        value);
    std::string out;
    for (const auto& l : em.lines) out += l + "\n";
    return out;
}

}  // namespace lagcorr
