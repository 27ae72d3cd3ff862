#include "nilcenter/io/input.hpp"

#include "nilcenter/errors.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace nilcenter {

namespace {

enum class Tok { Ident, Number, Op, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    int line = 1;
    int col = 1;
};

class Lexer {
public:
    explicit Lexer(std::string_view s) : s_(s) { advance(); }

    const Token& peek() const { return cur_; }
    Token take() {
        Token t = cur_;
        advance();
        return t;
    }

private:
    void advance() {
        skip_space();
        cur_ = Token{};
        cur_.line = line_;
        cur_.col = col_;
        if (pos_ >= s_.size()) return;
        char c = s_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            cur_.kind = Tok::Ident;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                cur_.text += get();
        } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            cur_.kind = Tok::Number;
            while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.'))
                cur_.text += get();
            // Exponent part of a decimal literal.
            if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
                size_t p = pos_ + 1;
                if (p < s_.size() && (s_[p] == '+' || s_[p] == '-')) ++p;
                if (p < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p]))) {
                    while (pos_ < p) cur_.text += get();
                    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) cur_.text += get();
                }
            }
        } else {
            cur_.kind = Tok::Op;
            cur_.text = std::string(1, get());
        }
    }

    char get() {
        char c = s_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    void skip_space() {
        while (pos_ < s_.size()) {
            char c = s_[pos_];
            if (c == '#') {
                while (pos_ < s_.size() && s_[pos_] != '\n') get();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                get();
            } else {
                break;
            }
        }
    }

    std::string_view s_;
    size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    Token cur_;
};

std::string describe(const Token& t) {
    if (t.kind == Tok::End) return "end of input";
    return "'" + t.text + "'";
}

[[noreturn]] void fail(const Token& t, const std::string& msg) { throw ParseError(msg, t.line, t.col); }

bool is_op(const Token& t, char c) { return t.kind == Tok::Op && t.text.size() == 1 && t.text[0] == c; }

class ExprParser {
public:
    ExprParser(Lexer& lex, AlphabetPtr alphabet, const ParseOptions& opts)
        : lex_(lex), alpha_(std::move(alphabet)), opts_(opts) {}

    PlanePoly expr() {
        PlanePoly acc = term();
        while (is_op(lex_.peek(), '+') || is_op(lex_.peek(), '-')) {
            bool minus = lex_.take().text[0] == '-';
            PlanePoly t = term();
            if (minus)
                acc -= t;
            else
                acc += t;
        }
        return acc;
    }

private:
    PlanePoly term() {
        PlanePoly acc = unary();
        while (is_op(lex_.peek(), '*') || is_op(lex_.peek(), '/')) {
            Token op = lex_.take();
            Token at = lex_.peek();
            PlanePoly f = unary();
            if (op.text[0] == '*') {
                acc = acc * f;
                continue;
            }
            std::optional<Rational> c;
            if (f.is_zero()) fail(at, "division by zero");
            if (f.terms().size() == 1 && f.terms().begin()->first == PlanePoly::Key{0, 0})
                c = f.terms().begin()->second.as_constant();
            if (!c) fail(at, "non-polynomial input: division by a non-constant expression");
            acc *= ParamPoly::constant(alpha_, Rational(1) / *c);
        }
        return acc;
    }

    PlanePoly unary() {
        if (is_op(lex_.peek(), '-')) {
            lex_.take();
            return -unary();
        }
        if (is_op(lex_.peek(), '+')) {
            lex_.take();
            return unary();
        }
        return power();
    }

    PlanePoly power() {
        PlanePoly base = primary();
        if (!is_op(lex_.peek(), '^')) return base;
        lex_.take();
        Token e = lex_.peek();
        if (e.kind != Tok::Number || e.text.find_first_not_of("0123456789") != std::string::npos)
            fail(e, "expected a nonnegative integer exponent after '^', found " + describe(e));
        lex_.take();
        if (e.text.size() > 4) fail(e, "exponent too large");
        return base.pow(static_cast<unsigned>(std::stoul(e.text)));
    }

    PlanePoly primary() {
        Token t = lex_.peek();
        if (t.kind == Tok::Number) {
            lex_.take();
            return PlanePoly::constant(ParamPoly::constant(alpha_, number(t)));
        }
        if (t.kind == Tok::Ident) {
            lex_.take();
            if (t.text == "x") return PlanePoly::monomial(1, 0, ParamPoly::constant(alpha_, Rational(1)));
            if (t.text == "y") return PlanePoly::monomial(0, 1, ParamPoly::constant(alpha_, Rational(1)));
            if (!alpha_->contains(t.text)) fail(t, "undeclared identifier '" + t.text + "'");
            return PlanePoly::constant(ParamPoly::variable(alpha_, t.text));
        }
        if (is_op(t, '(')) {
            lex_.take();
            PlanePoly p = expr();
            if (!is_op(lex_.peek(), ')')) fail(lex_.peek(), "expected ')', found " + describe(lex_.peek()));
            lex_.take();
            return p;
        }
        fail(t, "expected an operand, found " + describe(t));
    }

    Rational number(const Token& t) {
        bool decimal = t.text.find_first_of(".eE") != std::string::npos;
        try {
            if (!decimal) return parse_rational(t.text);
            if (!opts_.allow_float)
                fail(t, "decimal literal '" + t.text + "' needs --allow-float (use p/q for exact rationals)");
            return parse_decimal(t.text);
        } catch (const std::invalid_argument& e) {
            fail(t, e.what());
        }
    }

    Lexer& lex_;
    AlphabetPtr alpha_;
    ParseOptions opts_;
};

const std::set<std::string>& reserved() {
    static const std::set<std::string> r{"x", "y", "dx", "dy", "param", "params", "form", "n", "digits", "kmax", "order"};
    return r;
}

void expect_semicolon(Lexer& lex) {
    if (!is_op(lex.peek(), ';')) fail(lex.peek(), "expected ';', found " + describe(lex.peek()));
    lex.take();
}

int small_int(Lexer& lex, int lo, int hi) {
    Token t = lex.peek();
    if (t.kind != Tok::Number || t.text.find_first_not_of("0123456789") != std::string::npos || t.text.size() > 6)
        fail(t, "expected an integer, found " + describe(t));
    int v = std::stoi(t.text);
    if (v < lo || v > hi) fail(t, "value " + t.text + " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    lex.take();
    return v;
}

} // namespace

AlphabetPtr InputSpec::alphabet() const { return make_alphabet(params); }

VectorField InputSpec::field() const {
    VectorField vf(dx, dy, form, n);
    vf.validate();
    return vf;
}

InputSpec InputSpec::with_values(const std::map<std::string, Rational>& values) const {
    for (const auto& [k, v] : values) {
        if (std::find(params.begin(), params.end(), k) == params.end())
            throw DomainError("--set names an undeclared parameter '" + k + "'");
    }
    InputSpec out = *this;
    out.params.clear();
    for (const auto& p : params) {
        if (!values.count(p)) out.params.push_back(p);
    }
    AlphabetPtr a = out.alphabet();
    out.dx = dx.substitute_params(values).rebase(a);
    out.dy = dy.substitute_params(values).rebase(a);
    return out;
}

bool operator==(const InputSpec& a, const InputSpec& b) {
    return a.params == b.params && a.dx == b.dx && a.dy == b.dy && a.form == b.form && a.n == b.n &&
           a.digits == b.digits && a.kmax == b.kmax && a.order == b.order;
}

InputSpec parse_input(std::string_view text, const ParseOptions& opts) {
    Lexer lex(text);
    InputSpec spec;
    AlphabetPtr alpha = empty_alphabet();
    bool have_dx = false, have_dy = false;
    while (lex.peek().kind != Tok::End) {
        Token head = lex.take();
        if (head.kind != Tok::Ident) fail(head, "expected a statement, found " + describe(head));
        if (head.text == "param" || head.text == "params") {
            if (have_dx || have_dy) fail(head, "parameters must be declared before dx and dy");
            while (true) {
                Token name = lex.peek();
                if (name.kind != Tok::Ident) fail(name, "expected a parameter name, found " + describe(name));
                if (reserved().count(name.text)) fail(name, "'" + name.text + "' is reserved");
                if (alpha->contains(name.text)) fail(name, "parameter '" + name.text + "' declared twice");
                lex.take();
                spec.params.push_back(name.text);
                alpha = make_alphabet(spec.params);
                if (!is_op(lex.peek(), ',')) break;
                lex.take();
            }
            expect_semicolon(lex);
            continue;
        }
        if (!is_op(lex.peek(), '=')) fail(lex.peek(), "expected '=', found " + describe(lex.peek()));
        lex.take();
        if (head.text == "dx" || head.text == "dy") {
            bool& have = head.text == "dx" ? have_dx : have_dy;
            if (have) fail(head, head.text + " given twice");
            have = true;
            ExprParser ep(lex, alpha, opts);
            PlanePoly p = ep.expr();
            (head.text == "dx" ? spec.dx : spec.dy) = std::move(p);
        } else if (head.text == "form") {
            Token start = lex.peek();
            std::string name;
            while (lex.peek().kind == Tok::Ident || is_op(lex.peek(), '-')) name += lex.take().text;
            try {
                spec.form = field_form_from_string(name);
            } catch (const DomainError&) {
                fail(start, "unknown form '" + name + "' (general, canonical-plus, canonical-minus, qh-family)");
            }
        } else if (head.text == "n") {
            spec.n = small_int(lex, 1, 64);
        } else if (head.text == "digits") {
            spec.digits = small_int(lex, 10, 2000);
        } else if (head.text == "kmax") {
            spec.kmax = small_int(lex, 1, 200);
        } else if (head.text == "order") {
            spec.order = small_int(lex, 1, 1000);
        } else {
            fail(head, "unknown statement '" + head.text + "'");
        }
        expect_semicolon(lex);
    }
    if (!have_dx || !have_dy) fail(lex.peek(), have_dx ? "missing 'dy = ...;'" : "missing 'dx = ...;'");
    spec.dx = spec.dx.rebase(alpha);
    spec.dy = spec.dy.rebase(alpha);
    return spec;
}

PlanePoly parse_polynomial(std::string_view text, const std::vector<std::string>& params, const ParseOptions& opts) {
    Lexer lex(text);
    ExprParser ep(lex, make_alphabet(params), opts);
    PlanePoly p = ep.expr();
    if (lex.peek().kind != Tok::End) fail(lex.peek(), "unexpected " + describe(lex.peek()));
    return p;
}

std::string serialize_input(const InputSpec& spec) {
    std::ostringstream os;
    if (!spec.params.empty()) {
        os << "param ";
        for (size_t i = 0; i < spec.params.size(); ++i) os << (i ? ", " : "") << spec.params[i];
        os << ";\n";
    }
    if (spec.form != FieldForm::General) os << "form = " << to_string(spec.form) << ";\n";
    if (spec.n) os << "n = " << *spec.n << ";\n";
    if (spec.digits) os << "digits = " << *spec.digits << ";\n";
    if (spec.kmax) os << "kmax = " << *spec.kmax << ";\n";
    if (spec.order) os << "order = " << *spec.order << ";\n";
    os << "dx = " << spec.dx.to_string() << ";\n";
    os << "dy = " << spec.dy.to_string() << ";\n";
    return os.str();
}

std::map<std::string, Rational> parse_assignments(std::string_view text, const ParseOptions& opts) {
    std::map<std::string, Rational> out;
    Lexer lex(text);
    while (lex.peek().kind != Tok::End) {
        Token name = lex.take();
        if (name.kind != Tok::Ident) fail(name, "expected a parameter name, found " + describe(name));
        if (!is_op(lex.peek(), '=')) fail(lex.peek(), "expected '=', found " + describe(lex.peek()));
        lex.take();
        // Value: constant expression such as -1/2.
        std::string value;
        Token at = lex.peek();
        while (lex.peek().kind != Tok::End && !is_op(lex.peek(), ',')) value += lex.take().text;
        PlanePoly p = [&] {
            try {
                return parse_polynomial(value, {}, opts);
            } catch (const ParseError& e) {
                fail(at, "bad value for '" + name.text + "': " + e.what());
            }
        }();
        std::optional<Rational> c;
        if (p.is_zero())
            c = Rational(0);
        else if (p.terms().size() == 1 && p.terms().begin()->first == PlanePoly::Key{0, 0})
            c = p.terms().begin()->second.as_constant();
        if (!c) fail(at, "value for '" + name.text + "' is not a constant");
        out[name.text] = *c;
        if (is_op(lex.peek(), ',')) lex.take();
    }
    return out;
}

} // namespace nilcenter
