#pragma once

// Symbolic scalar expressions over named coordinates: exact rational
// constants, sums, products, integer powers and the transcendental
// atoms sin/cos/exp.  Values are immutable trees shared by pointer,
// so they are safe to copy and to use concurrently.

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace plectic {

using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

enum class Func { Sin, Cos, Exp };

inline const char* func_name(Func f) {
    switch (f) {
    case Func::Sin: return "sin";
    case Func::Cos: return "cos";
    case Func::Exp: return "exp";
    }
    return "?";
}

struct EvalError : std::runtime_error {
    enum class Kind { Pole, MissingVariable };
    Kind kind;
    EvalError(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

struct ParseError : std::runtime_error {
    std::size_t offset;
    ParseError(std::size_t at, const std::string& msg)
        : std::runtime_error(msg + " (at offset " + std::to_string(at) + ")"), offset(at) {}
};

class Expr {
public:
    enum class Kind { Constant, Variable, Sum, Product, Power, Apply };

    // Default-constructed expression is the constant 0.
    Expr() : Expr(constant(0)) {}

    static Expr constant(Rational v) {
        Node n;
        n.kind = Kind::Constant;
        n.value = std::move(v);
        return Expr(std::move(n));
    }
    static Expr constant(long num, long den = 1) { return constant(Rational(num, den)); }

    static Expr variable(std::string name) {
        Node n;
        n.kind = Kind::Variable;
        n.name = std::move(name);
        return Expr(std::move(n));
    }

    // n-ary sum; flattens nested sums and folds constant terms.
    static Expr sum(std::vector<Expr> ops) {
        std::vector<Expr> flat;
        Rational c = 0;
        for (auto& e : ops) collect_sum(e, c, flat);
        if (c != 0 || flat.empty()) flat.push_back(constant(c));
        if (flat.size() == 1) return flat.front();
        Node n;
        n.kind = Kind::Sum;
        n.operands = std::move(flat);
        return Expr(std::move(n));
    }

    // n-ary product; flattens and folds constant factors, 0 absorbs.
    static Expr product(std::vector<Expr> ops) {
        std::vector<Expr> flat;
        Rational c = 1;
        for (auto& e : ops) {
            collect_product(e, c, flat);
            if (c == 0) return constant(0);
        }
        if (flat.empty()) return constant(c);
        if (c != 1) flat.insert(flat.begin(), constant(c));
        if (flat.size() == 1) return flat.front();
        Node n;
        n.kind = Kind::Product;
        n.operands = std::move(flat);
        return Expr(std::move(n));
    }

    static Expr power(Expr base, int exponent) {
        if (exponent == 1) return base;
        if (base.kind() == Kind::Constant) {
            const Rational& b = base.value();
            if (exponent == 0) return constant(1);  // convention: 0^0 = 1
            if (b == 0 && exponent < 0)
                throw std::domain_error("zero raised to a negative power");
            Rational r = 1;
            const Rational f = exponent > 0 ? b : Rational(1) / b;
            for (int i = 0; i < (exponent > 0 ? exponent : -exponent); ++i) r *= f;
            return constant(r);
        }
        if (exponent == 0) return constant(1);
        if (base.kind() == Kind::Power)
            return power(base.base(), base.exponent() * exponent);
        Node n;
        n.kind = Kind::Power;
        n.operands.push_back(std::move(base));
        n.exponent = exponent;
        return Expr(std::move(n));
    }

    static Expr apply(Func f, Expr arg) {
        Node n;
        n.kind = Kind::Apply;
        n.func = f;
        n.operands.push_back(std::move(arg));
        return Expr(std::move(n));
    }

    Kind kind() const { return node_->kind; }
    const Rational& value() const { return node_->value; }
    const std::string& name() const { return node_->name; }
    const std::vector<Expr>& operands() const { return node_->operands; }
    const Expr& base() const { return node_->operands.front(); }
    int exponent() const { return node_->exponent; }
    Func func() const { return node_->func; }
    const Expr& argument() const { return node_->operands.front(); }

    bool is_constant() const { return kind() == Kind::Constant; }
    bool is_zero_constant() const { return is_constant() && value() == 0; }

private:
    struct Node {
        Kind kind{Kind::Constant};
        Rational value{0};
        std::string name;
        std::vector<Expr> operands;
        int exponent{0};
        Func func{Func::Sin};
    };

    explicit Expr(Node n) : node_(std::make_shared<const Node>(std::move(n))) {}

    static void collect_sum(const Expr& e, Rational& c, std::vector<Expr>& out) {
        if (e.kind() == Kind::Constant) {
            c += e.value();
        } else if (e.kind() == Kind::Sum) {
            for (const auto& op : e.operands()) collect_sum(op, c, out);
        } else {
            out.push_back(e);
        }
    }
    static void collect_product(const Expr& e, Rational& c, std::vector<Expr>& out) {
        if (e.kind() == Kind::Constant) {
            c *= e.value();
        } else if (e.kind() == Kind::Product) {
            for (const auto& op : e.operands()) collect_product(op, c, out);
        } else {
            out.push_back(e);
        }
    }

    std::shared_ptr<const Node> node_;
};

inline Expr operator+(const Expr& a, const Expr& b) { return Expr::sum({a, b}); }
inline Expr operator-(const Expr& a, const Expr& b) {
    return Expr::sum({a, Expr::product({Expr::constant(-1), b})});
}
inline Expr operator-(const Expr& a) { return Expr::product({Expr::constant(-1), a}); }
inline Expr operator*(const Expr& a, const Expr& b) { return Expr::product({a, b}); }
inline Expr operator/(const Expr& a, const Expr& b) {
    return Expr::product({a, Expr::power(b, -1)});
}
inline Expr pow(const Expr& a, int n) { return Expr::power(a, n); }
inline Expr sin(const Expr& a) { return Expr::apply(Func::Sin, a); }
inline Expr cos(const Expr& a) { return Expr::apply(Func::Cos, a); }
inline Expr exp(const Expr& a) { return Expr::apply(Func::Exp, a); }

// ---------------------------------------------------------------------------
// Evaluation

using Point = std::map<std::string, double>;

inline double evaluate(const Expr& e, const Point& point) {
    switch (e.kind()) {
    case Expr::Kind::Constant:
        return to_double(e.value());
    case Expr::Kind::Variable: {
        auto it = point.find(e.name());
        if (it == point.end())
            throw EvalError(EvalError::Kind::MissingVariable,
                            "no assignment for variable '" + e.name() + "'");
        return it->second;
    }
    case Expr::Kind::Sum: {
        double s = 0;
        for (const auto& op : e.operands()) s += evaluate(op, point);
        return s;
    }
    case Expr::Kind::Product: {
        double p = 1;
        for (const auto& op : e.operands()) p *= evaluate(op, point);
        return p;
    }
    case Expr::Kind::Power: {
        const double b = evaluate(e.base(), point);
        const int n = e.exponent();
        if (n < 0 && b == 0.0)
            throw EvalError(EvalError::Kind::Pole, "pole: zero base raised to power " +
                                                       std::to_string(n));
        double r = 1;
        const double f = n > 0 ? b : 1.0 / b;
        for (int i = 0; i < (n > 0 ? n : -n); ++i) r *= f;
        return r;
    }
    case Expr::Kind::Apply: {
        const double a = evaluate(e.argument(), point);
        switch (e.func()) {
        case Func::Sin: return std::sin(a);
        case Func::Cos: return std::cos(a);
        case Func::Exp: return std::exp(a);
        }
    }
    }
    throw std::logic_error("unreachable expression kind");
}

// ---------------------------------------------------------------------------
// Differentiation

inline Expr differentiate(const Expr& e, const std::string& var) {
    switch (e.kind()) {
    case Expr::Kind::Constant:
        return Expr::constant(0);
    case Expr::Kind::Variable:
        return Expr::constant(e.name() == var ? 1 : 0);
    case Expr::Kind::Sum: {
        std::vector<Expr> parts;
        parts.reserve(e.operands().size());
        for (const auto& op : e.operands()) parts.push_back(differentiate(op, var));
        return Expr::sum(std::move(parts));
    }
    case Expr::Kind::Product: {
        // product rule over n factors
        std::vector<Expr> parts;
        const auto& ops = e.operands();
        for (std::size_t i = 0; i < ops.size(); ++i) {
            std::vector<Expr> term;
            term.reserve(ops.size());
            for (std::size_t j = 0; j < ops.size(); ++j)
                term.push_back(i == j ? differentiate(ops[j], var) : ops[j]);
            parts.push_back(Expr::product(std::move(term)));
        }
        return Expr::sum(std::move(parts));
    }
    case Expr::Kind::Power: {
        const int n = e.exponent();
        if (n == 0) return Expr::constant(0);
        return Expr::product({Expr::constant(n), Expr::power(e.base(), n - 1),
                              differentiate(e.base(), var)});
    }
    case Expr::Kind::Apply: {
        const Expr inner = differentiate(e.argument(), var);
        switch (e.func()) {
        case Func::Sin: return cos(e.argument()) * inner;
        case Func::Cos: return -(sin(e.argument())) * inner;
        case Func::Exp: return exp(e.argument()) * inner;
        }
    }
    }
    throw std::logic_error("unreachable expression kind");
}

// Replace variables by expressions (used by pullbacks).
inline Expr substitute(const Expr& e, const std::map<std::string, Expr>& repl) {
    switch (e.kind()) {
    case Expr::Kind::Constant:
        return e;
    case Expr::Kind::Variable: {
        auto it = repl.find(e.name());
        return it == repl.end() ? e : it->second;
    }
    case Expr::Kind::Sum: {
        std::vector<Expr> parts;
        for (const auto& op : e.operands()) parts.push_back(substitute(op, repl));
        return Expr::sum(std::move(parts));
    }
    case Expr::Kind::Product: {
        std::vector<Expr> parts;
        for (const auto& op : e.operands()) parts.push_back(substitute(op, repl));
        return Expr::product(std::move(parts));
    }
    case Expr::Kind::Power:
        return Expr::power(substitute(e.base(), repl), e.exponent());
    case Expr::Kind::Apply:
        return Expr::apply(e.func(), substitute(e.argument(), repl));
    }
    throw std::logic_error("unreachable expression kind");
}

inline void collect_variables(const Expr& e, std::vector<std::string>& out) {
    switch (e.kind()) {
    case Expr::Kind::Constant:
        return;
    case Expr::Kind::Variable:
        out.push_back(e.name());
        return;
    default:
        for (const auto& op : e.operands()) collect_variables(op, out);
    }
}

// ---------------------------------------------------------------------------
// Printing.  Output re-parses to an expression with the same normal form.

namespace detail {

inline std::string rational_str(const Rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}

inline bool needs_parens_in_product(const Expr& e) {
    return e.kind() == Expr::Kind::Sum ||
           (e.kind() == Expr::Kind::Constant && e.value() < 0);
}

inline std::string print_expr(const Expr& e);

inline std::string print_power_base(const Expr& e) {
    switch (e.kind()) {
    case Expr::Kind::Variable:
    case Expr::Kind::Apply:
        return print_expr(e);
    default:
        return "(" + print_expr(e) + ")";
    }
}

inline std::string print_expr(const Expr& e) {
    switch (e.kind()) {
    case Expr::Kind::Constant:
        return rational_str(e.value());
    case Expr::Kind::Variable:
        return e.name();
    case Expr::Kind::Sum: {
        std::string s;
        for (std::size_t i = 0; i < e.operands().size(); ++i) {
            if (i) s += " + ";
            const auto& op = e.operands()[i];
            if (op.kind() == Expr::Kind::Sum)
                s += "(" + print_expr(op) + ")";
            else
                s += print_expr(op);
        }
        return s;
    }
    case Expr::Kind::Product: {
        std::string s;
        for (std::size_t i = 0; i < e.operands().size(); ++i) {
            if (i) s += "*";
            const auto& op = e.operands()[i];
            s += needs_parens_in_product(op) ? "(" + print_expr(op) + ")" : print_expr(op);
        }
        return s;
    }
    case Expr::Kind::Power: {
        const int n = e.exponent();
        std::string s = print_power_base(e.base()) + "^";
        if (n < 0) return s + "(" + std::to_string(n) + ")";
        return s + std::to_string(n);
    }
    case Expr::Kind::Apply:
        return std::string(func_name(e.func())) + "(" + print_expr(e.argument()) + ")";
    }
    throw std::logic_error("unreachable expression kind");
}

}  // namespace detail

inline std::string to_string(const Expr& e) { return detail::print_expr(e); }

// ---------------------------------------------------------------------------
// Parser.  Grammar (whitespace insignificant):
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/') unary)*
//   unary  := '-' unary | factor
//   factor := atom ('^' exponent)?
//   atom   := NUMBER | IDENT | FUNC '(' expr ')' | '(' expr ')'
//   exponent := INT | '(' '-'? INT ')'
// NUMBER: integer or decimal literal, both read exactly as rationals.
// IDENT: [A-Za-z][A-Za-z0-9_]*, must name a known coordinate.

namespace detail {

class ExprParser {
public:
    ExprParser(std::string_view text, const std::vector<std::string>& vars)
        : text_(text), vars_(vars) {}

    Expr parse() {
        Expr e = parse_sum();
        skip_ws();
        if (pos_ != text_.size()) throw ParseError(pos_, "unexpected trailing input");
        return e;
    }

private:
    std::string_view text_;
    const std::vector<std::string>& vars_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }
    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    Expr parse_sum() {
        Expr e = parse_term();
        for (;;) {
            if (eat('+'))
                e = e + parse_term();
            else if (eat('-'))
                e = e - parse_term();
            else
                return e;
        }
    }

    Expr parse_term() {
        Expr e = parse_unary();
        for (;;) {
            if (eat('*'))
                e = e * parse_unary();
            else if (eat('/'))
                e = e / parse_unary();
            else
                return e;
        }
    }

    Expr parse_unary() {
        if (eat('-')) return -parse_unary();
        return parse_factor();
    }

    Expr parse_factor() {
        Expr base = parse_atom();
        skip_ws();
        if (eat('^')) return Expr::power(base, parse_exponent());
        return base;
    }

    int parse_exponent() {
        skip_ws();
        bool parens = eat('(');
        bool neg = eat('-');
        skip_ws();
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            throw ParseError(pos_, "expected integer exponent");
        long v = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            v = v * 10 + (text_[pos_] - '0');
            if (v > 1000000) throw ParseError(pos_, "exponent out of range");
            ++pos_;
        }
        if (parens && !eat(')')) throw ParseError(pos_, "expected ')' after exponent");
        return static_cast<int>(neg ? -v : v);
    }

    Expr parse_atom() {
        skip_ws();
        if (pos_ >= text_.size()) throw ParseError(pos_, "unexpected end of input");
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) return parse_number();
        if (c == '(') {
            ++pos_;
            Expr e = parse_sum();
            if (!eat(')')) throw ParseError(pos_, "expected ')'");
            return e;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) return parse_ident();
        throw ParseError(pos_, std::string("unexpected character '") + c + "'");
    }

    Expr parse_number() {
        const std::size_t start = pos_;
        std::string digits;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            digits += text_[pos_++];
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            std::string frac;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                frac += text_[pos_++];
            if (frac.empty()) throw ParseError(pos_, "expected digits after decimal point");
            // decimals are exact rationals: a.b = (a*10^k + b) / 10^k
            Rational den = 1;
            for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
            return Expr::constant(Rational(digits_to_int(digits + frac)) / den);
        }
        if (digits.empty()) throw ParseError(start, "expected number");
        return Expr::constant(Rational(digits_to_int(digits)));
    }

    static boost::multiprecision::cpp_int digits_to_int(const std::string& digits) {
        boost::multiprecision::cpp_int v = 0;
        for (char c : digits) v = v * 10 + (c - '0');
        return v;
    }

    Expr parse_ident() {
        const std::size_t start = pos_;
        std::string name;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            name += text_[pos_++];
        if (name == "sin" || name == "cos" || name == "exp") {
            if (!eat('(')) throw ParseError(pos_, "expected '(' after function name");
            Expr arg = parse_sum();
            if (!eat(')')) throw ParseError(pos_, "expected ')'");
            return Expr::apply(name == "sin" ? Func::Sin : name == "cos" ? Func::Cos : Func::Exp,
                               std::move(arg));
        }
        for (const auto& v : vars_)
            if (v == name) return Expr::variable(name);
        throw ParseError(start, "unknown identifier '" + name + "'");
    }
};

}  // namespace detail

inline Expr parse_expr(std::string_view text, const std::vector<std::string>& variables) {
    return detail::ExprParser(text, variables).parse();
}

}  // namespace plectic
