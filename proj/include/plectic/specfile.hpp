#pragma once

// Line-oriented sectioned spec files:
//
//   [plectic]
//   preset = "extpower:3,2"     # or: chart = [x, y, z]  omega = "..."  n = 2
//   [forms]
//   F = "x * dy"                # 1-forms join the battery; 0-forms are 1-chains
//   [vectors]
//   v = [0, 0, -1]
//   [string]
//   d = 3
//   nsigma = 256
//   dt = 0.012
//   steps = 1024
//   preset = "standing:1,1"     # or "dalembert:FILE"
//   bfield = "u0 * du1^du2"
//   [check]
//   samples = 20
//   tol = 1e-9
//   seed = 0
//
// Form literals are sums of `<expr> * d<coord>[^d<coord>...]` terms;
// a term without a wedge block is a degree-0 form.

#include "plectic/forms.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace plectic {

struct SpecError : std::runtime_error {
    int line = 0;
    SpecError(int at, const std::string& msg)
        : std::runtime_error("spec line " + std::to_string(at) + ": " + msg), line(at) {}
};

struct SpecValue {
    enum class Kind { String, Scalar, List };
    Kind kind{Kind::String};
    std::string text;                 // String (unquoted content)
    double number = 0.0;              // Scalar
    std::vector<std::string> items;   // List entries (bare tokens)
    int line = 0;
};

struct SpecFile {
    // section -> ordered (key, value) pairs
    std::map<std::string, std::vector<std::pair<std::string, SpecValue>>> sections;

    bool has(const std::string& section) const { return sections.count(section) > 0; }

    const SpecValue* find(const std::string& section, const std::string& key) const {
        auto it = sections.find(section);
        if (it == sections.end()) return nullptr;
        for (const auto& [k, v] : it->second)
            if (k == key) return &v;
        return nullptr;
    }

    std::string get_string(const std::string& section, const std::string& key,
                           const std::string& fallback = "") const {
        const SpecValue* v = find(section, key);
        if (!v) return fallback;
        if (v->kind != SpecValue::Kind::String)
            throw SpecError(v->line, key + " must be a quoted string");
        return v->text;
    }

    double get_number(const std::string& section, const std::string& key,
                      double fallback) const {
        const SpecValue* v = find(section, key);
        if (!v) return fallback;
        if (v->kind != SpecValue::Kind::Scalar)
            throw SpecError(v->line, key + " must be a number");
        return v->number;
    }

    static SpecFile parse(std::istream& in) {
        SpecFile out;
        std::string current;
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            strip_comment(line);
            const std::string t = trim(line);
            if (t.empty()) continue;
            if (t.front() == '[') {
                if (t.back() != ']') throw SpecError(lineno, "unterminated section header");
                current = trim(t.substr(1, t.size() - 2));
                if (current.empty()) throw SpecError(lineno, "empty section name");
                out.sections[current];
                continue;
            }
            const auto eq = t.find('=');
            if (eq == std::string::npos) throw SpecError(lineno, "expected key = value");
            if (current.empty()) throw SpecError(lineno, "entry before any [section]");
            std::string key = trim(t.substr(0, eq));
            std::string val = trim(t.substr(eq + 1));
            if (key.empty()) throw SpecError(lineno, "empty key");
            out.sections[current].emplace_back(key, parse_value(val, lineno));
        }
        return out;
    }

    static SpecFile parse_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open spec file: " + path);
        return parse(in);
    }

    static SpecFile parse_string(const std::string& text) {
        std::istringstream in(text);
        return parse(in);
    }

private:
    static void strip_comment(std::string& s) {
        bool quoted = false;
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] == '"') quoted = !quoted;
            if (s[i] == '#' && !quoted) {
                s.erase(i);
                return;
            }
        }
    }
    static std::string trim(const std::string& s) {
        std::size_t b = 0, e = s.size();
        while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
        while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
        return s.substr(b, e - b);
    }
    static SpecValue parse_value(const std::string& val, int lineno) {
        SpecValue v;
        v.line = lineno;
        if (val.empty()) throw SpecError(lineno, "empty value");
        if (val.front() == '"') {
            if (val.size() < 2 || val.back() != '"')
                throw SpecError(lineno, "unterminated string");
            v.kind = SpecValue::Kind::String;
            v.text = val.substr(1, val.size() - 2);
            return v;
        }
        if (val.front() == '[') {
            if (val.back() != ']') throw SpecError(lineno, "unterminated list");
            v.kind = SpecValue::Kind::List;
            std::string body = val.substr(1, val.size() - 2);
            std::string item;
            for (char c : body) {
                if (c == ',') {
                    const std::string it = trim(item);
                    if (!it.empty()) v.items.push_back(it);
                    item.clear();
                } else {
                    item += c;
                }
            }
            const std::string it = trim(item);
            if (!it.empty()) v.items.push_back(it);
            return v;
        }
        char* end = nullptr;
        v.number = std::strtod(val.c_str(), &end);
        if (end == nullptr || *end != '\0')
            throw SpecError(lineno, "cannot parse value '" + val + "'");
        v.kind = SpecValue::Kind::Scalar;
        return v;
    }
};

// ---------------------------------------------------------------------------
// Form and vector literals

namespace detail {

inline std::string trim_copy(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

// last non-space character is an operator expecting an operand
inline bool ends_in_operator(const std::string& s) {
    for (auto it = s.rbegin(); it != s.rend(); ++it) {
        if (std::isspace(static_cast<unsigned char>(*it))) continue;
        return *it == '*' || *it == '/' || *it == '^' || *it == '(';
    }
    return true;
}

// split at top-level + / - (outside parens), keeping term signs
inline std::vector<std::pair<int, std::string>> split_terms(const std::string& text) {
    std::vector<std::pair<int, std::string>> terms;
    int depth = 0;
    int sign = 1;
    std::string cur;
    auto flush = [&]() {
        const std::string t = trim_copy(cur);
        if (!t.empty()) terms.emplace_back(sign, t);
        cur.clear();
    };
    for (char c : text) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (depth == 0 && (c == '+' || c == '-')) {
            if (trim_copy(cur).empty()) {
                if (c == '-') sign = -sign;  // leading sign of the next term
                continue;
            }
            if (ends_in_operator(cur)) {  // e.g. the '-' in "x^-1"
                cur += c;
                continue;
            }
            flush();
            sign = c == '-' ? -1 : 1;
            continue;
        }
        cur += c;
    }
    flush();
    return terms;
}

// try to read a wedge block `dX^dY^...`; returns indices or nullopt
inline std::optional<MultiIndex> parse_wedge_block(const std::string& text,
                                                   const Chart& chart) {
    MultiIndex idx;
    std::string token;
    std::vector<std::string> tokens;
    for (char c : text) {
        if (c == '^') {
            tokens.push_back(trim_copy(token));
            token.clear();
        } else {
            token += c;
        }
    }
    tokens.push_back(trim_copy(token));
    for (const auto& t : tokens) {
        if (t.size() < 2 || t[0] != 'd') return std::nullopt;
        auto i = chart.index(t.substr(1));
        if (!i) return std::nullopt;
        idx.push_back(*i);
    }
    return idx;
}

}  // namespace detail

inline DifferentialForm parse_form_literal(const std::string& text, const Chart& chart) {
    struct Piece {
        MultiIndex idx;
        Expr coeff;
    };
    std::vector<Piece> pieces;
    int degree = -1;
    for (const auto& [sign, term] : detail::split_terms(text)) {
        const std::string body = detail::trim_copy(term);
        if (body.empty()) continue;
        Piece piece;
        // whole term may be a bare wedge block with unit coefficient
        if (auto idx = detail::parse_wedge_block(body, chart)) {
            piece.idx = *idx;
            piece.coeff = Expr::constant(sign);
        } else {
            // find the last top-level '*' whose right side is a wedge block
            int depth = 0;
            std::size_t split = std::string::npos;
            for (std::size_t i = 0; i < body.size(); ++i) {
                if (body[i] == '(') ++depth;
                if (body[i] == ')') --depth;
                if (depth == 0 && body[i] == '*') {
                    if (detail::parse_wedge_block(body.substr(i + 1), chart)) split = i;
                }
            }
            if (split == std::string::npos) {
                // degree-0 contribution
                piece.coeff = Expr::constant(sign) * parse_expr(body, chart.names());
            } else {
                piece.idx = *detail::parse_wedge_block(body.substr(split + 1), chart);
                piece.coeff = Expr::constant(sign) *
                              parse_expr(body.substr(0, split), chart.names());
            }
        }
        const int piece_degree = static_cast<int>(piece.idx.size());
        if (degree == -1) degree = piece_degree;
        if (degree != piece_degree)
            throw std::invalid_argument("form literal mixes degrees: '" + text + "'");
        pieces.push_back(std::move(piece));
    }
    if (degree == -1) throw std::invalid_argument("empty form literal");
    DifferentialForm f(chart, degree);
    for (auto& p : pieces) f.add_term(std::move(p.idx), std::move(p.coeff));
    return f.simplify();
}

inline VectorField parse_vector_literal(const std::vector<std::string>& components,
                                        const Chart& chart) {
    if (static_cast<int>(components.size()) != chart.dim())
        throw std::invalid_argument("vector literal needs one component per coordinate");
    VectorField v(chart);
    for (int i = 0; i < chart.dim(); ++i) {
        Expr e = parse_expr(components[static_cast<std::size_t>(i)], chart.names());
        if (!e.is_zero_constant()) v.set(i, e);
    }
    return v;
}

// canonical printable literal; parses back to an equal form
inline std::string form_to_literal(const DifferentialForm& f) {
    if (f.coefficients().empty()) return "0";
    std::string out;
    for (const auto& [idx, c] : f.coefficients()) {
        if (!out.empty()) out += " + ";
        Expr s = simplified(c);
        std::string coeff = to_string(s);
        if (s.kind() == Expr::Kind::Sum ||
            (s.kind() == Expr::Kind::Constant && s.value() < 0))
            coeff = "(" + coeff + ")";
        out += coeff;
        for (std::size_t r = 0; r < idx.size(); ++r)
            out += (r == 0 ? " * d" : "^d") + f.chart().name(idx[r]);
    }
    return out;
}

}  // namespace plectic
