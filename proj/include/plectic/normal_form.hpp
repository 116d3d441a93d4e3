#pragma once

// Canonical polynomial normal form for expressions, and the two-tier
// zero test built on it: polynomial identities are proved by
// normalization, transcendental ones are certified at sampled points.
//
// A normal form is a Laurent polynomial over "atoms": chart variables,
// applications sin/cos/exp keyed by the normal form of their argument,
// and (for negative powers of non-monomial bases) the base polynomial
// itself, scaled so its map-first coefficient is 1.

#include "plectic/expr.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace plectic {

struct NormalForm;

struct Atom {
    enum class Kind { Var, Apply, PolyBase };
    Kind kind{Kind::Var};
    std::string var;
    Func func{Func::Sin};
    std::shared_ptr<const NormalForm> arg;  // Apply argument or PolyBase polynomial
    std::string key;                        // canonical string; total order + identity

    bool operator<(const Atom& o) const { return key < o.key; }
    bool operator==(const Atom& o) const { return key == o.key; }

    static Atom make_var(std::string name) {
        Atom a;
        a.kind = Kind::Var;
        a.key = name;
        a.var = std::move(name);
        return a;
    }
    static Atom make_apply(Func f, std::shared_ptr<const NormalForm> nf);
    static Atom make_poly_base(std::shared_ptr<const NormalForm> nf);
};

// Sorted (atom, nonzero exponent) pairs; the empty monomial is 1.
using Monomial = std::vector<std::pair<Atom, int>>;

struct NormalForm {
    std::map<Monomial, Rational> terms;  // zero coefficients never stored

    bool is_zero() const { return terms.empty(); }
    bool is_constant() const {
        return terms.empty() || (terms.size() == 1 && terms.begin()->first.empty());
    }
    Rational constant_value() const {
        if (terms.empty()) return 0;
        return terms.begin()->second;
    }

    NormalForm& operator+=(const NormalForm& o) {
        for (const auto& [m, c] : o.terms) add_term(m, c);
        return *this;
    }

    void add_term(const Monomial& m, const Rational& c) {
        if (c == 0) return;
        auto it = terms.find(m);
        if (it == terms.end()) {
            terms.emplace(m, c);
        } else {
            it->second += c;
            if (it->second == 0) terms.erase(it);
        }
    }

    friend NormalForm operator*(const NormalForm& a, const NormalForm& b) {
        NormalForm r;
        for (const auto& [ma, ca] : a.terms)
            for (const auto& [mb, cb] : b.terms) r.add_term(mul_monomials(ma, mb), ca * cb);
        return r;
    }

    static Monomial mul_monomials(const Monomial& a, const Monomial& b) {
        Monomial r;
        std::size_t i = 0, j = 0;
        while (i < a.size() && j < b.size()) {
            if (a[i].first == b[j].first) {
                const int e = a[i].second + b[j].second;
                if (e != 0) r.emplace_back(a[i].first, e);
                ++i, ++j;
            } else if (a[i].first < b[j].first) {
                r.push_back(a[i++]);
            } else {
                r.push_back(b[j++]);
            }
        }
        for (; i < a.size(); ++i) r.push_back(a[i]);
        for (; j < b.size(); ++j) r.push_back(b[j]);
        return r;
    }

    std::string canonical_string() const;

    bool operator==(const NormalForm& o) const { return terms == o.terms; }
};

inline std::string NormalForm::canonical_string() const {
    std::string s;
    for (const auto& [m, c] : terms) {
        if (!s.empty()) s += "+";
        s += detail::rational_str(c);
        for (const auto& [a, e] : m) s += "." + a.key + "^" + std::to_string(e);
    }
    return s.empty() ? "0" : s;
}

inline Atom Atom::make_apply(Func f, std::shared_ptr<const NormalForm> nf) {
    Atom a;
    a.kind = Kind::Apply;
    a.func = f;
    a.key = std::string(func_name(f)) + "(" + nf->canonical_string() + ")";
    a.arg = std::move(nf);
    return a;
}

inline Atom Atom::make_poly_base(std::shared_ptr<const NormalForm> nf) {
    Atom a;
    a.kind = Kind::PolyBase;
    a.key = "#base(" + nf->canonical_string() + ")";
    a.arg = std::move(nf);
    return a;
}

// ---------------------------------------------------------------------------
// normalize

namespace detail {

inline NormalForm nf_pow(const NormalForm& base, int n);

inline NormalForm nf_atom(Atom a, int exp = 1) {
    NormalForm r;
    Monomial m;
    m.emplace_back(std::move(a), exp);
    r.terms.emplace(std::move(m), 1);
    return r;
}

inline NormalForm nf_const(Rational c) {
    NormalForm r;
    if (c != 0) r.terms.emplace(Monomial{}, std::move(c));
    return r;
}

}  // namespace detail

inline NormalForm normalize(const Expr& e) {
    switch (e.kind()) {
    case Expr::Kind::Constant:
        return detail::nf_const(e.value());
    case Expr::Kind::Variable:
        return detail::nf_atom(Atom::make_var(e.name()));
    case Expr::Kind::Sum: {
        NormalForm r;
        for (const auto& op : e.operands()) r += normalize(op);
        return r;
    }
    case Expr::Kind::Product: {
        NormalForm r = detail::nf_const(1);
        for (const auto& op : e.operands()) r = r * normalize(op);
        return r;
    }
    case Expr::Kind::Power:
        return detail::nf_pow(normalize(e.base()), e.exponent());
    case Expr::Kind::Apply: {
        auto nf = std::make_shared<const NormalForm>(normalize(e.argument()));
        if (nf->is_zero()) {
            // sin(0)=0, cos(0)=1, exp(0)=1
            switch (e.func()) {
            case Func::Sin: return NormalForm{};
            case Func::Cos:
            case Func::Exp: return detail::nf_const(1);
            }
        }
        return detail::nf_atom(Atom::make_apply(e.func(), std::move(nf)));
    }
    }
    throw std::logic_error("unreachable expression kind");
}

namespace detail {

inline NormalForm nf_pow(const NormalForm& base, int n) {
    if (n == 0) return nf_const(1);
    if (n > 0) {
        NormalForm r = nf_const(1);
        NormalForm sq = base;
        int k = n;
        while (k > 0) {
            if (k & 1) r = r * sq;
            k >>= 1;
            if (k) sq = sq * sq;
        }
        return r;
    }
    // negative exponent
    if (base.is_zero()) throw std::domain_error("normalize: zero base raised to negative power");
    if (base.terms.size() == 1) {
        // single monomial: invert coefficient and negate exponents
        const auto& [m, c] = *base.terms.begin();
        Monomial inv;
        inv.reserve(m.size());
        for (const auto& [a, e] : m) inv.emplace_back(a, -e);
        NormalForm unit;
        unit.terms.emplace(std::move(inv), Rational(1) / c);
        return nf_pow(unit, -n);
    }
    // general base: scale so the map-first coefficient is 1, keep as atom
    const Rational content = base.terms.begin()->second;
    NormalForm scaled;
    for (const auto& [m, c] : base.terms) scaled.terms.emplace(m, c / content);
    auto atom = Atom::make_poly_base(std::make_shared<const NormalForm>(std::move(scaled)));
    NormalForm r = nf_atom(std::move(atom), n);
    Rational factor = 1;
    for (int i = 0; i < -n; ++i) factor /= content;
    return r * nf_const(std::move(factor));
}

inline Expr atom_to_expr(const Atom& a);

inline Expr nf_to_expr(const NormalForm& nf) {
    std::vector<Expr> terms;
    for (const auto& [m, c] : nf.terms) {
        std::vector<Expr> factors;
        factors.push_back(Expr::constant(c));
        for (const auto& [a, e] : m) factors.push_back(Expr::power(atom_to_expr(a), e));
        terms.push_back(Expr::product(std::move(factors)));
    }
    return Expr::sum(std::move(terms));
}

inline Expr atom_to_expr(const Atom& a) {
    switch (a.kind) {
    case Atom::Kind::Var: return Expr::variable(a.var);
    case Atom::Kind::Apply: return Expr::apply(a.func, nf_to_expr(*a.arg));
    case Atom::Kind::PolyBase: return nf_to_expr(*a.arg);
    }
    throw std::logic_error("unreachable atom kind");
}

}  // namespace detail

inline Expr to_expr(const NormalForm& nf) { return detail::nf_to_expr(nf); }

// Canonical rebuild; keeps coefficient trees small after long op chains.
inline Expr simplified(const Expr& e) { return to_expr(normalize(e)); }

// ---------------------------------------------------------------------------
// Deterministic sampling and the zero test

// splitmix64; deterministic across platforms
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    double uniform(double lo, double hi) {
        const double u = static_cast<double>(next() >> 11) * 0x1.0p-53;
        return lo + u * (hi - lo);
    }
};

struct SampleConfig {
    int points = 20;
    double tol = 1e-10;
    double box_lo = -1.0;
    double box_hi = 1.0;
    std::uint64_t seed = 0;
    int max_retries = 16;
    int jobs = 1;

    SampleConfig with_tol(double t) const {
        SampleConfig c = *this;
        c.tol = t;
        return c;
    }
    SampleConfig with_seed(std::uint64_t s) const {
        SampleConfig c = *this;
        c.seed = s;
        return c;
    }
};

struct ZeroVerdict {
    enum class Kind { Proved, Sampled, Nonzero };
    Kind kind{Kind::Proved};
    double max_abs = 0.0;  // largest |value| seen while sampling
    Point witness;         // set when kind == Nonzero
    double witness_value = 0.0;

    bool ok() const { return kind != Kind::Nonzero; }
    bool proved() const { return kind == Kind::Proved; }

    static ZeroVerdict proved_zero() { return {}; }

    // Combine componentwise results: proved stays proved only if all are.
    void merge(const ZeroVerdict& o) {
        max_abs = std::max(max_abs, o.max_abs);
        if (o.kind == Kind::Nonzero && kind != Kind::Nonzero) {
            kind = Kind::Nonzero;
            witness = o.witness;
            witness_value = o.witness_value;
        } else if (o.kind == Kind::Sampled && kind == Kind::Proved) {
            kind = Kind::Sampled;
        }
    }

    const char* status() const {
        switch (kind) {
        case Kind::Proved: return "proved";
        case Kind::Sampled: return "sampled";
        case Kind::Nonzero: return "FAIL";
        }
        return "?";
    }
};

inline Point sample_point(const std::vector<std::string>& vars, const SampleConfig& cfg,
                          std::uint64_t index) {
    // per-point seed, so the draw is independent of batching/threading
    Rng rng(cfg.seed * 0x9e3779b97f4a7c15ull + 0x243f6a8885a308d3ull * (index + 1));
    Point p;
    for (const auto& v : vars) p[v] = rng.uniform(cfg.box_lo, cfg.box_hi);
    return p;
}

inline ZeroVerdict is_zero(const Expr& e, const std::vector<std::string>& variables,
                           const SampleConfig& cfg) {
    if (normalize(e).is_zero()) return ZeroVerdict::proved_zero();
    ZeroVerdict v;
    v.kind = ZeroVerdict::Kind::Sampled;
    for (int i = 0; i < cfg.points; ++i) {
        double val = 0;
        bool got = false;
        for (int r = 0; r <= cfg.max_retries && !got; ++r) {
            const Point p = sample_point(variables, cfg,
                                         static_cast<std::uint64_t>(i) * (cfg.max_retries + 1) + r);
            try {
                val = evaluate(e, p);
                got = true;
                if (std::abs(val) > cfg.tol || !std::isfinite(val)) {
                    v.kind = ZeroVerdict::Kind::Nonzero;
                    v.witness = p;
                    v.witness_value = val;
                    v.max_abs = std::max(v.max_abs, std::abs(val));
                    return v;
                }
            } catch (const EvalError& err) {
                if (err.kind != EvalError::Kind::Pole) throw;
            }
        }
        if (!got)
            throw std::runtime_error("is_zero: sampling kept hitting poles; widen the box");
        v.max_abs = std::max(v.max_abs, std::abs(val));
    }
    return v;
}

}  // namespace plectic
