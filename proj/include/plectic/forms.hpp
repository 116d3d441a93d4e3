#pragma once

// Exterior calculus over a coordinate chart: sparse differential forms,
// vector fields, wedge, exterior derivative, interior product, Lie
// derivative (Cartan), Lie bracket, pullback, pointwise evaluation.
//
// Forms store coefficients against strictly increasing multi-indices;
// antisymmetry is resolved at insertion by sorting with sign.

#include "plectic/chart.hpp"
#include "plectic/normal_form.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <vector>

namespace plectic {

using MultiIndex = std::vector<int>;  // strictly increasing coordinate indices

namespace detail {

// Sort indices, return permutation sign, or 0 if an index repeats.
inline int sort_with_sign(MultiIndex& idx) {
    int sign = 1;
    for (std::size_t i = 1; i < idx.size(); ++i) {
        for (std::size_t j = i; j > 0 && idx[j] < idx[j - 1]; --j) {
            std::swap(idx[j], idx[j - 1]);
            sign = -sign;
        }
    }
    for (std::size_t i = 1; i < idx.size(); ++i)
        if (idx[i] == idx[i - 1]) return 0;
    return sign;
}

}  // namespace detail

class VectorField {
public:
    VectorField() = default;
    explicit VectorField(Chart chart) : chart_(std::move(chart)) {}

    static VectorField coordinate(const Chart& chart, int i) {
        VectorField v(chart);
        v.set(i, Expr::constant(1));
        return v;
    }

    const Chart& chart() const { return chart_; }
    const std::map<int, Expr>& components() const { return comps_; }

    void set(int i, Expr e) {
        if (i < 0 || i >= chart_.dim()) throw std::out_of_range("vector component index");
        if (e.is_zero_constant())
            comps_.erase(i);
        else
            comps_[i] = std::move(e);
    }
    Expr component(int i) const {
        auto it = comps_.find(i);
        return it == comps_.end() ? Expr::constant(0) : it->second;
    }

    // directional derivative of a scalar
    Expr apply(const Expr& f) const {
        std::vector<Expr> parts;
        for (const auto& [i, vi] : comps_)
            parts.push_back(vi * differentiate(f, chart_.name(i)));
        return Expr::sum(std::move(parts));
    }

    VectorField simplified_components() const {
        VectorField v(chart_);
        for (const auto& [i, e] : comps_) v.set(i, simplified(e));
        return v;
    }

    friend VectorField operator+(const VectorField& a, const VectorField& b) {
        require_same_chart(a.chart_, b.chart_, "vector sum");
        VectorField r = a;
        for (const auto& [i, e] : b.comps_) r.set(i, r.component(i) + e);
        return r;
    }
    friend VectorField operator*(const Expr& s, const VectorField& v) {
        VectorField r(v.chart_);
        for (const auto& [i, e] : v.comps_) r.set(i, s * e);
        return r;
    }
    friend VectorField operator-(const VectorField& v) { return Expr::constant(-1) * v; }
    friend VectorField operator-(const VectorField& a, const VectorField& b) {
        return a + (-b);
    }

private:
    Chart chart_;
    std::map<int, Expr> comps_;
};

class DifferentialForm {
public:
    DifferentialForm() = default;
    DifferentialForm(Chart chart, int degree) : chart_(std::move(chart)), degree_(degree) {
        if (degree_ < 0) throw std::invalid_argument("negative form degree");
    }

    static DifferentialForm function(const Chart& chart, Expr f) {
        DifferentialForm r(chart, 0);
        r.add_term({}, std::move(f));
        return r;
    }
    static DifferentialForm d_coordinate(const Chart& chart, int i) {
        DifferentialForm r(chart, 1);
        r.add_term({i}, Expr::constant(1));
        return r;
    }

    const Chart& chart() const { return chart_; }
    int degree() const { return degree_; }
    const std::map<MultiIndex, Expr>& coefficients() const { return coeffs_; }
    bool empty() const { return coeffs_.empty(); }

    Expr coefficient(MultiIndex idx) const {
        const int sign = detail::sort_with_sign(idx);
        if (sign == 0) return Expr::constant(0);
        auto it = coeffs_.find(idx);
        if (it == coeffs_.end()) return Expr::constant(0);
        return sign == 1 ? it->second : -it->second;
    }

    // Accumulate c dx^{idx}; idx may be unsorted, repeats vanish.
    void add_term(MultiIndex idx, Expr c) {
        if (static_cast<int>(idx.size()) != degree_)
            throw std::invalid_argument("multi-index length does not match degree");
        for (int i : idx)
            if (i < 0 || i >= chart_.dim()) throw std::out_of_range("multi-index out of chart");
        const int sign = detail::sort_with_sign(idx);
        if (sign == 0 || c.is_zero_constant()) return;
        Expr add = sign == 1 ? std::move(c) : -c;
        auto it = coeffs_.find(idx);
        if (it == coeffs_.end())
            coeffs_.emplace(std::move(idx), std::move(add));
        else
            it->second = it->second + add;
    }

    DifferentialForm simplify() const {
        DifferentialForm r(chart_, degree_);
        for (const auto& [idx, c] : coeffs_) {
            Expr s = simplified(c);
            if (!s.is_zero_constant()) r.coeffs_.emplace(idx, std::move(s));
        }
        return r;
    }

    friend DifferentialForm operator+(const DifferentialForm& a, const DifferentialForm& b) {
        require_same_chart(a.chart_, b.chart_, "form sum");
        if (a.degree_ != b.degree_) throw std::invalid_argument("form sum: degree mismatch");
        DifferentialForm r = a;
        for (const auto& [idx, c] : b.coeffs_) r.add_term(idx, c);
        return r;
    }
    friend DifferentialForm operator*(const Expr& s, const DifferentialForm& f) {
        DifferentialForm r(f.chart_, f.degree_);
        for (const auto& [idx, c] : f.coeffs_) r.add_term(idx, s * c);
        return r;
    }
    friend DifferentialForm operator-(const DifferentialForm& f) {
        return Expr::constant(-1) * f;
    }
    friend DifferentialForm operator-(const DifferentialForm& a, const DifferentialForm& b) {
        return a + (-b);
    }

private:
    Chart chart_;
    int degree_ = 0;
    std::map<MultiIndex, Expr> coeffs_;
};

// ---------------------------------------------------------------------------
// Operations

inline DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b) {
    require_same_chart(a.chart(), b.chart(), "wedge");
    DifferentialForm r(a.chart(), a.degree() + b.degree());
    if (r.degree() > a.chart().dim()) return r;  // zero form of that degree
    for (const auto& [ia, ca] : a.coefficients())
        for (const auto& [ib, cb] : b.coefficients()) {
            MultiIndex idx = ia;
            idx.insert(idx.end(), ib.begin(), ib.end());
            r.add_term(std::move(idx), ca * cb);
        }
    return r;
}

inline DifferentialForm exterior_derivative(const DifferentialForm& f) {
    DifferentialForm r(f.chart(), f.degree() + 1);
    if (r.degree() > f.chart().dim()) return r;
    for (const auto& [idx, c] : f.coefficients())
        for (int i = 0; i < f.chart().dim(); ++i) {
            Expr dc = differentiate(c, f.chart().name(i));
            if (dc.is_zero_constant()) continue;
            MultiIndex with = idx;
            with.insert(with.begin(), i);
            r.add_term(std::move(with), std::move(dc));
        }
    return r.simplify();
}

inline DifferentialForm interior_product(const VectorField& v, const DifferentialForm& f) {
    require_same_chart(v.chart(), f.chart(), "interior product");
    if (f.degree() == 0)
        throw std::invalid_argument("interior product with a degree-0 form");
    DifferentialForm r(f.chart(), f.degree() - 1);
    for (const auto& [idx, c] : f.coefficients())
        for (std::size_t pos = 0; pos < idx.size(); ++pos) {
            Expr vc = v.component(idx[pos]);
            if (vc.is_zero_constant()) continue;
            MultiIndex rest;
            rest.reserve(idx.size() - 1);
            for (std::size_t j = 0; j < idx.size(); ++j)
                if (j != pos) rest.push_back(idx[j]);
            Expr term = vc * c;
            if (pos % 2 == 1) term = -term;
            r.add_term(std::move(rest), std::move(term));
        }
    return r;
}

// Cartan formula; the direct component formula lives in the test tree
// as an independent oracle.
inline DifferentialForm lie_derivative(const VectorField& v, const DifferentialForm& f) {
    require_same_chart(v.chart(), f.chart(), "Lie derivative");
    if (f.degree() == 0) {
        Expr g;
        for (const auto& [idx, c] : f.coefficients()) g = g + v.apply(c);
        return DifferentialForm::function(f.chart(), simplified(g));
    }
    DifferentialForm a = interior_product(v, exterior_derivative(f));
    DifferentialForm b = exterior_derivative(interior_product(v, f));
    return (a + b).simplify();
}

inline VectorField lie_bracket(const VectorField& v, const VectorField& w) {
    require_same_chart(v.chart(), w.chart(), "Lie bracket");
    VectorField r(v.chart());
    for (int i = 0; i < v.chart().dim(); ++i) {
        Expr c = v.apply(w.component(i)) - w.apply(v.component(i));
        r.set(i, simplified(c));
    }
    return r;
}

// Map between charts: one target-coordinate expression per target
// coordinate, written in source coordinates.
class ChartMap {
public:
    ChartMap(Chart source, Chart target, std::vector<Expr> exprs)
        : source_(std::move(source)), target_(std::move(target)), exprs_(std::move(exprs)) {
        if (static_cast<int>(exprs_.size()) != target_.dim())
            throw std::invalid_argument("chart map needs one expression per target coordinate");
    }

    const Chart& source() const { return source_; }
    const Chart& target() const { return target_; }
    const Expr& expr(int target_index) const {
        return exprs_.at(static_cast<std::size_t>(target_index));
    }

    Expr pull_scalar(const Expr& f) const {
        std::map<std::string, Expr> repl;
        for (int i = 0; i < target_.dim(); ++i) repl[target_.name(i)] = exprs_[i];
        return substitute(f, repl);
    }

private:
    Chart source_;
    Chart target_;
    std::vector<Expr> exprs_;
};

inline DifferentialForm pullback(const ChartMap& m, const DifferentialForm& f) {
    if (f.chart() != m.target())
        throw std::invalid_argument("pullback: form does not live on the map's target chart");
    DifferentialForm r(m.source(), f.degree());
    if (f.degree() > m.source().dim()) return r;  // degree overflow: zero form
    // differentials of the component functions, as 1-forms on the source
    std::vector<DifferentialForm> dm;
    dm.reserve(static_cast<std::size_t>(m.target().dim()));
    for (int j = 0; j < m.target().dim(); ++j) {
        DifferentialForm dj(m.source(), 1);
        for (int i = 0; i < m.source().dim(); ++i) {
            Expr d = differentiate(m.expr(j), m.source().name(i));
            if (!d.is_zero_constant()) dj.add_term({i}, std::move(d));
        }
        dm.push_back(std::move(dj));
    }
    for (const auto& [idx, c] : f.coefficients()) {
        DifferentialForm term = DifferentialForm::function(m.source(), m.pull_scalar(c));
        for (int j : idx) term = wedge(term, dm[static_cast<std::size_t>(j)]);
        r = r + term;
    }
    return r.simplify();
}

// Full antisymmetrization: sum over permutations with sign of products
// of vector components against coefficients.
inline double evaluate_form(const DifferentialForm& f, const std::vector<VectorField>& vectors,
                            const Point& point) {
    if (static_cast<int>(vectors.size()) != f.degree())
        throw std::invalid_argument("evaluate_form: arity mismatch");
    for (const auto& v : vectors) require_same_chart(v.chart(), f.chart(), "evaluate_form");
    if (f.degree() == 0) {
        double s = 0;
        for (const auto& [idx, c] : f.coefficients()) s += evaluate(c, point);
        return s;
    }
    const int k = f.degree();
    // numeric components of each argument vector
    std::vector<std::map<int, double>> comp(vectors.size());
    for (std::size_t r = 0; r < vectors.size(); ++r)
        for (const auto& [i, e] : vectors[r].components()) comp[r][i] = evaluate(e, point);
    auto comp_at = [&](std::size_t r, int i) {
        auto it = comp[r].find(i);
        return it == comp[r].end() ? 0.0 : it->second;
    };
    double total = 0;
    std::vector<int> perm(static_cast<std::size_t>(k));
    for (const auto& [idx, c] : f.coefficients()) {
        for (int i = 0; i < k; ++i) perm[static_cast<std::size_t>(i)] = i;
        double sum = 0;
        // iterate permutations with sign via Heap's algorithm bookkeeping
        std::sort(perm.begin(), perm.end());
        do {
            int sign = 1;
            for (std::size_t i = 0; i < perm.size(); ++i)
                for (std::size_t j = i + 1; j < perm.size(); ++j)
                    if (perm[i] > perm[j]) sign = -sign;
            double prod = 1;
            for (std::size_t r = 0; r < perm.size(); ++r)
                prod *= comp_at(static_cast<std::size_t>(perm[r]), idx[r]);
            sum += sign * prod;
        } while (std::next_permutation(perm.begin(), perm.end()));
        total += evaluate(c, point) * sum;
    }
    return total;
}

// Componentwise zero test of a form.
inline ZeroVerdict is_zero_form(const DifferentialForm& f, const SampleConfig& cfg) {
    ZeroVerdict v = ZeroVerdict::proved_zero();
    for (const auto& [idx, c] : f.coefficients())
        v.merge(is_zero(c, f.chart().names(), cfg));
    return v;
}

// Radial homotopy primitive for closed polynomial k-forms (k >= 1):
// for each coefficient monomial of total degree D in a term b dx^J,
//   K(b dx^J) = 1/(D+k) * sum_r (-1)^{r-1} x_{j_r} b dx^{J \ j_r},
// so that d(K f) = f whenever df = 0.  Rejects non-polynomial input.
inline DifferentialForm polynomial_primitive(const DifferentialForm& f) {
    if (f.degree() < 1) throw std::invalid_argument("primitive of a 0-form");
    const Chart& chart = f.chart();
    const int k = f.degree();
    DifferentialForm r(chart, k - 1);
    for (const auto& [idx, c] : f.coefficients()) {
        NormalForm nf = normalize(c);
        for (const auto& [mono, coeff] : nf.terms) {
            int degree = 0;
            for (const auto& [atom, e] : mono) {
                if (atom.kind != Atom::Kind::Var || e < 0)
                    throw std::invalid_argument("primitive needs polynomial coefficients");
                degree += e;
            }
            Expr term = Expr::constant(coeff);
            for (const auto& [atom, e] : mono)
                term = term * Expr::power(Expr::variable(atom.var), e);
            const Expr scale = Expr::constant(Rational(1, degree + k));
            for (std::size_t pos = 0; pos < idx.size(); ++pos) {
                MultiIndex rest;
                for (std::size_t j = 0; j < idx.size(); ++j)
                    if (j != pos) rest.push_back(idx[j]);
                Expr piece = scale * Expr::variable(chart.name(idx[pos])) * term;
                if (pos % 2 == 1) piece = -piece;
                r.add_term(rest, piece);
            }
        }
    }
    return r.simplify();
}

}  // namespace plectic
