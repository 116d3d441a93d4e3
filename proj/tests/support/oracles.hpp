#pragma once

// Independent oracles used by the test suites.  These deliberately do
// not share code with the library paths they check.

#include "plectic/forms.hpp"

#include <vector>

namespace plectic::testing {

// Lie derivative by the direct component formula
//   (L_v f)_J = v^i д_i f_J + sum_r (д_{j_r} v^i) f_{J with j_r -> i}
// with antisymmetric lookup on the substituted index.
inline DifferentialForm lie_derivative_components(const VectorField& v,
                                                  const DifferentialForm& f) {
    const Chart& chart = f.chart();
    DifferentialForm r(chart, f.degree());
    if (f.degree() == 0) {
        Expr g;
        for (const auto& [idx, c] : f.coefficients())
            for (int i = 0; i < chart.dim(); ++i)
                g = g + v.component(i) * differentiate(c, chart.name(i));
        if (!g.is_zero_constant()) r.add_term({}, simplified(g));
        return r;
    }
    // enumerate strictly increasing multi-indices J of length deg
    std::vector<int> J(static_cast<std::size_t>(f.degree()));
    for (int i = 0; i < f.degree(); ++i) J[static_cast<std::size_t>(i)] = i;
    auto advance = [&]() {
        int k = f.degree() - 1;
        while (k >= 0 && J[static_cast<std::size_t>(k)] == chart.dim() - f.degree() + k) --k;
        if (k < 0) return false;
        ++J[static_cast<std::size_t>(k)];
        for (int l = k + 1; l < f.degree(); ++l)
            J[static_cast<std::size_t>(l)] = J[static_cast<std::size_t>(l - 1)] + 1;
        return true;
    };
    do {
        Expr term;
        const Expr fJ = f.coefficient(J);
        for (int i = 0; i < chart.dim(); ++i)
            term = term + v.component(i) * differentiate(fJ, chart.name(i));
        for (std::size_t ridx = 0; ridx < J.size(); ++ridx)
            for (int i = 0; i < chart.dim(); ++i) {
                MultiIndex sub = J;
                sub[ridx] = i;
                Expr fsub = f.coefficient(sub);  // signed lookup
                if (fsub.is_zero_constant()) continue;
                term = term + differentiate(v.component(i), chart.name(J[ridx])) * fsub;
            }
        term = simplified(term);
        if (!term.is_zero_constant()) r.add_term(J, term);
    } while (advance());
    return r;
}

// Random polynomial expressions / forms over a chart, deterministic in the seed.
struct RandomPoly {
    Rng rng;
    explicit RandomPoly(std::uint64_t seed) : rng(seed) {}

    Expr expr(const Chart& chart, int max_degree = 2, bool trig = false) {
        const int terms = 1 + static_cast<int>(rng.next() % 3);
        Expr e;
        for (int t = 0; t < terms; ++t) {
            Expr m = Expr::constant(static_cast<long>(rng.next() % 9) - 4);
            const int factors = static_cast<int>(rng.next() % (max_degree + 1));
            for (int k = 0; k < factors; ++k) {
                const int i = static_cast<int>(rng.next() % chart.dim());
                m = m * Expr::variable(chart.name(i));
            }
            if (trig && rng.next() % 3 == 0) {
                const int i = static_cast<int>(rng.next() % chart.dim());
                m = m * (rng.next() % 2 ? sin(Expr::variable(chart.name(i)))
                                        : cos(Expr::variable(chart.name(i))));
            }
            e = e + m;
        }
        return e;
    }

    DifferentialForm form(const Chart& chart, int degree, bool trig = false) {
        DifferentialForm f(chart, degree);
        const int terms = 1 + static_cast<int>(rng.next() % 3);
        for (int t = 0; t < terms; ++t) {
            MultiIndex idx;
            while (static_cast<int>(idx.size()) < degree) {
                int i = static_cast<int>(rng.next() % chart.dim());
                if (std::find(idx.begin(), idx.end(), i) == idx.end()) idx.push_back(i);
            }
            f.add_term(idx, expr(chart, 2, trig));
        }
        return f;
    }

    VectorField vector_field(const Chart& chart, bool trig = false) {
        VectorField v(chart);
        for (int i = 0; i < chart.dim(); ++i)
            if (rng.next() % 4 != 0) v.set(i, expr(chart, 2, trig));
        return v;
    }
};

}  // namespace plectic::testing
