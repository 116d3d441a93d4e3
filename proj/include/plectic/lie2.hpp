#pragma once

// The two Lie 2-algebras of observables on a 2-plectic manifold, their
// coherence-diagram verifier, and the isomorphism between them.
//
// Both algebras live on the 2-term complex Ham(X) <- C^inf(X) with the
// exterior derivative as differential.  Zero-chains are Hamiltonian
// 1-forms, one-chains are functions.  Diagram paths are composed as
// sums of 1-chain witnesses and certified zero.

#include "plectic/plectic_structure.hpp"
#include "plectic/report.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace plectic {

enum class Lie2Flavor { Hemistrict, Semistrict };

struct Lie2Algebra {
    Lie2Flavor flavor{Lie2Flavor::Hemistrict};
    std::shared_ptr<const PlecticStructure> P;
    SampleConfig cfg;

    // graded bracket: degrees (0,0) -> 0, (0,1) and (1,0) -> 1, (1,1) -> 0
    std::function<HamiltonianForm(const HamiltonianForm&, const HamiltonianForm&)> bracket00;
    std::function<Expr(const HamiltonianForm&, const Expr&)> bracket01;
    std::function<Expr(const Expr&, const HamiltonianForm&)> bracket10;
    // alternator S and Jacobiator J, valued in 1-chains
    std::function<Expr(const HamiltonianForm&, const HamiltonianForm&)> alternator;
    std::function<Expr(const HamiltonianForm&, const HamiltonianForm&, const HamiltonianForm&)>
        jacobiator;

    // differential of the complex: functions to Hamiltonian 1-forms, v = 0
    HamiltonianForm differential(const Expr& f) const {
        HamiltonianForm H;
        H.F = exterior_derivative(DifferentialForm::function(P->chart, f));
        H.v = VectorField(P->chart);
        // any exact form is Hamiltonian with vanishing field: d(df) + iota_0 omega = 0
        H.residual = is_zero_form(exterior_derivative(H.F), cfg);
        return H;
    }
};

inline Lie2Algebra build_hemistrict(std::shared_ptr<const PlecticStructure> P,
                                    const SampleConfig& cfg) {
    if (P->n != 2) throw std::invalid_argument("Lie 2-algebras need a 2-plectic structure");
    Lie2Algebra L;
    L.flavor = Lie2Flavor::Hemistrict;
    L.P = P;
    L.cfg = cfg;
    L.bracket00 = [P, cfg](const HamiltonianForm& F, const HamiltonianForm& G) {
        return hemi_bracket(*P, F, G, cfg);
    };
    L.bracket01 = [](const HamiltonianForm& F, const Expr& f) { return simplified(F.v.apply(f)); };
    L.bracket10 = [](const Expr&, const HamiltonianForm&) { return Expr::constant(0); };
    L.alternator = [](const HamiltonianForm& F, const HamiltonianForm& G) {
        Expr s = interior_product(F.v, G.F).coefficient({}) +
                 interior_product(G.v, F.F).coefficient({});
        return simplified(-s);
    };
    L.jacobiator = [](const HamiltonianForm&, const HamiltonianForm&, const HamiltonianForm&) {
        return Expr::constant(0);
    };
    return L;
}

inline Lie2Algebra build_semistrict(std::shared_ptr<const PlecticStructure> P,
                                    const SampleConfig& cfg) {
    if (P->n != 2) throw std::invalid_argument("Lie 2-algebras need a 2-plectic structure");
    Lie2Algebra L;
    L.flavor = Lie2Flavor::Semistrict;
    L.P = P;
    L.cfg = cfg;
    L.bracket00 = [P, cfg](const HamiltonianForm& F, const HamiltonianForm& G) {
        return semi_bracket(*P, F, G, cfg);
    };
    L.bracket01 = [](const HamiltonianForm&, const Expr&) { return Expr::constant(0); };
    L.bracket10 = [](const Expr&, const HamiltonianForm&) { return Expr::constant(0); };
    L.alternator = [](const HamiltonianForm&, const HamiltonianForm&) {
        return Expr::constant(0);
    };
    L.jacobiator = [P](const HamiltonianForm& F, const HamiltonianForm& G,
                       const HamiltonianForm& H) { return semi_jacobiator(*P, F, G, H); };
    return L;
}

// An arrow T : x -> y between 0-chains, meaning y = x + dT.
struct Morphism1Chain {
    HamiltonianForm source;
    HamiltonianForm target;
    Expr witness;

    ZeroVerdict validate(const Chart& chart, const SampleConfig& cfg) const {
        DifferentialForm dT =
            exterior_derivative(DifferentialForm::function(chart, witness));
        return is_zero_form(target.F - source.F - dT, cfg);
    }

    // ST : x -> z for arrows T : x -> y, S : y -> z; the 1-chain is S + T
    static Morphism1Chain compose(const Morphism1Chain& S, const Morphism1Chain& T) {
        return {T.source, S.target, simplified(S.witness + T.witness)};
    }
};

struct Lie2Battery {
    std::vector<HamiltonianForm> zero_chains;
    std::vector<Expr> one_chains;
};

// ---------------------------------------------------------------------------
// Coherence verification.  Each diagram is evaluated as a 1-chain
// identity over battery tuples; sources and targets of the alternator
// and Jacobiator arrows are validated through Morphism1Chain.

inline CheckReport verify_coherence(const Lie2Algebra& L, const Lie2Battery& battery,
                                    const SampleConfig& cfg) {
    if (battery.zero_chains.size() < 4 || battery.one_chains.size() < 2)
        throw std::invalid_argument("battery needs >= 4 Hamiltonian 0-chains and >= 2 1-chains");
    const Chart& chart = L.P->chart;
    const auto& names = chart.names();
    CheckReport report;
    report.suite = L.flavor == Lie2Flavor::Hemistrict ? "coherence hemistrict"
                                                      : "coherence semistrict";
    report.entry_key = "diagram";

    const std::size_t N = std::min<std::size_t>(battery.zero_chains.size(), 4);
    auto X = [&](std::size_t i) -> const HamiltonianForm& { return battery.zero_chains[i]; };

    // pairwise brackets, cached
    std::vector<std::vector<HamiltonianForm>> br(N, std::vector<HamiltonianForm>(N));
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) br[i][j] = L.bracket00(X(i), X(j));

    // chain-map law of the bracket in degree 1
    {
        ZeroVerdict v = ZeroVerdict::proved_zero();
        for (std::size_t i = 0; i < N; ++i)
            for (const auto& f : battery.one_chains) {
                HamiltonianForm df = L.differential(f);
                // d{x,f} = {x,df}
                DifferentialForm lhs = exterior_derivative(
                    DifferentialForm::function(chart, L.bracket01(X(i), f)));
                v.merge(is_zero_form(lhs - L.bracket00(X(i), df).F, cfg));
                // d{f,x} = {df,x}
                DifferentialForm lhs2 = exterior_derivative(
                    DifferentialForm::function(chart, L.bracket10(f, X(i))));
                v.merge(is_zero_form(lhs2 - L.bracket00(df, X(i)).F, cfg));
            }
        report.add("chain-map", v);
    }

    // alternator arrows S_{x,y} : [x,y] -> -[y,x]
    {
        ZeroVerdict v = ZeroVerdict::proved_zero();
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j) {
                Morphism1Chain s{br[i][j], -br[j][i], L.alternator(X(i), X(j))};
                v.merge(s.validate(chart, cfg));
            }
        report.add("alternator-endpoints", v);
    }

    // Jacobiator arrows J_{x,y,z} : [x,[y,z]] -> [[x,y],z] + [y,[x,z]]
    {
        ZeroVerdict v = ZeroVerdict::proved_zero();
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j)
                for (std::size_t k = 0; k < N; ++k) {
                    Morphism1Chain jm{L.bracket00(X(i), br[j][k]),
                                      L.bracket00(br[i][j], X(k)) + L.bracket00(X(j), br[i][k]),
                                      L.jacobiator(X(i), X(j), X(k))};
                    v.merge(jm.validate(chart, cfg));
                }
        report.add("jacobiator-endpoints", v);
    }

    // Diagram 1.  Hemistrict: every edge is built from the vanishing
    // Jacobiator, so each edge must be the identity arrow.  Semistrict:
    // the two Jacobiator identities from the semistrict construction.
    {
        ZeroVerdict v = ZeroVerdict::proved_zero();
        if (L.flavor == Lie2Flavor::Hemistrict) {
            for (std::size_t i = 0; i < N && v.ok(); ++i)
                for (std::size_t j = 0; j < N && v.ok(); ++j)
                    for (std::size_t k = 0; k < N && v.ok(); ++k) {
                        Expr J = L.jacobiator(X(i), X(j), X(k));
                        v.merge(is_zero(J, names, cfg));
                        v.merge(is_zero(L.bracket10(J, X(0)), names, cfg));
                        v.merge(is_zero(L.bracket01(X(0), J), names, cfg));
                    }
        } else {
            auto Jb = [&](const HamiltonianForm& a, const HamiltonianForm& b,
                          const HamiltonianForm& c) { return L.jacobiator(a, b, c); };
            for (std::size_t k = 0; k < N; ++k)
                for (std::size_t f = 0; f < N; ++f)
                    for (std::size_t g = 0; g < N; ++g)
                        for (std::size_t h = 0; h < N; ++h) {
                            const auto &K = X(k), &F = X(f), &G = X(g), &H = X(h);
                            const Expr LgJ = simplified(G.v.apply(Jb(K, F, H)));
                            // J_{[K,F],G,H} = J_{[H,K],F,G} - J_{[F,H],G,K} - L_{v_G} J_{K,F,H}
                            Expr first = Jb(br[k][f], G, H) - Jb(br[h][k], F, G) +
                                         Jb(br[f][h], G, K) + LgJ;
                            v.merge(is_zero(first, names, cfg));
                            // L_{v_G} J_{K,F,H} = J_{[G,K],F,H} + J_{K,[G,F],H} + J_{K,F,[G,H]}
                            Expr second = LgJ - Jb(br[g][k], F, H) - Jb(K, br[g][f], H) -
                                          Jb(K, F, br[g][h]);
                            v.merge(is_zero(second, names, cfg));
                        }
        }
        report.add("1", v);
    }

    // Diagram 2: [S_{x,y}, z] + J_{x,y,z} + J_{y,x,z} = 0
    {
        ZeroVerdict v = ZeroVerdict::proved_zero();
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j)
                for (std::size_t k = 0; k < N; ++k) {
                    Expr e = L.bracket10(L.alternator(X(i), X(j)), X(k)) +
                             L.jacobiator(X(i), X(j), X(k)) + L.jacobiator(X(j), X(i), X(k));
                    v.merge(is_zero(e, names, cfg));
                }
        report.add("2", v);
    }

    // Diagram 3: [x, S_{y,z}] - S_{[x,y],z} - S_{y,[x,z]} - J_{x,y,z} - J_{x,z,y} = 0
    {
        ZeroVerdict v = ZeroVerdict::proved_zero();
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j)
                for (std::size_t k = 0; k < N; ++k) {
                    Expr e = L.bracket01(X(i), L.alternator(X(j), X(k))) -
                             L.alternator(br[i][j], X(k)) - L.alternator(X(j), br[i][k]) -
                             L.jacobiator(X(i), X(j), X(k)) - L.jacobiator(X(i), X(k), X(j));
                    v.merge(is_zero(e, names, cfg));
                }
        report.add("3", v);
    }

    // Diagram 4: S_{x,[y,z]} - S_{[y,z],x} = 0 (the alternator is symmetric)
    {
        ZeroVerdict v = ZeroVerdict::proved_zero();
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j)
                for (std::size_t k = 0; k < N; ++k) {
                    Expr e = L.alternator(X(i), br[j][k]) - L.alternator(br[j][k], X(i));
                    v.merge(is_zero(e, names, cfg));
                }
        report.add("4", v);
    }

    return report;
}

// ---------------------------------------------------------------------------
// Homomorphisms (identity chain map, chain homotopy Phi)

struct Lie2Homomorphism {
    const Lie2Algebra* source = nullptr;
    const Lie2Algebra* target = nullptr;
    std::function<Expr(const HamiltonianForm&, const HamiltonianForm&)> Phi;
};

// fwd : L_h -> L_s with Phi_{F,G} = iota_{v_F} G, bwd the negative
inline std::pair<Lie2Homomorphism, Lie2Homomorphism> build_isomorphism(
    const Lie2Algebra& hemi, const Lie2Algebra& semi) {
    if (hemi.flavor != Lie2Flavor::Hemistrict || semi.flavor != Lie2Flavor::Semistrict)
        throw std::invalid_argument("build_isomorphism expects (hemistrict, semistrict)");
    Lie2Homomorphism fwd;
    fwd.source = &hemi;
    fwd.target = &semi;
    fwd.Phi = [](const HamiltonianForm& F, const HamiltonianForm& G) {
        return simplified(interior_product(F.v, G.F).coefficient({}));
    };
    Lie2Homomorphism bwd;
    bwd.source = &semi;
    bwd.target = &hemi;
    bwd.Phi = [](const HamiltonianForm& F, const HamiltonianForm& G) {
        return simplified(-interior_product(F.v, G.F).coefficient({}));
    };
    return {fwd, bwd};
}

inline CheckReport verify_homomorphism(const Lie2Homomorphism& hom, const Lie2Battery& battery,
                                       const SampleConfig& cfg) {
    const Lie2Algebra& S = *hom.source;
    const Lie2Algebra& T = *hom.target;
    const Chart& chart = S.P->chart;
    const auto& names = chart.names();
    CheckReport report;
    report.suite = S.flavor == Lie2Flavor::Hemistrict ? "homomorphism hemi->semi"
                                                      : "homomorphism semi->hemi";
    report.entry_key = "diagram";

    const std::size_t N = std::min<std::size_t>(battery.zero_chains.size(), 4);
    auto X = [&](std::size_t i) -> const HamiltonianForm& { return battery.zero_chains[i]; };

    std::vector<std::vector<HamiltonianForm>> brS(N, std::vector<HamiltonianForm>(N));
    std::vector<std::vector<HamiltonianForm>> brT(N, std::vector<HamiltonianForm>(N));
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) {
            brS[i][j] = S.bracket00(X(i), X(j));
            brT[i][j] = T.bracket00(X(i), X(j));
        }

    // chain homotopy in degree 0: Phi_{x,y} : [x,y]' -> [x,y]
    {
        ZeroVerdict v = ZeroVerdict::proved_zero();
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j) {
                Morphism1Chain phi{brT[i][j], brS[i][j], hom.Phi(X(i), X(j))};
                v.merge(phi.validate(chart, cfg));
            }
        report.add("chain-homotopy-deg0", v);
    }

    // degree 1: phi[x,f] - [x,f]' = Phi_{x,df} and phi[f,x] - [f,x]' = Phi_{df,x}
    {
        ZeroVerdict v = ZeroVerdict::proved_zero();
        for (std::size_t i = 0; i < N; ++i)
            for (const auto& f : battery.one_chains) {
                HamiltonianForm df = S.differential(f);
                Expr lhs = S.bracket01(X(i), f) - T.bracket01(X(i), f);
                v.merge(is_zero(lhs - hom.Phi(X(i), df), names, cfg));
                Expr lhs2 = S.bracket10(f, X(i)) - T.bracket10(f, X(i));
                v.merge(is_zero(lhs2 - hom.Phi(df, X(i)), names, cfg));
            }
        report.add("chain-homotopy-deg1", v);
    }

    // alternator square: Phi_{x,y} + Phi_{y,x} + S_{x,y} - S'_{x,y} = 0
    {
        ZeroVerdict v = ZeroVerdict::proved_zero();
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j) {
                Expr e = hom.Phi(X(i), X(j)) + hom.Phi(X(j), X(i)) +
                         S.alternator(X(i), X(j)) - T.alternator(X(i), X(j));
                v.merge(is_zero(e, names, cfg));
            }
        report.add("alternator-square", v);
    }

    // Jacobiator hexagon:
    //   [x, Phi_{y,z}]' + Phi_{x,[y,z]} + J_{x,y,z}
    //     = J'_{x,y,z} + [Phi_{x,y}, z]' + [y, Phi_{x,z}]' + Phi_{[x,y],z} + Phi_{y,[x,z]}
    // with [.,.] the source bracket and primes in the target.
    {
        ZeroVerdict v = ZeroVerdict::proved_zero();
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j)
                for (std::size_t k = 0; k < N; ++k) {
                    Expr lhs = T.bracket01(X(i), hom.Phi(X(j), X(k))) +
                               hom.Phi(X(i), brS[j][k]) + S.jacobiator(X(i), X(j), X(k));
                    Expr rhs = T.jacobiator(X(i), X(j), X(k)) +
                               T.bracket10(hom.Phi(X(i), X(j)), X(k)) +
                               T.bracket01(X(j), hom.Phi(X(i), X(k))) +
                               hom.Phi(brS[i][j], X(k)) + hom.Phi(X(j), brS[i][k]);
                    v.merge(is_zero(lhs - rhs, names, cfg));
                }
        report.add("jacobiator-hexagon", v);
    }

    return report;
}

// Composite of the two isomorphism halves must be the identity
// homomorphism: the chain homotopies sum to zero.
inline CheckReport verify_composite_identity(const Lie2Homomorphism& fwd,
                                             const Lie2Homomorphism& bwd,
                                             const Lie2Battery& battery,
                                             const SampleConfig& cfg) {
    CheckReport report;
    report.suite = "isomorphism composite";
    report.entry_key = "diagram";
    const auto& names = fwd.source->P->chart.names();
    const std::size_t N = std::min<std::size_t>(battery.zero_chains.size(), 4);
    ZeroVerdict v = ZeroVerdict::proved_zero();
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) {
            Expr e = fwd.Phi(battery.zero_chains[i], battery.zero_chains[j]) +
                     bwd.Phi(battery.zero_chains[i], battery.zero_chains[j]);
            v.merge(is_zero(e, names, cfg));
        }
    report.add("composite-identity", v);
    return report;
}

// ---------------------------------------------------------------------------
// Default batteries

namespace detail {

inline HamiltonianForm solve_battery_form(const PlecticStructure& P, const DifferentialForm& F,
                                          const SampleConfig& cfg) {
    auto r = hamiltonian_vector_field(P, F, cfg);
    if (!is_hamiltonian(r))
        throw std::runtime_error("battery construction produced a non-Hamiltonian form");
    return get_hamiltonian(r);
}

}  // namespace detail

// The documented defaults: the R^3 volume battery when the chart is
// (x,y,z); the string phase-space battery when the chart carries
// (q0,q1,...,e); otherwise linear forms obtained by integrating
// iota_{d/dx^k} omega with the radial homotopy.
inline Lie2Battery default_battery(const PlecticStructure& P, const SampleConfig& cfg) {
    Lie2Battery b;
    const Chart& chart = P.chart;
    auto named_form = [&](std::initializer_list<std::pair<const char*, const char*>> terms) {
        DifferentialForm f(chart, 1);
        for (const auto& [coeff, dcoord] : terms)
            f.add_term({*chart.index(dcoord)}, parse_expr(coeff, chart.names()));
        return f;
    };

    if (chart.index("x") && chart.index("y") && chart.index("z") && chart.dim() == 3) {
        b.zero_chains.push_back(detail::solve_battery_form(P, named_form({{"x", "y"}}), cfg));
        b.zero_chains.push_back(detail::solve_battery_form(P, named_form({{"y", "z"}}), cfg));
        b.zero_chains.push_back(detail::solve_battery_form(P, named_form({{"z", "x"}}), cfg));
        b.zero_chains.push_back(
            detail::solve_battery_form(P, named_form({{"x^2 + y", "z"}}), cfg));
        b.one_chains.push_back(parse_expr("x", chart.names()));
        b.one_chains.push_back(parse_expr("x*y", chart.names()));
        return b;
    }
    if (chart.index("q0") && chart.index("q1") && chart.index("e") && chart.index("u0")) {
        // degree-<=2 polynomial coefficient 1-forms on the string phase space
        std::vector<DifferentialForm> forms;
        {
            // H = -e dq1 - p1_a du^a
            DifferentialForm H(chart, 1);
            H.add_term({*chart.index("q1")}, -Expr::variable("e"));
            for (int a = 0; chart.index("u" + std::to_string(a)); ++a)
                H.add_term({*chart.index("u" + std::to_string(a))},
                           -Expr::variable("p1_" + std::to_string(a)));
            forms.push_back(H);
        }
        forms.push_back(named_form({{"-q0", "q1"}}));                     // v = d/de
        forms.push_back(named_form({{"-u0", "q1"}}));                     // v = d/dp0_0
        forms.push_back(named_form({{"u0*p0_0", "q1"}, {"-u0*p1_0", "q0"}}));  // quadratic
        for (auto& f : forms)
            b.zero_chains.push_back(detail::solve_battery_form(P, f, cfg));
        b.one_chains.push_back(parse_expr("u0", chart.names()));
        b.one_chains.push_back(parse_expr("q0*p0_0", chart.names()));
        return b;
    }
    // generic constant-coefficient fallback
    int added = 0;
    for (int k = 0; k < chart.dim() && added < 4; ++k) {
        DifferentialForm c = interior_product(VectorField::coordinate(chart, k), P.omega);
        if (c.empty()) continue;
        DifferentialForm F = -polynomial_primitive(c);
        b.zero_chains.push_back(detail::solve_battery_form(P, F, cfg));
        ++added;
    }
    if (added < 4) throw std::runtime_error("could not assemble a default battery");
    b.one_chains.push_back(Expr::variable(chart.name(0)));
    b.one_chains.push_back(Expr::variable(chart.name(0)) * Expr::variable(chart.name(1)));
    return b;
}

}  // namespace plectic
