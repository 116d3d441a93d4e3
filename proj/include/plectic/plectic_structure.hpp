#pragma once

// n-plectic structures and their observables: closedness and sampled
// nondegeneracy certificates, the Hamiltonian vector-field solver, the
// hemi- and semi-brackets with their residual checks, and generators
// for the standard phase-space fixtures.

#include "plectic/forms.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace plectic {

struct CertificationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NondegeneracyCertificate {
    bool passed = false;
    int points = 0;
    double tol = 1e-8;
    double min_singular_value = 0.0;
    Point witness;                     // sample point of failure, if any
    std::vector<double> kernel;       // near-kernel direction at the witness
};

// Columns are coordinate directions, rows the degree-n multi-indices of
// iota_v omega; entry (J, k) is the coefficient of dx^J in iota_{d/dx^k} omega.
struct ContractionMatrix {
    std::vector<MultiIndex> rows;
    std::vector<std::vector<Expr>> entries;  // entries[r][k]

    int row_count() const { return static_cast<int>(rows.size()); }
    int col_count() const { return entries.empty() ? 0 : static_cast<int>(entries[0].size()); }
};

inline ContractionMatrix contraction_matrix(const DifferentialForm& omega) {
    const Chart& chart = omega.chart();
    const int m = chart.dim();
    ContractionMatrix A;
    std::map<MultiIndex, std::size_t> row_of;
    std::vector<DifferentialForm> columns;
    columns.reserve(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k)
        columns.push_back(interior_product(VectorField::coordinate(chart, k), omega));
    for (const auto& col : columns)
        for (const auto& [idx, c] : col.coefficients())
            if (!row_of.count(idx)) {
                row_of.emplace(idx, A.rows.size());
                A.rows.push_back(idx);
            }
    A.entries.assign(A.rows.size(), std::vector<Expr>(static_cast<std::size_t>(m)));
    for (int k = 0; k < m; ++k)
        for (const auto& [idx, c] : columns[static_cast<std::size_t>(k)].coefficients())
            A.entries[row_of[idx]][static_cast<std::size_t>(k)] = simplified(c);
    return A;
}

inline ZeroVerdict check_closed(const DifferentialForm& omega, const SampleConfig& cfg) {
    return is_zero_form(exterior_derivative(omega), cfg);
}

inline NondegeneracyCertificate check_nondegenerate(const DifferentialForm& omega, int n,
                                                    const SampleConfig& cfg,
                                                    double rank_tol = 1e-8) {
    (void)n;
    const Chart& chart = omega.chart();
    const int m = chart.dim();
    ContractionMatrix A = contraction_matrix(omega);

    NondegeneracyCertificate cert;
    cert.points = cfg.points;
    cert.tol = rank_tol;
    cert.min_singular_value = std::numeric_limits<double>::infinity();

    for (int i = 0; i < cfg.points; ++i) {
        const Point p = sample_point(chart.names(), cfg, static_cast<std::uint64_t>(i));
        Eigen::MatrixXd M(std::max(A.row_count(), 1), m);
        M.setZero();
        for (int r = 0; r < A.row_count(); ++r)
            for (int k = 0; k < m; ++k) {
                const Expr& e = A.entries[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)];
                M(r, k) = e.is_zero_constant() ? 0.0 : evaluate(e, p);
            }
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeFullV);
        const double smin =
            M.rows() >= m ? svd.singularValues()(m - 1) : 0.0;  // fewer rows: rank < m
        if (smin < cert.min_singular_value) cert.min_singular_value = smin;
        if (smin <= rank_tol) {
            cert.passed = false;
            cert.witness = p;
            Eigen::VectorXd kern = svd.matrixV().col(m - 1);
            cert.kernel.assign(kern.data(), kern.data() + m);
            return cert;
        }
    }
    cert.passed = true;
    return cert;
}

struct PlecticStructure {
    Chart chart;
    int n = 2;                 // plectic degree; omega has degree n + 1
    DifferentialForm omega;
    std::optional<DifferentialForm> alpha;  // potential with omega = d(alpha), when known
    ZeroVerdict closed;
    NondegeneracyCertificate certificate;

    // Certifying factory: throws unless omega is closed and passes the
    // sampled nondegeneracy check.
    static PlecticStructure certify(Chart chart, DifferentialForm omega, int n,
                                    const SampleConfig& cfg, double rank_tol = 1e-8) {
        PlecticStructure P = unchecked(std::move(chart), std::move(omega), n);
        P.closed = check_closed(P.omega, cfg);
        if (!P.closed.ok())
            throw CertificationError("omega is not closed (witness residual " +
                                     std::to_string(P.closed.witness_value) + ")");
        P.certificate = check_nondegenerate(P.omega, n, cfg, rank_tol);
        if (!P.certificate.passed)
            throw CertificationError("omega failed the nondegeneracy check (min singular value " +
                                     std::to_string(P.certificate.min_singular_value) + ")");
        return P;
    }

    // No certification; for deliberately degenerate fixtures.
    static PlecticStructure unchecked(Chart chart, DifferentialForm omega, int n) {
        if (omega.degree() != n + 1)
            throw std::invalid_argument("omega must have degree n + 1");
        PlecticStructure P;
        P.chart = std::move(chart);
        P.n = n;
        P.omega = omega.simplify();
        return P;
    }
};

struct HamiltonianForm {
    DifferentialForm F;   // degree n - 1
    VectorField v;        // the Hamiltonian vector field
    ZeroVerdict residual; // for dF + iota_v omega

    friend HamiltonianForm operator+(const HamiltonianForm& a, const HamiltonianForm& b) {
        HamiltonianForm r;
        r.F = a.F + b.F;
        r.v = a.v + b.v;
        r.residual = a.residual;
        r.residual.merge(b.residual);
        return r;
    }
    friend HamiltonianForm operator-(const HamiltonianForm& a) {
        HamiltonianForm r;
        r.F = -a.F;
        r.v = -a.v;
        r.residual = a.residual;
        return r;
    }
    friend HamiltonianForm operator-(const HamiltonianForm& a, const HamiltonianForm& b) {
        return a + (-b);
    }
};

struct NotHamiltonian {
    Point worst_point;
    double worst_residual = 0.0;
    std::string detail;
};

using HamiltonianResult = std::variant<HamiltonianForm, NotHamiltonian>;

inline bool is_hamiltonian(const HamiltonianResult& r) {
    return std::holds_alternative<HamiltonianForm>(r);
}
inline const HamiltonianForm& get_hamiltonian(const HamiltonianResult& r) {
    return std::get<HamiltonianForm>(r);
}

namespace detail {

// Numeric least-squares residual of dF + iota_v omega = 0 over sample
// points; used to attach a worst point to NotHamiltonian verdicts.
inline NotHamiltonian worst_residual_report(const ContractionMatrix& A,
                                            const std::vector<Expr>& rhs, const Chart& chart,
                                            const SampleConfig& cfg) {
    NotHamiltonian out;
    for (int i = 0; i < cfg.points; ++i) {
        const Point p = sample_point(chart.names(), cfg, static_cast<std::uint64_t>(i));
        Eigen::MatrixXd M(A.row_count(), A.col_count());
        Eigen::VectorXd b(A.row_count());
        for (int r = 0; r < A.row_count(); ++r) {
            for (int k = 0; k < A.col_count(); ++k) {
                const Expr& e = A.entries[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)];
                M(r, k) = e.is_zero_constant() ? 0.0 : evaluate(e, p);
            }
            b(r) = rhs[static_cast<std::size_t>(r)].is_zero_constant()
                       ? 0.0
                       : evaluate(rhs[static_cast<std::size_t>(r)], p);
        }
        Eigen::VectorXd sol = M.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(b);
        const double scale = std::max(1.0, b.norm());
        const double res = (M * sol - b).norm() / scale;
        if (res >= out.worst_residual) {
            out.worst_residual = res;
            out.worst_point = p;
        }
    }
    out.detail = "dF is not in the image of the contraction map";
    return out;
}

}  // namespace detail

// Solve dF = -iota_{v_F} omega for v_F.  When the contraction matrix has
// constant entries the system is solved exactly over the rationals and
// every remaining row is certified zero; otherwise a caller-supplied
// candidate is verified symbolically.
inline HamiltonianResult hamiltonian_vector_field(
    const PlecticStructure& P, const DifferentialForm& F, const SampleConfig& cfg,
    const std::optional<VectorField>& candidate = std::nullopt, double residual_tol = 1e-8) {
    require_same_chart(P.chart, F.chart(), "hamiltonian_vector_field");
    if (F.degree() != P.n - 1)
        throw std::invalid_argument("hamiltonian_vector_field: F must have degree n - 1");

    const int m = P.chart.dim();
    ContractionMatrix A = contraction_matrix(P.omega);
    const DifferentialForm dF = exterior_derivative(F);

    // right-hand side b_J = -(dF)_J aligned with A's rows, plus any dF
    // components outside A's row support (those must vanish identically)
    std::vector<Expr> rhs(A.rows.size());
    {
        std::map<MultiIndex, std::size_t> row_of;
        for (std::size_t r = 0; r < A.rows.size(); ++r) row_of.emplace(A.rows[r], r);
        for (const auto& [idx, c] : dF.coefficients()) {
            auto it = row_of.find(idx);
            if (it == row_of.end()) {
                auto v = is_zero(c, P.chart.names(), cfg);
                if (!v.ok()) {
                    NotHamiltonian nh;
                    nh.worst_point = v.witness;
                    nh.worst_residual = std::abs(v.witness_value);
                    nh.detail = "dF has a component outside the image of the contraction map";
                    return nh;
                }
            } else {
                rhs[it->second] = simplified(-c);
            }
        }
    }

    auto certify = [&](VectorField v) -> HamiltonianResult {
        HamiltonianForm H;
        H.F = F.simplify();
        H.v = v.simplified_components();
        DifferentialForm res = exterior_derivative(H.F) + interior_product(H.v, P.omega);
        H.residual = is_zero_form(res, cfg.with_tol(residual_tol));
        if (!H.residual.ok()) {
            NotHamiltonian nh;
            nh.worst_point = H.residual.witness;
            nh.worst_residual = std::abs(H.residual.witness_value);
            nh.detail = "residual dF + iota_v omega is nonzero";
            return nh;
        }
        return H;
    };

    if (candidate) return certify(*candidate);

    // constant-entry test
    bool constant = true;
    std::vector<std::vector<Rational>> Ar(A.rows.size(),
                                          std::vector<Rational>(static_cast<std::size_t>(m)));
    for (std::size_t r = 0; r < A.rows.size() && constant; ++r)
        for (int k = 0; k < m; ++k) {
            NormalForm nf = normalize(A.entries[r][static_cast<std::size_t>(k)]);
            if (!nf.is_constant()) {
                constant = false;
                break;
            }
            Ar[r][static_cast<std::size_t>(k)] = nf.constant_value();
        }

    if (!constant) {
        NotHamiltonian probe = detail::worst_residual_report(A, rhs, P.chart, cfg);
        if (probe.worst_residual > residual_tol) return probe;
        throw std::runtime_error(
            "hamiltonian_vector_field: contraction matrix is not constant; "
            "supply a candidate vector field to verify");
    }

    // exact Gauss-Jordan on [Ar | rhs], eliminating with rational pivots
    std::vector<Expr> b = rhs;
    std::vector<int> pivot_row_of_col(static_cast<std::size_t>(m), -1);
    std::size_t rank = 0;
    for (int col = 0; col < m && rank < A.rows.size(); ++col) {
        std::size_t piv = rank;
        while (piv < A.rows.size() && Ar[piv][static_cast<std::size_t>(col)] == 0) ++piv;
        if (piv == A.rows.size()) continue;
        std::swap(Ar[piv], Ar[rank]);
        std::swap(b[piv], b[rank]);
        const Rational p = Ar[rank][static_cast<std::size_t>(col)];
        for (int k = 0; k < m; ++k) Ar[rank][static_cast<std::size_t>(k)] /= p;
        b[rank] = Expr::constant(Rational(1) / p) * b[rank];
        for (std::size_t r = 0; r < A.rows.size(); ++r) {
            if (r == rank) continue;
            const Rational f = Ar[r][static_cast<std::size_t>(col)];
            if (f == 0) continue;
            for (int k = 0; k < m; ++k)
                Ar[r][static_cast<std::size_t>(k)] -= f * Ar[rank][static_cast<std::size_t>(k)];
            b[r] = simplified(b[r] - Expr::constant(f) * b[rank]);
        }
        pivot_row_of_col[static_cast<std::size_t>(col)] = static_cast<int>(rank);
        ++rank;
    }

    // rows eliminated to zero must carry a zero right-hand side
    for (std::size_t r = rank; r < A.rows.size(); ++r) {
        auto v = is_zero(b[r], P.chart.names(), cfg);
        if (!v.ok()) {
            NotHamiltonian nh = detail::worst_residual_report(A, rhs, P.chart, cfg);
            if (nh.worst_residual == 0.0) {
                nh.worst_point = v.witness;
                nh.worst_residual = std::abs(v.witness_value);
            }
            return nh;
        }
    }

    VectorField v(P.chart);
    for (int col = 0; col < m; ++col) {
        const int r = pivot_row_of_col[static_cast<std::size_t>(col)];
        if (r >= 0) v.set(col, b[static_cast<std::size_t>(r)]);
        // free columns (degenerate omega) stay zero
    }
    return certify(v);
}

// ---------------------------------------------------------------------------
// Brackets (Definitions 3.3 / 3.4) and the residuals of Props 1-5.

inline HamiltonianForm hemi_bracket(const PlecticStructure& P, const HamiltonianForm& F,
                                    const HamiltonianForm& G, const SampleConfig& cfg) {
    HamiltonianForm H;
    H.F = lie_derivative(F.v, G.F).simplify();
    H.v = lie_bracket(F.v, G.v);
    DifferentialForm res = exterior_derivative(H.F) + interior_product(H.v, P.omega);
    H.residual = is_zero_form(res, cfg);
    if (!H.residual.ok())
        throw CertificationError("hemi bracket failed its Hamiltonian certificate");
    return H;
}

inline HamiltonianForm semi_bracket(const PlecticStructure& P, const HamiltonianForm& F,
                                    const HamiltonianForm& G, const SampleConfig& cfg) {
    HamiltonianForm H;
    H.F = interior_product(G.v, interior_product(F.v, P.omega)).simplify();
    H.v = lie_bracket(F.v, G.v);
    DifferentialForm res = exterior_derivative(H.F) + interior_product(H.v, P.omega);
    H.residual = is_zero_form(res, cfg);
    if (!H.residual.ok())
        throw CertificationError("semi bracket failed its Hamiltonian certificate");
    return H;
}

// {F,G}_h - {F,G}_s - d iota_{v_F} G
inline ZeroVerdict bracket_relation_residual(const PlecticStructure& P, const HamiltonianForm& F,
                                             const HamiltonianForm& G, const SampleConfig& cfg) {
    DifferentialForm lhs = hemi_bracket(P, F, G, cfg).F;
    DifferentialForm rhs = semi_bracket(P, F, G, cfg).F +
                           exterior_derivative(interior_product(F.v, G.F));
    return is_zero_form(lhs - rhs, cfg);
}

// L_{v_F} omega
inline ZeroVerdict liouville_residual(const PlecticStructure& P, const HamiltonianForm& F,
                                      const SampleConfig& cfg) {
    return is_zero_form(lie_derivative(F.v, P.omega), cfg);
}

// {F,{G,H}} - {{F,G},H} - {G,{F,H}}
inline ZeroVerdict jacobi_hemi_residual(const PlecticStructure& P, const HamiltonianForm& F,
                                        const HamiltonianForm& G, const HamiltonianForm& H,
                                        const SampleConfig& cfg) {
    auto FGH = hemi_bracket(P, F, hemi_bracket(P, G, H, cfg), cfg).F;
    auto FG_H = hemi_bracket(P, hemi_bracket(P, F, G, cfg), H, cfg).F;
    auto G_FH = hemi_bracket(P, G, hemi_bracket(P, F, H, cfg), cfg).F;
    return is_zero_form(FGH - FG_H - G_FH, cfg);
}

// J_{F,G,H} = -iota_{v_F} iota_{v_G} iota_{v_H} omega, a function
inline Expr semi_jacobiator(const PlecticStructure& P, const HamiltonianForm& F,
                            const HamiltonianForm& G, const HamiltonianForm& H) {
    DifferentialForm j =
        interior_product(F.v, interior_product(G.v, interior_product(H.v, P.omega)));
    Expr e;
    for (const auto& [idx, c] : j.coefficients()) e = e + c;
    return simplified(-e);
}

// {F,{G,H}} + dJ - {{F,G},H} - {G,{F,H}}
inline ZeroVerdict jacobi_semi_defect(const PlecticStructure& P, const HamiltonianForm& F,
                                      const HamiltonianForm& G, const HamiltonianForm& H,
                                      const SampleConfig& cfg) {
    auto FGH = semi_bracket(P, F, semi_bracket(P, G, H, cfg), cfg).F;
    auto FG_H = semi_bracket(P, semi_bracket(P, F, G, cfg), H, cfg).F;
    auto G_FH = semi_bracket(P, G, semi_bracket(P, F, H, cfg), cfg).F;
    Expr J = semi_jacobiator(P, F, G, H);
    auto dJ = exterior_derivative(DifferentialForm::function(P.chart, J));
    return is_zero_form(FGH + dJ - FG_H - G_FH, cfg);
}

// ---------------------------------------------------------------------------
// Generators for the standard examples.

// volume form dx^1 ^ ... ^ dx^m on an m-dimensional chart; (m-1)-plectic
inline PlecticStructure make_volume_plectic(int m, const SampleConfig& cfg) {
    if (m < 2) throw std::invalid_argument("volume fixture needs dimension >= 2");
    std::vector<std::string> names;
    if (m <= 4) {
        const char* xyzw[] = {"x", "y", "z", "w"};
        for (int i = 0; i < m; ++i) names.emplace_back(xyzw[i]);
    } else {
        for (int i = 1; i <= m; ++i) names.push_back("x" + std::to_string(i));
    }
    Chart chart(names);
    DifferentialForm omega(chart, m);
    MultiIndex all(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) all[static_cast<std::size_t>(i)] = i;
    omega.add_term(all, Expr::constant(1));
    return PlecticStructure::certify(chart, omega, m - 1, cfg);
}

// Lambda^n T* R^d with alpha = p_I dq^I and omega = d(alpha)
inline PlecticStructure make_exterior_power_phase_space(int d, int n, const SampleConfig& cfg) {
    if (n < 1 || d < n) throw std::invalid_argument("need 1 <= n <= d");
    if (d > 9) throw std::invalid_argument("multi-index naming supports d <= 9");
    std::vector<std::string> names;
    for (int i = 1; i <= d; ++i) names.push_back("q" + std::to_string(i));
    std::vector<MultiIndex> subsets;
    {
        MultiIndex I(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) I[static_cast<std::size_t>(i)] = i;
        for (;;) {
            subsets.push_back(I);
            int k = n - 1;
            while (k >= 0 && I[static_cast<std::size_t>(k)] == d - n + k) --k;
            if (k < 0) break;
            ++I[static_cast<std::size_t>(k)];
            for (int l = k + 1; l < n; ++l)
                I[static_cast<std::size_t>(l)] = I[static_cast<std::size_t>(l - 1)] + 1;
        }
    }
    for (const auto& I : subsets) {
        std::string nm = "p_";
        for (int i : I) nm += std::to_string(i + 1);
        names.push_back(nm);
    }
    Chart chart(names);
    DifferentialForm alpha(chart, n);
    for (std::size_t s = 0; s < subsets.size(); ++s) {
        MultiIndex idx = subsets[s];
        alpha.add_term(idx, Expr::variable(chart.name(d + static_cast<int>(s))));
    }
    PlecticStructure P =
        PlecticStructure::certify(chart, exterior_derivative(alpha), n, cfg);
    P.alpha = alpha;
    return P;
}

// First cojet bundle coordinates (Example of the canonical theta):
// chart (q^i, u^a, P^i_a, P), vol = dq^1 ^ ... ^ dq^n,
// theta = P dQ + P^i_a dQ_i^a with dQ = vol, dQ_i^a = (iota_{d/dq^i} vol) ^ du^a.
inline PlecticStructure make_cojet_phase_space(int n, int d, const SampleConfig& cfg) {
    if (n < 1 || d < 1) throw std::invalid_argument("need n, d >= 1");
    std::vector<std::string> names;
    for (int i = 1; i <= n; ++i) names.push_back("q" + std::to_string(i));
    for (int a = 1; a <= d; ++a) names.push_back("u" + std::to_string(a));
    for (int i = 1; i <= n; ++i)
        for (int a = 1; a <= d; ++a)
            names.push_back("P" + std::to_string(i) + "_" + std::to_string(a));
    names.push_back("P");
    Chart chart(names);

    DifferentialForm vol(chart, n);
    MultiIndex qidx(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) qidx[static_cast<std::size_t>(i)] = i;
    vol.add_term(qidx, Expr::constant(1));

    const int P_index = chart.dim() - 1;
    DifferentialForm theta = Expr::variable(chart.name(P_index)) * vol;
    for (int i = 0; i < n; ++i)
        for (int a = 0; a < d; ++a) {
            const int pia = n + d + i * d + a;
            DifferentialForm dQia =
                wedge(interior_product(VectorField::coordinate(chart, i), vol),
                      DifferentialForm::d_coordinate(chart, n + a));
            theta = theta + Expr::variable(chart.name(pia)) * dQia;
        }
    PlecticStructure P = PlecticStructure::certify(chart, exterior_derivative(theta), n, cfg);
    P.alpha = theta.simplify();
    return P;
}

// Constant 3-form omega_{ijk} = kappa_{il} c^l_{jk} on the Lie-algebra chart.
// c[k][i][j] holds the structure constants c^k_{ij}.
inline PlecticStructure make_lie_algebra_plectic(
    const std::vector<std::vector<std::vector<Rational>>>& c,
    const std::vector<std::vector<Rational>>& kappa, const SampleConfig& cfg) {
    const int g = static_cast<int>(kappa.size());
    if (g < 3) throw std::invalid_argument("need dimension >= 3");
    auto omega_t = [&](int i, int j, int k) {
        Rational s = 0;
        for (int l = 0; l < g; ++l)
            s += kappa[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)] *
                 c[static_cast<std::size_t>(l)][static_cast<std::size_t>(j)]
                  [static_cast<std::size_t>(k)];
        return s;
    };
    // total antisymmetry of the resulting tensor (fails for non-invariant pairings)
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j)
            for (int k = 0; k < g; ++k) {
                if (omega_t(i, j, k) != -omega_t(j, i, k) ||
                    omega_t(i, j, k) != -omega_t(i, k, j))
                    throw std::invalid_argument(
                        "pairing and structure constants give a non-antisymmetric 3-form");
            }
    std::vector<std::string> names;
    if (g <= 4) {
        const char* xyzw[] = {"x", "y", "z", "w"};
        for (int i = 0; i < g; ++i) names.emplace_back(xyzw[i]);
    } else {
        for (int i = 1; i <= g; ++i) names.push_back("x" + std::to_string(i));
    }
    Chart chart(names);
    DifferentialForm omega(chart, 3);
    for (int i = 0; i < g; ++i)
        for (int j = i + 1; j < g; ++j)
            for (int k = j + 1; k < g; ++k) {
                const Rational w = omega_t(i, j, k);
                if (w != 0) omega.add_term({i, j, k}, Expr::constant(w));
            }
    return PlecticStructure::certify(chart, omega, 2, cfg);
}

// su(2) with Levi-Civita structure constants and kappa = -2 delta
inline PlecticStructure make_su2_plectic(const SampleConfig& cfg) {
    std::vector<std::vector<std::vector<Rational>>> c(
        3, std::vector<std::vector<Rational>>(3, std::vector<Rational>(3, 0)));
    auto eps = [](int i, int j, int k) -> int {
        if (i == j || j == k || i == k) return 0;
        return ((j - i + 3) % 3 == 1 && (k - j + 3) % 3 == 1) ? 1 : -1;
    };
    for (int k = 0; k < 3; ++k)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                c[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)]
                 [static_cast<std::size_t>(j)] = eps(i, j, k);
    std::vector<std::vector<Rational>> kappa(3, std::vector<Rational>(3, 0));
    for (int i = 0; i < 3; ++i)
        kappa[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = -2;
    return make_lie_algebra_plectic(c, kappa, cfg);
}

}  // namespace plectic
