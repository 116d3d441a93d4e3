#pragma once

// The classical bosonic string on its extended phase space: canonical
// theta and omega in the (q^i, u^a, p^i_a, e) coordinates, DeDonder-Weyl
// Hamiltonian, worldsheet leapfrog integration on the periodic grid,
// the multisymplectic solution criterion, energy observables, and the
// B-field-modified 2-plectic structure with its Kalb-Ramond force.
//
// Conventions follow the source formulas exactly: worldsheet metric
// g = diag(1,-1), target metric eta = diag(1,-1,...,-1).  The energy
// density can be negative for spacelike excitations; the signed value
// is conserved and reported as-is.

#include "plectic/lie2.hpp"
#include "plectic/plectic_structure.hpp"

#include <cmath>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace plectic {

inline std::vector<double> minkowski_metric(int d) {
    std::vector<double> eta(static_cast<std::size_t>(d), -1.0);
    eta[0] = 1.0;
    return eta;
}

struct StringPhaseSpace {
    int d = 1;                   // target dimension
    Chart chart;                 // (q0, q1, u0..u{d-1}, p0_0.., p1_0.., e)
    DifferentialForm theta;      // canonical 2-form
    DifferentialForm omega;      // d(theta), certified 2-plectic
    Expr h;                      // DeDonder-Weyl Hamiltonian
    PlecticStructure P;

    int q0() const { return 0; }
    int q1() const { return 1; }
    int u(int a) const { return 2 + a; }
    int p0(int a) const { return 2 + d + a; }
    int p1(int a) const { return 2 + 2 * d + a; }
    int e() const { return 2 + 3 * d; }
};

// chart (q^0, q^1, u^a, p^0_a, p^1_a, e), theta and omega per the
// displayed coordinate formulas, h = 1/2 eta^{ab} g_{ij} p^i_a p^j_b
inline StringPhaseSpace build_phase_space(int d, const SampleConfig& cfg) {
    if (d < 1) throw std::invalid_argument("target dimension must be >= 1");
    StringPhaseSpace S;
    S.d = d;
    std::vector<std::string> names{"q0", "q1"};
    for (int a = 0; a < d; ++a) names.push_back("u" + std::to_string(a));
    for (int a = 0; a < d; ++a) names.push_back("p0_" + std::to_string(a));
    for (int a = 0; a < d; ++a) names.push_back("p1_" + std::to_string(a));
    names.push_back("e");
    S.chart = Chart(names);

    // theta = e dq0^dq1 + p0_a du^a^dq1 - p1_a du^a^dq0
    DifferentialForm theta(S.chart, 2);
    theta.add_term({S.q0(), S.q1()}, Expr::variable("e"));
    for (int a = 0; a < d; ++a) {
        theta.add_term({S.u(a), S.q1()}, Expr::variable(S.chart.name(S.p0(a))));
        theta.add_term({S.u(a), S.q0()}, -Expr::variable(S.chart.name(S.p1(a))));
    }
    S.theta = theta;

    // h = 1/2 eta^{ab} g_ij p^i_a p^j_b  (diagonal metrics)
    Expr h;
    for (int a = 0; a < d; ++a) {
        const Expr p0a = Expr::variable(S.chart.name(S.p0(a)));
        const Expr p1a = Expr::variable(S.chart.name(S.p1(a)));
        Expr term = Expr::constant(1, 2) * (p0a * p0a - p1a * p1a);
        h = h + (a == 0 ? term : -term);  // eta^{aa} = +1, -1, ..., -1
    }
    S.h = simplified(h);

    const int points = std::max(cfg.points, 50);
    SampleConfig certcfg = cfg;
    certcfg.points = points;
    S.P = PlecticStructure::certify(S.chart, exterior_derivative(theta), 2, certcfg);
    S.P.alpha = S.theta;
    S.omega = S.P.omega;
    return S;
}

// H = -iota_{d/dq0} theta = -e dq1 - p1_a du^a.  Certifies the theta
// invariance L_{d/dq0} theta = 0 and the Hamiltonian-form relation
// dH + iota_{v_H} omega = 0; both must be proved, not sampled.
// Note dH = +iota_{d/dq0} omega, so v_H = -d/dq0.
inline HamiltonianForm hamiltonian_one_form(const StringPhaseSpace& S) {
    const VectorField ddq0 = VectorField::coordinate(S.chart, S.q0());
    SampleConfig cfg;  // proofs only; sampling config irrelevant

    auto invariance = is_zero_form(lie_derivative(ddq0, S.theta), cfg);
    if (!invariance.proved())
        throw CertificationError("theta is not invariant along d/dq0");

    HamiltonianForm H;
    H.F = (-interior_product(ddq0, S.theta)).simplify();
    H.v = -ddq0;
    H.residual =
        is_zero_form(exterior_derivative(H.F) + interior_product(H.v, S.omega), cfg);
    if (!H.residual.proved())
        throw CertificationError("dH + iota_{v_H} omega did not vanish");
    return H;
}

// ---------------------------------------------------------------------------
// B fields

struct BField {
    int d = 0;
    Chart target_chart;        // (u0 .. u{d-1})
    DifferentialForm B;        // 2-form with coefficients B_{bc}(u)
    DifferentialForm dB;       // field strength as a 3-form

    // totally antisymmetric field strength F_{bcd} by signed lookup
    Expr field_strength(int b, int c, int e) const { return dB.coefficient({b, c, e}); }
};

inline Chart string_target_chart(int d) {
    std::vector<std::string> names;
    for (int a = 0; a < d; ++a) names.push_back("u" + std::to_string(a));
    return Chart(names);
}

inline BField make_bfield(int d, const DifferentialForm& B) {
    if (B.degree() != 2) throw std::invalid_argument("B must be a 2-form");
    BField out;
    out.d = d;
    out.target_chart = string_target_chart(d);
    if (B.chart() != out.target_chart)
        throw std::invalid_argument("B must live on the target chart (u0..)");
    out.B = B.simplify();
    out.dB = exterior_derivative(out.B);
    return out;
}

// omega~ = omega + p^* dB along the projection (q,u,p,e) -> u,
// re-certified: closedness is proved (d p^* dB = p^* ddB = 0) and
// nondegeneracy re-sampled.
inline PlecticStructure modified_plectic(const StringPhaseSpace& S, const BField& B,
                                         const SampleConfig& cfg) {
    if (B.d != S.d) throw std::invalid_argument("B-field dimension mismatch");
    std::vector<Expr> proj;
    for (int a = 0; a < S.d; ++a) proj.push_back(Expr::variable(S.chart.name(S.u(a))));
    ChartMap p(S.chart, B.target_chart, proj);
    DifferentialForm omega_t = S.omega + pullback(p, B.dB);
    SampleConfig certcfg = cfg;
    certcfg.points = std::max(cfg.points, 50);
    return PlecticStructure::certify(S.chart, omega_t, 2, certcfg);
}

// ---------------------------------------------------------------------------
// Worldsheet states

struct WorldsheetState {
    double t = 0.0;
    int d = 1;
    int nsigma = 0;               // periodic grid on [0, 2pi)
    std::vector<double> phi;      // [a * nsigma + j]
    std::vector<double> vel;      // d0 phi

    double dsigma() const { return 2.0 * M_PI / nsigma; }
    double& phi_at(int a, int j) { return phi[static_cast<std::size_t>(a * nsigma + j)]; }
    double phi_at(int a, int j) const { return phi[static_cast<std::size_t>(a * nsigma + j)]; }
    double& vel_at(int a, int j) { return vel[static_cast<std::size_t>(a * nsigma + j)]; }
    double vel_at(int a, int j) const { return vel[static_cast<std::size_t>(a * nsigma + j)]; }

    static WorldsheetState zero(int d, int nsigma, double t = 0.0) {
        if (nsigma < 8) throw std::invalid_argument("grid needs at least 8 points");
        WorldsheetState s;
        s.t = t;
        s.d = d;
        s.nsigma = nsigma;
        s.phi.assign(static_cast<std::size_t>(d * nsigma), 0.0);
        s.vel.assign(static_cast<std::size_t>(d * nsigma), 0.0);
        return s;
    }

    bool finite() const {
        for (double x : phi)
            if (!std::isfinite(x)) return false;
        for (double x : vel)
            if (!std::isfinite(x)) return false;
        return true;
    }
};

// centered first difference in sigma, periodic
inline double dsigma_centered(const WorldsheetState& s, int a, int j) {
    const int n = s.nsigma;
    return (s.phi_at(a, (j + 1) % n) - s.phi_at(a, (j + n - 1) % n)) / (2.0 * s.dsigma());
}

// Derived momenta and energy density on the constraint surface e = -h:
//   pi^0_a = eta_{ab} d0 phi^b,  pi^1_a = -eta_{ab} d1 phi^b,
//   eps = 1/2 eta^{ab} (p0_a p0_b + p1_a p1_b),  e = -h.
struct SolutionSection {
    WorldsheetState state;
    std::vector<double> pi0, pi1;  // [a * nsigma + j]
    std::vector<double> e;         // [j]
    std::vector<double> eps;       // [j]

    double pi0_at(int a, int j) const {
        return pi0[static_cast<std::size_t>(a * state.nsigma + j)];
    }
    double pi1_at(int a, int j) const {
        return pi1[static_cast<std::size_t>(a * state.nsigma + j)];
    }
};

inline SolutionSection legendre_momenta(const WorldsheetState& s) {
    const std::vector<double> eta = minkowski_metric(s.d);
    SolutionSection sec;
    sec.state = s;
    sec.pi0.assign(s.phi.size(), 0.0);
    sec.pi1.assign(s.phi.size(), 0.0);
    sec.e.assign(static_cast<std::size_t>(s.nsigma), 0.0);
    sec.eps.assign(static_cast<std::size_t>(s.nsigma), 0.0);
    for (int j = 0; j < s.nsigma; ++j) {
        double h = 0.0, eps = 0.0;
        for (int a = 0; a < s.d; ++a) {
            const double p0 = eta[static_cast<std::size_t>(a)] * s.vel_at(a, j);
            const double p1 = -eta[static_cast<std::size_t>(a)] * dsigma_centered(s, a, j);
            sec.pi0[static_cast<std::size_t>(a * s.nsigma + j)] = p0;
            sec.pi1[static_cast<std::size_t>(a * s.nsigma + j)] = p1;
            // eta^{aa} = eta_{aa} for the diagonal Minkowski metric
            h += 0.5 * eta[static_cast<std::size_t>(a)] * (p0 * p0 - p1 * p1);
            eps += 0.5 * eta[static_cast<std::size_t>(a)] * (p0 * p0 + p1 * p1);
        }
        sec.e[static_cast<std::size_t>(j)] = -h;
        sec.eps[static_cast<std::size_t>(j)] = eps;
    }
    return sec;
}

// total energy at the slice: integral of eps dq1 over the circle
inline double total_energy(const SolutionSection& sec) {
    double sum = 0.0;
    for (double v : sec.eps) sum += v;
    return sum * sec.state.dsigma();
}

// ---------------------------------------------------------------------------
// Kalb-Ramond force
//
// The u-component of (p^* dB)(v0, v1, .) is
//   sum_{b<c} J^{bc} F_{bcd}
// with J^{bc} = d0phi^b d1phi^c - d1phi^b d0phi^c and F the totally
// antisymmetric coefficient table of dB; the equation of motion is
//   g^{ij} d_i d_j phi^a = eta^{ad} sum_{b<c} J^{bc} F_{bcd}.

class KalbRamondForce {
public:
    KalbRamondForce(const BField& B, int d) : d_(d), eta_(minkowski_metric(d)) {
        if (B.d != d) throw std::invalid_argument("B-field dimension mismatch");
        for (const auto& [idx, c] : B.dB.coefficients()) strength_.emplace_back(idx, c);
    }

    // acceleration contribution at a single grid point
    void accumulate(const std::vector<double>& u, const std::vector<double>& d0phi,
                    const std::vector<double>& d1phi, std::vector<double>& accel) const {
        if (strength_.empty()) return;
        Point pt;
        for (int a = 0; a < d_; ++a)
            pt["u" + std::to_string(a)] = u[static_cast<std::size_t>(a)];
        auto Jbc = [&](int b, int c) {
            return d0phi[static_cast<std::size_t>(b)] * d1phi[static_cast<std::size_t>(c)] -
                   d1phi[static_cast<std::size_t>(b)] * d0phi[static_cast<std::size_t>(c)];
        };
        for (const auto& [idx, coeff] : strength_) {
            const double F = evaluate(coeff, pt);
            if (F == 0.0) continue;
            // idx = (b < c < e); distribute over the three slots of du^d
            const int b = idx[0], c = idx[1], e = idx[2];
            accel[static_cast<std::size_t>(e)] +=
                eta_[static_cast<std::size_t>(e)] * Jbc(b, c) * F;
            accel[static_cast<std::size_t>(c)] -=
                eta_[static_cast<std::size_t>(c)] * Jbc(b, e) * F;
            accel[static_cast<std::size_t>(b)] +=
                eta_[static_cast<std::size_t>(b)] * Jbc(c, e) * F;
        }
    }

private:
    int d_;
    std::vector<double> eta_;
    std::vector<std::pair<MultiIndex, Expr>> strength_;
};

// force^a = eta^{ad} sum_{b<c} J^{bc} F_{bcd} at every grid point
inline std::vector<double> kalb_ramond_force(const BField& B, const WorldsheetState& s) {
    if (B.d != s.d) throw std::invalid_argument("B-field dimension mismatch");
    KalbRamondForce force(B, s.d);
    std::vector<double> out(s.phi.size(), 0.0);
    std::vector<double> u(static_cast<std::size_t>(s.d)), d0(static_cast<std::size_t>(s.d)),
        d1(static_cast<std::size_t>(s.d)), acc(static_cast<std::size_t>(s.d));
    for (int j = 0; j < s.nsigma; ++j) {
        for (int a = 0; a < s.d; ++a) {
            u[static_cast<std::size_t>(a)] = s.phi_at(a, j);
            d0[static_cast<std::size_t>(a)] = s.vel_at(a, j);
            d1[static_cast<std::size_t>(a)] = dsigma_centered(s, a, j);
        }
        std::fill(acc.begin(), acc.end(), 0.0);
        force.accumulate(u, d0, d1, acc);
        for (int a = 0; a < s.d; ++a)
            out[static_cast<std::size_t>(a * s.nsigma + j)] = acc[static_cast<std::size_t>(a)];
    }
    return out;
}

// ---------------------------------------------------------------------------
// Time stepping: d0^2 phi = d1^2 phi + force.
//
// Free case: velocity-Verlet leapfrog.  Forced case: the same kick-
// drift-kick with the velocity-dependent force evaluated at predictor
// midpoint velocities and midpoint positions (formally second order;
// validated by the refinement study).

struct CflError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::vector<double> wave_acceleration(const WorldsheetState& s,
                                             const KalbRamondForce* force) {
    const int n = s.nsigma;
    const double h2 = s.dsigma() * s.dsigma();
    std::vector<double> acc(s.phi.size(), 0.0);
    for (int a = 0; a < s.d; ++a)
        for (int j = 0; j < n; ++j)
            acc[static_cast<std::size_t>(a * n + j)] =
                (s.phi_at(a, (j + 1) % n) - 2.0 * s.phi_at(a, j) + s.phi_at(a, (j + n - 1) % n)) /
                h2;
    if (force) {
        std::vector<double> u(static_cast<std::size_t>(s.d)), d0(static_cast<std::size_t>(s.d)),
            d1(static_cast<std::size_t>(s.d)), f(static_cast<std::size_t>(s.d));
        for (int j = 0; j < n; ++j) {
            for (int a = 0; a < s.d; ++a) {
                u[static_cast<std::size_t>(a)] = s.phi_at(a, j);
                d0[static_cast<std::size_t>(a)] = s.vel_at(a, j);
                d1[static_cast<std::size_t>(a)] = dsigma_centered(s, a, j);
            }
            std::fill(f.begin(), f.end(), 0.0);
            force->accumulate(u, d0, d1, f);
            for (int a = 0; a < s.d; ++a)
                acc[static_cast<std::size_t>(a * n + j)] += f[static_cast<std::size_t>(a)];
        }
    }
    return acc;
}

}  // namespace detail

inline WorldsheetState step(const WorldsheetState& s, double dt,
                            const KalbRamondForce* force = nullptr) {
    if (dt > s.dsigma() * (1.0 + 1e-12))
        throw CflError("CFL violation: dt must not exceed dsigma");
    // predictor half-kick
    std::vector<double> a0 = detail::wave_acceleration(s, force);
    WorldsheetState mid = s;
    for (std::size_t i = 0; i < mid.vel.size(); ++i) mid.vel[i] = s.vel[i] + 0.5 * dt * a0[i];
    // midpoint positions carry the predictor velocities
    for (std::size_t i = 0; i < mid.phi.size(); ++i) mid.phi[i] = s.phi[i] + 0.5 * dt * mid.vel[i];
    // corrector: acceleration at midpoint state, full kick + drift
    std::vector<double> am = detail::wave_acceleration(mid, force);
    WorldsheetState out = s;
    out.t = s.t + dt;
    for (std::size_t i = 0; i < out.phi.size(); ++i) {
        out.phi[i] = s.phi[i] + dt * mid.vel[i];
        out.vel[i] = s.vel[i] + dt * am[i];
    }
    if (!out.finite()) throw std::runtime_error("non-finite state after step");
    return out;
}

// ---------------------------------------------------------------------------
// Multisymplectic solution criterion.
//
// The displayed bivector v0, v1 carries no d/de component; the 1-form
// omega~(v0,v1,.) is therefore evaluated on the constraint surface
// e = -h, i.e. through the pullback along (q,u,p) -> (q,u,p,-h(p)).
// All components vanish exactly on solutions of Hamilton's equations.

class BivectorResidual {
public:
    BivectorResidual(const StringPhaseSpace& S, const BField* B) : d_(S.d) {
        // reduced chart without e
        std::vector<std::string> names(S.chart.names().begin(), S.chart.names().end() - 1);
        reduced_ = Chart(names);
        std::vector<Expr> incl;
        for (const auto& n : names) incl.push_back(Expr::variable(n));
        incl.push_back(-S.h);  // e = -h(p)
        ChartMap embed(reduced_, S.chart, incl);
        DifferentialForm omega_t = S.omega;
        if (B) {
            std::vector<Expr> proj;
            for (int a = 0; a < d_; ++a) proj.push_back(Expr::variable(S.chart.name(S.u(a))));
            omega_t = omega_t + pullback(ChartMap(S.chart, B->target_chart, proj), B->dB);
        }
        restricted_ = pullback(embed, omega_t);
    }

    const Chart& chart() const { return reduced_; }
    const DifferentialForm& restricted_form() const { return restricted_; }

    // max-norm of omega~(v0, v1, .) over all reduced-chart components
    double evaluate_at(const Point& pt, const std::vector<double>& v0,
                       const std::vector<double>& v1) const {
        const int m = reduced_.dim();
        std::vector<double> comp(static_cast<std::size_t>(m), 0.0);
        for (const auto& [idx, c] : restricted_.coefficients()) {
            const double w = evaluate(c, pt);
            if (w == 0.0) continue;
            const int i = idx[0], j = idx[1], k = idx[2];
            auto minor2 = [&](int r, int s) {
                return v0[static_cast<std::size_t>(r)] * v1[static_cast<std::size_t>(s)] -
                       v0[static_cast<std::size_t>(s)] * v1[static_cast<std::size_t>(r)];
            };
            comp[static_cast<std::size_t>(k)] += w * minor2(i, j);
            comp[static_cast<std::size_t>(j)] -= w * minor2(i, k);
            comp[static_cast<std::size_t>(i)] += w * minor2(j, k);
        }
        double worst = 0.0;
        for (double v : comp) worst = std::max(worst, std::abs(v));
        return worst;
    }

private:
    int d_;
    Chart reduced_;
    DifferentialForm restricted_;
};

// Residual series over an integrated trajectory: one max-norm value per
// interior time slice, with d/dq0 of the momenta taken by centered
// differences across neighbouring slices.
inline std::vector<double> bivector_residual(std::span<const WorldsheetState> trajectory,
                                             const StringPhaseSpace& S,
                                             const BField* B = nullptr) {
    if (trajectory.size() < 3) throw std::invalid_argument("need at least 3 time slices");
    BivectorResidual R(S, B);
    const int d = S.d;
    std::vector<double> out;
    std::vector<SolutionSection> secs;
    secs.reserve(trajectory.size());
    for (const auto& s : trajectory) secs.push_back(legendre_momenta(s));

    const int m = R.chart().dim();
    std::vector<double> v0(static_cast<std::size_t>(m)), v1(static_cast<std::size_t>(m));
    for (std::size_t k = 1; k + 1 < trajectory.size(); ++k) {
        const auto& cur = trajectory[k];
        const auto& prev = secs[k - 1];
        const auto& next = secs[k + 1];
        const double dt2 = trajectory[k + 1].t - trajectory[k - 1].t;
        const int n = cur.nsigma;
        double worst = 0.0;
        for (int j = 0; j < n; ++j) {
            Point pt;
            pt["q0"] = cur.t;
            pt["q1"] = j * cur.dsigma();
            for (int a = 0; a < d; ++a) {
                pt["u" + std::to_string(a)] = cur.phi_at(a, j);
                pt["p0_" + std::to_string(a)] = secs[k].pi0_at(a, j);
                pt["p1_" + std::to_string(a)] = secs[k].pi1_at(a, j);
            }
            std::fill(v0.begin(), v0.end(), 0.0);
            std::fill(v1.begin(), v1.end(), 0.0);
            v0[0] = 1.0;  // d/dq0
            v1[1] = 1.0;  // d/dq1
            const int jp = (j + 1) % n, jm = (j + n - 1) % n;
            for (int a = 0; a < d; ++a) {
                v0[static_cast<std::size_t>(2 + a)] = cur.vel_at(a, j);
                v1[static_cast<std::size_t>(2 + a)] = dsigma_centered(cur, a, j);
                v0[static_cast<std::size_t>(2 + d + a)] =
                    (next.pi0_at(a, j) - prev.pi0_at(a, j)) / dt2;
                v0[static_cast<std::size_t>(2 + 2 * d + a)] =
                    (next.pi1_at(a, j) - prev.pi1_at(a, j)) / dt2;
                v1[static_cast<std::size_t>(2 + d + a)] =
                    (secs[k].pi0_at(a, jp) - secs[k].pi0_at(a, jm)) / (2.0 * cur.dsigma());
                v1[static_cast<std::size_t>(2 + 2 * d + a)] =
                    (secs[k].pi1_at(a, jp) - secs[k].pi1_at(a, jm)) / (2.0 * cur.dsigma());
            }
            worst = std::max(worst, R.evaluate_at(pt, v0, v1));
        }
        out.push_back(worst);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Trajectory comparison against an independently integrated reference
// (the fourth-order scheme lives in the test tree).

struct CrosscheckReport {
    double max_difference = 0.0;
    std::size_t slices = 0;
};

inline CrosscheckReport euler_lagrange_crosscheck(std::span<const WorldsheetState> trajectory,
                                                  std::span<const WorldsheetState> reference) {
    if (trajectory.size() != reference.size())
        throw std::invalid_argument("trajectories have different lengths");
    CrosscheckReport r;
    r.slices = trajectory.size();
    for (std::size_t k = 0; k < trajectory.size(); ++k) {
        const auto& a = trajectory[k];
        const auto& b = reference[k];
        if (a.phi.size() != b.phi.size())
            throw std::invalid_argument("trajectories have different grids");
        for (std::size_t i = 0; i < a.phi.size(); ++i)
            r.max_difference = std::max(r.max_difference, std::abs(a.phi[i] - b.phi[i]));
    }
    return r;
}

// ---------------------------------------------------------------------------
// H_tau = eps dq1 on constant-q0 slices (symbolic identity).
//
// Restrict H = -e dq1 - p1_a du^a to dq0 = 0, substitute the momentum
// relations pi0_a = eta_ab w0^b, pi1_a = -eta_ab w1^b (w_i = d_i phi)
// and e = -h; the dq1 coefficient must equal eps exactly.
inline ZeroVerdict h_tau_identity(int d);

inline ZeroVerdict h_tau_identity(const StringPhaseSpace& S) { return h_tau_identity(S.d); }

inline ZeroVerdict h_tau_identity(int d) {
    std::vector<std::string> names;
    for (int a = 0; a < d; ++a) names.push_back("w0_" + std::to_string(a));
    for (int a = 0; a < d; ++a) names.push_back("w1_" + std::to_string(a));
    std::vector<Expr> pi0(static_cast<std::size_t>(d)), pi1(static_cast<std::size_t>(d));
    for (int a = 0; a < d; ++a) {
        const Expr eta = Expr::constant(a == 0 ? 1 : -1);
        pi0[static_cast<std::size_t>(a)] =
            eta * Expr::variable("w0_" + std::to_string(a));
        pi1[static_cast<std::size_t>(a)] =
            Expr::constant(-1) * eta * Expr::variable("w1_" + std::to_string(a));
    }
    Expr h, eps;
    for (int a = 0; a < d; ++a) {
        const Expr eta = Expr::constant(a == 0 ? 1 : -1);
        const Expr& p0 = pi0[static_cast<std::size_t>(a)];
        const Expr& p1 = pi1[static_cast<std::size_t>(a)];
        h = h + Expr::constant(1, 2) * eta * (p0 * p0 - p1 * p1);
        eps = eps + Expr::constant(1, 2) * eta * (p0 * p0 + p1 * p1);
    }
    // H_tau = h dq1 - pi1_a dphi^a with dphi^a = w1^a dq1 on the slice
    Expr htau = h;
    for (int a = 0; a < d; ++a)
        htau = htau - pi1[static_cast<std::size_t>(a)] * Expr::variable("w1_" + std::to_string(a));
    return is_zero(htau - eps, names, SampleConfig{});
}

// ---------------------------------------------------------------------------
// Initial data and exact oracles

// standing wave in one target component: phi^a0 = A cos(k t) sin(k sigma)
struct StandingWave {
    int d = 2;
    int component = 1;
    double amplitude = 1.0;
    int mode = 1;

    WorldsheetState state(int nsigma, double t) const {
        WorldsheetState s = WorldsheetState::zero(d, nsigma, t);
        for (int j = 0; j < nsigma; ++j) {
            const double sg = j * s.dsigma();
            s.phi_at(component, j) = amplitude * std::cos(mode * t) * std::sin(mode * sg);
            s.vel_at(component, j) =
                -amplitude * mode * std::sin(mode * t) * std::sin(mode * sg);
        }
        return s;
    }

    double exact(double t, double sigma) const {
        return amplitude * std::cos(mode * t) * std::sin(mode * sigma);
    }
};

inline double max_error_vs(const WorldsheetState& s, const StandingWave& w) {
    double worst = 0.0;
    for (int j = 0; j < s.nsigma; ++j) {
        const double sg = j * s.dsigma();
        for (int a = 0; a < s.d; ++a) {
            const double ref = a == w.component ? w.exact(s.t, sg) : 0.0;
            worst = std::max(worst, std::abs(s.phi_at(a, j) - ref));
        }
    }
    return worst;
}

// right-mover phi(t, sigma) = f(sigma - t) from periodic samples of f
inline WorldsheetState dalembert_state(int d, int component,
                                       const std::vector<double>& f_samples, double t) {
    const int n = static_cast<int>(f_samples.size());
    WorldsheetState s = WorldsheetState::zero(d, n, t);
    auto fval = [&](int j) { return f_samples[static_cast<std::size_t>((j % n + n) % n)]; };
    for (int j = 0; j < n; ++j) {
        s.phi_at(component, j) = fval(j);  // sampled at sigma - t already shifted by caller
        // d/dt f(sigma - t) = -f'(sigma - t), centered difference of samples
        s.vel_at(component, j) = -(fval(j + 1) - fval(j - 1)) / (2.0 * s.dsigma());
    }
    return s;
}

}  // namespace plectic
