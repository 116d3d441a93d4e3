#include "plectic/string_sim.hpp"

#include "support/oracles.hpp"
#include "support/rk4_reference.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

using namespace plectic;

namespace {

const SampleConfig cfg;

bool form_proved_zero(const DifferentialForm& f) {
    for (const auto& [idx, c] : f.coefficients())
        if (!normalize(c).is_zero()) return false;
    return true;
}

std::vector<WorldsheetState> integrate(WorldsheetState s, double dt, int steps,
                                       const KalbRamondForce* force = nullptr) {
    std::vector<WorldsheetState> out;
    out.reserve(static_cast<std::size_t>(steps) + 1);
    out.push_back(s);
    for (int i = 0; i < steps; ++i) {
        s = step(s, dt, force);
        out.push_back(s);
    }
    return out;
}

BField fixture_bfield() {
    // B = u0 du1^du2 on the d = 3 target: constant field strength
    Chart target = string_target_chart(3);
    DifferentialForm B(target, 2);
    B.add_term({1, 2}, Expr::variable("u0"));
    return make_bfield(3, B);
}

// Initial data that activates the B-field force: timelike motion in u0
// plus a transverse standing mode in u1, so J^{01} is nonzero.
WorldsheetState forced_fixture_state(int nsigma, double amplitude) {
    auto s = WorldsheetState::zero(3, nsigma);
    for (int j = 0; j < nsigma; ++j) {
        s.vel_at(0, j) = 1.0;
        s.phi_at(1, j) = amplitude * std::sin(j * s.dsigma());
    }
    return s;
}

}  // namespace

TEST_CASE("phase space: chart, omega, theta not closed, nondegeneracy") {
    auto S1 = build_phase_space(1, cfg);
    CHECK(S1.chart.dim() == 6);
    CHECK(S1.P.closed.proved());
    CHECK(S1.P.certificate.passed);

    // omega = de^dq0^dq1 + dp0^du^dq1 - dp1^du^dq0 for d = 1
    DifferentialForm expect(S1.chart, 3);
    expect.add_term({S1.e(), S1.q0(), S1.q1()}, Expr::constant(1));
    expect.add_term({S1.p0(0), S1.u(0), S1.q1()}, Expr::constant(1));
    expect.add_term({S1.p1(0), S1.u(0), S1.q0()}, Expr::constant(-1));
    CHECK(form_proved_zero(S1.omega - expect));

    // theta is a potential, not closed
    auto v = check_closed(S1.theta, cfg);
    CHECK(v.kind == ZeroVerdict::Kind::Nonzero);

    auto S3 = build_phase_space(3, cfg);
    CHECK(S3.chart.dim() == 12);
    CHECK(S3.P.certificate.passed);

    CHECK_THROWS_AS(build_phase_space(0, cfg), std::invalid_argument);
}

TEST_CASE("hamiltonian one-form: formula, certificates, self-bracket") {
    auto S = build_phase_space(1, cfg);
    auto H = hamiltonian_one_form(S);

    // H = -e dq1 - p1 du
    DifferentialForm expect(S.chart, 1);
    expect.add_term({S.q1()}, -Expr::variable("e"));
    expect.add_term({S.u(0)}, -Expr::variable("p1_0"));
    CHECK(form_proved_zero(H.F - expect));
    CHECK(H.residual.proved());

    // dH = iota_{d/dq0} omega, proved
    auto lhs = exterior_derivative(H.F) -
               interior_product(VectorField::coordinate(S.chart, S.q0()), S.omega);
    CHECK(form_proved_zero(lhs));

    // {H,H}_s = iota_{v_H} iota_{v_H} omega = 0
    auto sb = semi_bracket(S.P, H, H, cfg);
    CHECK(form_proved_zero(sb.F));

    for (int d : {2, 3}) {
        auto Sd = build_phase_space(d, cfg);
        CHECK(hamiltonian_one_form(Sd).residual.proved());
    }
}

TEST_CASE("legendre momenta: worked values") {
    // phi^1 = sin(sigma) at rest: pi1_1[j] = cos(sigma_j)
    const int n = 64;
    auto s = WorldsheetState::zero(2, n);
    for (int j = 0; j < n; ++j) s.phi_at(1, j) = std::sin(j * s.dsigma());
    auto sec = legendre_momenta(s);
    for (int j = 0; j < n; ++j) {
        CHECK(sec.pi1_at(1, j) ==
              Catch::Approx(std::cos(j * s.dsigma())).margin(2e-3));  // centered difference
        CHECK(sec.pi0_at(1, j) == 0.0);
    }

    // static state: everything zero
    auto z = legendre_momenta(WorldsheetState::zero(2, 16));
    for (double v : z.e) CHECK(v == 0.0);
    for (double v : z.eps) CHECK(v == 0.0);

    // uniform translation phi^0 = t: pi0_0 = 1, h = 1/2, e = -1/2
    auto u = WorldsheetState::zero(2, 16, /*t=*/0.7);
    for (int j = 0; j < 16; ++j) {
        u.phi_at(0, j) = 0.7;
        u.vel_at(0, j) = 1.0;
    }
    auto su = legendre_momenta(u);
    for (int j = 0; j < 16; ++j) {
        CHECK(su.pi0_at(0, j) == Catch::Approx(1.0));
        CHECK(su.e[static_cast<std::size_t>(j)] == Catch::Approx(-0.5));
        CHECK(su.eps[static_cast<std::size_t>(j)] == Catch::Approx(0.5));
    }
}

TEST_CASE("kalb-ramond force: zero cases and the confirmed fixture value") {
    const int n = 16;
    auto s = WorldsheetState::zero(3, n);
    // state with d0 phi = (1,0,0), d1 phi = (0,1,0)
    for (int j = 0; j < n; ++j) {
        s.vel_at(0, j) = 1.0;
        s.phi_at(1, j) = std::sin(j * s.dsigma());
    }
    // replace the sine by an exact linear profile through derivatives:
    // use the force evaluation point-wise with explicit derivatives below.

    // B = 0 gives zero force
    Chart target = string_target_chart(3);
    auto zeroB = make_bfield(3, DifferentialForm(target, 2));
    for (double f : kalb_ramond_force(zeroB, s)) CHECK(f == 0.0);

    // constant coefficients give F = dB = 0
    DifferentialForm constB(target, 2);
    constB.add_term({0, 1}, Expr::constant(5, 2));
    for (double f : kalb_ramond_force(make_bfield(3, constB), s)) CHECK(f == 0.0);

    // fixture: B = u0 du1^du2, state derivative data d0=(1,0,0), d1=(0,1,0).
    // Oracle 1: brute-force evaluation of dB(v0, v1, basis) by the full
    // antisymmetrized sum, then raised with eta.
    auto B = fixture_bfield();
    std::vector<double> d0{1, 0, 0}, d1{0, 1, 0}, u{0.4, -0.2, 0.9};
    Point upt{{"u0", u[0]}, {"u1", u[1]}, {"u2", u[2]}};
    std::vector<double> oracle(3, 0.0);
    const auto eta = minkowski_metric(3);
    for (int a = 0; a < 3; ++a) {
        VectorField v0(target), v1(target), basis(target);
        for (int b = 0; b < 3; ++b) {
            v0.set(b, Expr::constant(static_cast<long>(d0[static_cast<std::size_t>(b)])));
            v1.set(b, Expr::constant(static_cast<long>(d1[static_cast<std::size_t>(b)])));
        }
        basis.set(a, Expr::constant(1));
        oracle[static_cast<std::size_t>(a)] =
            eta[static_cast<std::size_t>(a)] * evaluate_form(B.dB, {v0, v1, basis}, upt);
    }
    CHECK(oracle[0] == Catch::Approx(0.0).margin(1e-14));
    CHECK(oracle[1] == Catch::Approx(0.0).margin(1e-14));
    CHECK(oracle[2] == Catch::Approx(-1.0));  // frozen from the oracle

    // the implementation agrees with the oracle
    KalbRamondForce force(B, 3);
    std::vector<double> acc(3, 0.0);
    force.accumulate(u, d0, d1, acc);
    for (int a = 0; a < 3; ++a)
        CHECK(acc[static_cast<std::size_t>(a)] ==
              Catch::Approx(oracle[static_cast<std::size_t>(a)]).margin(1e-14));

    // dimension mismatch is an error
    CHECK_THROWS_AS(kalb_ramond_force(B, WorldsheetState::zero(2, 16)),
                    std::invalid_argument);
}

TEST_CASE("field strength is totally antisymmetric in normal form") {
    testing::RandomPoly rp(61);
    Chart target = string_target_chart(4);
    DifferentialForm B(target, 2);
    for (int t = 0; t < 3; ++t) {
        MultiIndex idx;
        idx.push_back(static_cast<int>(rp.rng.next() % 4));
        int second = static_cast<int>(rp.rng.next() % 4);
        if (second == idx[0]) second = (second + 1) % 4;
        idx.push_back(second);
        B.add_term(idx, rp.expr(target, 2));
    }
    auto bf = make_bfield(4, B);
    for (int b = 0; b < 4; ++b)
        for (int c = 0; c < 4; ++c)
            for (int d = 0; d < 4; ++d) {
                CHECK(normalize(bf.field_strength(b, c, d) + bf.field_strength(c, b, d))
                          .is_zero());
                CHECK(normalize(bf.field_strength(b, c, d) + bf.field_strength(b, d, c))
                          .is_zero());
            }
    // cyclic formula F_bcd = d_b B_cd + d_c B_db + d_d B_bc with signed lookup
    for (int b = 0; b < 4; ++b)
        for (int c = 0; c < 4; ++c)
            for (int d = 0; d < 4; ++d) {
                Expr cyc = differentiate(bf.B.coefficient({c, d}), target.name(b)) +
                           differentiate(bf.B.coefficient({d, b}), target.name(c)) +
                           differentiate(bf.B.coefficient({b, c}), target.name(d));
                CHECK(normalize(bf.field_strength(b, c, d) - cyc).is_zero());
            }
}

TEST_CASE("step: fixed point, CFL guard") {
    auto z = WorldsheetState::zero(2, 32);
    auto z1 = step(z, z.dsigma() / 2);
    for (double v : z1.phi) CHECK(v == 0.0);
    for (double v : z1.vel) CHECK(v == 0.0);

    CHECK_THROWS_AS(step(z, z.dsigma() * 2.0), CflError);
}

TEST_CASE("step: standing wave error is second order") {
    StandingWave w;
    double prev_err = 0.0;
    std::vector<double> errs;
    for (int n : {64, 128, 256}) {
        auto s = w.state(n, 0.0);
        const double dt = s.dsigma() / 2;
        const int steps = static_cast<int>(std::llround(2.0 * M_PI / dt));
        double worst = 0.0;
        for (int i = 0; i < steps; ++i) {
            s = step(s, dt);
            worst = std::max(worst, max_error_vs(s, w));
        }
        errs.push_back(worst);
        prev_err = worst;
    }
    (void)prev_err;
    CHECK(errs[2] < 5e-3);
    const double order1 = std::log2(errs[0] / errs[1]);
    const double order2 = std::log2(errs[1] / errs[2]);
    CHECK(order1 > 1.8);
    CHECK(order1 < 2.2);
    CHECK(order2 > 1.8);
    CHECK(order2 < 2.2);
}

TEST_CASE("step: right-mover advects with unit speed") {
    const int n = 128;
    std::vector<double> f(static_cast<std::size_t>(n));
    const double ds = 2.0 * M_PI / n;
    for (int j = 0; j < n; ++j) f[static_cast<std::size_t>(j)] = std::exp(std::sin(j * ds));
    auto s = dalembert_state(2, 1, f, 0.0);
    // integrate for exactly 16 grid cells of time
    const int cells = 16;
    const double dt = ds / 2;
    for (int i = 0; i < 2 * cells; ++i) s = step(s, dt);
    // phi(t, sigma) = f(sigma - t): compare against the shifted samples
    double worst = 0.0;
    for (int j = 0; j < n; ++j) {
        const double ref = f[static_cast<std::size_t>((j - cells + n) % n)];
        worst = std::max(worst, std::abs(s.phi_at(1, j) - ref));
    }
    CHECK(worst < 5e-3);
}

TEST_CASE("total energy: zero, transverse closed form, timelike offset") {
    CHECK(total_energy(legendre_momenta(WorldsheetState::zero(2, 32))) == 0.0);

    // pure transverse mode phi^1 = A cos t sin sigma: E = -pi A^2 / 2, constant
    StandingWave w;
    w.amplitude = 0.8;
    for (double t : {0.0, 0.4, 1.3}) {
        auto sec = legendre_momenta(w.state(256, t));
        CHECK(total_energy(sec) ==
              Catch::Approx(-M_PI * w.amplitude * w.amplitude / 2).margin(1e-3));
    }

    // adding phi^0 = t contributes +pi
    auto s = w.state(256, 0.5);
    for (int j = 0; j < s.nsigma; ++j) {
        s.phi_at(0, j) = 0.5;
        s.vel_at(0, j) = 1.0;
    }
    CHECK(total_energy(legendre_momenta(s)) ==
          Catch::Approx(M_PI - M_PI * w.amplitude * w.amplitude / 2).margin(1e-3));
}

TEST_CASE("energy conservation over ten periods") {
    // The centered-difference momenta carry a bounded O(dsigma^2)
    // sampling oscillation in the measured energy; amplitude 1/2 keeps
    // the relative drift within the 1e-4 budget at this resolution.
    StandingWave w;
    w.amplitude = 0.5;
    auto s = w.state(256, 0.0);
    const double dt = s.dsigma() / 2;
    const int steps = static_cast<int>(std::llround(10 * 2.0 * M_PI / dt));
    const double e0 = total_energy(legendre_momenta(s));
    double drift = 0.0;
    for (int i = 0; i < steps; ++i) {
        s = step(s, dt);
        const double e = total_energy(legendre_momenta(s));
        drift = std::max(drift, std::abs(e - e0) / std::max(std::abs(e0), 1.0));
    }
    CHECK(drift <= 1e-4);
}

TEST_CASE("h_tau identity: proved for d in {1,2,3}, fails off-shell") {
    for (int d : {1, 2, 3}) CHECK(h_tau_identity(d).proved());
    auto S = build_phase_space(2, cfg);
    CHECK(h_tau_identity(S).proved());

    // without the momentum relations the dq1 coefficient differs from eps
    std::vector<std::string> names{"w1_0", "pi0_0", "pi1_0"};
    Expr h = Expr::constant(1, 2) *
             (Expr::variable("pi0_0") * Expr::variable("pi0_0") -
              Expr::variable("pi1_0") * Expr::variable("pi1_0"));
    Expr eps = Expr::constant(1, 2) *
               (Expr::variable("pi0_0") * Expr::variable("pi0_0") +
                Expr::variable("pi1_0") * Expr::variable("pi1_0"));
    Expr htau = h - Expr::variable("pi1_0") * Expr::variable("w1_0");
    CHECK(is_zero(htau - eps, names, cfg).kind == ZeroVerdict::Kind::Nonzero);
}

TEST_CASE("bivector residual: zero state, exact wave refinement, wrong momenta") {
    auto S = build_phase_space(2, cfg);

    // zero state: exactly zero
    {
        std::vector<WorldsheetState> traj;
        for (int k = 0; k < 3; ++k) traj.push_back(WorldsheetState::zero(2, 32, 0.1 * k));
        auto res = bivector_residual(traj, S);
        REQUIRE(res.size() == 1);
        CHECK(res[0] == 0.0);
    }

    // exact standing wave sampled on the grid: residual O(dsigma^2)
    StandingWave w;
    std::vector<double> residuals;
    for (int n : {32, 64, 128}) {
        const double dt = M_PI / n;  // refine dt with dsigma
        std::vector<WorldsheetState> traj{w.state(n, 1.0 - dt), w.state(n, 1.0),
                                          w.state(n, 1.0 + dt)};
        auto res = bivector_residual(traj, S);
        residuals.push_back(res[0]);
    }
    const double order1 = std::log2(residuals[0] / residuals[1]);
    const double order2 = std::log2(residuals[1] / residuals[2]);
    CHECK(order1 > 1.7);
    CHECK(order1 < 2.3);
    CHECK(order2 > 1.7);
    CHECK(order2 < 2.3);

    // wrong momenta: flipping pi^1 leaves an O(1) residual
    {
        BivectorResidual R(S, nullptr);
        const int n = 64;
        auto s = w.state(n, 1.0);
        auto sec = legendre_momenta(s);
        const int j = 7;
        Point pt{{"q0", s.t}, {"q1", j * s.dsigma()}};
        for (int a = 0; a < 2; ++a) {
            pt["u" + std::to_string(a)] = s.phi_at(a, j);
            pt["p0_" + std::to_string(a)] = sec.pi0_at(a, j);
            pt["p1_" + std::to_string(a)] = -sec.pi1_at(a, j);  // sign flip
        }
        std::vector<double> v0(static_cast<std::size_t>(R.chart().dim()), 0.0), v1 = v0;
        v0[0] = 1.0;
        v1[1] = 1.0;
        // exact derivative data with the same sign flip on pi1
        const double sg = j * s.dsigma();
        v0[2 + 1] = s.vel_at(1, j);
        v1[2 + 1] = dsigma_centered(s, 1, j);
        v0[2 + 2 + 1] = -w.amplitude * std::cos(s.t) * std::sin(sg);   // d0 pi0_1
        v0[2 + 4 + 1] = +w.amplitude * std::sin(s.t) * std::cos(sg);   // d0 (-pi1_1)
        v1[2 + 2 + 1] = -w.amplitude * std::sin(s.t) * std::cos(sg);   // d1 pi0_1
        v1[2 + 4 + 1] = +w.amplitude * std::cos(s.t) * std::sin(sg);   // d1 (-pi1_1)
        CHECK(R.evaluate_at(pt, v0, v1) > 0.1);
    }
}

TEST_CASE("bivector residual decays on forced trajectories") {
    auto S = build_phase_space(3, cfg);
    auto B = fixture_bfield();
    KalbRamondForce force(B, 3);

    std::vector<double> residuals;
    for (int n : {32, 64}) {
        auto s = forced_fixture_state(n, 0.5);
        const double dt = s.dsigma() / 2;
        std::vector<WorldsheetState> traj = integrate(s, dt, 2 * n, &force);
        auto res = bivector_residual(traj, S, &B);
        double worst = 0.0;
        for (double r : res) worst = std::max(worst, r);
        residuals.push_back(worst);
    }
    const double order = std::log2(residuals[0] / residuals[1]);
    CHECK(order > 1.5);  // mixed scheme orders; decays at least quadratically-ish
    CHECK(residuals[1] < 0.05);
}

TEST_CASE("modified plectic structure: B = 0, fixture, closedness") {
    auto S = build_phase_space(3, cfg);
    auto zeroB = make_bfield(3, DifferentialForm(string_target_chart(3), 2));
    auto P0 = modified_plectic(S, zeroB, cfg);
    CHECK(form_proved_zero(P0.omega - S.omega));

    auto B = fixture_bfield();
    auto Pt = modified_plectic(S, B, cfg);
    CHECK(Pt.closed.proved());
    CHECK(Pt.certificate.passed);
}

TEST_CASE("crosscheck against the fourth-order reference integrator") {
    // free case; both schemes share the right-hand side, so the gap is
    // the second-order time error of the leapfrog — small step to reach 1e-6
    {
        StandingWave w;
        auto s0 = w.state(128, 0.0);
        const double dt = s0.dsigma() / 64;
        const int steps = static_cast<int>(std::llround(2.0 * M_PI / dt));
        auto ours = integrate(s0, dt, steps);
        auto ref = testing::rk4_trajectory(s0, dt, steps);
        auto rep = euler_lagrange_crosscheck(ours, ref);
        CHECK(rep.max_difference <= 1e-6);
    }
    // constant-field-strength B case at the working step size
    {
        auto B = fixture_bfield();
        KalbRamondForce force(B, 3);
        auto s0 = forced_fixture_state(128, 0.5);
        const double dt = s0.dsigma() / 2;
        const int steps = static_cast<int>(std::llround(2.0 * M_PI / dt));
        auto ours = integrate(s0, dt, steps, &force);
        auto ref = testing::rk4_trajectory(s0, dt, steps, &force);
        auto rep = euler_lagrange_crosscheck(ours, ref);
        CHECK(rep.max_difference <= 1e-3);

        // fault injection: a flipped force sign diverges by O(1)
        Chart target = string_target_chart(3);
        DifferentialForm flipped(target, 2);
        flipped.add_term({1, 2}, -Expr::variable("u0"));
        KalbRamondForce wrong(make_bfield(3, flipped), 3);
        auto bad = integrate(s0, dt, steps, &wrong);
        auto repb = euler_lagrange_crosscheck(bad, ref);
        CHECK(repb.max_difference > 0.05);
    }
}
