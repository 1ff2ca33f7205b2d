// Acceptance suite: one line per criterion, exit 0 iff all pass.
// Runs at desk scale (n <= 1024 here) with every tolerance pinned in code.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

#include "kfgm/evolution.hpp"
#include "kfgm/nonrel.hpp"
#include "kfgm/spectrum.hpp"

using namespace kfgm;

namespace {

constexpr double kPi = std::numbers::pi;
int g_failures = 0;

void report(int idx, const std::string& name, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s (%s)\n", ok ? "PASS" : "FAIL", idx,
                name.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

std::string sci(double v) {
    std::ostringstream ss;
    ss << std::scientific;
    ss.precision(2);
    ss << v;
    return ss.str();
}

ComplexField sine_mode(const Grid& g, int mode, double amp = 1.0) {
    ComplexField f(g.n);
    const double kap = mode * kPi / g.length();
    for (int i = 0; i < g.n; ++i) f(i) = amp * std::sin(kap * (g.x(i) - g.a));
    return f;
}

ComplexField packet(const Grid& g, double x0, double w, double k) {
    ComplexField f(g.n);
    for (int i = 0; i < g.n; ++i) {
        const double u = (g.x(i) - x0) / w;
        f(i) = std::exp(-0.5 * u * u) * std::polar(1.0, k * g.x(i));
    }
    return f;
}

// ---------------------------------------------------------------------------
// 1. Dirichlet spectrum oracle at n = 1024 with second-order convergence
void criterion_1() {
    const PhysicalParams p = PhysicalParams::natural_units();
    const double targets[3] = {2.0, 5.0, 10.0};
    double errs[2];
    int idx = 0;
    for (int n : {512, 1024}) {
        const Grid g(0.0, kPi, n);
        const ModeSet m = stationary_modes(g, p, ScalarPotential::zero(),
                                           preset("dirichlet", 1.0), 3);
        double worst = 0.0;
        for (int i = 0; i < 3; ++i)
            worst = std::max(worst,
                             std::abs(m.modes[i].e_squared - targets[i]) / targets[i]);
        errs[idx++] = worst;
    }
    const double order = std::log2(errs[0] / errs[1]);
    const bool ok = errs[1] < 1e-3 && order >= 1.9;
    report(1, "dirichlet spectrum oracle 2,5,10", ok,
           "rel err " + sci(errs[1]) + ", order " + sci(order));
}

// ---------------------------------------------------------------------------
// 2. Pseudo self-adjointness for all nine presets on constrained pairs; the
//    unconstrained free operator exposes the boundary term
void criterion_2() {
    const PhysicalParams p = PhysicalParams::natural_units();
    const Grid g(0.0, kPi, 65);
    double worst = 0.0;
    for (const auto& name : preset_names()) {
        const auto H =
            build_hamiltonian(g, p, ScalarPotential::zero(), 0.0, preset(name, 0.8));
        worst = std::max(worst, pseudo_hermiticity_defect(H, 100, 101));
    }
    const Grid gf(0.0, kPi, 33);
    const auto F = build_free_hamiltonian(gf, p, ScalarPotential::zero(), 0.0);
    const double free_defect = pseudo_hermiticity_defect(F, 100, 202);
    const bool ok = worst < 1e-9 && free_defect > 1e-3;
    report(2, "pseudo self-adjointness across the family", ok,
           "constrained " + sci(worst) + ", unconstrained " + sci(free_defect));
}

// ---------------------------------------------------------------------------
// 3. Majorana admissibility and real constraint ranks of the preset list
void criterion_3() {
    bool ok = true;
    for (const auto& name : preset_names()) {
        const BoundaryParams p = preset(name, 1.0);
        const bool vi_vii = name.rfind("case_", 0) == 0;
        ok = ok && (is_majorana_admissible(p) == !vi_vii);
        ok = ok && (real_constraint_rank(p) == (vi_vii ? 4 : 2));
    }
    report(3, "admissibility and constraint ranks", ok,
           "presets (i)-(v) rank 2, (vi)-(vii) rank 4");
}

// ---------------------------------------------------------------------------
// 4. Crank-Nicolson conservation of the pseudo inner product over 1000 steps
void criterion_4() {
    const PhysicalParams p = PhysicalParams::natural_units();
    double worst_norm = 0.0, worst_pair = 0.0;
    for (const auto& name : {"dirichlet", "periodic"}) {
        const Grid g(0.0, kPi, 129);
        const auto H =
            build_hamiltonian(g, p, ScalarPotential::zero(), 0.0, preset(name, 1.0));
        const auto& red = H.reduction();
        const Eigen::Index nr = H.block_size();
        CrankNicolsonStepper cn(H, 0.5 * g.h);
        Eigen::VectorXcd a(2 * nr), b(2 * nr);
        a.head(nr) = red.restrict_field(packet(g, 1.2, 0.3, 2.0));
        a.tail(nr) = red.restrict_field(0.1 * packet(g, 2.0, 0.45, 0.0));
        b.head(nr) = red.restrict_field(packet(g, 1.8, 0.4, -1.0));
        b.tail(nr) = red.restrict_field(0.05 * packet(g, 1.0, 0.5, 1.0));
        auto pip = [&](const Eigen::VectorXcd& x, const Eigen::VectorXcd& y) {
            Complex acc = 0.0;
            for (Eigen::Index i = 0; i < nr; ++i)
                acc += red.weights()(i) *
                       (std::conj(x(i)) * y(i) - std::conj(x(nr + i)) * y(nr + i));
            return acc;
        };
        auto nrm = [&](const Eigen::VectorXcd& x) {
            double acc = 0.0;
            for (Eigen::Index i = 0; i < nr; ++i)
                acc += red.weights()(i) * (std::norm(x(i)) + std::norm(x(nr + i)));
            return std::sqrt(acc);
        };
        const Complex p0 = pip(a, a), q0 = pip(a, b);
        const double na = nrm(a), nb = nrm(b);
        for (int s = 0; s < 1000; ++s) {
            a = cn.step(a);
            b = cn.step(b);
        }
        worst_norm = std::max(worst_norm, std::abs(pip(a, a) - p0) / std::abs(p0));
        worst_pair = std::max(worst_pair, std::abs(pip(a, b) - q0) / (na * nb));
    }
    const bool ok = worst_norm < 1e-10 && worst_pair < 1e-9;
    report(4, "crank-nicolson pseudo-product conservation", ok,
           "norm drift " + sci(worst_norm) + ", pair drift " + sci(worst_pair));
}

// ---------------------------------------------------------------------------
// 5. Majorana-condition preservation over 1000 steps for both kinds
void criterion_5() {
    const PhysicalParams p = PhysicalParams::natural_units();
    const Grid g(0.0, kPi, 129);
    const auto H =
        build_hamiltonian(g, p, ScalarPotential::zero(), 0.0, preset("dirichlet", 1.0));
    const auto& red = H.reduction();
    const Eigen::Index nr = H.block_size();
    CrankNicolsonStepper cn(H, 0.5 * g.h);
    double worst = 0.0;
    for (MajoranaKind kind : {MajoranaKind::Standard, MajoranaKind::Nonstandard}) {
        ComplexField f = sine_mode(g, 1) + 0.3 * sine_mode(g, 2);
        if (kind == MajoranaKind::Nonstandard) f *= Complex(0.0, 1.0);
        const double sgn = kind == MajoranaKind::Standard ? 1.0 : -1.0;
        FVState s(f, sgn * f.conjugate(), 0.0);
        if (majorana_defect(s, kind, g) != 0.0) {
            report(5, "majorana condition preservation", false, "initial defect != 0");
            return;
        }
        Eigen::VectorXcd v(2 * nr);
        v.head(nr) = red.restrict_field(s.phi);
        v.tail(nr) = red.restrict_field(s.chi);
        for (int k = 0; k < 1000; ++k) v = cn.step(v);
        FVState out(red.extend_field(v.head(nr)), red.extend_field(v.tail(nr)), 0.0);
        worst = std::max(worst, majorana_defect(out, kind, g) / l2_norm(out, g));
    }
    report(5, "majorana condition preservation", worst < 1e-8, "defect " + sci(worst));
}

// ---------------------------------------------------------------------------
// 6. Impenetrability for Majorana runs; balanced boundary current for the
//    complex periodic control run
void criterion_6() {
    const PhysicalParams p = PhysicalParams::natural_units();
    const Grid g(0.0, kPi, 129);
    bool zeros_ok = true;
    double rho_worst = 0.0;
    for (MajoranaKind kind : {MajoranaKind::Standard, MajoranaKind::Nonstandard}) {
        EvolutionConfig cfg;
        cfg.dt = 0.25 * g.h;
        cfg.steps = 400;
        cfg.record_every = 20;
        cfg.formulation = Formulation::MajoranaPhi;
        cfg.kind = kind;
        cfg.bc = preset("dirichlet", 1.0);
        cfg.S = ScalarPotential::gaussian_well(0.4, 1.5, 0.4);
        ComplexField psi0 = sine_mode(g, 1) + 0.4 * sine_mode(g, 2);
        if (kind == MajoranaKind::Nonstandard) psi0 *= Complex(0.0, 1.0);
        const Trajectory traj = evolve_trajectory(
            KFGState(psi0, ComplexField::Zero(g.n), 0.0), cfg, g, p);
        for (const auto& s : traj.samples) {
            zeros_ok = zeros_ok && s.obs.j_a == 0.0 && s.obs.j_b == 0.0;
            rho_worst = std::max(rho_worst, s.obs.rho.cwiseAbs().maxCoeff());
        }
    }

    // control: complex traveling wave on the periodic member via Crank-Nicolson
    const Grid gp(0.0, 2 * kPi, 129);
    const auto H = build_hamiltonian(gp, p, ScalarPotential::zero(), 0.0,
                                     preset("periodic", 1.0));
    const auto& red = H.reduction();
    const Eigen::Index nr = H.block_size();
    const double kwav = 3.0;
    ComplexField f(gp.n);
    for (int i = 0; i < gp.n; ++i) f(i) = std::polar(1.0, kwav * gp.x(i));
    const ComplexField fr = red.restrict_field(f);
    const Eigen::MatrixXcd lap = red.laplacian();
    const double kappa2 = ((lap * fr)(2) / fr(2)).real();
    const double e = std::sqrt(1.0 + kappa2);
    Eigen::VectorXcd v(2 * nr);
    v.head(nr) = 0.5 * (1.0 + e) * fr;
    v.tail(nr) = 0.5 * (1.0 - e) * fr;
    CrankNicolsonStepper cn(H, 0.5 * gp.h);
    double jdiff = 0.0, jmag = 0.0;
    for (int s = 0; s < 200; ++s) {
        v = cn.step(v);
        if (s % 20 == 0) {
            FVState st(red.extend_field(v.head(nr)), red.extend_field(v.tail(nr)), 0.0);
            const RealField j = current_density(st.psi(), gp, p);
            jdiff = std::max(jdiff, std::abs(j(0) - j(gp.n - 1)));
            jmag = std::max(jmag, std::abs(j(0)));
        }
    }
    const bool ok = zeros_ok && rho_worst < 1e-14 && jdiff < 1e-8 && jmag > 0.1;
    report(6, "impenetrability and the complex control run", ok,
           "rho " + sci(rho_worst) + ", j(a)-j(b) " + sci(jdiff));
}

// ---------------------------------------------------------------------------
// 7. Cross-formulation equivalence at n = 1024 after t = 1
void criterion_7() {
    const PhysicalParams p = PhysicalParams::natural_units();
    std::vector<double> diffs;
    for (int n : {512, 1024}) {
        const Grid g(0.0, kPi, n);
        const double T = 1.0;
        EvolutionConfig cfg;
        cfg.dt = 0.5 * g.h;
        cfg.steps = static_cast<int>(std::lround(T / cfg.dt));
        cfg.dt = T / cfg.steps;
        cfg.record_every = cfg.steps;
        cfg.bc = preset("dirichlet", 1.0);
        cfg.S = ScalarPotential::zero();
        const KFGState init(sine_mode(g, 1) + 0.5 * sine_mode(g, 2),
                            ComplexField::Zero(g.n), 0.0);
        cfg.formulation = Formulation::Kfg;
        const ComplexField a = evolve_trajectory(init, cfg, g, p).samples.back().kfg.psi;
        cfg.formulation = Formulation::Fv;
        const ComplexField b = evolve_trajectory(init, cfg, g, p).samples.back().kfg.psi;
        cfg.formulation = Formulation::MajoranaPhi;
        const ComplexField c = evolve_trajectory(init, cfg, g, p).samples.back().kfg.psi;
        const double d = std::max({(a - b).cwiseAbs().maxCoeff(),
                                   (a - c).cwiseAbs().maxCoeff(),
                                   (b - c).cwiseAbs().maxCoeff()});
        diffs.push_back(d);
    }
    const double order = std::log2(diffs[0] / diffs[1]);
    const bool ok = diffs[1] < 1e-5 && order >= 1.9;
    report(7, "kfg / fv / majorana-split equivalence", ok,
           "L_inf " + sci(diffs[1]) + ", order " + sci(order));
}

// ---------------------------------------------------------------------------
// 8. Second-order one-component residuals, including the time-dependent
//    right-hand side, and the phi + chi sum identity
void criterion_8() {
    const PhysicalParams p = PhysicalParams::natural_units();

    auto run = [&](int n, const ScalarPotential& S) {
        const Grid g(0.0, kPi, n);
        EvolutionConfig cfg;
        cfg.dt = 0.25 * g.h;
        cfg.steps = 4 * std::max(4, static_cast<int>(std::lround(0.5 / cfg.dt / 4)));
        cfg.formulation = Formulation::MajoranaPhi;
        cfg.kind = MajoranaKind::Standard;
        cfg.bc = preset("dirichlet", 1.0);
        cfg.S = S;
        cfg.record_every = 4;
        const KFGState init(sine_mode(g, 1) + 0.25 * sine_mode(g, 3),
                            ComplexField::Zero(g.n), 0.0);
        return std::pair{evolve_trajectory(init, cfg, g, p), cfg};
    };
    auto max_res = [&](const Trajectory& t, const EvolutionConfig& c, int n) {
        const Grid g(0.0, kPi, n);
        double worst = 0.0;
        for (const auto& r : second_order_majorana_residual(t, c, g, p))
            worst = std::max(worst, r.cwiseAbs().maxCoeff());
        return worst;
    };

    double r_static[3], r_timedep[3];
    int idx = 0;
    for (int n : {65, 129, 257}) {
        auto [ts, cs] = run(n, ScalarPotential::gaussian_well(0.5, 1.5, 0.3));
        r_static[idx] = max_res(ts, cs, n);
        auto [tt, ct] = run(n, ScalarPotential::sinusoidal_t(0.1, 2.0));
        r_timedep[idx] = max_res(tt, ct, n);
        ++idx;
    }
    const double q1 = std::min(r_static[0] / r_static[1], r_static[1] / r_static[2]);
    const double q2 =
        std::min(r_timedep[0] / r_timedep[1], r_timedep[1] / r_timedep[2]);

    // phi and chi residuals must add to the plain one on psi
    const int n = 129;
    const Grid g(0.0, kPi, n);
    auto [traj, cfg] = run(n, ScalarPotential::sinusoidal_t(0.1, 2.0));
    const auto res_phi = second_order_majorana_residual(traj, cfg, g, p);
    EvolutionConfig cfg_chi = cfg;
    cfg_chi.formulation = Formulation::MajoranaChi;
    const auto res_chi = second_order_majorana_residual(traj, cfg_chi, g, p);
    BoundaryReduction red(g, cfg.bc);
    const Eigen::MatrixXcd lap = red.laplacian();
    const double dtr = traj.samples[1].t - traj.samples[0].t;
    double sum_defect = 0.0;
    for (std::size_t k = 1; k + 1 < traj.samples.size(); ++k) {
        const ComplexField u = red.restrict_field(traj.samples[k].kfg.psi);
        const ComplexField up = red.restrict_field(traj.samples[k + 1].kfg.psi);
        const ComplexField um = red.restrict_field(traj.samples[k - 1].kfg.psi);
        const RealField s_now =
            red.reduce_diagonal(cfg.S.sample(g, traj.samples[k].t));
        ComplexField a3 = -(up - 2.0 * u + um) / (dtr * dtr) - (lap * u);
        for (Eigen::Index i = 0; i < u.size(); ++i)
            a3(i) -= (1.0 + 2.0 * s_now(i)) * u(i);
        sum_defect = std::max(
            sum_defect, (res_phi[k - 1] + res_chi[k - 1] - a3).cwiseAbs().maxCoeff());
    }

    const bool ok = q1 >= 3.5 && q2 >= 3.5 && sum_defect < 1e-10;
    report(8, "second-order component residuals", ok,
           "halving ratios " + sci(q1) + " / " + sci(q2) + ", sum identity " +
               sci(sum_defect));
}

// ---------------------------------------------------------------------------
// 9. Nonrelativistic limit: deviation ~ epsilon, and the reference-residual
//    convergence
void criterion_9() {
    const PhysicalParams base(1.0, std::sqrt(50.0), 1.0);  // epsilon ~ 0.01
    const Grid g(0.0, kPi, 65);
    RealField env0(g.n);
    for (int i = 0; i < g.n; ++i) env0(i) = std::sin(g.x(i));
    const ScalingStudy study =
        run_scaling_study(g, base, preset("dirichlet", 1.0), ScalarPotential::zero(),
                          env0, 3, 0.5, 3.6e-4, 200);
    const bool alpha_ok =
        study.sufficient && study.alpha >= 0.8 && study.alpha <= 1.2;

    // identity Im(z) = Re(-i z) at every node of a random field
    std::mt19937_64 rng(99);
    std::normal_distribution<double> dist;
    bool identity_ok = true;
    for (int k = 0; k < 4096; ++k) {
        const Complex z(dist(rng), dist(rng));
        identity_ok = identity_ok && (std::imag(z) == std::real(Complex(0, -1) * z));
    }

    // residual convergence of the Schrodinger-evolved envelope
    const PhysicalParams pr(1.0, 3.0, 1.0);
    double prev = 0.0, order = 0.0;
    for (int n : {33, 65, 129}) {
        const Grid gr(0.0, kPi, n);
        const double T = 0.4;
        const int steps = 4 * (n - 1);
        SchrodingerStepper st(gr, pr, ScalarPotential::zero(),
                              preset("dirichlet", 1.0), T / steps);
        st.set_state(sine_mode(gr, 1), 0.0);
        std::vector<EnvelopeState> traj;
        traj.push_back(st.state());
        for (int k = 0; k < steps; ++k) {
            st.step();
            traj.push_back(st.state());
        }
        double worst = 0.0;
        for (const auto& r : b11_residual(traj, pr, ScalarPotential::zero(), gr,
                                          preset("dirichlet", 1.0)))
            worst = std::max(worst, r.cwiseAbs().maxCoeff());
        if (prev > 0.0) order = std::log2(prev / worst);
        prev = worst;
    }
    const bool ok = alpha_ok && identity_ok && order >= 1.9;
    report(9, "nonrelativistic limit scaling", ok,
           "alpha " + sci(study.alpha) + ", residual order " + sci(order));
}

// ---------------------------------------------------------------------------
// 10. Structural identities: involutions, round trip, spectral pairing
void criterion_10() {
    const PhysicalParams p = PhysicalParams::natural_units();
    const Grid g(0.0, kPi, 129);
    std::mt19937_64 rng(7);
    std::normal_distribution<double> dist;
    auto rnd = [&] {
        ComplexField f(g.n);
        for (int i = 0; i < g.n; ++i) f(i) = Complex(dist(rng), dist(rng));
        return f;
    };

    FVState s(rnd(), rnd(), 0.0);
    const FVState twice = charge_conjugate(charge_conjugate(s));
    const bool conj_ok = twice.phi == s.phi && twice.chi == s.chi;

    const auto H =
        build_hamiltonian(g, p, ScalarPotential::zero(), 0.0, preset("robin", 1.0));
    const auto adj = generalized_adjoint(H);
    const double adj_eq =
        (adj.matrix() - H.matrix()).cwiseAbs().maxCoeff() / H.operator_norm();
    const double adj_inv = (generalized_adjoint(adj).matrix() - H.matrix())
                               .cwiseAbs()
                               .maxCoeff() /
                           H.operator_norm();

    double rt = 0.0;
    for (int k = 0; k < 32; ++k) {
        KFGState st(rnd(), rnd(), 0.0);
        const KFGState back = fv_to_kfg(kfg_to_fv(st, p), p);
        const double scale =
            st.psi.cwiseAbs().maxCoeff() + st.psi_t.cwiseAbs().maxCoeff();
        rt = std::max(rt, (back.psi - st.psi).cwiseAbs().maxCoeff() / scale);
        rt = std::max(rt, (back.psi_t - st.psi_t).cwiseAbs().maxCoeff() / scale);
    }

    double pairing = 0.0;
    for (const auto& name : {"dirichlet", "periodic", "case_vii_plus"}) {
        const auto Hp =
            build_hamiltonian(g, p, ScalarPotential::zero(), 0.0, preset(name, 1.0));
        pairing = std::max(pairing,
                           fv_spectrum_symmetry_check(Hp, 1e-8).max_pairing_defect);
    }

    const bool ok =
        conj_ok && adj_eq < 1e-10 && adj_inv < 1e-12 && rt < 1e-12 && pairing < 1e-8;
    report(10, "structural identities", ok,
           "adjoint " + sci(adj_eq) + ", round trip " + sci(rt) + ", pairing " +
               sci(pairing));
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    if (g_failures == 0) {
        std::printf("acceptance: all criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criteria failed\n", g_failures);
    return 1;
}
