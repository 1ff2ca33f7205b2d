#include "kfgm/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

#include "kfgm/csv.hpp"
#include "kfgm/nonrel.hpp"
#include "kfgm/spectrum.hpp"

namespace kfgm {

namespace fs = std::filesystem;

namespace {

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path, std::ios::binary);  // '\n' endings on every platform
    if (!out) throw std::runtime_error("cannot open output file " + path.string());
    return out;
}

void bc_row(std::ostream& os, const std::string& name, const BoundaryParams& p) {
    os << std::left << std::setw(16) << name << std::right;
    os << " mu=" << std::setw(8) << format_double(p.mu).substr(0, 8);
    os << " m=(" << p.m0 << "," << p.m1 << "," << p.m2 << "," << p.m3 << ")";
    os << " admissible=" << (is_majorana_admissible(p) ? "true" : "false");
    os << " rank=" << real_constraint_rank(p) << "\n";
}

}  // namespace

void cmd_bc_list(std::ostream& os) {
    for (const auto& name : preset_names()) bc_row(os, name, preset(name, 1.0));
}

void cmd_bc_show(const std::string& name, std::ostream& os) {
    const BoundaryParams p = preset(name, 1.0);
    os << "preset: " << name << "\n";
    os << "mu: " << format_double(p.mu) << "\n";
    os << "m: (" << format_double(p.m0) << ", " << format_double(p.m1) << ", "
       << format_double(p.m2) << ", " << format_double(p.m3) << ")\n";
    os << "lambda: " << format_double(p.lambda) << " (scales with the config)\n";
    os << "admissible: " << (is_majorana_admissible(p) ? "true" : "false") << "\n";
    os << "real_constraint_rank: " << real_constraint_rank(p) << "\n";
    const Eigen::Matrix2cd u = unitary_2x2(p);
    os << "U2: [[" << u(0, 0) << ", " << u(0, 1) << "], [" << u(1, 0) << ", "
       << u(1, 1) << "]]\n";
}

void cmd_spectrum(const RunConfig& cfg, const std::string& out_dir) {
    if (!cfg.potential.is_static())
        throw ConfigError("potential.type", "spectrum requires a static potential");
    fs::create_directories(out_dir);

    const ModeSet modes =
        stationary_modes(cfg.grid, cfg.physical, cfg.potential, cfg.boundary,
                         cfg.spectrum.k);
    const bool closed_form =
        cfg.potential_type == "zero" && cfg.boundary_preset.has_value() &&
        (*cfg.boundary_preset == "dirichlet" || *cfg.boundary_preset == "neumann" ||
         *cfg.boundary_preset == "periodic" || *cfg.boundary_preset == "antiperiodic");
    std::vector<double> analytic;
    if (closed_form)
        analytic = analytic_reference_spectrum(*cfg.boundary_preset, cfg.grid.length(),
                                               cfg.physical,
                                               static_cast<int>(modes.modes.size()));

    auto out = open_out(fs::path(out_dir) / "spectrum.csv");
    CsvWriter csv(out);
    std::vector<std::string> cols = {"index", "E_squared", "E_fv_plus", "E_fv_minus"};
    if (closed_form) {
        cols.push_back("analytic_E_squared");
        cols.push_back("rel_error");
    }
    csv.header(cols);
    for (std::size_t i = 0; i < modes.modes.size(); ++i) {
        const double e2 = modes.modes[i].e_squared;
        const double e = e2 >= 0.0 ? std::sqrt(e2)
                                   : std::numeric_limits<double>::quiet_NaN();
        std::vector<std::string> row = {CsvWriter::cell(static_cast<int>(i)),
                                        CsvWriter::cell(e2), CsvWriter::cell(e),
                                        CsvWriter::cell(-e)};
        if (closed_form) {
            const double ana = analytic[i];
            row.push_back(CsvWriter::cell(ana));
            row.push_back(CsvWriter::cell(std::abs(e2 - ana) / std::abs(ana)));
        }
        csv.row(row);
    }
}

void cmd_evolve(const RunConfig& cfg, const std::string& out_dir) {
    fs::create_directories(fs::path(out_dir) / "snapshots");
    const Trajectory traj =
        evolve_trajectory(cfg.initial_state(), cfg.evolution, cfg.grid, cfg.physical);

    auto obs_out = open_out(fs::path(out_dir) / "observables.csv");
    CsvWriter obs_csv(obs_out);
    obs_csv.header({"t", "pseudo_norm_re", "pseudo_norm_im", "majorana_defect", "j_a",
                    "j_b", "l2_psi"});
    for (std::size_t k = 0; k < traj.samples.size(); ++k) {
        const auto& s = traj.samples[k];
        obs_csv.row({CsvWriter::cell(s.t), CsvWriter::cell(s.obs.pseudo_norm.real()),
                     CsvWriter::cell(s.obs.pseudo_norm.imag()),
                     CsvWriter::cell(s.obs.majorana_defect), CsvWriter::cell(s.obs.j_a),
                     CsvWriter::cell(s.obs.j_b), CsvWriter::cell(s.obs.l2_psi)});

        std::ostringstream name;
        name << "psi_" << std::setw(4) << std::setfill('0') << k << ".csv";
        auto snap_out = open_out(fs::path(out_dir) / "snapshots" / name.str());
        CsvWriter snap(snap_out);
        snap.header({"x", "re_psi", "im_psi", "re_phi", "im_phi", "re_chi", "im_chi"});
        for (int i = 0; i < cfg.grid.n; ++i) {
            snap.row({CsvWriter::cell(cfg.grid.x(i)),
                      CsvWriter::cell(s.kfg.psi(i).real()),
                      CsvWriter::cell(s.kfg.psi(i).imag()),
                      CsvWriter::cell(s.fv.phi(i).real()),
                      CsvWriter::cell(s.fv.phi(i).imag()),
                      CsvWriter::cell(s.fv.chi(i).real()),
                      CsvWriter::cell(s.fv.chi(i).imag())});
        }
    }
}

namespace {

struct CheckReporter {
    std::ostream& os;
    bool all_ok = true;

    void item(const std::string& name, bool ok, const std::string& detail) {
        os << (ok ? "PASS" : "FAIL") << "  " << name;
        if (!detail.empty()) os << "  (" << detail << ")";
        os << "\n";
        all_ok = all_ok && ok;
    }
};

std::string magnitude(double v) {
    std::ostringstream ss;
    ss << std::scientific << std::setprecision(2) << v;
    return ss.str();
}

}  // namespace

bool cmd_check(const RunConfig& cfg, std::ostream& os) {
    CheckReporter rep{os};
    std::mt19937_64 rng(cfg.seed ? cfg.seed : 20231127u);
    std::normal_distribution<double> dist(0.0, 1.0);
    const Grid& grid = cfg.grid;
    const PhysicalParams& params = cfg.physical;

    auto random_field = [&] {
        ComplexField f(grid.n);
        for (int i = 0; i < grid.n; ++i) f(i) = Complex(dist(rng), dist(rng));
        return f;
    };

    // psi <-> Psi round trip
    {
        double worst = 0.0;
        for (int t = 0; t < 16; ++t) {
            KFGState s(random_field(), random_field(), 0.3);
            const KFGState back = fv_to_kfg(kfg_to_fv(s, params), params);
            const double scale = s.psi.norm() + s.psi_t.norm();
            worst = std::max(worst, (back.psi - s.psi).norm() / scale);
            worst = std::max(worst, (back.psi_t - s.psi_t).norm() / scale);
        }
        rep.item("round_trip_psi_Psi", worst < 1e-12, magnitude(worst));
    }

    // charge conjugation involution
    {
        FVState s(random_field(), random_field(), 0.0);
        const FVState twice = charge_conjugate(charge_conjugate(s));
        const bool exact = twice.phi == s.phi && twice.chi == s.chi;
        rep.item("charge_conjugation_involution", exact, exact ? "exact" : "mismatch");
    }

    // generalized adjoint: fixed point and involution
    {
        const DiscreteHamiltonian H =
            build_hamiltonian(grid, params, cfg.potential, 0.0, cfg.boundary);
        const DiscreteHamiltonian adj = generalized_adjoint(H);
        const double eq =
            (adj.matrix() - H.matrix()).cwiseAbs().maxCoeff() / H.operator_norm();
        rep.item("generalized_adjoint_equals_H", eq < 1e-10, magnitude(eq));
        const DiscreteHamiltonian twice = generalized_adjoint(adj);
        const double inv =
            (twice.matrix() - H.matrix()).cwiseAbs().maxCoeff() / H.operator_norm();
        rep.item("generalized_adjoint_involution", inv < 1e-12, magnitude(inv));
    }

    // pseudo-hermiticity: constrained vs free
    {
        const DiscreteHamiltonian H =
            build_hamiltonian(grid, params, cfg.potential, 0.0, cfg.boundary);
        const double d = pseudo_hermiticity_defect(H, 20, cfg.seed + 1);
        rep.item("pseudo_hermiticity_constrained", d < 1e-9, magnitude(d));
        const DiscreteHamiltonian F =
            build_free_hamiltonian(grid, params, cfg.potential, 0.0);
        const double df = pseudo_hermiticity_defect(F, 20, cfg.seed + 2);
        rep.item("pseudo_hermiticity_free_boundary_term", df > 1e-3, magnitude(df));
    }

    // admissibility and real constraint rank across the preset list
    {
        bool ok = true;
        for (const auto& name : preset_names()) {
            const BoundaryParams p = preset(name, params.lambda);
            const bool adm = is_majorana_admissible(p);
            const int rank = real_constraint_rank(p);
            const bool vi_vii = name.rfind("case_", 0) == 0;
            ok = ok && (adm == !vi_vii) && (rank == (vi_vii ? 4 : 2));
        }
        rep.item("preset_admissibility_ranks", ok, "presets (i)-(vii)");
    }

    // continuity equation convergence under halving
    {
        double prev = 0.0;
        bool ok = true;
        double ratio = 0.0;
        for (int nn : {65, 129}) {
            const Grid g(grid.a, grid.b, nn);
            const double dt = 0.25 * g.h / params.c;
            EvolutionConfig ev;
            ev.dt = dt;
            ev.steps = std::max(4, static_cast<int>(std::lround(0.2 / dt)));
            ev.formulation = Formulation::Kfg;
            ev.bc = is_majorana_admissible(cfg.boundary)
                        ? cfg.boundary
                        : preset("dirichlet", params.lambda);
            ev.S = cfg.potential;
            ev.record_every = 1;
            const double L = g.length();
            ComplexField psi0(nn), psit0(nn);
            for (int i = 0; i < nn; ++i) {
                const double xr = (g.x(i) - g.a) / L;
                psi0(i) = Complex(std::sin(std::numbers::pi * xr),
                                  0.5 * std::sin(2 * std::numbers::pi * xr));
                psit0(i) = Complex(0.0, 0.3 * std::sin(std::numbers::pi * xr));
            }
            const Trajectory traj =
                evolve_trajectory(KFGState(psi0, psit0, 0.0), ev, g, params);
            std::vector<KFGState> states;
            for (const auto& s : traj.samples) states.push_back(s.kfg);
            double worst = 0.0;
            for (const auto& r : continuity_residual(states, g, params))
                worst = std::max(worst, r.cwiseAbs().maxCoeff());
            if (prev > 0.0) {
                ratio = prev / worst;
                ok = ratio > 3.0;
            }
            prev = worst;
        }
        rep.item("continuity_convergence", ok, "ratio " + magnitude(ratio));
    }

    // Appendix A residual on a short split-system run (strided probe)
    {
        const BoundaryParams bc = is_majorana_admissible(cfg.boundary)
                                      ? cfg.boundary
                                      : preset("dirichlet", params.lambda);
        double prev = 0.0;
        double ratio = 0.0;
        bool ok = true;
        for (int nn : {65, 129}) {
            const Grid g(grid.a, grid.b, nn);
            EvolutionConfig ev;
            ev.dt = 0.25 * g.h / params.c;
            ev.steps = std::max(16, static_cast<int>(std::lround(0.3 / ev.dt / 4)) * 4);
            ev.formulation = Formulation::MajoranaPhi;
            ev.kind = MajoranaKind::Standard;
            ev.bc = bc;
            ev.S = cfg.potential;
            ev.record_every = 4;
            const double L = g.length();
            ComplexField psi0(nn);
            for (int i = 0; i < nn; ++i) {
                const double xr = (g.x(i) - g.a) / L;
                psi0(i) = std::sin(std::numbers::pi * xr) +
                          0.25 * std::sin(3 * std::numbers::pi * xr);
            }
            const Trajectory traj = evolve_trajectory(
                KFGState(psi0, ComplexField::Zero(nn), 0.0), ev, g, params);
            double worst = 0.0;
            for (const auto& r :
                 second_order_majorana_residual(traj, ev, g, params))
                worst = std::max(worst, r.cwiseAbs().maxCoeff());
            if (prev > 0.0) {
                ratio = prev / worst;
                ok = ratio > 3.0;
            }
            prev = worst;
        }
        rep.item("appendix_a_residual_convergence", ok, "ratio " + magnitude(ratio));
    }

    // Im(z) = Re(-i z) at every node of a random field
    {
        const ComplexField z = random_field();
        bool exact = true;
        const Complex minus_i(0.0, -1.0);
        for (int i = 0; i < grid.n; ++i)
            exact = exact && (std::imag(z(i)) == std::real(minus_i * z(i)));
        rep.item("b13_identity", exact, exact ? "exact" : "mismatch");
    }

    os << (rep.all_ok ? "ALL CHECKS PASSED" : "CHECK FAILURES PRESENT") << "\n";
    return rep.all_ok;
}

void cmd_nonrel(const RunConfig& cfg, const std::string& out_dir) {
    if (cfg.evolution.formulation != Formulation::MajoranaPhi ||
        cfg.evolution.kind != MajoranaKind::Standard)
        throw ConfigError("evolution.formulation",
                          "nonrel requires the majorana_phi formulation with the "
                          "standard kind");
    fs::create_directories(out_dir);

    const KFGState init = cfg.initial_state();
    RealField envelope0 = init.psi.real();
    const ScalingStudy study =
        run_scaling_study(cfg.grid, cfg.physical, cfg.boundary, cfg.potential,
                          envelope0, cfg.nonrel.doublings, cfg.nonrel.t_phys,
                          cfg.nonrel.dt0, cfg.nonrel.record_every);

    auto dev_out = open_out(fs::path(out_dir) / "deviation.csv");
    CsvWriter dev_csv(dev_out);
    dev_csv.header({"t", "deviation", "mc2"});
    for (const auto& rung : study.rungs)
        for (const auto& [t, dev] : rung.samples)
            dev_csv.row({CsvWriter::cell(t), CsvWriter::cell(dev),
                         CsvWriter::cell(rung.mc2)});

    auto sum_out = open_out(fs::path(out_dir) / "scaling_summary.csv");
    CsvWriter sum_csv(sum_out);
    sum_csv.header({"rungs", "alpha", "status"});
    sum_csv.row({CsvWriter::cell(static_cast<int>(study.rungs.size())),
                 study.sufficient ? CsvWriter::cell(study.alpha) : "nan",
                 study.sufficient ? "ok" : "insufficient_data"});
}

}  // namespace kfgm
