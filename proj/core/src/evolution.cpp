#include "kfgm/evolution.hpp"

#include <cmath>
#include <stdexcept>

namespace kfgm {

namespace {
const Complex kI(0.0, 1.0);
}

std::string to_string(Formulation f) {
    switch (f) {
        case Formulation::Kfg: return "kfg";
        case Formulation::Fv: return "fv";
        case Formulation::MajoranaPhi: return "majorana_phi";
        case Formulation::MajoranaChi: return "majorana_chi";
    }
    return "?";
}

void EvolutionConfig::validate(const Grid& grid, const PhysicalParams& params) const {
    if (!(dt > 0.0)) throw std::invalid_argument("evolution.dt: must be > 0");
    if (steps < 1) throw std::invalid_argument("evolution.steps: must be >= 1");
    if (record_every < 1)
        throw std::invalid_argument("evolution.record_every: must be >= 1");
    const bool explicit_stepper = formulation != Formulation::Fv;
    if (explicit_stepper && params.c * dt / grid.h > 1.0 + 1e-12)
        throw std::invalid_argument("evolution.dt: violates the CFL bound c dt/h <= 1");
    if ((formulation == Formulation::MajoranaPhi ||
         formulation == Formulation::MajoranaChi) &&
        !is_majorana_admissible(bc))
        throw std::invalid_argument(
            "boundary: majorana formulations require a Majorana-admissible "
            "boundary condition (m2 = 0)");
}

KfgStepper::KfgStepper(const Grid& grid, const PhysicalParams& params,
                       const ScalarPotential& S, const BoundaryParams& bc, double dt)
    : red_(std::make_shared<BoundaryReduction>(grid, bc)),
      params_(params),
      S_(S),
      dt_(dt) {
    lap_ = red_->laplacian();
    if (S_.is_static()) pot_static_ = red_->reduce_diagonal(S_.sample(grid, 0.0));
    u_ = ComplexField::Zero(red_->n_reduced());
    v_ = ComplexField::Zero(red_->n_reduced());
}

ComplexField KfgStepper::apply_op(const ComplexField& u, double t) const {
    const double mc2 = params_.mc2();
    const double hbar2 = params_.hbar * params_.hbar;
    ComplexField out = (params_.c * params_.c) * (lap_ * u);
    const double mass_term = mc2 * mc2 / hbar2;
    if (S_.is_static()) {
        for (Eigen::Index i = 0; i < u.size(); ++i)
            out(i) += (mass_term + 2.0 * mc2 * pot_static_(i) / hbar2) * u(i);
    } else {
        const RealField s = red_->reduce_diagonal(S_.sample(red_->grid(), t));
        for (Eigen::Index i = 0; i < u.size(); ++i)
            out(i) += (mass_term + 2.0 * mc2 * s(i) / hbar2) * u(i);
    }
    return out;
}

void KfgStepper::step() {
    v_ -= (0.5 * dt_) * apply_op(u_, t_);
    u_ += dt_ * v_;
    t_ += dt_;
    v_ -= (0.5 * dt_) * apply_op(u_, t_);
}

void KfgStepper::set_state(ComplexField u_reduced, ComplexField v_reduced, double t) {
    if (u_reduced.size() != red_->n_reduced() || v_reduced.size() != red_->n_reduced())
        throw std::invalid_argument("KfgStepper::set_state: size mismatch");
    u_ = std::move(u_reduced);
    v_ = std::move(v_reduced);
    t_ = t;
}

KFGState KfgStepper::state() const {
    return KFGState(red_->extend_field(u_), red_->extend_field(v_), t_);
}

KFGState step_kfg(const KFGState& state, const Grid& grid, const PhysicalParams& params,
                  const ScalarPotential& S, const BoundaryParams& bc, double dt) {
    if (params.c * dt / grid.h > 1.0 + 1e-12)
        throw std::invalid_argument("step_kfg: dt violates the CFL bound c dt/h <= 1");
    KfgStepper stepper(grid, params, S, bc, dt);
    stepper.set_state(stepper.reduction().restrict_field(state.psi),
                      stepper.reduction().restrict_field(state.psi_t), state.t);
    stepper.step();
    return stepper.state();
}

CrankNicolsonStepper::CrankNicolsonStepper(const DiscreteHamiltonian& H, double dt)
    : H_(std::make_shared<DiscreteHamiltonian>(H)), dt_(dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("CrankNicolsonStepper: dt must be > 0");
    const double hbar = H.params().hbar;
    const double mc2 = H.params().mc2();
    alpha_ = dt / (2.0 * hbar);
    B_ = 2.0 * H.scalar_block();
    B_.diagonal().array() += mc2;
    Eigen::MatrixXcd lhs = (alpha_ * alpha_ * mc2) * B_;
    lhs.diagonal().array() += 1.0;
    lu_.compute(lhs);
    if (lu_.matrixLU().diagonal().cwiseAbs().minCoeff() <= 0.0)
        throw std::runtime_error("CrankNicolsonStepper: singular linear system");
}

Eigen::VectorXcd CrankNicolsonStepper::step(const Eigen::VectorXcd& stacked) const {
    const Eigen::Index n = stacked.size() / 2;
    const double mc2 = H_->params().mc2();
    const Eigen::VectorXcd psi = stacked.head(n) + stacked.tail(n);
    const Eigen::VectorXcd v = stacked.head(n) - stacked.tail(n);
    // (I + a^2 mc^2 B) psi' = (I - a^2 mc^2 B) psi - 2 i a mc^2 v
    Eigen::VectorXcd rhs = psi - (alpha_ * alpha_ * mc2) * (B_ * psi)
                           - (2.0 * kI * alpha_ * mc2) * v;
    const Eigen::VectorXcd psi_new = lu_.solve(rhs);
    const Eigen::VectorXcd v_new = v - (kI * alpha_) * (B_ * (psi_new + psi));
    Eigen::VectorXcd out(2 * n);
    out.head(n) = 0.5 * (psi_new + v_new);
    out.tail(n) = 0.5 * (psi_new - v_new);
    return out;
}

FVState step_fv(const FVState& state, const DiscreteHamiltonian& H, double dt) {
    CrankNicolsonStepper stepper(H, dt);
    const Eigen::Index k = H.block_size();
    Eigen::VectorXcd v(2 * k);
    if (H.is_constrained()) {
        const auto& red = H.reduction();
        v.head(k) = red.restrict_field(state.phi);
        v.tail(k) = red.restrict_field(state.chi);
        v = stepper.step(v);
        return FVState(red.extend_field(v.head(k)), red.extend_field(v.tail(k)),
                       state.t + dt);
    }
    v.head(k) = state.phi;
    v.tail(k) = state.chi;
    v = stepper.step(v);
    return FVState(v.head(k), v.tail(k), state.t + dt);
}

MajoranaEvolver::MajoranaEvolver(const Grid& grid, const PhysicalParams& params,
                                 const ScalarPotential& S, const BoundaryParams& bc,
                                 MajoranaKind kind, Formulation component, double dt)
    : params_(params),
      kind_(kind),
      component_kind_(component),
      stepper_(grid, params, S, bc, dt) {
    if (component != Formulation::MajoranaPhi && component != Formulation::MajoranaChi)
        throw std::invalid_argument("MajoranaEvolver: component must be majorana_phi/chi");
    if (!is_majorana_admissible(bc))
        throw std::invalid_argument(
            "MajoranaEvolver: boundary condition is not Majorana-admissible");
}

void MajoranaEvolver::set_initial(const RealField& carrier, const RealField& carrier_t) {
    const auto& red = stepper_.reduction();
    stepper_.set_state(red.restrict_field(carrier.cast<Complex>()),
                       red.restrict_field(carrier_t.cast<Complex>()), 0.0);
}

ComplexField MajoranaEvolver::component() const {
    const auto& red = stepper_.reduction();
    const ComplexField u = red.extend_field(stepper_.position());
    const ComplexField v = red.extend_field(stepper_.velocity());
    const double q = params_.hbar / params_.mc2();
    const bool is_phi = component_kind_ == Formulation::MajoranaPhi;
    ComplexField comp(u.size());
    if (kind_ == MajoranaKind::Standard) {
        // carrier is Re(comp); Im = +q u_t for phi, -q u_t for chi
        const double sgn = is_phi ? 1.0 : -1.0;
        for (Eigen::Index i = 0; i < u.size(); ++i)
            comp(i) = Complex(u(i).real(), sgn * q * v(i).real());
    } else {
        // carrier is Im(comp); Re = -q u_t for phi, +q u_t for chi
        const double sgn = is_phi ? -1.0 : 1.0;
        for (Eigen::Index i = 0; i < u.size(); ++i)
            comp(i) = Complex(sgn * q * v(i).real(), u(i).real());
    }
    return comp;
}

FVState MajoranaEvolver::assemble() const {
    const ComplexField comp = component();
    const bool is_phi = component_kind_ == Formulation::MajoranaPhi;
    const double sgn = (kind_ == MajoranaKind::Standard) ? 1.0 : -1.0;
    if (is_phi) return FVState(comp, sgn * comp.conjugate(), stepper_.time());
    return FVState(sgn * comp.conjugate(), comp, stepper_.time());
}

ComplexField step_majorana_first_order(MajoranaEvolver& evolver) {
    evolver.step();
    return evolver.component();
}

namespace {

FVState to_fv(const InitialState& initial, const PhysicalParams& params) {
    if (std::holds_alternative<FVState>(initial)) return std::get<FVState>(initial);
    return kfg_to_fv(std::get<KFGState>(initial), params);
}

KFGState to_kfg(const InitialState& initial, const PhysicalParams& params) {
    if (std::holds_alternative<KFGState>(initial)) return std::get<KFGState>(initial);
    return fv_to_kfg(std::get<FVState>(initial), params);
}

}  // namespace

Trajectory evolve_trajectory(const InitialState& initial, const EvolutionConfig& cfg,
                             const Grid& grid, const PhysicalParams& params) {
    cfg.validate(grid, params);
    Trajectory traj;
    traj.formulation = cfg.formulation;
    traj.kind = cfg.kind;

    auto record_fv = [&](const FVState& fv) {
        TrajectorySample s;
        s.t = fv.t;
        s.fv = fv;
        s.kfg = fv_to_kfg(fv, params);
        s.obs = compute_observables(fv, grid, params, cfg.kind);
        traj.samples.push_back(std::move(s));
    };

    switch (cfg.formulation) {
        case Formulation::Kfg: {
            const KFGState init = to_kfg(initial, params);
            KfgStepper stepper(grid, params, cfg.S, cfg.bc, cfg.dt);
            stepper.set_state(stepper.reduction().restrict_field(init.psi),
                              stepper.reduction().restrict_field(init.psi_t), init.t);
            record_fv(kfg_to_fv(stepper.state(), params));
            for (int s = 1; s <= cfg.steps; ++s) {
                stepper.step();
                if (s % cfg.record_every == 0)
                    record_fv(kfg_to_fv(stepper.state(), params));
            }
            break;
        }
        case Formulation::Fv: {
            const FVState init = to_fv(initial, params);
            DiscreteHamiltonian H =
                build_hamiltonian(grid, params, cfg.S, init.t + 0.5 * cfg.dt, cfg.bc);
            const auto& red = H.reduction();
            const Eigen::Index k = H.block_size();
            Eigen::VectorXcd state(2 * k);
            state.head(k) = red.restrict_field(init.phi);
            state.tail(k) = red.restrict_field(init.chi);
            double t = init.t;
            auto extend = [&](double tt) {
                return FVState(red.extend_field(state.head(k)),
                               red.extend_field(state.tail(k)), tt);
            };
            record_fv(extend(t));
            if (cfg.S.is_static()) {
                CrankNicolsonStepper stepper(H, cfg.dt);
                for (int s = 1; s <= cfg.steps; ++s) {
                    state = stepper.step(state);
                    t += cfg.dt;
                    if (s % cfg.record_every == 0) record_fv(extend(t));
                }
            } else {
                for (int s = 1; s <= cfg.steps; ++s) {
                    DiscreteHamiltonian Hs =
                        build_hamiltonian(grid, params, cfg.S, t + 0.5 * cfg.dt, cfg.bc);
                    CrankNicolsonStepper stepper(Hs, cfg.dt);
                    state = stepper.step(state);
                    t += cfg.dt;
                    if (s % cfg.record_every == 0) record_fv(extend(t));
                }
            }
            break;
        }
        case Formulation::MajoranaPhi:
        case Formulation::MajoranaChi: {
            MajoranaEvolver ev(grid, params, cfg.S, cfg.bc, cfg.kind, cfg.formulation,
                               cfg.dt);
            const bool is_phi = cfg.formulation == Formulation::MajoranaPhi;
            RealField carrier, carrier_t;
            if (std::holds_alternative<FVState>(initial)) {
                const FVState& fv = std::get<FVState>(initial);
                const ComplexField& comp = is_phi ? fv.phi : fv.chi;
                const double q = params.hbar / params.mc2();
                if (cfg.kind == MajoranaKind::Standard) {
                    carrier = comp.real();
                    const double sgn = is_phi ? 1.0 : -1.0;
                    carrier_t = (sgn / q) * comp.imag();
                } else {
                    carrier = comp.imag();
                    const double sgn = is_phi ? -1.0 : 1.0;
                    carrier_t = (sgn / q) * comp.real();
                }
            } else {
                const KFGState& kfg = std::get<KFGState>(initial);
                if (cfg.kind == MajoranaKind::Standard) {
                    // psi = 2 Re(phi) = 2 Re(chi)
                    carrier = 0.5 * kfg.psi.real();
                    carrier_t = 0.5 * kfg.psi_t.real();
                } else {
                    // psi = 2 i Im(phi) = 2 i Im(chi)
                    carrier = 0.5 * kfg.psi.imag();
                    carrier_t = 0.5 * kfg.psi_t.imag();
                }
            }
            ev.set_initial(carrier, carrier_t);
            record_fv(ev.assemble());
            for (int s = 1; s <= cfg.steps; ++s) {
                ev.step();
                if (s % cfg.record_every == 0) record_fv(ev.assemble());
            }
            break;
        }
    }
    return traj;
}

std::vector<ComplexField> second_order_majorana_residual(const Trajectory& traj,
                                                         const EvolutionConfig& cfg,
                                                         const Grid& grid,
                                                         const PhysicalParams& params) {
    if (traj.samples.size() < 3)
        throw std::invalid_argument("second_order_majorana_residual: need >= 3 samples");
    const double dt = traj.samples[1].t - traj.samples[0].t;
    for (std::size_t k = 1; k < traj.samples.size(); ++k) {
        const double step = traj.samples[k].t - traj.samples[k - 1].t;
        if (std::abs(step - dt) > 1e-12 * std::max(1.0, std::abs(dt)))
            throw std::invalid_argument(
                "second_order_majorana_residual: nonuniform time steps");
    }
    const bool is_phi = cfg.formulation != Formulation::MajoranaChi;
    const double rhs_sign = is_phi ? 1.0 : -1.0;
    const double conj_sign = (cfg.kind == MajoranaKind::Standard) ? 1.0 : -1.0;

    BoundaryReduction red(grid, cfg.bc);
    const Eigen::MatrixXcd lap = red.laplacian();
    const double mc2 = params.mc2();
    const double hbar = params.hbar;
    const double hbar2 = hbar * hbar;

    std::vector<ComplexField> comps;
    comps.reserve(traj.samples.size());
    for (const auto& s : traj.samples)
        comps.push_back(red.restrict_field(is_phi ? s.fv.phi : s.fv.chi));

    std::vector<ComplexField> out;
    for (std::size_t k = 1; k + 1 < traj.samples.size(); ++k) {
        const double t = traj.samples[k].t;
        const ComplexField& c = comps[k];
        ComplexField e2 = (-hbar2 / (dt * dt)) *
                          (comps[k + 1] - 2.0 * comps[k] + comps[k - 1]);
        ComplexField cp2 = (hbar2 * params.c * params.c) * (lap * c);
        const RealField s_now = red.reduce_diagonal(cfg.S.sample(grid, t));
        const RealField s_dot = red.reduce_diagonal(
            RealField((cfg.S.sample(grid, t + dt) - cfg.S.sample(grid, t - dt)) /
                      (2.0 * dt)));
        ComplexField res(c.size());
        for (Eigen::Index i = 0; i < c.size(); ++i) {
            const Complex es = kI * hbar * s_dot(i);
            res(i) = e2(i) - cp2(i) - mc2 * mc2 * c(i) - 2.0 * mc2 * s_now(i) * c(i) -
                     rhs_sign * es * (c(i) + conj_sign * std::conj(c(i)));
        }
        out.push_back(std::move(res));
    }
    return out;
}

}  // namespace kfgm
