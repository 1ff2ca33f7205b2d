#include "kfgm/nonrel.hpp"

#include <cmath>
#include <stdexcept>

namespace kfgm {

namespace {
const Complex kI(0.0, 1.0);
}

EnvelopeState extract_envelope(const ComplexField& phi, double t,
                               const PhysicalParams& params) {
    const Complex phase = std::polar(1.0, params.mc2() * t / params.hbar);
    EnvelopeState env;
    env.phi_nr = phase * phi;
    env.t = t;
    return env;
}

SchrodingerStepper::SchrodingerStepper(const Grid& grid, const PhysicalParams& params,
                                       const ScalarPotential& S,
                                       const BoundaryParams& bc, double dt)
    : red_(std::make_shared<BoundaryReduction>(grid, bc)),
      params_(params),
      S_(S),
      dt_(dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("SchrodingerStepper: dt must be > 0");
    if (!is_majorana_admissible(bc))
        throw std::invalid_argument(
            "SchrodingerStepper: boundary condition is not Majorana-admissible");
    A_ = (params.hbar * params.hbar / (2.0 * params.mass)) * red_->laplacian();
    env_ = ComplexField::Zero(red_->n_reduced());
    if (S_.is_static()) {
        refactor(0.0);
        cached_ = true;
    }
}

void SchrodingerStepper::refactor(double t_mid) {
    const double alpha = dt_ / (2.0 * params_.hbar);
    Eigen::MatrixXcd Asnap = A_;
    Asnap.diagonal() +=
        red_->reduce_diagonal(S_.sample(red_->grid(), t_mid)).cast<Complex>();
    Eigen::MatrixXcd lhs = (kI * alpha) * Asnap;
    lhs.diagonal().array() += 1.0;
    rhs_ = (-kI * alpha) * Asnap;
    rhs_.diagonal().array() += 1.0;
    lu_.compute(lhs);
}

void SchrodingerStepper::step() {
    if (!cached_) refactor(t_ + 0.5 * dt_);
    env_ = lu_.solve(rhs_ * env_);
    t_ += dt_;
}

EnvelopeState SchrodingerStepper::state() const {
    EnvelopeState out;
    out.phi_nr = red_->extend_field(env_);
    out.t = t_;
    return out;
}

void SchrodingerStepper::set_state(const ComplexField& full, double t) {
    env_ = red_->restrict_field(full);
    t_ = t;
}

EnvelopeState step_schrodinger(const EnvelopeState& env, const ScalarPotential& S,
                               const BoundaryParams& bc, double dt, const Grid& grid,
                               const PhysicalParams& params) {
    SchrodingerStepper stepper(grid, params, S, bc, dt);
    stepper.set_state(env.phi_nr, env.t);
    stepper.step();
    return stepper.state();
}

std::vector<RealField> b11_residual(const std::vector<EnvelopeState>& env_traj,
                                    const PhysicalParams& params,
                                    const ScalarPotential& S, const Grid& grid,
                                    const BoundaryParams& bc) {
    if (env_traj.size() < 3)
        throw std::invalid_argument("b11_residual: need >= 3 envelope samples");
    const double dt = env_traj[1].t - env_traj[0].t;
    for (std::size_t k = 1; k < env_traj.size(); ++k) {
        const double step = env_traj[k].t - env_traj[k - 1].t;
        if (std::abs(step - dt) > 1e-12 * std::max(1.0, std::abs(dt)))
            throw std::invalid_argument("b11_residual: nonuniform time steps");
    }
    BoundaryReduction red(grid, bc);
    const Eigen::MatrixXcd A =
        (params.hbar * params.hbar / (2.0 * params.mass)) * red.laplacian();
    const double mc2 = params.mc2();

    std::vector<ComplexField> envs;
    envs.reserve(env_traj.size());
    for (const auto& e : env_traj) envs.push_back(red.restrict_field(e.phi_nr));

    std::vector<RealField> out;
    for (std::size_t k = 1; k + 1 < env_traj.size(); ++k) {
        const double t = env_traj[k].t;
        const ComplexField dphi = (envs[k + 1] - envs[k - 1]) / (2.0 * dt);
        const RealField s_now = red.reduce_diagonal(S.sample(grid, t));
        ComplexField bracket = -kI * params.hbar * dphi + A * envs[k];
        for (Eigen::Index i = 0; i < bracket.size(); ++i)
            bracket(i) += s_now(i) * envs[k](i);
        const Complex phase = std::polar(1.0, -mc2 * t / params.hbar);
        RealField r(bracket.size());
        for (Eigen::Index i = 0; i < bracket.size(); ++i)
            r(i) = std::real(phase * bracket(i));
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<double> nonrel_deviation(const Trajectory& rel_traj,
                                     const std::vector<EnvelopeState>& schro_traj,
                                     const PhysicalParams& params, const Grid& grid) {
    if (rel_traj.samples.size() != schro_traj.size())
        throw std::invalid_argument("nonrel_deviation: sample count mismatch");
    std::vector<double> out;
    out.reserve(schro_traj.size());
    for (std::size_t k = 0; k < schro_traj.size(); ++k) {
        const auto& rel = rel_traj.samples[k];
        if (std::abs(rel.t - schro_traj[k].t) > 1e-10 * std::max(1.0, std::abs(rel.t)))
            throw std::invalid_argument("nonrel_deviation: time sampling mismatch");
        const EnvelopeState env = extract_envelope(rel.fv.phi, rel.t, params);
        const double ref = l2_norm(schro_traj[k].phi_nr, grid);
        const ComplexField diff = env.phi_nr - schro_traj[k].phi_nr;
        out.push_back(ref > 0.0 ? l2_norm(diff, grid) / ref : 0.0);
    }
    return out;
}

ScalingStudy run_scaling_study(const Grid& grid, const PhysicalParams& base,
                               const BoundaryParams& bc, const ScalarPotential& S,
                               const RealField& envelope0, int doublings,
                               double t_phys, double dt0, int record_every) {
    if (doublings < 0) throw std::invalid_argument("run_scaling_study: doublings >= 0");
    if (envelope0.size() != grid.n)
        throw std::invalid_argument("run_scaling_study: envelope/grid size mismatch");
    if (!(t_phys > 0.0) || !(dt0 > 0.0))
        throw std::invalid_argument("run_scaling_study: t_phys and dt0 must be > 0");

    ScalingStudy study;
    for (int k = 0; k <= doublings; ++k) {
        const double c_k = base.c * std::pow(2.0, 0.5 * k);  // doubles c^2 per rung
        const PhysicalParams params(base.mass, c_k, base.hbar, base.lambda);
        const double mc2 = params.mc2();
        const double dt = dt0 / std::pow(4.0, k);
        if (params.c * dt / grid.h > 1.0)
            throw std::invalid_argument("run_scaling_study: dt0 violates CFL at rung " +
                                        std::to_string(k));
        int steps = std::max(1, static_cast<int>(std::lround(t_phys / dt)));
        const double dt_k = t_phys / steps;

        KfgStepper rel(grid, params, S, bc, dt_k);
        const auto& red = rel.reduction();
        const ComplexField u0 = red.restrict_field(envelope0.cast<Complex>());
        rel.set_state(u0, ComplexField::Zero(u0.size()), 0.0);

        const Eigen::MatrixXcd lap = red.laplacian();
        const double num =
            std::real((u0.adjoint() *
                       (red.weights().asDiagonal() *
                        ((params.hbar * params.hbar / (2.0 * params.mass)) * (lap * u0))))(0));
        const double den = red.weights().dot(u0.cwiseAbs2().matrix()) * mc2;
        const double epsilon = num / den;

        SchrodingerStepper schro(grid, params, S, bc, dt_k);
        schro.set_state(envelope0.cast<Complex>(), 0.0);

        LadderRung rung;
        rung.mc2 = mc2;
        rung.epsilon = epsilon;
        double sum_sq = 0.0;
        const double q = params.hbar / mc2;
        for (int s = 1; s <= steps; ++s) {
            rel.step();
            schro.step();
            if (s % record_every == 0 || s == steps) {
                const ComplexField phi =
                    rel.position() + (kI * q) * rel.velocity();  // reduced phi
                const Complex phase = std::polar(1.0, mc2 * rel.time() / params.hbar);
                const ComplexField env = phase * phi;
                const ComplexField ref = schro.reduction().restrict_field(
                    schro.state().phi_nr);
                const double ref_norm = std::sqrt(red.weights().dot(ref.cwiseAbs2().matrix()));
                const double dnorm =
                    std::sqrt(red.weights().dot((env - ref).cwiseAbs2().matrix()));
                if (ref_norm > 0.0) {
                    const double dev = dnorm / ref_norm;
                    sum_sq += dev * dev;
                    rung.samples.emplace_back(rel.time(), dev);
                }
            }
        }
        rung.rms_deviation = rung.samples.empty()
                                 ? 0.0
                                 : std::sqrt(sum_sq / rung.samples.size());
        study.rungs.push_back(rung);
    }

    study.sufficient = study.rungs.size() >= 2;
    if (study.sufficient) {
        // least-squares slope of log(dev) against log(eps)
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const double n = static_cast<double>(study.rungs.size());
        for (const auto& r : study.rungs) {
            const double x = std::log(r.epsilon), y = std::log(r.rms_deviation);
            sx += x; sy += y; sxx += x * x; sxy += x * y;
        }
        study.alpha = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    }
    return study;
}

}  // namespace kfgm
