#pragma once

#include <Eigen/Dense>
#include <memory>
#include <variant>
#include <vector>

#include "kfgm/operators.hpp"

namespace kfgm {

enum class Formulation { Kfg, Fv, MajoranaPhi, MajoranaChi };

std::string to_string(Formulation f);

struct EvolutionConfig {
    double dt = 0.0;
    int steps = 0;
    Formulation formulation = Formulation::Kfg;
    MajoranaKind kind = MajoranaKind::Standard;
    BoundaryParams bc;
    ScalarPotential S;
    int record_every = 1;

    /// Checks dt, steps, record_every, the CFL bound c dt/h <= 1 for the
    /// explicit formulations, and Majorana admissibility where required.
    void validate(const Grid& grid, const PhysicalParams& params) const;
};

/// Velocity-Verlet stepper for psi_tt = -(c^2 Lap + ((mc^2)^2 + 2 mc^2 S)/hbar^2) psi
/// on the reduced coordinates of the boundary family.
class KfgStepper {
public:
    KfgStepper(const Grid& grid, const PhysicalParams& params,
               const ScalarPotential& S, const BoundaryParams& bc, double dt);

    void step();

    const ComplexField& position() const { return u_; }
    const ComplexField& velocity() const { return v_; }
    double time() const { return t_; }
    const BoundaryReduction& reduction() const { return *red_; }

    void set_state(ComplexField u_reduced, ComplexField v_reduced, double t);

    /// Full-grid (psi, psi_t) snapshot.
    KFGState state() const;

private:
    ComplexField apply_op(const ComplexField& u, double t) const;

    std::shared_ptr<const BoundaryReduction> red_;
    PhysicalParams params_;
    ScalarPotential S_;
    Eigen::MatrixXcd lap_;
    RealField pot_static_;  // valid when S is static
    double dt_, t_ = 0.0;
    ComplexField u_, v_;
};

/// One leapfrog (velocity-Verlet) step of the second-order equation.
KFGState step_kfg(const KFGState& state, const Grid& grid, const PhysicalParams& params,
                  const ScalarPotential& S, const BoundaryParams& bc, double dt);

/// Crank-Nicolson stepper for i hbar dPsi/dt = H Psi, factored once per
/// Hamiltonian. The 2x2 block system is solved through its Schur complement
/// in the (psi, phi - chi) combination, which needs only block-size solves.
class CrankNicolsonStepper {
public:
    CrankNicolsonStepper(const DiscreteHamiltonian& H, double dt);

    /// One step on reduced stacked coordinates [phi; chi].
    Eigen::VectorXcd step(const Eigen::VectorXcd& stacked) const;

    const DiscreteHamiltonian& hamiltonian() const { return *H_; }
    double dt() const { return dt_; }

private:
    std::shared_ptr<const DiscreteHamiltonian> H_;
    double dt_;
    double alpha_;  // dt / (2 hbar)
    Eigen::MatrixXcd B_;  // 2 A + mc^2
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu_;  // I + alpha^2 mc^2 B
};

/// One Crank-Nicolson step; for time-dependent S the caller builds H at the
/// midpoint time. Full-grid in, full-grid out.
FVState step_fv(const FVState& state, const DiscreteHamiltonian& H, double dt);

/// Evolves one component of Psi through the equivalent split system: the
/// carrier (Re or Im of the component, by kind) obeys the real second-order
/// equation and the partner quadrature is (hbar/mc^2) times its time
/// derivative with the sign fixed by (kind, component).
class MajoranaEvolver {
public:
    MajoranaEvolver(const Grid& grid, const PhysicalParams& params,
                    const ScalarPotential& S, const BoundaryParams& bc,
                    MajoranaKind kind, Formulation component, double dt);

    /// Initial data: carrier field and its time derivative (full grid, real).
    void set_initial(const RealField& carrier, const RealField& carrier_t);

    void step() { stepper_.step(); }
    double time() const { return stepper_.time(); }

    /// The evolved component phi (or chi) on the full grid.
    ComplexField component() const;

    /// Assembles Psi with the partner component from the Majorana condition.
    FVState assemble() const;

private:
    PhysicalParams params_;
    MajoranaKind kind_;
    Formulation component_kind_;
    KfgStepper stepper_;
};

/// One step of the first-order one-component equation; the evolver carries the
/// component together with its time-derivative scaffold. Returns the evolved
/// phi (or chi) on the full grid.
ComplexField step_majorana_first_order(MajoranaEvolver& evolver);

struct TrajectorySample {
    double t = 0.0;
    FVState fv;
    KFGState kfg;
    Observables obs;
};

struct Trajectory {
    Formulation formulation = Formulation::Kfg;
    MajoranaKind kind = MajoranaKind::Standard;
    std::vector<TrajectorySample> samples;
};

using InitialState = std::variant<KFGState, FVState>;

/// Repeated stepping with observables recorded every record_every steps
/// (the initial state is always recorded).
Trajectory evolve_trajectory(const InitialState& initial, const EvolutionConfig& cfg,
                             const Grid& grid, const PhysicalParams& params);

/// Residual of the second-order one-component equation
///   [E^2 - (c p)^2 - (mc^2)^2 - 2 mc^2 S] comp = sign (E S)(comp +- comp^*)
/// evaluated by finite differences on the recorded trajectory (E^2 by central
/// time differences at the recording stride, E S by central differences of S).
/// Returned per interior recorded time, on reduced coordinates.
std::vector<ComplexField> second_order_majorana_residual(const Trajectory& traj,
                                                         const EvolutionConfig& cfg,
                                                         const Grid& grid,
                                                         const PhysicalParams& params);

}  // namespace kfgm
