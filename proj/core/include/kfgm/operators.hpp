#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <memory>
#include <vector>

#include "kfgm/boundary.hpp"
#include "kfgm/fields.hpp"
#include "kfgm/physical.hpp"
#include "kfgm/potential.hpp"

namespace kfgm {

/// Maximum node count for which dense operators are assembled.
inline constexpr int kMaxDenseNodes = 4096;

/// Scalar-level realization of the boundary family on a grid.
///
/// The two boundary node values are split per the eigenvalues of U2:
/// the Dirichlet-type subspace is eliminated from the unknowns, the natural
/// channels enter the stiffness matrix as a Hermitian boundary form. The
/// result is a reduced stiffness K (exactly Hermitian) and diagonal weights g
/// such that g^{-1} K is the discrete -d2/dx2 honoring the boundary family,
/// and the reduced g-inner product equals the full-grid trapezoid product.
class BoundaryReduction {
public:
    BoundaryReduction(const Grid& grid, const BoundaryParams& bc);

    const Grid& grid() const { return grid_; }
    const BoundaryParams& boundary() const { return bc_; }
    int n_full() const { return grid_.n; }
    int n_reduced() const { return n_red_; }
    int essential_count() const { return essential_count_; }

    const RealField& weights() const { return g_; }
    const Eigen::MatrixXcd& stiffness() const { return stiffness_; }

    /// Dense G^{-1} K, the reduced discrete -d2/dx2.
    Eigen::MatrixXcd laplacian() const;

    /// Reduced diagonal of multiplication by a node-sampled function.
    RealField reduce_diagonal(const RealField& node_values) const;

    ComplexField restrict_field(const ComplexField& full) const;
    ComplexField extend_field(const ComplexField& reduced) const;

    /// extend(restrict(f)): the projection onto the discretely admissible space.
    ComplexField project(const ComplexField& full) const;

private:
    Grid grid_;
    BoundaryParams bc_;
    int n_red_ = 0;
    int essential_count_ = 0;
    Eigen::Vector2cd free_vec_;  // boundary direction (b, a) kept when one
                                 // essential constraint is present
    RealField g_;
    Eigen::MatrixXcd stiffness_;
};

/// Discretization of the FV Hamiltonian acting on stacked [phi; chi].
///
/// Constrained form (from build_hamiltonian): the matrix acts on reduced
/// coordinates, 2 n_red x 2 n_red, with blocks
///   [ A + mc^2   A        ]
///   [ -A         -A - mc^2],  A = p^2/2m + S.
/// Free form (from build_free_hamiltonian): full-grid 2n x 2n with one-sided
/// second-derivative rows at the interval ends and no boundary conditions.
class DiscreteHamiltonian {
public:
    /// Wrap an explicit matrix with its scalar-block quadrature weights
    /// (block size = rows/2). Used by adjoint algebra and tests.
    DiscreteHamiltonian(Eigen::MatrixXcd matrix, RealField block_weights);

    const Eigen::MatrixXcd& matrix() const { return matrix_; }
    const RealField& block_weights() const { return weights_; }
    Eigen::Index block_size() const { return weights_.size(); }

    bool is_constrained() const { return reduction_ != nullptr; }
    const BoundaryReduction& reduction() const;

    double potential_time() const { return time_; }
    const PhysicalParams& params() const { return params_; }

    /// A = p^2/2m + S on the operator's coordinates (reduced or full-grid).
    const Eigen::MatrixXcd& scalar_block() const { return scalar_block_; }

    Eigen::VectorXcd apply(const Eigen::VectorXcd& stacked) const;

    /// Full-grid action: restrict, apply, extend. For the free form this is a
    /// plain matrix product.
    FVState apply(const FVState& state) const;

    /// Infinity norm of the matrix, used to normalize defect measurements.
    double operator_norm() const;

    friend DiscreteHamiltonian build_hamiltonian(const Grid&, const PhysicalParams&,
                                                 const ScalarPotential&, double,
                                                 const BoundaryParams&);
    friend DiscreteHamiltonian build_free_hamiltonian(const Grid&,
                                                      const PhysicalParams&,
                                                      const ScalarPotential&, double);

private:
    DiscreteHamiltonian() = default;
    Eigen::MatrixXcd matrix_;
    Eigen::MatrixXcd scalar_block_;
    RealField weights_;
    std::shared_ptr<const BoundaryReduction> reduction_;
    PhysicalParams params_;
    double time_ = 0.0;
};

/// FV Hamiltonian with the boundary family eliminated into the operator.
DiscreteHamiltonian build_hamiltonian(const Grid& grid, const PhysicalParams& params,
                                      const ScalarPotential& S, double t,
                                      const BoundaryParams& bc);

/// The raw differential operator without boundary conditions; its
/// pseudo-hermiticity defect on unconstrained states exhibits the boundary term.
DiscreteHamiltonian build_free_hamiltonian(const Grid& grid,
                                           const PhysicalParams& params,
                                           const ScalarPotential& S, double t);

/// Trapezoidal <<P, Q>> = integral of (phi_P^* phi_Q - chi_P^* chi_Q).
Complex pseudo_inner_product(const FVState& P, const FVState& Q, const Grid& grid);

/// Adjoint with respect to the discrete pseudo inner product:
/// T3 (W^{-1} H^dag W) T3 with W the operator's quadrature weights.
DiscreteHamiltonian generalized_adjoint(const DiscreteHamiltonian& H);

/// max |<<H Psi, Phi>> - <<Psi, H Phi>>| / (|Psi| |Phi| |H|) over random pairs
/// drawn in the operator's own coordinates. For a constrained Hamiltonian these
/// lie in the boundary-constraint null space by construction; for the free form
/// they are unconstrained full-grid states.
double pseudo_hermiticity_defect(const DiscreteHamiltonian& H, int trials,
                                 std::uint64_t seed = 20231127u);

/// The boundary term -(hbar^2/2m) [psi_x^* phi - psi^* phi_x]_a^b of the
/// integration-by-parts identity, with one-sided derivatives at the ends.
Complex boundary_term(const FVState& P, const FVState& Q, const Grid& grid,
                      const PhysicalParams& params);

/// j = (hbar/m) Im(psi^* psi_x), central differences, one-sided at the ends.
RealField current_density(const ComplexField& psi, const Grid& grid,
                          const PhysicalParams& params);

/// rho = (1/2mc^2)[psi^* (E psi) - (E psi^*) psi] = -(hbar/mc^2) Im(psi^* psi_t).
RealField charge_density(const KFGState& state, const PhysicalParams& params);

/// Central-difference d(rho)/dt + d(j)/dx at interior nodes for each interior
/// time of a uniformly spaced trajectory.
std::vector<RealField> continuity_residual(const std::vector<KFGState>& traj,
                                           const Grid& grid,
                                           const PhysicalParams& params);

/// Snapshot of the derived observables of a state.
struct Observables {
    RealField rho;
    RealField j;
    Complex pseudo_norm{0.0, 0.0};
    double majorana_defect = 0.0;
    double j_a = 0.0;
    double j_b = 0.0;
    double l2_psi = 0.0;
    double t = 0.0;
};

Observables compute_observables(const FVState& state, const Grid& grid,
                                const PhysicalParams& params, MajoranaKind kind);

}  // namespace kfgm
