#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "kfgm/operators.hpp"

namespace kfgm {

struct Mode {
    double e_squared = 0.0;
    ComplexField shape;  // full-grid, g-normalized
};

struct ModeSet {
    std::vector<Mode> modes;  // ascending in E^2
    int negative_count = 0;   // modes with E^2 < 0, reported but not rejected
};

/// k lowest solutions of [-hbar^2 c^2 d2/dx2 + (mc^2)^2 + 2 mc^2 S] f = E^2 f
/// under the boundary family, via the Hermitian pencil (K, G).
ModeSet stationary_modes(const Grid& grid, const PhysicalParams& params,
                         const ScalarPotential& S, const BoundaryParams& bc, int k);

/// Closed-form E_n^2 = (mc^2)^2 + (hbar c kappa_n)^2 for the four presets with
/// kappa lists: dirichlet n pi/L (n>=1), neumann n pi/L (n>=0), periodic
/// 2 pi n/L (n>=0, double for n>=1), antiperiodic (2n+1) pi/L (double).
std::vector<double> analytic_reference_spectrum(const std::string& preset_name,
                                                double L, const PhysicalParams& params,
                                                int n_max);

struct FvSymmetryReport {
    Eigen::VectorXcd eigenvalues;
    double max_pairing_defect = 0.0;  // max over E of min |E + E'^*|
    int nonreal_count = 0;
    bool closed = false;  // pairing defect within the requested tolerance
};

/// Full eigenvalue set of the FV Hamiltonian, checked for closure under
/// E -> -E^* (the V = 0 conjugation symmetry).
FvSymmetryReport fv_spectrum_symmetry_check(const DiscreteHamiltonian& H, double tol);

}  // namespace kfgm
