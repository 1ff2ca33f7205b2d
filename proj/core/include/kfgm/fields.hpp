#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>

#include "kfgm/physical.hpp"

namespace kfgm {

using Complex = std::complex<double>;
using ComplexField = Eigen::VectorXcd;
using RealField = Eigen::VectorXd;

/// Trapezoidal quadrature weights for the grid (h/2 at the endpoints).
RealField trapezoid_weights(const Grid& grid);

/// Trapezoidal L2 norm of a single-component field.
double l2_norm(const ComplexField& f, const Grid& grid);

/// Two-component Feshbach-Villars state Psi = [phi, chi]^T at time t.
struct FVState {
    ComplexField phi;
    ComplexField chi;
    double t = 0.0;

    FVState() = default;
    FVState(ComplexField phi_, ComplexField chi_, double t_);

    Eigen::Index size() const { return phi.size(); }
    ComplexField psi() const { return phi + chi; }
};

/// One-component state for the second-order equation: psi and its time derivative.
struct KFGState {
    ComplexField psi;
    ComplexField psi_t;
    double t = 0.0;

    KFGState() = default;
    KFGState(ComplexField psi_, ComplexField psi_t_, double t_);

    Eigen::Index size() const { return psi.size(); }
};

/// Trapezoidal L2 norm of a two-component state.
double l2_norm(const FVState& s, const Grid& grid);

/// phi = (psi + i hbar psi_t / mc^2)/2, chi = (psi - i hbar psi_t / mc^2)/2.
FVState kfg_to_fv(const KFGState& state, const PhysicalParams& params);

/// psi = phi + chi, psi_t = -i (mc^2/hbar)(phi - chi).
KFGState fv_to_kfg(const FVState& state, const PhysicalParams& params);

/// Psi_c = tau_1 Psi^*: (phi, chi) -> (chi^*, phi^*).
FVState charge_conjugate(const FVState& state);

/// L2 norm of Psi - Psi_c (Standard) or Psi + Psi_c (Nonstandard).
double majorana_defect(const FVState& state, MajoranaKind kind, const Grid& grid);

/// +1 / -1 if the state satisfies the corresponding Majorana condition within
/// tol * ||Psi||, nullopt otherwise (including the ambiguous Psi ~ 0 case).
std::optional<int> c_parity(const FVState& state, const Grid& grid, double tol);

}  // namespace kfgm
