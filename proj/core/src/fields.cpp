#include "kfgm/fields.hpp"

#include <stdexcept>

namespace kfgm {

RealField trapezoid_weights(const Grid& grid) {
    RealField w = RealField::Constant(grid.n, grid.h);
    w(0) = 0.5 * grid.h;
    w(grid.n - 1) = 0.5 * grid.h;
    return w;
}

double l2_norm(const ComplexField& f, const Grid& grid) {
    if (f.size() != grid.n) throw std::invalid_argument("l2_norm: field/grid size mismatch");
    const RealField w = trapezoid_weights(grid);
    return std::sqrt(w.dot(f.cwiseAbs2()));
}

FVState::FVState(ComplexField phi_, ComplexField chi_, double t_)
    : phi(std::move(phi_)), chi(std::move(chi_)), t(t_) {
    if (phi.size() != chi.size())
        throw std::invalid_argument("FVState: phi and chi must share one grid");
}

KFGState::KFGState(ComplexField psi_, ComplexField psi_t_, double t_)
    : psi(std::move(psi_)), psi_t(std::move(psi_t_)), t(t_) {
    if (psi.size() != psi_t.size())
        throw std::invalid_argument("KFGState: psi and psi_t must share one grid");
}

double l2_norm(const FVState& s, const Grid& grid) {
    if (s.size() != grid.n) throw std::invalid_argument("l2_norm: state/grid size mismatch");
    const RealField w = trapezoid_weights(grid);
    return std::sqrt(w.dot(s.phi.cwiseAbs2()) + w.dot(s.chi.cwiseAbs2()));
}

FVState kfg_to_fv(const KFGState& state, const PhysicalParams& params) {
    const Complex i(0.0, 1.0);
    const double mc2 = params.mc2();
    // E psi = i hbar psi_t; V = 0 throughout.
    const ComplexField e_psi = (i * params.hbar) * state.psi_t;
    ComplexField phi = 0.5 * (state.psi + e_psi / mc2);
    ComplexField chi = 0.5 * (state.psi - e_psi / mc2);
    return FVState(std::move(phi), std::move(chi), state.t);
}

KFGState fv_to_kfg(const FVState& state, const PhysicalParams& params) {
    const Complex i(0.0, 1.0);
    const double mc2 = params.mc2();
    ComplexField psi = state.phi + state.chi;
    ComplexField psi_t = (-i * mc2 / params.hbar) * (state.phi - state.chi);
    return KFGState(std::move(psi), std::move(psi_t), state.t);
}

FVState charge_conjugate(const FVState& state) {
    return FVState(state.chi.conjugate(), state.phi.conjugate(), state.t);
}

double majorana_defect(const FVState& state, MajoranaKind kind, const Grid& grid) {
    const FVState c = charge_conjugate(state);
    const double sign = (kind == MajoranaKind::Standard) ? 1.0 : -1.0;
    FVState diff(state.phi - sign * c.phi, state.chi - sign * c.chi, state.t);
    return l2_norm(diff, grid);
}

std::optional<int> c_parity(const FVState& state, const Grid& grid, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("c_parity: tol must be > 0");
    const double norm = l2_norm(state, grid);
    const bool plus = majorana_defect(state, MajoranaKind::Standard, grid) <= tol * norm;
    const bool minus = majorana_defect(state, MajoranaKind::Nonstandard, grid) <= tol * norm;
    if (plus == minus) return std::nullopt;  // both only for Psi ~ 0
    return plus ? +1 : -1;
}

}  // namespace kfgm
