#include "kfgm/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace kfgm {

ModeSet stationary_modes(const Grid& grid, const PhysicalParams& params,
                         const ScalarPotential& S, const BoundaryParams& bc, int k) {
    if (!S.is_static())
        throw std::invalid_argument("stationary_modes: S must be time-independent");
    if (k < 1) throw std::invalid_argument("stationary_modes: k must be >= 1");

    BoundaryReduction red(grid, bc);
    const int nr = red.n_reduced();
    if (k > nr) k = nr;

    const double mc2 = params.mc2();
    const RealField s_red = red.reduce_diagonal(S.sample(grid, 0.0));
    const RealField& g = red.weights();

    // K f = E^2 G f with K Hermitian, G diagonal positive: solve the
    // symmetrized D K D with D = G^{-1/2}.
    Eigen::MatrixXcd K = (params.hbar * params.hbar * params.c * params.c) *
                         red.stiffness();
    for (int i = 0; i < nr; ++i)
        K(i, i) += g(i) * (mc2 * mc2 + 2.0 * mc2 * s_red(i));
    const RealField d = g.cwiseSqrt().cwiseInverse();
    Eigen::MatrixXcd M = d.asDiagonal() * K * d.asDiagonal();
    M = 0.5 * (M + M.adjoint()).eval();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(M);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("stationary_modes: eigensolver failed to converge");

    ModeSet out;
    out.modes.reserve(k);
    for (int i = 0; i < nr; ++i)
        if (es.eigenvalues()(i) < 0.0) ++out.negative_count;
    for (int i = 0; i < k; ++i) {
        Mode m;
        m.e_squared = es.eigenvalues()(i);
        const ComplexField reduced = d.asDiagonal() * es.eigenvectors().col(i);
        m.shape = red.extend_field(reduced);
        out.modes.push_back(std::move(m));
    }
    return out;
}

std::vector<double> analytic_reference_spectrum(const std::string& preset_name,
                                                double L, const PhysicalParams& params,
                                                int n_max) {
    if (n_max < 1) throw std::invalid_argument("analytic_reference_spectrum: n_max >= 1");
    constexpr double pi = std::numbers::pi;
    std::vector<double> kappas;
    if (preset_name == "dirichlet") {
        for (int n = 1; n <= n_max; ++n) kappas.push_back(n * pi / L);
    } else if (preset_name == "neumann") {
        for (int n = 0; n < n_max; ++n) kappas.push_back(n * pi / L);
    } else if (preset_name == "periodic") {
        kappas.push_back(0.0);
        for (int n = 1; static_cast<int>(kappas.size()) < n_max; ++n) {
            kappas.push_back(2.0 * pi * n / L);
            kappas.push_back(2.0 * pi * n / L);
        }
    } else if (preset_name == "antiperiodic") {
        for (int n = 0; static_cast<int>(kappas.size()) < n_max; ++n) {
            kappas.push_back((2.0 * n + 1.0) * pi / L);
            kappas.push_back((2.0 * n + 1.0) * pi / L);
        }
    } else {
        throw std::invalid_argument(
            "analytic_reference_spectrum: no closed form for preset '" + preset_name +
            "'");
    }
    kappas.resize(n_max);
    std::vector<double> out;
    out.reserve(n_max);
    const double mc2 = params.mc2();
    for (double kap : kappas)
        out.push_back(mc2 * mc2 + std::pow(params.hbar * params.c * kap, 2));
    std::sort(out.begin(), out.end());
    return out;
}

FvSymmetryReport fv_spectrum_symmetry_check(const DiscreteHamiltonian& H, double tol) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(H.matrix(), false);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("fv_spectrum_symmetry_check: eigensolver failed");
    FvSymmetryReport rep;
    rep.eigenvalues = es.eigenvalues();
    const Eigen::Index m = rep.eigenvalues.size();
    const double scale = rep.eigenvalues.cwiseAbs().maxCoeff();
    double worst = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
        const Complex target = -std::conj(rep.eigenvalues(i));
        double best = std::numeric_limits<double>::infinity();
        for (Eigen::Index j = 0; j < m; ++j)
            best = std::min(best, std::abs(rep.eigenvalues(j) - target));
        worst = std::max(worst, best);
        if (std::abs(rep.eigenvalues(i).imag()) > tol * std::max(1.0, scale))
            ++rep.nonreal_count;
    }
    rep.max_pairing_defect = worst;
    rep.closed = worst <= tol * std::max(1.0, scale);
    return rep;
}

}  // namespace kfgm
