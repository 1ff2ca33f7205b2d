#include "kfgm/operators.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace kfgm {

namespace {
const Complex kI(0.0, 1.0);

void check_dense_size(int n) {
    if (n > kMaxDenseNodes)
        throw std::invalid_argument("dense operators are limited to n <= 4096 nodes");
}

/// One-sided 3-point first derivatives at the interval ends.
Complex deriv_at_a(const ComplexField& f, double h) {
    return (-3.0 * f(0) + 4.0 * f(1) - f(2)) / (2.0 * h);
}
Complex deriv_at_b(const ComplexField& f, double h) {
    const Eigen::Index n = f.size();
    return (3.0 * f(n - 1) - 4.0 * f(n - 2) + f(n - 3)) / (2.0 * h);
}
}  // namespace

BoundaryReduction::BoundaryReduction(const Grid& grid, const BoundaryParams& bc)
    : grid_(grid), bc_(bc) {
    check_dense_size(grid.n);
    const int n = grid.n;
    const double h = grid.h;
    const BoundarySplit split = split_boundary(bc);
    essential_count_ = static_cast<int>(split.essential.size());
    const Eigen::Matrix2cd T = split.robin_form();

    const double diag = 2.0 / h, corner = 1.0 / h, off = -1.0 / h;

    if (essential_count_ == 2) {
        n_red_ = n - 2;
        stiffness_ = Eigen::MatrixXcd::Zero(n_red_, n_red_);
        for (int i = 0; i < n_red_; ++i) {
            stiffness_(i, i) = diag;
            if (i + 1 < n_red_) {
                stiffness_(i, i + 1) = off;
                stiffness_(i + 1, i) = off;
            }
        }
        g_ = RealField::Constant(n_red_, h);
    } else if (essential_count_ == 0) {
        n_red_ = n;
        stiffness_ = Eigen::MatrixXcd::Zero(n, n);
        for (int i = 0; i < n; ++i) stiffness_(i, i) = diag;
        stiffness_(0, 0) = corner;
        stiffness_(n - 1, n - 1) = corner;
        for (int i = 0; i + 1 < n; ++i) {
            stiffness_(i, i + 1) = off;
            stiffness_(i + 1, i) = off;
        }
        // boundary form, index order (b, a) = (n-1, 0)
        const int bidx[2] = {n - 1, 0};
        for (int p = 0; p < 2; ++p)
            for (int q = 0; q < 2; ++q) stiffness_(bidx[p], bidx[q]) -= T(p, q);
        g_ = RealField::Constant(n, h);
        g_(0) = 0.5 * h;
        g_(n - 1) = 0.5 * h;
    } else {
        // one essential direction: boundary values live on free_vec_ = (f_b, f_a)
        free_vec_ = split.natural.at(0).vec;
        const Complex fb = free_vec_(0), fa = free_vec_(1);
        n_red_ = n - 1;
        const int z = n_red_ - 1;
        stiffness_ = Eigen::MatrixXcd::Zero(n_red_, n_red_);
        for (int i = 0; i < n - 2; ++i) {
            stiffness_(i, i) = diag;
            if (i + 1 < n - 2) {
                stiffness_(i, i + 1) = off;
                stiffness_(i + 1, i) = off;
            }
        }
        stiffness_(z, z) = (std::norm(fb) + std::norm(fa)) * corner -
                           (free_vec_.adjoint() * T * free_vec_)(0);
        // node 0 couples to interior node 1 (dof 0), node n-1 to dof n-3
        stiffness_(z, 0) += std::conj(fa) * off;
        stiffness_(0, z) += fa * off;
        stiffness_(z, n - 3) += std::conj(fb) * off;
        stiffness_(n - 3, z) += fb * off;
        g_ = RealField::Constant(n_red_, h);
        g_(z) = 0.5 * h;
    }
}

Eigen::MatrixXcd BoundaryReduction::laplacian() const {
    return g_.cwiseInverse().asDiagonal() * stiffness_;
}

RealField BoundaryReduction::reduce_diagonal(const RealField& node_values) const {
    if (node_values.size() != grid_.n)
        throw std::invalid_argument("reduce_diagonal: size mismatch");
    const int n = grid_.n;
    if (essential_count_ == 2) return node_values.segment(1, n - 2);
    if (essential_count_ == 0) return node_values;
    RealField d(n_red_);
    d.head(n - 2) = node_values.segment(1, n - 2);
    d(n_red_ - 1) = std::norm(free_vec_(0)) * node_values(n - 1) +
                    std::norm(free_vec_(1)) * node_values(0);
    return d;
}

ComplexField BoundaryReduction::restrict_field(const ComplexField& full) const {
    if (full.size() != grid_.n)
        throw std::invalid_argument("restrict_field: size mismatch");
    const int n = grid_.n;
    if (essential_count_ == 2) return full.segment(1, n - 2);
    if (essential_count_ == 0) return full;
    ComplexField r(n_red_);
    r.head(n - 2) = full.segment(1, n - 2);
    r(n_red_ - 1) = std::conj(free_vec_(0)) * full(n - 1) +
                    std::conj(free_vec_(1)) * full(0);
    return r;
}

ComplexField BoundaryReduction::extend_field(const ComplexField& reduced) const {
    if (reduced.size() != n_red_)
        throw std::invalid_argument("extend_field: size mismatch");
    const int n = grid_.n;
    ComplexField f = ComplexField::Zero(n);
    if (essential_count_ == 2) {
        f.segment(1, n - 2) = reduced;
    } else if (essential_count_ == 0) {
        f = reduced;
    } else {
        f.segment(1, n - 2) = reduced.head(n - 2);
        f(n - 1) = reduced(n_red_ - 1) * free_vec_(0);
        f(0) = reduced(n_red_ - 1) * free_vec_(1);
    }
    return f;
}

ComplexField BoundaryReduction::project(const ComplexField& full) const {
    return extend_field(restrict_field(full));
}

DiscreteHamiltonian::DiscreteHamiltonian(Eigen::MatrixXcd matrix, RealField block_weights)
    : matrix_(std::move(matrix)), weights_(std::move(block_weights)) {
    if (matrix_.rows() != matrix_.cols() || matrix_.rows() != 2 * weights_.size())
        throw std::invalid_argument(
            "DiscreteHamiltonian: matrix must be 2k x 2k with k block weights");
}

const BoundaryReduction& DiscreteHamiltonian::reduction() const {
    if (!reduction_) throw std::logic_error("DiscreteHamiltonian: no boundary reduction");
    return *reduction_;
}

Eigen::VectorXcd DiscreteHamiltonian::apply(const Eigen::VectorXcd& stacked) const {
    if (stacked.size() != matrix_.rows())
        throw std::invalid_argument("DiscreteHamiltonian::apply: size mismatch");
    return matrix_ * stacked;
}

FVState DiscreteHamiltonian::apply(const FVState& state) const {
    const Eigen::Index k = block_size();
    if (reduction_) {
        const auto& red = *reduction_;
        Eigen::VectorXcd v(2 * k);
        v.head(k) = red.restrict_field(state.phi);
        v.tail(k) = red.restrict_field(state.chi);
        Eigen::VectorXcd w = matrix_ * v;
        return FVState(red.extend_field(w.head(k)), red.extend_field(w.tail(k)), state.t);
    }
    Eigen::VectorXcd v(2 * k);
    v.head(k) = state.phi;
    v.tail(k) = state.chi;
    Eigen::VectorXcd w = matrix_ * v;
    return FVState(w.head(k), w.tail(k), state.t);
}

double DiscreteHamiltonian::operator_norm() const {
    return matrix_.cwiseAbs().rowwise().sum().maxCoeff();
}

namespace {
Eigen::MatrixXcd fv_blocks(const Eigen::MatrixXcd& A, double mc2) {
    const Eigen::Index n = A.rows();
    Eigen::MatrixXcd H(2 * n, 2 * n);
    H.topLeftCorner(n, n) = A;
    H.topLeftCorner(n, n).diagonal().array() += mc2;
    H.topRightCorner(n, n) = A;
    H.bottomLeftCorner(n, n) = -A;
    H.bottomRightCorner(n, n) = -A;
    H.bottomRightCorner(n, n).diagonal().array() -= mc2;
    return H;
}
}  // namespace

DiscreteHamiltonian build_hamiltonian(const Grid& grid, const PhysicalParams& params,
                                      const ScalarPotential& S, double t,
                                      const BoundaryParams& bc) {
    auto red = std::make_shared<BoundaryReduction>(grid, bc);
    const RealField s_red = red->reduce_diagonal(S.sample(grid, t));
    Eigen::MatrixXcd A =
        (params.hbar * params.hbar / (2.0 * params.mass)) * red->laplacian();
    A.diagonal() += s_red.cast<Complex>();

    DiscreteHamiltonian H;
    H.matrix_ = fv_blocks(A, params.mc2());
    H.scalar_block_ = std::move(A);
    H.weights_ = red->weights();
    H.reduction_ = std::move(red);
    H.params_ = params;
    H.time_ = t;
    return H;
}

DiscreteHamiltonian build_free_hamiltonian(const Grid& grid,
                                           const PhysicalParams& params,
                                           const ScalarPotential& S, double t) {
    check_dense_size(grid.n);
    const int n = grid.n;
    if (n < 4) throw std::invalid_argument("build_free_hamiltonian: n must be >= 4");
    const double h2 = grid.h * grid.h;
    Eigen::MatrixXcd lap = Eigen::MatrixXcd::Zero(n, n);  // discrete -d2/dx2
    for (int i = 1; i + 1 < n; ++i) {
        lap(i, i - 1) = -1.0 / h2;
        lap(i, i) = 2.0 / h2;
        lap(i, i + 1) = -1.0 / h2;
    }
    // second-order one-sided rows at the ends
    const double c0 = 2.0 / h2, c1 = -5.0 / h2, c2 = 4.0 / h2, c3 = -1.0 / h2;
    lap(0, 0) = -c0; lap(0, 1) = -c1; lap(0, 2) = -c2; lap(0, 3) = -c3;
    lap(n - 1, n - 1) = -c0; lap(n - 1, n - 2) = -c1;
    lap(n - 1, n - 3) = -c2; lap(n - 1, n - 4) = -c3;

    Eigen::MatrixXcd A =
        (params.hbar * params.hbar / (2.0 * params.mass)) * lap;
    A.diagonal() += S.sample(grid, t).cast<Complex>();

    DiscreteHamiltonian H;
    H.matrix_ = fv_blocks(A, params.mc2());
    H.scalar_block_ = std::move(A);
    H.weights_ = trapezoid_weights(grid);
    H.params_ = params;
    H.time_ = t;
    return H;
}

Complex pseudo_inner_product(const FVState& P, const FVState& Q, const Grid& grid) {
    if (P.size() != grid.n || Q.size() != grid.n)
        throw std::invalid_argument("pseudo_inner_product: grid mismatch");
    const RealField w = trapezoid_weights(grid);
    Complex acc(0.0, 0.0);
    for (int i = 0; i < grid.n; ++i)
        acc += w(i) * (std::conj(P.phi(i)) * Q.phi(i) - std::conj(P.chi(i)) * Q.chi(i));
    return acc;
}

DiscreteHamiltonian generalized_adjoint(const DiscreteHamiltonian& H) {
    const Eigen::Index k = H.block_size();
    Eigen::VectorXd w(2 * k), s(2 * k);
    w.head(k) = H.block_weights();
    w.tail(k) = H.block_weights();
    s.head(k).setOnes();
    s.tail(k).setConstant(-1.0);
    // T3 W^{-1} H^dag W T3
    Eigen::MatrixXcd adj = H.matrix().adjoint();
    adj = w.cwiseInverse().asDiagonal() * adj * w.asDiagonal();
    adj = s.asDiagonal() * adj * s.asDiagonal();
    DiscreteHamiltonian out(std::move(adj), H.block_weights());
    return out;
}

double pseudo_hermiticity_defect(const DiscreteHamiltonian& H, int trials,
                                 std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("pseudo_hermiticity_defect: trials >= 1");
    const Eigen::Index k = H.block_size();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist(0.0, 1.0);
    auto random_vec = [&] {
        Eigen::VectorXcd v(2 * k);
        for (Eigen::Index i = 0; i < 2 * k; ++i) v(i) = Complex(dist(rng), dist(rng));
        return v;
    };

    Eigen::VectorXd w(2 * k), sgn(2 * k);
    w.head(k) = H.block_weights();
    w.tail(k) = H.block_weights();
    sgn.head(k).setOnes();
    sgn.tail(k).setConstant(-1.0);

    auto pip = [&](const Eigen::VectorXcd& p, const Eigen::VectorXcd& q) {
        Complex acc(0.0, 0.0);
        for (Eigen::Index i = 0; i < 2 * k; ++i)
            acc += w(i) * sgn(i) * std::conj(p(i)) * q(i);
        return acc;
    };
    auto nrm = [&](const Eigen::VectorXcd& p) {
        return std::sqrt(p.cwiseAbs2().dot(w));
    };

    const double hnorm = H.operator_norm();
    double worst = 0.0;
    for (int trial = 0; trial < trials; ++trial) {
        const Eigen::VectorXcd P = random_vec(), Q = random_vec();
        const Complex d = pip(H.apply(P), Q) - pip(P, H.apply(Q));
        const double scale = nrm(P) * nrm(Q) * hnorm;
        if (scale > 0.0) worst = std::max(worst, std::abs(d) / scale);
    }
    return worst;
}

Complex boundary_term(const FVState& P, const FVState& Q, const Grid& grid,
                      const PhysicalParams& params) {
    const ComplexField psi = P.psi();
    const ComplexField phi = Q.psi();
    const double h = grid.h;
    const Complex at_b = std::conj(deriv_at_b(psi, h)) * phi(grid.n - 1) -
                         std::conj(psi(grid.n - 1)) * deriv_at_b(phi, h);
    const Complex at_a = std::conj(deriv_at_a(psi, h)) * phi(0) -
                         std::conj(psi(0)) * deriv_at_a(phi, h);
    const double pref = -params.hbar * params.hbar / (2.0 * params.mass);
    return pref * (at_b - at_a);
}

RealField current_density(const ComplexField& psi, const Grid& grid,
                          const PhysicalParams& params) {
    if (psi.size() != grid.n)
        throw std::invalid_argument("current_density: size mismatch");
    const int n = grid.n;
    const double h = grid.h;
    ComplexField dpsi(n);
    dpsi(0) = deriv_at_a(psi, h);
    for (int i = 1; i + 1 < n; ++i) dpsi(i) = (psi(i + 1) - psi(i - 1)) / (2.0 * h);
    dpsi(n - 1) = deriv_at_b(psi, h);
    RealField j(n);
    const double pref = params.hbar / params.mass;
    for (int i = 0; i < n; ++i)
        j(i) = pref * std::imag(std::conj(psi(i)) * dpsi(i));
    return j;
}

RealField charge_density(const KFGState& state, const PhysicalParams& params) {
    const Eigen::Index n = state.size();
    RealField rho(n);
    const double pref = -params.hbar / params.mc2();
    for (Eigen::Index i = 0; i < n; ++i)
        rho(i) = pref * std::imag(std::conj(state.psi(i)) * state.psi_t(i));
    return rho;
}

std::vector<RealField> continuity_residual(const std::vector<KFGState>& traj,
                                           const Grid& grid,
                                           const PhysicalParams& params) {
    if (traj.size() < 3)
        throw std::invalid_argument("continuity_residual: need >= 3 states");
    const double dt = traj[1].t - traj[0].t;
    for (std::size_t k = 1; k < traj.size(); ++k) {
        const double step = traj[k].t - traj[k - 1].t;
        if (std::abs(step - dt) > 1e-12 * std::max(1.0, std::abs(dt)))
            throw std::invalid_argument("continuity_residual: nonuniform time steps");
    }
    std::vector<RealField> rhos, js;
    rhos.reserve(traj.size());
    js.reserve(traj.size());
    for (const auto& s : traj) {
        rhos.push_back(charge_density(s, params));
        js.push_back(current_density(s.psi, grid, params));
    }
    std::vector<RealField> out;
    const int n = grid.n;
    for (std::size_t k = 1; k + 1 < traj.size(); ++k) {
        RealField r = RealField::Zero(n);  // endpoint entries stay zero
        for (int i = 1; i + 1 < n; ++i) {
            const double drho = (rhos[k + 1](i) - rhos[k - 1](i)) / (2.0 * dt);
            const double dj = (js[k](i + 1) - js[k](i - 1)) / (2.0 * grid.h);
            r(i) = drho + dj;
        }
        out.push_back(std::move(r));
    }
    return out;
}

Observables compute_observables(const FVState& state, const Grid& grid,
                                const PhysicalParams& params, MajoranaKind kind) {
    Observables obs;
    const KFGState kfg = fv_to_kfg(state, params);
    obs.rho = charge_density(kfg, params);
    obs.j = current_density(kfg.psi, grid, params);
    obs.pseudo_norm = pseudo_inner_product(state, state, grid);
    obs.majorana_defect = majorana_defect(state, kind, grid);
    obs.j_a = obs.j(0);
    obs.j_b = obs.j(grid.n - 1);
    obs.l2_psi = l2_norm(kfg.psi, grid);
    obs.t = state.t;
    return obs;
}

}  // namespace kfgm
