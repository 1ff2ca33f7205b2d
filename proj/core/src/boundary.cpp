#include "kfgm/boundary.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace kfgm {

namespace {
constexpr double kPi = std::numbers::pi;
const Complex kI(0.0, 1.0);
}  // namespace

BoundaryParams::BoundaryParams(double mu_, double m0_, double m1_, double m2_,
                               double m3_, double lambda_)
    : mu(mu_), m0(m0_), m1(m1_), m2(m2_), m3(m3_), lambda(lambda_) {
    if (!(lambda > 0.0))
        throw std::invalid_argument("BoundaryParams: lambda must be > 0");
    if (!(mu >= 0.0 && mu <= kPi))
        throw std::invalid_argument("BoundaryParams: mu must lie in [0, pi]");
    const double norm = std::sqrt(m0 * m0 + m1 * m1 + m2 * m2 + m3 * m3);
    if (std::abs(norm - 1.0) > 1e-6)
        throw std::invalid_argument(
            "BoundaryParams: (m0,m1,m2,m3) must lie on the unit 3-sphere");
    m0 /= norm;
    m1 /= norm;
    m2 /= norm;
    m3 /= norm;
}

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names = {
        "dirichlet",    "neumann",       "robin",
        "periodic",     "antiperiodic",  "case_vi_plus",
        "case_vi_minus", "case_vii_plus", "case_vii_minus"};
    return names;
}

BoundaryParams preset(const std::string& name, double lambda) {
    if (name == "dirichlet") return BoundaryParams(kPi, 1, 0, 0, 0, lambda);
    if (name == "neumann") return BoundaryParams(0.0, 1, 0, 0, 0, lambda);
    if (name == "robin") return BoundaryParams(kPi / 2, 1, 0, 0, 0, lambda);
    if (name == "periodic") return BoundaryParams(kPi / 2, 0, 1, 0, 0, lambda);
    if (name == "antiperiodic") return BoundaryParams(kPi / 2, 0, -1, 0, 0, lambda);
    if (name == "case_vi_plus") return BoundaryParams(kPi / 2, 0, 0, 1, 0, lambda);
    if (name == "case_vi_minus") return BoundaryParams(kPi / 2, 0, 0, -1, 0, lambda);
    if (name == "case_vii_plus") return BoundaryParams(0.0, 0, 0, 1, 0, lambda);
    if (name == "case_vii_minus") return BoundaryParams(0.0, 0, 0, -1, 0, lambda);
    throw std::invalid_argument("preset: unknown boundary preset '" + name + "'");
}

Eigen::Matrix2cd unitary_2x2(const BoundaryParams& p) {
    Eigen::Matrix2cd u;
    u << Complex(p.m0, -p.m3), Complex(-p.m2, -p.m1),
         Complex(p.m2, -p.m1), Complex(p.m0, p.m3);
    return std::polar(1.0, p.mu) * u;
}

Eigen::Matrix4cd unitary_4x4(const BoundaryParams& p) {
    Eigen::Matrix4d s;
    s << 1, 0, 0, 0,
         0, 0, 1, 0,
         0, -1, 0, 0,
         0, 0, 0, -1;
    const Eigen::Matrix2cd u2 = unitary_2x2(p);
    Eigen::Matrix4cd block = Eigen::Matrix4cd::Zero();
    block.topLeftCorner<2, 2>() = u2;
    block.bottomRightCorner<2, 2>() = u2;
    return s.transpose().cast<Complex>() * block * s.cast<Complex>();
}

bool is_majorana_admissible(const BoundaryParams& p, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("is_majorana_admissible: tol must be > 0");
    return std::abs(p.m2) <= tol;
}

BoundaryConstraints constraint_rows(const BoundaryParams& p) {
    const Eigen::Matrix2cd u = unitary_2x2(p);
    const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
    Eigen::Matrix2cd d;
    d << 1, 0, 0, -1;
    BoundaryConstraints c;
    c.rows.leftCols<2>() = id - u;
    c.rows.rightCols<2>() = -kI * p.lambda * (id + u) * d;
    return c;
}

int real_constraint_rank(const BoundaryParams& p) {
    const auto c = constraint_rows(p);
    Eigen::Matrix4d stacked;
    stacked.topRows<2>() = c.rows.real();
    stacked.bottomRows<2>() = c.rows.imag();
    Eigen::JacobiSVD<Eigen::Matrix4d> svd(stacked);
    const auto& sv = svd.singularValues();
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > 1e-10 * sv(0)) ++rank;
    return rank;
}

BoundarySplit split_boundary(const BoundaryParams& p) {
    constexpr double kEssentialTol = 1e-9;
    BoundarySplit out;
    const Complex phase = std::polar(1.0, p.mu);
    const double r = std::sqrt(p.m1 * p.m1 + p.m2 * p.m2 + p.m3 * p.m3);

    auto classify = [&](const Complex& w, const Eigen::Vector2cd& vec) {
        if (std::abs(w + 1.0) < kEssentialTol) {
            out.essential.push_back(vec);
        } else {
            const double tan_half = w.imag() / (1.0 + w.real());
            out.natural.push_back({vec, -tan_half / p.lambda});
        }
    };

    if (r < 1e-14) {
        // U = e^{i mu} m0: both channels share one eigenvalue.
        const Complex w = phase * p.m0;
        classify(w, Eigen::Vector2cd(1.0, 0.0));
        classify(w, Eigen::Vector2cd(0.0, 1.0));
        return out;
    }

    // U = e^{i mu}(m0 - i m.tau); eigenvectors of the Hermitian m.tau.
    Eigen::Matrix2cd mtau;
    mtau << Complex(p.m3, 0.0), Complex(p.m1, -p.m2),
            Complex(p.m1, p.m2), Complex(-p.m3, 0.0);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(mtau);
    for (int k = 0; k < 2; ++k) {
        const double s = es.eigenvalues()(k);  // +-r
        const Complex w = phase * Complex(p.m0, -s);
        classify(w, es.eigenvectors().col(k));
    }
    return out;
}

Eigen::Matrix2cd BoundarySplit::robin_form() const {
    Eigen::Matrix2cd t = Eigen::Matrix2cd::Zero();
    for (const auto& ch : natural) t += ch.robin * (ch.vec * ch.vec.adjoint());
    return t;
}

}  // namespace kfgm
