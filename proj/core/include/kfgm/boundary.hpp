#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "kfgm/fields.hpp"
#include "kfgm/physical.hpp"

namespace kfgm {

/// Parameters (mu, m0..m3, lambda) of the unitary boundary matrix
/// U = e^{i mu} (m0 - i m.tau). The m-vector is renormalized onto the unit
/// 3-sphere when within 1e-6 of it and rejected otherwise.
struct BoundaryParams {
    double mu = 0.0;
    double m0 = 1.0, m1 = 0.0, m2 = 0.0, m3 = 0.0;
    double lambda = 1.0;

    BoundaryParams() = default;
    BoundaryParams(double mu_, double m0_, double m1_, double m2_, double m3_,
                   double lambda_);
};

/// The nine named members of the family. Preset names are a stable CLI contract.
const std::vector<std::string>& preset_names();

/// mu = pi is accepted here even though the canonical range is [0, pi):
/// the Dirichlet member is conventionally written with mu = pi, m0 = +1.
BoundaryParams preset(const std::string& name, double lambda);

Eigen::Matrix2cd unitary_2x2(const BoundaryParams& p);

/// S^dag blockdiag(U2, U2) S with the fixed permutation/sign matrix S.
Eigen::Matrix4cd unitary_4x4(const BoundaryParams& p);

/// True iff |m2| <= tol, equivalently U2 is complex-symmetric.
bool is_majorana_admissible(const BoundaryParams& p, double tol = 1e-12);

/// 2x4 complex matrix C with C [psi(b), psi(a), psi_x(b), psi_x(a)]^T = 0:
/// C = [ (1 - U2) | -i lambda (1 + U2) diag(1,-1) ].
struct BoundaryConstraints {
    Eigen::Matrix<Complex, 2, 4> rows;
};

BoundaryConstraints constraint_rows(const BoundaryParams& p);

/// Rank of [Re C; Im C] acting on real boundary data (singular values above
/// 1e-10 of the largest). Rank 2 means a two-real-parameter family of real
/// boundary data survives.
int real_constraint_rank(const BoundaryParams& p);

/// Eigen-decomposition of U2 split into the Dirichlet-type subspace
/// (eigenvalue -1) and natural channels carrying a Robin coefficient:
/// on a natural channel e with U2 e = e^{i theta} e the boundary data obey
/// e^dag [outward derivative at (b, a)] = -(tan(theta/2)/lambda) e^dag [psi at (b, a)].
struct BoundarySplit {
    struct Channel {
        Eigen::Vector2cd vec;  // unit vector, component order (b, a)
        double robin;          // -tan(theta/2)/lambda
    };
    std::vector<Eigen::Vector2cd> essential;
    std::vector<Channel> natural;

    /// Hermitian 2x2 matrix T = sum robin_k e_k e_k^dag over natural channels.
    Eigen::Matrix2cd robin_form() const;
};

/// Eigenvalues within 1e-9 of -1 are classified as essential.
BoundarySplit split_boundary(const BoundaryParams& p);

}  // namespace kfgm
