#pragma once

#include <stdexcept>
#include <string>

namespace kfgm {

/// Physical constants of a single run. The electric potential V is carried
/// as a stored constant that must be zero: a strictly neutral particle does
/// not couple to it, and the pseudo-Hermiticity requirement pins V = 0.
struct PhysicalParams {
    double mass = 1.0;
    double c = 1.0;
    double hbar = 1.0;
    double lambda = 1.0;  // boundary length scale, defaults to Compton wavelength
    double V = 0.0;

    PhysicalParams() = default;

    PhysicalParams(double mass_, double c_, double hbar_, double lambda_ = 0.0,
                   double V_ = 0.0)
        : mass(mass_), c(c_), hbar(hbar_), lambda(lambda_), V(V_) {
        if (!(mass > 0.0)) throw std::invalid_argument("PhysicalParams: mass must be > 0");
        if (!(c > 0.0)) throw std::invalid_argument("PhysicalParams: c must be > 0");
        if (!(hbar > 0.0)) throw std::invalid_argument("PhysicalParams: hbar must be > 0");
        if (V != 0.0) throw std::invalid_argument("PhysicalParams: V must be 0");
        if (lambda == 0.0) lambda = compton_wavelength();
        if (!(lambda > 0.0)) throw std::invalid_argument("PhysicalParams: lambda must be > 0");
    }

    double mc2() const { return mass * c * c; }
    double compton_wavelength() const { return hbar / (mass * c); }

    static PhysicalParams natural_units() { return PhysicalParams(1.0, 1.0, 1.0); }
};

/// Uniform grid on the interval [a, b] with n nodes, x_i = a + i h.
struct Grid {
    double a = 0.0;
    double b = 1.0;
    int n = 3;
    double h = 0.5;

    Grid() = default;

    Grid(double a_, double b_, int n_) : a(a_), b(b_), n(n_) {
        if (!(b > a)) throw std::invalid_argument("Grid: b must be > a");
        if (n < 3) throw std::invalid_argument("Grid: n must be >= 3");
        h = (b - a) / static_cast<double>(n - 1);
    }

    double x(int i) const { return a + h * static_cast<double>(i); }
    double length() const { return b - a; }
};

/// Which charge-conjugation constraint a Majorana state satisfies.
/// Standard: Psi = +Psi_c (C-parity +1). Nonstandard: Psi = -Psi_c (C-parity -1).
enum class MajoranaKind { Standard, Nonstandard };

inline int c_parity_of(MajoranaKind k) {
    return k == MajoranaKind::Standard ? +1 : -1;
}

inline std::string to_string(MajoranaKind k) {
    return k == MajoranaKind::Standard ? "standard" : "nonstandard";
}

}  // namespace kfgm
