#pragma once

#include <functional>
#include <stdexcept>

#include "kfgm/fields.hpp"

namespace kfgm {

/// Real Lorentz scalar potential S(x, t) with a static/time-dependent flag.
class ScalarPotential {
public:
    ScalarPotential() : eval_([](double, double) { return 0.0; }), is_static_(true) {}

    ScalarPotential(std::function<double(double, double)> eval, bool is_static)
        : eval_(std::move(eval)), is_static_(is_static) {
        if (!eval_) throw std::invalid_argument("ScalarPotential: empty evaluator");
    }

    double operator()(double x, double t) const { return eval_(x, t); }
    bool is_static() const { return is_static_; }

    RealField sample(const Grid& grid, double t) const {
        RealField s(grid.n);
        for (int i = 0; i < grid.n; ++i) s(i) = eval_(grid.x(i), t);
        return s;
    }

    static ScalarPotential zero() { return ScalarPotential(); }

    static ScalarPotential constant(double s) {
        return ScalarPotential([s](double, double) { return s; }, true);
    }

    /// S(x) = -depth * exp(-(x-center)^2 / (2 width^2)), an attractive well for depth > 0.
    static ScalarPotential gaussian_well(double depth, double center, double width) {
        if (!(width > 0.0))
            throw std::invalid_argument("gaussian_well: width must be > 0");
        return ScalarPotential(
            [=](double x, double) {
                const double u = (x - center) / width;
                return -depth * std::exp(-0.5 * u * u);
            },
            true);
    }

    /// S(t) = s0 * sin(omega t), spatially uniform.
    static ScalarPotential sinusoidal_t(double s0, double omega) {
        return ScalarPotential(
            [=](double, double t) { return s0 * std::sin(omega * t); }, false);
    }

private:
    std::function<double(double, double)> eval_;
    bool is_static_;
};

}  // namespace kfgm
