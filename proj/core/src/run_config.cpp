#include "kfgm/run_config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

namespace kfgm {

namespace {

using nlohmann::json;

double require_number(const json& j, const std::string& key, const std::string& full) {
    if (!j.contains(key)) throw ConfigError(full, "missing required number");
    if (!j.at(key).is_number()) throw ConfigError(full, "must be a number");
    return j.at(key).get<double>();
}

double number_or(const json& j, const std::string& key, const std::string& full,
                 double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number()) throw ConfigError(full, "must be a number");
    return j.at(key).get<double>();
}

int int_or(const json& j, const std::string& key, const std::string& full,
           int fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number_integer()) throw ConfigError(full, "must be an integer");
    return j.at(key).get<int>();
}

std::string string_or(const json& j, const std::string& key, const std::string& full,
                      const std::string& fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_string()) throw ConfigError(full, "must be a string");
    return j.at(key).get<std::string>();
}

PhysicalParams parse_physical(const json& root) {
    json j = root.value("physical", json::object());
    const double mass = number_or(j, "mass", "physical.mass", 1.0);
    const double c = number_or(j, "c", "physical.c", 1.0);
    const double hbar = number_or(j, "hbar", "physical.hbar", 1.0);
    const double lambda = number_or(j, "lambda", "physical.lambda", 0.0);
    if (j.contains("V") && j.at("V").get<double>() != 0.0)
        throw ConfigError("physical.V", "must be 0 (strictly neutral particle)");
    try {
        return PhysicalParams(mass, c, hbar, lambda);
    } catch (const std::invalid_argument& e) {
        throw ConfigError("physical", e.what());
    }
}

Grid parse_grid(const json& root) {
    if (!root.contains("grid")) throw ConfigError("grid", "missing required object");
    const json& j = root.at("grid");
    const double a = require_number(j, "a", "grid.a");
    const double b = require_number(j, "b", "grid.b");
    const int n = int_or(j, "n", "grid.n", 0);
    if (n == 0) throw ConfigError("grid.n", "missing required integer");
    try {
        return Grid(a, b, n);
    } catch (const std::invalid_argument& e) {
        throw ConfigError("grid", e.what());
    }
}

BoundaryParams parse_boundary(const json& root, const PhysicalParams& params,
                              std::optional<std::string>& preset_name) {
    json j = root.value("boundary", json::object());
    const double lambda =
        number_or(j, "lambda", "boundary.lambda", params.compton_wavelength());
    if (!(lambda > 0.0)) throw ConfigError("boundary.lambda", "must be > 0");
    if (j.contains("preset")) {
        const std::string name = j.at("preset").get<std::string>();
        try {
            preset_name = name;
            return preset(name, lambda);
        } catch (const std::invalid_argument& e) {
            throw ConfigError("boundary.preset", e.what());
        }
    }
    const double mu = number_or(j, "mu", "boundary.mu", 0.0);
    const double m0 = number_or(j, "m0", "boundary.m0", 1.0);
    const double m1 = number_or(j, "m1", "boundary.m1", 0.0);
    const double m2 = number_or(j, "m2", "boundary.m2", 0.0);
    const double m3 = number_or(j, "m3", "boundary.m3", 0.0);
    try {
        return BoundaryParams(mu, m0, m1, m2, m3, lambda);
    } catch (const std::invalid_argument& e) {
        const std::string what = e.what();
        if (what.find("3-sphere") != std::string::npos)
            throw ConfigError("boundary.m", what);
        if (what.find("mu") != std::string::npos) throw ConfigError("boundary.mu", what);
        throw ConfigError("boundary", what);
    }
}

ScalarPotential parse_potential(const json& root) {
    json j = root.value("potential", json::object());
    const std::string type = string_or(j, "type", "potential.type", "zero");
    if (type == "zero") return ScalarPotential::zero();
    if (type == "constant")
        return ScalarPotential::constant(require_number(j, "s", "potential.s"));
    if (type == "gaussian_well") {
        const double depth = require_number(j, "depth", "potential.depth");
        const double center = require_number(j, "center", "potential.center");
        const double width = require_number(j, "width", "potential.width");
        if (!(width > 0.0)) throw ConfigError("potential.width", "must be > 0");
        return ScalarPotential::gaussian_well(depth, center, width);
    }
    if (type == "sinusoidal_t") {
        const double s0 = require_number(j, "s0", "potential.s0");
        const double omega = require_number(j, "omega", "potential.omega");
        return ScalarPotential::sinusoidal_t(s0, omega);
    }
    throw ConfigError("potential.type",
                      "must be one of zero|constant|gaussian_well|sinusoidal_t");
}

Formulation parse_formulation(const std::string& s) {
    if (s == "kfg") return Formulation::Kfg;
    if (s == "fv") return Formulation::Fv;
    if (s == "majorana_phi") return Formulation::MajoranaPhi;
    if (s == "majorana_chi") return Formulation::MajoranaChi;
    throw ConfigError("evolution.formulation",
                      "must be one of kfg|fv|majorana_phi|majorana_chi");
}

InitialSpec parse_initial(const json& root) {
    InitialSpec spec;
    json j = root.value("initial", json::object());
    const std::string type = string_or(j, "type", "initial.type", "sine_mode");
    spec.amplitude = number_or(j, "amplitude", "initial.amplitude", 1.0);
    if (type == "sine_mode") {
        spec.kind = InitialSpec::Kind::SineMode;
        spec.mode = int_or(j, "mode", "initial.mode", 1);
        if (spec.mode < 1) throw ConfigError("initial.mode", "must be >= 1");
    } else if (type == "gaussian_packet") {
        spec.kind = InitialSpec::Kind::GaussianPacket;
        spec.center = require_number(j, "center", "initial.center");
        spec.width = require_number(j, "width", "initial.width");
        if (!(spec.width > 0.0)) throw ConfigError("initial.width", "must be > 0");
        spec.wavenumber = number_or(j, "wavenumber", "initial.wavenumber", 0.0);
    } else if (type == "constant") {
        spec.kind = InitialSpec::Kind::Constant;
    } else {
        throw ConfigError("initial.type",
                          "must be one of sine_mode|gaussian_packet|constant");
    }
    return spec;
}

}  // namespace

KFGState RunConfig::initial_state() const {
    ComplexField psi(grid.n);
    constexpr Complex i(0.0, 1.0);
    switch (initial.kind) {
        case InitialSpec::Kind::SineMode: {
            const double kap = initial.mode * std::numbers::pi / grid.length();
            for (int p = 0; p < grid.n; ++p)
                psi(p) = initial.amplitude * std::sin(kap * (grid.x(p) - grid.a));
            break;
        }
        case InitialSpec::Kind::GaussianPacket: {
            for (int p = 0; p < grid.n; ++p) {
                const double u = (grid.x(p) - initial.center) / initial.width;
                psi(p) = initial.amplitude * std::exp(-0.5 * u * u) *
                         std::exp(i * initial.wavenumber * grid.x(p));
            }
            break;
        }
        case InitialSpec::Kind::Constant:
            psi.setConstant(Complex(initial.amplitude, 0.0));
            break;
    }
    return KFGState(std::move(psi), ComplexField::Zero(grid.n), 0.0);
}

RunConfig parse_run_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError("<json>", e.what());
    }

    RunConfig cfg;
    cfg.physical = parse_physical(root);
    cfg.grid = parse_grid(root);
    cfg.boundary = parse_boundary(root, cfg.physical, cfg.boundary_preset);
    cfg.potential = parse_potential(root);
    cfg.potential_type =
        string_or(root.value("potential", json::object()), "type", "potential.type",
                  "zero");
    cfg.initial = parse_initial(root);

    json ev = root.value("evolution", json::object());
    cfg.evolution.bc = cfg.boundary;
    cfg.evolution.S = cfg.potential;
    cfg.evolution.dt =
        number_or(ev, "dt", "evolution.dt", 0.5 * cfg.grid.h / cfg.physical.c);
    cfg.evolution.steps = int_or(ev, "steps", "evolution.steps", 100);
    cfg.evolution.record_every = int_or(ev, "record_every", "evolution.record_every", 1);
    cfg.evolution.formulation =
        parse_formulation(string_or(ev, "formulation", "evolution.formulation", "kfg"));
    const std::string kind =
        string_or(ev, "kind", "evolution.kind", "standard");
    if (kind == "standard") cfg.evolution.kind = MajoranaKind::Standard;
    else if (kind == "nonstandard") cfg.evolution.kind = MajoranaKind::Nonstandard;
    else throw ConfigError("evolution.kind", "must be standard|nonstandard");

    try {
        cfg.evolution.validate(cfg.grid, cfg.physical);
    } catch (const std::invalid_argument& e) {
        const std::string what = e.what();
        const auto colon = what.find(':');
        const std::string key = colon == std::string::npos ? "evolution"
                                                           : what.substr(0, colon);
        throw ConfigError(key, colon == std::string::npos ? what
                                                          : what.substr(colon + 2));
    }

    json sp = root.value("spectrum", json::object());
    cfg.spectrum.k = int_or(sp, "k", "spectrum.k", 8);
    if (cfg.spectrum.k < 1) throw ConfigError("spectrum.k", "must be >= 1");

    json nr = root.value("nonrel", json::object());
    cfg.nonrel.doublings = int_or(nr, "doublings", "nonrel.doublings", 3);
    if (cfg.nonrel.doublings < 0) throw ConfigError("nonrel.doublings", "must be >= 0");
    cfg.nonrel.t_phys = number_or(nr, "t_phys", "nonrel.t_phys", 0.5);
    if (!(cfg.nonrel.t_phys > 0.0)) throw ConfigError("nonrel.t_phys", "must be > 0");
    cfg.nonrel.dt0 = number_or(nr, "dt0", "nonrel.dt0", 3.6e-4);
    if (!(cfg.nonrel.dt0 > 0.0)) throw ConfigError("nonrel.dt0", "must be > 0");
    cfg.nonrel.record_every = int_or(nr, "record_every", "nonrel.record_every", 200);
    if (cfg.nonrel.record_every < 1)
        throw ConfigError("nonrel.record_every", "must be >= 1");

    if (root.contains("seed")) {
        if (!root.at("seed").is_number_unsigned() && !root.at("seed").is_number_integer())
            throw ConfigError("seed", "must be a non-negative integer");
        cfg.seed = root.at("seed").get<std::uint64_t>();
    }
    return cfg;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("<file>", "cannot open config file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_run_config(ss.str());
}

}  // namespace kfgm
