#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "kfgm/boundary.hpp"
#include "kfgm/evolution.hpp"
#include "kfgm/physical.hpp"
#include "kfgm/potential.hpp"

namespace kfgm {

/// Configuration failure that names the offending key.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, const std::string& message)
        : std::runtime_error(key + ": " + message), key_(std::move(key)) {}
    const std::string& key() const { return key_; }

private:
    std::string key_;
};

struct SpectrumSpec {
    int k = 8;
};

/// Initial data for evolution runs: psi on the grid with psi_t = 0
/// (zero initial velocity is the artifact's convention; it yields
/// Standard-Majorana data automatically for real psi).
struct InitialSpec {
    enum class Kind { SineMode, GaussianPacket, Constant };
    Kind kind = Kind::SineMode;
    int mode = 1;            // sine_mode
    double amplitude = 1.0;
    double center = 0.0;     // gaussian_packet
    double width = 1.0;
    double wavenumber = 0.0;
};

struct NonrelSpec {
    int doublings = 3;
    double t_phys = 0.5;
    double dt0 = 3.6e-4;
    int record_every = 200;
};

struct RunConfig {
    PhysicalParams physical;
    Grid grid;
    BoundaryParams boundary;
    std::optional<std::string> boundary_preset;  // set when given by name
    ScalarPotential potential;
    std::string potential_type = "zero";
    InitialSpec initial;
    EvolutionConfig evolution;
    SpectrumSpec spectrum;
    NonrelSpec nonrel;
    std::uint64_t seed = 0;

    /// psi(x, 0) from the configured initial data; psi_t(x, 0) = 0.
    KFGState initial_state() const;
};

/// Parses and validates a JSON run configuration; throws ConfigError naming
/// the offending key on any violation.
RunConfig parse_run_config(const std::string& json_text);

RunConfig load_run_config(const std::string& path);

}  // namespace kfgm
