// config.hpp: TOML run configuration for the sc-sep command line
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "scsep/dynamics.hpp"
#include "scsep/params.hpp"
#include "scsep/spectral.hpp"

namespace scsep {

/// Unreadable file, TOML syntax error, wrong value type, unknown key or a
/// value rejected by module validation. field is "section.key" when known,
/// line is 0 when no source position applies.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& what, std::string field, int line)
        : std::runtime_error(what), field_(std::move(field)), line_(line) {}
    const std::string& field() const noexcept { return field_; }
    int line() const noexcept { return line_; }

private:
    std::string field_;
    int line_;
};

enum class SpectrumSource { sectors, optical };

struct SpectrumConfig {
    SpectrumSource source = SpectrumSource::sectors;
    // Sector values, used when source == sectors.
    double u_charge = 0.0;
    double u_spin = 0.0;
    double k_charge = 0.0;
    double k_spin = 0.0;
    SpectrumRequest request;        // lutt is filled in by resolve_spectrum
    std::vector<double> peak_q;     // default q list for the peaks command
};

enum class CouplingSource { optical, direct };

struct EvolutionConfig {
    CouplingSource coupling = CouplingSource::optical;
    // Symmetric coefficients, used when coupling == direct.
    double mass = 1.0;
    double chi = 0.0;
    double cross = 0.0;
    double density = 1.0;

    int grid_points = 4096;
    double box_length = 1000.0;
    double dt = 0.1;
    int steps = 1000;
    int record_every = 10;
    Perturbation perturbation;
};

struct OutputConfig {
    std::string dir = ".";
    bool normalized_units = true;
};

struct RunConfig {
    std::string path;
    std::optional<OpticalConfig> optical;
    std::optional<SpectrumConfig> spectrum;
    std::optional<EvolutionConfig> evolution;
    OutputConfig output;
};

/// Parses a TOML document. Checks syntax, value types and unknown keys;
/// physical validation is done by the resolve_* functions.
RunConfig parse_config(const std::string& text, const std::string& source_name);
RunConfig load_config(const std::string& path);

/// Validated optical block (ConfigError when missing or invalid). Returns the
/// accepted-value warnings.
std::vector<std::string> check_optical(const RunConfig& cfg);

/// Luttinger parameters for the spectrum, from the sector values or from the
/// optical block (rescaled to u_charge = 1 when output.normalized_units).
/// Throws ConfigError for missing/invalid blocks and RegimeError when the
/// optical parameters admit no Luttinger description.
SpectrumRequest resolve_spectrum(const RunConfig& cfg);

struct EvolutionSetup {
    FieldState initial;
    EvolutionSpec spec;
    std::vector<std::string> warnings;
};

/// Effective coefficients, initial state and step spec, all validated
/// (ConfigError on failure, including the stability bound).
EvolutionSetup resolve_evolution(const RunConfig& cfg);

}  // namespace scsep
