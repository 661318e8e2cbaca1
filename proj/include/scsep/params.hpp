// params.hpp: optical knobs, effective two-component Lieb-Liniger parameters
// and the Luttinger-liquid parameters derived from them.
//
// Units are normalized with hbar = 1. Detunings, Rabi frequencies and the
// coupling are angular frequencies; densities are per unit length.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace scsep {

enum class Species { up, down };

struct OpticalConfig {
    double delta_up = 0.0;        // one-photon detunings
    double delta_down = 0.0;
    double delta_upup = 0.0;      // intra-species
    double delta_downdown = 0.0;
    double delta_updown = 0.0;    // inter-species, enters the up equation
    double delta_downup = 0.0;    // inter-species, enters the down equation
    double omega_up = 0.0;        // control Rabi frequencies
    double omega_down = 0.0;
    double coupling_g = 0.0;
    double atom_density_up = 0.0;
    double atom_density_down = 0.0;
    double photon_density_up = 0.0;
    double photon_density_down = 0.0;
    double waveguide_velocity = 0.0;
    double optical_depth = 1.0;   // metadata only
    double cooperativity = 0.5;   // metadata only
};

/// Minimum atom/photon density ratio accepted by validate().
inline constexpr double kMinDensityRatio = 1e2;
/// Below this ratio the adiabatic elimination is flagged as marginal.
inline constexpr double kNominalDensityRatio = 1e4;

/// Throws DomainError naming the first offending field. Returns warnings
/// (e.g. marginal atom/photon density ratio) for fields that are accepted.
std::vector<std::string> validate(const OpticalConfig& cfg);

struct EffectiveLiebLiniger {
    double mass_up = 0.0;
    double mass_down = 0.0;
    double chi_up = 0.0;
    double chi_down = 0.0;
    /// Summed inter-species coupling of the Hamiltonian,
    /// Gamma_up nu_up / Delta_updown + Gamma_down nu_down / Delta_downup.
    double chi_cross = 0.0;
    /// Per-equation cross coefficients of the coupled NLS: the up field feels
    /// cross_up |psi_down|^2 and the down field feels cross_down |psi_up|^2.
    double cross_up = 0.0;
    double cross_down = 0.0;
    double group_velocity_up = 0.0;
    double group_velocity_down = 0.0;
    double gamma_1d_up = 0.0;
    double gamma_1d_down = 0.0;
    double density_up = 0.0;
    double density_down = 0.0;

    double mass(Species s) const { return s == Species::up ? mass_up : mass_down; }
    double chi(Species s) const { return s == Species::up ? chi_up : chi_down; }
    double cross(Species s) const { return s == Species::up ? cross_up : cross_down; }
    double density(Species s) const { return s == Species::up ? density_up : density_down; }
};

/// Same physics with the species labels exchanged.
EffectiveLiebLiniger swapped(const EffectiveLiebLiniger& eff);
OpticalConfig swapped(const OpticalConfig& cfg);

struct LuttingerParameters {
    double gamma_up = 0.0;
    double gamma_down = 0.0;
    double u = 0.0;
    double k_param = 0.0;
    double u_charge = 0.0;
    double u_spin = 0.0;
    double k_charge = 0.0;
    double k_spin = 0.0;
    double ratio_cross = 0.0;
};

struct RegimeReport {
    std::optional<bool> repulsive;   // set by check_repulsive
    std::optional<bool> separated;   // set by check_separation
    std::vector<std::string> messages;
    std::map<std::string, double> residuals;
    double tolerance = 0.0;
};

inline constexpr double kDefaultSeparationTolerance = 1e-6;

EffectiveLiebLiniger derive_effective(const OpticalConfig& cfg);

RegimeReport check_repulsive(const OpticalConfig& cfg);

RegimeReport check_separation(const EffectiveLiebLiniger& eff,
                              double tol = kDefaultSeparationTolerance);

/// Throws RegimeError unless the separation conditions hold at
/// kDefaultSeparationTolerance, gamma > 0 and |chi_cross / chi| < 1.
LuttingerParameters derive_luttinger(const EffectiveLiebLiniger& eff);

struct LuttingerInversion {
    double ratio_cross = 0.0;
    double gamma = 0.0;
};

/// Recovers chi_cross/chi and gamma from the two sector Luttinger parameters.
LuttingerInversion invert_luttinger(double k_charge, double k_spin);

/// Builds a consistent parameter set from sector values given directly.
/// Throws DomainError when u_charge/u_spin and k_spin/k_charge disagree
/// (both must equal sqrt((1+r)/(1-r)) for the same r).
LuttingerParameters luttinger_from_sectors(double u_charge, double u_spin,
                                           double k_charge, double k_spin);

/// Rescales every velocity so that u_charge = 1.
LuttingerParameters normalized_to_charge_velocity(const LuttingerParameters& lp);

/// Coefficient 2 chi_cross rho_0^2 of the cos(sqrt(8) phi_spin) term,
/// with rho_0 the total density.
double sine_gordon_coefficient(const EffectiveLiebLiniger& eff);

}  // namespace scsep
