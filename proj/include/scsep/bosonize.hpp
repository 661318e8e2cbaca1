// bosonize.hpp: classical-field bookkeeping for the bosonized description:
// charge/spin combinations of the phase fields and the harmonic density
// expansion truncated at m_max.
#pragma once

#include <vector>

namespace scsep {

struct PhaseFields {
    std::vector<double> phi_up, phi_down;
    std::vector<double> theta_up, theta_down;
    double dz = 1.0;
};

struct SectorFields {
    std::vector<double> phi_charge, phi_spin;
    std::vector<double> theta_charge, theta_spin;
    double dz = 1.0;
};

/// x_charge = (x_up + x_down)/sqrt2, x_spin = (x_up - x_down)/sqrt2 for phi and
/// theta. Throws DomainError on length mismatch.
SectorFields to_sectors(const PhaseFields& f);
PhaseFields from_sectors(const SectorFields& s);

struct SectorDensities {
    std::vector<double> rho_charge;
    std::vector<double> rho_spin;
};

/// Total density rho0 with k_F = pi rho0 / 2 (equal species densities):
///   rho_charge = rho0 - (sqrt2/pi) d_z phi_c + 2 rho0 cos(2k_F z - sqrt2 phi_c) cos(sqrt2 phi_s)
///   rho_spin   =      - (sqrt2/pi) d_z phi_s + 2 rho0 sin(2k_F z - sqrt2 phi_c) sin(sqrt2 phi_s)
/// with the oscillating terms kept only for m_max = 1. Gradients are centered
/// periodic differences; z_i = i dz.
SectorDensities reconstruct_densities(const SectorFields& s, double rho0, int m_max);

/// Re{ [rho0_s + (1/pi) d_z phi] sum_{|m|<=m_max} exp(i m (2 pi rho0_s z + 2 phi)) }
/// on the grid z_i = i dz.
std::vector<double> single_species_density(const std::vector<double>& phi, double dz,
                                           double rho0_s, int m_max);

/// Centered periodic difference (f[i+1] - f[i-1]) / (2 dz).
std::vector<double> periodic_gradient(const std::vector<double>& f, double dz);

}  // namespace scsep
