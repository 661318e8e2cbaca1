// Shared parameter sets for the tests.
#pragma once

#include <cmath>
#include <numbers>

#include "scsep/params.hpp"

namespace fixtures {

// chi_cross/chi = 0.6 and gamma = (pi / (0.55 sqrt 1.6))^2 with m = 1,
// rho0_s = 1 and Gamma_1D = 1.
inline scsep::OpticalConfig strong_optical() {
    scsep::OpticalConfig o;
    o.delta_up = o.delta_down = -2500.0;
    o.delta_upup = o.delta_downdown = 0.04903945288289151;
    o.delta_updown = o.delta_downup = 0.16346484294297167;
    o.omega_up = o.omega_down = 50.0;
    o.coupling_g = std::sqrt(1.0 / (4.0 * std::numbers::pi));
    o.atom_density_up = o.atom_density_down = 1e4;
    o.photon_density_up = o.photon_density_down = 1.0;
    o.waveguide_velocity = 1.0;
    return o;
}

// m = 1, rho0_s = 1, chi = 0.05, per-equation cross coefficient 0.03.
inline scsep::EffectiveLiebLiniger weak_coupling(double cross = 0.03) {
    scsep::EffectiveLiebLiniger e;
    e.mass_up = e.mass_down = 1.0;
    e.chi_up = e.chi_down = 0.05;
    e.cross_up = e.cross_down = cross;
    e.chi_cross = 2.0 * cross;
    e.density_up = e.density_down = 1.0;
    e.gamma_1d_up = e.gamma_1d_down = 1.0;
    e.group_velocity_up = e.group_velocity_down = 1.0;
    return e;
}

inline bool close_rel(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

}  // namespace fixtures
