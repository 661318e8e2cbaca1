#include "scsep/bosonize.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "scsep/errors.hpp"

namespace scsep {

namespace {

constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

void require_same_length(std::size_t n, std::initializer_list<std::size_t> others,
                         const char* where) {
    for (std::size_t m : others) {
        if (m != n) {
            std::ostringstream os;
            os << where << ": field length mismatch (" << n << " vs " << m << ")";
            throw DomainError(os.str());
        }
    }
}

void rotate(const std::vector<double>& a, const std::vector<double>& b, std::vector<double>& sum,
            std::vector<double>& diff) {
    sum.resize(a.size());
    diff.resize(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        sum[i] = (a[i] + b[i]) * kInvSqrt2;
        diff[i] = (a[i] - b[i]) * kInvSqrt2;
    }
}

}  // namespace

std::vector<double> periodic_gradient(const std::vector<double>& f, double dz) {
    const std::size_t n = f.size();
    std::vector<double> g(n, 0.0);
    if (n < 3) return g;
    for (std::size_t i = 0; i < n; ++i) {
        const double next = f[(i + 1) % n];
        const double prev = f[(i + n - 1) % n];
        g[i] = (next - prev) / (2.0 * dz);
    }
    return g;
}

SectorFields to_sectors(const PhaseFields& f) {
    require_same_length(f.phi_up.size(),
                        {f.phi_down.size(), f.theta_up.size(), f.theta_down.size()}, "to_sectors");
    SectorFields s;
    s.dz = f.dz;
    rotate(f.phi_up, f.phi_down, s.phi_charge, s.phi_spin);
    rotate(f.theta_up, f.theta_down, s.theta_charge, s.theta_spin);
    return s;
}

PhaseFields from_sectors(const SectorFields& s) {
    require_same_length(s.phi_charge.size(),
                        {s.phi_spin.size(), s.theta_charge.size(), s.theta_spin.size()},
                        "from_sectors");
    PhaseFields f;
    f.dz = s.dz;
    rotate(s.phi_charge, s.phi_spin, f.phi_up, f.phi_down);
    rotate(s.theta_charge, s.theta_spin, f.theta_up, f.theta_down);
    return f;
}

SectorDensities reconstruct_densities(const SectorFields& s, double rho0, int m_max) {
    if (m_max != 0 && m_max != 1) {
        std::ostringstream os;
        os << "reconstruct_densities: m_max must be 0 or 1 (got " << m_max << ")";
        throw DomainError(os.str());
    }
    if (!(rho0 > 0.0) || !std::isfinite(rho0))
        throw DomainError("reconstruct_densities: rho0 must be finite and > 0");
    if (!(s.dz > 0.0)) throw DomainError("reconstruct_densities: dz must be > 0");
    require_same_length(s.phi_charge.size(), {s.phi_spin.size()}, "reconstruct_densities");

    // Matching exp[2i(pi rho0_s z - phi_s)] summed over species against
    // cos(2 k_F z - sqrt2 phi_c) gives k_F = pi rho0_s = pi rho0 / 2.
    const double k_f = std::numbers::pi * rho0 / 2.0;
    const double grad_scale = std::numbers::sqrt2 / std::numbers::pi;
    const auto grad_c = periodic_gradient(s.phi_charge, s.dz);
    const auto grad_s = periodic_gradient(s.phi_spin, s.dz);

    const std::size_t n = s.phi_charge.size();
    SectorDensities d;
    d.rho_charge.resize(n);
    d.rho_spin.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        double charge = rho0 - grad_scale * grad_c[i];
        double spin = -grad_scale * grad_s[i];
        if (m_max == 1) {
            const double z = static_cast<double>(i) * s.dz;
            const double arg = 2.0 * k_f * z - std::numbers::sqrt2 * s.phi_charge[i];
            const double ps = std::numbers::sqrt2 * s.phi_spin[i];
            charge += 2.0 * rho0 * std::cos(arg) * std::cos(ps);
            spin += 2.0 * rho0 * std::sin(arg) * std::sin(ps);
        }
        d.rho_charge[i] = charge;
        d.rho_spin[i] = spin;
    }
    return d;
}

std::vector<double> single_species_density(const std::vector<double>& phi, double dz,
                                           double rho0_s, int m_max) {
    if (m_max < 0) throw DomainError("single_species_density: m_max must be >= 0");
    if (!(dz > 0.0)) throw DomainError("single_species_density: dz must be > 0");
    const auto grad = periodic_gradient(phi, dz);
    std::vector<double> rho(phi.size());
    for (std::size_t i = 0; i < phi.size(); ++i) {
        const double z = static_cast<double>(i) * dz;
        const double arg = 2.0 * std::numbers::pi * rho0_s * z + 2.0 * phi[i];
        // m and -m combine into 2 cos(m arg)
        double harmonics = 1.0;
        for (int m = 1; m <= m_max; ++m) harmonics += 2.0 * std::cos(m * arg);
        rho[i] = (rho0_s + grad[i] / std::numbers::pi) * harmonics;
    }
    return rho;
}

}  // namespace scsep
