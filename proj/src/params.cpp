// params.cpp: optical -> effective Lieb-Liniger -> Luttinger derivation chain
#include "scsep/params.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "scsep/errors.hpp"

namespace scsep {

namespace {

void require_nonzero(double v, const char* name) {
    if (!std::isfinite(v) || v == 0.0) {
        std::ostringstream os;
        os << "optical." << name << " must be finite and nonzero (got " << v << ")";
        throw DomainError(os.str());
    }
}

void require_positive(double v, const char* name) {
    if (!std::isfinite(v) || v <= 0.0) {
        std::ostringstream os;
        os << "optical." << name << " must be finite and > 0 (got " << v << ")";
        throw DomainError(os.str());
    }
}

double relative_mismatch(double a, double b) {
    if (a == b) return 0.0;
    const double scale = std::max(std::abs(a), std::abs(b));
    return std::abs(a - b) / scale;
}

}  // namespace

std::vector<std::string> validate(const OpticalConfig& cfg) {
    require_nonzero(cfg.delta_up, "delta_up");
    require_nonzero(cfg.delta_down, "delta_down");
    require_nonzero(cfg.delta_upup, "delta_upup");
    require_nonzero(cfg.delta_downdown, "delta_downdown");
    require_nonzero(cfg.delta_updown, "delta_updown");
    require_nonzero(cfg.delta_downup, "delta_downup");
    require_positive(cfg.omega_up, "omega_up");
    require_positive(cfg.omega_down, "omega_down");
    require_positive(cfg.coupling_g, "coupling_g");
    require_positive(cfg.atom_density_up, "atom_density_up");
    require_positive(cfg.atom_density_down, "atom_density_down");
    require_positive(cfg.photon_density_up, "photon_density_up");
    require_positive(cfg.photon_density_down, "photon_density_down");
    require_positive(cfg.waveguide_velocity, "waveguide_velocity");
    require_positive(cfg.optical_depth, "optical_depth");
    if (!(cfg.cooperativity > 0.0 && cfg.cooperativity < 1.0)) {
        std::ostringstream os;
        os << "optical.cooperativity must lie in (0, 1) (got " << cfg.cooperativity << ")";
        throw DomainError(os.str());
    }

    std::vector<std::string> warnings;
    const auto check_ratio = [&](double atoms, double photons, const char* label) {
        const double ratio = atoms / photons;
        if (ratio < kMinDensityRatio) {
            std::ostringstream os;
            os << "optical.atom_density_" << label << " / photon_density_" << label << " = "
               << ratio << " is below " << kMinDensityRatio
               << "; polariton adiabatic elimination does not apply";
            throw DomainError(os.str());
        }
        if (ratio < kNominalDensityRatio) {
            std::ostringstream os;
            os << "atom/photon density ratio for species " << label << " is " << ratio
               << " (< " << kNominalDensityRatio << "); adiabatic elimination is marginal";
            warnings.push_back(os.str());
        }
    };
    check_ratio(cfg.atom_density_up, cfg.photon_density_up, "up");
    check_ratio(cfg.atom_density_down, cfg.photon_density_down, "down");
    return warnings;
}

EffectiveLiebLiniger derive_effective(const OpticalConfig& cfg) {
    validate(cfg);
    const double g2 = cfg.coupling_g * cfg.coupling_g;
    const double nu = cfg.waveguide_velocity;
    // The paper's single-coupling assumption makes Gamma_1D species-independent.
    const double gamma_1d = 4.0 * std::numbers::pi * g2 / nu;

    EffectiveLiebLiniger eff;
    eff.gamma_1d_up = gamma_1d;
    eff.gamma_1d_down = gamma_1d;
    eff.group_velocity_up =
        nu * cfg.omega_up * cfg.omega_up / (std::numbers::pi * g2 * cfg.atom_density_up);
    eff.group_velocity_down =
        nu * cfg.omega_down * cfg.omega_down / (std::numbers::pi * g2 * cfg.atom_density_down);

    eff.mass_up = -gamma_1d * cfg.atom_density_up / (4.0 * cfg.delta_up * eff.group_velocity_up);
    eff.mass_down =
        -gamma_1d * cfg.atom_density_down / (4.0 * cfg.delta_down * eff.group_velocity_down);

    const double rate_up = gamma_1d * eff.group_velocity_up;
    const double rate_down = gamma_1d * eff.group_velocity_down;
    eff.chi_up = rate_up / cfg.delta_upup;
    eff.chi_down = rate_down / cfg.delta_downdown;
    eff.cross_up = rate_up / cfg.delta_updown;
    eff.cross_down = rate_down / cfg.delta_downup;
    eff.chi_cross = eff.cross_up + eff.cross_down;

    eff.density_up = cfg.photon_density_up;
    eff.density_down = cfg.photon_density_down;
    return eff;
}

EffectiveLiebLiniger swapped(const EffectiveLiebLiniger& e) {
    EffectiveLiebLiniger s = e;
    std::swap(s.mass_up, s.mass_down);
    std::swap(s.chi_up, s.chi_down);
    std::swap(s.cross_up, s.cross_down);
    std::swap(s.group_velocity_up, s.group_velocity_down);
    std::swap(s.gamma_1d_up, s.gamma_1d_down);
    std::swap(s.density_up, s.density_down);
    s.chi_cross = s.cross_up + s.cross_down;
    return s;
}

OpticalConfig swapped(const OpticalConfig& c) {
    OpticalConfig s = c;
    std::swap(s.delta_up, s.delta_down);
    std::swap(s.delta_upup, s.delta_downdown);
    std::swap(s.delta_updown, s.delta_downup);
    std::swap(s.omega_up, s.omega_down);
    std::swap(s.atom_density_up, s.atom_density_down);
    std::swap(s.photon_density_up, s.photon_density_down);
    return s;
}

RegimeReport check_repulsive(const OpticalConfig& cfg) {
    validate(cfg);
    RegimeReport report;
    bool ok = true;
    const auto clause = [&](bool holds, const char* text) {
        if (!holds) {
            ok = false;
            report.messages.emplace_back(std::string("violated: ") + text);
        }
    };
    clause(cfg.delta_up * cfg.delta_upup < 0.0,
           "delta_up * delta_upup < 0 (needed for m_up * chi_up > 0)");
    clause(cfg.delta_down * cfg.delta_downdown < 0.0,
           "delta_down * delta_downdown < 0 (needed for m_down * chi_down > 0)");
    clause(cfg.delta_up * cfg.delta_down > 0.0,
           "delta_up * delta_down > 0 (needed for m_up * m_down > 0)");
    clause(cfg.delta_upup * cfg.delta_downdown > 0.0,
           "delta_upup * delta_downdown > 0 (needed for chi_up * chi_down > 0)");
    report.repulsive = ok;
    if (ok) report.messages.emplace_back("repulsive regime: all detuning sign rules hold");
    return report;
}

RegimeReport check_separation(const EffectiveLiebLiniger& eff, double tol) {
    if (!(tol > 0.0)) throw DomainError("separation tolerance must be > 0");
    RegimeReport report;
    report.tolerance = tol;
    const double chi_res = relative_mismatch(eff.chi_up, eff.chi_down);
    const double stiff_up = eff.density_up / eff.mass_up;
    const double stiff_down = eff.density_down / eff.mass_down;
    const double stiff_res = relative_mismatch(stiff_up, stiff_down);
    report.residuals["chi_mismatch"] = chi_res;
    report.residuals["density_over_mass_mismatch"] = stiff_res;

    bool ok = true;
    if (!(chi_res <= tol)) {
        ok = false;
        std::ostringstream os;
        os << "chi_up != chi_down: relative mismatch " << chi_res << " > " << tol;
        report.messages.push_back(os.str());
    }
    if (!(stiff_res <= tol)) {
        ok = false;
        std::ostringstream os;
        os << "rho_up/m_up != rho_down/m_down: relative mismatch " << stiff_res << " > " << tol;
        report.messages.push_back(os.str());
    }
    report.separated = ok;
    if (ok) report.messages.emplace_back("separation conditions hold");
    return report;
}

LuttingerParameters derive_luttinger(const EffectiveLiebLiniger& eff) {
    const RegimeReport sep = check_separation(eff, kDefaultSeparationTolerance);
    if (!*sep.separated) {
        std::string msg = "derive_luttinger: separation conditions fail";
        for (const auto& m : sep.messages) msg += "; " + m;
        throw RegimeError(msg);
    }

    LuttingerParameters lp;
    lp.gamma_up = eff.mass_up * eff.chi_up / eff.density_up;
    lp.gamma_down = eff.mass_down * eff.chi_down / eff.density_down;
    if (!(lp.gamma_up > 0.0) || !(lp.gamma_down > 0.0)) {
        std::ostringstream os;
        os << "derive_luttinger: Lieb-Liniger gamma must be > 0 (repulsive regime), got "
           << lp.gamma_up << ", " << lp.gamma_down;
        throw RegimeError(os.str());
    }

    const double chi = eff.chi_up;
    const double r = eff.chi_cross / chi;
    if (!(std::abs(r) < 1.0)) {
        std::ostringstream os;
        os << "derive_luttinger: |chi_cross/chi| = " << std::abs(r)
           << " >= 1; the spin sector is unstable (demixing), no Luttinger description";
        throw RegimeError(os.str());
    }

    const double root_gamma = std::sqrt(lp.gamma_up);
    // chi and m share a sign in the repulsive regime, so |chi| keeps u > 0.
    lp.u = std::abs(chi) / root_gamma;
    lp.k_param = std::numbers::pi / root_gamma;
    lp.ratio_cross = r;
    const double plus = std::sqrt(1.0 + r);
    const double minus = std::sqrt(1.0 - r);
    lp.u_charge = lp.u * plus;
    lp.u_spin = lp.u * minus;
    lp.k_charge = lp.k_param / plus;
    lp.k_spin = lp.k_param / minus;
    return lp;
}

LuttingerInversion invert_luttinger(double k_charge, double k_spin) {
    if (!(k_charge > 0.0) || !(k_spin > 0.0) || !std::isfinite(k_charge) ||
        !std::isfinite(k_spin)) {
        throw DomainError("invert_luttinger: k_charge and k_spin must be finite and > 0");
    }
    const double rho = k_charge / k_spin;
    const double rho2 = rho * rho;
    LuttingerInversion inv;
    inv.ratio_cross = (1.0 - rho2) / (1.0 + rho2);
    const double k = k_charge * std::sqrt(1.0 + inv.ratio_cross);
    inv.gamma = (std::numbers::pi / k) * (std::numbers::pi / k);
    return inv;
}

LuttingerParameters luttinger_from_sectors(double u_charge, double u_spin, double k_charge,
                                           double k_spin) {
    if (!(u_charge > 0.0) || !(u_spin > 0.0) || !std::isfinite(u_charge) ||
        !std::isfinite(u_spin)) {
        throw DomainError("luttinger_from_sectors: u_charge and u_spin must be finite and > 0");
    }
    const LuttingerInversion inv = invert_luttinger(k_charge, k_spin);
    const double r = inv.ratio_cross;
    const double velocity_ratio2 = (u_charge / u_spin) * (u_charge / u_spin);
    const double expected = (1.0 + r) / (1.0 - r);
    if (relative_mismatch(velocity_ratio2, expected) > 1e-9) {
        std::ostringstream os;
        os << "luttinger_from_sectors: (u_charge/u_spin)^2 = " << velocity_ratio2
           << " but (k_spin/k_charge)^2 = " << expected
           << "; sector values do not come from a single (u, K, chi_cross/chi)";
        throw DomainError(os.str());
    }
    LuttingerParameters lp;
    lp.ratio_cross = r;
    lp.gamma_up = inv.gamma;
    lp.gamma_down = inv.gamma;
    lp.u = u_charge / std::sqrt(1.0 + r);
    lp.k_param = std::numbers::pi / std::sqrt(inv.gamma);
    lp.u_charge = u_charge;
    lp.u_spin = u_spin;
    lp.k_charge = k_charge;
    lp.k_spin = k_spin;
    return lp;
}

LuttingerParameters normalized_to_charge_velocity(const LuttingerParameters& lp) {
    LuttingerParameters n = lp;
    const double scale = lp.u_charge;
    n.u /= scale;
    n.u_charge = 1.0;
    n.u_spin /= scale;
    return n;
}

double sine_gordon_coefficient(const EffectiveLiebLiniger& eff) {
    const double rho0 = eff.density_up + eff.density_down;
    return 2.0 * eff.chi_cross * rho0 * rho0;
}

}  // namespace scsep
