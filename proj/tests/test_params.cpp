#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "scsep/errors.hpp"
#include "scsep/params.hpp"

using namespace scsep;

TEST_SUITE("params") {

TEST_CASE("sector velocities and K for chi_cross/chi = 0.6") {
    EffectiveLiebLiniger e = derive_effective(fixtures::strong_optical());
    CHECK(e.chi_cross / e.chi_up == doctest::Approx(0.6).epsilon(1e-14));
    const LuttingerParameters lp = derive_luttinger(e);
    CHECK(std::abs(lp.u_charge / lp.u_spin - 2.0) <= 2e-12);
    CHECK(std::abs(lp.k_spin / lp.k_charge - 2.0) <= 2e-12);
    CHECK(lp.k_charge == doctest::Approx(0.55).epsilon(1e-12));
    CHECK(lp.k_spin == doctest::Approx(1.1).epsilon(1e-12));
    CHECK(lp.gamma_up == doctest::Approx(20.391744630349905).epsilon(1e-12));
}

TEST_CASE("effective parameters from optical knobs") {
    const EffectiveLiebLiniger e = derive_effective(fixtures::strong_optical());
    CHECK(e.gamma_1d_up == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(e.group_velocity_up == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(e.mass_up == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(e.chi_up == doctest::Approx(20.391744630349905).epsilon(1e-14));
    CHECK(e.cross_up == doctest::Approx(0.3 * 20.391744630349905).epsilon(1e-14));
    CHECK(e.density_up == 1.0);
}

TEST_CASE("K_charge = 0.55, K_spin = 1.1 back-solve to gamma ~ 20.39") {
    const LuttingerInversion inv = invert_luttinger(0.55, 1.1);
    CHECK(inv.ratio_cross == doctest::Approx(0.6).epsilon(1e-14));
    CHECK(std::abs(inv.gamma - 20.39) <= 0.01);
}

TEST_CASE("inversion round trip over random (r, gamma)") {
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> r_dist(-0.95, 0.95);
    std::uniform_real_distribution<double> log_g(-3.0, 3.0);
    for (int i = 0; i < 500; ++i) {
        EffectiveLiebLiniger e = fixtures::weak_coupling();
        const double gamma = std::pow(10.0, log_g(rng));
        const double r = r_dist(rng);
        e.chi_up = e.chi_down = gamma;
        e.chi_cross = r * gamma;
        e.cross_up = e.cross_down = 0.5 * r * gamma;
        const LuttingerParameters lp = derive_luttinger(e);
        const LuttingerInversion inv = invert_luttinger(lp.k_charge, lp.k_spin);
        CHECK(inv.ratio_cross == doctest::Approx(r).epsilon(1e-10).scale(1.0));
        CHECK(inv.gamma == doctest::Approx(gamma).epsilon(1e-10));
        // u_c u_s = u^2 sqrt(1 - r^2), K_c K_s = K^2 / sqrt(1 - r^2)
        CHECK(lp.u_charge * lp.u_spin ==
              doctest::Approx(lp.u * lp.u * std::sqrt(1 - r * r)).epsilon(1e-12));
        CHECK(lp.k_charge * lp.k_spin ==
              doctest::Approx(lp.k_param * lp.k_param / std::sqrt(1 - r * r)).epsilon(1e-12));
    }
}

TEST_CASE("sector parameters given directly") {
    const LuttingerParameters lp = luttinger_from_sectors(1.0, 0.5, 0.55, 1.1);
    CHECK(lp.ratio_cross == doctest::Approx(0.6).epsilon(1e-14));
    CHECK(lp.u == doctest::Approx(1.0 / std::sqrt(1.6)).epsilon(1e-14));
    CHECK_THROWS_AS(luttinger_from_sectors(1.0, 0.6, 0.55, 1.1), DomainError);
    CHECK_THROWS_AS(luttinger_from_sectors(-1.0, 0.5, 0.55, 1.1), DomainError);
}

TEST_CASE("normalization to u_charge = 1 keeps ratios") {
    const LuttingerParameters lp = derive_luttinger(derive_effective(fixtures::strong_optical()));
    const LuttingerParameters n = normalized_to_charge_velocity(lp);
    CHECK(n.u_charge == 1.0);
    CHECK(n.u_spin == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(n.k_charge == lp.k_charge);
}

TEST_CASE("repulsive sign rules") {
    CHECK(*check_repulsive(fixtures::strong_optical()).repulsive);
    OpticalConfig o = fixtures::strong_optical();
    o.delta_down = 2500.0;
    const RegimeReport rep = check_repulsive(o);
    CHECK_FALSE(*rep.repulsive);
    bool named = false;
    for (const auto& m : rep.messages)
        if (m.find("delta_up * delta_down > 0") != std::string::npos) named = true;
    CHECK(named);
}

TEST_CASE("separation conditions and their residuals") {
    EffectiveLiebLiniger e = fixtures::weak_coupling();
    RegimeReport rep = check_separation(e);
    CHECK(*rep.separated);
    CHECK(rep.residuals.at("chi_mismatch") == 0.0);
    e.chi_down *= 1.01;
    rep = check_separation(e);
    CHECK_FALSE(*rep.separated);
    CHECK(rep.residuals.at("chi_mismatch") == doctest::Approx(0.01 / 1.01).epsilon(1e-12));
    CHECK_THROWS_AS(derive_luttinger(e), RegimeError);
}

TEST_CASE("demixing and attractive couplings are rejected") {
    EffectiveLiebLiniger e = fixtures::weak_coupling(0.03);
    e.chi_cross = 0.06;  // r = 1.2
    CHECK_THROWS_AS(derive_luttinger(e), RegimeError);
    e = fixtures::weak_coupling();
    e.chi_up = e.chi_down = -0.05;
    CHECK_THROWS_AS(derive_luttinger(e), RegimeError);
}

TEST_CASE("validate names the offending field") {
    OpticalConfig o = fixtures::strong_optical();
    o.omega_down = 0.0;
    try {
        validate(o);
        FAIL("expected DomainError");
    } catch (const DomainError& e) {
        CHECK(std::string(e.what()).find("optical.omega_down") != std::string::npos);
    }
    o = fixtures::strong_optical();
    o.photon_density_up = 1e3;  // ratio 10
    CHECK_THROWS_AS(validate(o), DomainError);
    o.photon_density_up = 10.0;  // ratio 1e3: accepted with a warning
    CHECK(validate(o).size() == 1);
    CHECK(validate(fixtures::strong_optical()).empty());
}

TEST_CASE("species swap leaves the Luttinger parameters unchanged") {
    const OpticalConfig o = fixtures::strong_optical();
    const LuttingerParameters a = derive_luttinger(derive_effective(o));
    const LuttingerParameters b = derive_luttinger(derive_effective(swapped(o)));
    CHECK(a.u_charge == b.u_charge);
    CHECK(a.k_spin == b.k_spin);
    const EffectiveLiebLiniger e = derive_effective(o);
    CHECK(swapped(swapped(e)).chi_cross == e.chi_cross);
}

TEST_CASE("sine-Gordon coefficient 2 chi_cross rho0^2") {
    const EffectiveLiebLiniger e = fixtures::weak_coupling();
    CHECK(sine_gordon_coefficient(e) == doctest::Approx(2.0 * 0.06 * 4.0).epsilon(1e-14));
}

}
