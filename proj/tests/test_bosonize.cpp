#include <doctest.h>

#include <numbers>
#include <random>

#include "scsep/bosonize.hpp"
#include "scsep/errors.hpp"

using namespace scsep;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> sampled(int n, double dz, double (*f)(double)) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = f(i * dz);
    return v;
}

double bump(double z) { return std::sin(2 * kPi * z / 64.0) + 0.3; }

PhaseFields random_fields(int n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> d;
    PhaseFields f;
    f.dz = 0.5;
    for (auto* v : {&f.phi_up, &f.phi_down, &f.theta_up, &f.theta_down}) {
        v->resize(n);
        for (auto& x : *v) x = d(rng);
    }
    return f;
}

}  // namespace

TEST_SUITE("bosonize") {

TEST_CASE("symmetric and antisymmetric inputs") {
    const int n = 128;
    const double dz = 0.5;
    const auto f = sampled(n, dz, bump);
    PhaseFields p{f, f, f, f, dz};
    SectorFields s = to_sectors(p);
    for (int i = 0; i < n; ++i) {
        CHECK(s.phi_charge[i] == doctest::Approx(std::sqrt(2.0) * f[i]).epsilon(1e-15));
        CHECK(s.phi_spin[i] == 0.0);
    }
    std::vector<double> neg(f);
    for (auto& x : neg) x = -x;
    p = PhaseFields{f, neg, f, neg, dz};
    s = to_sectors(p);
    for (int i = 0; i < n; ++i) {
        CHECK(s.phi_spin[i] == doctest::Approx(std::sqrt(2.0) * f[i]).epsilon(1e-15));
        CHECK(s.theta_charge[i] == 0.0);
    }
}

TEST_CASE("round trips and isometry") {
    const PhaseFields f = random_fields(300, 7);
    const PhaseFields g = from_sectors(to_sectors(f));
    double norm_f = 0, norm_s = 0;
    const SectorFields s = to_sectors(f);
    for (std::size_t i = 0; i < 300; ++i) {
        CHECK(std::abs(g.phi_up[i] - f.phi_up[i]) <= 1e-14);
        CHECK(std::abs(g.theta_down[i] - f.theta_down[i]) <= 1e-14);
        norm_f += (f.phi_up[i] * f.phi_up[i] + f.phi_down[i] * f.phi_down[i]) * f.dz;
        norm_s += (s.phi_charge[i] * s.phi_charge[i] + s.phi_spin[i] * s.phi_spin[i]) * s.dz;
    }
    CHECK(std::abs(norm_s - norm_f) <= 1e-12 * norm_f);
    SectorFields t = to_sectors(f);
    const SectorFields back = to_sectors(from_sectors(t));
    for (std::size_t i = 0; i < 300; ++i) CHECK(std::abs(back.phi_spin[i] - t.phi_spin[i]) <= 1e-14);
}

TEST_CASE("length mismatch") {
    PhaseFields f = random_fields(10, 1);
    f.theta_down.pop_back();
    CHECK_THROWS_AS(to_sectors(f), DomainError);
    SectorFields s = to_sectors(random_fields(10, 2));
    s.phi_spin.push_back(0.0);
    CHECK_THROWS_AS(from_sectors(s), DomainError);
}

TEST_CASE("densities for vanishing fields") {
    const int n = 200;
    const double dz = 0.05, rho0 = 1.0;
    SectorFields s{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0),
                   std::vector<double>(n, 0.0), std::vector<double>(n, 0.0), dz};
    const double kf = kPi * rho0 / 2;
    SectorDensities d = reconstruct_densities(s, rho0, 1);
    for (int i = 0; i < n; ++i) {
        CHECK(d.rho_charge[i] == doctest::Approx(rho0 * (1 + 2 * std::cos(2 * kf * i * dz))));
        CHECK(d.rho_spin[i] == 0.0);
    }
    d = reconstruct_densities(s, rho0, 0);
    for (int i = 0; i < n; ++i) CHECK(d.rho_charge[i] == rho0);
}

TEST_CASE("constant spin field pi/(2 sqrt2)") {
    const int n = 200;
    const double dz = 0.05, rho0 = 1.0;
    SectorFields s{std::vector<double>(n, 0.0), std::vector<double>(n, kPi / (2 * std::sqrt(2.0))),
                   std::vector<double>(n, 0.0), std::vector<double>(n, 0.0), dz};
    const SectorDensities d = reconstruct_densities(s, rho0, 1);
    const double kf = kPi * rho0 / 2;
    for (int i = 0; i < n; ++i) {
        CHECK(d.rho_charge[i] == doctest::Approx(rho0).epsilon(1e-14));
        CHECK(d.rho_spin[i] == doctest::Approx(2 * rho0 * std::sin(2 * kf * i * dz)).scale(1.0).epsilon(1e-14));
    }
}

TEST_CASE("m_max = 0 is linear in the sector fields") {
    const SectorFields a = to_sectors(random_fields(64, 3));
    const SectorFields b = to_sectors(random_fields(64, 4));
    SectorFields sum = a;
    for (std::size_t i = 0; i < 64; ++i) {
        sum.phi_charge[i] += 2.0 * b.phi_charge[i];
        sum.phi_spin[i] += 2.0 * b.phi_spin[i];
    }
    const double rho0 = 1.3;
    const auto da = reconstruct_densities(a, rho0, 0);
    const auto db = reconstruct_densities(b, rho0, 0);
    const auto ds = reconstruct_densities(sum, rho0, 0);
    for (std::size_t i = 0; i < 64; ++i) {
        // rho - rho0 is linear; the constant background enters once
        CHECK(ds.rho_charge[i] - rho0 ==
              doctest::Approx((da.rho_charge[i] - rho0) + 2.0 * (db.rho_charge[i] - rho0)).epsilon(1e-12).scale(1.0));
        CHECK(ds.rho_spin[i] == doctest::Approx(da.rho_spin[i] + 2.0 * db.rho_spin[i]).epsilon(1e-12).scale(1.0));
    }
}

TEST_CASE("spin density integrates to zero over full periods for constant fields") {
    const double rho0 = 1.0;
    const double period = 2.0 / rho0;  // 2 pi / (2 k_F)
    const int per = 64, periods = 5, n = per * periods;
    const double dz = period / per;
    SectorFields s{std::vector<double>(n, 0.3), std::vector<double>(n, 0.7),
                   std::vector<double>(n, 0.0), std::vector<double>(n, 0.0), dz};
    const auto d = reconstruct_densities(s, rho0, 1);
    double total = 0;
    for (double v : d.rho_spin) total += v * dz;
    CHECK(std::abs(total) <= 1e-12);
}

TEST_CASE("unsupported truncation") {
    const SectorFields s = to_sectors(random_fields(8, 5));
    CHECK_THROWS_AS(reconstruct_densities(s, 1.0, 2), DomainError);
    CHECK_THROWS_AS(reconstruct_densities(s, 0.0, 1), DomainError);
}

TEST_CASE("single-species density") {
    const int n = 400;
    const double dz = 0.01, rho0 = 0.5, slope = 0.2;
    std::vector<double> phi(n);
    for (int i = 0; i < n; ++i) phi[i] = slope * (i * dz);
    // periodic differences break at the wrap, so check the interior
    const auto lin = single_species_density(phi, dz, rho0, 0);
    for (int i = 1; i + 1 < n; ++i) CHECK(lin[i] == doctest::Approx(rho0 + slope / kPi).epsilon(1e-12));

    const std::vector<double> zero(n, 0.0);
    const auto osc = single_species_density(zero, dz, rho0, 1);
    for (int i = 0; i < n; ++i)
        CHECK(osc[i] == doctest::Approx(rho0 * (1 + 2 * std::cos(2 * kPi * rho0 * i * dz))).scale(1.0));

    // average over full periods (period 1/rho0 = 2 -> 200 samples)
    for (int m_max : {0, 1, 3}) {
        const auto r = single_species_density(zero, dz, rho0, m_max);
        double mean = 0;
        for (double v : r) mean += v;
        mean /= n;
        CHECK(mean == doctest::Approx(rho0).epsilon(1e-12));
    }
    CHECK_THROWS_AS(single_species_density(zero, dz, rho0, -1), DomainError);
}

}
