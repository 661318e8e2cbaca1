#include <doctest.h>

#include <algorithm>

#include "oracle.hpp"
#include "scsep/errors.hpp"
#include "scsep/spectral.hpp"

using namespace scsep;

namespace {

SpectrumRequest strong_request() {
    SpectrumRequest r;
    r.lutt = luttinger_from_sectors(1.0, 0.5, 0.55, 1.1);
    return r;
}

bool near(Complex a, Complex b, double tol) { return std::abs(a - b) <= tol * std::abs(b); }

std::vector<double> column_magnitude(const SpectrumGrid& g, std::size_t j) {
    std::vector<double> m(g.omegas.size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::abs(g.at(i, j));
    return m;
}

}  // namespace

TEST_SUITE("spectral") {

TEST_CASE("D(omega, q) against reference values") {
    const SpectrumRequest r = strong_request();
    struct Ref {
        double w, q, re, im;
    };
    const Ref refs[] = {
        {0.5, 2, -23.563975677546454, 0.0},
        {1.5, 2, -18.95960512858466, -16.302409557173426},
        {2.5, 2, -16.32390791281284, -10.003303634495381},
        {0.3, 1, -30.595607334295568, 0.0},
        {0.7, 1, -24.342085039720201, -21.808935276841379},
        {1.4, 1, -19.650547526684115, -12.041871011733217},
        {0.2, 3, -19.788741961100563, 0.0},
        {2.0, 3, -16.675359558708674, -15.391392932987605},
        {3.5, 3, -14.73327005507626, -9.0285595016291912},
    };
    for (const Ref& ref : refs) {
        CAPTURE(ref.w);
        CAPTURE(ref.q);
        CHECK(near(density_spectrum_point(ref.w, ref.q, r), Complex(ref.re, ref.im), 1e-9));
    }
}

TEST_CASE("D(omega, q) against the Gauss-Legendre oracle") {
    const SpectrumRequest r = strong_request();
    for (double w : {0.15, 0.9, 1.2, 1.95, 2.05, 2.9}) {
        CAPTURE(w);
        const auto want = oracle::density_spectrum(w, 2.0L, 1.0L, 0.5L, 0.55L, 1.1L);
        const Complex got = density_spectrum_point(w, 2.0, r);
        CHECK(near(got, Complex(double(want.real()), double(want.imag())), 1e-9));
    }
}

TEST_CASE("D is even in q") {
    const SpectrumRequest r = strong_request();
    for (double w : {0.4, 1.3, 2.6}) {
        CHECK(near(density_spectrum_point(w, -2.0, r), density_spectrum_point(w, 2.0, r), 1e-14));
    }
}

TEST_CASE("alpha scaling (alpha/2)^(Kc+Ks) / alpha") {
    SpectrumRequest r = strong_request();
    const Complex d1 = density_spectrum_point(1.3, 2.0, r);
    r.alpha = 0.5;
    const Complex d2 = density_spectrum_point(1.3, 2.0, r);
    CHECK(near(d2, d1 * std::pow(0.5, 1.65 - 1.0), 1e-13));
}

TEST_CASE("exactly on a singular line") {
    const SpectrumRequest r = strong_request();
    CHECK_THROWS_AS(density_spectrum_point(1.0, 2.0, r), SingularLineError);
    CHECK_THROWS_AS(density_spectrum_point(2.0, 2.0, r), SingularLineError);
}

TEST_CASE("below the spin line D is real, above it complex") {
    const SpectrumRequest r = strong_request();
    CHECK(density_spectrum_point(0.7, 2.0, r).imag() == 0.0);
    CHECK(density_spectrum_point(0.7, 2.0, r).real() < 0.0);
    CHECK(std::abs(density_spectrum_point(1.5, 2.0, r).imag()) > 1.0);
}

TEST_CASE("prefactor power away from the lines") {
    // For omega >> u q, y -> 0 and F1 tends to F1(x, 0), so D scales like
    // omega^(Kc+Ks-2).
    const SpectrumRequest r = strong_request();
    const double d1 = std::abs(density_spectrum_point(200.0, 0.1, r));
    const double d2 = std::abs(density_spectrum_point(400.0, 0.1, r));
    CHECK(std::log(d2 / d1) / std::log(2.0) == doctest::Approx(1.65 - 2.0).epsilon(1e-4));
}

TEST_CASE("request validation") {
    SpectrumRequest r = strong_request();
    r.q_min = -1.0;
    r.q_max = 1.0;
    r.q_steps = 3;
    CHECK_THROWS_AS(validate(r), DomainError);  // q = 0 sample
    r = strong_request();
    r.omega_steps = 20;
    CHECK_THROWS_AS(validate(r), DomainError);  // spacing > 0.02 u_c |q|max
    r = strong_request();
    r.lutt.k_charge = 1.0;
    r.lutt.k_spin = 1.0;
    CHECK_THROWS_AS(validate(r), DomainError);  // Gamma(1 - c) pole
    CHECK_NOTHROW(validate(strong_request()));
}

TEST_CASE("grid is independent of the thread count") {
    SpectrumRequest r = strong_request();
    r.omega_steps = 120;
    r.omega_max = 3.0;
    r.q_steps = 7;
    const SpectrumGrid a = density_spectrum_grid(r, 1);
    const SpectrumGrid b = density_spectrum_grid(r, 3);
    REQUIRE(a.values.size() == b.values.size());
    CHECK(std::equal(a.values.begin(), a.values.end(), b.values.begin()));
    CHECK(a.values.size() == 120u * 7u);
}

TEST_CASE("lattice points on a singular line are nudged") {
    SpectrumRequest r = strong_request();
    r.omega_min = 0.5;
    r.omega_max = 2.5;
    r.omega_steps = 201;  // contains omega = 1 and 2
    r.q_min = r.q_max = 2.0;
    r.q_steps = 1;
    const SpectrumGrid g = density_spectrum_grid(r, 1);
    CHECK(g.nudged_points == 2);
    CHECK(g.branch_points > 0);
}

TEST_CASE("single-point grid") {
    SpectrumRequest r = strong_request();
    r.omega_min = r.omega_max = 1.5;
    r.omega_steps = 1;
    r.omega_max = 1.6;
    r.q_min = r.q_max = 2.0;
    r.q_steps = 1;
    const SpectrumGrid g = density_spectrum_grid(r, 1);
    CHECK(g.values.size() == 1);
    CHECK(g.omegas[0] == 1.5);
}

TEST_CASE("q = 2 cut: spinon and holon peaks") {
    SpectrumRequest r = strong_request();
    r.q_min = r.q_max = 2.0;
    r.q_steps = 1;
    const SpectrumGrid g = density_spectrum_grid(r, 1);
    const auto mag = column_magnitude(g, 0);
    const auto peaks = find_peaks(g.omegas, mag);
    REQUIRE(peaks.size() == 2);
    CHECK(std::abs(peaks[0].omega - 1.0) <= 0.01);
    CHECK(std::abs(peaks[1].omega - 2.0) <= 0.01);
    const PeakSet ps = extract_peaks(g, 2.0);
    CHECK(ps.inferred_u_spin == doctest::Approx(0.5).epsilon(0.01));
    CHECK(ps.inferred_u_charge == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("doubling omega resolution moves the peaks by less than one spacing") {
    SpectrumRequest r = strong_request();
    r.q_min = r.q_max = 2.0;
    r.q_steps = 1;
    const PeakSet coarse = extract_peaks(density_spectrum_grid(r, 1), 2.0);
    const double h = r.omega_spacing();
    r.omega_steps = 2 * r.omega_steps - 1;  // shares every coarse lattice point
    const PeakSet fine = extract_peaks(density_spectrum_grid(r, 1), 2.0);
    CHECK(std::abs(fine.peak_omegas[0] - coarse.peak_omegas[0]) <= h);
    CHECK(std::abs(fine.peak_omegas[1] - coarse.peak_omegas[1]) <= h);
}

TEST_CASE("decoupled sectors give a single peak") {
    SpectrumRequest r;
    r.lutt = luttinger_from_sectors(1.0, 1.0, 0.8, 0.8);
    r.q_min = r.q_max = 2.0;
    r.q_steps = 1;
    CHECK_THROWS_AS(extract_peaks(density_spectrum_grid(r, 1), 2.0), AnalysisError);
}

TEST_CASE("too few samples above the charge line") {
    SpectrumRequest r = strong_request();
    r.q_min = r.q_max = 2.9;
    r.q_steps = 1;
    CHECK_THROWS_AS(extract_peaks(density_spectrum_grid(r, 1), 2.9), DomainError);
}

TEST_CASE("velocity sweep reproduces the sector velocities") {
    SpectrumRequest r = strong_request();
    r.omega_max = 4.5;
    r.omega_steps = 900;
    const std::vector<double> qs{1.0, 2.0, 3.0};
    const VelocityFit fit = velocities_from_sweep(r, qs, 1);
    CHECK(std::abs(fit.u_spin / 0.5 - 1.0) <= 0.02);
    CHECK(std::abs(fit.u_charge / 1.0 - 1.0) <= 0.02);
    CHECK(fit.peaks.size() == 3);
    CHECK_THROWS_AS(velocities_from_sweep(r, std::vector<double>{1.0, 2.0}, 1), DomainError);
}

TEST_CASE("find_peaks merges close maxima") {
    const std::vector<double> w{0, 1, 2, 3, 4, 5, 6, 7, 8};
    const std::vector<double> m{0, 2, 1, 3, 0, 0, 0, 5, 0};
    const auto p = find_peaks(w, m, 3);
    REQUIRE(p.size() == 2);
    CHECK(p[0].index == 3);
    CHECK(p[1].index == 7);
    CHECK(find_peaks(w, m, 1).size() == 3);
}

TEST_CASE("slope through origin") {
    const std::vector<double> x{1, 2, 3};
    const std::vector<double> y{0.5, 1.0, 1.5};
    CHECK(fit_slope_through_origin(x, y) == doctest::Approx(0.5).epsilon(1e-15));
}

}
