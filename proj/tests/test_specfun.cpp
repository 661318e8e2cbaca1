#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "scsep/errors.hpp"
#include "scsep/specfun.hpp"

using namespace scsep;

namespace {

bool near(Complex a, Complex b, double tol) {
    return std::abs(a - b) <= tol * std::max(1.0, std::abs(b));
}

Complex to_c(const oracle::cld& v) { return {static_cast<double>(v.real()), static_cast<double>(v.imag())}; }

}  // namespace

TEST_SUITE("specfun") {

TEST_CASE("gamma against a 50-digit reference") {
    for (double x : {0.1, 0.5, 0.825, 1.0, 1.5, 2.5, 7.25, 20.0, 100.5, -0.5, -1.75, -7.3}) {
        CAPTURE(x);
        CHECK(gamma_fn(x) == doctest::Approx(oracle::gamma50(x)).epsilon(1e-13));
    }
    CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-15));
}

TEST_CASE("gamma recurrence over 1000 random draws") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> dist(-20.0, 50.0);
    int checked = 0;
    while (checked < 1000) {
        const double x = dist(rng);
        if (std::abs(x - std::round(x)) < 1e-6) continue;
        CAPTURE(x);
        const double lhs = gamma_fn(x + 1.0);
        const double rhs = x * gamma_fn(x);
        CHECK(std::abs(lhs - rhs) <= 1e-11 * std::abs(lhs));
        ++checked;
    }
}

TEST_CASE("gamma poles and overflow") {
    CHECK_THROWS_AS(gamma_fn(0.0), DomainError);
    CHECK_THROWS_AS(gamma_fn(-3.0), DomainError);
    CHECK_THROWS_AS(gamma_fn(200.0), DomainError);
}

TEST_CASE("step function") {
    CHECK(step_theta(-1e-300) == 0.0);
    CHECK(step_theta(0.0) == 0.5);
    CHECK(step_theta(2.0) == 1.0);
}

TEST_CASE("2F1 elementary closed forms") {
    // 2F1(1, 1; 2; x) = -log(1 - x) / x
    for (double x : {-5.0, -0.5, 0.3, 0.95}) {
        CAPTURE(x);
        CHECK(near(hyp2f1(1, 1, 2, x), -std::log1p(-x) / x, 1e-12));
    }
    // 2F1(a, b; b; x) = (1 - x)^(-a)
    CHECK(near(hyp2f1(0.3, 0.7, 0.7, -3.0), std::pow(4.0, -0.3), 1e-12));
    // Gauss summation at x = 1
    const double a = 0.2, b = 0.3, c = 1.4;
    CHECK(near(hyp2f1(a, b, c, 1.0),
               gamma_fn(c) * gamma_fn(c - a - b) / (gamma_fn(c - a) * gamma_fn(c - b)), 1e-13));
}

TEST_CASE("2F1 against reference values") {
    CHECK(near(hyp2f1(0.5, 0.3, 1.5, -3.0), 0.84365307357874876, 1e-12));
    CHECK(near(hyp2f1(0.25, 0.6, 1.3, -9.0), 0.71286013808545077, 1e-12));
    CHECK(near(hyp2f1(0.25, 0.6, 1.3, 0.95), 1.2583673338441834, 1e-12));
    // Retarded side of the cut; the 1e-10 offset shifts the value by O(1e-10).
    CHECK(near(hyp2f1(0.6, 0.4, 2.1, Complex(3.0, 1e-10)),
               Complex(1.0719789559893648, 0.52218483862146154), 1e-9));
    CHECK(near(hyp2f1(0.6, 0.4, 2.1, Complex(3.0, 1e-10)), to_c(oracle::hyp2f1(0.6L, 0.4L, 2.1L, 3)),
               1e-9));
}

TEST_CASE("2F1 rejects points on the cut") {
    CHECK_THROWS_AS(hyp2f1(0.5, 0.3, 1.5, 2.0), DomainError);
}

TEST_CASE("F1 at the origin is exactly one") {
    CHECK(appell_f1(0.275, 0.325, 0.175, 0.825, 0.0, 0.0) == Complex(1.0, 0.0));
    CHECK(appell_f1(0.5, -0.3, 2.0, 1.7, 0.0, 0.0) == Complex(1.0, 0.0));
}

TEST_CASE("F1 reductions to 2F1") {
    const double a = 0.275, b1 = 0.325, b2 = 0.175, c = 0.825;
    for (double x : {-3.0, -0.5, 0.4, 0.95}) {
        CAPTURE(x);
        // y = 0
        CHECK(near(appell_f1(a, b1, b2, c, x, 0.0), hyp2f1(a, b1, c, x), 1e-9));
        // x = y
        CHECK(near(appell_f1(a, b1, b2, c, x, x), hyp2f1(a, b1 + b2, c, x), 1e-9));
    }
    // one exponent zero
    CHECK(near(appell_f1(a, 0.0, b2, c, -3.0, 0.7), hyp2f1(a, b2, c, 0.7), 1e-9));
}

TEST_CASE("F1 is symmetric under (b1, x) <-> (b2, y)") {
    const Complex u = appell_f1(0.3, 0.4, 0.7, 1.6, -3.0, 0.5);
    const Complex v = appell_f1(0.3, 0.7, 0.4, 1.6, 0.5, -3.0);
    CHECK(near(u, v, 1e-11));
}

TEST_CASE("F1 series and integral agree where both apply") {
    const double pts[][2] = {{0.5, -0.25}, {-0.8, 0.6}, {0.85, 0.85}, {-0.3, -0.89}, {0.1, 0.7}};
    for (const auto& p : pts) {
        CAPTURE(p[0]);
        CAPTURE(p[1]);
        const Complex s = appell_f1_series(0.275, 0.325, 0.175, 0.825, p[0], p[1]);
        const Complex i = appell_f1_integral(0.275, 0.325, 0.175, 0.825, p[0], p[1]).value;
        CHECK(near(s, i, 1e-8));
    }
}

TEST_CASE("F1 against reference values") {
    CHECK(near(appell_f1(0.275, 0.325, 0.175, 0.825, -3.0, 0.5), 0.87083953759620476, 1e-11));
    CHECK(near(appell_f1(0.3, 0.4, 0.7, 1.6, 0.5, -0.25), 1.0129599600205344, 1e-11));
    CHECK(near(appell_f1(0.5, 0.25, 0.6, 1.3, -2.0, -7.0), 0.51818715682499611, 1e-11));
    const auto ev = appell_f1_detailed(0.275, 0.325, 0.175, 0.825, -3.0, 2.5);
    CHECK(ev.method == F1Method::integral);
    CHECK(ev.y_offset == 1e-10);
    CHECK(ev.x_offset == 0.0);
    CHECK(near(ev.value, Complex(0.87543740187583324, 0.14461940787928432), 1e-9));
}

TEST_CASE("F1 against the Gauss-Legendre oracle") {
    const double pts[][2] = {{-3.0, -4.0}, {-3.0, 1.5}, {-3.0, 7.0}, {2.0, -1.0}, {-20.0, 30.0}};
    for (const auto& p : pts) {
        CAPTURE(p[0]);
        CAPTURE(p[1]);
        const Complex got = appell_f1(0.275, 0.325, 0.175, 0.825, p[0], p[1]);
        const Complex want = to_c(oracle::appell_f1(0.275L, 0.325L, 0.175L, 0.825L, p[0], p[1]));
        CHECK(near(got, want, 1e-9));
    }
}

TEST_CASE("F1 domain") {
    CHECK_THROWS_AS(appell_f1(0.9, 0.1, 0.1, 0.5, 2.0, 3.0), DomainError);
    CHECK_THROWS_AS(appell_f1_series(0.3, 0.1, 0.1, 0.5, 1.2, 0.0), DomainError);
}

}
