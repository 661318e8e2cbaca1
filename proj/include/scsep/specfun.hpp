// specfun.hpp: gamma, Gauss 2F1 and Appell F1 for real parameters and
// complex arguments
#pragma once

#include <complex>

#include "scsep/quadrature.hpp"

namespace scsep {

using Complex = std::complex<double>;

/// Euler gamma via a Lanczos approximation (g = 607/128, 15 terms), with the
/// reflection formula below 1/2. Throws DomainError at the poles
/// x = 0, -1, -2, ... and when the result overflows.
double gamma_fn(double x);

/// Heaviside step with Theta(0) = 1/2.
double step_theta(double x);

/// Radius inside which both hypergeometric functions are summed as series.
inline constexpr double kSeriesRadius = 0.9;
/// Per-index cap on series terms.
inline constexpr int kMaxSeriesTerms = 10000;

/// Gauss hypergeometric 2F1(a, b; c; x). Series for |x| < 0.9; otherwise the
/// Euler integral, using a Pfaff transformation when needed to reach a
/// parameter pair with c > b > 0. x = 1 is handled by Gauss's summation
/// theorem. Points on the cut (1, inf) are rejected: pass x + i eps instead.
Complex hyp2f1(double a, double b, double c, Complex x, const QuadratureSpec& spec = {});

/// Gauss series only; requires |x| < 1.
Complex hyp2f1_series(double a, double b, double c, Complex x);

enum class F1Method { trivial, series, integral };

struct F1Evaluation {
    Complex value;
    F1Method method = F1Method::trivial;
    double x_offset = 0.0;   // imaginary shift actually applied to x
    double y_offset = 0.0;   // imaginary shift actually applied to y
    double error_estimate = 0.0;
    int evaluations = 0;
};

/// Appell F1(a; b1, b2; c; x, y) for c > a > 0.
///
/// Inside the bi-disk |x|, |y| < 0.9 the double series is summed. Elsewhere
/// the Euler integral
///   Gamma(c)/(Gamma(a)Gamma(c-a)) int_0^1 t^(a-1) (1-t)^(c-a-1)
///                                  (1-xt)^(-b1) (1-yt)^(-b2) dt
/// is evaluated by tanh-sinh quadrature, split at t = 1/Re(z) whenever
/// Re(z) > 1 so that the branch point sits on a panel endpoint. An argument
/// on the real cut [1, inf) is evaluated at z + i spec.epsilon_branch
/// (retarded side); the shift is reported in the result.
F1Evaluation appell_f1_detailed(double a, double b1, double b2, double c, Complex x, Complex y,
                                const QuadratureSpec& spec = {});

Complex appell_f1(double a, double b1, double b2, double c, Complex x, Complex y,
                  const QuadratureSpec& spec = {});

/// Double-series path alone; requires |x|, |y| < 1.
Complex appell_f1_series(double a, double b1, double b2, double c, Complex x, Complex y);

/// Euler-integral path alone, with the same cut handling as appell_f1.
F1Evaluation appell_f1_integral(double a, double b1, double b2, double c, Complex x, Complex y,
                                const QuadratureSpec& spec = {});

}  // namespace scsep
