// quadrature.hpp: tanh-sinh (double exponential) quadrature on (0, 1)
#pragma once

#include <complex>
#include <functional>

namespace scsep {

struct QuadratureSpec {
    double abs_tol = 1e-14;
    double rel_tol = 1e-12;
    int max_levels = 10;           // halvings of the step, 1..kMaxTanhSinhLevels
    double epsilon_branch = 1e-10; // +i epsilon offset for arguments on a branch cut
};

inline constexpr int kMaxTanhSinhLevels = 12;

/// Throws DomainError unless abs_tol, rel_tol >= 1e-14, epsilon_branch in
/// [1e-12, 1e-3] and max_levels in [1, kMaxTanhSinhLevels].
void validate(const QuadratureSpec& spec);

struct QuadratureResult {
    std::complex<double> value;
    double error = 0.0;   // |I_k - I_{k-1}| at the accepted level
    int levels = 0;
    int evaluations = 0;
};

/// Integrand on the unit interval. Receives the node u and its complement
/// 1 - u, each to full relative precision, so that endpoint-singular factors
/// such as u^(a-1) (1-u)^(b-1) stay accurate close to both ends.
using UnitIntegrand = std::function<std::complex<double>(double u, double one_minus_u)>;

/// Integrates over (0, 1). Throws ConvergenceError (carrying the last error
/// estimate) when the tolerance is not met within spec.max_levels, or when the
/// integrand returns a non-finite value.
QuadratureResult tanh_sinh(const UnitIntegrand& f, const QuadratureSpec& spec);

}  // namespace scsep
