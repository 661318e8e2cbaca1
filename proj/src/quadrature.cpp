// quadrature.cpp: tanh-sinh nodes and level-by-level refinement
//
// Substitution u(s) = (1 + tanh(pi/2 sinh s)) / 2 maps the real line onto
// (0, 1) with du/ds = pi cosh(s) u (1 - u), which decays double
// exponentially and absorbs algebraic endpoint singularities.
#include "scsep/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

#include "scsep/errors.hpp"

namespace scsep {

namespace {

// exp(-pi sinh 6) ~ 1e-275 keeps every node strictly inside (0, 1).
constexpr double kSMax = 6.0;

struct Node {
    double u;
    double one_minus_u;
    double weight;  // du/ds
};

Node make_node(double s) {
    const double e = std::exp(-std::numbers::pi * std::abs(std::sinh(s)));
    const double small = e / (1.0 + e);
    const double large = 1.0 / (1.0 + e);
    Node n;
    n.u = s < 0.0 ? small : large;
    n.one_minus_u = s < 0.0 ? large : small;
    n.weight = std::numbers::pi * std::cosh(s) * small * large;
    return n;
}

// Level 0 holds s = j for |j| <= kSMax; level k >= 1 adds the odd multiples
// of 2^-k. Built once on first use and read-only afterwards.
const std::array<std::vector<Node>, kMaxTanhSinhLevels + 1>& node_table() {
    static const auto table = [] {
        std::array<std::vector<Node>, kMaxTanhSinhLevels + 1> t;
        for (int j = -static_cast<int>(kSMax); j <= static_cast<int>(kSMax); ++j)
            t[0].push_back(make_node(j));
        for (int k = 1; k <= kMaxTanhSinhLevels; ++k) {
            const double h = std::ldexp(1.0, -k);
            const int jmax = static_cast<int>(kSMax / h);
            for (int j = -jmax + 1; j <= jmax; j += 2) t[k].push_back(make_node(j * h));
        }
        return t;
    }();
    return table;
}

}  // namespace

void validate(const QuadratureSpec& spec) {
    std::ostringstream os;
    if (!(spec.abs_tol >= 1e-14) || !std::isfinite(spec.abs_tol))
        os << "quadrature abs_tol must be >= 1e-14 (got " << spec.abs_tol << ")";
    else if (!(spec.rel_tol >= 1e-14) || !std::isfinite(spec.rel_tol))
        os << "quadrature rel_tol must be >= 1e-14 (got " << spec.rel_tol << ")";
    else if (spec.max_levels < 1 || spec.max_levels > kMaxTanhSinhLevels)
        os << "quadrature max_levels must lie in [1, " << kMaxTanhSinhLevels << "] (got "
           << spec.max_levels << ")";
    else if (!(spec.epsilon_branch >= 1e-12 && spec.epsilon_branch <= 1e-3))
        os << "quadrature epsilon_branch must lie in [1e-12, 1e-3] (got " << spec.epsilon_branch
           << ")";
    else
        return;
    throw DomainError(os.str());
}

QuadratureResult tanh_sinh(const UnitIntegrand& f, const QuadratureSpec& spec) {
    validate(spec);
    const auto& table = node_table();

    QuadratureResult res;
    std::complex<double> weighted_sum = 0.0;
    std::complex<double> previous = 0.0;
    double error = std::numeric_limits<double>::infinity();

    for (int level = 0; level <= spec.max_levels; ++level) {
        for (const Node& n : table[level]) {
            const std::complex<double> v = f(n.u, n.one_minus_u);
            ++res.evaluations;
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
                std::ostringstream os;
                os << "tanh_sinh: non-finite integrand at u = " << n.u;
                throw ConvergenceError(os.str(), error);
            }
            weighted_sum += n.weight * v;
        }
        const std::complex<double> current = std::ldexp(1.0, -level) * weighted_sum;
        if (level > 0) error = std::abs(current - previous);
        previous = current;
        res.levels = level;
        // The successive-difference estimate is only trusted once the step is
        // fine enough that coarse-level coincidences cannot fake agreement.
        if (level >= 3 && error <= std::max(spec.abs_tol, spec.rel_tol * std::abs(current))) {
            res.value = current;
            res.error = error;
            return res;
        }
    }
    std::ostringstream os;
    os << "tanh_sinh: no convergence after " << spec.max_levels
       << " levels, last error estimate " << error;
    throw ConvergenceError(os.str(), error);
}

}  // namespace scsep
