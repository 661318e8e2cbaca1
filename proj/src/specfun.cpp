// specfun.cpp: gamma, 2F1 and Appell F1
#include "scsep/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "scsep/errors.hpp"

namespace scsep {

namespace {

// Godfrey's coefficients for g = 607/128.
constexpr double kLanczosG = 607.0 / 128.0;
constexpr std::array<double, 15> kLanczos = {
    0.99999999999999709182,     57.156235665862923517,      -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,    .33994649984811888699e-4,
    .46523628927048575665e-4,   -.98374475304879564677e-4,  .15808870322491248884e-3,
    -.21026444172410488319e-3,  .21743961811521264320e-3,   -.16431810653676389022e-3,
    .84418223983852743293e-4,   -.26190838401581408670e-4,  .36899182659531622704e-5,
};

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

// sin(pi x) with exact argument reduction.
double sin_pi(double x) {
    double r = x - 2.0 * std::round(0.5 * x);  // r in [-1, 1]
    if (r > 0.5)
        r = 1.0 - r;
    else if (r < -0.5)
        r = -1.0 - r;
    return std::sin(std::numbers::pi * r);
}

double lanczos_gamma(double x) {
    // valid for x >= 0.5
    const double z = x - 1.0;
    double sum = kLanczos[0];
    for (std::size_t i = 1; i < kLanczos.size(); ++i) sum += kLanczos[i] / (z + static_cast<double>(i));
    const double t = z + kLanczosG + 0.5;
    // Split the power so t^(z+1/2) cannot overflow before exp(-t) scales it down.
    const double half_power = std::pow(t, 0.5 * (z + 0.5));
    return std::sqrt(2.0 * std::numbers::pi) * half_power * (half_power * std::exp(-t)) * sum;
}

// 1/Gamma(x), zero at the poles.
double recip_gamma(double x) { return is_nonpositive_integer(x) ? 0.0 : 1.0 / gamma_fn(x); }

bool on_cut(Complex z) { return z.imag() == 0.0 && z.real() >= 1.0; }

// (1 - z t)^(-b) inside an Euler integrand.
struct BranchFactor {
    Complex z;       // argument after any +i eps shift
    double b = 0.0;
    double t0 = -1.0;  // 1/Re z when Re z > 1, else unused
};

// Gamma(c)/(Gamma(b)Gamma(c-b)) int_0^1 t^(b-1)(1-t)^(c-b-1) prod_k (1 - z_k t)^(-b_k) dt
// split into panels at every 1/Re(z_k) in (0, 1).
QuadratureResult euler_integral(double b, double c, const std::vector<BranchFactor>& factors,
                                const QuadratureSpec& spec) {
    std::vector<double> cuts = {0.0, 1.0};
    for (const auto& f : factors)
        if (f.t0 > 0.0 && f.t0 < 1.0) cuts.push_back(f.t0);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    const double p = b - 1.0;
    const double q = c - b - 1.0;

    QuadratureResult total;
    total.value = 0.0;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        const double lo = cuts[k];
        const double hi = cuts[k + 1];
        const double len = hi - lo;
        const auto integrand = [&](double u, double omu) -> Complex {
            const double t = lo == 0.0 ? len * u : lo + len * u;
            const double one_minus_t = hi == 1.0 ? len * omu : 1.0 - t;
            double real_part = std::pow(t, p) * std::pow(one_minus_t, q);
            Complex value = 1.0;
            for (const auto& f : factors) {
                double re;
                if (f.t0 > 0.0) {
                    // 1 - Re(z) t = Re(z) (t0 - t), with t0 - t exact on adjacent panels.
                    double gap;
                    if (f.t0 == hi)
                        gap = len * omu;
                    else if (f.t0 == lo)
                        gap = -len * u;
                    else
                        gap = f.t0 - t;
                    re = f.z.real() * gap;
                } else {
                    re = 1.0 - f.z.real() * t;
                }
                const double im = -f.z.imag() * t;
                if (im == 0.0 && re > 0.0)
                    real_part *= std::pow(re, -f.b);
                else
                    value *= std::exp(-f.b * std::log(Complex(re, im)));
            }
            return real_part * value;
        };
        const QuadratureResult piece = tanh_sinh(integrand, spec);
        total.value += len * piece.value;
        total.error += len * piece.error;
        total.evaluations += piece.evaluations;
        total.levels = std::max(total.levels, piece.levels);
    }
    const double norm = gamma_fn(c) / (gamma_fn(b) * gamma_fn(c - b));
    total.value *= norm;
    total.error *= std::abs(norm);
    return total;
}

BranchFactor make_factor(Complex z, double b) {
    BranchFactor f{z, b, -1.0};
    if (z.real() > 1.0) f.t0 = 1.0 / z.real();
    return f;
}

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw DomainError(std::string(what) + " must be finite");
}

}  // namespace

double gamma_fn(double x) {
    if (!std::isfinite(x)) throw DomainError("gamma_fn: argument must be finite");
    if (is_nonpositive_integer(x)) {
        std::ostringstream os;
        os << "gamma_fn: pole at x = " << x;
        throw DomainError(os.str());
    }
    double result;
    if (x < 0.5) {
        result = std::numbers::pi / (sin_pi(x) * lanczos_gamma(1.0 - x));
    } else {
        result = lanczos_gamma(x);
    }
    if (!std::isfinite(result)) {
        std::ostringstream os;
        os << "gamma_fn: result overflows at x = " << x;
        throw DomainError(os.str());
    }
    return result;
}

double step_theta(double x) {
    if (x > 0.0) return 1.0;
    if (x < 0.0) return 0.0;
    return 0.5;
}

Complex hyp2f1_series(double a, double b, double c, Complex x) {
    if (is_nonpositive_integer(c)) throw DomainError("hyp2f1: c is a non-positive integer");
    if (!(std::abs(x) < 1.0)) throw DomainError("hyp2f1_series: requires |x| < 1");
    Complex term = 1.0;
    Complex sum = 1.0;
    int small = 0;
    for (int n = 0; n < kMaxSeriesTerms; ++n) {
        const double dn = n;
        term *= (a + dn) * (b + dn) / ((c + dn) * (dn + 1.0)) * x;
        sum += term;
        if (term == 0.0) return sum;
        if (std::abs(term) <= 1e-17 * std::abs(sum)) {
            if (++small == 2) return sum;
        } else {
            small = 0;
        }
    }
    std::ostringstream os;
    os << "hyp2f1_series: not converged after " << kMaxSeriesTerms << " terms";
    throw ConvergenceError(os.str(), std::abs(term) / std::abs(sum));
}

Complex hyp2f1(double a, double b, double c, Complex x, const QuadratureSpec& spec) {
    require_finite(a, "hyp2f1: a");
    require_finite(b, "hyp2f1: b");
    require_finite(c, "hyp2f1: c");
    if (is_nonpositive_integer(c)) throw DomainError("hyp2f1: c is a non-positive integer");
    if (x == 0.0) return 1.0;
    if (std::abs(x) < kSeriesRadius) return hyp2f1_series(a, b, c, x);
    if (x == 1.0) {
        if (!(c - a - b > 0.0))
            throw DomainError("hyp2f1: diverges at x = 1 unless c - a - b > 0");
        return gamma_fn(c) * gamma_fn(c - a - b) * recip_gamma(c - a) * recip_gamma(c - b);
    }
    if (on_cut(x))
        throw DomainError("hyp2f1: x lies on the branch cut (1, inf); supply x + i eps");

    // Euler integral: 2F1(A, B; c; z) with c > B > 0, possibly after Pfaff
    // z = x/(x-1), 2F1(a,b;c;x) = (1-x)^(-a) 2F1(a, c-b; c; z).
    struct Candidate {
        double power;   // A, exponent of (1 - z t)
        double weight;  // B, exponent of t
        bool pfaff;
        double pfaff_power;
    };
    const Candidate candidates[] = {
        {a, b, false, 0.0}, {b, a, false, 0.0}, {a, c - b, true, a},
        {c - b, a, true, a}, {b, c - a, true, b}, {c - a, b, true, b},
    };
    // Pfaff pairs {a, c-b} carry (1-x)^(-a); pairs {b, c-a} carry (1-x)^(-b).
    for (const auto& cand : candidates) {
        if (!(c > cand.weight && cand.weight > 0.0)) continue;
        if (!cand.pfaff) {
            return euler_integral(cand.weight, c, {make_factor(x, cand.power)}, spec).value;
        }
        const Complex z = x / (x - 1.0);
        const Complex pre = std::pow(1.0 - x, -cand.pfaff_power);
        return pre * euler_integral(cand.weight, c, {make_factor(z, cand.power)}, spec).value;
    }
    std::ostringstream os;
    os << "hyp2f1: no Euler-integral parametrization with c > b > 0 for (a, b, c) = (" << a
       << ", " << b << ", " << c << ") at |x| >= " << kSeriesRadius;
    throw DomainError(os.str());
}

namespace {

void check_f1_parameters(double a, double b1, double b2, double c, Complex x, Complex y) {
    require_finite(a, "appell_f1: a");
    require_finite(b1, "appell_f1: b1");
    require_finite(b2, "appell_f1: b2");
    require_finite(c, "appell_f1: c");
    if (!(c > a && a > 0.0)) {
        std::ostringstream os;
        os << "appell_f1: requires c > a > 0 (got a = " << a << ", c = " << c << ")";
        throw DomainError(os.str());
    }
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag()) || !std::isfinite(y.real()) ||
        !std::isfinite(y.imag()))
        throw DomainError("appell_f1: arguments must be finite");
}

}  // namespace

Complex appell_f1_series(double a, double b1, double b2, double c, Complex x, Complex y) {
    if (!(std::abs(x) < 1.0 && std::abs(y) < 1.0))
        throw DomainError("appell_f1_series: requires |x| < 1 and |y| < 1");
    // F1 = sum_m (a)_m (b1)_m / ((c)_m m!) x^m 2F1(a+m, b2; c+m; y)
    Complex coef = 1.0;
    Complex sum = 0.0;
    Complex contribution = 0.0;
    int small = 0;
    for (int m = 0; m < kMaxSeriesTerms; ++m) {
        const double dm = m;
        if (m > 0) coef *= (a + dm - 1.0) * (b1 + dm - 1.0) / ((c + dm - 1.0) * dm) * x;
        if (coef == 0.0) return sum;
        contribution = coef * hyp2f1_series(a + dm, b2, c + dm, y);
        sum += contribution;
        if (std::abs(contribution) <= 1e-17 * std::abs(sum)) {
            if (++small == 2) return sum;
        } else {
            small = 0;
        }
    }
    std::ostringstream os;
    os << "appell_f1_series: not converged after " << kMaxSeriesTerms << " outer terms";
    throw ConvergenceError(os.str(), std::abs(contribution) / std::abs(sum));
}

F1Evaluation appell_f1_integral(double a, double b1, double b2, double c, Complex x, Complex y,
                                const QuadratureSpec& spec) {
    check_f1_parameters(a, b1, b2, c, x, y);
    validate(spec);
    F1Evaluation ev;
    ev.method = F1Method::integral;
    Complex xs = x;
    Complex ys = y;
    if (on_cut(x)) {
        ev.x_offset = spec.epsilon_branch;
        xs += Complex(0.0, spec.epsilon_branch);
    }
    if (on_cut(y)) {
        ev.y_offset = spec.epsilon_branch;
        ys += Complex(0.0, spec.epsilon_branch);
    }
    // The split point stays at 1/Re(z); the shift only moves z off the axis.
    BranchFactor fx = make_factor(xs, b1);
    BranchFactor fy = make_factor(ys, b2);
    const QuadratureResult q = euler_integral(a, c, {fx, fy}, spec);
    ev.value = q.value;
    ev.error_estimate = q.error;
    ev.evaluations = q.evaluations;
    return ev;
}

F1Evaluation appell_f1_detailed(double a, double b1, double b2, double c, Complex x, Complex y,
                                const QuadratureSpec& spec) {
    check_f1_parameters(a, b1, b2, c, x, y);
    validate(spec);
    if (x == 0.0 && y == 0.0) {
        F1Evaluation ev;
        ev.value = 1.0;
        return ev;
    }
    if (std::abs(x) < kSeriesRadius && std::abs(y) < kSeriesRadius) {
        F1Evaluation ev;
        ev.method = F1Method::series;
        ev.value = appell_f1_series(a, b1, b2, c, x, y);
        return ev;
    }
    return appell_f1_integral(a, b1, b2, c, x, y, spec);
}

Complex appell_f1(double a, double b1, double b2, double c, Complex x, Complex y,
                  const QuadratureSpec& spec) {
    return appell_f1_detailed(a, b1, b2, c, x, y, spec).value;
}

}  // namespace scsep
