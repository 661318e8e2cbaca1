// dynamics.cpp: split-step Fourier propagation and front tracking
#include "scsep/dynamics.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <sstream>

#include "scsep/errors.hpp"

namespace scsep {

namespace {

using cplx = std::complex<double>;

// The FFTW planner is not reentrant.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

fftw_complex* as_fftw(std::vector<cplx>& v) { return reinterpret_cast<fftw_complex*>(v.data()); }

double max_density(const FieldState& s) {
    double m = 0.0;
    for (const auto& v : s.psi_up) m = std::max(m, std::norm(v));
    for (const auto& v : s.psi_down) m = std::max(m, std::norm(v));
    return m;
}

}  // namespace

double norm(const std::vector<cplx>& psi, double dz) {
    double sum = 0.0;
    for (const auto& v : psi) sum += std::norm(v);
    return sum * dz;
}

FieldState init_state(double rho0_up, double rho0_down, const Perturbation& p, int grid_points,
                      double box_length) {
    if (!is_power_of_two(grid_points) || grid_points < 8) {
        std::ostringstream os;
        os << "init_state: grid_points must be a power of two >= 8 (got " << grid_points << ")";
        throw DomainError(os.str());
    }
    if (!(box_length > 0.0) || !std::isfinite(box_length))
        throw DomainError("init_state: box_length must be finite and > 0");
    if (!(rho0_up > 0.0) || !(rho0_down > 0.0))
        throw DomainError("init_state: background densities must be > 0");
    if (p.kind != PerturbationKind::none) {
        if (!(p.width > 0.0) || p.width > 0.25 * box_length) {
            std::ostringstream os;
            os << "init_state: bump width " << p.width << " must lie in (0, box_length/4 = "
               << 0.25 * box_length << "]";
            throw DomainError(os.str());
        }
        if (!(p.center >= 0.0 && p.center < box_length)) {
            std::ostringstream os;
            os << "init_state: bump center " << p.center << " outside [0, " << box_length << ")";
            throw DomainError(os.str());
        }
        const double floor_up = rho0_up - std::abs(p.amplitude);
        const double floor_down = rho0_down - std::abs(p.amplitude);
        if (!(floor_up > 0.0 && floor_down > 0.0) || !std::isfinite(p.amplitude))
            throw DomainError("init_state: bump amplitude would make a density non-positive");
    }

    FieldState s;
    s.grid_points = grid_points;
    s.box_length = box_length;
    s.psi_up.resize(grid_points);
    s.psi_down.resize(grid_points);
    const double down_sign = p.kind == PerturbationKind::spin ? -1.0 : 1.0;
    for (int i = 0; i < grid_points; ++i) {
        double bump = 0.0;
        if (p.kind != PerturbationKind::none) {
            double d = std::abs(s.z(i) - p.center);
            d = std::min(d, box_length - d);
            bump = p.amplitude * std::exp(-(d * d) / (p.width * p.width));
        }
        s.psi_up[i] = std::sqrt(rho0_up + bump);
        s.psi_down[i] = std::sqrt(rho0_down + down_sign * bump);
    }
    return s;
}

std::optional<std::string> linear_response_warning(double rho0_up, double rho0_down,
                                                   const Perturbation& p) {
    if (p.kind == PerturbationKind::none) return std::nullopt;
    const double limit = 0.1 * std::min(rho0_up, rho0_down);
    if (std::abs(p.amplitude) <= limit) return std::nullopt;
    std::ostringstream os;
    os << "perturbation amplitude " << p.amplitude << " exceeds 10% of the background density ("
       << limit << "); fronts leave the linear-response regime";
    return os.str();
}

void validate(const EvolutionSpec& spec, const FieldState& state) {
    std::ostringstream os;
    const auto& e = spec.eff;
    if (!(spec.dt > 0.0) || !std::isfinite(spec.dt))
        os << "evolution.dt must be finite and > 0";
    else if (spec.steps < 1)
        os << "evolution.steps must be >= 1";
    else if (spec.record_every < 1)
        os << "evolution.record_every must be >= 1";
    else if (!std::isfinite(e.mass_up) || !std::isfinite(e.mass_down) || e.mass_up == 0.0 ||
             e.mass_down == 0.0)
        os << "evolution: effective masses must be finite and nonzero";
    else if (static_cast<int>(state.psi_up.size()) != state.grid_points ||
             static_cast<int>(state.psi_down.size()) != state.grid_points)
        os << "evolution: field lengths do not match grid_points";
    if (!os.str().empty()) throw DomainError(os.str());

    const double k_nyquist = std::numbers::pi / state.dz();
    const double kinetic = spec.dt * k_nyquist * k_nyquist /
                           (2.0 * std::min(std::abs(e.mass_up), std::abs(e.mass_down)));
    if (kinetic > kMaxKineticPhase) {
        std::ostringstream msg;
        msg << "evolution: kinetic phase per step at the Nyquist mode " << kinetic
            << " exceeds pi (split-step resonance); reduce dt below "
            << spec.dt * kMaxKineticPhase / kinetic << " or coarsen the grid";
        throw StabilityError(msg.str());
    }

    const double coupling = std::max(std::abs(e.chi_up) + std::abs(e.cross_up),
                                     std::abs(e.chi_down) + std::abs(e.cross_down));
    const double phase = spec.dt * coupling * max_density(state);
    if (phase > kMaxNonlinearPhase) {
        std::ostringstream msg;
        msg << "evolution: nonlinear phase per step " << phase << " exceeds " << kMaxNonlinearPhase
            << "; reduce dt below " << spec.dt * kMaxNonlinearPhase / phase;
        throw StabilityError(msg.str());
    }
}

struct SplitStepPropagator::Impl {
    int n = 0;
    double dt = 0.0;
    EffectiveLiebLiniger eff;
    // exp(-i k^2 dt / (4 m_s)) / n, forward and backward half steps
    std::vector<cplx> half_kick_up, half_kick_down;
    std::vector<cplx> half_kick_up_back, half_kick_down_back;
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;
    mutable std::vector<cplx> scratch;

    void kinetic(std::vector<cplx>& psi, const std::vector<cplx>& kick) const {
        fftw_execute_dft(forward, as_fftw(psi), as_fftw(psi));
        for (int k = 0; k < n; ++k) psi[k] *= kick[k];
        fftw_execute_dft(backward, as_fftw(psi), as_fftw(psi));
    }

    void nonlinear(FieldState& s, double tau) const {
        for (int i = 0; i < n; ++i) {
            const double rho_up = std::norm(s.psi_up[i]);
            const double rho_down = std::norm(s.psi_down[i]);
            const double phase_up = tau * (eff.chi_up * rho_up + eff.cross_up * rho_down);
            const double phase_down = tau * (eff.chi_down * rho_down + eff.cross_down * rho_up);
            s.psi_up[i] *= cplx(std::cos(phase_up), -std::sin(phase_up));
            s.psi_down[i] *= cplx(std::cos(phase_down), -std::sin(phase_down));
        }
    }
};

SplitStepPropagator::SplitStepPropagator(int grid_points, double box_length,
                                         const EvolutionSpec& spec)
    : impl_(std::make_unique<Impl>()) {
    if (!is_power_of_two(grid_points))
        throw DomainError("SplitStepPropagator: grid_points must be a power of two");
    auto& d = *impl_;
    d.n = grid_points;
    d.dt = spec.dt;
    d.eff = spec.eff;
    d.scratch.resize(grid_points);

    const double inv_n = 1.0 / grid_points;
    const double dk = 2.0 * std::numbers::pi / box_length;
    const auto make_kick = [&](double mass, double tau) {
        std::vector<cplx> kick(grid_points);
        for (int k = 0; k < grid_points; ++k) {
            const int mode = k <= grid_points / 2 ? k : k - grid_points;
            const double kk = mode * dk;
            const double phase = kk * kk / (2.0 * mass) * tau;
            kick[k] = cplx(std::cos(phase), -std::sin(phase)) * inv_n;
        }
        return kick;
    };
    d.half_kick_up = make_kick(spec.eff.mass_up, 0.5 * spec.dt);
    d.half_kick_down = make_kick(spec.eff.mass_down, 0.5 * spec.dt);
    d.half_kick_up_back = make_kick(spec.eff.mass_up, -0.5 * spec.dt);
    d.half_kick_down_back = make_kick(spec.eff.mass_down, -0.5 * spec.dt);

    std::lock_guard lock(planner_mutex());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    d.forward = fftw_plan_dft_1d(grid_points, as_fftw(d.scratch), as_fftw(d.scratch), FFTW_FORWARD,
                                 flags);
    d.backward = fftw_plan_dft_1d(grid_points, as_fftw(d.scratch), as_fftw(d.scratch),
                                  FFTW_BACKWARD, flags);
    if (!d.forward || !d.backward) throw std::runtime_error("FFTW planning failed");
}

SplitStepPropagator::~SplitStepPropagator() {
    std::lock_guard lock(planner_mutex());
    if (impl_->forward) fftw_destroy_plan(impl_->forward);
    if (impl_->backward) fftw_destroy_plan(impl_->backward);
}

void SplitStepPropagator::advance(FieldState& s) const {
    const auto& d = *impl_;
    d.kinetic(s.psi_up, d.half_kick_up);
    d.kinetic(s.psi_down, d.half_kick_down);
    d.nonlinear(s, d.dt);
    d.kinetic(s.psi_up, d.half_kick_up);
    d.kinetic(s.psi_down, d.half_kick_down);
    s.time += d.dt;
}

void SplitStepPropagator::retreat(FieldState& s) const {
    const auto& d = *impl_;
    d.kinetic(s.psi_up, d.half_kick_up_back);
    d.kinetic(s.psi_down, d.half_kick_down_back);
    d.nonlinear(s, -d.dt);
    d.kinetic(s.psi_up, d.half_kick_up_back);
    d.kinetic(s.psi_down, d.half_kick_down_back);
    s.time -= d.dt;
}

FieldState step(const FieldState& state, const EvolutionSpec& spec) {
    validate(spec, state);
    FieldState next = state;
    SplitStepPropagator(state.grid_points, state.box_length, spec).advance(next);
    return next;
}

FieldState step_back(const FieldState& state, const EvolutionSpec& spec) {
    validate(spec, state);
    FieldState prev = state;
    SplitStepPropagator(state.grid_points, state.box_length, spec).retreat(prev);
    return prev;
}

namespace {

void record(const FieldState& s, DensityTrace& trace) {
    const int n = s.grid_points;
    std::vector<double> charge(n), spin(n);
    for (int i = 0; i < n; ++i) {
        const double up = std::norm(s.psi_up[i]);
        const double down = std::norm(s.psi_down[i]);
        charge[i] = up + down;
        spin[i] = up - down;
    }
    trace.times.push_back(s.time);
    trace.rho_charge.push_back(std::move(charge));
    trace.rho_spin.push_back(std::move(spin));
    trace.norm_up.push_back(norm(s.psi_up, s.dz()));
    trace.norm_down.push_back(norm(s.psi_down, s.dz()));
}

}  // namespace

DensityTrace evolve_in_place(FieldState& state, const EvolutionSpec& spec) {
    validate(spec, state);
    const SplitStepPropagator prop(state.grid_points, state.box_length, spec);
    const double coupling = std::max(std::abs(spec.eff.chi_up) + std::abs(spec.eff.cross_up),
                                     std::abs(spec.eff.chi_down) + std::abs(spec.eff.cross_down));

    DensityTrace trace;
    trace.dz = state.dz();
    trace.box_length = state.box_length;
    record(state, trace);
    for (int n = 1; n <= spec.steps; ++n) {
        prop.advance(state);
        if (n % spec.record_every == 0) {
            record(state, trace);
            // Density peaks can grow during a run; re-check the phase bound per frame.
            const double phase = spec.dt * coupling * max_density(state);
            if (phase > kMaxNonlinearPhase) {
                std::ostringstream os;
                os << "evolution: nonlinear phase per step reached " << phase << " at t = "
                   << state.time;
                throw StabilityError(os.str());
            }
        }
    }
    return trace;
}

DensityTrace evolve(FieldState state, const EvolutionSpec& spec) {
    return evolve_in_place(state, spec);
}

double front_position(const std::vector<double>& rho, double dz) {
    const std::size_t n = rho.size();
    if (n < 2) throw AnalysisError("front_position: profile too short");
    double mean = 0.0;
    for (double v : rho) mean += v;
    mean /= static_cast<double>(n);
    std::vector<double> dev(n);
    double peak = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        dev[i] = std::abs(rho[i] - mean);
        peak = std::max(peak, dev[i]);
    }
    if (!(peak > 1e-12 * std::max(1.0, std::abs(mean))) || !std::isfinite(peak))
        throw AnalysisError("front_position: no density disturbance above background");
    const double half = 0.5 * peak;
    std::size_t last = n;
    for (std::size_t i = n; i-- > 0;) {
        if (dev[i] >= half) {
            last = i;
            break;
        }
    }
    if (last + 1 >= n) return static_cast<double>(last) * dz;
    // Linear interpolation of the half-maximum crossing between last and last+1.
    const double frac = (dev[last] - half) / (dev[last] - dev[last + 1]);
    return (static_cast<double>(last) + frac) * dz;
}

double front_velocity(const DensityTrace& trace, Channel channel) {
    const auto& frames = channel == Channel::charge ? trace.rho_charge : trace.rho_spin;
    const std::size_t total = frames.size();
    const std::size_t skip = (total * 2 + 9) / 10;  // ceil(0.2 * total)
    if (total < skip + 10) {
        std::ostringstream os;
        os << "front_velocity: " << total - std::min(total, skip)
           << " frames after the 20% transient window; need at least 10";
        throw DomainError(os.str());
    }
    std::vector<double> t;
    std::vector<double> x;
    for (std::size_t f = skip; f < total; ++f) {
        t.push_back(trace.times[f]);
        x.push_back(front_position(frames[f], trace.dz));
    }
    const double nf = static_cast<double>(t.size());
    double tm = 0.0, xm = 0.0;
    for (std::size_t k = 0; k < t.size(); ++k) {
        tm += t[k];
        xm += x[k];
    }
    tm /= nf;
    xm /= nf;
    double stt = 0.0, stx = 0.0;
    for (std::size_t k = 0; k < t.size(); ++k) {
        stt += (t[k] - tm) * (t[k] - tm);
        stx += (t[k] - tm) * (x[k] - xm);
    }
    if (stt == 0.0) throw AnalysisError("front_velocity: all frames share one time");
    return stx / stt;
}

SoundVelocities bogoliubov_velocities(const EffectiveLiebLiniger& e) {
    const double a11 = e.density_up * e.chi_up / e.mass_up;
    const double a12 = e.density_up * e.cross_up / e.mass_up;
    const double a21 = e.density_down * e.cross_down / e.mass_down;
    const double a22 = e.density_down * e.chi_down / e.mass_down;
    const double tr = a11 + a22;
    const double det = a11 * a22 - a12 * a21;
    const double disc = std::sqrt(std::max(0.0, 0.25 * tr * tr - det));
    const double hi = 0.5 * tr + disc;
    const double lo = 0.5 * tr - disc;
    if (!(lo > 0.0)) {
        std::ostringstream os;
        os << "bogoliubov_velocities: unstable mode (c^2 = " << lo << ")";
        throw DomainError(os.str());
    }
    // Same-sign cross couplings push the in-phase (charge) mode up.
    const bool charge_high = a12 * a21 >= 0.0 && (e.cross_up + e.cross_down) >= 0.0;
    SoundVelocities v;
    v.charge = std::sqrt(charge_high ? hi : lo);
    v.spin = std::sqrt(charge_high ? lo : hi);
    return v;
}

}  // namespace scsep
