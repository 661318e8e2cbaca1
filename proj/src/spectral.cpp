// spectral.cpp: D(omega, q), lattice evaluation, peaks and velocity fits
#include "scsep/spectral.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

#include "scsep/errors.hpp"

namespace scsep {

namespace {

double axis_value(double lo, double hi, int steps, int i) {
    if (steps == 1) return lo;
    const double h = (hi - lo) / (steps - 1);
    return lo + i * h;
}

// Minimum number of omega samples required on each side of u_charge q.
constexpr std::size_t kMinSamplesPerSide = 50;

bool near_line(double omega, double line) {
    return std::abs(omega - line) <= 1e-9 * std::max(1.0, line);
}

}  // namespace

double SpectrumRequest::omega_at(int i) const {
    return axis_value(omega_min, omega_max, omega_steps, i);
}
double SpectrumRequest::q_at(int j) const { return axis_value(q_min, q_max, q_steps, j); }
double SpectrumRequest::omega_spacing() const {
    return omega_steps > 1 ? (omega_max - omega_min) / (omega_steps - 1) : 0.0;
}
double SpectrumRequest::q_spacing() const {
    return q_steps > 1 ? (q_max - q_min) / (q_steps - 1) : 0.0;
}

void validate(const SpectrumRequest& req) {
    std::ostringstream os;
    const auto& lp = req.lutt;
    const double k_sum = lp.k_charge + lp.k_spin;
    if (!(lp.u_charge > 0.0) || !(lp.u_spin > 0.0) || !std::isfinite(lp.u_charge) ||
        !std::isfinite(lp.u_spin))
        os << "spectrum: u_charge and u_spin must be finite and > 0";
    else if (!(lp.k_charge > 0.0) || !(lp.k_spin > 0.0) || !std::isfinite(k_sum))
        os << "spectrum: k_charge and k_spin must be finite and > 0";
    else if (1.0 - 0.5 * k_sum <= 0.0 && std::floor(1.0 - 0.5 * k_sum) == 1.0 - 0.5 * k_sum)
        os << "spectrum: Gamma(1 - (k_charge + k_spin)/2) has a pole at k_charge + k_spin = "
           << k_sum;
    else if (!(req.rho0 > 0.0) || !std::isfinite(req.rho0))
        os << "spectrum.rho0 must be finite and > 0";
    else if (!(req.alpha > 0.0) || !std::isfinite(req.alpha))
        os << "spectrum.alpha must be finite and > 0";
    else if (req.omega_steps < 1 || req.q_steps < 1)
        os << "spectrum: omega_steps and q_steps must be >= 1";
    else if (!(req.omega_min >= 0.0) || !std::isfinite(req.omega_max) ||
             !(req.omega_steps == 1 ? req.omega_max >= req.omega_min
                                    : req.omega_max > req.omega_min))
        os << "spectrum: requires omega_max > omega_min >= 0 (equal for a single sample)";
    else if (!(req.q_max >= req.q_min) || !std::isfinite(req.q_min) || !std::isfinite(req.q_max))
        os << "spectrum: requires q_max >= q_min";
    if (!os.str().empty()) throw DomainError(os.str());

    for (int j = 0; j < req.q_steps; ++j) {
        if (req.q_at(j) == 0.0) {
            os << "spectrum: q sample " << j << " is exactly 0 (excluded)";
            throw DomainError(os.str());
        }
    }
    const double q_abs_max = std::max(std::abs(req.q_min), std::abs(req.q_max));
    if (req.omega_steps > 1 && req.omega_spacing() > 0.02 * lp.u_charge * q_abs_max) {
        os << "spectrum: omega spacing " << req.omega_spacing() << " exceeds 0.02 u_charge |q|max = "
           << 0.02 * lp.u_charge * q_abs_max << "; peaks would not be resolved";
        throw DomainError(os.str());
    }
    validate(req.quad);
}

SpectrumPoint density_spectrum_point_detailed(double omega, double q, const SpectrumRequest& req) {
    const auto& lp = req.lutt;
    const double w2 = omega * omega;
    const double q2 = q * q;
    const double spin_gap = w2 - lp.u_spin * lp.u_spin * q2;
    const double charge_gap = w2 - lp.u_charge * lp.u_charge * q2;
    if (spin_gap == 0.0) {
        std::ostringstream os;
        os << "D(omega, q): (" << omega << ", " << q << ") lies on the spin line omega = u_spin q";
        throw SingularLineError(os.str());
    }
    if (charge_gap == 0.0) {
        std::ostringstream os;
        os << "D(omega, q): (" << omega << ", " << q
           << ") lies on the charge line omega = u_charge q";
        throw SingularLineError(os.str());
    }

    const double k_sum = lp.k_charge + lp.k_spin;
    const double c = 0.5 * k_sum;
    const double a = 0.5 * lp.k_charge;
    const double b1 = 0.5 * (k_sum - 1.0);
    const double b2 = 1.0 - c;
    const Complex x = 1.0 - (lp.u_charge * lp.u_charge) / (lp.u_spin * lp.u_spin);
    const Complex y = 1.0 - charge_gap / spin_gap;

    // Overall rho0^2 is divided out; (alpha/2)^(Kc+Ks) / alpha leaves units of rho0^2 alpha.
    const double prefactor = -4.0 * std::numbers::pi * std::pow(0.5 * req.alpha, k_sum) /
                             req.alpha * gamma_fn(1.0 - c) / gamma_fn(c) *
                             std::pow(std::abs(spin_gap), c - 1.0) *
                             std::pow(lp.u_spin, 1.0 - k_sum);
    const Complex phase =
        std::exp(Complex(0.0, -std::numbers::pi * (c - 1.0) * step_theta(spin_gap)));
    const F1Evaluation f1 = appell_f1_detailed(a, b1, b2, c, x, y, req.quad);

    SpectrumPoint pt;
    pt.value = prefactor * phase * f1.value;
    pt.branch_offset_used = f1.x_offset != 0.0 || f1.y_offset != 0.0;
    return pt;
}

Complex density_spectrum_point(double omega, double q, const SpectrumRequest& req) {
    return density_spectrum_point_detailed(omega, q, req).value;
}

SpectrumGrid density_spectrum_grid(const SpectrumRequest& req, unsigned threads) {
    validate(req);
    SpectrumGrid grid;
    grid.request = req;
    grid.branch_offset = req.quad.epsilon_branch;
    const std::size_t nw = static_cast<std::size_t>(req.omega_steps);
    const std::size_t nq = static_cast<std::size_t>(req.q_steps);
    grid.omegas.resize(nw);
    grid.qs.resize(nq);
    for (std::size_t i = 0; i < nw; ++i) grid.omegas[i] = req.omega_at(static_cast<int>(i));
    for (std::size_t j = 0; j < nq; ++j) grid.qs[j] = req.q_at(static_cast<int>(j));
    grid.values.assign(nw * nq, Complex(0.0, 0.0));

    const double half_step =
        nw > 1 ? 0.5 * req.omega_spacing() : 1e-6 * std::max(1.0, req.omega_min);

    std::vector<unsigned char> offset_used(nw * nq, 0);
    std::vector<unsigned char> nudged(nw * nq, 0);
    std::vector<PointFailure> failures;
    std::mutex failure_mutex;
    std::atomic<std::size_t> next_column{0};

    const auto worker = [&] {
        for (std::size_t j = next_column++; j < nq; j = next_column++) {
            const double q = grid.qs[j];
            const double spin_line = req.lutt.u_spin * std::abs(q);
            const double charge_line = req.lutt.u_charge * std::abs(q);
            for (std::size_t i = 0; i < nw; ++i) {
                double omega = grid.omegas[i];
                const std::size_t idx = j * nw + i;
                if (near_line(std::abs(omega), spin_line) ||
                    near_line(std::abs(omega), charge_line)) {
                    omega += half_step;
                    nudged[idx] = 1;
                }
                try {
                    const SpectrumPoint pt = density_spectrum_point_detailed(omega, q, req);
                    grid.values[idx] = pt.value;
                    offset_used[idx] = pt.branch_offset_used ? 1 : 0;
                } catch (const std::exception& e) {
                    std::lock_guard lock(failure_mutex);
                    failures.push_back({i, j, e.what()});
                }
            }
        }
    };

    unsigned n_threads = threads != 0 ? threads : std::max(1u, std::thread::hardware_concurrency());
    n_threads = static_cast<unsigned>(std::min<std::size_t>(n_threads, nq));
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(n_threads);
        for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    }

    if (!failures.empty()) {
        std::sort(failures.begin(), failures.end(), [](const auto& l, const auto& r) {
            return l.j_q != r.j_q ? l.j_q < r.j_q : l.i_omega < r.i_omega;
        });
        std::ostringstream os;
        os << failures.size() << " lattice point(s) failed; first at (omega index "
           << failures.front().i_omega << ", q index " << failures.front().j_q
           << "): " << failures.front().message;
        throw GridEvaluationError(os.str(), std::move(failures));
    }
    for (std::size_t k = 0; k < nw * nq; ++k) {
        grid.branch_points += offset_used[k];
        grid.nudged_points += nudged[k];
    }
    return grid;
}

std::vector<Peak> find_peaks(std::span<const double> omegas, std::span<const double> magnitude,
                             std::size_t merge_steps) {
    if (omegas.size() != magnitude.size())
        throw DomainError("find_peaks: omega and magnitude lengths differ");
    std::vector<Peak> maxima;
    for (std::size_t i = 1; i + 1 < magnitude.size(); ++i) {
        if (magnitude[i] > magnitude[i - 1] && magnitude[i] >= magnitude[i + 1])
            maxima.push_back({i, omegas[i], magnitude[i]});
    }
    std::vector<Peak> merged;
    for (const Peak& p : maxima) {
        if (!merged.empty() && p.index - merged.back().index < merge_steps) {
            if (p.height > merged.back().height) merged.back() = p;
        } else {
            merged.push_back(p);
        }
    }
    return merged;
}

PeakSet extract_peaks(const SpectrumGrid& grid, double q) {
    if (grid.qs.empty() || grid.omegas.empty()) throw DomainError("extract_peaks: empty grid");
    std::size_t column = 0;
    for (std::size_t j = 1; j < grid.qs.size(); ++j)
        if (std::abs(grid.qs[j] - q) < std::abs(grid.qs[column] - q)) column = j;
    const double q_col = grid.qs[column];

    const double charge_line = grid.request.lutt.u_charge * std::abs(q_col);
    const auto below = static_cast<std::size_t>(
        std::count_if(grid.omegas.begin(), grid.omegas.end(),
                      [&](double w) { return w < charge_line; }));
    const std::size_t above = grid.omegas.size() - below;
    if (below < kMinSamplesPerSide || above < kMinSamplesPerSide) {
        std::ostringstream os;
        os << "extract_peaks: column q = " << q_col << " has " << below << " omega samples below and "
           << above << " above u_charge q = " << charge_line << "; need " << kMinSamplesPerSide
           << " on each side";
        throw DomainError(os.str());
    }

    std::vector<double> magnitude(grid.omegas.size());
    for (std::size_t i = 0; i < magnitude.size(); ++i) magnitude[i] = std::abs(grid.at(i, column));
    std::vector<Peak> peaks = find_peaks(grid.omegas, magnitude);
    if (peaks.size() < 2) {
        std::ostringstream os;
        os << "extract_peaks: found " << peaks.size() << " peak(s) at q = " << q_col
           << "; spinon and holon peaks are not resolved";
        throw AnalysisError(os.str());
    }
    std::partial_sort(peaks.begin(), peaks.begin() + 2, peaks.end(),
                      [](const Peak& l, const Peak& r) { return l.height > r.height; });
    peaks.resize(2);
    std::sort(peaks.begin(), peaks.end(),
              [](const Peak& l, const Peak& r) { return l.omega < r.omega; });

    PeakSet set;
    set.q = q_col;
    for (const Peak& p : peaks) {
        set.peak_omegas.push_back(p.omega);
        set.peak_heights.push_back(p.height);
    }
    set.inferred_u_spin = set.peak_omegas[0] / std::abs(q_col);
    set.inferred_u_charge = set.peak_omegas[1] / std::abs(q_col);
    return set;
}

double fit_slope_through_origin(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.empty())
        throw DomainError("fit_slope_through_origin: need equal, non-empty inputs");
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        sxy += x[k] * y[k];
        sxx += x[k] * x[k];
    }
    if (sxx == 0.0) throw DomainError("fit_slope_through_origin: all x are zero");
    return sxy / sxx;
}

VelocityFit velocities_from_sweep(const SpectrumRequest& req, std::span<const double> q_list,
                                  unsigned threads) {
    if (q_list.size() < 3) throw DomainError("velocities_from_sweep: needs at least 3 q values");
    VelocityFit fit;
    std::vector<double> abs_q;
    std::vector<double> spin_omega;
    std::vector<double> charge_omega;
    for (double q : q_list) {
        SpectrumRequest column = req;
        column.q_min = q;
        column.q_max = q;
        column.q_steps = 1;
        const SpectrumGrid grid = density_spectrum_grid(column, threads);
        PeakSet peaks = extract_peaks(grid, q);
        abs_q.push_back(std::abs(q));
        spin_omega.push_back(peaks.peak_omegas[0]);
        charge_omega.push_back(peaks.peak_omegas[1]);
        fit.peaks.push_back(std::move(peaks));
    }
    fit.u_spin = fit_slope_through_origin(abs_q, spin_omega);
    fit.u_charge = fit_slope_through_origin(abs_q, charge_omega);
    return fit;
}

}  // namespace scsep
