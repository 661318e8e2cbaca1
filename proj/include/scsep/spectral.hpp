// spectral.hpp: density-density spectral function D(omega, q) of the 2k_F
// density component, lattice evaluation and spinon/holon peak extraction
#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "scsep/params.hpp"
#include "scsep/specfun.hpp"

namespace scsep {

struct SpectrumRequest {
    LuttingerParameters lutt;
    double rho0 = 1.0;    // total density
    double alpha = 1.0;   // short-distance cutoff
    double omega_min = 0.05;
    double omega_max = 3.0;
    int omega_steps = 300;
    double q_min = 0.1;
    double q_max = 3.0;
    int q_steps = 300;
    QuadratureSpec quad;

    double omega_at(int i) const;
    double q_at(int j) const;
    double omega_spacing() const;  // 0 for a single-sample axis
    double q_spacing() const;
};

/// Throws DomainError on an invalid axis, a zero q sample, Luttinger
/// parameters outside the formula's domain, or an omega spacing coarser than
/// 0.02 u_charge max|q|.
void validate(const SpectrumRequest& req);

struct SpectrumGrid {
    std::vector<double> omegas;
    std::vector<double> qs;
    std::vector<Complex> values;   // q-major: values[j * omegas.size() + i], units rho0^2 alpha
    SpectrumRequest request;
    double branch_offset = 0.0;    // +i eps applied to F1 arguments on the cut
    std::size_t branch_points = 0; // lattice points that needed the offset
    std::size_t nudged_points = 0; // lattice points moved off a singular line

    const Complex& at(std::size_t i_omega, std::size_t j_q) const {
        return values[j_q * omegas.size() + i_omega];
    }
};

struct PointFailure {
    std::size_t i_omega;
    std::size_t j_q;
    std::string message;
};

/// Raised by density_spectrum_grid with every failing lattice point.
class GridEvaluationError : public std::runtime_error {
public:
    GridEvaluationError(const std::string& what, std::vector<PointFailure> failures)
        : std::runtime_error(what), failures_(std::move(failures)) {}
    const std::vector<PointFailure>& failures() const noexcept { return failures_; }

private:
    std::vector<PointFailure> failures_;
};

struct SpectrumPoint {
    Complex value;
    bool branch_offset_used = false;
};

/// D(omega, q) / (rho0^2 alpha). Throws SingularLineError exactly on
/// omega^2 = u_spin^2 q^2 or omega^2 = u_charge^2 q^2.
Complex density_spectrum_point(double omega, double q, const SpectrumRequest& req);
SpectrumPoint density_spectrum_point_detailed(double omega, double q, const SpectrumRequest& req);

/// Evaluates the whole lattice. Samples within 1e-9 (relative) of a singular
/// line are shifted by half an omega step. threads = 0 uses the hardware
/// concurrency; the result does not depend on the thread count.
SpectrumGrid density_spectrum_grid(const SpectrumRequest& req, unsigned threads = 0);

struct Peak {
    std::size_t index;
    double omega;
    double height;
};

/// Local maxima of magnitude along omega, with maxima closer than
/// merge_steps samples merged into the taller one. Sorted by omega.
std::vector<Peak> find_peaks(std::span<const double> omegas, std::span<const double> magnitude,
                             std::size_t merge_steps = 3);

struct PeakSet {
    double q = 0.0;
    std::vector<double> peak_omegas;   // ascending
    std::vector<double> peak_heights;
    double inferred_u_spin = 0.0;
    double inferred_u_charge = 0.0;
};

/// Two tallest peaks of |D| in the grid column nearest to q. Throws
/// DomainError when fewer than 50 omega samples lie on either side of
/// u_charge q, and AnalysisError when fewer than two peaks survive merging.
PeakSet extract_peaks(const SpectrumGrid& grid, double q);

/// Least-squares slope of y against x for a line through the origin.
double fit_slope_through_origin(std::span<const double> x, std::span<const double> y);

struct VelocityFit {
    double u_spin = 0.0;
    double u_charge = 0.0;
    std::vector<PeakSet> peaks;   // one per q, in input order
};

/// Evaluates one omega column per q (the request's q axis is ignored) and
/// fits both peak branches through the origin. Needs at least three q values.
VelocityFit velocities_from_sweep(const SpectrumRequest& req, std::span<const double> q_list,
                                  unsigned threads = 0);

}  // namespace scsep
