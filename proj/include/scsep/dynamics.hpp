// dynamics.hpp: mean-field coupled nonlinear Schroedinger evolution of the
// two polariton fields by Strang split-step Fourier on a periodic grid.
//
// The evolved law is
//   i d_t psi_s = -(1/2m_s) d_z^2 psi_s + chi_s |psi_s|^2 psi_s
//                 + cross_s |psi_sbar|^2 psi_s
// with cross_s the per-equation inter-species coefficient (not the summed
// chi_cross of the Hamiltonian). This c-number limit is only a quantitative
// model at weak coupling (gamma <~ 0.1); strongly correlated photons at
// gamma ~ 20 are described by the Luttinger formula in spectral.hpp instead.
#pragma once

#include <complex>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "scsep/params.hpp"

namespace scsep {

struct FieldState {
    std::vector<std::complex<double>> psi_up;
    std::vector<std::complex<double>> psi_down;
    int grid_points = 0;
    double box_length = 0.0;
    double time = 0.0;

    double dz() const { return box_length / grid_points; }
    double z(int i) const { return i * dz(); }
};

double norm(const std::vector<std::complex<double>>& psi, double dz);

enum class Channel { charge, spin };
enum class PerturbationKind { none, charge, spin };

struct Perturbation {
    PerturbationKind kind = PerturbationKind::none;
    double amplitude = 0.0;   // density units
    double width = 1.0;       // Gaussian exp(-(z-center)^2 / width^2)
    double center = 0.0;
};

/// Uniform condensate with a Gaussian density bump added to both species
/// (charge) or with opposite signs (spin). The bump uses the periodic
/// distance to the center. Throws DomainError for a grid that is not a power
/// of two, a width above box_length/4, a center outside [0, box_length) or a
/// bump that would make a density negative.
FieldState init_state(double rho0_up, double rho0_down, const Perturbation& perturbation,
                      int grid_points, double box_length);

/// Non-empty when the bump exceeds 10% of the smaller background density.
std::optional<std::string> linear_response_warning(double rho0_up, double rho0_down,
                                                   const Perturbation& perturbation);

struct EvolutionSpec {
    double dt = 0.01;
    int steps = 1;
    EffectiveLiebLiniger eff;
    int record_every = 1;
};

/// Largest admissible nonlinear phase per step.
inline constexpr double kMaxNonlinearPhase = 0.05;

/// Largest admissible kinetic phase dt k_max^2 / (2|m|) at the Nyquist mode;
/// above it the splitting excites spurious high-k growth.
inline constexpr double kMaxKineticPhase = std::numbers::pi;

/// Throws DomainError for bad step parameters or masses and StabilityError
/// when dt * max_s(|chi_s| + |cross_s|) * max|psi|^2 exceeds kMaxNonlinearPhase
/// or the Nyquist-mode kinetic phase exceeds kMaxKineticPhase.
void validate(const EvolutionSpec& spec, const FieldState& state);

/// Reusable propagator for one grid and one spec (FFT plans and kinetic
/// phases are built once). Not shareable between threads; give each
/// simulation its own instance.
class SplitStepPropagator {
public:
    SplitStepPropagator(int grid_points, double box_length, const EvolutionSpec& spec);
    ~SplitStepPropagator();
    SplitStepPropagator(const SplitStepPropagator&) = delete;
    SplitStepPropagator& operator=(const SplitStepPropagator&) = delete;

    /// half kinetic, full nonlinear, half kinetic; time += dt
    void advance(FieldState& state) const;
    /// exact inverse of advance up to rounding; time -= dt
    void retreat(FieldState& state) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

FieldState step(const FieldState& state, const EvolutionSpec& spec);
FieldState step_back(const FieldState& state, const EvolutionSpec& spec);

struct DensityTrace {
    std::vector<double> times;
    std::vector<std::vector<double>> rho_charge;   // [frame][z]
    std::vector<std::vector<double>> rho_spin;
    std::vector<double> norm_up;                   // per frame
    std::vector<double> norm_down;
    double dz = 0.0;
    double box_length = 0.0;
};

/// Runs spec.steps steps, recording the initial frame and every
/// record_every-th step. The state is advanced in place.
DensityTrace evolve_in_place(FieldState& state, const EvolutionSpec& spec);
DensityTrace evolve(FieldState state, const EvolutionSpec& spec);

/// Speed of the rightmost half-maximum point of |rho - <rho>| for the
/// channel, from a least-squares line through the frames left after dropping
/// the first 20%. Throws DomainError for fewer than 10 such frames and
/// AnalysisError when no front can be located.
double front_velocity(const DensityTrace& trace, Channel channel);

/// Position of the rightmost half-maximum point in one density profile.
double front_position(const std::vector<double>& rho, double dz);

struct SoundVelocities {
    double charge = 0.0;
    double spin = 0.0;
};

/// Long-wavelength Bogoliubov speeds of the evolved equations: square roots
/// of the eigenvalues of [[rho_up chi_up/m_up, rho_up cross_up/m_up],
/// [rho_down cross_down/m_down, rho_down chi_down/m_down]]. For symmetric
/// species these are sqrt(rho_s (chi +- cross)/m). Throws DomainError when
/// either mode is unstable.
SoundVelocities bogoliubov_velocities(const EffectiveLiebLiniger& eff);

}  // namespace scsep
