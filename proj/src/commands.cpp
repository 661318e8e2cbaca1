#include "scsep/commands.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "scsep/config.hpp"
#include "scsep/dynamics.hpp"
#include "scsep/errors.hpp"
#include "scsep/params.hpp"
#include "scsep/spectral.hpp"

namespace scsep {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

unsigned threads_from_env() {
    const char* s = std::getenv("SC_SEP_THREADS");
    if (!s || !*s) return 0;
    char* end = nullptr;
    const long v = std::strtol(s, &end, 10);
    if (*end != '\0' || v < 1 || v > 4096) return 0;
    return static_cast<unsigned>(v);
}

namespace {

ordered_json number(double v) {
    if (!std::isfinite(v)) return nullptr;
    return v;
}

fs::path prepare_out_dir(const CommandOptions& opt, const RunConfig& cfg) {
    const fs::path dir = opt.out_dir ? fs::path(*opt.out_dir) : fs::path(cfg.output.dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) {
        throw ConfigError("cannot create output directory '" + dir.string() + "'", "output.dir",
                          0);
    }
    return dir;
}

// Written to a sibling temporary and renamed, so readers never see a partial file.
void write_file(const fs::path& path, const std::string& content) {
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
        out << content;
        if (!out) throw std::runtime_error("write failed for '" + tmp.string() + "'");
    }
    fs::rename(tmp, path);
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

ordered_json to_json(const OpticalConfig& o) {
    return {{"delta_up", o.delta_up},
            {"delta_down", o.delta_down},
            {"delta_upup", o.delta_upup},
            {"delta_downdown", o.delta_downdown},
            {"delta_updown", o.delta_updown},
            {"delta_downup", o.delta_downup},
            {"omega_up", o.omega_up},
            {"omega_down", o.omega_down},
            {"coupling_g", o.coupling_g},
            {"atom_density_up", o.atom_density_up},
            {"atom_density_down", o.atom_density_down},
            {"photon_density_up", o.photon_density_up},
            {"photon_density_down", o.photon_density_down},
            {"waveguide_velocity", o.waveguide_velocity},
            {"optical_depth", o.optical_depth},
            {"cooperativity", o.cooperativity}};
}

ordered_json to_json(const EffectiveLiebLiniger& e) {
    return {{"mass_up", number(e.mass_up)},
            {"mass_down", number(e.mass_down)},
            {"chi_up", number(e.chi_up)},
            {"chi_down", number(e.chi_down)},
            {"chi_cross", number(e.chi_cross)},
            {"cross_up", number(e.cross_up)},
            {"cross_down", number(e.cross_down)},
            {"group_velocity_up", number(e.group_velocity_up)},
            {"group_velocity_down", number(e.group_velocity_down)},
            {"gamma_1d_up", number(e.gamma_1d_up)},
            {"gamma_1d_down", number(e.gamma_1d_down)},
            {"density_up", number(e.density_up)},
            {"density_down", number(e.density_down)}};
}

ordered_json to_json(const LuttingerParameters& lp) {
    return {{"gamma_up", number(lp.gamma_up)},
            {"gamma_down", number(lp.gamma_down)},
            {"u", number(lp.u)},
            {"k", number(lp.k_param)},
            {"u_charge", number(lp.u_charge)},
            {"u_spin", number(lp.u_spin)},
            {"k_charge", number(lp.k_charge)},
            {"k_spin", number(lp.k_spin)},
            {"ratio_cross", number(lp.ratio_cross)}};
}

ordered_json to_json(const RegimeReport& r) {
    ordered_json j;
    if (r.repulsive) j["repulsive"] = *r.repulsive;
    if (r.separated) j["separated"] = *r.separated;
    j["messages"] = r.messages;
    if (!r.residuals.empty()) {
        ordered_json res = ordered_json::object();
        for (const auto& [k, v] : r.residuals) res[k] = number(v);
        j["residuals"] = res;
        j["tolerance"] = r.tolerance;
    }
    return j;
}

ordered_json to_json(const SpectrumRequest& req) {
    return {{"rho0", req.rho0},
            {"alpha", req.alpha},
            {"omega_min", req.omega_min},
            {"omega_max", req.omega_max},
            {"omega_steps", req.omega_steps},
            {"q_min", req.q_min},
            {"q_max", req.q_max},
            {"q_steps", req.q_steps},
            {"quadrature",
             {{"abs_tol", req.quad.abs_tol},
              {"rel_tol", req.quad.rel_tol},
              {"max_levels", req.quad.max_levels},
              {"epsilon_branch", req.quad.epsilon_branch}}}};
}

void log_warnings(std::ostream& log, const std::vector<std::string>& warnings) {
    for (const auto& w : warnings) log << "warning: " << w << "\n";
}

// Peaks need 50 samples on either side of u_charge |q|; checked for the whole
// q list before any column is evaluated.
void check_peak_columns(const SpectrumRequest& req, const std::vector<double>& qs) {
    if (qs.empty()) throw ConfigError("no q values for peak extraction", "spectrum.peak_q", 0);
    for (double q : qs) {
        if (!std::isfinite(q) || q == 0.0)
            throw ConfigError("peak q values must be finite and nonzero", "spectrum.peak_q", 0);
        const double line = req.lutt.u_charge * std::abs(q);
        int below = 0;
        for (int i = 0; i < req.omega_steps; ++i)
            if (req.omega_at(i) < line) ++below;
        const int above = req.omega_steps - below;
        if (below < 50 || above < 50) {
            std::ostringstream os;
            os << "omega axis has " << below << " samples below and " << above
               << " above u_charge |q| = " << line << " for q = " << q
               << "; peak extraction needs 50 on each side (raise spectrum.omega_max or "
                  "spectrum.omega_steps)";
            throw ConfigError(os.str(), "spectrum.omega_max", 0);
        }
        SpectrumRequest column = req;
        column.q_min = column.q_max = q;
        column.q_steps = 1;
        try {
            validate(column);
        } catch (const DomainError& e) {
            throw ConfigError(e.what(), "spectrum", 0);
        }
    }
}

}  // namespace

int cmd_params(const CommandOptions& opt, std::ostream& log) {
    const RunConfig cfg = load_config(opt.config_path);
    const auto warnings = check_optical(cfg);
    const fs::path dir = prepare_out_dir(opt, cfg);
    log_warnings(log, warnings);

    const OpticalConfig& optical = *cfg.optical;
    const EffectiveLiebLiniger eff = derive_effective(optical);
    const RegimeReport repulsive = check_repulsive(optical);
    const RegimeReport separation = check_separation(eff);

    ordered_json report;
    report["optical"] = to_json(optical);
    report["effective"] = to_json(eff);
    report["regime"] = {{"repulsive", to_json(repulsive)}, {"separation", to_json(separation)}};
    report["repulsive"] = *repulsive.repulsive;
    report["separated"] = *separation.separated;
    report["sine_gordon_coefficient"] = number(sine_gordon_coefficient(eff));

    bool regime_ok = *repulsive.repulsive && *separation.separated;
    std::string failure;
    try {
        const LuttingerParameters lp = derive_luttinger(eff);
        report["luttinger"] = to_json(lp);
        report["luttinger_normalized"] = to_json(normalized_to_charge_velocity(lp));
    } catch (const RegimeError& e) {
        regime_ok = false;
        failure = e.what();
        report["luttinger"] = nullptr;
        report["luttinger_error"] = failure;
    }
    report["warnings"] = warnings;
    write_file(dir / "params.json", dump(report));

    if (!regime_ok) {
        for (const auto& m : repulsive.messages)
            if (!*repulsive.repulsive) log << "regime: " << m << "\n";
        for (const auto& m : separation.messages)
            if (!*separation.separated) log << "regime: " << m << "\n";
        if (!failure.empty()) log << "regime: " << failure << "\n";
        return kExitRegime;
    }
    return kExitOk;
}

int cmd_spectrum(const CommandOptions& opt, std::ostream& log) {
    const RunConfig cfg = load_config(opt.config_path);
    const SpectrumRequest req = resolve_spectrum(cfg);
    const fs::path dir = prepare_out_dir(opt, cfg);

    const SpectrumGrid grid = density_spectrum_grid(req, opt.threads);

    std::string csv = "omega,q,re,im,abs\n";
    csv.reserve(csv.size() + grid.values.size() * 100);
    for (std::size_t j = 0; j < grid.qs.size(); ++j) {
        for (std::size_t i = 0; i < grid.omegas.size(); ++i) {
            const Complex& v = grid.at(i, j);
            csv += format_double(grid.omegas[i]);
            csv += ',';
            csv += format_double(grid.qs[j]);
            csv += ',';
            csv += format_double(v.real());
            csv += ',';
            csv += format_double(v.imag());
            csv += ',';
            csv += format_double(std::abs(v));
            csv += '\n';
        }
    }

    ordered_json meta;
    meta["request"] = to_json(req);
    meta["luttinger"] = to_json(req.lutt);
    meta["units"] = "rho0^2 alpha";
    meta["row_order"] = "q-major, omega ascending";
    meta["rows"] = grid.values.size();
    meta["branch_offset"] = grid.branch_offset;
    meta["branch_points"] = grid.branch_points;
    meta["nudged_points"] = grid.nudged_points;

    write_file(dir / "spectrum.csv", csv);
    write_file(dir / "spectrum_meta.json", dump(meta));
    log << "spectrum: " << grid.omegas.size() << " x " << grid.qs.size() << " points, "
        << grid.nudged_points << " nudged off a singular line\n";
    return kExitOk;
}

int cmd_peaks(const CommandOptions& opt, std::ostream& log) {
    const RunConfig cfg = load_config(opt.config_path);
    const SpectrumRequest req = resolve_spectrum(cfg);
    std::vector<double> qs = opt.q ? *opt.q : cfg.spectrum->peak_q;
    if (qs.empty()) qs.push_back(2.0);
    check_peak_columns(req, qs);
    const fs::path dir = prepare_out_dir(opt, cfg);

    std::vector<PeakSet> sets;
    for (double q : qs) {
        SpectrumRequest column = req;
        column.q_min = column.q_max = q;
        column.q_steps = 1;
        try {
            sets.push_back(extract_peaks(density_spectrum_grid(column, opt.threads), q));
        } catch (const AnalysisError& e) {
            log << "peaks unresolved: " << e.what() << "\n";
            return kExitAnalysis;
        }
    }

    std::vector<double> abs_q, spin_omega, charge_omega;
    ordered_json per_q = ordered_json::array();
    for (const PeakSet& s : sets) {
        abs_q.push_back(std::abs(s.q));
        spin_omega.push_back(s.peak_omegas[0]);
        charge_omega.push_back(s.peak_omegas[1]);
        per_q.push_back({{"q", s.q},
                         {"omega_spin", s.peak_omegas[0]},
                         {"omega_charge", s.peak_omegas[1]},
                         {"height_spin", s.peak_heights[0]},
                         {"height_charge", s.peak_heights[1]},
                         {"u_spin", s.inferred_u_spin},
                         {"u_charge", s.inferred_u_charge}});
    }

    ordered_json out;
    out["u_spin"] = fit_slope_through_origin(abs_q, spin_omega);
    out["u_charge"] = fit_slope_through_origin(abs_q, charge_omega);
    out["analytic"] = {{"u_spin", req.lutt.u_spin}, {"u_charge", req.lutt.u_charge}};
    out["omega_spacing"] = req.omega_spacing();
    out["peaks"] = per_q;
    write_file(dir / "peaks.json", dump(out));
    return kExitOk;
}

int cmd_evolve(const CommandOptions& opt, std::ostream& log) {
    const RunConfig cfg = load_config(opt.config_path);
    EvolutionSetup setup = resolve_evolution(cfg);
    const fs::path dir = prepare_out_dir(opt, cfg);
    log_warnings(log, setup.warnings);

    const PerturbationKind kind = cfg.evolution->perturbation.kind;
    const DensityTrace trace = evolve_in_place(setup.initial, setup.spec);

    const auto trace_csv = [&](const std::vector<std::vector<double>>& frames) {
        std::string s = "time";
        const int n = setup.initial.grid_points;
        for (int i = 0; i < n; ++i) {
            s += ',';
            s += format_double(i * trace.dz);
        }
        s += '\n';
        for (std::size_t f = 0; f < frames.size(); ++f) {
            s += format_double(trace.times[f]);
            for (double v : frames[f]) {
                s += ',';
                s += format_double(v);
            }
            s += '\n';
        }
        return s;
    };

    const auto drift = [](const std::vector<double>& norms) {
        double worst = 0.0;
        for (double v : norms) worst = std::max(worst, std::abs(v - norms.front()) / norms.front());
        return worst;
    };
    const auto max_change = [](const std::vector<std::vector<double>>& frames) {
        double worst = 0.0;
        for (const auto& f : frames)
            for (std::size_t i = 0; i < f.size(); ++i)
                worst = std::max(worst, std::abs(f[i] - frames.front()[i]));
        return worst;
    };

    ordered_json summary;
    summary["perturbation"] = kind == PerturbationKind::charge ? "charge"
                              : kind == PerturbationKind::spin ? "spin"
                                                               : "none";
    summary["frames"] = trace.times.size();
    summary["final_time"] = trace.times.back();
    summary["effective"] = to_json(setup.spec.eff);

    int code = kExitOk;
    try {
        const SoundVelocities v = bogoliubov_velocities(setup.spec.eff);
        summary["predicted"] = {{"charge", v.charge}, {"spin", v.spin}};
        if (kind != PerturbationKind::none) {
            const Channel ch = kind == PerturbationKind::charge ? Channel::charge : Channel::spin;
            const double predicted = kind == PerturbationKind::charge ? v.charge : v.spin;
            try {
                const double measured = front_velocity(trace, ch);
                summary["measured"] = {{"channel", summary["perturbation"]},
                                       {"velocity", measured},
                                       {"ratio_to_predicted", measured / predicted}};
            } catch (const std::exception& e) {
                summary["measured"] = nullptr;
                summary["front_error"] = e.what();
                log << "front analysis failed: " << e.what() << "\n";
                code = kExitAnalysis;
            }
        }
    } catch (const DomainError& e) {
        summary["predicted"] = nullptr;
        summary["prediction_error"] = e.what();
    }
    summary["norm_drift"] = {{"up", drift(trace.norm_up)}, {"down", drift(trace.norm_down)}};
    summary["max_trace_change"] = {{"charge", max_change(trace.rho_charge)},
                                   {"spin", max_change(trace.rho_spin)}};
    summary["warnings"] = setup.warnings;

    write_file(dir / "trace_charge.csv", trace_csv(trace.rho_charge));
    write_file(dir / "trace_spin.csv", trace_csv(trace.rho_spin));
    write_file(dir / "summary.json", dump(summary));
    return code;
}

int run_command(const std::string& name, const CommandOptions& opt, std::ostream& log) {
    try {
        if (name == "params") return cmd_params(opt, log);
        if (name == "spectrum") return cmd_spectrum(opt, log);
        if (name == "peaks") return cmd_peaks(opt, log);
        if (name == "evolve") return cmd_evolve(opt, log);
        log << "unknown command '" << name << "'\n";
        return kExitConfig;
    } catch (const ConfigError& e) {
        log << "config error: " << opt.config_path;
        if (e.line() > 0) log << ":" << e.line();
        if (!e.field().empty()) log << ": " << e.field();
        log << ": " << e.what() << "\n";
        return kExitConfig;
    } catch (const RegimeError& e) {
        log << "regime failure: " << e.what() << "\n";
        return kExitRegime;
    } catch (const AnalysisError& e) {
        log << "analysis failure: " << e.what() << "\n";
        return kExitAnalysis;
    } catch (const GridEvaluationError& e) {
        log << "analysis failure: " << e.what() << "\n";
        return kExitAnalysis;
    } catch (const ConvergenceError& e) {
        log << "analysis failure: " << e.what() << "\n";
        return kExitAnalysis;
    } catch (const StabilityError& e) {
        log << "analysis failure: " << e.what() << "\n";
        return kExitAnalysis;
    } catch (const std::exception& e) {
        log << "error: " << e.what() << "\n";
        return kExitConfig;
    }
}

}  // namespace scsep
