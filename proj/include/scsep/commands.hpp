// commands.hpp: the sc-sep subcommands
#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace scsep {

enum ExitCode : int {
    kExitOk = 0,
    kExitConfig = 1,
    kExitRegime = 2,
    kExitAnalysis = 3,
};

struct CommandOptions {
    std::string config_path;
    std::optional<std::string> out_dir;       // overrides output.dir
    std::optional<std::vector<double>> q;     // overrides spectrum.peak_q
    unsigned threads = 0;                     // 0: hardware concurrency
};

/// params.json: optical input, effective parameters, Luttinger parameters,
/// both regime reports and the sine-Gordon coefficient.
int cmd_params(const CommandOptions& opt, std::ostream& log);
/// spectrum.csv (omega,q,re,im,abs; q-major) and spectrum_meta.json.
int cmd_spectrum(const CommandOptions& opt, std::ostream& log);
/// peaks.json: spinon/holon peaks per q and the fitted velocities.
int cmd_peaks(const CommandOptions& opt, std::ostream& log);
/// trace_charge.csv, trace_spin.csv (one frame per row, time first) and
/// summary.json.
int cmd_evolve(const CommandOptions& opt, std::ostream& log);

/// Dispatches by name ("params", "spectrum", "peaks", "evolve") and maps
/// exceptions to exit codes, writing the diagnostic to log.
int run_command(const std::string& name, const CommandOptions& opt, std::ostream& log);

/// printf("%.17g"), which round-trips every double.
std::string format_double(double v);

/// Worker cap from SC_SEP_THREADS (unset, empty or invalid: 0).
unsigned threads_from_env();

}  // namespace scsep
