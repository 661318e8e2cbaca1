// sc-sep: command-line front end
#include <CLI11.hpp>

#include <algorithm>
#include <iostream>
#include <thread>

#include "scsep/commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Spin-charge separation of polaritons: parameters, spectra, peaks, dynamics"};
    app.require_subcommand(1, 1);

    scsep::CommandOptions opt;
    std::string out;
    std::vector<double> q;

    const auto add = [&](const char* name, const char* help) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--config", opt.config_path, "TOML config file")->required();
        sub->add_option("--out", out, "output directory (overrides output.dir)");
        return sub;
    };
    add("params", "effective and Luttinger parameters with regime checks");
    add("spectrum", "D(omega, q) on the configured grid");
    CLI::App* peaks = add("peaks", "spinon/holon peaks and fitted velocities");
    peaks->add_option("--q", q, "q values (comma separated)")->delimiter(',');
    add("evolve", "mean-field split-step evolution of a density bump");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : scsep::kExitConfig;
    }

    if (!out.empty()) opt.out_dir = out;
    if (!q.empty()) opt.q = q;
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned cap = scsep::threads_from_env();
    opt.threads = cap == 0 ? hw : std::min(hw, cap);

    const std::string name = app.get_subcommands().front()->get_name();
    return scsep::run_command(name, opt, std::cerr);
}
