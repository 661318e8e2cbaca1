#include "scsep/config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#define TOML_ENABLE_FORMATTERS 0
#include <toml.hpp>

#include "scsep/errors.hpp"

namespace scsep {

namespace {

int line_of(const toml::node& n) { return static_cast<int>(n.source().begin.line); }

// Typed access to one [section] with unknown-key detection.
class Section {
public:
    Section(const toml::table& t, std::string name) : table_(t), name_(std::move(name)) {}

    bool has(const std::string& key) const { return table_.contains(key); }

    void read(const std::string& key, double& out) {
        const toml::node* n = lookup(key);
        if (!n) return;
        if (auto v = n->value<double>(); v && (n->is_floating_point() || n->is_integer())) {
            out = *v;
            return;
        }
        type_error(key, *n, "a number");
    }

    void read(const std::string& key, int& out) {
        const toml::node* n = lookup(key);
        if (!n) return;
        if (n->is_integer()) {
            const auto v = n->as_integer()->get();
            if (v >= std::numeric_limits<int>::min() && v <= std::numeric_limits<int>::max()) {
                out = static_cast<int>(v);
                return;
            }
        }
        type_error(key, *n, "an integer");
    }

    void read(const std::string& key, bool& out) {
        const toml::node* n = lookup(key);
        if (!n) return;
        if (n->is_boolean()) {
            out = n->as_boolean()->get();
            return;
        }
        type_error(key, *n, "a boolean");
    }

    void read(const std::string& key, std::string& out) {
        const toml::node* n = lookup(key);
        if (!n) return;
        if (n->is_string()) {
            out = n->as_string()->get();
            return;
        }
        type_error(key, *n, "a string");
    }

    void read(const std::string& key, std::vector<double>& out) {
        const toml::node* n = lookup(key);
        if (!n) return;
        if (const auto* arr = n->as_array()) {
            std::vector<double> vals;
            for (const auto& el : *arr) {
                if (!(el.is_floating_point() || el.is_integer())) type_error(key, el, "a number");
                vals.push_back(*el.value<double>());
            }
            out = std::move(vals);
            return;
        }
        type_error(key, *n, "an array of numbers");
    }

    // Line of a key, or of the section header when the key is absent.
    int line(const std::string& key) const {
        if (const toml::node* n = table_.get(key)) return line_of(*n);
        return static_cast<int>(table_.source().begin.line);
    }

    std::string field(const std::string& key) const { return name_ + "." + key; }

    [[noreturn]] void fail(const std::string& key, const std::string& msg) const {
        throw ConfigError(msg, field(key), line(key));
    }

    void reject_unknown() const {
        for (const auto& [k, v] : table_) {
            const std::string key(k.str());
            if (!known_.count(key)) {
                std::ostringstream os;
                os << "unknown key '" << field(key) << "'";
                throw ConfigError(os.str(), field(key), line_of(v));
            }
        }
    }

private:
    const toml::node* lookup(const std::string& key) {
        known_.insert(key);
        return table_.get(key);
    }

    [[noreturn]] void type_error(const std::string& key, const toml::node& n,
                                 const char* expected) const {
        std::ostringstream os;
        os << field(key) << " must be " << expected;
        throw ConfigError(os.str(), field(key), line_of(n));
    }

    const toml::table& table_;
    std::string name_;
    std::set<std::string> known_;
};

const toml::table* section_table(const toml::table& root, const char* name) {
    const toml::node* n = root.get(name);
    if (!n) return nullptr;
    if (const auto* t = n->as_table()) return t;
    std::ostringstream os;
    os << "'" << name << "' must be a table";
    throw ConfigError(os.str(), name, line_of(*n));
}

OpticalConfig parse_optical(Section& s) {
    OpticalConfig o;
    s.read("delta_up", o.delta_up);
    s.read("delta_down", o.delta_down);
    s.read("delta_upup", o.delta_upup);
    s.read("delta_downdown", o.delta_downdown);
    s.read("delta_updown", o.delta_updown);
    s.read("delta_downup", o.delta_downup);
    s.read("omega_up", o.omega_up);
    s.read("omega_down", o.omega_down);
    s.read("coupling_g", o.coupling_g);
    s.read("atom_density_up", o.atom_density_up);
    s.read("atom_density_down", o.atom_density_down);
    s.read("photon_density_up", o.photon_density_up);
    s.read("photon_density_down", o.photon_density_down);
    s.read("waveguide_velocity", o.waveguide_velocity);
    s.read("optical_depth", o.optical_depth);
    s.read("cooperativity", o.cooperativity);
    return o;
}

SpectrumConfig parse_spectrum(Section& s) {
    SpectrumConfig c;
    std::string source = s.has("u_charge") || !s.has("source") ? "sectors" : "optical";
    s.read("source", source);
    if (source == "sectors")
        c.source = SpectrumSource::sectors;
    else if (source == "optical")
        c.source = SpectrumSource::optical;
    else
        s.fail("source", "spectrum.source must be \"sectors\" or \"optical\" (got \"" + source +
                             "\")");
    s.read("u_charge", c.u_charge);
    s.read("u_spin", c.u_spin);
    s.read("k_charge", c.k_charge);
    s.read("k_spin", c.k_spin);
    auto& r = c.request;
    s.read("rho0", r.rho0);
    s.read("alpha", r.alpha);
    s.read("omega_min", r.omega_min);
    s.read("omega_max", r.omega_max);
    s.read("omega_steps", r.omega_steps);
    s.read("q_min", r.q_min);
    s.read("q_max", r.q_max);
    s.read("q_steps", r.q_steps);
    s.read("abs_tol", r.quad.abs_tol);
    s.read("rel_tol", r.quad.rel_tol);
    s.read("max_levels", r.quad.max_levels);
    s.read("epsilon_branch", r.quad.epsilon_branch);
    s.read("peak_q", c.peak_q);
    return c;
}

EvolutionConfig parse_evolution(Section& s) {
    EvolutionConfig e;
    const bool direct = s.has("mass") || s.has("chi") || s.has("cross") || s.has("density");
    std::string coupling = direct ? "direct" : "optical";
    s.read("coupling", coupling);
    if (coupling == "direct")
        e.coupling = CouplingSource::direct;
    else if (coupling == "optical")
        e.coupling = CouplingSource::optical;
    else
        s.fail("coupling", "evolution.coupling must be \"optical\" or \"direct\" (got \"" +
                               coupling + "\")");
    s.read("mass", e.mass);
    s.read("chi", e.chi);
    s.read("cross", e.cross);
    s.read("density", e.density);
    s.read("grid_points", e.grid_points);
    s.read("box_length", e.box_length);
    s.read("dt", e.dt);
    s.read("steps", e.steps);
    s.read("record_every", e.record_every);

    std::string kind = "none";
    s.read("perturbation", kind);
    if (kind == "none")
        e.perturbation.kind = PerturbationKind::none;
    else if (kind == "charge")
        e.perturbation.kind = PerturbationKind::charge;
    else if (kind == "spin")
        e.perturbation.kind = PerturbationKind::spin;
    else
        s.fail("perturbation", "evolution.perturbation must be \"none\", \"charge\" or \"spin\" "
                               "(got \"" + kind + "\")");
    e.perturbation.center = 0.5 * e.box_length;
    s.read("amplitude", e.perturbation.amplitude);
    s.read("width", e.perturbation.width);
    s.read("center", e.perturbation.center);
    return e;
}

// The first "section.key" token in a validator message, if any.
std::string field_in_message(const std::string& msg, const std::string& section) {
    const std::string prefix = section + ".";
    const auto pos = msg.find(prefix);
    if (pos == std::string::npos) return section;
    auto end = pos + prefix.size();
    while (end < msg.size() && (std::isalnum(static_cast<unsigned char>(msg[end])) || msg[end] == '_'))
        ++end;
    return msg.substr(pos, end - pos);
}

struct Positions {
    std::map<std::string, int> lines;   // "section.key" -> line
    int line(const std::string& field) const {
        auto it = lines.find(field);
        if (it != lines.end()) return it->second;
        const auto dot = field.find('.');
        it = lines.find(field.substr(0, dot));
        return it != lines.end() ? it->second : 0;
    }
};

// Source positions are kept outside RunConfig so that it stays a plain value
// type; they are recomputed from the file on demand.
Positions positions_of(const std::string& path) {
    Positions p;
    std::ifstream in(path);
    if (!in) return p;
    std::stringstream ss;
    ss << in.rdbuf();
    toml::table parsed;
    try {
        parsed = toml::parse(ss.str(), path);
    } catch (const toml::parse_error&) {
        return p;
    }
    for (const auto& [sk, sv] : parsed) {
        const std::string section(sk.str());
        p.lines[section] = line_of(sv);
        if (const auto* t = sv.as_table()) {
            for (const auto& [k, v] : *t) p.lines[section + "." + std::string(k.str())] = line_of(v);
        }
    }
    return p;
}

[[noreturn]] void rethrow_positioned(const std::exception& e, const std::string& section,
                                     const RunConfig& cfg) {
    const std::string field = field_in_message(e.what(), section);
    throw ConfigError(e.what(), field, positions_of(cfg.path).line(field));
}

}  // namespace

RunConfig parse_config(const std::string& text, const std::string& source_name) {
    toml::table root;
    try {
        root = toml::parse(text, source_name);
    } catch (const toml::parse_error& e) {
        std::ostringstream os;
        os << "TOML syntax error: " << e.description();
        throw ConfigError(os.str(), "", static_cast<int>(e.source().begin.line));
    }

    for (const auto& [k, v] : root) {
        const std::string key(k.str());
        if (key != "optical" && key != "spectrum" && key != "evolution" && key != "output") {
            throw ConfigError("unknown section '" + key + "'", key, line_of(v));
        }
    }

    RunConfig cfg;
    cfg.path = source_name;
    if (const auto* t = section_table(root, "optical")) {
        Section s(*t, "optical");
        cfg.optical = parse_optical(s);
        s.reject_unknown();
    }
    if (const auto* t = section_table(root, "spectrum")) {
        Section s(*t, "spectrum");
        cfg.spectrum = parse_spectrum(s);
        s.reject_unknown();
    }
    if (const auto* t = section_table(root, "evolution")) {
        Section s(*t, "evolution");
        cfg.evolution = parse_evolution(s);
        s.reject_unknown();
    }
    if (const auto* t = section_table(root, "output")) {
        Section s(*t, "output");
        s.read("dir", cfg.output.dir);
        s.read("normalized_units", cfg.output.normalized_units);
        s.reject_unknown();
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file '" + path + "'", "", 0);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), path);
}

std::vector<std::string> check_optical(const RunConfig& cfg) {
    if (!cfg.optical) throw ConfigError("missing [optical] section", "optical", 0);
    try {
        return validate(*cfg.optical);
    } catch (const DomainError& e) {
        rethrow_positioned(e, "optical", cfg);
    }
}

SpectrumRequest resolve_spectrum(const RunConfig& cfg) {
    if (!cfg.spectrum) throw ConfigError("missing [spectrum] section", "spectrum", 0);
    const SpectrumConfig& sc = *cfg.spectrum;
    SpectrumRequest req = sc.request;
    if (sc.source == SpectrumSource::sectors) {
        try {
            req.lutt = luttinger_from_sectors(sc.u_charge, sc.u_spin, sc.k_charge, sc.k_spin);
        } catch (const DomainError& e) {
            const Positions p = positions_of(cfg.path);
            throw ConfigError(e.what(), "spectrum.u_charge", p.line("spectrum.u_charge"));
        }
    } else {
        check_optical(cfg);
        const RegimeReport rep = check_repulsive(*cfg.optical);
        if (!*rep.repulsive) {
            std::string msg = "optical parameters outside the repulsive regime";
            for (const auto& m : rep.messages) msg += "; " + m;
            throw RegimeError(msg);
        }
        req.lutt = derive_luttinger(derive_effective(*cfg.optical));
        if (cfg.output.normalized_units) req.lutt = normalized_to_charge_velocity(req.lutt);
    }
    try {
        validate(req);
    } catch (const DomainError& e) {
        rethrow_positioned(e, "spectrum", cfg);
    }
    return req;
}

EvolutionSetup resolve_evolution(const RunConfig& cfg) {
    if (!cfg.evolution) throw ConfigError("missing [evolution] section", "evolution", 0);
    const EvolutionConfig& ec = *cfg.evolution;
    EvolutionSetup setup;

    EffectiveLiebLiniger eff;
    if (ec.coupling == CouplingSource::optical) {
        setup.warnings = check_optical(cfg);
        eff = derive_effective(*cfg.optical);
    } else {
        const Positions p = positions_of(cfg.path);
        const auto need = [&](double v, const char* key, bool positive) {
            if (!std::isfinite(v) || (positive ? !(v > 0.0) : false)) {
                std::ostringstream os;
                os << "evolution." << key << " must be finite" << (positive ? " and > 0" : "");
                throw ConfigError(os.str(), std::string("evolution.") + key,
                                  p.line(std::string("evolution.") + key));
            }
        };
        need(ec.mass, "mass", false);
        need(ec.chi, "chi", false);
        need(ec.cross, "cross", false);
        need(ec.density, "density", true);
        if (ec.mass == 0.0)
            throw ConfigError("evolution.mass must be nonzero", "evolution.mass",
                              p.line("evolution.mass"));
        eff.mass_up = eff.mass_down = ec.mass;
        eff.chi_up = eff.chi_down = ec.chi;
        eff.cross_up = eff.cross_down = ec.cross;
        eff.chi_cross = 2.0 * ec.cross;
        eff.density_up = eff.density_down = ec.density;
    }

    try {
        setup.initial = init_state(eff.density_up, eff.density_down, ec.perturbation,
                                   ec.grid_points, ec.box_length);
        if (auto w = linear_response_warning(eff.density_up, eff.density_down, ec.perturbation))
            setup.warnings.push_back(*w);
        setup.spec.dt = ec.dt;
        setup.spec.steps = ec.steps;
        setup.spec.record_every = ec.record_every;
        setup.spec.eff = eff;
        validate(setup.spec, setup.initial);
    } catch (const DomainError& e) {
        rethrow_positioned(e, "evolution", cfg);
    } catch (const StabilityError& e) {
        const Positions p = positions_of(cfg.path);
        throw ConfigError(e.what(), "evolution.dt", p.line("evolution.dt"));
    }
    return setup;
}

}  // namespace scsep
