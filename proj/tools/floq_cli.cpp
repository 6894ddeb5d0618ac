// floq — quasienergy spectra and time-averaged populations of strongly driven
// two- and three-level systems: exact Floquet solves, square-wave propagation,
// and GRWA/GVV analytics, with figure-reproduction presets.
//
// All frequencies on the command line are dimensionless ratios over the
// modulation frequency omega = 2*pi/tau (omega = 1 internally).

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "floq/floq.hpp"

namespace {

struct CliOptions {
    floq::SweepSpec sweep;
    std::string system = "three_level";
    std::string swept = "delta";
    std::string methods = "floquet";
    double omega_p = 0.12;
    double omega_c = 3.0;
    double delta = 0.0;
    double epsilon0 = 0.0;
    double amplitude = 5.0;
    double delta2l = 0.1;
    int q_max = 20;
};

floq::SweepSpec build_spec(const CliOptions& o) {
    floq::SweepSpec s = o.sweep;
    s.system = o.system == "two_level" ? floq::SystemKind::two_level : floq::SystemKind::three_level;
    s.swept = o.swept == "delta"       ? floq::SweptParameter::delta
              : o.swept == "omega_c"   ? floq::SweptParameter::omega_c
              : o.swept == "epsilon_0" ? floq::SweptParameter::epsilon_0
                                       : floq::SweptParameter::two_d_map;
    s.fixed3.omega_p = o.omega_p;
    s.fixed3.omega_c = o.omega_c;
    s.fixed3.delta = o.delta;
    s.fixed3.q_max = o.q_max;
    s.fixed2.epsilon_0 = o.epsilon0;
    s.fixed2.amplitude = o.amplitude;
    s.fixed2.delta = o.delta2l;

    s.methods.clear();
    std::stringstream ss(o.methods);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok == "floquet") s.methods.push_back(floq::Method::floquet);
        else if (tok == "grwa") s.methods.push_back(floq::Method::grwa);
        else if (tok == "gvv") s.methods.push_back(floq::Method::gvv);
        else if (tok == "oracle") s.methods.push_back(floq::Method::oracle);
        else if (tok == "quasienergies") s.with_quasienergies = true;
        else throw CLI::ValidationError("--methods", "unknown method '" + tok + "'");
    }
    if (s.methods.empty() && !s.with_quasienergies)
        throw CLI::ValidationError("--methods", "at least one method required");
    if (s.methods.empty()) s.methods.push_back(floq::Method::floquet);
    return s;
}

void add_common_options(CLI::App* cmd, CliOptions& o) {
    cmd->add_option("--system", o.system, "two_level or three_level")
        ->check(CLI::IsMember({"two_level", "three_level"}));
    cmd->add_option("--min", o.sweep.min, "sweep lower bound (units of omega)");
    cmd->add_option("--max", o.sweep.max, "sweep upper bound (units of omega)");
    cmd->add_option("--steps", o.sweep.steps, "sweep points");
    cmd->add_option("--omega-p", o.omega_p, "probe Rabi frequency / omega");
    cmd->add_option("--omega-c", o.omega_c, "control Rabi frequency / omega");
    cmd->add_option("--delta", o.delta, "probe detuning / omega (three-level)");
    cmd->add_option("--epsilon0", o.epsilon0, "dc bias / omega (two-level)");
    cmd->add_option("--amplitude", o.amplitude, "modulation amplitude / omega (two-level)");
    cmd->add_option("--delta2l", o.delta2l, "level splitting / omega (two-level)");
    cmd->add_option("--nc", o.sweep.n_c, "Floquet photon-block cutoff");
    cmd->add_option("--qmax", o.q_max, "retained square-wave harmonics");
    cmd->add_option("--window", o.sweep.n_window, "analytic summation window");
    cmd->add_option("--methods", o.methods, "comma list: floquet,grwa,gvv,oracle,quasienergies");
    cmd->add_option("--oracle-periods", o.sweep.oracle_periods, "propagation periods for the oracle");
    cmd->add_option("--jobs", o.sweep.jobs, "worker threads (0 = logical cores)");
    cmd->add_option("--output", o.sweep.output, "CSV output path");
    cmd->add_flag("--strict", o.sweep.strict, "exit nonzero when any sweep point fails");
    cmd->set_config("--config", "", "flat key=value config file; flags win");
}

int report(const floq::SweepOutcome& out, bool strict) {
    std::cout << out.csv_path << ": " << out.rows.size() << " rows";
    if (out.failures) std::cout << ", " << out.failures << " failed points";
    std::cout << "\n";
    return (strict && out.failures > 0) ? 1 : 0;
}

int run_compare(floq::SweepSpec spec) {
    const auto res = floq::compare(std::move(spec));
    nlohmann::ordered_json stats;
    for (const auto& d : res.deviations) {
        std::printf("%-8s max-abs %.6f  L2 %.6f\n", floq::to_string(d.method).c_str(), d.max_abs, d.l2);
        stats[floq::to_string(d.method)] = {{"max_abs", d.max_abs}, {"l2", d.l2}};
    }
    std::ofstream os(res.sweep.csv_path + ".stats.json", std::ios::binary);
    os << stats.dump(2) << "\n";
    return report(res.sweep, spec.strict);
}

// ------------------------------- presets ------------------------------------

struct PresetOverrides {
    int steps = -1;
    int n_c = -1;
    int q_max = -1;
    unsigned jobs = 0;
    std::string output;
};

floq::SweepSpec preset_base() {
    floq::SweepSpec s;
    s.fixed3 = {0.12, 3.0, 0.0, 2.0 * std::numbers::pi, 20};
    s.n_c = 40;
    return s;
}

int run_preset(const std::string& name, const PresetOverrides& ov) {
    auto apply = [&](floq::SweepSpec s, const std::string& def_out) {
        if (ov.steps > 0) s.steps = ov.steps;
        if (ov.n_c > 0) s.n_c = ov.n_c;
        if (ov.q_max > 0) s.fixed3.q_max = ov.q_max;
        s.jobs = ov.jobs;
        s.output = ov.output.empty() ? def_out : ov.output;
        return s;
    };

    if (name == "fig2" || name == "fig3") {
        floq::CoefficientSpec c;
        c.fixed = preset_base().fixed3;
        if (ov.q_max > 0) c.fixed.q_max = ov.q_max;
        if (ov.steps > 0) c.steps = ov.steps;
        c.with_shifts = (name == "fig3");
        c.jobs = ov.jobs;
        c.output = ov.output.empty() ? name + ".csv" : ov.output;
        return report(floq::run_coefficients(c), false);
    }
    if (name == "fig4") {
        floq::SweepSpec s = apply(preset_base(), "fig4.csv");
        s.swept = floq::SweptParameter::two_d_map;
        s.min = -4.0; s.max = 4.0;
        if (ov.steps <= 0) s.steps = 161;
        s.min2 = 0.0; s.max2 = 12.0; s.steps2 = 61;
        s.methods = {floq::Method::floquet};
        return report(floq::run_sweep(s), false);
    }
    if (name == "fig5" || name == "fig5a") {
        floq::SweepSpec s = apply(preset_base(), "fig5.csv");
        s.min = -4.0; s.max = 4.0;
        if (ov.steps <= 0) s.steps = 801;
        s.methods = {floq::Method::floquet};
        s.with_quasienergies = true;
        return report(floq::run_sweep(s), false);
    }
    if (name == "fig6" || name == "fig6a" || name == "fig6b") {
        int rc = 0;
        const auto variants = name == "fig6" ? std::vector<std::string>{"fig6a", "fig6b"}
                                             : std::vector<std::string>{name};
        for (const std::string& one : variants) {
            floq::SweepSpec s = apply(preset_base(), one + ".csv");
            s.min = -4.0; s.max = 4.0;
            if (ov.steps <= 0) s.steps = 321;
            s.fixed3.omega_c = (one == "fig6b") ? 9.5 : 3.0;
            s.methods = {floq::Method::floquet, floq::Method::grwa, floq::Method::gvv};
            if (name == "fig6" && !ov.output.empty()) s.output = one + "_" + ov.output;
            rc |= run_compare(s);
        }
        return rc;
    }
    if (name == "fig7") {
        floq::SweepSpec s = apply(preset_base(), "fig7.csv");
        s.swept = floq::SweptParameter::omega_c;
        s.min = 0.0; s.max = 12.0;
        if (ov.steps <= 0) s.steps = 241;
        s.fixed3.delta = 0.25;
        s.methods = {floq::Method::floquet, floq::Method::grwa, floq::Method::gvv};
        return run_compare(s);
    }
    if (name == "fig8") {
        floq::SweepSpec s = apply(preset_base(), "fig8.csv");
        s.min = -4.0; s.max = 4.0;
        if (ov.steps <= 0) s.steps = 321;
        s.fixed3.omega_p = 0.5;
        s.methods = {floq::Method::floquet, floq::Method::grwa, floq::Method::gvv};
        return run_compare(s);
    }
    std::cerr << "unknown preset '" << name << "'\n";
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Floquet spectra and analytics for strongly driven few-level systems"};
    app.require_subcommand(0, 1);

    CliOptions sweep_o, map_o, quasi_o, coeff_o, two_o, cmp_o;
    std::string preset_name, preset_flag, rerun_path;
    PresetOverrides ov;

    auto* sweep = app.add_subcommand("sweep", "1-D parameter sweep");
    sweep->add_option("--sweep", sweep_o.swept, "delta, omega_c or epsilon_0")
        ->check(CLI::IsMember({"delta", "omega_c", "epsilon_0"}));
    add_common_options(sweep, sweep_o);

    auto* map2d = app.add_subcommand("map2d", "2-D map over (delta, omega_c)");
    map2d->add_option("--min2", map_o.sweep.min2, "omega_c lower bound");
    map2d->add_option("--max2", map_o.sweep.max2, "omega_c upper bound");
    map2d->add_option("--steps2", map_o.sweep.steps2, "omega_c points");
    add_common_options(map2d, map_o);
    map_o.swept = "two_d_map";
    map_o.sweep.output = "map2d.csv";

    auto* quasi = app.add_subcommand("quasienergies", "quasienergy fan along a delta sweep");
    add_common_options(quasi, quasi_o);
    quasi_o.methods = "floquet,quasienergies";
    quasi_o.sweep.output = "quasienergies.csv";

    floq::CoefficientSpec coeff;
    auto* coeffs = app.add_subcommand("coefficients", "effective couplings and GVV shifts vs omega_c");
    coeffs->add_option("--min", coeff.min, "omega_c/omega lower bound");
    coeffs->add_option("--max", coeff.max, "omega_c/omega upper bound");
    coeffs->add_option("--steps", coeff.steps, "points");
    coeffs->add_option("--omega-p", coeff_o.omega_p, "probe Rabi frequency / omega");
    coeffs->add_option("--qmax", coeff_o.q_max, "retained square-wave harmonics");
    coeffs->add_option("--nmin", coeff.index_min, "lowest photon index");
    coeffs->add_option("--nmax", coeff.index_max, "highest photon index");
    coeffs->add_option("--table-size", coeff.table_size, "coupling table half-width");
    auto* shifts_flag = coeffs->add_flag("--shifts,!--no-shifts", coeff.with_shifts,
                                         "include second-order shift columns");
    (void)shifts_flag;
    coeffs->add_option("--jobs", coeff.jobs, "worker threads");
    coeffs->add_option("--output", coeff.output, "CSV output path");

    auto* two = app.add_subcommand("two-level", "two-level sweep (epsilon_0 by default)");
    two->add_option("--sweep", two_o.swept, "epsilon_0 or delta")
        ->check(CLI::IsMember({"epsilon_0", "delta"}));
    add_common_options(two, two_o);
    two_o.system = "two_level";
    two_o.swept = "epsilon_0";
    two_o.methods = "floquet,grwa";
    two_o.sweep.min = 0.0;
    two_o.sweep.max = 4.0;
    two_o.sweep.steps = 161;
    two_o.sweep.output = "two_level.csv";

    auto* cmp = app.add_subcommand("compare", "per-method deviation statistics vs the Floquet reference");
    cmp->add_option("--sweep", cmp_o.swept, "delta, omega_c or epsilon_0")
        ->check(CLI::IsMember({"delta", "omega_c", "epsilon_0"}));
    add_common_options(cmp, cmp_o);
    cmp_o.methods = "floquet,grwa,gvv";
    cmp_o.sweep.output = "compare.csv";

    auto* preset = app.add_subcommand("preset", "figure-reproduction presets fig2..fig8");
    preset->add_option("name", preset_name, "fig2|fig3|fig4|fig5|fig6|fig6a|fig6b|fig7|fig8")
        ->required();
    preset->add_option("--steps", ov.steps, "override sweep points");
    preset->add_option("--nc", ov.n_c, "override Floquet cutoff");
    preset->add_option("--qmax", ov.q_max, "override harmonic count");
    preset->add_option("--jobs", ov.jobs, "worker threads");
    preset->add_option("--output", ov.output, "override CSV output path");

    auto* rerun = app.add_subcommand("rerun", "reproduce a sweep from its JSON sidecar");
    rerun->add_option("sidecar", rerun_path, "path to a .meta.json sidecar")->required();

    app.add_option("--preset", preset_flag, "run a figure preset (same as the preset subcommand)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        if (*sweep) return report(floq::run_sweep(build_spec(sweep_o)), sweep_o.sweep.strict);
        if (*map2d) return report(floq::run_sweep(build_spec(map_o)), map_o.sweep.strict);
        if (*quasi) return report(floq::run_sweep(build_spec(quasi_o)), quasi_o.sweep.strict);
        if (*coeffs) {
            coeff.fixed.omega_p = coeff_o.omega_p;
            coeff.fixed.q_max = coeff_o.q_max;
            return report(floq::run_coefficients(coeff), false);
        }
        if (*two) return report(floq::run_sweep(build_spec(two_o)), two_o.sweep.strict);
        if (*cmp) return run_compare(build_spec(cmp_o));
        if (*preset) return run_preset(preset_name, ov);
        if (*rerun) {
            std::ifstream is(rerun_path);
            if (!is) {
                std::cerr << "cannot open sidecar " << rerun_path << "\n";
                return 2;
            }
            nlohmann::json j;
            is >> j;
            const auto spec = floq::sweep_spec_from_json(j);
            return report(floq::run_sweep(spec), spec.strict);
        }
        if (!preset_flag.empty()) return run_preset(preset_flag, ov);
        std::cout << app.help();
        return 0;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return 2;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
