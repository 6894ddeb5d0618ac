// sweep.hpp — parameter sweeps over the driven systems with deterministic CSV
// output and a JSON metadata sidecar that is sufficient to reproduce the run.

#pragma once

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "floq/drive.hpp"
#include "floq/dut.hpp"
#include "floq/floquet.hpp"
#include "floq/gvv.hpp"
#include "floq/parallel.hpp"
#include "floq/propagate.hpp"

namespace floq {

inline const char* version() { return "1.2.0"; }

enum class SystemKind { two_level, three_level };
enum class SweptParameter { delta, omega_c, epsilon_0, two_d_map };
enum class Method { floquet, grwa, gvv, oracle };

inline std::string to_string(SystemKind s) {
    return s == SystemKind::two_level ? "two_level" : "three_level";
}
inline std::string to_string(SweptParameter p) {
    switch (p) {
        case SweptParameter::delta: return "delta";
        case SweptParameter::omega_c: return "omega_c";
        case SweptParameter::epsilon_0: return "epsilon_0";
        default: return "two_d_map";
    }
}
inline std::string to_string(Method m) {
    switch (m) {
        case Method::floquet: return "floquet";
        case Method::grwa: return "grwa";
        case Method::gvv: return "gvv";
        default: return "oracle";
    }
}

struct SweepSpec {
    SystemKind system = SystemKind::three_level;
    SweptParameter swept = SweptParameter::delta;
    double min = -4.0;
    double max = 4.0;
    int steps = 161;
    // secondary axis (omega_c) for two_d_map
    double min2 = 0.0;
    double max2 = 12.0;
    int steps2 = 49;

    DriveSpec3L fixed3;   // swept field overridden per point
    DriveSpec2L fixed2;

    std::vector<Method> methods{Method::floquet};
    bool with_quasienergies = false;

    int n_c = 40;
    int n_window = 12;
    int oracle_periods = 2000;
    unsigned jobs = 0;  // 0: hardware concurrency
    bool strict = false;
    std::string output = "sweep.csv";

    void validate() const {
        if (steps < 1) throw std::invalid_argument("SweepSpec: steps must be >= 1");
        if (!(min <= max)) throw std::invalid_argument("SweepSpec: min must be <= max");
        if (methods.empty()) throw std::invalid_argument("SweepSpec: at least one method");
        if (swept == SweptParameter::two_d_map) {
            if (steps2 < 1) throw std::invalid_argument("SweepSpec: steps2 must be >= 1");
            if (!(min2 <= max2)) throw std::invalid_argument("SweepSpec: min2 must be <= max2");
        }
        if (system == SystemKind::two_level && swept != SweptParameter::epsilon_0 &&
            swept != SweptParameter::delta)
            throw std::invalid_argument("SweepSpec: two-level sweeps run over epsilon_0 or delta");
        if (system == SystemKind::three_level && swept == SweptParameter::epsilon_0)
            throw std::invalid_argument("SweepSpec: epsilon_0 is a two-level parameter");
    }
};

struct SweepOutcome {
    std::string csv_path;
    std::string meta_path;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;  // kept for compare/tests
    int failures = 0;
};

namespace detail {

// Round-trip float formatting; fixed width-independent representation keeps
// CSV output byte-identical across runs and worker counts.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline double grid_value(double lo, double hi, int steps, int i) {
    if (steps == 1) return lo;
    return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
}

inline nlohmann::ordered_json spec3_json(const DriveSpec3L& s) {
    return {{"omega_p", s.omega_p}, {"omega_c", s.omega_c}, {"delta", s.delta},
            {"tau", s.tau},         {"q_max", s.q_max}};
}
inline nlohmann::ordered_json spec2_json(const DriveSpec2L& s) {
    return {{"epsilon_0", s.epsilon_0}, {"amplitude", s.amplitude}, {"omega", s.omega},
            {"delta", s.delta}};
}

inline void write_csv(const std::string& path, const std::vector<std::string>& columns,
                      const std::vector<std::vector<double>>& rows) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file: " + path);
    for (std::size_t c = 0; c < columns.size(); ++c) os << (c ? "," : "") << columns[c];
    os << "\n";
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << format_double(row[c]);
        os << "\n";
    }
}

}  // namespace detail

inline nlohmann::ordered_json sweep_spec_to_json(const SweepSpec& spec) {
    nlohmann::ordered_json j;
    j["tool"] = "floq";
    j["version"] = version();
    j["system"] = to_string(spec.system);
    j["swept"] = to_string(spec.swept);
    j["min"] = spec.min;
    j["max"] = spec.max;
    j["steps"] = spec.steps;
    if (spec.swept == SweptParameter::two_d_map) {
        j["min2"] = spec.min2;
        j["max2"] = spec.max2;
        j["steps2"] = spec.steps2;
    }
    j["three_level"] = detail::spec3_json(spec.fixed3);
    j["two_level"] = detail::spec2_json(spec.fixed2);
    std::vector<std::string> ms;
    for (auto m : spec.methods) ms.push_back(to_string(m));
    j["methods"] = ms;
    j["with_quasienergies"] = spec.with_quasienergies;
    j["n_c"] = spec.n_c;
    j["n_window"] = spec.n_window;
    j["oracle_periods"] = spec.oracle_periods;
    j["strict"] = spec.strict;
    j["output"] = spec.output;
    return j;
}

inline SweepSpec sweep_spec_from_json(const nlohmann::json& j) {
    SweepSpec s;
    const std::string sys = j.at("system");
    s.system = sys == "two_level" ? SystemKind::two_level : SystemKind::three_level;
    const std::string sw = j.at("swept");
    s.swept = sw == "delta"       ? SweptParameter::delta
              : sw == "omega_c"   ? SweptParameter::omega_c
              : sw == "epsilon_0" ? SweptParameter::epsilon_0
                                  : SweptParameter::two_d_map;
    s.min = j.at("min");
    s.max = j.at("max");
    s.steps = j.at("steps");
    if (s.swept == SweptParameter::two_d_map) {
        s.min2 = j.at("min2");
        s.max2 = j.at("max2");
        s.steps2 = j.at("steps2");
    }
    const auto& t3 = j.at("three_level");
    s.fixed3 = {t3.at("omega_p"), t3.at("omega_c"), t3.at("delta"), t3.at("tau"), t3.at("q_max")};
    const auto& t2 = j.at("two_level");
    s.fixed2 = {t2.at("epsilon_0"), t2.at("amplitude"), t2.at("omega"), t2.at("delta")};
    s.methods.clear();
    for (const auto& m : j.at("methods")) {
        const std::string name = m;
        s.methods.push_back(name == "floquet" ? Method::floquet
                            : name == "grwa"  ? Method::grwa
                            : name == "gvv"   ? Method::gvv
                                              : Method::oracle);
    }
    s.with_quasienergies = j.at("with_quasienergies");
    s.n_c = j.at("n_c");
    s.n_window = j.at("n_window");
    s.oracle_periods = j.at("oracle_periods");
    s.strict = j.at("strict");
    s.output = j.at("output");
    return s;
}

namespace detail {

struct PointTask {
    double p1 = 0.0;  // swept value (delta, omega_c or epsilon_0, angular units)
    double p2 = 0.0;  // omega_c for 2-D maps
};

inline std::vector<std::string> column_names(const SweepSpec& spec) {
    std::vector<std::string> cols;
    const double w3 = spec.fixed3.omega();
    (void)w3;
    if (spec.swept == SweptParameter::two_d_map) {
        cols.push_back("delta_over_omega");
        cols.push_back("omega_c_over_omega");
    } else if (spec.system == SystemKind::two_level) {
        cols.push_back(spec.swept == SweptParameter::delta ? "delta_over_omega"
                                                           : "epsilon0_over_omega");
    } else {
        cols.push_back(spec.swept == SweptParameter::delta ? "delta_over_omega"
                                                           : "omega_c_over_omega");
    }
    for (auto m : spec.methods) {
        const std::string name = to_string(m);
        if (spec.system == SystemKind::three_level &&
            (m == Method::floquet || m == Method::oracle)) {
            cols.push_back(name + "_rho00");
            cols.push_back(name + "_rho11");
            cols.push_back(name + "_rho22");
        } else if (spec.system == SystemKind::two_level &&
                   (m == Method::floquet || m == Method::oracle)) {
            cols.push_back(name + "_rho00");
            cols.push_back(name + "_rho11");
        } else {
            cols.push_back(name + "_rho11");
        }
    }
    if (spec.with_quasienergies) {
        const int dim = spec.system == SystemKind::two_level ? 2 : 3;
        const int nq = dim * (2 * spec.n_c + 1);
        for (int i = 0; i < nq; ++i) {
            char buf[16];
            std::snprintf(buf, sizeof(buf), "q%03d", i);
            cols.emplace_back(buf);
        }
    }
    return cols;
}

inline std::vector<double> evaluate_point_3l(const SweepSpec& spec, const PointTask& task) {
    DriveSpec3L p = spec.fixed3;
    if (spec.swept == SweptParameter::delta)
        p.delta = task.p1;
    else if (spec.swept == SweptParameter::omega_c)
        p.omega_c = task.p1;
    else {
        p.delta = task.p1;
        p.omega_c = task.p2;
    }
    const double w = p.omega();

    std::vector<double> row;
    row.push_back(task.p1 / w);
    if (spec.swept == SweptParameter::two_d_map) row.push_back(task.p2 / w);

    std::optional<QuasiSpectrum> qs;
    std::optional<CouplingTable> table;
    auto spectrum = [&]() -> const QuasiSpectrum& {
        if (!qs) qs = diagonalize(build_floquet_matrix(build_hamiltonian_3l(p), {spec.n_c}));
        return *qs;
    };
    auto couplings = [&]() -> const CouplingTable& {
        if (!table) table = coupling_table(p, spec.n_window + 8, CouplingMethod::fft_oracle);
        return *table;
    };

    for (auto m : spec.methods) {
        switch (m) {
            case Method::floquet: {
                const Eigen::VectorXd t = transition_probabilities(spectrum(), 0);
                row.push_back(t(0));
                row.push_back(t(1));
                row.push_back(t(2));
                break;
            }
            case Method::grwa:
                row.push_back(rho11_analytic(p, EffectiveKind::GRWA, couplings(), {spec.n_window, 8}));
                break;
            case Method::gvv:
                row.push_back(rho11_analytic(p, EffectiveKind::GVV, couplings(), {spec.n_window, 8}));
                break;
            case Method::oracle: {
                const auto prop = propagate_square_wave(p, spec.oracle_periods);
                row.push_back(prop.long_time_average(0));
                row.push_back(prop.long_time_average(1));
                row.push_back(prop.long_time_average(2));
                break;
            }
        }
    }
    if (spec.with_quasienergies) {
        const auto& e = spectrum().eigenvalues;
        for (Eigen::Index i = 0; i < e.size(); ++i) row.push_back(e(i));
    }
    return row;
}

inline int bessel_window(const DriveSpec2L& p) {
    return std::max(8, static_cast<int>(std::ceil(p.amplitude / p.omega)) + 12);
}

inline std::vector<double> evaluate_point_2l(const SweepSpec& spec, const PointTask& task) {
    DriveSpec2L p = spec.fixed2;
    if (spec.swept == SweptParameter::epsilon_0)
        p.epsilon_0 = task.p1;
    else
        p.delta = task.p1;

    std::vector<double> row;
    row.push_back(task.p1 / p.omega);

    // The measured two-level populations live in the frame where the strong
    // drive is longitudinal; Floquet and oracle both run on transformed_h1.
    std::optional<DutResult> dut;
    std::optional<QuasiSpectrum> qs;
    auto transformed = [&]() -> const DutResult& {
        if (!dut) dut = dut_two_level(p, bessel_window(p));
        return *dut;
    };
    auto spectrum = [&]() -> const QuasiSpectrum& {
        if (!qs) qs = diagonalize(build_floquet_matrix(transformed().transformed_h1, {spec.n_c}));
        return *qs;
    };

    for (auto m : spec.methods) {
        switch (m) {
            case Method::floquet: {
                const Eigen::VectorXd t = transition_probabilities(spectrum(), 0);
                row.push_back(t(0));
                row.push_back(t(1));
                break;
            }
            case Method::grwa:
            case Method::gvv:
                row.push_back(rho11_two_level(p, spec.n_window));
                break;
            case Method::oracle: {
                const auto prop = propagate_fourier(transformed().transformed_h1,
                                                    spec.oracle_periods * p.tau(), {256});
                row.push_back(prop.long_time_average(0));
                row.push_back(prop.long_time_average(1));
                break;
            }
        }
    }
    if (spec.with_quasienergies) {
        const auto& e = spectrum().eigenvalues;
        for (Eigen::Index i = 0; i < e.size(); ++i) row.push_back(e(i));
    }
    return row;
}

}  // namespace detail

// Runs the sweep, writes CSV + JSON sidecar, returns the table. Numeric
// failures mark the affected row NaN and are reported on stderr.
inline SweepOutcome run_sweep(const SweepSpec& spec) {
    spec.validate();
    if (spec.system == SystemKind::three_level) spec.fixed3.validate();
    else spec.fixed2.validate();

    std::vector<detail::PointTask> tasks;
    if (spec.swept == SweptParameter::two_d_map) {
        const double w = spec.fixed3.omega();
        tasks.reserve(static_cast<std::size_t>(spec.steps) * spec.steps2);
        for (int j = 0; j < spec.steps2; ++j)
            for (int i = 0; i < spec.steps; ++i)
                tasks.push_back({detail::grid_value(spec.min, spec.max, spec.steps, i) * w,
                                 detail::grid_value(spec.min2, spec.max2, spec.steps2, j) * w});
    } else {
        const double w = spec.system == SystemKind::two_level ? spec.fixed2.omega
                                                              : spec.fixed3.omega();
        tasks.reserve(static_cast<std::size_t>(spec.steps));
        for (int i = 0; i < spec.steps; ++i)
            tasks.push_back({detail::grid_value(spec.min, spec.max, spec.steps, i) * w, 0.0});
    }

    SweepOutcome out;
    out.columns = detail::column_names(spec);
    out.rows.assign(tasks.size(), {});
    std::vector<std::string> warnings(tasks.size());

    parallel_for_index(tasks.size(), spec.jobs, [&](std::size_t i) {
        try {
            out.rows[i] = spec.system == SystemKind::three_level
                              ? detail::evaluate_point_3l(spec, tasks[i])
                              : detail::evaluate_point_2l(spec, tasks[i]);
        } catch (const NumericFailure& e) {
            const double w = spec.system == SystemKind::two_level ? spec.fixed2.omega
                                                                  : spec.fixed3.omega();
            std::vector<double> row(out.columns.size(), std::numeric_limits<double>::quiet_NaN());
            row[0] = tasks[i].p1 / w;
            if (spec.swept == SweptParameter::two_d_map) row[1] = tasks[i].p2 / w;
            out.rows[i] = std::move(row);
            warnings[i] = e.what();
        }
    });

    int failures = 0;
    for (std::size_t i = 0; i < warnings.size(); ++i) {
        if (!warnings[i].empty()) {
            ++failures;
            std::cerr << "warning: point " << i << " failed: " << warnings[i] << "\n";
        }
    }
    out.failures = failures;

    detail::write_csv(spec.output, out.columns, out.rows);
    out.csv_path = spec.output;
    out.meta_path = spec.output + ".meta.json";
    nlohmann::ordered_json meta = sweep_spec_to_json(spec);
    meta["columns"] = out.columns;
    meta["rows"] = out.rows.size();
    meta["failures"] = failures;
    std::ofstream ms(out.meta_path, std::ios::binary);
    if (!ms) throw std::runtime_error("cannot open sidecar: " + out.meta_path);
    ms << meta.dump(2) << "\n";
    return out;
}

struct MethodDeviation {
    Method method;
    double max_abs = 0.0;
    double l2 = 0.0;
};

struct CompareOutcome {
    SweepOutcome sweep;
    std::vector<MethodDeviation> deviations;  // vs the Floquet reference
};

// Per-method deviation statistics of rho11 against the Floquet reference.
inline CompareOutcome compare(SweepSpec spec) {
    bool has_ref = false;
    for (auto m : spec.methods) has_ref |= (m == Method::floquet);
    if (!has_ref) spec.methods.insert(spec.methods.begin(), Method::floquet);
    if (spec.methods.size() < 2)
        throw std::invalid_argument("compare: need at least two methods");

    CompareOutcome out;
    out.sweep = run_sweep(spec);

    auto col_index = [&](const std::string& name) -> std::size_t {
        for (std::size_t c = 0; c < out.sweep.columns.size(); ++c)
            if (out.sweep.columns[c] == name) return c;
        throw std::logic_error("compare: missing column " + name);
    };
    const std::size_t ref = col_index("floquet_rho11");
    for (auto m : spec.methods) {
        if (m == Method::floquet) continue;
        const std::size_t c = col_index(to_string(m) + "_rho11");
        MethodDeviation dev{m, 0.0, 0.0};
        std::size_t count = 0;
        for (const auto& row : out.sweep.rows) {
            if (std::isnan(row[ref]) || std::isnan(row[c])) continue;
            const double d = std::abs(row[c] - row[ref]);
            dev.max_abs = std::max(dev.max_abs, d);
            dev.l2 += d * d;
            ++count;
        }
        dev.l2 = count ? std::sqrt(dev.l2 / static_cast<double>(count)) : 0.0;
        out.deviations.push_back(dev);
    }
    return out;
}

// ------------------------- coefficient/shift tables -------------------------

struct CoefficientSpec {
    DriveSpec3L fixed;        // omega_c swept
    double min = 0.0;         // omega_c/omega range
    double max = 12.0;
    int steps = 121;
    int index_min = -2;
    int index_max = 2;
    bool with_shifts = true;  // delta_P/delta_Q at the two-level resonance conditions
    int table_size = 24;
    unsigned jobs = 0;
    std::string output = "coefficients.csv";
};

// Fig.-2/3-style table: couplings Omega_n^P/Omega_m^Q vs omega_c, plus the
// second-order shifts evaluated on the matching resonance conditions and the
// cross shift delta_PQ where a three-level resonance exists.
inline SweepOutcome run_coefficients(const CoefficientSpec& spec) {
    if (spec.steps < 1) throw std::invalid_argument("run_coefficients: steps must be >= 1");
    if (spec.index_min > spec.index_max)
        throw std::invalid_argument("run_coefficients: bad index range");

    SweepOutcome out;
    out.columns.push_back("omega_c_over_omega");
    for (int n = spec.index_min; n <= spec.index_max; ++n)
        out.columns.push_back("omegaP_n" + std::to_string(n));
    for (int m = spec.index_min; m <= spec.index_max; ++m)
        out.columns.push_back("omegaQ_m" + std::to_string(m));
    if (spec.with_shifts) {
        for (int n = spec.index_min; n <= spec.index_max; ++n)
            out.columns.push_back("deltaP_n" + std::to_string(n));
        for (int m = spec.index_min; m <= spec.index_max; ++m)
            out.columns.push_back("deltaQ_m" + std::to_string(m));
        out.columns.push_back("deltaPQ");
    }

    out.rows.assign(static_cast<std::size_t>(spec.steps), {});
    parallel_for_index(static_cast<std::size_t>(spec.steps), spec.jobs, [&](std::size_t i) {
        DriveSpec3L p = spec.fixed;
        const double w = p.omega();
        const double x = detail::grid_value(spec.min, spec.max, spec.steps, static_cast<int>(i));
        p.omega_c = x * w;

        std::vector<double> row{x};
        const CouplingTable t = coupling_table(p, spec.table_size, CouplingMethod::fft_oracle);
        for (int n = spec.index_min; n <= spec.index_max; ++n) row.push_back(t.P(n));
        for (int m = spec.index_min; m <= spec.index_max; ++m) row.push_back(t.Q(m));
        if (spec.with_shifts) {
            for (int n = spec.index_min; n <= spec.index_max; ++n) {
                DriveSpec3L r = p;
                r.delta = p.omega_c / 4.0 - n * w;  // P-branch two-level resonance
                row.push_back(gvv_shifts(coupling_table(r, spec.table_size), r, n,
                                         static_cast<int>(std::lround(-(r.omega_c / 4.0 + r.delta) / w)))
                                  .delta_P);
            }
            for (int m = spec.index_min; m <= spec.index_max; ++m) {
                DriveSpec3L r = p;
                r.delta = -p.omega_c / 4.0 - m * w;  // Q-branch two-level resonance
                row.push_back(gvv_shifts(coupling_table(r, spec.table_size), r,
                                         static_cast<int>(std::lround((r.omega_c / 4.0 - r.delta) / w)), m)
                                  .delta_Q);
            }
            // delta_PQ only exists where both conditions meet: omega_c/2 = integer*omega.
            const double half = x / 2.0;
            if (std::abs(half - std::lround(half)) < 1e-9) {
                DriveSpec3L r = p;
                const int nm_sum = -static_cast<int>(std::lround(half));
                const int n = 0;
                const int m = nm_sum;  // n + m = -omega_c/(2 omega)
                r.delta = r.omega_c / 4.0 - n * w;
                row.push_back(gvv_shifts(coupling_table(r, spec.table_size), r, n, m).delta_PQ);
            } else {
                row.push_back(std::numeric_limits<double>::quiet_NaN());
            }
        }
        out.rows[i] = std::move(row);
    });

    detail::write_csv(spec.output, out.columns, out.rows);
    out.csv_path = spec.output;
    out.meta_path = spec.output + ".meta.json";
    nlohmann::ordered_json meta;
    meta["tool"] = "floq";
    meta["version"] = version();
    meta["kind"] = "coefficients";
    meta["three_level"] = detail::spec3_json(spec.fixed);
    meta["min"] = spec.min;
    meta["max"] = spec.max;
    meta["steps"] = spec.steps;
    meta["index_min"] = spec.index_min;
    meta["index_max"] = spec.index_max;
    meta["with_shifts"] = spec.with_shifts;
    meta["table_size"] = spec.table_size;
    meta["columns"] = out.columns;
    std::ofstream ms(out.meta_path, std::ios::binary);
    ms << meta.dump(2) << "\n";
    return out;
}

}  // namespace floq
