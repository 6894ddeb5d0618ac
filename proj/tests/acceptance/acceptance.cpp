// Acceptance suite: every release criterion in one binary, one verdict line
// per criterion, nonzero exit if any fails. Tolerances are fixed here, not
// tuned at run time.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "floq/floq.hpp"

using namespace floq;
using namespace std::complex_literals;

namespace {

constexpr double pi = std::numbers::pi;
int g_failures = 0;

void verdict(const char* id, bool pass, const std::string& detail) {
    std::printf("[%s] %s %s\n", pass ? "PASS" : "FAIL", id, detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list args;
    va_start(args, f);
    std::vsnprintf(buf, sizeof(buf), f, args);
    va_end(args);
    return buf;
}

DriveSpec3L spec_at(double omega_p, double x, double delta, int q_max = 20) {
    return {omega_p, x, delta, 2 * pi, q_max};
}

double floquet_rho11(const DriveSpec3L& spec, int n_c = 40) {
    const auto qs = diagonalize(build_floquet_matrix(build_hamiltonian_3l(spec), {n_c}));
    return transition_probability(qs, 0, 1);
}

// Minimal eigenvalue separation of the two quasi-levels carrying the largest
// |<0,0|v>|^2 weight, scanned across a small detuning window.
double anticrossing_gap(double x, double delta_center, double half_window, int points) {
    double best = 1e9;
    for (int i = 0; i < points; ++i) {
        const double d = delta_center - half_window + 2.0 * half_window * i / (points - 1);
        const auto qs = diagonalize(build_floquet_matrix(build_hamiltonian_3l(spec_at(0.12, x, d)), {40}));
        Eigen::VectorXd w = qs.eigenvectors.row(qs.index_of(0, 0)).cwiseAbs2().real();
        Eigen::Index b1, b2;
        w.maxCoeff(&b1);
        w(b1) = 0.0;
        w.maxCoeff(&b2);
        best = std::min(best, std::abs(qs.eigenvalues(b1) - qs.eigenvalues(b2)));
    }
    return best;
}

// --------------------------------------------------------------------------

// Lorentzian peak height 1/4 at two-level resonances away from diffraction
// zeros (omega_p = 0.12, omega_c = 3).
void ac1() {
    const double positions[] = {0.75, -0.75, 0.25, -0.25, 1.75};
    double worst = 0.0;
    double worst_pos = 0.0;
    for (double d0 : positions) {
        double peak = 0.0;  // local max absorbs the small second-order center shift
        for (int i = -6; i <= 6; ++i)
            peak = std::max(peak, floquet_rho11(spec_at(0.12, 3.0, d0 + 0.0025 * i)));
        if (std::abs(peak - 0.25) > worst) {
            worst = std::abs(peak - 0.25);
            worst_pos = d0;
        }
    }
    verdict("AC01", worst <= 0.01,
            fmt("two-level resonance peaks = 1/4 +- 0.01: worst |peak-0.25| = %.4f at delta/omega = %.2f",
                worst, worst_pos));
}

// Triple-resonance height at fringe intersections.
void ac2() {
    double measured = 0.0;
    double where_x = 0.0, where_d = 0.0;
    for (double x0 : {2.0, 6.0}) {
        for (int i = -6; i <= 6; ++i) {
            for (int j = -4; j <= 4; ++j) {
                const double d = 0.5 + 0.01 * i;
                const double x = x0 + 0.02 * j;
                const double r = floquet_rho11(spec_at(0.12, x, d));
                if (r > measured) {
                    measured = r;
                    where_x = x;
                    where_d = d;
                }
            }
        }
    }
    // independent exact route at the intersection center, for context
    const auto prop = propagate_square_wave(spec_at(0.12, 2.0, 0.5), 8000);
    // analytic effective-model bound, for context
    double analytic = 0.0;
    for (int i = -8; i <= 8; ++i) {
        DriveSpec3L s = spec_at(0.12, 2.0 + 0.01 * i, 0.5);
        const auto t = coupling_table(s, 16);
        const auto p = effective_populations(effective_matrix(t, {}, s, 0, -1, EffectiveKind::GRWA));
        analytic = std::max(analytic, 0.5 * (p(1) + p(2)));
    }
    verdict("AC02", std::abs(measured - 1.0 / 3.0) <= 0.02,
            fmt("triple-resonance max Floquet rho11 = 1/3 +- 0.02: measured %.4f at (x=%.2f, d=%.2f); "
                "time-domain oracle at the center gives %.4f; analytic 3x3 max over offsets = %.4f",
                measured, where_x, where_d, prop.long_time_average(1), analytic));
}

// Coherent suppression at delta = +-2 omega across the control range.
void ac3() {
    double worst = 0.0;
    double worst_x = 0.0;
    int checked = 0;
    for (double x = 1.0; x <= 10.0 + 1e-9; x += 0.5) {
        for (double d : {2.0, -2.0}) {
            double dist_p = 1e9, dist_q = 1e9;
            for (int k = -15; k <= 15; ++k) {
                dist_p = std::min(dist_p, std::abs(d - (x / 4.0 - k)));
                dist_q = std::min(dist_q, std::abs(d + (x / 4.0 + k)));
            }
            if (dist_p < 0.05 && dist_q < 0.05) continue;  // fringe intersection exclusion
            const double r = floquet_rho11(spec_at(0.12, x, d));
            ++checked;
            if (r > worst) {
                worst = r;
                worst_x = x;
            }
        }
    }
    verdict("AC03", worst < 0.01,
            fmt("suppression at delta/omega = +-2: worst rho11 = %.5f at omega_c/omega = %.2f (%d points)",
                worst, worst_x, checked));
}

// Analytic-numeric agreement at weak probe for both control strengths.
void ac4() {
    double worst = 0.0;
    std::string at;
    for (double x : {3.0, 9.5}) {
        DriveSpec3L base = spec_at(0.12, x, 0.0);
        const auto table = coupling_table(base, 20);
        for (int i = 0; i <= 160; ++i) {
            DriveSpec3L s = base;
            s.delta = -4.0 + 8.0 * i / 160.0;
            const double exact = floquet_rho11(s);
            for (auto kind : {EffectiveKind::GRWA, EffectiveKind::GVV}) {
                const double dev = std::abs(exact - rho11_analytic(s, kind, table));
                if (dev > worst) {
                    worst = dev;
                    at = fmt("%s at (x=%.1f, d=%.2f)", kind == EffectiveKind::GVV ? "GVV" : "GRWA",
                             x, s.delta);
                }
            }
        }
    }
    verdict("AC04", worst < 0.02,
            fmt("GRWA/GVV vs Floquet, delta in [-4,4], x in {3, 9.5}: max |dev| = %.4f (%s)", worst,
                at.c_str()));
}

// GVV beats GRWA in L2 once the probe is no longer weak.
void ac5() {
    DriveSpec3L base = spec_at(0.5, 3.0, 0.0);
    const auto table = coupling_table(base, 20);
    double l2_gvv = 0.0, l2_grwa = 0.0;
    const int n = 161;
    for (int i = 0; i < n; ++i) {
        DriveSpec3L s = base;
        s.delta = -4.0 + 8.0 * i / (n - 1);
        const double exact = floquet_rho11(s);
        l2_gvv += std::pow(exact - rho11_analytic(s, EffectiveKind::GVV, table), 2);
        l2_grwa += std::pow(exact - rho11_analytic(s, EffectiveKind::GRWA, table), 2);
    }
    l2_gvv = std::sqrt(l2_gvv / n);
    l2_grwa = std::sqrt(l2_grwa / n);
    verdict("AC05", l2_gvv < l2_grwa,
            fmt("omega_p/omega = 0.5: L2(GVV) = %.4f < L2(GRWA) = %.4f", l2_gvv, l2_grwa));
}

// Fringe maxima sit on delta = +-omega_c/4 + k omega.
void ac6() {
    double worst = 0.0;
    std::string at;
    int checked = 0;
    for (double x : {1.5, 3.0, 5.0, 7.0, 9.5}) {
        std::vector<double> loci;
        for (int k = -15; k <= 15; ++k) {
            for (double sgn : {1.0, -1.0}) {
                const double d = sgn * x / 4.0 + k;
                if (d < -3.8 || d > 3.8) continue;
                const double alpha = d * pi / 2.0;
                if (diffraction_function(alpha) < 0.02) continue;  // suppressed: no peak to find
                loci.push_back(d);
            }
        }
        std::sort(loci.begin(), loci.end());
        for (std::size_t i = 0; i < loci.size(); ++i) {
            // overlapping predictions share a maximum; skip the pair
            if (i + 1 < loci.size() && loci[i + 1] - loci[i] < 0.12) {
                ++i;
                continue;
            }
            const double d0 = loci[i];
            double best_r = -1.0, best_d = d0;
            for (int s = -10; s <= 10; ++s) {
                const double d = d0 + 0.005 * s;
                const double r = floquet_rho11(spec_at(0.12, x, d));
                if (r > best_r) {
                    best_r = r;
                    best_d = d;
                }
            }
            ++checked;
            if (std::abs(best_d - d0) > worst) {
                worst = std::abs(best_d - d0);
                at = fmt("x=%.1f, locus %.3f", x, d0);
            }
        }
    }
    verdict("AC06", worst <= 0.03,
            fmt("fringe peaks on delta = +-omega_c/4 + k omega: worst offset %.3f omega (%s; %d loci)",
                worst, at.c_str(), checked));
}

// Translation invariance of the coupling family (ideal-waveform limit).
void ac7() {
    const int q = 128;
    auto table0 = [&](double arg) {
        // negative arguments through the evenness Omega_0(-x) = Omega_0(x)
        return coupling_table(spec_at(0.12, std::abs(arg), 0.0, q), 3);
    };
    double worst = 0.0;
    for (double x = 0.0; x <= 12.0 + 1e-9; x += 0.5) {
        const auto tx = coupling_table(spec_at(0.12, x, 0.0, q), 3);
        for (int n = -2; n <= 2; ++n) {
            worst = std::max(worst, std::abs(tx.P(n) - table0(x - 4.0 * n).P(0)));
            worst = std::max(worst, std::abs(tx.Q(n) - table0(x + 4.0 * n).Q(0)));
        }
    }
    verdict("AC07", worst < 1e-8,
            fmt("translation invariance over x in [0,12], n,m in {-2..2}: worst %.2e", worst));
}

// Nested-Bessel route against the normative FFT definition.
void ac8() {
    double worst = 0.0;
    for (double x = 0.0; x <= 12.0 + 1e-9; x += 1.5) {
        const auto nested = coupling_table(spec_at(0.12, x, 0.0, 5), 10, CouplingMethod::nested_bessel);
        const auto fft = coupling_table(spec_at(0.12, x, 0.0, 5), 10, CouplingMethod::fft_oracle);
        for (int n = -10; n <= 10; ++n) {
            worst = std::max(worst, std::abs(nested.P(n) - fft.P(n)));
            worst = std::max(worst, std::abs(nested.Q(n) - fft.Q(n)));
        }
    }
    verdict("AC08", worst < 1e-8, fmt("nested-Bessel vs FFT couplings, x <= 12: worst %.2e", worst));
}

// Cross-oracle equivalence: exact time-domain averages vs the Floquet solve.
void ac9() {
    std::mt19937 rng(20260810u);
    std::uniform_real_distribution<double> dd(-4.0, 4.0), dx(1.0, 10.0);
    double worst = 0.0;
    std::string at;
    for (int p = 0; p < 20; ++p) {
        const double d = dd(rng), x = dx(rng);
        // High q_max keeps the series model close to the ideal waveform the
        // propagator integrates; 2e4 periods average narrow resonances out.
        DriveSpec3L s = spec_at(0.12, x, d, 48);
        const double fl = floquet_rho11(s, 40);
        const auto prop = propagate_square_wave(s, 20000, 16);
        const double dev = std::abs(fl - prop.long_time_average(1));
        if (dev > worst) {
            worst = dev;
            at = fmt("(x=%.3f, d=%.3f)", x, d);
        }
    }
    verdict("AC09", worst < 1e-3,
            fmt("square-wave propagation vs Floquet rho11 at 20 random points: worst %.2e %s", worst,
                at.c_str()));
}

// Two-level closed form against the transformed-frame Floquet solve, plus the
// Bessel identity behind it.
void ac10() {
    double worst = 0.0;
    for (int i = 0; i <= 80; ++i) {
        DriveSpec2L s{i * 4.0 / 80.0, 5.0, 1.0, 0.1};
        const auto dut = dut_two_level(s, 24);
        const auto qs = diagonalize(build_floquet_matrix(dut.transformed_h1, {40}));
        const double fl = transition_probability(qs, 0, 1);
        worst = std::max(worst, std::abs(fl - rho11_two_level(s, 30)));
    }
    auto fc = fourier_coefficients(
        [](double t) { return std::exp(1i * 5.0 * std::sin(t)); }, 2 * pi, 8192);
    double bessel_worst = 0.0;
    for (int n = -24; n <= 24; ++n)
        bessel_worst = std::max(bessel_worst, std::abs(fc.c(n) - bessel_j(n, 5.0)));
    verdict("AC10", worst < 0.02 && bessel_worst < 1e-10,
            fmt("two-level closed form vs Floquet over eps0 in [0,4]: worst %.4f; Bessel identity "
                "c_n vs J_n(5): %.2e",
                worst, bessel_worst));
}

// Structural invariants of the Floquet machinery.
void ac11() {
    // exact Hermiticity of built matrices
    const auto hf3 = build_floquet_matrix(build_hamiltonian_3l(spec_at(0.12, 3.0, 0.37)), {40});
    const auto hf2 = build_floquet_matrix(build_hamiltonian_2l({1.0, 5.0, 1.0, 0.1}), {40});
    const bool hermitian = (hf3.matrix - hf3.matrix.adjoint()).cwiseAbs().maxCoeff() == 0.0 &&
                           (hf2.matrix - hf2.matrix.adjoint()).cwiseAbs().maxCoeff() == 0.0;

    // completeness of the transition sums at n_c = 40
    double sum_dev = 0.0;
    for (double d : {-1.3, 0.37, 2.6}) {
        const auto qs =
            diagonalize(build_floquet_matrix(build_hamiltonian_3l(spec_at(0.12, 3.0, d)), {40}));
        for (int a = 0; a < 3; ++a)
            sum_dev = std::max(sum_dev, std::abs(transition_probabilities(qs, a).sum() - 1.0));
    }

    // omega-periodicity of interior quasienergies (dominant photon index at
    // least bandwidth+11 blocks away from the truncation edge)
    DriveSpec3L spec = spec_at(0.12, 3.0, 0.37);
    const int n_c = 56;
    const auto qs = diagonalize(build_floquet_matrix(build_hamiltonian_3l(spec), {n_c}));
    const int interior = n_c - (2 * spec.q_max - 1) - 11;
    double period_dev = 0.0;
    int interior_count = 0;
    for (Eigen::Index e = 0; e < qs.eigenvalues.size(); ++e) {
        Eigen::Index r;
        qs.eigenvectors.col(e).cwiseAbs2().maxCoeff(&r);
        if (std::abs(qs.labels[static_cast<std::size_t>(r)].photon) > interior) continue;
        ++interior_count;
        double best = 1e9;
        for (Eigen::Index f = 0; f < qs.eigenvalues.size(); ++f)
            best = std::min(best, std::abs(qs.eigenvalues(f) - qs.eigenvalues(e) - 1.0));
        period_dev = std::max(period_dev, best);
    }

    // mirror symmetry and odd-harmonic structure of the diagonal drive
    const auto vl = dut_three_level(spec).diagonal_drive;
    bool structure = true;
    for (const auto& [k, m] : vl.harmonics()) {
        if (k == 0) {
            structure &= m.cwiseAbs().maxCoeff() == 0.0;
            continue;
        }
        structure &= std::abs(k) % 2 == 1;
        structure &= m.row(0).cwiseAbs().maxCoeff() == 0.0 && m.col(0).cwiseAbs().maxCoeff() == 0.0;
        structure &= m(1, 2) == 0.0 && m(2, 1) == 0.0;
        structure &= m(1, 1) == vl.harmonic(-k)(1, 1) && m(2, 2) == vl.harmonic(-k)(2, 2);
    }

    const bool pass =
        hermitian && sum_dev < 1e-6 && period_dev < 1e-8 && interior_count > 10 && structure;
    verdict("AC11", pass,
            fmt("structure: Hermiticity %s; sum rule dev %.1e; periodicity dev %.1e (%d interior); "
                "diagonal-drive blocks %s",
                hermitian ? "exact" : "BROKEN", sum_dev, period_dev, interior_count,
                structure ? "ok" : "BROKEN"));
}

// Anticrossing gaps equal twice the effective coupling.
void ac12() {
    const auto table = coupling_table(spec_at(0.12, 3.0, 0.0), 8);
    struct Case {
        double center;
        double coupling;
        const char* name;
    };
    const Case cases[] = {
        {0.75, table.P(0), "P0"}, {-0.25, table.P(1), "P1"}, {0.25, table.Q(-1), "Q-1"}};
    double worst = 0.0;
    std::string at;
    for (const auto& c : cases) {
        const double gap = anticrossing_gap(3.0, c.center, 0.03, 25);
        const double ratio = gap / (2.0 * std::abs(c.coupling));
        if (std::abs(ratio - 1.0) > worst) {
            worst = std::abs(ratio - 1.0);
            at = c.name;
        }
    }
    verdict("AC12", worst <= 0.05,
            fmt("anticrossing gaps vs 2|Omega|: worst ratio deviation %.3f (%s)", worst, at.c_str()));
}

}  // namespace

int main() {
    std::printf("floq acceptance suite (version %s)\n", version());
    ac1();
    ac2();
    ac3();
    ac4();
    ac5();
    ac6();
    ac7();
    ac8();
    ac9();
    ac10();
    ac11();
    ac12();
    std::printf("%d of 12 criteria passed\n", 12 - g_failures);
    return g_failures == 0 ? 0 : 1;
}
