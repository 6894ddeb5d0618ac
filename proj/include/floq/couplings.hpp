// couplings.hpp — effective transverse couplings Omega_n^P / Omega_m^Q of the
// square-wave driven three-level system after the double unitary transformation.
//
// Normative definition (fft_oracle): with B(t) the rotated probe coupling and
// U_P(t) = exp(-i theta(t)) the control phase factor,
//   Omega_n^P = c_n( conj(U_P)*B ),   Omega_m^Q = c_m( -conj(U_Q)*B ),
//   c_n(f) = (1/tau) int_0^tau f(t) e^{-i n omega t} dt.
// The nested_bessel route evaluates the same numbers as a multi-index Bessel
// product sum and is cross-checked against the FFT route on every call.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "floq/bessel.hpp"
#include "floq/drive.hpp"
#include "floq/errors.hpp"
#include "floq/fourier.hpp"

namespace floq {

enum class CouplingMethod { nested_bessel, fft_oracle };

struct CouplingTable {
    int n_max = 0;               // indices -n_max..n_max
    std::vector<double> omega_P; // Omega_n^P at index n + n_max
    std::vector<double> omega_Q; // Omega_m^Q at index m + n_max
    CouplingMethod provenance = CouplingMethod::fft_oracle;

    double P(int n) const { return at(omega_P, n); }
    double Q(int m) const { return at(omega_Q, m); }

private:
    double at(const std::vector<double>& v, int n) const {
        if (n < -n_max || n > n_max) return 0.0;
        return v[static_cast<std::size_t>(n + n_max)];
    }
};

// Rotated probe coupling B(t) = -omega_p/(4 sqrt2) + series/sqrt2.
inline double probe_coupling_rotated(const DriveSpec3L& spec, double t) {
    return square_wave_coupling(spec.omega_p, spec.q_max, SquareWaveSign::probe, spec.omega(), t) /
           std::sqrt(2.0);
}

// Accumulated control phase theta(t) = int_0^t Omega_c_ac(t') dt' in closed form.
inline double control_phase(const DriveSpec3L& spec, double t) {
    double th = 0.0;
    for (const auto& h : square_wave_harmonics(spec.omega_c, spec.q_max, SquareWaveSign::control)) {
        const double wk = h.multiplier * spec.omega();
        th += h.coefficient * std::sin(wk * t) / wk;
    }
    return th;
}

namespace detail {

// Spectrum of exp(+i theta(t)) as coefficients of e^{+i j omega t}, by iterated
// convolution of the per-harmonic factors exp(i a_k sin(w_k t)) = sum_l J_l(a_k) e^{i l w_k t}.
// Coefficients are real: theta is odd in t.
inline std::unordered_map<int, double> phase_factor_spectrum(const DriveSpec3L& spec,
                                                             double prune = 1e-14) {
    std::unordered_map<int, double> spec_map{{0, 1.0}};
    for (int k = 1; k <= spec.q_max; ++k) {
        const int mult = 2 * k - 1;
        const double a = ((k % 2 != 0) ? 1.0 : -1.0) * spec.omega_c /
                         (static_cast<double>(mult) * mult * std::numbers::pi * spec.omega());
        const int lmax = std::max(4, static_cast<int>(std::ceil(std::abs(a))) + 10);
        std::unordered_map<int, double> next;
        next.reserve(spec_map.size() * 4);
        for (int l = -lmax; l <= lmax; ++l) {
            const double jl = bessel_j(l, a);
            if (std::abs(jl) < prune) continue;
            for (const auto& [h, c] : spec_map) {
                const double v = c * jl;
                if (std::abs(v) < prune) continue;
                next[h + l * mult] += v;
            }
        }
        spec_map = std::move(next);
    }
    return spec_map;
}

inline CouplingTable coupling_table_nested(const DriveSpec3L& spec, int n_max) {
    const auto E = phase_factor_spectrum(spec);
    auto Eat = [&](int j) {
        auto it = E.find(j);
        return it == E.end() ? 0.0 : it->second;
    };
    const double b0 = -spec.omega_p / (4.0 * std::sqrt(2.0));
    const auto probe = square_wave_harmonics(spec.omega_p, spec.q_max, SquareWaveSign::probe);

    CouplingTable t;
    t.n_max = n_max;
    t.provenance = CouplingMethod::nested_bessel;
    t.omega_P.resize(static_cast<std::size_t>(2 * n_max + 1));
    t.omega_Q.resize(static_cast<std::size_t>(2 * n_max + 1));
    for (int n = -n_max; n <= n_max; ++n) {
        // Omega_n^P picks the e^{+i n w t} content of B(t) e^{+i theta(t)}; the
        // probe harmonic at 2k-1 shifts the phase-factor index by -+(2k-1).
        double p = b0 * Eat(n);
        double q = -b0 * Eat(-n);
        for (const auto& h : probe) {
            p += 0.5 * (h.coefficient / std::sqrt(2.0)) * (Eat(n - h.multiplier) + Eat(n + h.multiplier));
            q -= 0.5 * (h.coefficient / std::sqrt(2.0)) * (Eat(-n - h.multiplier) + Eat(-n + h.multiplier));
        }
        t.omega_P[static_cast<std::size_t>(n + n_max)] = p;
        t.omega_Q[static_cast<std::size_t>(n + n_max)] = q;
    }
    return t;
}

inline std::size_t coupling_fft_grid(const DriveSpec3L& spec, int n_max) {
    // Spectrum support ~ |n| <= x/pi + 2*q_max + margin; oversample well past it.
    const double x = spec.omega_c / spec.omega();
    const double need = 8.0 * (std::abs(x) + 2.0 * spec.q_max + n_max + 16.0);
    std::size_t grid = 4096;
    while (static_cast<double>(grid) < need) grid *= 2;
    return grid;
}

inline CouplingTable coupling_table_fft(const DriveSpec3L& spec, int n_max) {
    const std::size_t grid = coupling_fft_grid(spec, n_max);
    const double tau = spec.tau;
    using namespace std::complex_literals;
    auto fP = fourier_coefficients(
        [&](double t) { return probe_coupling_rotated(spec, t) * std::exp(1i * control_phase(spec, t)); },
        tau, grid);
    auto fQ = fourier_coefficients(
        [&](double t) { return -probe_coupling_rotated(spec, t) * std::exp(-1i * control_phase(spec, t)); },
        tau, grid);

    CouplingTable t;
    t.n_max = n_max;
    t.provenance = CouplingMethod::fft_oracle;
    t.omega_P.resize(static_cast<std::size_t>(2 * n_max + 1));
    t.omega_Q.resize(static_cast<std::size_t>(2 * n_max + 1));
    for (int n = -n_max; n <= n_max; ++n) {
        t.omega_P[static_cast<std::size_t>(n + n_max)] = fP.c(n).real();
        t.omega_Q[static_cast<std::size_t>(n + n_max)] = fQ.c(n).real();
    }
    return t;
}

}  // namespace detail

inline CouplingTable coupling_table(const DriveSpec3L& spec, int n_max,
                                    CouplingMethod method = CouplingMethod::fft_oracle) {
    spec.validate();
    if (n_max < 1) throw std::invalid_argument("coupling_table: n_max must be >= 1");
    if (method == CouplingMethod::fft_oracle) return detail::coupling_table_fft(spec, n_max);

    // Nested-Bessel result is certified against the normative FFT route; a
    // disagreement indicates an index-convention bug, not a tolerance issue.
    CouplingTable nested = detail::coupling_table_nested(spec, n_max);
    CouplingTable fft = detail::coupling_table_fft(spec, n_max);
    for (int n = -n_max; n <= n_max; ++n) {
        const double dp = std::abs(nested.P(n) - fft.P(n));
        const double dq = std::abs(nested.Q(n) - fft.Q(n));
        if (dp > 1e-6 || dq > 1e-6)
            throw InternalConsistencyError(
                "coupling_table: nested-Bessel and FFT routes disagree at n=" + std::to_string(n) +
                " (dP=" + std::to_string(dp) + ", dQ=" + std::to_string(dq) + ")");
    }
    return nested;
}

// sin^2(alpha)/alpha^2 envelope of the effective couplings; alpha = delta*tau/4.
inline double diffraction_function(double alpha) {
    if (std::abs(alpha) < 1e-5) {
        const double a2 = alpha * alpha;
        return 1.0 - a2 / 3.0 + 2.0 * a2 * a2 / 45.0;
    }
    const double s = std::sin(alpha) / alpha;
    return s * s;
}

}  // namespace floq
