// drive.hpp — physical parameter records for the driven two- and three-level systems

#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace floq {

// Square-wave modulated Xi-type three-level system.
// Probe couples |0>-|1> with Rabi frequency omega_p and detuning delta; control
// couples |1>-|2| resonantly with omega_c. Both fields are complementarily
// square-wave modulated with period tau; the drive keeps q_max odd harmonics
// omega_n = (2n-1)*omega, omega = 2*pi/tau.
struct DriveSpec3L {
    double omega_p = 0.0;
    double omega_c = 0.0;
    double delta = 0.0;
    double tau = 2.0 * std::numbers::pi;
    int q_max = 20;

    double omega() const noexcept { return 2.0 * std::numbers::pi / tau; }

    void validate() const {
        if (!(omega_p >= 0.0)) throw std::invalid_argument("DriveSpec3L: omega_p must be >= 0");
        if (!(omega_c >= 0.0)) throw std::invalid_argument("DriveSpec3L: omega_c must be >= 0");
        if (!(tau > 0.0)) throw std::invalid_argument("DriveSpec3L: tau must be > 0");
        if (q_max < 1) throw std::invalid_argument("DriveSpec3L: q_max must be >= 1");
    }
};

// Two-level system with strong off-diagonal coupling eps(t) = epsilon_0 + amplitude*cos(omega t)
// and level splitting delta.
struct DriveSpec2L {
    double epsilon_0 = 0.0;
    double amplitude = 0.0;
    double omega = 1.0;
    double delta = 0.0;

    double tau() const noexcept { return 2.0 * std::numbers::pi / omega; }

    void validate() const {
        if (!(omega > 0.0)) throw std::invalid_argument("DriveSpec2L: omega must be > 0");
    }
};

// Sign convention of the alternating square-wave cosine series.
//   probe:   (-1)^n   * amplitude/((2n-1)*pi)
//   control: (-1)^(n+1) * amplitude/((2n-1)*pi)
enum class SquareWaveSign { probe, control };

struct SquareWaveHarmonic {
    int multiplier;      // odd integer 2n-1; harmonic frequency is multiplier*omega
    double coefficient;  // signed cosine coefficient
};

// Cosine-series coefficients of the square-wave modulation.
inline std::vector<SquareWaveHarmonic> square_wave_harmonics(double amplitude, int q_max,
                                                             SquareWaveSign sign = SquareWaveSign::control) {
    if (q_max < 1) throw std::invalid_argument("square_wave_harmonics: q_max must be >= 1");
    std::vector<SquareWaveHarmonic> out;
    out.reserve(static_cast<std::size_t>(q_max));
    for (int n = 1; n <= q_max; ++n) {
        const int mult = 2 * n - 1;
        double c = amplitude / (mult * std::numbers::pi);
        const bool flip = (sign == SquareWaveSign::probe) ? (n % 2 != 0) : (n % 2 == 0);
        if (flip) c = -c;
        out.push_back({mult, c});
    }
    return out;
}

// Reconstructed square-wave coupling at time t: dc term -amplitude/4 plus the
// truncated cosine series. The full (q_max -> inf) waveform alternates between
// -amplitude/2 and 0; for SquareWaveSign::probe the "on" half-period is centered
// at t = 0, for control it is centered at t = tau/2.
inline double square_wave_coupling(double amplitude, int q_max, SquareWaveSign sign, double omega,
                                   double t) {
    double v = -amplitude / 4.0;
    for (const auto& h : square_wave_harmonics(amplitude, q_max, sign))
        v += h.coefficient * std::cos(h.multiplier * omega * t);
    return v;
}

}  // namespace floq
