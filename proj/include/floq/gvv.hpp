// gvv.hpp — generalized Van Vleck reduction of the transformed Floquet matrix:
// second-order level shifts, the 3x3 GRWA/GVV effective matrices, and the
// closed-form time-averaged populations for both worked systems.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <string>

#include "floq/bessel.hpp"
#include "floq/couplings.hpp"
#include "floq/drive.hpp"
#include "floq/errors.hpp"

namespace floq {

using Eigen::Matrix3d;
using Eigen::Vector3d;

enum class EffectiveKind { GRWA, GVV };

struct GvvShifts {
    double delta_0 = 0.0;
    double delta_P = 0.0;
    double delta_Q = 0.0;
    double delta_PQ = 0.0;
};

// Labeled 3x3 effective matrix over (|0~,0>, |P~,n>, |Q~,m>).
struct EffectiveModel {
    EffectiveKind kind = EffectiveKind::GRWA;
    Matrix3d matrix = Matrix3d::Zero();
    int n = 0;  // P-branch photon index
    int m = 0;  // Q-branch photon index
};

// Unperturbed quasi-level positions of the transformed Floquet matrix.
inline double level_P(const DriveSpec3L& spec, int n) {
    return spec.delta / 2.0 - spec.omega_c / 4.0 + n * spec.omega();
}
inline double level_Q(const DriveSpec3L& spec, int m) {
    return spec.delta / 2.0 + spec.omega_c / 4.0 + m * spec.omega();
}

namespace detail {

inline void check_denominator(double den, double omega, int k, const char* branch) {
    if (std::abs(den) < 1e-6 * omega)
        throw DegenerateChannelError(std::string("gvv_shifts: near-degenerate ") + branch +
                                         " channel k=" + std::to_string(k) +
                                         " (unhandled extra resonance)",
                                     k);
}

}  // namespace detail

// Second-order corrections for the nearly degenerate trio (n, m). Denominators
// are the unperturbed gaps to the off-resonant |0~,j> levels.
inline GvvShifts gvv_shifts(const CouplingTable& table, const DriveSpec3L& spec, int n, int m) {
    const double w = spec.omega();
    const double dP0 = spec.delta - spec.omega_c / 4.0;  // + k*w: gap of P-channel k
    const double dQ0 = spec.delta + spec.omega_c / 4.0;

    GvvShifts s;
    for (int k = -table.n_max; k <= table.n_max; ++k) {
        if (k != n) {
            const double den = dP0 + k * w;
            const double c = table.P(k);
            if (c != 0.0) {
                detail::check_denominator(den, w, k, "P");
                s.delta_P += c * c / den;
            }
        }
        if (k != m) {
            const double den = dQ0 + k * w;
            const double c = table.Q(k);
            if (c != 0.0) {
                detail::check_denominator(den, w, k, "Q");
                s.delta_Q += c * c / den;
            }
        }
    }
    // Symmetrized cross coupling between |P~,n> and |Q~,m> through |0~,j>.
    for (int k = -table.n_max; k <= table.n_max; ++k) {
        if (k != m) {
            const double num = table.Q(k) * table.P(n - m + k);
            if (num != 0.0) s.delta_PQ += 0.5 * num / (dQ0 + k * w);
        }
        if (k != n) {
            const double num = table.P(k) * table.Q(m - n + k);
            if (num != 0.0) s.delta_PQ += 0.5 * num / (dP0 + k * w);
        }
    }
    s.delta_0 = -s.delta_P - s.delta_Q;
    return s;
}

inline EffectiveModel effective_matrix(const CouplingTable& table, const GvvShifts& shifts,
                                       const DriveSpec3L& spec, int n, int m, EffectiveKind kind) {
    EffectiveModel em;
    em.kind = kind;
    em.n = n;
    em.m = m;
    Matrix3d& h = em.matrix;
    h(0, 0) = -spec.delta / 2.0;
    h(1, 1) = level_P(spec, n);
    h(2, 2) = level_Q(spec, m);
    h(0, 1) = h(1, 0) = table.P(n);
    h(0, 2) = h(2, 0) = table.Q(m);
    if (kind == EffectiveKind::GVV) {
        h(0, 0) += shifts.delta_0;
        h(1, 1) += shifts.delta_P;
        h(2, 2) += shifts.delta_Q;
        h(1, 2) = h(2, 1) = shifts.delta_PQ;
    }
    return em;
}

// Time-averaged populations of the trio starting from |0~,0>, by exact
// diagonalization of the effective matrix.
inline Vector3d effective_populations(const EffectiveModel& em) {
    Eigen::SelfAdjointEigenSolver<Matrix3d> solver(em.matrix);
    if (solver.info() != Eigen::Success) throw NumericFailure("effective_populations: 3x3 eigensolver failed");
    const Matrix3d v = solver.eigenvectors();
    Vector3d p = Vector3d::Zero();
    for (int e = 0; e < 3; ++e) {
        const double wv = v(0, e) * v(0, e);
        for (int a = 0; a < 3; ++a) p(a) += v(a, e) * v(a, e) * wv;
    }
    return p;
}

struct AnalyticOptions {
    int n_window = 12;      // Lorentzian channels per branch
    int table_margin = 8;   // extra table entries for the shift sums
};

// Closed-form time-averaged rho11 for the three-level system. Away from
// three-level resonances this is the two-branch Lorentzian comb; when the P-
// and Q-channels of the local resonance overlap, the resonant trio is handled
// by diagonalizing the full effective matrix and only the remaining channels
// contribute as Lorentzian tails.
inline double rho11_analytic(const DriveSpec3L& spec, EffectiveKind kind,
                             const CouplingTable& table, const AnalyticOptions& opts = {}) {
    const double w = spec.omega();
    const int nw = opts.n_window;
    if (table.n_max < nw) throw std::invalid_argument("rho11_analytic: coupling table too small");

    // Resonant channel indices: nearest quasi-level crossings of each branch.
    const int nstar = static_cast<int>(std::lround((spec.omega_c / 4.0 - spec.delta) / w));
    const int mstar = static_cast<int>(std::lround(-(spec.omega_c / 4.0 + spec.delta) / w));

    const bool gvv = (kind == EffectiveKind::GVV);
    auto shift_P = [&](int n) {
        if (!gvv) return 0.0;
        double s = 0.0;
        for (int k = -table.n_max; k <= table.n_max; ++k) {
            if (k == n) continue;
            const double c = table.P(k);
            if (c != 0.0) s += c * c / (spec.delta - spec.omega_c / 4.0 + k * w);
        }
        return s;
    };
    auto shift_Q = [&](int m) {
        if (!gvv) return 0.0;
        double s = 0.0;
        for (int k = -table.n_max; k <= table.n_max; ++k) {
            if (k == m) continue;
            const double c = table.Q(k);
            if (c != 0.0) s += c * c / (spec.delta + spec.omega_c / 4.0 + k * w);
        }
        return s;
    };
    const double d0 = gvv ? -(shift_P(nstar) + shift_Q(mstar)) : 0.0;

    const bool triple = std::abs(level_P(spec, nstar) - level_Q(spec, mstar)) <
                        5.0 * std::max(std::abs(table.P(nstar)), std::abs(table.Q(mstar)));

    double rho = 0.0;
    for (int n = -nw; n <= nw; ++n) {
        if (triple && n == nstar) continue;
        const double g2 = 4.0 * table.P(n) * table.P(n);  // (2 Omega_n^P)^2
        const double det = spec.delta - spec.omega_c / 4.0 + n * w + shift_P(n) - d0;
        if (g2 != 0.0) rho += 0.25 * g2 / (det * det + g2);
    }
    for (int m = -nw; m <= nw; ++m) {
        if (triple && m == mstar) continue;
        const double g2 = 4.0 * table.Q(m) * table.Q(m);
        const double det = spec.delta + spec.omega_c / 4.0 + m * w + shift_Q(m) - d0;
        if (g2 != 0.0) rho += 0.25 * g2 / (det * det + g2);
    }
    if (triple) {
        GvvShifts s;
        if (gvv) s = gvv_shifts(table, spec, nstar, mstar);
        const EffectiveModel em = effective_matrix(table, s, spec, nstar, mstar, kind);
        const Vector3d p = effective_populations(em);
        rho += 0.5 * (p(1) + p(2));
    }
    return rho;
}

inline double rho11_analytic(const DriveSpec3L& spec, EffectiveKind kind,
                             const AnalyticOptions& opts = {}) {
    const CouplingTable table =
        coupling_table(spec, opts.n_window + opts.table_margin, CouplingMethod::fft_oracle);
    return rho11_analytic(spec, kind, table, opts);
}

// First-order closed form for the strongly driven two-level system: Lorentzian
// comb at epsilon_0 = n*omega with widths set by delta*J_n(A/omega).
inline double rho11_two_level(const DriveSpec2L& spec, int n_window) {
    spec.validate();
    if (n_window < 0) throw std::invalid_argument("rho11_two_level: n_window must be >= 0");
    double rho = 0.0;
    for (int n = -n_window; n <= n_window; ++n) {
        const double dj = spec.delta * bessel_j(n, spec.amplitude / spec.omega);
        const double det = n * spec.omega - spec.epsilon_0;
        if (dj != 0.0) rho += 0.5 * dj * dj / (dj * dj + det * det);
    }
    return rho;
}

}  // namespace floq
