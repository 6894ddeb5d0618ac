// propagate.hpp — independent exact references: piecewise-constant time-domain
// propagation of the reconstructed square wave and commutator-free 4th-order
// Magnus integration of generic Fourier Hamiltonians.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "floq/drive.hpp"
#include "floq/errors.hpp"
#include "floq/fourier_hamiltonian.hpp"

namespace floq {

using Eigen::VectorXcd;

struct PropagationResult {
    std::vector<double> times;
    std::vector<Eigen::VectorXd> populations;  // per sample, one entry per state
    Eigen::VectorXd long_time_average;         // trailing-window mean
};

namespace detail {

// exp(-i H dt) for Hermitian H via eigendecomposition.
inline MatrixXcd hermitian_propagator(const MatrixXcd& h, double dt) {
    Eigen::SelfAdjointEigenSolver<MatrixXcd> solver(h);
    if (solver.info() != Eigen::Success) throw NumericFailure("hermitian_propagator: eigensolver failed");
    using namespace std::complex_literals;
    const auto& v = solver.eigenvectors();
    VectorXcd phases(h.rows());
    for (Eigen::Index i = 0; i < h.rows(); ++i) phases(i) = std::exp(-1i * solver.eigenvalues()(i) * dt);
    return v * phases.asDiagonal() * v.adjoint();
}

inline PropagationResult average_tail(std::vector<double> times, std::vector<Eigen::VectorXd> pops,
                                      std::size_t skip) {
    PropagationResult out;
    out.times = std::move(times);
    out.populations = std::move(pops);
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(out.populations.front().size());
    std::size_t cnt = 0;
    for (std::size_t i = skip; i < out.populations.size(); ++i) {
        acc += out.populations[i];
        ++cnt;
    }
    out.long_time_average = acc / static_cast<double>(cnt);
    return out;
}

}  // namespace detail

// Exact propagation of the reconstructed (untruncated) square-wave drive:
// probe on with coupling -omega_p/2 for t in [0,tau/4) and [3tau/4,tau),
// control on with -omega_c/2 in between; per-segment exact matrix exponentials.
// Populations are sampled samples_per_period times per period; the long-time
// average is taken over the trailing 80% of the periods.
inline PropagationResult propagate_square_wave(const DriveSpec3L& spec, int n_periods,
                                               int samples_per_period = 32, int initial_state = 0) {
    spec.validate();
    if (n_periods < 1) throw std::invalid_argument("propagate_square_wave: n_periods must be >= 1");
    if (samples_per_period < 2)
        throw std::invalid_argument("propagate_square_wave: samples_per_period must be >= 2");
    if (initial_state < 0 || initial_state > 2)
        throw std::invalid_argument("propagate_square_wave: bad initial state");

    MatrixXcd h_probe = MatrixXcd::Zero(3, 3);
    h_probe(0, 0) = -spec.delta / 2.0;
    h_probe(1, 1) = h_probe(2, 2) = spec.delta / 2.0;
    h_probe(0, 1) = h_probe(1, 0) = -spec.omega_p / 2.0;
    MatrixXcd h_ctrl = MatrixXcd::Zero(3, 3);
    h_ctrl(0, 0) = -spec.delta / 2.0;
    h_ctrl(1, 1) = h_ctrl(2, 2) = spec.delta / 2.0;
    h_ctrl(1, 2) = h_ctrl(2, 1) = -spec.omega_c / 2.0;

    // One period of per-sample propagators; each sample interval is split at
    // the two switching times tau/4 and 3tau/4.
    const double tau = spec.tau;
    const int S = samples_per_period;
    std::vector<MatrixXcd> step(static_cast<std::size_t>(S));
    for (int i = 0; i < S; ++i) {
        const double a = i * tau / S;
        const double b = (i + 1) * tau / S;
        MatrixXcd m = MatrixXcd::Identity(3, 3);
        double cur = a;
        while (cur < b - 1e-15 * tau) {
            double next_switch = tau;
            if (cur < tau / 4.0)
                next_switch = tau / 4.0;
            else if (cur < 3.0 * tau / 4.0)
                next_switch = 3.0 * tau / 4.0;
            const double end = std::min(b, next_switch);
            const bool probe_on = cur < tau / 4.0 || cur >= 3.0 * tau / 4.0;
            m = detail::hermitian_propagator(probe_on ? h_probe : h_ctrl, end - cur) * m;
            cur = end;
        }
        step[static_cast<std::size_t>(i)] = m;
    }

    VectorXcd psi = VectorXcd::Zero(3);
    psi(initial_state) = 1.0;

    std::vector<double> times;
    std::vector<Eigen::VectorXd> pops;
    times.reserve(static_cast<std::size_t>(n_periods) * S + 1);
    pops.reserve(times.capacity());
    times.push_back(0.0);
    pops.push_back(psi.cwiseAbs2());
    for (int p = 0; p < n_periods; ++p) {
        for (int i = 0; i < S; ++i) {
            psi = step[static_cast<std::size_t>(i)] * psi;
            times.push_back(p * tau + (i + 1) * tau / S);
            pops.push_back(psi.cwiseAbs2());
        }
    }
    const std::size_t skip = 1 + static_cast<std::size_t>(std::ceil(0.2 * n_periods)) * S;
    return detail::average_tail(std::move(times), std::move(pops), skip);
}

struct StepControl {
    int steps_per_period = 512;  // CF4 integrator steps per drive period
};

// Commutator-free 4th-order Magnus integration of i d/dt psi = H(t) psi for a
// generic Fourier Hamiltonian. Norm is preserved exactly per step (unitary
// exponentials); accuracy is controlled by steps_per_period.
inline PropagationResult propagate_fourier(const FourierHamiltonian& fh, double t_final,
                                           const StepControl& ctrl = {}, int initial_state = 0,
                                           int samples_per_period = 32) {
    if (ctrl.steps_per_period < 4) throw NumericFailure("propagate_fourier: step size underflow");
    if (initial_state < 0 || initial_state >= fh.dim())
        throw std::invalid_argument("propagate_fourier: bad initial state");
    if (!(t_final > 0.0)) throw std::invalid_argument("propagate_fourier: t_final must be > 0");

    const double tau = fh.period();
    const double dt = tau / ctrl.steps_per_period;
    const long n_steps = static_cast<long>(std::ceil(t_final / dt - 1e-12));
    if (samples_per_period < 1 || ctrl.steps_per_period % samples_per_period != 0)
        throw std::invalid_argument("propagate_fourier: samples_per_period must divide steps_per_period");
    const long record_every = ctrl.steps_per_period / samples_per_period;

    // Gauss-Legendre nodes and CF4 weights.
    const double root3 = std::sqrt(3.0);
    const double c1 = 0.5 - root3 / 6.0, c2 = 0.5 + root3 / 6.0;
    const double a1 = 0.25 - root3 / 6.0, a2 = 0.25 + root3 / 6.0;

    VectorXcd psi = VectorXcd::Zero(fh.dim());
    psi(initial_state) = 1.0;

    std::vector<double> times{0.0};
    std::vector<Eigen::VectorXd> pops{psi.cwiseAbs2()};
    for (long s = 0; s < n_steps; ++s) {
        const double t = s * dt;
        const MatrixXcd h1 = evaluate_at_time(fh, t + c1 * dt);
        const MatrixXcd h2 = evaluate_at_time(fh, t + c2 * dt);
        psi = detail::hermitian_propagator(a1 * h1 + a2 * h2, dt) *
              (detail::hermitian_propagator(a2 * h1 + a1 * h2, dt) * psi);
        if ((s + 1) % record_every == 0) {
            times.push_back((s + 1) * dt);
            pops.push_back(psi.cwiseAbs2());
        }
    }
    const std::size_t skip = 1 + static_cast<std::size_t>(std::ceil(0.2 * (pops.size() - 1)));
    return detail::average_tail(std::move(times), std::move(pops), skip);
}

}  // namespace floq
