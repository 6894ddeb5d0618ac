// fourier_hamiltonian.hpp — time-periodic Hamiltonian as a sparse harmonic map

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>

#include "floq/drive.hpp"

namespace floq {

using Eigen::MatrixXcd;

// H(t) = sum_k H[k] e^{-i k omega t}, stored sparsely over the integer harmonic
// index k. Hermiticity of H(t) at all t is maintained structurally: every store
// writes the pair H[k], H[-k] = H[k]^dag, and harmonic 0 is forced Hermitian.
class FourierHamiltonian {
public:
    FourierHamiltonian(Eigen::Index dim, double omega) : dim_(dim), omega_(omega) {
        if (dim < 1) throw std::invalid_argument("FourierHamiltonian: dim must be >= 1");
        if (!(omega > 0.0)) throw std::invalid_argument("FourierHamiltonian: omega must be > 0");
        harmonics_[0] = MatrixXcd::Zero(dim, dim);
    }

    Eigen::Index dim() const noexcept { return dim_; }
    double omega() const noexcept { return omega_; }
    double period() const noexcept { return 2.0 * std::numbers::pi / omega_; }

    // Store H[k] and its Hermitian partner H[-k] = H[k]^dag.
    void set_harmonic(int k, const MatrixXcd& m) {
        check_shape(m);
        if (k == 0) {
            harmonics_[0] = 0.5 * (m + m.adjoint());  // enforce exact Hermiticity
            return;
        }
        harmonics_[k] = m;
        harmonics_[-k] = m.adjoint();
    }

    void add_to_harmonic(int k, const MatrixXcd& m) {
        check_shape(m);
        if (k == 0) {
            harmonics_[0] += 0.5 * (m + m.adjoint());
            return;
        }
        auto it = harmonics_.find(k);
        const MatrixXcd cur = (it == harmonics_.end()) ? MatrixXcd::Zero(dim_, dim_) : it->second;
        set_harmonic(k, cur + m);
    }

    bool has_harmonic(int k) const { return harmonics_.count(k) != 0; }

    const MatrixXcd& harmonic(int k) const {
        auto it = harmonics_.find(k);
        if (it == harmonics_.end()) throw std::out_of_range("FourierHamiltonian: harmonic not stored");
        return it->second;
    }

    MatrixXcd harmonic_or_zero(int k) const {
        auto it = harmonics_.find(k);
        return it == harmonics_.end() ? MatrixXcd::Zero(dim_, dim_) : it->second;
    }

    const std::map<int, MatrixXcd>& harmonics() const noexcept { return harmonics_; }

    int max_harmonic() const {
        int m = 0;
        for (const auto& [k, _] : harmonics_) m = std::max(m, std::abs(k));
        return m;
    }

    // Largest |H[-k] - H[k]^dag| over stored harmonics; 0 by construction.
    double hermiticity_defect() const {
        double worst = 0.0;
        for (const auto& [k, m] : harmonics_) {
            const MatrixXcd partner = harmonic_or_zero(-k);
            worst = std::max(worst, (partner - m.adjoint()).cwiseAbs().maxCoeff());
        }
        return worst;
    }

private:
    void check_shape(const MatrixXcd& m) const {
        if (m.rows() != dim_ || m.cols() != dim_)
            throw std::invalid_argument("FourierHamiltonian: harmonic has wrong dimension");
    }

    Eigen::Index dim_;
    double omega_;
    std::map<int, MatrixXcd> harmonics_;
};

// H(t) at one instant.
inline MatrixXcd evaluate_at_time(const FourierHamiltonian& fh, double t) {
    using namespace std::complex_literals;
    MatrixXcd h = MatrixXcd::Zero(fh.dim(), fh.dim());
    for (const auto& [k, m] : fh.harmonics())
        h += m * std::exp(-1i * static_cast<double>(k) * fh.omega() * t);
    return h;
}

// Square-wave modulated three-level Hamiltonian in the dressed basis |0>,|1>,|2>:
//   diagonal (-delta/2, delta/2, delta/2); probe coupling -omega_p/4 + series on (0,1);
//   control coupling -omega_c/4 + series on (1,2). Only odd harmonics are populated.
inline FourierHamiltonian build_hamiltonian_3l(const DriveSpec3L& spec) {
    spec.validate();
    FourierHamiltonian fh(3, spec.omega());

    MatrixXcd h0 = MatrixXcd::Zero(3, 3);
    h0(0, 0) = -spec.delta / 2.0;
    h0(1, 1) = spec.delta / 2.0;
    h0(2, 2) = spec.delta / 2.0;
    h0(0, 1) = h0(1, 0) = -spec.omega_p / 4.0;
    h0(1, 2) = h0(2, 1) = -spec.omega_c / 4.0;
    fh.set_harmonic(0, h0);

    const auto probe = square_wave_harmonics(spec.omega_p, spec.q_max, SquareWaveSign::probe);
    const auto ctrl = square_wave_harmonics(spec.omega_c, spec.q_max, SquareWaveSign::control);
    for (int n = 0; n < spec.q_max; ++n) {
        MatrixXcd m = MatrixXcd::Zero(3, 3);
        m(0, 1) = m(1, 0) = probe[n].coefficient / 2.0;  // cos split evenly over +-k
        m(1, 2) = m(2, 1) = ctrl[n].coefficient / 2.0;
        fh.set_harmonic(probe[n].multiplier, m);  // partner -k set automatically (m symmetric real)
    }
    return fh;
}

// Strongly coupled two-level Hamiltonian H(t) = -(1/2)[[-delta, eps(t)],[eps(t), delta]],
// eps(t) = epsilon_0 + amplitude*cos(omega t).
inline FourierHamiltonian build_hamiltonian_2l(const DriveSpec2L& spec) {
    spec.validate();
    FourierHamiltonian fh(2, spec.omega);

    MatrixXcd h0(2, 2);
    h0 << spec.delta / 2.0, -spec.epsilon_0 / 2.0, -spec.epsilon_0 / 2.0, -spec.delta / 2.0;
    fh.set_harmonic(0, h0);

    if (spec.amplitude != 0.0) {
        MatrixXcd m = MatrixXcd::Zero(2, 2);
        m(0, 1) = m(1, 0) = -spec.amplitude / 4.0;
        fh.set_harmonic(1, m);
    }
    return fh;
}

}  // namespace floq
