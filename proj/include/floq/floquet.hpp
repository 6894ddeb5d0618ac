// floquet.hpp — truncated Floquet matrix, quasienergy spectra, time-averaged transition probabilities

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "floq/errors.hpp"
#include "floq/fourier_hamiltonian.hpp"

namespace floq {

using Eigen::MatrixXd;
using Eigen::MatrixXcd;
using Eigen::VectorXd;

struct FloquetOptions {
    int n_c = 40;  // photon blocks -n_c..n_c; matrix dimension dim*(2*n_c+1)

    void validate() const {
        if (n_c < 1) throw std::invalid_argument("FloquetOptions: n_c must be >= 1");
    }
};

// Row/column label of the Floquet space: system state alpha, photon index n.
struct BasisLabel {
    int state;
    int photon;
};

struct FloquetMatrix {
    MatrixXcd matrix;
    std::vector<BasisLabel> labels;
    double omega = 0.0;
    int dim = 0;
    int n_c = 0;

    Eigen::Index index_of(int state, int photon) const {
        return static_cast<Eigen::Index>(photon + n_c) * dim + state;
    }
};

// <alpha n|H_F|beta m> = H[m-n]_{alpha beta} + n*omega*delta_{alpha beta}delta_{nm}.
// Photon blocks run n = -n_c..n_c outer, system index inner. Block-banded with
// bandwidth set by the largest stored harmonic.
inline FloquetMatrix build_floquet_matrix(const FourierHamiltonian& fh, const FloquetOptions& opts) {
    opts.validate();
    const int d = static_cast<int>(fh.dim());
    const int nc = opts.n_c;
    const Eigen::Index N = static_cast<Eigen::Index>(d) * (2 * nc + 1);

    FloquetMatrix out;
    out.matrix = MatrixXcd::Zero(N, N);
    out.labels.reserve(static_cast<std::size_t>(N));
    out.omega = fh.omega();
    out.dim = d;
    out.n_c = nc;

    for (int n = -nc; n <= nc; ++n)
        for (int a = 0; a < d; ++a) out.labels.push_back({a, n});

    for (int n = -nc; n <= nc; ++n) {
        for (int m = -nc; m <= nc; ++m) {
            const int k = m - n;
            if (!fh.has_harmonic(k)) continue;
            out.matrix.block((n + nc) * d, (m + nc) * d, d, d) = fh.harmonic(k);
        }
        for (int a = 0; a < d; ++a) {
            const Eigen::Index i = static_cast<Eigen::Index>(n + nc) * d + a;
            out.matrix(i, i) += static_cast<double>(n) * fh.omega();
        }
    }
    return out;
}

struct QuasiSpectrum {
    VectorXd eigenvalues;    // quasienergies, ascending
    MatrixXcd eigenvectors;  // column j belongs to eigenvalue j
    std::vector<BasisLabel> labels;
    double omega = 0.0;
    int dim = 0;
    int n_c = 0;

    Eigen::Index index_of(int state, int photon) const {
        return static_cast<Eigen::Index>(photon + n_c) * dim + state;
    }
};

inline QuasiSpectrum diagonalize(const FloquetMatrix& hf) {
    QuasiSpectrum qs;
    qs.labels = hf.labels;
    qs.omega = hf.omega;
    qs.dim = hf.dim;
    qs.n_c = hf.n_c;

    // The square-wave and cosine models are real symmetric; take the cheaper path.
    if (hf.matrix.imag().cwiseAbs().maxCoeff() == 0.0) {
        Eigen::SelfAdjointEigenSolver<MatrixXd> solver(hf.matrix.real());
        if (solver.info() != Eigen::Success)
            throw NumericFailure("diagonalize: real eigensolver failed, n=" + std::to_string(hf.matrix.rows()));
        qs.eigenvalues = solver.eigenvalues();
        qs.eigenvectors = solver.eigenvectors().cast<std::complex<double>>();
        return qs;
    }
    Eigen::SelfAdjointEigenSolver<MatrixXcd> solver(hf.matrix);
    if (solver.info() != Eigen::Success)
        throw NumericFailure("diagonalize: eigensolver failed, n=" + std::to_string(hf.matrix.rows()));
    qs.eigenvalues = solver.eigenvalues();
    qs.eigenvectors = solver.eigenvectors();
    return qs;
}

struct TransitionOptions {
    // Eigenvalues closer than cluster_tol*omega are treated as one degenerate
    // cluster and summed through the cluster projector, which keeps the result
    // independent of the arbitrary eigenvector basis inside the degeneracy.
    double cluster_tol = 1e-10;
};

// Time-averaged transition probabilities from |from_state, 0> to every system
// state: T(a') = sum_n sum_clusters |<a',n| P_C |from,0>|^2.
inline VectorXd transition_probabilities(const QuasiSpectrum& qs, int from_state,
                                         const TransitionOptions& opts = {}) {
    const Eigen::Index N = qs.eigenvalues.size();
    if (from_state < 0 || from_state >= qs.dim)
        throw std::invalid_argument("transition_probabilities: bad state index");
    const Eigen::Index i0 = qs.index_of(from_state, 0);

    Eigen::VectorXcd w = qs.eigenvectors.row(i0).conjugate().transpose();
    VectorXd out = VectorXd::Zero(qs.dim);
    const double tol = opts.cluster_tol * qs.omega;

    Eigen::Index i = 0;
    while (i < N) {
        Eigen::Index j = i;
        while (j + 1 < N && qs.eigenvalues(j + 1) - qs.eigenvalues(j) < tol) ++j;
        // amp = V[:, i..j] * w[i..j]; |amp(r)|^2 accumulates into state(r)
        Eigen::VectorXcd amp = qs.eigenvectors.middleCols(i, j - i + 1) * w.segment(i, j - i + 1);
        for (Eigen::Index r = 0; r < N; ++r)
            out(qs.labels[static_cast<std::size_t>(r)].state) += std::norm(amp(r));
        i = j + 1;
    }
    return out;
}

inline double transition_probability(const QuasiSpectrum& qs, int from_state, int to_state,
                                     const TransitionOptions& opts = {}) {
    if (to_state < 0 || to_state >= qs.dim)
        throw std::invalid_argument("transition_probability: bad state index");
    return transition_probabilities(qs, from_state, opts)(to_state);
}

// Cutoff heuristic for strong drives: keep at least the paper-scale 40 blocks
// and grow linearly with the control strength.
inline int recommended_cutoff(const DriveSpec3L& spec, int floor_nc = 40) {
    const double x = spec.omega_c / spec.omega();
    return std::max(floor_nc, static_cast<int>(std::ceil(2.0 * x)) + 20);
}

struct SweepRow {
    double parameter;
    VectorXd eigenvalues;
};

// Quasienergies along a list of parameterized specs; rows in input order.
// Per-point failures are annotated with the offending parameter value.
inline std::vector<SweepRow> quasienergy_sweep(const std::vector<std::pair<double, DriveSpec3L>>& points,
                                               const FloquetOptions& opts) {
    std::vector<SweepRow> rows;
    rows.reserve(points.size());
    for (const auto& [value, spec] : points) {
        try {
            const auto qs = diagonalize(build_floquet_matrix(build_hamiltonian_3l(spec), opts));
            rows.push_back({value, qs.eigenvalues});
        } catch (const NumericFailure& e) {
            throw NumericFailure(std::string(e.what()) + " at parameter " + std::to_string(value));
        }
    }
    return rows;
}

}  // namespace floq
