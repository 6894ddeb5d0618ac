// fourier.hpp — Fourier coefficient extraction of periodic signals

#pragma once

#include <unsupported/Eigen/FFT>

#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

namespace floq {

// Coefficients c_n = (1/tau) int_0^tau f(t) e^{-i n omega t} dt of a signal
// sampled uniformly over one period on a power-of-two grid.
class FourierCoefficients {
public:
    explicit FourierCoefficients(std::vector<std::complex<double>> bins)
        : bins_(std::move(bins)) {}

    // n in [-N/2, N/2); out-of-range coefficients are zero by spectral decay.
    std::complex<double> c(int n) const {
        const int N = static_cast<int>(bins_.size());
        if (n >= N / 2 || n < -N / 2) return {0.0, 0.0};
        return bins_[static_cast<std::size_t>((n % N + N) % N)];
    }

    int grid_size() const noexcept { return static_cast<int>(bins_.size()); }

private:
    std::vector<std::complex<double>> bins_;
};

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline FourierCoefficients fourier_coefficients(std::vector<std::complex<double>> samples) {
    if (samples.size() < 4 || !is_power_of_two(samples.size()))
        throw std::invalid_argument("fourier_coefficients: grid must be a power of two >= 4");
    Eigen::FFT<double> fft;
    std::vector<std::complex<double>> out(samples.size());
    fft.fwd(out, samples);
    const double inv = 1.0 / static_cast<double>(samples.size());
    for (auto& v : out) v *= inv;
    return FourierCoefficients(std::move(out));
}

// Sample f on the uniform grid t_j = j*tau/grid, j = 0..grid-1, then transform.
inline FourierCoefficients fourier_coefficients(const std::function<std::complex<double>(double)>& f,
                                                double tau, std::size_t grid) {
    std::vector<std::complex<double>> samples(grid);
    for (std::size_t j = 0; j < grid; ++j) samples[j] = f(static_cast<double>(j) * tau / static_cast<double>(grid));
    return fourier_coefficients(std::move(samples));
}

}  // namespace floq
