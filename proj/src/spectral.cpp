#include "vmdlinear/spectral.hpp"

#include "vmdlinear/error.hpp"

#include <bit>
#include <cmath>
#include <numbers>

namespace vmdl {

namespace {

// In-place iterative radix-2 FFT. sign = -1 forward, +1 inverse (unscaled).
void radix2(std::vector<Complex>& a, int sign) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    // Twiddles evaluated directly rather than by recurrence.
    std::vector<Complex> tw(n / 2);
    for (std::size_t k = 0; k < n / 2; ++k) {
        const double angle = sign * 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
        tw[k] = {std::cos(angle), std::sin(angle)};
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t half = len / 2;
        const std::size_t step = n / len;
        for (std::size_t start = 0; start < n; start += len) {
            for (std::size_t k = 0; k < half; ++k) {
                const Complex t = a[start + k + half] * tw[k * step];
                const Complex u = a[start + k];
                a[start + k] = u + t;
                a[start + k + half] = u - t;
            }
        }
    }
}

// Bluestein: X[k] = c[k] * sum_t (x[t] c[t]) conj(c[k - t]),  c[m] = exp(sign i pi m^2 / n).
void bluestein(std::vector<Complex>& a, int sign) {
    const std::size_t n = a.size();
    const std::size_t m = std::bit_ceil(2 * n - 1);
    std::vector<Complex> chirp(n);
    for (std::size_t k = 0; k < n; ++k) {
        // k^2 mod 2n keeps the angle small and accurate.
        const std::size_t k2 = (k * k) % (2 * n);
        const double angle = sign * std::numbers::pi * static_cast<double>(k2) / static_cast<double>(n);
        chirp[k] = {std::cos(angle), std::sin(angle)};
    }
    std::vector<Complex> x(m), y(m);
    for (std::size_t k = 0; k < n; ++k) x[k] = a[k] * chirp[k];
    y[0] = std::conj(chirp[0]);
    for (std::size_t k = 1; k < n; ++k) {
        y[k] = std::conj(chirp[k]);
        y[m - k] = std::conj(chirp[k]);
    }
    radix2(x, -1);
    radix2(y, -1);
    for (std::size_t k = 0; k < m; ++k) x[k] *= y[k];
    radix2(x, +1);
    const double scale = 1.0 / static_cast<double>(m);
    for (std::size_t k = 0; k < n; ++k) a[k] = x[k] * scale * chirp[k];
}

void transform(std::vector<Complex>& a, int sign) {
    if (a.empty()) throw Error(Errc::EmptyInput, "dft: empty input");
    if (a.size() == 1) return;
    if (std::has_single_bit(a.size())) {
        radix2(a, sign);
    } else {
        bluestein(a, sign);
    }
}

}  // namespace

std::vector<Complex> dft(std::span<const double> signal) {
    std::vector<Complex> a(signal.begin(), signal.end());
    transform(a, -1);
    return a;
}

std::vector<Complex> dft(std::span<const Complex> signal) {
    std::vector<Complex> a(signal.begin(), signal.end());
    transform(a, -1);
    return a;
}

std::vector<Complex> idft(std::span<const Complex> spectrum) {
    std::vector<Complex> a(spectrum.begin(), spectrum.end());
    transform(a, +1);
    const double scale = 1.0 / static_cast<double>(a.size());
    for (auto& v : a) v *= scale;
    return a;
}

std::vector<double> idft_real(std::span<const Complex> spectrum) {
    const auto full = idft(spectrum);
    std::vector<double> out(full.size());
    for (std::size_t i = 0; i < full.size(); ++i) out[i] = full[i].real();
    return out;
}

std::vector<Complex> positive_half(std::span<const Complex> spectrum) {
    const std::size_t bins = spectrum.size() / 2 + 1;
    return {spectrum.begin(), spectrum.begin() + static_cast<std::ptrdiff_t>(bins)};
}

std::vector<Complex> hermitian_full(std::span<const Complex> half, std::size_t n) {
    if (half.size() != n / 2 + 1) {
        throw Error(Errc::DimensionMismatch, "hermitian_full: half-spectrum has " +
                                                 std::to_string(half.size()) + " bins, expected " +
                                                 std::to_string(n / 2 + 1));
    }
    std::vector<Complex> full(n);
    for (std::size_t j = 0; j < half.size(); ++j) full[j] = half[j];
    for (std::size_t j = 1; j < half.size(); ++j) {
        if (n - j != j) full[n - j] = std::conj(half[j]);
    }
    return full;
}

std::vector<double> half_spectrum_frequencies(std::size_t n) {
    std::vector<double> f(n / 2 + 1);
    for (std::size_t j = 0; j < f.size(); ++j) f[j] = static_cast<double>(j) / static_cast<double>(n);
    return f;
}

}  // namespace vmdl
