#pragma once

#include <complex>
#include <span>
#include <vector>

namespace vmdl {

using Complex = std::complex<double>;

// Discrete Fourier transform pair with the usual convention:
//   X[k] = sum_t x[t] exp(-2 pi i k t / N),  x[t] = (1/N) sum_k X[k] exp(+2 pi i k t / N).
// Any length is accepted; powers of two use radix-2, other lengths go
// through Bluestein's chirp-z reformulation. Throws EmptyInput on empty input.
std::vector<Complex> dft(std::span<const double> signal);
std::vector<Complex> dft(std::span<const Complex> signal);
std::vector<Complex> idft(std::span<const Complex> spectrum);

/// Real part of idft(spectrum); for Hermitian spectra this is the signal.
std::vector<double> idft_real(std::span<const Complex> spectrum);

/// Bins 0..N/2 of a length-N spectrum (the non-negative frequencies).
std::vector<Complex> positive_half(std::span<const Complex> spectrum);

/// Rebuilds a length-`n` Hermitian spectrum from its non-negative half:
/// X[n - j] = conj(X[j]).
std::vector<Complex> hermitian_full(std::span<const Complex> half, std::size_t n);

/// Frequencies of the half-spectrum bins of a length-n transform, in
/// cycles/sample: j / n for j = 0..n/2.
std::vector<double> half_spectrum_frequencies(std::size_t n);

}  // namespace vmdl
