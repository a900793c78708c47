#pragma once

// Inner loops shared by the VMD solver and the linear models.
//
// Every kernel exists twice: a plain serial reference and an OpenMP version.
// The parallel split is chosen so each output element is produced by exactly
// one thread with the same summation order as the serial loop, so the two
// variants agree bit-for-bit regardless of thread count. Tests hold them to
// that; the benchmark target compares their speed.

#include "vmdlinear/matrix.hpp"
#include "vmdlinear/spectral.hpp"

#include <cstddef>
#include <span>

namespace vmdl::kernels {

// Below this many independent work items the parallel variants stay serial.
inline constexpr std::size_t kParallelThreshold = 2048;

/// Number of OpenMP threads available (1 without OpenMP).
int max_threads();
void set_threads(int threads);

// ---------------------------------------------------------------------------
// VMD
// ---------------------------------------------------------------------------

// Mode spectra are stored flat, mode-major: modes[k * bins + j].
struct SweepInputs {
    std::span<const Complex> signal;   // f^(w) on the half spectrum
    std::span<const Complex> dual;     // lambda^(w)
    std::span<const double> freqs;     // bin frequencies, cycles/sample
    std::span<const double> omegas;    // K centre frequencies
    double alpha = 0.0;
};

/// One Gauss-Seidel sweep of the Wiener-filter mode update, in place. Bins
/// are independent of each other; within a bin modes are visited in order
/// and mode k sees modes i < k already updated.
void mode_sweep_serial(const SweepInputs& in, std::span<Complex> modes);
void mode_sweep_parallel(const SweepInputs& in, std::span<Complex> modes);

/// Power-weighted mean frequency of each mode. A mode with zero energy keeps
/// its entry in `omegas` unchanged.
void centroids_serial(std::span<const Complex> modes, std::span<const double> freqs,
                      std::span<double> omegas);
void centroids_parallel(std::span<const Complex> modes, std::span<const double> freqs,
                        std::span<double> omegas);

/// sum_k ||next_k - prev_k||^2 / ||prev_k||^2. A mode that is zero in both
/// iterates contributes 0; a mode that was zero and is now nonzero contributes +inf.
double relative_change_serial(std::span<const Complex> prev, std::span<const Complex> next,
                              std::size_t bins);
double relative_change_parallel(std::span<const Complex> prev, std::span<const Complex> next,
                                std::size_t bins);

// ---------------------------------------------------------------------------
// Dense layers
// ---------------------------------------------------------------------------

/// out(r, h) += bias[h] + sum_l x(r, l) * w(h, l)
void dense_forward_serial(const Matrix& x, const Matrix& w, std::span<const double> bias,
                          Matrix& out);
void dense_forward_parallel(const Matrix& x, const Matrix& w, std::span<const double> bias,
                            Matrix& out);

/// dw(h, l) = sum_r g(r, h) * x(r, l);  db[h] = sum_r g(r, h). Overwrites dw and db.
void dense_gradient_serial(const Matrix& g, const Matrix& x, Matrix& dw, std::span<double> db);
void dense_gradient_parallel(const Matrix& g, const Matrix& x, Matrix& dw, std::span<double> db);

}  // namespace vmdl::kernels
