#include "vmdlinear/kernels.hpp"

#include <cmath>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace vmdl::kernels {

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

void set_threads(int threads) {
#ifdef _OPENMP
    if (threads < 1) threads = omp_get_num_procs();
    omp_set_num_threads(threads);
#else
    (void)threads;
#endif
}

namespace {

inline void sweep_bin(const SweepInputs& in, std::span<Complex> modes, std::size_t bins,
                      std::size_t j) {
    const std::size_t k_count = in.omegas.size();
    for (std::size_t k = 0; k < k_count; ++k) {
        Complex others{0.0, 0.0};
        for (std::size_t i = 0; i < k_count; ++i) {
            if (i != k) others += modes[i * bins + j];
        }
        const double d = in.freqs[j] - in.omegas[k];
        modes[k * bins + j] = (in.signal[j] - others + in.dual[j] / 2.0) / (1.0 + 2.0 * in.alpha * d * d);
    }
}

inline double centroid(std::span<const Complex> mode, std::span<const double> freqs, double previous) {
    double num = 0.0;
    double den = 0.0;
    for (std::size_t j = 0; j < mode.size(); ++j) {
        const double p = std::norm(mode[j]);
        num += freqs[j] * p;
        den += p;
    }
    return den > 0.0 ? num / den : previous;
}

inline double change_ratio(std::span<const Complex> prev, std::span<const Complex> next) {
    double diff = 0.0;
    double base = 0.0;
    for (std::size_t j = 0; j < prev.size(); ++j) {
        diff += std::norm(next[j] - prev[j]);
        base += std::norm(prev[j]);
    }
    if (base > 0.0) return diff / base;
    return diff > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
}

inline void forward_row(const Matrix& x, const Matrix& w, std::span<const double> bias, Matrix& out,
                        std::size_t r) {
    const auto xr = x.row(r);
    for (std::size_t h = 0; h < w.rows(); ++h) {
        const auto wh = w.row(h);
        double acc = bias[h];
        for (std::size_t l = 0; l < wh.size(); ++l) acc += xr[l] * wh[l];
        out(r, h) += acc;
    }
}

inline void gradient_row(const Matrix& g, const Matrix& x, Matrix& dw, std::span<double> db,
                         std::size_t h) {
    auto dwh = dw.row(h);
    for (auto& v : dwh) v = 0.0;
    double bsum = 0.0;
    for (std::size_t r = 0; r < g.rows(); ++r) {
        const double gr = g(r, h);
        bsum += gr;
        const auto xr = x.row(r);
        for (std::size_t l = 0; l < dwh.size(); ++l) dwh[l] += gr * xr[l];
    }
    db[h] = bsum;
}

}  // namespace

void mode_sweep_serial(const SweepInputs& in, std::span<Complex> modes) {
    const std::size_t bins = in.signal.size();
    for (std::size_t j = 0; j < bins; ++j) sweep_bin(in, modes, bins, j);
}

void mode_sweep_parallel(const SweepInputs& in, std::span<Complex> modes) {
    const std::size_t bins = in.signal.size();
    const auto n = static_cast<std::ptrdiff_t>(bins);
#pragma omp parallel for schedule(static) if (bins * in.omegas.size() >= kParallelThreshold)
    for (std::ptrdiff_t j = 0; j < n; ++j) sweep_bin(in, modes, bins, static_cast<std::size_t>(j));
}

void centroids_serial(std::span<const Complex> modes, std::span<const double> freqs,
                      std::span<double> omegas) {
    const std::size_t bins = freqs.size();
    for (std::size_t k = 0; k < omegas.size(); ++k) {
        omegas[k] = centroid(modes.subspan(k * bins, bins), freqs, omegas[k]);
    }
}

void centroids_parallel(std::span<const Complex> modes, std::span<const double> freqs,
                        std::span<double> omegas) {
    const std::size_t bins = freqs.size();
    const auto k_count = static_cast<std::ptrdiff_t>(omegas.size());
#pragma omp parallel for schedule(static) if (bins * omegas.size() >= 4 * kParallelThreshold)
    for (std::ptrdiff_t k = 0; k < k_count; ++k) {
        const auto ku = static_cast<std::size_t>(k);
        omegas[ku] = centroid(modes.subspan(ku * bins, bins), freqs, omegas[ku]);
    }
}

double relative_change_serial(std::span<const Complex> prev, std::span<const Complex> next,
                              std::size_t bins) {
    double total = 0.0;
    for (std::size_t k = 0; k * bins < prev.size(); ++k) {
        total += change_ratio(prev.subspan(k * bins, bins), next.subspan(k * bins, bins));
    }
    return total;
}

double relative_change_parallel(std::span<const Complex> prev, std::span<const Complex> next,
                                std::size_t bins) {
    const std::size_t k_count = bins ? prev.size() / bins : 0;
    std::vector<double> ratios(k_count);
    const auto n = static_cast<std::ptrdiff_t>(k_count);
#pragma omp parallel for schedule(static) if (prev.size() >= 4 * kParallelThreshold)
    for (std::ptrdiff_t k = 0; k < n; ++k) {
        const auto ku = static_cast<std::size_t>(k);
        ratios[ku] = change_ratio(prev.subspan(ku * bins, bins), next.subspan(ku * bins, bins));
    }
    // Fixed-order reduction.
    double total = 0.0;
    for (double r : ratios) total += r;
    return total;
}

void dense_forward_serial(const Matrix& x, const Matrix& w, std::span<const double> bias,
                          Matrix& out) {
    for (std::size_t r = 0; r < x.rows(); ++r) forward_row(x, w, bias, out, r);
}

void dense_forward_parallel(const Matrix& x, const Matrix& w, std::span<const double> bias,
                            Matrix& out) {
    const auto rows = static_cast<std::ptrdiff_t>(x.rows());
#pragma omp parallel for schedule(static) if (x.rows() * w.size() >= 64 * kParallelThreshold)
    for (std::ptrdiff_t r = 0; r < rows; ++r) forward_row(x, w, bias, out, static_cast<std::size_t>(r));
}

void dense_gradient_serial(const Matrix& g, const Matrix& x, Matrix& dw, std::span<double> db) {
    for (std::size_t h = 0; h < dw.rows(); ++h) gradient_row(g, x, dw, db, h);
}

void dense_gradient_parallel(const Matrix& g, const Matrix& x, Matrix& dw, std::span<double> db) {
    const auto rows = static_cast<std::ptrdiff_t>(dw.rows());
#pragma omp parallel for schedule(static) if (g.rows() * dw.size() >= 64 * kParallelThreshold)
    for (std::ptrdiff_t h = 0; h < rows; ++h) gradient_row(g, x, dw, db, static_cast<std::size_t>(h));
}

}  // namespace vmdl::kernels
