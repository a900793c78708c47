#pragma once

// Independent reference computations for the test suites. Nothing here
// calls into the library's numerics; each is written the slow, obvious way.

#include "vmdlinear/linear_models.hpp"
#include "vmdlinear/vmd.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;

// O(N^2) forward transform straight from the definition.
inline std::vector<cplx> naive_dft(const std::vector<cplx>& x) {
    const std::size_t n = x.size();
    std::vector<cplx> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        cplx acc{};
        for (std::size_t t = 0; t < n; ++t) {
            const double ang = -2.0 * std::numbers::pi * static_cast<double>((k * t) % n) / static_cast<double>(n);
            acc += x[t] * cplx(std::cos(ang), std::sin(ang));
        }
        out[k] = acc;
    }
    return out;
}

inline std::vector<cplx> naive_dft(const std::vector<double>& x) {
    return naive_dft(std::vector<cplx>(x.begin(), x.end()));
}

// One Gauss-Seidel pass of the Wiener-filter update, bin by bin, written out
// without any helpers:
//   u_k(f) = (x(f) - sum_{i<k} u_i^new(f) - sum_{i>k} u_i^old(f) + lambda(f)/2)
//            / (1 + 2 alpha (f - w_k)^2)
inline std::vector<std::vector<cplx>> wiener_sweep(const std::vector<cplx>& x_hat,
                                                   const std::vector<cplx>& lambda_hat,
                                                   const std::vector<double>& f,
                                                   const std::vector<double>& w, double alpha,
                                                   std::vector<std::vector<cplx>> u) {
    const std::size_t K = w.size();
    for (std::size_t k = 0; k < K; ++k) {
        for (std::size_t j = 0; j < f.size(); ++j) {
            cplx others{};
            for (std::size_t i = 0; i < K; ++i) {
                if (i != k) others += u[i][j];
            }
            const double d = f[j] - w[k];
            u[k][j] = (x_hat[j] - others + lambda_hat[j] / 2.0) / (1.0 + 2.0 * alpha * d * d);
        }
    }
    return u;
}

// Forecast of a ForecastModel recomputed from its definition.
inline std::vector<double> forecast(const vmdl::ForecastModel& m, const std::vector<double>& x) {
    const std::size_t L = m.lookback, H = m.horizon;
    auto dense = [&](const vmdl::DenseLayer& layer, const std::vector<double>& in) {
        std::vector<double> y(H);
        for (std::size_t h = 0; h < H; ++h) {
            double s = layer.bias[h];
            for (std::size_t l = 0; l < L; ++l) s += layer.weight(h, l) * in[l];
            y[h] = s;
        }
        return y;
    };
    if (m.kind == vmdl::ModelKind::Linear) return dense(m.layers[0], x);
    if (m.kind == vmdl::ModelKind::NLinear) {
        std::vector<double> c(L);
        for (std::size_t l = 0; l < L; ++l) c[l] = x[l] - x[L - 1];
        auto y = dense(m.layers[0], c);
        for (auto& v : y) v += x[L - 1];
        return y;
    }
    // DLinear: replicate-padded centred moving average.
    const std::size_t half = (m.ma_kernel - 1) / 2;
    std::vector<double> trend(L), seasonal(L);
    for (std::size_t l = 0; l < L; ++l) {
        double s = 0.0;
        for (std::size_t d = 0; d < m.ma_kernel; ++d) {
            const long idx = static_cast<long>(l + d) - static_cast<long>(half);
            s += x[static_cast<std::size_t>(std::clamp(idx, 0L, static_cast<long>(L) - 1))];
        }
        trend[l] = s / static_cast<double>(m.ma_kernel);
        seasonal[l] = x[l] - trend[l];
    }
    auto a = dense(m.layers[0], trend);
    auto b = dense(m.layers[1], seasonal);
    for (std::size_t h = 0; h < H; ++h) a[h] += b[h];
    return a;
}

// MSE (+ L1) from the definition.
inline double loss(const vmdl::ForecastModel& m, const vmdl::WindowSet& w, double l1) {
    double sq = 0.0;
    for (std::size_t r = 0; r < w.rows(); ++r) {
        const auto row = w.inputs.row(r);
        const auto y = forecast(m, std::vector<double>(row.begin(), row.end()));
        for (std::size_t h = 0; h < m.horizon; ++h) {
            const double e = y[h] - w.targets(r, h);
            sq += e * e;
        }
    }
    double pen = 0.0;
    for (const auto& layer : m.layers) {
        for (double v : layer.weight.flat()) pen += std::abs(v);
    }
    return sq / static_cast<double>(w.rows() * m.horizon) + l1 * pen;
}

inline vmdl::ForecastModel random_model(vmdl::ModelKind kind, std::size_t L, std::size_t H, std::size_t kernel,
                                        std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 0.5);
    vmdl::ModelConfig cfg;
    cfg.kind = kind;
    cfg.lookback = L;
    cfg.horizon = H;
    cfg.ma_kernel = kernel;
    auto m = vmdl::init_model(cfg);
    for (auto& layer : m.layers) {
        for (auto& v : layer.weight.flat()) v = g(rng);
        for (auto& v : layer.bias) v = g(rng);
    }
    return m;
}

inline vmdl::WindowSet random_batch(std::size_t rows, std::size_t L, std::size_t H, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    vmdl::WindowSet w{vmdl::Matrix(rows, L), vmdl::Matrix(rows, H), L, H};
    for (auto& v : w.inputs.flat()) v = g(rng);
    for (auto& v : w.targets.flat()) v = g(rng);
    return w;
}

// Largest-magnitude bins of a real signal's half spectrum, as frequencies.
inline std::vector<double> peak_frequencies(const std::vector<double>& x, std::size_t count) {
    const auto X = naive_dft(x);
    const std::size_t n = x.size();
    std::vector<std::pair<double, std::size_t>> mag;
    for (std::size_t j = 1; j <= n / 2; ++j) mag.emplace_back(std::abs(X[j]), j);
    std::sort(mag.begin(), mag.end(), [](auto a, auto b) { return a.first > b.first; });
    std::vector<double> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back(static_cast<double>(mag[i].second) / static_cast<double>(n));
    std::sort(out.begin(), out.end());
    return out;
}

inline double rel_l2(const std::vector<double>& a, const std::vector<double>& b) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num += (a[i] - b[i]) * (a[i] - b[i]);
        den += b[i] * b[i];
    }
    return std::sqrt(num / den);
}

inline std::vector<double> two_tone(std::size_t n) {
    std::vector<double> x(n);
    for (std::size_t t = 0; t < n; ++t) {
        const double tt = static_cast<double>(t);
        x[t] = std::cos(2.0 * std::numbers::pi * 0.04 * tt) + 0.5 * std::cos(2.0 * std::numbers::pi * 0.20 * tt);
    }
    return x;
}

}  // namespace oracle
