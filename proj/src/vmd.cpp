#include "vmdlinear/vmd.hpp"

#include "vmdlinear/error.hpp"
#include "vmdlinear/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

namespace vmdl {

std::string_view to_string(OmegaInit v) {
    switch (v) {
        case OmegaInit::Uniform: return "uniform";
        case OmegaInit::Zero: return "zero";
        case OmegaInit::Random: return "random";
    }
    return "uniform";
}

std::string_view to_string(Boundary v) { return v == Boundary::Mirror ? "mirror" : "none"; }

OmegaInit parse_omega_init(std::string_view s) {
    if (s == "uniform") return OmegaInit::Uniform;
    if (s == "zero") return OmegaInit::Zero;
    if (s == "random") return OmegaInit::Random;
    throw Error(Errc::InvalidConfig, "unknown omega init '" + std::string(s) + "'");
}

Boundary parse_boundary(std::string_view s) {
    if (s == "mirror") return Boundary::Mirror;
    if (s == "none") return Boundary::None;
    throw Error(Errc::InvalidConfig, "unknown boundary '" + std::string(s) + "'");
}

void VmdConfig::validate() const {
    auto fail = [](const std::string& what) { throw Error(Errc::InvalidConfig, "VmdConfig: " + what); };
    if (modes < 1) fail("K must be >= 1");
    if (!(alpha > 0.0) || !std::isfinite(alpha)) fail("alpha must be > 0");
    if (!(tau >= 0.0) || !std::isfinite(tau)) fail("tau must be >= 0");
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) fail("epsilon must be > 0");
    if (max_iters < 1) fail("max_iters must be >= 1");
}

std::vector<double> ModeSet::sum() const {
    if (modes.empty()) return {};
    std::vector<double> out(modes.front().size(), 0.0);
    for (const auto& m : modes) {
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += m[i];
    }
    return out;
}

std::vector<double> mirror_extend(std::span<const double> signal) {
    const std::size_t n = signal.size();
    if (n < 2) throw Error(Errc::TooShort, "mirror_extend: need at least 2 samples");
    const std::size_t left = n / 2;
    std::vector<double> out;
    out.reserve(2 * n);
    for (std::size_t i = left; i-- > 0;) out.push_back(signal[i]);
    out.insert(out.end(), signal.begin(), signal.end());
    for (std::size_t i = n; i-- > left;) out.push_back(signal[i]);
    return out;
}

std::vector<double> recover_center(std::span<const double> extended) {
    if (extended.size() % 2 != 0) {
        throw Error(Errc::DimensionMismatch, "recover_center: extended length must be even");
    }
    const std::size_t n = extended.size() / 2;
    const auto first = extended.begin() + static_cast<std::ptrdiff_t>(n / 2);
    return {first, first + static_cast<std::ptrdiff_t>(n)};
}

VmdState initial_state(std::size_t signal_length, const VmdConfig& cfg) {
    cfg.validate();
    VmdState s;
    s.signal_length = signal_length;
    s.freqs = half_spectrum_frequencies(signal_length);
    s.bins = s.freqs.size();
    s.mode_spectra.assign(cfg.modes * s.bins, Complex{});
    s.lambda.assign(s.bins, Complex{});
    s.omegas.assign(cfg.modes, 0.0);
    switch (cfg.omega_init) {
        case OmegaInit::Uniform:
            for (std::size_t k = 0; k < cfg.modes; ++k) {
                s.omegas[k] = 0.5 * static_cast<double>(k) / static_cast<double>(cfg.modes);
            }
            break;
        case OmegaInit::Zero:
            break;
        case OmegaInit::Random: {
            std::mt19937_64 rng(cfg.seed);
            for (auto& w : s.omegas) {
                w = 0.5 * std::generate_canonical<double, 53>(rng);
            }
            std::sort(s.omegas.begin(), s.omegas.end());
            break;
        }
    }
    if (cfg.dc_mode) s.omegas[0] = 0.0;
    return s;
}

namespace {

void check_dimensions(const VmdState& state, std::span<const Complex> signal_half,
                      const VmdConfig& cfg) {
    if (state.omegas.size() != cfg.modes || state.mode_spectra.size() != cfg.modes * state.bins ||
        state.lambda.size() != state.bins || signal_half.size() != state.bins) {
        throw Error(Errc::DimensionMismatch, "VMD state does not match config or input spectrum");
    }
}

}  // namespace

VmdState update_modes(const VmdState& state, std::span<const Complex> signal_half,
                      const VmdConfig& cfg) {
    check_dimensions(state, signal_half, cfg);
    VmdState next = state;
    kernels::SweepInputs in{signal_half, state.lambda, state.freqs, state.omegas, cfg.alpha};
    kernels::mode_sweep_parallel(in, next.mode_spectra);
    return next;
}

VmdState update_omegas(const VmdState& state, const VmdConfig& cfg) {
    VmdState next = state;
    kernels::centroids_parallel(next.mode_spectra, next.freqs, next.omegas);
    for (auto& w : next.omegas) w = std::clamp(w, 0.0, 0.5);
    if (cfg.dc_mode && !next.omegas.empty()) next.omegas[0] = 0.0;
    return next;
}

VmdState update_lambda(const VmdState& state, std::span<const Complex> signal_half,
                       const VmdConfig& cfg) {
    check_dimensions(state, signal_half, cfg);
    VmdState next = state;
    if (cfg.tau == 0.0) return next;
    for (std::size_t j = 0; j < state.bins; ++j) {
        Complex total{0.0, 0.0};
        for (std::size_t k = 0; k < cfg.modes; ++k) total += state.mode_spectra[k * state.bins + j];
        next.lambda[j] = state.lambda[j] + cfg.tau * (signal_half[j] - total);
    }
    return next;
}

double relative_change(const VmdState& prev, const VmdState& next) {
    return kernels::relative_change_parallel(prev.mode_spectra, next.mode_spectra, prev.bins);
}

namespace {

bool all_finite(const VmdState& s) {
    auto finite = [](const Complex& c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); };
    return std::all_of(s.mode_spectra.begin(), s.mode_spectra.end(), finite) &&
           std::all_of(s.lambda.begin(), s.lambda.end(), finite) &&
           std::all_of(s.omegas.begin(), s.omegas.end(), [](double w) { return std::isfinite(w); });
}

double l2(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

}  // namespace

ModeSet decompose(std::span<const double> series, const VmdConfig& cfg) {
    cfg.validate();
    const std::size_t n = series.size();
    if (n < 2 || n < 2 * cfg.modes) {
        throw Error(Errc::TooShort, "decompose: series length " + std::to_string(n) +
                                        " is below 2K = " + std::to_string(2 * cfg.modes));
    }
    for (double v : series) {
        if (!std::isfinite(v)) throw Error(Errc::NonFinite, "decompose: non-finite input");
    }

    const bool mirror = cfg.boundary == Boundary::Mirror;
    const std::vector<double> extended =
        mirror ? mirror_extend(series) : std::vector<double>(series.begin(), series.end());
    const std::size_t t_len = extended.size();
    const std::vector<Complex> signal_half = positive_half(dft(extended));

    VmdState state = initial_state(t_len, cfg);
    bool converged = false;
    while (state.iter < cfg.max_iters) {
        VmdState next = update_modes(state, signal_half, cfg);
        next = update_omegas(next, cfg);
        next = update_lambda(next, signal_half, cfg);
        next.iter = state.iter + 1;
        next.last_delta = relative_change(state, next);
        if (!all_finite(next) || std::isnan(next.last_delta)) {
            throw Error(Errc::NonFinite, "decompose: non-finite iterate at iteration " +
                                             std::to_string(next.iter) + " (check alpha/tau)");
        }
        state = std::move(next);
        if (state.last_delta < cfg.epsilon) {
            converged = true;
            break;
        }
    }

    std::vector<std::size_t> order(cfg.modes);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return state.omegas[a] < state.omegas[b]; });

    ModeSet out;
    out.iterations = state.iter;
    out.converged = converged;
    out.final_delta = state.last_delta;
    for (std::size_t k : order) {
        const auto full = hermitian_full(state.mode(k), t_len);
        auto samples = idft_real(full);
        out.modes.push_back(mirror ? recover_center(samples) : std::move(samples));
        out.omegas.push_back(state.omegas[k]);
    }

    const auto total = out.sum();
    std::vector<double> residual(n);
    for (std::size_t i = 0; i < n; ++i) residual[i] = series[i] - total[i];
    const double norm = l2(series);
    out.reconstruction_error = norm > 0.0 ? l2(residual) / norm : l2(residual);
    return out;
}

ModeSet decompose(const TimeSeries& series, const VmdConfig& cfg) {
    return decompose(series.values(), cfg);
}

double bandwidth_objective(std::span<const std::vector<double>> modes) {
    double total = 0.0;
    for (const auto& m : modes) {
        if (m.empty()) continue;
        const auto half = positive_half(dft(m));
        const auto freqs = half_spectrum_frequencies(m.size());
        double num = 0.0;
        double den = 0.0;
        for (std::size_t j = 0; j < half.size(); ++j) {
            num += freqs[j] * std::norm(half[j]);
            den += std::norm(half[j]);
        }
        if (den == 0.0) continue;
        const double centre = num / den;
        for (std::size_t j = 0; j < half.size(); ++j) {
            const double d = freqs[j] - centre;
            total += d * d * std::norm(half[j]);
        }
    }
    return total;
}

}  // namespace vmdl
