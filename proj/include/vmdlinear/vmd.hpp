#pragma once

#include "vmdlinear/series.hpp"
#include "vmdlinear/spectral.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace vmdl {

enum class OmegaInit { Uniform, Zero, Random };
enum class Boundary { Mirror, None };

std::string_view to_string(OmegaInit v);
std::string_view to_string(Boundary v);
OmegaInit parse_omega_init(std::string_view s);
Boundary parse_boundary(std::string_view s);

// Variational mode decomposition settings. Frequencies are in cycles/sample.
struct VmdConfig {
    std::size_t modes = 3;        // K
    double alpha = 2000.0;        // bandwidth penalty
    double tau = 0.0;             // dual ascent step; 0 disables the dual
    double epsilon = 1e-7;        // convergence threshold on the relative change
    std::size_t max_iters = 500;
    OmegaInit omega_init = OmegaInit::Uniform;
    std::uint64_t seed = 0;       // used by OmegaInit::Random only
    Boundary boundary = Boundary::Mirror;
    bool dc_mode = false;         // pin the first centre frequency to 0

    /// Throws InvalidConfig when a field is out of bounds.
    void validate() const;

    friend bool operator==(const VmdConfig&, const VmdConfig&) = default;
};

// ADMM iterate on the half spectrum of the (extended) signal.
struct VmdState {
    std::size_t signal_length = 0;       // T, length of the transformed signal
    std::size_t bins = 0;                // T/2 + 1
    std::vector<double> freqs;           // bin frequencies j / T
    std::vector<Complex> mode_spectra;   // K x bins, mode-major
    std::vector<double> omegas;          // K centre frequencies
    std::vector<Complex> lambda;         // dual variable, bins
    std::size_t iter = 0;
    double last_delta = 0.0;

    std::size_t mode_count() const noexcept { return omegas.size(); }
    std::span<const Complex> mode(std::size_t k) const {
        return std::span<const Complex>(mode_spectra).subspan(k * bins, bins);
    }
};

struct ModeSet {
    std::vector<std::vector<double>> modes;  // K sequences, input length each
    std::vector<double> omegas;              // ascending, cycles/sample
    std::size_t iterations = 0;
    bool converged = false;
    double final_delta = 0.0;                // convergence statistic at exit
    double reconstruction_error = 0.0;       // ||x - sum_k u_k|| / ||x||

    std::size_t mode_count() const noexcept { return modes.size(); }
    std::vector<double> sum() const;

    friend bool operator==(const ModeSet&, const ModeSet&) = default;
};

/// Reflects the first half onto the left and the second half onto the
/// right: [1,2,3,4] -> [2,1,1,2,3,4,4,3]. Output length is 2N and the input
/// starts at offset N/2. Throws TooShort for N < 2.
std::vector<double> mirror_extend(std::span<const double> signal);

/// Inverse of mirror_extend: the middle N samples of a length-2N sequence.
std::vector<double> recover_center(std::span<const double> extended);

/// Initial iterate: zero modes and dual, centre frequencies per cfg.omega_init.
VmdState initial_state(std::size_t signal_length, const VmdConfig& cfg);

/// Wiener-filter update of every mode, Gauss-Seidel ordered.
VmdState update_modes(const VmdState& state, std::span<const Complex> signal_half,
                      const VmdConfig& cfg);

/// Centre frequencies as the power-weighted mean of each mode's half
/// spectrum, clamped to [0, 0.5]. Zero-energy modes keep their previous
/// value; with cfg.dc_mode the first stays at 0.
VmdState update_omegas(const VmdState& state, const VmdConfig& cfg);

/// Dual ascent: lambda += tau * (f - sum_k u_k).
VmdState update_lambda(const VmdState& state, std::span<const Complex> signal_half,
                       const VmdConfig& cfg);

/// sum_k ||next_k - prev_k||^2 / ||prev_k||^2 over the mode spectra.
double relative_change(const VmdState& prev, const VmdState& next);

/// Full decomposition. Throws TooShort when the series has fewer than
/// max(2, 2K) samples and NonFinite if an iterate blows up.
ModeSet decompose(std::span<const double> series, const VmdConfig& cfg);
ModeSet decompose(const TimeSeries& series, const VmdConfig& cfg);

/// Discrete bandwidth objective sum_k sum_j (f_j - omega_k)^2 |U_k(f_j)|^2
/// over the half spectrum of each mode, with omega_k the mode's own
/// power-weighted centre. Used to compare candidate partitions.
double bandwidth_objective(std::span<const std::vector<double>> modes);

}  // namespace vmdl
