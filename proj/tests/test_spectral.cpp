#include "catch_amalgamated.hpp"

#include "oracles.hpp"

#include "vmdlinear/error.hpp"
#include "vmdlinear/spectral.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace vmdl;

namespace {

double max_rel_err(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    double scale = 1.0, err = 0.0;
    for (const auto& v : b) scale = std::max(scale, std::abs(v));
    for (std::size_t i = 0; i < a.size(); ++i) err = std::max(err, std::abs(a[i] - b[i]));
    return err / scale;
}

}  // namespace

TEST_CASE("constant sequence puts everything in bin 0", "[spectral]") {
    for (std::size_t n : {1u, 5u, 8u, 12u, 64u}) {
        const std::vector<double> x(n, 2.5);
        const auto X = dft(x);
        CHECK(std::abs(X[0] - Complex(2.5 * static_cast<double>(n), 0)) < 1e-9);
        for (std::size_t k = 1; k < n; ++k) CHECK(std::abs(X[k]) < 1e-9);
    }
}

TEST_CASE("Fourier basis cosine lands in bins +-k0", "[spectral]") {
    for (std::size_t n : {32u, 30u}) {
        const std::size_t k0 = 5;
        std::vector<double> x(n);
        for (std::size_t t = 0; t < n; ++t) {
            x[t] = std::cos(2.0 * std::numbers::pi * static_cast<double>(k0 * t) / static_cast<double>(n));
        }
        const auto X = dft(x);
        for (std::size_t k = 0; k < n; ++k) {
            const double expect = (k == k0 || k == n - k0) ? static_cast<double>(n) / 2.0 : 0.0;
            CHECK(std::abs(std::abs(X[k]) - expect) < 1e-9);
        }
    }
}

TEST_CASE("dft matches the naive oracle for every length up to 256", "[spectral][oracle]") {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> g;
    for (std::size_t n = 1; n <= 256; ++n) {
        std::vector<double> x(n);
        for (auto& v : x) v = g(rng);
        const auto X = dft(x);
        REQUIRE(max_rel_err(X, oracle::naive_dft(x)) < 1e-9);
        const auto back = idft_real(X);
        double err = 0.0, scale = 1.0;
        for (std::size_t i = 0; i < n; ++i) {
            err = std::max(err, std::abs(back[i] - x[i]));
            scale = std::max(scale, std::abs(x[i]));
        }
        REQUIRE(err / scale < 1e-9);
    }
}

TEST_CASE("complex transforms round-trip", "[spectral][oracle]") {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g;
    for (std::size_t n : {3u, 16u, 64u, 100u, 127u}) {
        std::vector<Complex> x(n);
        for (auto& v : x) v = {g(rng), g(rng)};
        const auto X = dft(std::span<const Complex>(x));
        CHECK(max_rel_err(X, oracle::naive_dft(x)) < 1e-9);
        CHECK(max_rel_err(idft(X), x) < 1e-9);
    }
}

TEST_CASE("half spectrum helpers", "[spectral]") {
    CHECK_THROWS_AS(dft(std::vector<double>{}), Error);
    const auto f = half_spectrum_frequencies(8);
    CHECK(f == std::vector<double>{0.0, 0.125, 0.25, 0.375, 0.5});
    CHECK(half_spectrum_frequencies(7).size() == 4);

    std::mt19937_64 rng(2);
    std::normal_distribution<double> g;
    for (std::size_t n : {8u, 9u}) {
        std::vector<double> x(n);
        for (auto& v : x) v = g(rng);
        const auto X = dft(x);
        const auto half = positive_half(X);
        CHECK(half.size() == n / 2 + 1);
        const auto full = hermitian_full(half, n);
        CHECK(max_rel_err(full, X) < 1e-12);
    }
}
