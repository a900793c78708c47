#include "catch_amalgamated.hpp"

#include "vmdlinear/error.hpp"
#include "vmdlinear/series.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <random>

using namespace vmdl;
using Catch::Matchers::WithinAbs;

namespace {

template <class F>
Errc code_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no vmdl::Error thrown");
    return Errc::Io;
}

}  // namespace

TEST_CASE("TimeSeries rejects non-finite samples", "[series]") {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    CHECK(code_of([&] { TimeSeries({1.0, nan}); }) == Errc::NonFinite);
    CHECK(code_of([&] { TimeSeries({std::numeric_limits<double>::infinity()}); }) == Errc::NonFinite);
    const TimeSeries s({1, 2, 3, 4}, "load", 2);
    const auto sl = s.slice(1, 2);
    CHECK(sl.size() == 2);
    CHECK(sl[0] == 2.0);
    CHECK(sl.name() == "load");
    CHECK(sl.channel_id() == 2);
}

TEST_CASE("fit_scaler examples", "[series][scaler]") {
    const std::vector<double> x{0.0, 2.0};
    const auto p = fit_scaler(x);
    CHECK(p.mean == 1.0);
    CHECK(p.std == 1.0);
    const auto y = apply_scaler(x, p, ScaleDirection::Forward);
    CHECK(y == std::vector<double>{-1.0, 1.0});

    const std::vector<double> five{5, 5, 5};
    CHECK(code_of([&] { fit_scaler(five); }) == Errc::ConstantSeries);
    const std::vector<double> one{5};
    CHECK(code_of([&] { fit_scaler(one); }) == Errc::TooShort);
}

TEST_CASE("zero-mean unit-variance series is left unchanged", "[series][scaler]") {
    const std::vector<double> x{-1.0, 1.0, -1.0, 1.0};
    const auto y = apply_scaler(x, fit_scaler(x), ScaleDirection::Forward);
    for (std::size_t i = 0; i < x.size(); ++i) CHECK_THAT(y[i], WithinAbs(x[i], 1e-12));
}

TEST_CASE("apply_scaler examples", "[series][scaler]") {
    const std::vector<double> x{3, 7, 11};
    const auto p = fit_scaler(x);
    const auto back = apply_scaler(apply_scaler(x, p, ScaleDirection::Forward), p, ScaleDirection::Inverse);
    for (std::size_t i = 0; i < x.size(); ++i) CHECK_THAT(back[i], WithinAbs(x[i], 1e-9));

    CHECK(apply_scaler(std::vector<double>{1, 1, 1}, {1.0, 2.0}, ScaleDirection::Forward) ==
          std::vector<double>{0, 0, 0});
    CHECK(apply_scaler(std::vector<double>{0}, {4.0, 3.0}, ScaleDirection::Inverse) == std::vector<double>{4});
}

TEST_CASE("standardised train partition has zero mean and unit std", "[series][scaler][property]") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> shift(-1e3, 1e3), scale(1e-3, 1e3);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 200; ++trial) {
        const double m = shift(rng), s = scale(rng);
        std::vector<double> x(2 + rng() % 300);
        for (auto& v : x) v = m + s * g(rng);
        const auto p = fit_scaler(x);
        const auto y = apply_scaler(x, p, ScaleDirection::Forward);
        const double n = static_cast<double>(y.size());
        const double mean = std::accumulate(y.begin(), y.end(), 0.0) / n;
        double var = 0.0;
        for (double v : y) var += (v - mean) * (v - mean);
        CHECK(std::abs(mean) < 1e-9);
        CHECK(std::abs(std::sqrt(var / n) - 1.0) < 1e-9);

        const auto back = apply_scaler(y, p, ScaleDirection::Inverse);
        for (std::size_t i = 0; i < x.size(); ++i) CHECK_THAT(back[i], WithinAbs(x[i], 1e-9 * (1 + std::abs(x[i]))));
    }
}

TEST_CASE("split_dataset examples", "[series][split]") {
    CHECK(split_dataset(400) == SplitResult{360, 40, false});
    CHECK(split_dataset(12000) == SplitResult{8000, 2000, true});
    CHECK(split_dataset(1000) == SplitResult{800, 200, false});
    CHECK(split_dataset(499) == SplitResult{449, 50, false});
    CHECK(split_dataset(500) == SplitResult{400, 100, false});
    CHECK(split_dataset(10000) == SplitResult{8000, 2000, false});
    CHECK(split_dataset(10001) == SplitResult{8000, 2000, true});
    CHECK(code_of([] { split_dataset(9); }) == Errc::TooFewRows);
}

TEST_CASE("split_dataset invariants over all row counts", "[series][split][property]") {
    for (std::size_t n = 10; n <= 12500; ++n) {
        const auto s = split_dataset(n);
        const std::size_t eff = std::min<std::size_t>(n, 10000);
        REQUIRE(s.train_rows + s.test_rows == eff);
        REQUIRE(s.trimmed == (n > 10000));
        const double target = n < 500 ? 0.9 : 0.8;
        REQUIRE(std::abs(static_cast<double>(s.train_rows) / static_cast<double>(eff) - target) <
                1.0 / static_cast<double>(n));
    }
}

TEST_CASE("make_windows examples", "[series][windows]") {
    const auto w = make_windows(std::vector<double>{1, 2, 3, 4}, 2, 1);
    REQUIRE(w.rows() == 2);
    CHECK(w.inputs(0, 0) == 1);
    CHECK(w.inputs(0, 1) == 2);
    CHECK(w.inputs(1, 0) == 2);
    CHECK(w.inputs(1, 1) == 3);
    CHECK(w.targets(0, 0) == 3);
    CHECK(w.targets(1, 0) == 4);

    std::vector<double> x(7, 1.0);
    CHECK(make_windows(x, 4, 3).rows() == 1);
    x.pop_back();
    CHECK(code_of([&] { make_windows(x, 4, 3); }) == Errc::TooShort);
    CHECK(window_count(6, 4, 3) == 0);
    CHECK(code_of([&] { make_windows(std::vector<double>(10, 0.0), 0, 3); }) == Errc::InvalidConfig);
}

TEST_CASE("window rows reconstruct the series", "[series][windows][property]") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t L = 1 + rng() % 12, H = 1 + rng() % 6;
        std::vector<double> x(L + H + rng() % 40);
        for (auto& v : x) v = g(rng);
        const auto w = make_windows(x, L, H);
        REQUIRE(w.rows() == window_count(x.size(), L, H));
        std::vector<double> rebuilt;
        for (std::size_t r = 0; r < w.rows(); ++r) rebuilt.push_back(w.inputs(r, 0));
        const std::size_t last = w.rows() - 1;
        for (std::size_t l = 1; l < L; ++l) rebuilt.push_back(w.inputs(last, l));
        for (std::size_t h = 0; h < H; ++h) rebuilt.push_back(w.targets(last, h));
        REQUIRE(rebuilt == x);
    }
}
