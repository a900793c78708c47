#pragma once

#include "vmdlinear/matrix.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace vmdl {

// Uniformly sampled single-channel series. Values are validated finite at
// construction and immutable afterwards.
class TimeSeries {
public:
    TimeSeries() = default;
    explicit TimeSeries(std::vector<double> values, std::string name = {}, int channel_id = 0);

    std::span<const double> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    bool empty() const noexcept { return values_.empty(); }
    double operator[](std::size_t i) const { return values_[i]; }

    const std::string& name() const noexcept { return name_; }
    int channel_id() const noexcept { return channel_id_; }

    // Copy of samples [first, first + count) keeping name and channel.
    TimeSeries slice(std::size_t first, std::size_t count) const;

private:
    std::vector<double> values_;
    std::string name_;
    int channel_id_ = 0;
};

// Standard scaler parameters. std is the population standard deviation.
struct ScalerParams {
    double mean = 0.0;
    double std = 1.0;

    friend bool operator==(const ScalerParams&, const ScalerParams&) = default;
};

enum class ScaleDirection { Forward, Inverse };

/// Mean and population std of the training partition.
/// Throws TooShort for fewer than two samples, ConstantSeries for zero variance.
ScalerParams fit_scaler(std::span<const double> train);
ScalerParams fit_scaler(const TimeSeries& train);

std::vector<double> apply_scaler(std::span<const double> values, const ScalerParams& params,
                                 ScaleDirection direction);
TimeSeries apply_scaler(const TimeSeries& series, const ScalerParams& params,
                        ScaleDirection direction);

struct SplitResult {
    std::size_t train_rows = 0;
    std::size_t test_rows = 0;
    bool trimmed = false;

    friend bool operator==(const SplitResult&, const SplitResult&) = default;
};

inline constexpr std::size_t kSmallDatasetRows = 500;
inline constexpr std::size_t kTrimRows = 10000;

/// Train/test row counts for a dataset of `row_count` rows.
///
/// Fewer than 500 rows split 90:10. More than 10000 rows are trimmed to the
/// first 10000 and split 80:20. Everything in between also splits 80:20.
/// Train rows are floored; test takes the remainder.
SplitResult split_dataset(std::size_t row_count);

// Supervision pairs from a unit-stride sliding window. Row i of `inputs`
// covers samples [i, i + lookback); row i of `targets` covers
// [i + lookback, i + lookback + horizon).
struct WindowSet {
    Matrix inputs;
    Matrix targets;
    std::size_t lookback = 0;
    std::size_t horizon = 0;

    std::size_t rows() const noexcept { return inputs.rows(); }
};

/// Number of windows a series of length n yields, zero when too short.
std::size_t window_count(std::size_t n, std::size_t lookback, std::size_t horizon);

WindowSet make_windows(std::span<const double> series, std::size_t lookback, std::size_t horizon);
WindowSet make_windows(const TimeSeries& series, std::size_t lookback, std::size_t horizon);

}  // namespace vmdl
